import sys

from coremoments.cli import main

sys.exit(main())
