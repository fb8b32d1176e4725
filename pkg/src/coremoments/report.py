"""Theorem documents: fitted moment formulas with the range they were checked on."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from coremoments import __version__
from coremoments.fibexpr import FibExpr
from coremoments.fibfit import (
    fit_raw_moment_detailed,
    limit_standardized,
    normal_moment,
    symbolic_central,
    validate_fit,
)
from coremoments.quadext import QuadExt

STATUSES = ("verified-on-range", "exact-identity", "limit")
FORMATS = ("text", "latex", "json")


class ValidationFailure(RuntimeError):
    pass


@dataclass
class Entry:
    claim: str
    status: str
    range: dict[str, list[int]]
    payload: dict

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if "proved" in self.claim.lower():
            raise ValueError("report entries never claim a proof")


@dataclass
class ReportDocument:
    entries: list[Entry] = field(default_factory=list)
    tool_version: str = __version__

    def to_dict(self) -> dict:
        return {"tool_version": self.tool_version, "entries": [asdict(e) for e in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        data = json.loads(text)
        return cls([Entry(**e) for e in data["entries"]], data["tool_version"])

    def render(self, fmt: str = "text") -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "latex":
            return _render_latex(self)
        if fmt == "text":
            return _render_text(self)
        raise ValueError(f"unknown format {fmt!r}")


def _range_text(r: dict[str, list[int]]) -> str:
    return ", ".join(f"{var} in [{lo}, {hi}]" for var, (lo, hi) in sorted(r.items()))


def payload_text(payload: dict, latex: bool = False) -> str:
    kind = payload["kind"]
    if kind == "fibexpr":
        return FibExpr.from_dict(payload).render_fraction(latex=latex)
    if kind == "quadext":
        q = QuadExt(Fraction(payload["a"]), Fraction(payload["b"]))
        return str(q)
    if kind == "text":
        return payload["value"]
    raise ValueError(f"unknown payload kind {kind!r}")


def _render_text(doc: ReportDocument) -> str:
    lines = [f"# coremoments {doc.tool_version}", ""]
    for i, e in enumerate(doc.entries, 1):
        lines.append(f"[{i}] {e.claim}")
        lines.append(f"    status: {e.status} ({_range_text(e.range)})")
        lines.append(f"    {payload_text(e.payload)}")
        lines.append("")
    return "\n".join(lines)


def _render_latex(doc: ReportDocument) -> str:
    lines = [r"\begin{itemize}"]
    for e in doc.entries:
        body = payload_text(e.payload, latex=True)
        lines.append(rf"\item {e.claim} \emph{{({e.status}; {_range_text(e.range)})}}")
        lines.append(rf"  \[ {body} \]")
    lines.append(r"\end{itemize}")
    return "\n".join(lines) + "\n"


def fibexpr_payload(e: FibExpr) -> dict:
    return {"kind": "fibexpr", **e.to_dict()}


def quadext_payload(q: QuadExt) -> dict:
    return {"kind": "quadext", "a": str(q.a), "b": str(q.b)}


def build_theorems(max_k: int, holdout: int = 20) -> ReportDocument:
    """Fit, check, and collect raw, central and limiting moments for k <= max_k.

    Raises ValidationFailure naming k and s on the first disagreement.
    """
    if max_k < 1:
        raise ValueError("max_k must be >= 1")
    doc = ReportDocument()
    raw: list[FibExpr] = []
    top = 2
    for k in range(1, max_k + 1):
        fit = fit_raw_moment_detailed(k)
        e, sample = fit.expr, fit.sample
        holdout_range = range(max(sample) + 1, max(sample) + 1 + holdout)
        v = validate_fit(e, k, holdout_range, "raw", sample)
        if not v.passed:
            raise ValidationFailure(v.summary())
        raw.append(e)
        top = max(top, max(v.checked))
        doc.entries.append(
            Entry(
                f"E[X_s^{k}] equals the expression below",
                "verified-on-range",
                {"s": [min(sample), max(v.checked)]},
                fibexpr_payload(e),
            )
        )

    centrals = {k: symbolic_central(k, raw) for k in range(2, max_k + 1)}
    for k, c in centrals.items():
        v = validate_fit(c, k, range(2, top + 1), "central")
        if not v.passed:
            raise ValidationFailure(v.summary())
        name = "Var(X_s)" if k == 2 else f"E[(X_s - E[X_s])^{k}]"
        doc.entries.append(
            Entry(
                f"{name} equals the expression below",
                "verified-on-range",
                {"s": [2, top]},
                fibexpr_payload(c),
            )
        )

    for k, c in centrals.items():
        lim = limit_standardized(k, c, centrals[2])
        normal = normal_moment(k)
        if lim.diverges or lim.value != normal:
            raise ValidationFailure(f"moment {k}: limit {lim} differs from normal value {normal}")
        doc.entries.append(
            Entry(
                f"standardized moment {k} of X_s tends to {normal}, the normal value"
                " (leading terms of expressions verified-on-range)",
                "limit",
                {"k": [k, k]},
                quadext_payload(lim.value),
            )
        )
    return doc
