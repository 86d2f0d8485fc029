"""Full analysis of one graph and its JSON form.

Numbers in reports use 12 significant digits and matrices are emitted as
arrays of decimal strings, so the same graph always yields the same bytes.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from typing import Optional

from . import __version__
from .constructions import find_decomposition
from .errors import GraphSepError
from .graph import LayeredGraph, is_degree_symmetric, is_partially_symmetric
from .quantum import density, is_pure
from .separability import PptVerdict, Separability, SeparableDecomposition, ppt_test, theorem_main_check


def fmt(x: float) -> str:
    """12 significant digits; magnitudes below 1e-12 print as 0."""
    x = float(x)
    if abs(x) < 1e-12:
        return "0"
    return format(x, ".12g")


def matrix_strings(a) -> list:
    return [[fmt(x) for x in row] for row in a.tolist()]


_PPT_BLOCK = {
    "type": "object",
    "required": ["ppt", "min_eig", "conclusive", "classification"],
    "additionalProperties": False,
    "properties": {
        "ppt": {"type": "boolean"},
        "min_eig": {"type": "string"},
        "conclusive": {"type": "boolean"},
        "classification": {"enum": [s.value for s in Separability]},
    },
}

_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "string"}}}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "graphsep analysis report",
    "type": "object",
    "required": [
        "m", "n", "edges", "degree_symmetric", "partially_symmetric", "theorem_main",
        "pure", "rho_l", "rho_q", "decomposition", "version",
    ],
    "additionalProperties": False,
    "properties": {
        "m": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 1},
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        },
        "degree_symmetric": {"type": "boolean"},
        "partially_symmetric": {"type": "boolean"},
        "theorem_main": {"type": "boolean"},
        "pure": {"type": "boolean"},
        "rho_l": _PPT_BLOCK,
        "rho_q": _PPT_BLOCK,
        "decomposition": {
            "type": ["array", "null"],
            "items": {
                "type": "object",
                "required": ["w", "factor_a", "factor_b"],
                "additionalProperties": False,
                "properties": {"w": {"type": "string"}, "factor_a": _MATRIX, "factor_b": _MATRIX},
            },
        },
        "timing_ms": {"type": "string"},
        "version": {"type": "string"},
    },
}


def ppt_block(verdict: PptVerdict, certified: bool) -> dict:
    cls = verdict.classification
    conclusive = verdict.conclusive
    if certified and verdict.ppt_holds:
        cls, conclusive = Separability.SEPARABLE, True
    return {
        "ppt": verdict.ppt_holds,
        "min_eig": fmt(verdict.min_eigenvalue),
        "conclusive": conclusive,
        "classification": cls.value,
    }


def decomposition_terms(dec: SeparableDecomposition) -> list:
    return [
        {"w": str(t.weight), "factor_a": matrix_strings(t.factor_a), "factor_b": matrix_strings(t.factor_b)}
        for t in dec.terms
    ]


@dataclass
class AnalysisReport:
    m: int
    n: int
    edges: list
    degree_symmetric: bool
    partially_symmetric: bool
    theorem_main: bool
    pure: bool
    rho_l: dict
    rho_q: dict
    decomposition: Optional[list]
    version: str = __version__
    timing_ms: Optional[str] = None

    @property
    def classification(self) -> Separability:
        return Separability(self.rho_l["classification"])

    def exit_code(self) -> int:
        return {Separability.SEPARABLE: 0, Separability.ENTANGLED: 1, Separability.PPT_INCONCLUSIVE: 2}[
            self.classification
        ]

    def to_dict(self) -> dict:
        out = asdict(self)
        if out["timing_ms"] is None:
            del out["timing_ms"]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))

    def render(self) -> str:
        lines = [
            f"graph: {self.m}x{self.n} layers, {len(self.edges)} edges",
            f"degree symmetric:    {self.degree_symmetric}",
            f"partially symmetric: {self.partially_symmetric}",
            f"sufficiency theorem: {self.theorem_main}",
            f"pure state:          {self.pure}",
        ]
        for name in ("rho_l", "rho_q"):
            b = getattr(self, name)
            lines.append(
                f"{name}: {b['classification']} (ppt={b['ppt']}, min_eig={b['min_eig']}, conclusive={b['conclusive']})"
            )
        if self.decomposition is not None:
            lines.append(f"separable decomposition of rho_l: {len(self.decomposition)} product terms")
        if self.timing_ms is not None:
            lines.append(f"time: {self.timing_ms} ms")
        return "\n".join(lines) + "\n"


def _certificate(g: LayeredGraph, kind: str) -> Optional[SeparableDecomposition]:
    try:
        dec = find_decomposition(g, kind)
    except GraphSepError:
        return None
    if dec is not None:
        dec.check(density(g, kind))
    return dec


def analyze(g: LayeredGraph, mode: str = "auto", timing: bool = False) -> AnalysisReport:
    """Flags, PPT verdicts for both states, and a decomposition when one is known."""
    start = time.perf_counter()
    dec_l = _certificate(g, "laplacian")
    dec_q = _certificate(g, "signless")
    report = AnalysisReport(
        m=g.m,
        n=g.n,
        edges=[list(e) for e in g.sorted_edges()],
        degree_symmetric=is_degree_symmetric(g),
        partially_symmetric=is_partially_symmetric(g),
        theorem_main=bool(theorem_main_check(g)),
        pure=is_pure(g),
        rho_l=ppt_block(ppt_test(density(g, "laplacian"), mode), dec_l is not None),
        rho_q=ppt_block(ppt_test(density(g, "signless"), mode), dec_q is not None),
        decomposition=decomposition_terms(dec_l) if dec_l is not None else None,
    )
    if timing:
        report.timing_ms = fmt((time.perf_counter() - start) * 1e3)
    return report
