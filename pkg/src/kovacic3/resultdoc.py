"""Result documents: structured output of the pipeline with exact encodings.

The machine format keeps everything exact: rationals as "n/d" strings,
polynomials as coefficient lists, radicals as (base, index) nodes.  The text
format is the human-readable report.  parse(serialize(doc)) round-trips.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .rationals import QQ, den, num, qq
from .ratfunc import RatFunc
from .scalars import QuadElt
from .unipoly import UniPoly


def enc_scalar(c):
    if isinstance(c, QuadElt):
        return {"a": enc_scalar(c.a), "b": enc_scalar(c.b), "D": c.D}
    return f"{num(c)}/{den(c)}"


def dec_scalar(v):
    if isinstance(v, dict):
        return QuadElt.make(dec_scalar(v["a"]), dec_scalar(v["b"]), v["D"])
    n, d = v.split("/")
    return qq(int(n), int(d))


def enc_poly(p: UniPoly):
    return {"var": p.var, "coeffs": [enc_scalar(c) for c in p.coeffs]}


def dec_poly(v) -> UniPoly:
    return UniPoly([dec_scalar(c) for c in v["coeffs"]], v["var"])


def enc_ratfunc(r: RatFunc):
    return {"num": enc_poly(r.num), "den": enc_poly(r.den)}


def dec_ratfunc(v) -> RatFunc:
    return RatFunc(dec_poly(v["num"]), dec_poly(v["den"]))


def enc_algelem(e):
    return [enc_ratfunc(c) for c in e.coeffs]


@dataclass
class ResultDocument:
    operator: dict  # encoded coefficient polynomials
    classification: str
    evidence: list
    payload_kind: str  # riccati | pullback | a5 | reducible | none
    payload: dict
    prefactor: dict | None
    verification: dict | None
    timings: dict
    notes: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {
                "operator": self.operator,
                "classification": self.classification,
                "evidence": self.evidence,
                "payload_kind": self.payload_kind,
                "payload": self.payload,
                "prefactor": self.prefactor,
                "verification": self.verification,
                "timings": self.timings,
                "notes": self.notes,
            },
            indent=2,
        )

    @staticmethod
    def from_json(text: str) -> "ResultDocument":
        d = json.loads(text)
        return ResultDocument(
            operator=d["operator"],
            classification=d["classification"],
            evidence=d["evidence"],
            payload_kind=d["payload_kind"],
            payload=d["payload"],
            prefactor=d.get("prefactor"),
            verification=d.get("verification"),
            timings=d.get("timings", {}),
            notes=d.get("notes", []),
        )

    def to_text(self) -> str:
        lines = []
        lines.append(f"classification: {self.classification}")
        for ev in self.evidence:
            name = ev.get("name", "?")
            lines.append(
                f"  probe {name}: candidates={ev.get('candidates', '?')} "
                f"witnesses={ev.get('witnesses', '?')} ({ev.get('seconds', 0):.3f}s)"
            )
        if self.prefactor:
            lines.append(f"prefactor: {self.prefactor.get('formula')}")
        lines.append(f"solutions: {self.payload_kind}")
        for key, val in sorted(self.payload.items()):
            if key.startswith("_"):
                continue
            sval = str(val)
            if len(sval) > 2000:
                sval = sval[:2000] + "..."
            lines.append(f"  {key}: {sval}")
        if self.verification:
            lines.append(
                f"verification: residual {self.verification.get('residual'):.3e} "
                f"(tolerance {self.verification.get('tolerance'):.1e}) "
                f"{'PASS' if self.verification.get('passed') else 'FAIL'}"
            )
        for n in self.notes:
            lines.append(f"note: {n}")
        lines.append("timings: " + ", ".join(f"{k}={v:.3f}s" for k, v in self.timings.items()))
        return "\n".join(lines)


def document_from_solution(L, solset, verification=None, timings=None) -> ResultDocument:
    cls = solset.classification
    payload: dict = {}
    kind = solset.kind
    if kind == "riccati" and solset.riccati is not None:
        R, w = solset.riccati
        payload["riccati"] = repr(R)
        payload["riccati_coeffs"] = [enc_ratfunc(c) for c in R.coeffs]
        payload["semi_invariant_radical"] = f"({w.p})^(1/{w.r})"
    elif kind == "pullback" and solset.pullback is not None:
        sol = solset.pullback
        payload["hypergeometric"] = sol.tag()
        payload["qmin"] = [enc_poly(c) for c in sol.qmin]
        payload["s"] = repr(sol.s)
        payload["C"] = "3x3 matrix over Q(z)[f]/(Qmin), times the radical below"
        payload["C_entries"] = [[enc_algelem(sol.C[i][j]) for j in range(3)] for i in range(3)]
        payload["radical"] = {"base": repr(sol.h_base), "index": sol.h_index}
        payload["group"] = sol.group
    elif kind == "a5" and solset.a5 is not None:
        sol = solset.a5
        payload["second_order_operator"] = (
            f"Dz^2 + ({sol.l0_coeffs[1]})*Dz + ({sol.l0_coeffs[0]})"
        )
        payload["qmin"] = [enc_poly(c) for c in sol.qmin]
        payload["frame"] = sol.notes[0]
    elif kind == "reducible":
        red = cls.reducibility
        payload["right_factors"] = [f.describe() for f in red.right_factors]
        payload["left_factors"] = [f.describe() for f in red.left_factors]
        payload["dimension_note"] = red.liouvillian_dimension_note()
    else:
        payload["reason"] = "; ".join(cls.notes) or "no Liouvillian solutions"
    ver = None
    if verification is not None:
        ver = {
            "residual": verification.residual,
            "tolerance": verification.tolerance,
            "passed": verification.passed,
            "kind": verification.kind,
        }
    return ResultDocument(
        operator={"coeffs": [enc_poly(c) for c in L.coeffs]},
        classification=cls.tag,
        evidence=[{k: v for k, v in ev.items() if k != "probe" or True} for ev in cls.evidence],
        payload_kind=kind,
        payload=payload,
        prefactor=solset.prefactor.to_payload() if solset.prefactor else None,
        verification=ver,
        timings=timings or {},
        notes=list(solset.notes),
    )
