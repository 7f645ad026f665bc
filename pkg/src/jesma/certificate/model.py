"""Certificate data model and canonical JSON serialization.

Certificates are data, never programs: each step carries only what the
verifier needs to recompute the claim from scratch.  All integers are
serialized as decimal strings so the canonical form is unambiguous at
any magnitude; canonical JSON has sorted keys and no whitespace.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from ..symbolic import ExpExpr, Lin, Power, Term

__all__ = [
    "Certificate",
    "Node",
    "MalformedCertificateError",
    "lin_to_json",
    "lin_from_json",
    "term_to_json",
    "term_from_json",
    "terms_to_json",
    "terms_from_json",
    "canonical_json",
    "certificate_to_json",
    "certificate_from_json",
    "loads_certificate",
    "dumps_certificate",
]

SCHEMA_VERSION = "1"


class MalformedCertificateError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


def lin_to_json(lin: Lin) -> dict:
    return {"c": {v: str(c) for v, c in lin.coeffs}, "d": str(lin.const)}


def lin_from_json(obj: dict, path: str = "lin") -> Lin:
    try:
        coeffs = {str(v): int(c) for v, c in obj.get("c", {}).items()}
        return Lin.of(int(obj.get("d", "0")), **coeffs)
    except (TypeError, ValueError, AttributeError) as e:
        raise MalformedCertificateError(path, f"bad linear form: {e}")


def exp_to_json(e: ExpExpr) -> dict:
    out: dict[str, Any] = {"lin": lin_to_json(e.lin)}
    if e.sym is not None:
        out["sym"] = e.sym
    if e.off:
        out["off"] = str(e.off)
    return out


def exp_from_json(obj: dict, path: str = "exp") -> ExpExpr:
    lin = lin_from_json(obj.get("lin", {}), path)
    return ExpExpr(lin, obj.get("sym"), int(obj.get("off", "0")))


def term_to_json(t: Term) -> dict:
    return {
        "coef": str(t.coef),
        "powers": [{"base": str(p.base), "exp": exp_to_json(p.exp)} for p in t.powers],
    }


def term_from_json(obj: dict, path: str = "term") -> Term:
    try:
        coef = int(obj["coef"])
        powers = tuple(
            Power(int(p["base"]), exp_from_json(p["exp"], path)) for p in obj.get("powers", [])
        )
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedCertificateError(path, f"bad term: {e}")
    return Term(coef, powers)


def terms_to_json(terms) -> list:
    return [term_to_json(t) for t in terms]


def terms_from_json(objs, path: str = "terms") -> tuple[Term, ...]:
    return tuple(term_from_json(o, f"{path}[{i}]") for i, o in enumerate(objs))


@dataclass(frozen=True)
class Node:
    """One proof step plus its children; leaves are contradiction steps."""

    step: dict
    children: tuple["Node", ...] = ()

    def to_json(self) -> dict:
        return {"step": self.step, "children": [c.to_json() for c in self.children]}

    @staticmethod
    def from_json(obj: dict, path: str = "tree") -> "Node":
        if not isinstance(obj, dict) or "step" not in obj:
            raise MalformedCertificateError(path, "node needs a 'step' object")
        step = obj["step"]
        if not isinstance(step, dict) or "kind" not in step:
            raise MalformedCertificateError(path, "step needs a 'kind'")
        children = tuple(
            Node.from_json(c, f"{path}.children[{i}]")
            for i, c in enumerate(obj.get("children", []))
        )
        return Node(step, children)


@dataclass(frozen=True)
class Certificate:
    """A machine-checkable nonexistence proof for one equation.

    The tree's splits must exhaust their domains and every leaf must be a
    contradiction the verifier re-derives; together they show the target
    equation has no solutions beyond the excluded set, under the recorded
    hypotheses (for scaled Pythagorean targets: k >= k_min).
    """

    title: str
    equation: dict
    excluded: tuple[tuple[int, int, int], ...]
    tree: Node
    metadata: dict = field(default_factory=dict)
    version: str = SCHEMA_VERSION

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "title": self.title,
            "metadata": self.metadata,
            "equation": self.equation,
            "excluded": [[str(a) for a in sol] for sol in self.excluded],
            "tree": self.tree.to_json(),
        }

    @staticmethod
    def from_json(obj: dict) -> "Certificate":
        if not isinstance(obj, dict):
            raise MalformedCertificateError("$", "certificate must be a JSON object")
        for key in ("version", "title", "equation", "tree"):
            if key not in obj:
                raise MalformedCertificateError("$", f"missing field {key!r}")
        if obj["version"] != SCHEMA_VERSION:
            raise MalformedCertificateError("$.version", f"unsupported version {obj['version']!r}")
        try:
            excluded = tuple(tuple(int(a) for a in sol) for sol in obj.get("excluded", []))
        except (TypeError, ValueError) as e:
            raise MalformedCertificateError("$.excluded", str(e))
        return Certificate(
            title=str(obj["title"]),
            equation=obj["equation"],
            excluded=excluded,
            tree=Node.from_json(obj["tree"], "$.tree"),
            metadata=obj.get("metadata", {}),
            version=obj["version"],
        )


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def certificate_to_json(cert: Certificate) -> dict:
    return cert.to_json()


def certificate_from_json(obj: dict) -> Certificate:
    return Certificate.from_json(obj)


def dumps_certificate(cert: Certificate) -> str:
    return canonical_json(cert.to_json())


def loads_certificate(text: str) -> Certificate:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedCertificateError("$", f"invalid JSON: {e}")
    return Certificate.from_json(obj)
