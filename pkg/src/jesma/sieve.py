"""Exponential congruence engine.

Solves congruences  sum_i c_i * prod_j b_ij ** e_ij  == 0 (mod m)  exactly,
where each exponent is a linear form in integer variables or a valuation
symbol times such a form.  Every variable's residue is periodic modulo the
multiplicative order of the bases it feeds, so the full solution set lives
on a finite torus which is enumerated outright.  A "killing modulus" is an
m whose torus holds no solutions under the given constraints: it certifies
that the original equation has no integer solutions satisfying them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import product as iproduct

from .arith import mult_order
from .symbolic import ExpExpr, Lin, Term

__all__ = [
    "ConstraintSet",
    "ResidueClassSet",
    "SieveError",
    "NotAUnitError",
    "UnsupportedModulusError",
    "TorusTooLargeError",
    "congruence_solutions",
    "two_term_solutions",
    "find_killing_modulus",
    "KillingWitness",
]

TORUS_CELL_LIMIT = 4_000_000


class SieveError(ValueError):
    pass


class NotAUnitError(SieveError):
    pass


class UnsupportedModulusError(SieveError):
    """The modulus mixes zero-divisor bases in a way the torus model
    cannot represent; the caller should pick a different modulus."""


class TorusTooLargeError(SieveError):
    pass


@dataclass(frozen=True)
class ConstraintSet:
    """Per-variable residue constraints plus exact linear congruences.

    residues maps a variable (or exponent-atom name) to (modulus, allowed
    residue set); fixed pins a variable to one value; lower_bounds record
    known minima (every exponent variable is >= 1 unless stated).
    """

    residues: dict[str, tuple[int, frozenset[int]]] = field(default_factory=dict)
    fixed: dict[str, int] = field(default_factory=dict)
    lower_bounds: dict[str, int] = field(default_factory=dict)
    congruences: tuple[tuple[Lin, int], ...] = ()

    @staticmethod
    def none() -> "ConstraintSet":
        return ConstraintSet()

    def lower_bound(self, name: str) -> int:
        if name in self.fixed:
            return self.fixed[name]
        return self.lower_bounds.get(name, 1)

    def with_fixed(self, name: str, value: int) -> "ConstraintSet":
        return replace(self, fixed={**self.fixed, name: value})

    def with_residue(self, name: str, modulus: int, allowed: set[int]) -> "ConstraintSet":
        if modulus < 2:
            raise SieveError(f"constraint modulus must be >= 2, got {modulus}")
        allowed = {a % modulus for a in allowed}
        merged = dict(self.residues)
        if name in merged:
            m0, s0 = merged[name]
            m1 = math.lcm(m0, modulus)
            s1 = frozenset(a for a in range(m1) if a % m0 in s0 and a % modulus in allowed)
            merged[name] = (m1, s1)
        else:
            merged[name] = (modulus, frozenset(allowed))
        return replace(self, residues=merged)

    def with_parity(self, name: str, parity: int) -> "ConstraintSet":
        return self.with_residue(name, 2, {parity % 2})

    def with_lower_bound(self, name: str, bound: int) -> "ConstraintSet":
        return replace(self, lower_bounds={**self.lower_bounds, name: bound})

    def with_congruence(self, lin: Lin, modulus: int) -> "ConstraintSet":
        return replace(self, congruences=self.congruences + ((lin, modulus),))

    def residue_allows(self, name: str, value: int) -> bool:
        if name in self.residues:
            m, allowed = self.residues[name]
            return value % m in allowed
        return True

    def unsatisfiable_names(self) -> list[str]:
        bad = [n for n, (_, s) in self.residues.items() if not s]
        bad += [n for n, v in self.fixed.items() if not self.residue_allows(n, v)]
        return sorted(set(bad))


@dataclass(frozen=True)
class ResidueClassSet:
    """Exact solution set of one congruence on its finite torus.

    Each tuple lists one residue per variable, reduced into [0, period).
    The set is complete: a tuple satisfies the congruence under the
    constraints iff it is listed.
    """

    modulus: int
    variables: tuple[str, ...]
    periods: tuple[int, ...]
    tuples: frozenset[tuple[int, ...]]

    def is_empty(self) -> bool:
        return not self.tuples

    def period_of(self, name: str) -> int:
        return self.periods[self.variables.index(name)]

    def project(self, name: str) -> frozenset[int]:
        i = self.variables.index(name)
        return frozenset(t[i] for t in self.tuples)

    def __len__(self) -> int:
        return len(self.tuples)


def _is_const_exp(e: ExpExpr) -> bool:
    return e.sym is None and e.lin.is_const()


def _lin_lower_bound(lin: Lin, constraints: ConstraintSet) -> int:
    # sum of per-variable lower bounds; a negative coefficient makes the
    # crude bound unusable, fall back to 1.
    total = lin.const
    for v, c in lin.coeffs:
        if c < 0:
            return 1
        total += c * constraints.lower_bound(v)
    return total


def _exp_lower_bound(e: ExpExpr, constraints: ConstraintSet) -> int:
    if _is_const_exp(e):
        return e.lin.const
    # hints are keyed by the bare atom (sym*(lin) or the linear form), so a
    # constant offset is applied on top of the hinted bound
    hint = constraints.lower_bounds.get(e.atom_name())
    if hint is not None:
        return hint + e.off if e.sym is not None else hint
    if e.sym is not None:
        return constraints.lower_bound(e.sym) * _lin_lower_bound(e.lin, constraints) + e.off
    return _lin_lower_bound(e.lin, constraints)


def _term_is_constant_zero(term: Term, m: int, constraints: ConstraintSet) -> bool:
    # A term vanishes identically mod m when m divides coef * prod(b**lb)
    # with lb a proven lower bound for each exponent.  Divisibility by m
    # never needs more than bit_length(m) copies of a base, so cap there.
    cap = m.bit_length() + 1
    acc = term.coef % m
    for p in term.powers:
        lb = _exp_lower_bound(p.exp, constraints)
        if lb < 0:
            return False
        acc = acc * pow(p.base, min(lb, cap), m) % m
    return acc == 0


@dataclass
class _EvalPower:
    base: int
    order: int
    exp: ExpExpr
    atom: str | None  # enumeration name when exp is symbol-scaled


def _build_plan(
    terms: list[Term], m: int, constraints: ConstraintSet, order_cap: int | None
) -> tuple[list[tuple[int, list[_EvalPower]]], list[tuple[str, int]]]:
    live: list[tuple[int, list[_EvalPower]]] = []
    moduli: dict[str, int] = {}
    orders: dict[int, int] = {}

    def order_of(base: int) -> int:
        b = base % m
        if b not in orders:
            orders[b] = mult_order(b, m)
            if order_cap is not None and orders[b] > order_cap:
                raise TorusTooLargeError(f"order of {base} mod {m} is {orders[b]} > cap {order_cap}")
        return orders[b]

    for term in terms:
        varying = [p for p in term.powers if not _is_const_exp(p.exp)]
        if varying and _term_is_constant_zero(term, m, constraints):
            continue
        if any(math.gcd(p.base, m) != 1 for p in varying):
            raise UnsupportedModulusError(
                f"term {term} has a non-unit base modulo {m} and does not vanish"
            )
        evals: list[_EvalPower] = []
        const_part = term.coef % m
        for p in term.powers:
            if _is_const_exp(p.exp):
                if p.exp.lin.const < 0:
                    raise SieveError(f"negative constant exponent in {term}")
                const_part = const_part * pow(p.base, p.exp.lin.const, m) % m
                continue
            order = order_of(p.base)
            atom = p.exp.atom_name() if p.exp.sym is not None else None
            evals.append(_EvalPower(p.base % m, order, p.exp, atom))
            if atom is not None:
                moduli[atom] = math.lcm(moduli.get(atom, 1), order)
            else:
                for v, _ in p.exp.lin.coeffs:
                    moduli[v] = math.lcm(moduli.get(v, 1), order)
        live.append((const_part, evals))

    for name, (cm, _) in constraints.residues.items():
        if name in moduli:
            moduli[name] = math.lcm(moduli[name], cm)
    for lin, cm in constraints.congruences:
        for v, _ in lin.coeffs:
            if v in moduli:
                moduli[v] = math.lcm(moduli[v], cm)
    plan = sorted(moduli.items())
    cells = 1
    for _, period in plan:
        cells *= period
        if cells > TORUS_CELL_LIMIT:
            raise TorusTooLargeError(f"torus has more than {TORUS_CELL_LIMIT} cells")
    return live, plan


def congruence_solutions(
    terms: list[Term],
    m: int,
    constraints: ConstraintSet | None = None,
    order_cap: int | None = None,
) -> ResidueClassSet:
    """Exact solutions of  sum(terms) == 0 (mod m)  on the residue torus.

    Variables with plain linear exponents are enumerated directly; an
    exponent of the shape sym*(linear) is enumerated as one opaque atom
    over all residues, which can only enlarge the solution set and so
    keeps emptiness results sound.
    """
    if m < 2:
        raise SieveError(f"modulus must be >= 2, got {m}")
    if not terms:
        raise SieveError("empty congruence")
    constraints = constraints or ConstraintSet.none()
    live, plan = _build_plan(terms, m, constraints, order_cap)
    names = tuple(n for n, _ in plan)
    periods = tuple(p for _, p in plan)
    if constraints.unsatisfiable_names():
        return ResidueClassSet(m, names, periods, frozenset())

    candidates: list[list[int]] = []
    for name, period in plan:
        if name in constraints.fixed:
            v = constraints.fixed[name] % period
            opts = [v] if constraints.residue_allows(name, constraints.fixed[name]) else []
        else:
            opts = [v for v in range(period) if constraints.residue_allows(name, v)]
        candidates.append(opts)

    relevant_congruences = [
        (lin, cm) for lin, cm in constraints.congruences if lin.variables() <= set(names)
    ]
    solutions: set[tuple[int, ...]] = set()
    for combo in iproduct(*candidates):
        values = dict(zip(names, combo))
        if any(lin.evaluate(values) % cm != 0 for lin, cm in relevant_congruences):
            continue
        total = 0
        for const_part, evals in live:
            t = const_part
            for ep in evals:
                if ep.atom is not None:
                    e = (values[ep.atom] + ep.exp.off) % ep.order
                else:
                    e = ep.exp.lin.evaluate(values) % ep.order
                t = t * pow(ep.base, e, m) % m
            total = (total + t) % m
        if total == 0:
            solutions.add(tuple(combo))
    return ResidueClassSet(m, names, periods, frozenset(solutions))


def two_term_solutions(
    a: int, b: int, m: int, constraints: ConstraintSet | None = None
) -> ResidueClassSet:
    """All (z, x) residues with a**z == b**x (mod m); bases must be units."""
    if m < 2:
        raise SieveError(f"modulus must be >= 2, got {m}")
    for name, base in (("a", a), ("b", b)):
        if math.gcd(base, m) != 1:
            raise NotAUnitError(f"{name} = {base} is not a unit modulo {m}")
    terms = [
        Term.of(1, (a, ExpExpr(Lin.var("z")))),
        Term.of(-1, (b, ExpExpr(Lin.var("x")))),
    ]
    return congruence_solutions(terms, m, constraints)


@dataclass(frozen=True)
class KillingWitness:
    modulus: int
    solutions: ResidueClassSet
    scanned: tuple[int, ...]
    skipped: tuple[tuple[int, str], ...]


def find_killing_modulus(
    terms: list[Term],
    constraints: ConstraintSet | None = None,
    m_max: int = 200,
    order_cap: int = 120,
) -> KillingWitness | None:
    """Smallest m <= m_max whose congruence has no solutions under the
    constraints, or None.  Moduli the torus model cannot represent
    (zero-divisor bases, oversized orders) are skipped and recorded."""
    if m_max < 2:
        raise SieveError(f"m_max must be >= 2, got {m_max}")
    constraints = constraints or ConstraintSet.none()
    scanned: list[int] = []
    skipped: list[tuple[int, str]] = []
    for m in range(2, m_max + 1):
        try:
            rcs = congruence_solutions(terms, m, constraints, order_cap=order_cap)
        except (UnsupportedModulusError, TorusTooLargeError) as e:
            skipped.append((m, str(e)))
            continue
        scanned.append(m)
        if rcs.is_empty():
            return KillingWitness(m, rcs, tuple(scanned), tuple(skipped))
    return None
