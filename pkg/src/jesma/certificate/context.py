"""Verification context: the facts accumulated along one proof branch.

Holds the current (rewritten) equations, linear inequalities, residue
constraints on variables and exponent atoms, and the valuation-pattern
bookkeeping.  Linear implications are decided by Fourier-Motzkin
elimination with gcd rounding, so integer-only consequences such as
"2*z1 - y - 1 >= 0 and y even imply 2*z1 - y - 2 >= 0" are available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from ..reduction import OrderingClass
from ..symbolic import ExpExpr, Lin, Power, Term
from ..triples import Triple

__all__ = ["Context", "DivisibilityFact", "ProvenInequality", "normalize_terms", "terms_equal"]

Fact = tuple[tuple[tuple[str, int], ...], int]  # (coeffs, const): sum + const >= 0

_FM_FACT_CAP = 4000


def _normalize_fact(coeffs: dict[str, int], const: int) -> Fact:
    cs = {v: c for v, c in coeffs.items() if c}
    if cs:
        g = math.gcd(*[abs(c) for c in cs.values()])
        if g > 1:
            cs = {v: c // g for v, c in cs.items()}
            const = const // g  # floor: integer strengthening
    return (tuple(sorted(cs.items())), const)


def _eliminate(facts: list[Fact], var: str) -> list[Fact]:
    lows, ups, rest = [], [], []
    for cs, d in facts:
        c = dict(cs).get(var, 0)
        if c > 0:
            lows.append((dict(cs), d, c))
        elif c < 0:
            ups.append((dict(cs), d, -c))
        else:
            rest.append((cs, d))
    for lc, ld, a in lows:
        for uc, ud, b in ups:
            nc = {}
            for v in set(lc) | set(uc):
                nc[v] = b * lc.get(v, 0) + a * uc.get(v, 0)
            nc.pop(var, None)
            rest.append(_normalize_fact(nc, b * ld + a * ud))
    return list(dict.fromkeys(rest))


def _infeasible(facts: list[Fact]) -> bool:
    facts = [_normalize_fact(dict(cs), d) for cs, d in facts]
    while True:
        if any(not cs and d < 0 for cs, d in facts):
            return True
        variables = sorted({v for cs, _ in facts for v, _ in cs})
        if not variables:
            return False
        facts = _eliminate(facts, variables[0])
        if len(facts) > _FM_FACT_CAP:
            return False  # give up: treat as not provably infeasible


def normalize_terms(terms) -> tuple:
    """Canonical multiset form of a term list for exact comparison.

    Coefficients and integer bases are split into primes, so 2*2^(2x-1),
    4^x*5^x and 20^x all normalize through their prime decompositions."""
    from ..arith import factorize

    out = []
    for t in terms:
        if t.coef == 0:
            raise ValueError("zero coefficient term")
        sign = 1 if t.coef > 0 else -1
        plain: dict[int, Lin] = {}
        symbolic: dict[tuple[int, str, tuple], tuple[Lin, int, int]] = {}
        for prime, e in factorize(abs(t.coef)):
            plain[prime] = plain.get(prime, Lin.const_of(0)) + e
        for p in t.powers:
            e = p.exp
            if p.base == 1:
                continue
            for prime, mult in factorize(p.base):
                if e.sym is None:
                    plain[prime] = plain.get(prime, Lin.const_of(0)) + e.lin * mult
                else:
                    key = (prime, e.sym, e.lin.key())
                    lin, off, count = symbolic.get(key, (e.lin, 0, 0))
                    symbolic[key] = (lin, off + e.off * mult, count + mult)
        pows = [(b, ExpExpr(lin).key()) for b, lin in plain.items() if lin.key() != ((), 0)]
        pows += [
            (prime, ExpExpr(lin * count, sym, off).key())
            for (prime, sym, _), (lin, off, count) in symbolic.items()
        ]
        out.append((sign, tuple(sorted(pows))))
    return tuple(sorted(out))


def terms_equal(a, b) -> bool:
    return normalize_terms(a) == normalize_terms(b)


@dataclass(frozen=True)
class DivisibilityFact:
    divisor: Term
    side: str  # "-" or "+": divisor divides P - Q or P + Q
    p: Power
    q: Power

    def substituted(self, var: str, repl: Lin) -> "DivisibilityFact":
        return DivisibilityFact(
            self.divisor.substitute(var, repl),
            self.side,
            Power(self.p.base, self.p.exp.substitute(var, repl)),
            Power(self.q.base, self.q.exp.substitute(var, repl)),
        )


@dataclass(frozen=True)
class ProvenInequality:
    lhs: tuple[Term, ...]  # in context variables
    rhs: tuple[Term, ...]
    strict: bool

    def substituted(self, var: str, repl: Lin) -> "ProvenInequality":
        return ProvenInequality(
            tuple(t.substitute(var, repl) for t in self.lhs),
            tuple(t.substitute(var, repl) for t in self.rhs),
            self.strict,
        )


@dataclass(frozen=True)
class Context:
    triple: Triple | None
    k_min: int
    excluded: tuple[tuple[int, int, int], ...]
    equation_form: str
    ordering: OrderingClass | None = None
    equations: dict = field(default_factory=dict)  # id -> (lhs terms, rhs terms)
    facts: tuple[Fact, ...] = ()
    residues: dict = field(default_factory=dict)  # name -> (mod, frozenset)
    syms: tuple[str, ...] = ()
    pattern: tuple[int, ...] | None = None  # primes of k dividing the isolated base
    divisibilities: tuple[DivisibilityFact, ...] = ()
    proven: tuple[ProvenInequality, ...] = ()
    split_info: tuple[Power, Power] | None = None  # (P, Q) of enclosing factor split
    fixed: dict = field(default_factory=dict)  # name -> pinned integer value
    conflict: str | None = None

    # -- construction helpers --------------------------------------------------

    def with_fact(self, lin: Lin) -> "Context":
        return replace(self, facts=self.facts + (_normalize_fact(lin.as_dict(), lin.const),))

    def with_equation(self, eq_id: str, lhs, rhs) -> "Context":
        eqs = dict(self.equations)
        eqs[eq_id] = (tuple(lhs), tuple(rhs))
        return replace(self, equations=eqs)._parity_closure()

    def drop_equation(self, eq_id: str) -> "Context":
        eqs = dict(self.equations)
        eqs.pop(eq_id, None)
        return replace(self, equations=eqs)

    def with_residue(self, name: str, modulus: int, allowed) -> "Context":
        allowed = frozenset(a % modulus for a in allowed)
        res = dict(self.residues)
        conflict = self.conflict
        if name in res:
            m0, s0 = res[name]
            m1 = math.lcm(m0, modulus)
            s1 = frozenset(a for a in range(m1) if a % m0 in s0 and a % modulus in allowed)
            res[name] = (m1, s1)
        else:
            res[name] = (modulus, allowed)
        if not res[name][1] and conflict is None:
            conflict = name
        return replace(self, residues=res, conflict=conflict)._parity_closure()

    def with_syms(self, syms) -> "Context":
        return replace(self, syms=tuple(dict.fromkeys(self.syms + tuple(syms))))

    def with_divisibility(self, fact: DivisibilityFact) -> "Context":
        return replace(self, divisibilities=self.divisibilities + (fact,))

    def with_proven(self, ineq: ProvenInequality) -> "Context":
        return replace(self, proven=self.proven + (ineq,))

    # -- linear implication ------------------------------------------------------

    def _residue_substitution(self) -> dict[str, tuple[int, int]]:
        return {
            name: (m, next(iter(allowed)))
            for name, (m, allowed) in self.residues.items()
            if len(allowed) == 1
        }

    def _transform(self, coeffs: dict[str, int], const: int, subst) -> Fact:
        nc: dict[str, int] = {}
        nd = const
        for v, c in coeffs.items():
            if v in subst:
                m, r = subst[v]
                nc[f"{v}//{m}"] = nc.get(f"{v}//{m}", 0) + c * m
                nd += c * r
            else:
                nc[v] = nc.get(v, 0) + c
        return _normalize_fact(nc, nd)

    def _system(self) -> tuple[list[Fact], dict]:
        subst = self._residue_substitution()
        facts = [self._transform(dict(cs), d, subst) for cs, d in self.facts]
        for s in self.syms:
            facts.append(self._transform({s: 1}, -1, subst))
        return facts, subst

    def implied(self, lin: Lin) -> bool:
        """Is lin >= 0 forced by the accumulated facts (integer reasoning)?"""
        if self.conflict:
            return True
        system, subst = self._system()
        neg = lin * -1 - 1
        system.append(self._transform(neg.as_dict(), neg.const, subst))
        return _infeasible(system)

    def exp_at_least(self, e: ExpExpr, bound: int) -> bool:
        """Is the exponent expression provably >= bound?"""
        if e.sym is None:
            return self.implied(e.lin - bound)
        if e.sym not in self.syms:
            return False
        target = max(bound - e.off, 1)
        return self.implied(e.lin - target)

    def exp_lower_bound(self, e: ExpExpr, cap: int) -> int:
        """Largest b <= cap with the exponent provably >= b (0 if none)."""
        best = 0
        for b in range(1, cap + 1):
            if self.exp_at_least(e, b):
                best = b
            else:
                break
        return best

    # -- atoms and parity --------------------------------------------------------

    def atom_registry(self) -> dict[str, ExpExpr]:
        atoms: dict[str, ExpExpr] = {}
        for lhs, rhs in self.equations.values():
            for t in list(lhs) + list(rhs):
                for p in t.powers:
                    if p.exp.sym is not None:
                        bare = ExpExpr(p.exp.lin, p.exp.sym)
                        atoms[bare.atom_name()] = bare
        for f in self.divisibilities:
            for p in f.divisor.powers:
                if p.exp.sym is not None:
                    bare = ExpExpr(p.exp.lin, p.exp.sym)
                    atoms[bare.atom_name()] = bare
        return atoms

    def parity_of_lin(self, lin: Lin) -> int | None:
        total = lin.const % 2
        for v, c in lin.coeffs:
            if c % 2 == 0:
                continue
            par = self.parity_of_name(v)
            if par is None:
                return None
            total = (total + par) % 2
        return total

    def parity_of_name(self, name: str) -> int | None:
        if name in self.residues:
            m, allowed = self.residues[name]
            if m % 2 == 0:
                pars = {a % 2 for a in allowed}
                if len(pars) == 1:
                    return next(iter(pars))
        return None

    def _parity_closure(self) -> "Context":
        # an exponent atom sym*(lin) is even whenever its linear part is
        ctx = self
        for name, e in self.atom_registry().items():
            if ctx.parity_of_lin(e.lin) == 0 and ctx.parity_of_name(name) != 0:
                res = dict(ctx.residues)
                if name in res:
                    m0, s0 = res[name]
                    m1 = math.lcm(m0, 2)
                    s1 = frozenset(a for a in range(m1) if a % m0 in s0 and a % 2 == 0)
                    res[name] = (m1, s1)
                else:
                    res[name] = (2, frozenset({0}))
                conflict = ctx.conflict
                if not res[name][1] and conflict is None:
                    conflict = name
                ctx = replace(ctx, residues=res, conflict=conflict)
        return ctx

    # -- substitution --------------------------------------------------------------

    def substituted(self, var: str, stride: int, new_var: str) -> "Context":
        """Rewrite the whole context under var := stride * new_var."""
        registry = self.atom_registry()
        repl = Lin.var(new_var) * stride
        eqs = {
            eq_id: (
                tuple(t.substitute(var, repl) for t in lhs),
                tuple(t.substitute(var, repl) for t in rhs),
            )
            for eq_id, (lhs, rhs) in self.equations.items()
        }
        facts = []
        for cs, d in self.facts:
            nc = dict(cs)
            c = nc.pop(var, 0)
            if c:
                nc[new_var] = nc.get(new_var, 0) + c * stride
            facts.append(_normalize_fact(nc, d))
        res = {}
        for name, (m, allowed) in self.residues.items():
            if name == var:
                if m % stride == 0:
                    nm = m // stride
                    ns = frozenset(a // stride for a in allowed if a % stride == 0)
                    if nm >= 2:
                        res[new_var] = (nm, ns)
                continue
            if name in registry:
                new_name = registry[name].substitute(var, repl).atom_name()
                res[new_name] = (m, allowed)
            else:
                res[name] = (m, allowed)
        return replace(
            self,
            equations=eqs,
            facts=tuple(facts),
            residues=res,
            divisibilities=tuple(f.substituted(var, repl) for f in self.divisibilities),
            proven=tuple(p.substituted(var, repl) for p in self.proven),
            split_info=None
            if self.split_info is None
            else (
                Power(self.split_info[0].base, self.split_info[0].exp.substitute(var, repl)),
                Power(self.split_info[1].base, self.split_info[1].exp.substitute(var, repl)),
            ),
        )._parity_closure()
