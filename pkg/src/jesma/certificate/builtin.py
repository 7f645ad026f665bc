"""Shipped certificates.

The centerpiece certifies that (20k)^x + (99k)^y = (101k)^z has no
solution other than (2, 2, 2) for any k >= 2 (the k = 1 base case is
Lu's classical theorem, reproduced by the search corpus at desk scale).
The case tree splits on the ordering of the exponents, then on which
primes of the isolated base divide k; each branch dies on a congruence,
a residue conflict, or an exponential-growth inequality.

Two smaller certificates ship alongside it: the z < x < y ordering on
its own, and the standalone mod-17 congruence kill.
"""

from __future__ import annotations

from ..reduction import OrderingClass, factor_k_symbolic
from ..symbolic import ExpExpr, Lin, Power, Term
from ..triples import Triple
from .ineq import IneqClaim, claim_to_json
from .model import Certificate, Node, exp_to_json, lin_to_json, term_to_json, terms_to_json

__all__ = ["builtin_certificates", "theorem_20_99_101", "killing_certificate"]

_TRIPLE = Triple(20, 99, 101)


def _v(name: str) -> ExpExpr:
    return ExpExpr(Lin.var(name))


def _lin(const: int = 0, **coeffs: int) -> Lin:
    return Lin.of(const, **coeffs)


def _t(coef: int, *powers: tuple[int, ExpExpr]) -> Term:
    return Term.of(coef, *powers)


def _node(step: dict, *children: Node) -> Node:
    return Node(step, tuple(children))


def _contradiction(reason: str, **payload) -> Node:
    return _node({"kind": "contradiction", "reason": reason, **payload})


def _k_factor_node(pattern: set[int], ordering: OrderingClass, *children: Node) -> Node:
    form = factor_k_symbolic(_TRIPLE, pattern, ordering)
    step = {
        "kind": "k-factor",
        "pattern": [str(p) for p in sorted(pattern)],
        "relations": [
            {
                "prime": str(r.prime),
                "val": str(r.val),
                "lhs": lin_to_json(r.lhs),
                "rhs": lin_to_json(r.rhs),
            }
            for r in form.relations
        ],
        "cofactor": str(form.cofactor),
        "reduced_lhs": terms_to_json(form.reduced_lhs),
        "reduced_rhs": terms_to_json(form.reduced_rhs),
    }
    if form.contradiction:
        step["contradiction"] = form.contradiction
    return _node(step, *children)


def _congruence(eq: str, modulus: int, derive: list[tuple[str, int, set[int]]], *children: Node) -> Node:
    return _node(
        {
            "kind": "congruence",
            "eq": eq,
            "modulus": str(modulus),
            "derive": [
                {"name": name, "modulus": str(m), "residues": [str(r) for r in sorted(rs)]}
                for name, m, rs in derive
            ],
        },
        *children,
    )


def _substitute(var: str, stride: int, new: str, child: Node) -> Node:
    return _node({"kind": "substitute", "var": var, "stride": str(stride), "new": new}, child)


def _empty_congruence(eq: str, modulus: int) -> Node:
    return _contradiction("empty-congruence", eq=eq, modulus=str(modulus))


def _claim(
    slacks: list[str],
    mapping: dict[str, Lin],
    inverse: dict[str, tuple[Lin, int]],
    lhs: list[Term],
    rhs: list[Term],
    ctx_lhs: list[Term],
    ctx_rhs: list[Term],
    strict: bool,
) -> dict:
    return claim_to_json(
        IneqClaim(
            slacks=tuple(slacks),
            mapping=tuple(sorted(mapping.items())),
            inverse=tuple(sorted((s, lin, d) for s, (lin, d) in inverse.items())),
            lhs=tuple(lhs),
            rhs=tuple(rhs),
            ctx_lhs=tuple(ctx_lhs),
            ctx_rhs=tuple(ctx_rhs),
            strict=strict,
        )
    )


def _subset_link(ctx_lhs: list[Term], ctx_rhs: list[Term]) -> dict:
    return {"subset": True, "ctx_lhs": terms_to_json(ctx_lhs), "ctx_rhs": terms_to_json(ctx_rhs)}


# -- case 1.1 (z < x < y) and case 2.1 (z < y < x) ------------------------------------
# With k = 101^s the whole equation collapses to 1 = B2^e2 + B3^e3 * 101^(...):
# the right side is astronomically larger than 1.


def _sum_exceeds_one(e2: str, b2: int, e3: str, b3: int, atom: ExpExpr) -> Node:
    # context: 1 <= e1 < e2 < e3 renamed here to the actual variable names
    u, w, h = "u", "w", "h"
    f_e2 = _lin(2, u=1)
    f_e3 = _lin(3, u=1, w=1)
    f_atom = _lin(1, h=1)
    claim = _claim(
        slacks=[u, w, h],
        mapping={e2: f_e2, e3: f_e3, atom.atom_name(): f_atom},
        inverse={
            u: (Lin.var(e2) - 2, 1),
            w: (Lin.var(e3) - Lin.var(e2) - 1, 1),
            h: (Lin.var(atom.atom_name()) - 1, 1),
        },
        lhs=[
            Term.of(1, (b2, ExpExpr(f_e2))),
            Term.of(1, (b3, ExpExpr(f_e3)), (101, ExpExpr(f_atom))),
        ],
        rhs=[_t(1)],
        ctx_lhs=[_t(1, (b2, _v(e2))), Term.of(1, (b3, _v(e3)), (101, atom))],
        ctx_rhs=[_t(1)],
        strict=True,
    )
    return _contradiction("equation-impossible", eq="main", larger="rhs", claims=[claim])


def _case_isolated_w(ordering: OrderingClass) -> Node:
    # valuation split over the primes of 101
    if ordering == OrderingClass.CASE_1_1:  # z < x < y: bracket = 20^x + 99^y*101^(s(y-x))
        kill = _sum_exceeds_one("x", 20, "y", 99, ExpExpr(_lin(0, y=1, x=-1), "s"))
    else:  # z < y < x: bracket = 99^y + 20^x*101^(s(x-y))
        kill = _sum_exceeds_one("y", 99, "x", 20, ExpExpr(_lin(0, x=1, y=-1), "s"))
    return _node(
        {"kind": "valuation-split", "cases": [[], ["101"]]},
        _k_factor_node(set(), ordering, _contradiction("k-forced-one")),
        _k_factor_node({101}, ordering, kill),
    )


# -- case 1.2 (x < z < y): isolate 20, split on which of {2, 5} divide k ---------------


def _divisor_chain_11_over(q_base: int, q_exp_var: str) -> list[dict]:
    """11^y > 106^z1 >= 101^z1 + Q, for Q = 5^x1 (q via slack u) -- the
    pairwise encoding of the classical five-term chain."""
    u, t, w = "u", "t", "w"
    f_q = _lin(1, u=1)
    f_z1 = _lin(2, u=1, t=1)
    f_y = _lin(5, u=2, t=2, w=1)
    inverse = {
        u: (Lin.var(q_exp_var) - 1, 1),
        t: (Lin.var("z1") - Lin.var(q_exp_var) - 1, 1),
        w: (Lin.var("y") - Lin.var("z1") * 2 - 1, 1),
    }
    c1 = _claim(
        slacks=[u, t, w],
        mapping={q_exp_var: f_q, "z1": f_z1, "y": f_y},
        inverse=inverse,
        lhs=[Term.of(1, (11, ExpExpr(f_y)))],
        rhs=[Term.of(1, (106, ExpExpr(f_z1)))],
        ctx_lhs=[_t(1, (11, _v("y")))],
        ctx_rhs=[_t(1, (106, _v("z1")))],
        strict=True,
    )
    c2 = _claim(
        slacks=[u, t],
        mapping={q_exp_var: f_q, "z1": _lin(2, u=1, t=1)},
        inverse={u: inverse[u], t: inverse[t]},
        lhs=[Term.of(1, (106, _lin_exp(2, u=1, t=1)))],
        rhs=[Term.of(1, (101, _lin_exp(2, u=1, t=1))), Term.of(1, (q_base, ExpExpr(f_q)))],
        ctx_lhs=[_t(1, (106, _v("z1")))],
        ctx_rhs=[_t(1, (101, _v("z1"))), _t(1, (q_base, _v(q_exp_var)))],
        strict=False,
    )
    return [c1, c2]


def _lin_exp(const: int = 0, **coeffs: int) -> ExpExpr:
    return ExpExpr(Lin.of(const, **coeffs))


def _case_1_2() -> Node:
    ordering = OrderingClass.CASE_1_2
    even = [("z", 2, {0})]

    # k = 2^r * n1: 5^x = 101^z - 99^y*2^(r(y-z)); mod 33 forces x, z even,
    # then 11^y must divide 101^z1 -+ 5^x1, both smaller than 11^y.
    branch_2 = _k_factor_node(
        {2},
        ordering,
        _congruence(
            "main",
            33,
            [("x", 2, {0}), ("z", 2, {0})],
            _substitute(
                "x",
                2,
                "x1",
                _substitute(
                    "z",
                    2,
                    "z1",
                    _node(
                        {
                            "kind": "factor-split",
                            "eq": "main",
                            "p": {"base": "101", "exp": exp_to_json(_v("z1"))},
                            "q": {"base": "5", "exp": exp_to_json(_v("x1"))},
                            "parts": [{"prime": "11", "exp": exp_to_json(_v("y"))}],
                            "complete": False,
                            "cases": [{"placement": {"11": "-"}}, {"placement": {"11": "+"}}],
                        },
                        _contradiction(
                            "divisor-too-large", fact="0", claims=_divisor_chain_11_over(5, "x1")
                        ),
                        _contradiction(
                            "divisor-too-large", fact="0", claims=_divisor_chain_11_over(5, "x1")
                        ),
                    ),
                ),
            ),
        ),
    )

    # k = 5^s * n1: 2^(2x) = 101^z - 99^y*5^(s(y-z)); mod 11 forces z even,
    # the factors 101^z1 -+ 2^x are coprime and both below 11^y.
    d, t, w = "d", "t", "w"
    f_z1 = _lin(1, t=1)
    f_x = _lin(1, t=2, d=-1)
    f_y = _lin(3, t=2, w=1)
    chain_5 = [
        _claim(
            slacks=[t, d, w],
            mapping={"z1": f_z1, "x": f_x, "y": f_y},
            inverse={
                t: (Lin.var("z1") - 1, 1),
                d: (Lin.var("z1") * 2 - Lin.var("x") - 1, 1),
                w: (Lin.var("y") - Lin.var("z1") * 2 - 1, 1),
            },
            lhs=[Term.of(1, (11, ExpExpr(f_y)))],
            rhs=[Term.of(1, (101, ExpExpr(f_z1))), Term.of(1, (2, ExpExpr(f_x)))],
            ctx_lhs=[_t(1, (11, _v("y")))],
            ctx_rhs=[_t(1, (101, _v("z1"))), _t(1, (2, _v("x")))],
            strict=True,
        )
    ]
    branch_5 = _k_factor_node(
        {5},
        ordering,
        _congruence(
            "main",
            11,
            even,
            _substitute(
                "z",
                2,
                "z1",
                _node(
                    {
                        "kind": "factor-split",
                        "eq": "main",
                        "p": {"base": "101", "exp": exp_to_json(_v("z1"))},
                        "q": {"base": "2", "exp": exp_to_json(_v("x"))},
                        "parts": [{"prime": "11", "exp": exp_to_json(_v("y"))}],
                        "complete": False,
                        "cases": [{"placement": {"11": "-"}}, {"placement": {"11": "+"}}],
                    },
                    _contradiction("divisor-too-large", fact="0", claims=chain_5),
                    _contradiction("divisor-too-large", fact="0", claims=chain_5),
                ),
            ),
        ),
    )

    # k = 2^r*5^s*n1: 101^z - 1 = 99^y*2^(r(y-z))*5^(s(y-z)); z is even mod 3
    # and mod 17 the unit right side would have to vanish.
    branch_25 = _k_factor_node(
        {2, 5},
        ordering,
        _congruence("main", 3, even, _empty_congruence("main", 17)),
    )

    return _node(
        {"kind": "valuation-split", "cases": [[], ["2"], ["5"], ["2", "5"]]},
        _k_factor_node(set(), ordering, _contradiction("k-forced-one")),
        branch_2,
        branch_5,
        branch_25,
    )


# -- case 2.2 (y < z < x): isolate 99, split on which of {3, 11} divide k ---------------


def _fsplit_22(q_base: int, q_exp: ExpExpr, odd_prime: int, odd_exp: ExpExpr, cases) -> Node:
    parts = [
        {"two": True, "exp": exp_to_json(_lin_exp(0, x=2))},
        {"prime": "5", "exp": exp_to_json(_v("x"))},
        {"prime": str(odd_prime), "exp": exp_to_json(odd_exp)},
    ]
    case_objs = []
    children = []
    for placement, child in cases:
        entry = {"placement": placement}
        fm, fp = _factors_for(placement, odd_prime, odd_exp)
        entry["fminus"] = term_to_json(fm)
        entry["fplus"] = term_to_json(fp)
        case_objs.append(entry)
        children.append(child)
    step = {
        "kind": "factor-split",
        "eq": "main",
        "p": {"base": "101", "exp": exp_to_json(_v("z1"))},
        "q": {"base": str(q_base), "exp": exp_to_json(q_exp)},
        "parts": parts,
        "complete": True,
        "cases": case_objs,
    }
    return _node(step, *children)


def _factors_for(placement: dict, odd_prime: int, odd_exp: ExpExpr) -> tuple[Term, Term]:
    minus: list[Power] = []
    plus: list[Power] = []
    heavy = Power(2, ExpExpr(_lin(0, x=2), None, 0).shifted(-1))
    light = Power(2, _lin_exp(1))
    (minus if placement["two"] == "-" else plus).append(heavy)
    (plus if placement["two"] == "-" else minus).append(light)
    (minus if placement["5"] == "-" else plus).append(Power(5, _v("x")))
    (minus if placement[str(odd_prime)] == "-" else plus).append(Power(odd_prime, odd_exp))
    return Term(1, tuple(minus)), Term(1, tuple(plus))


def _heavy_pile_kill(q_base: int, q_exp: ExpExpr, extra: list[tuple[int, ExpExpr]], slack_bases: dict) -> Node:
    """The 2^(2x-1)*5^x pile exceeds 101^z1 alone, so P = Q + pile is
    impossible: encoded as Q + pile >= pile > P."""
    slacks = slack_bases["slacks"]
    mapping = slack_bases["mapping"]
    inverse = slack_bases["inverse"]
    fwd = dict(mapping)

    def fwd_exp(e: ExpExpr) -> ExpExpr:
        if e.sym is None:
            out = Lin.const_of(e.lin.const)
            for v, c in e.lin.coeffs:
                out = out + fwd[v] * c
            return ExpExpr(out)
        out = fwd[e.atom_name()] + e.off
        return ExpExpr(out)

    pile_ctx = Term(
        1,
        tuple(
            [Power(2, ExpExpr(_lin(-1, x=2))), Power(5, _v("x"))]
            + [Power(b, e) for b, e in extra]
        ),
    )
    pile_slack = Term(1, tuple(Power(p.base, fwd_exp(p.exp)) for p in pile_ctx.powers))
    q_ctx = _t(1, (q_base, q_exp))
    p_ctx = _t(1, (101, _v("z1")))
    link1 = _subset_link([q_ctx, pile_ctx], [pile_ctx])
    link2 = _claim(
        slacks=slacks,
        mapping=mapping,
        inverse=inverse,
        lhs=[pile_slack],
        rhs=[Term.of(1, (101, fwd_exp(_v("z1"))))],
        ctx_lhs=[pile_ctx],
        ctx_rhs=[p_ctx],
        strict=True,
    )
    return _contradiction("equation-impossible", eq="f-", larger="rhs", claims=[link1, link2])


def _case_2_2() -> Node:
    ordering = OrderingClass.CASE_2_2
    gamma3 = ExpExpr(_lin(0, x=1, z=-1), "r")  # becomes r*(x-2*z1) after z := 2*z1
    gamma3_sub = ExpExpr(_lin(0, x=1, z1=-2), "r")
    gamma11 = ExpExpr(_lin(0, x=1, z=-1), "q")
    gamma11_sub = ExpExpr(_lin(0, x=1, z1=-2), "q")

    # slack system shared by the heavy-pile kills in the 3-branch:
    # y1 = 1+a, z1 = 2+a+b, x = 5+2a+2b+c, gamma = 1+g
    pile3 = {
        "slacks": ["a", "b", "c", "g"],
        "mapping": {
            "y1": _lin(1, a=1),
            "z1": _lin(2, a=1, b=1),
            "x": _lin(5, a=2, b=2, c=1),
            gamma3_sub.atom_name(): _lin(1, g=1),
        },
        "inverse": {
            "a": (Lin.var("y1") - 1, 1),
            "b": (Lin.var("z1") - Lin.var("y1") - 1, 1),
            "c": (Lin.var("x") - Lin.var("z1") * 2 - 1, 1),
            "g": (Lin.var(gamma3_sub.atom_name()) - 1, 1),
        },
    }

    # k = 3^r * n1: 11^y = 101^z - 20^x*3^(r(x-z)); y, z even, then factor.
    branch_3 = _k_factor_node(
        {3},
        ordering,
        _congruence(
            "main",
            4,
            [("y", 2, {0})],
            _congruence(
                "main",
                6,
                [("z", 2, {0})],
                _substitute(
                    "y",
                    2,
                    "y1",
                    _substitute(
                        "z",
                        2,
                        "z1",
                        _fsplit_22(
                            11,
                            _v("y1"),
                            3,
                            gamma3_sub,
                            [
                                (
                                    {"two": "-", "5": "-", "3": "-"},
                                    _heavy_pile_kill(11, _v("y1"), [(3, gamma3_sub)], pile3),
                                ),
                                (
                                    {"two": "-", "5": "-", "3": "+"},
                                    _heavy_pile_kill(11, _v("y1"), [], pile3),
                                ),
                                (
                                    {"two": "-", "5": "+", "3": "-"},
                                    _empty_congruence("f-", 5),
                                ),
                                (
                                    {"two": "-", "5": "+", "3": "+"},
                                    _empty_congruence("f-", 5),
                                ),
                                (
                                    {"two": "+", "5": "-", "3": "-"},
                                    _congruence(
                                        "f-", 4, [("y1", 2, {1})], _empty_congruence("f+", 3)
                                    ),
                                ),
                                (
                                    {"two": "+", "5": "-", "3": "+"},
                                    _congruence(
                                        "f-",
                                        4,
                                        [("y1", 2, {1})],
                                        _congruence(
                                            "f+",
                                            3,
                                            [("z1", 2, {0})],
                                            _congruence(
                                                "f-",
                                                12,
                                                [("x", 2, {0})],
                                                _empty_congruence("f-", 11),
                                            ),
                                        ),
                                    ),
                                ),
                                (
                                    {"two": "+", "5": "+", "3": "-"},
                                    _empty_congruence("f-", 5),
                                ),
                                (
                                    {"two": "+", "5": "+", "3": "+"},
                                    _empty_congruence("f-", 5),
                                ),
                            ],
                        ),
                    ),
                ),
            ),
        ),
    )

    # k = 11^q * n1: 3^(2y) = 101^z - 20^x*11^(q(x-z)); y even mod 5, z even
    # mod 11, then split on y mod 4 and factor.
    # slack b measures z1 above its floor y/2 + 1: b = (2*z1 - y - 2)/2
    pile11 = {
        "slacks": ["a", "b", "c", "g"],
        "mapping": {
            "y": _lin(4, a=4),
            "z1": _lin(3, a=2, b=1),
            "x": _lin(7, a=4, b=2, c=1),
            gamma11_sub.atom_name(): _lin(1, g=1),
        },
        "inverse": {
            "a": (Lin.var("y") - 4, 4),
            "b": (Lin.var("z1") * 2 - Lin.var("y") - 2, 2),
            "c": (Lin.var("x") - Lin.var("z1") * 2 - 1, 1),
            "g": (Lin.var(gamma11_sub.atom_name()) - 1, 1),
        },
    }

    pile11_b = {
        "slacks": ["a", "b", "c", "g"],
        "mapping": {
            "y": _lin(2, a=4),
            "z1": _lin(2, a=2, b=1),
            "x": _lin(5, a=4, b=2, c=1),
            gamma11_sub.atom_name(): _lin(1, g=1),
        },
        "inverse": {
            "a": (Lin.var("y") - 2, 4),
            "b": (Lin.var("z1") * 2 - Lin.var("y") - 2, 2),
            "c": (Lin.var("x") - Lin.var("z1") * 2 - 1, 1),
            "g": (Lin.var(gamma11_sub.atom_name()) - 1, 1),
        },
    }

    def fplus_pile_kill(slack_bases: dict, with_11: bool) -> Node:
        # F+ = 2^(2x-1)*5^x*(11-part?) while F+ = 101^z1 + 3^y is impossible
        mapping = slack_bases["mapping"]
        pile_ctx = Term(
            1,
            tuple(
                [Power(2, ExpExpr(_lin(-1, x=2))), Power(5, _v("x"))]
                + ([Power(11, gamma11_sub)] if with_11 else [])
            ),
        )

        def fwd_exp(e: ExpExpr) -> ExpExpr:
            if e.sym is None:
                out = Lin.const_of(e.lin.const)
                for v, c in e.lin.coeffs:
                    out = out + mapping[v] * c
                return ExpExpr(out)
            return ExpExpr(mapping[e.atom_name()] + e.off)

        claim = _claim(
            slacks=slack_bases["slacks"],
            mapping=mapping,
            inverse=slack_bases["inverse"],
            lhs=[Term(1, tuple(Power(p.base, fwd_exp(p.exp)) for p in pile_ctx.powers))],
            rhs=[
                Term.of(1, (101, fwd_exp(_v("z1")))),
                Term.of(1, (3, fwd_exp(_v("y")))),
            ],
            ctx_lhs=[pile_ctx],
            ctx_rhs=[_t(1, (101, _v("z1"))), _t(1, (3, _v("y")))],
            strict=True,
        )
        return _contradiction("equation-impossible", eq="f+", larger="rhs", claims=[claim])

    branch_11 = _k_factor_node(
        {11},
        ordering,
        _congruence(
            "main",
            5,
            [("y", 2, {0})],
            _congruence(
                "main",
                11,
                [("z", 2, {0})],
                _substitute(
                    "z",
                    2,
                    "z1",
                    _node(
                        {
                            "kind": "residue-split",
                            "name": "y",
                            "modulus": "4",
                            "cases": [["0"], ["2"]],
                        },
                        _fsplit_22(
                            3,
                            _v("y"),
                            11,
                            gamma11_sub,
                            [
                                (
                                    {"two": "-", "5": "-", "11": "-"},
                                    _heavy_pile_kill(3, _v("y"), [(11, gamma11_sub)], pile11),
                                ),
                                (
                                    {"two": "-", "5": "-", "11": "+"},
                                    _heavy_pile_kill(3, _v("y"), [], pile11),
                                ),
                                ({"two": "-", "5": "+", "11": "-"}, _empty_congruence("f-", 5)),
                                ({"two": "-", "5": "+", "11": "+"}, _empty_congruence("f-", 5)),
                                ({"two": "+", "5": "-", "11": "-"}, _empty_congruence("f-", 4)),
                                ({"two": "+", "5": "-", "11": "+"}, _empty_congruence("f-", 4)),
                                ({"two": "+", "5": "+", "11": "-"}, _empty_congruence("f-", 5)),
                                ({"two": "+", "5": "+", "11": "+"}, _empty_congruence("f-", 5)),
                            ],
                        ),
                        _fsplit_22(
                            3,
                            _v("y"),
                            11,
                            gamma11_sub,
                            [
                                ({"two": "-", "5": "-", "11": "-"}, _empty_congruence("f+", 5)),
                                ({"two": "-", "5": "-", "11": "+"}, _empty_congruence("f+", 5)),
                                (
                                    {"two": "-", "5": "+", "11": "-"},
                                    _congruence(
                                        "f-",
                                        16,
                                        [("z1", 4, {2})],
                                        _congruence(
                                            "f-",
                                            3,
                                            [(gamma11_sub.atom_name(), 2, {1})],
                                            _congruence(
                                                "f+",
                                                16,
                                                [("x", 2, {0})],
                                                _contradiction(
                                                    "residue-conflict",
                                                    name=gamma11_sub.atom_name(),
                                                ),
                                            ),
                                        ),
                                    ),
                                ),
                                (
                                    {"two": "-", "5": "+", "11": "+"},
                                    _congruence(
                                        "f-", 16, [("z1", 4, {2})], _empty_congruence("f-", 3)
                                    ),
                                ),
                                ({"two": "+", "5": "-", "11": "-"}, _empty_congruence("f+", 5)),
                                ({"two": "+", "5": "-", "11": "+"}, _empty_congruence("f+", 5)),
                                (
                                    {"two": "+", "5": "+", "11": "-"},
                                    fplus_pile_kill(pile11_b, False),
                                ),
                                (
                                    {"two": "+", "5": "+", "11": "+"},
                                    fplus_pile_kill(pile11_b, True),
                                ),
                            ],
                        ),
                    ),
                ),
            ),
        ),
    )

    # k = 3^r*11^q*n1: 101^z - 1 = 20^x*3^(r(x-z))*11^(q(x-z)): same mod 17
    # contradiction as in case 1.2.
    branch_both = _k_factor_node(
        {3, 11},
        ordering,
        _congruence("main", 3, [("z", 2, {0})], _empty_congruence("main", 17)),
    )

    return _node(
        {"kind": "valuation-split", "cases": [[], ["3"], ["11"], ["3", "11"]]},
        _k_factor_node(set(), ordering, _contradiction("k-forced-one")),
        branch_3,
        branch_11,
        branch_both,
    )


def theorem_20_99_101() -> Certificate:
    """The scaled (20, 99, 101) equation has only (2, 2, 2), for every k >= 2."""
    tree = _node(
        {
            "kind": "ordering-split",
            "cases": [c.value for c in OrderingClass],
        },
        _contradiction("z-ge-max-lemma"),
        _contradiction("z-ge-max-lemma"),
        _contradiction("distinct-exponents-lemma"),
        _case_isolated_w(OrderingClass.CASE_1_1),
        _case_1_2(),
        _case_isolated_w(OrderingClass.CASE_2_1),
        _case_2_2(),
    )
    return Certificate(
        title="(20k)^x + (99k)^y = (101k)^z has only (2,2,2) for k >= 2",
        equation={"form": "pythag-exp", "u": "20", "v": "99", "w": "101", "k": "symbolic", "k_min": "2"},
        excluded=((2, 2, 2),),
        tree=tree,
        metadata={
            "scope": "k >= 2; the k = 1 case is Lu's classical theorem and is "
            "reproduced by bounded search in the corpus",
            "mod-33-note": "the classical write-up lists only the x = 2 residue "
            "classes of 2^z = 5^x (mod 33); this certificate derives the full "
            "projection (x and z even) and closes the branch for every even x",
        },
    )


def subcase_z_lt_x_lt_y() -> Certificate:
    """Standalone certificate for the z < x < y ordering alone."""
    return Certificate(
        title="(20k)^x + (99k)^y = (101k)^z: no solutions with z < x < y, k >= 2",
        equation={
            "form": "pythag-exp",
            "u": "20",
            "v": "99",
            "w": "101",
            "k": "symbolic",
            "k_min": "2",
            "ordering": "case-1-1",
        },
        excluded=(),
        tree=_case_isolated_w(OrderingClass.CASE_1_1),
        metadata={"scope": "single ordering class; part of the full certificate"},
    )


def mod17_kill() -> Certificate:
    """Standalone: 101^z = 1 + 99^y * 2^a * 5^b has no solutions with z even."""
    terms = [
        _t(1, (101, _v("z"))),
        _t(-1),
        _t(-1, (99, _v("y")), (2, _v("a")), (5, _v("b"))),
    ]
    return Certificate(
        title="101^z - 1 - 99^y*2^a*5^b: killed modulo 17 for even z",
        equation={
            "form": "congruence",
            "terms": terms_to_json(terms),
            "constraints": {"residues": {"z": {"modulus": "2", "residues": ["0"]}}},
        },
        excluded=(),
        tree=_empty_congruence("main", 17),
        metadata={"note": "the k divisible by 10 (or by 33) branches reduce to this form"},
    )


def killing_certificate(terms, constraints, modulus: int, title: str = "") -> Certificate:
    """Single-branch certificate wrapping a killing-modulus witness."""
    cons_json: dict = {"residues": {}, "fixed": {}, "lower_bounds": {}}
    for name, (m, allowed) in sorted(constraints.residues.items()):
        cons_json["residues"][name] = {
            "modulus": str(m),
            "residues": [str(r) for r in sorted(allowed)],
        }
    for name, v in sorted(constraints.fixed.items()):
        cons_json["fixed"][name] = str(v)
    for name, b in sorted(constraints.lower_bounds.items()):
        cons_json["lower_bounds"][name] = str(b)
    return Certificate(
        title=title or f"congruence killed modulo {modulus}",
        equation={"form": "congruence", "terms": terms_to_json(terms), "constraints": cons_json},
        excluded=(),
        tree=_empty_congruence("main", modulus),
        metadata={},
    )


def builtin_certificates() -> list[Certificate]:
    return [theorem_20_99_101(), subcase_z_lt_x_lt_y(), mod17_kill()]
