"""Command-line front end.

Every public operation is reachable as a subcommand; output is a human
table by default or JSON (--json) conforming to schemas/result.v1.json.
Exit codes: 0 ok, 1 not-found/indeterminate, 2 error, 3 provably-none.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact, monoids, poly, semidomains, witness
from .errors import SubatomicaError
from .exact import QuadExt
from .monoids import Kind, Monoid
from .parser import parse_element, parse_structure
from .semidomains import Semidomain, SKind
from .witness import PolyRing, SearchBudget

OK = "ok"
NOT_FOUND = "not-found"
PROVABLY_NONE = "provably-none"
INDETERMINATE = "indeterminate"
ERROR = "error"

_EXIT = {OK: 0, NOT_FOUND: 1, INDETERMINATE: 1, ERROR: 2, PROVABLY_NONE: 3}


@dataclass
class CommandResult:
    status: str
    payload: dict
    citations: list = field(default_factory=list)

    @property
    def exit_code(self):
        return _EXIT[self.status]


def _ser(x):
    """JSON-friendly rendering of library values."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, QuadExt):
        return str(x)
    if isinstance(x, (poly.SemiPoly, poly.LaurentPoly, semidomains.ExpSum,
                      semidomains.MixedPoly, semidomains.LexConePoly)):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_ser(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _ser(v) for k, v in x.items()}
    if isinstance(x, (bool, int, str, float)) or x is None:
        return x
    return str(x)


def _render(res: CommandResult, as_json: bool):
    if as_json:
        print(json.dumps({"status": res.status, "payload": res.payload,
                          "citations": res.citations}, indent=2))
        return
    print(f"status: {res.status}")
    for k, v in res.payload.items():
        print(f"{k}: {v}")
    if res.citations:
        print("cases: " + ", ".join(res.citations))


def _budget(args) -> SearchBudget:
    cap = getattr(args, "precision_cap", None) or \
        int(os.environ.get("SUBATOMICA_PRECISION", 256))
    return SearchBudget(
        atom_denominator_bound=getattr(args, "denominator_bound", 100),
        factor_depth_bound=getattr(args, "depth", 8),
        multiplier_degree_bound=getattr(args, "degree_bound", 8),
        precision_cap=cap)


def _structure_and_element(args, need_element=True):
    text = getattr(args, "structure", None) or getattr(args, "monoid", None)
    ps = parse_structure(text)
    el = ps.element
    if getattr(args, "elem", None):
        el = parse_element(ps.structure, args.elem)
    if need_element and el is None:
        raise SubatomicaError("no element given (use --elem or embed it "
                              "in the structure expression)")
    return ps.structure, el


# ---------------------------------------------------------------------------
# Subcommand implementations

def cmd_contains(args):
    st, el = _structure_and_element(args)
    if isinstance(st, Monoid):
        val = monoids.contains(st, el)
    elif isinstance(st, PolyRing):
        val = True  # parse_element already enforced coefficient membership
    elif st.kind is SKind.EXPSUM:
        val = semidomains.expsum_contains(st, el)
    elif st.kind is SKind.MIXED:
        val = semidomains.mixed_contains(el)
    elif st.kind is SKind.N0:
        val = el.denominator == 1 and el >= 0
    elif st.kind is SKind.INT:
        val = el.denominator == 1
    elif st.kind is SKind.QGE1:
        val = el == 0 or el >= 1
    else:
        val = True
    return CommandResult(OK, {"contains": val, "element": _ser(el)})


def cmd_divides(args):
    st = parse_structure(args.structure or args.monoid).structure
    b = parse_element(st, args.b)
    c = parse_element(st, args.c)
    if isinstance(st, Monoid):
        val, wit = monoids.divides(st, b, c), None
    elif isinstance(st, PolyRing):
        if st.laurent:
            q = poly.exact_divide(c.body, b.body)
            wit = poly.LaurentPoly(c.shift - b.shift, q) if q else None
        else:
            wit = poly.exact_divide(c, b)
        val = wit is not None
    elif st.kind is SKind.EXPSUM:
        wit = semidomains.expsum_divides(st, b, c)
        val = wit is not None
    elif st.kind is SKind.MIXED:
        wit = semidomains.mixed_divides(b, c)
        val = wit is not None
    elif st.kind is SKind.LEXCONE_ALG:
        wit = semidomains.lexcone_divides(b, c)
        val = wit is not None
    else:
        q = c / b
        wit = q
        if st.kind is SKind.N0:
            val = q.denominator == 1 and q >= 0
        elif st.kind is SKind.INT:
            val = q.denominator == 1
        else:
            val = q == 0 or q >= 1
        wit = q if val else None
    payload = {"divides": val}
    if wit is not None:
        payload["quotient"] = _ser(wit)
    return CommandResult(OK, payload)


def cmd_atoms(args):
    st = parse_structure(args.monoid or args.structure).structure
    bound = Fraction(args.bound)
    atoms = monoids.atoms_up_to(st, bound)
    return CommandResult(OK, {"atoms": _ser(atoms), "bound": _ser(bound)})


def cmd_is_atom(args):
    st, el = _structure_and_element(args)
    if isinstance(st, Monoid):
        val = monoids.is_atom(st, el)
        payload = {"is_atom": val}
        status = OK
    elif isinstance(st, PolyRing):
        f = el.body if st.laurent else el
        v = poly.is_atom_poly(f)
        payload = {"is_atom": v.is_atom, "verdict": v.status}
        if v.witness:
            payload["split"] = _ser(v.witness)
        status = INDETERMINATE if v.status == "unknown" else OK
    elif st.kind is SKind.EXPSUM:
        v = semidomains.expsum_is_atom(st, el)
        payload = {"is_atom": v.is_atom, "verdict": v.status,
                   "reason": v.reason}
        if v.witness:
            payload["split"] = _ser(v.witness)
        status = INDETERMINATE if v.status == "unknown" else OK
    elif st.kind is SKind.MIXED:
        v = semidomains.mixed_is_atom(el)
        payload = {"is_atom": v.is_atom, "verdict": v.status,
                   "reason": v.reason}
        if v.witness:
            payload["split"] = _ser(v.witness)
        status = OK
    elif st.kind in (SKind.N0, SKind.INT):
        val = el.denominator == 1 and exact.is_prime(abs(int(el)))
        payload = {"is_atom": val}
        status = OK
    elif st.kind is SKind.QGE1:
        payload = {"is_atom": False, "reason": "QGe1 is antimatter"}
        status = OK
    else:
        c, mono, atoms = semidomains.lexcone_canonical_factor(el)
        val = len(atoms) == 1 and mono == (0, 0) and \
            semidomains.lexcone_divides(atoms[0], el) is not None or \
            (not atoms and mono == (1, 0))
        payload = {"is_atom": bool(val)}
        status = OK
    return CommandResult(status, payload)


def cmd_factorize(args):
    st, el = _structure_and_element(args)
    if isinstance(st, Monoid):
        out = monoids.factorizations(st, el, max_count=args.max_count)
        payload = {"factorizations": [_ser(f.atoms) for f in out.factorizations],
                   "complete": out.complete}
        if out.certified_empty:
            ce = out.certified_empty
            payload["certified_empty"] = {
                "reason": ce.reason, "prime": ce.prime,
                "atom_floor": _ser(ce.atom_floor)}
            return CommandResult(PROVABLY_NONE, payload)
        status = OK if out.factorizations else (
            NOT_FOUND if not out.complete else PROVABLY_NONE)
        return CommandResult(status, payload)
    if isinstance(st, PolyRing):
        f = el.body if st.laurent else el
        out = poly.atom_factorizations(f, max_count=args.max_count)
        payload = {"factorizations": [
            {"unit": _ser(fa.unit), "scalar_atoms": _ser(fa.scalar_atoms),
             "poly_atoms": _ser(fa.poly_atoms)}
            for fa in out.factorizations],
            "complete": out.complete, "note": out.note}
        status = OK if out.factorizations else (
            PROVABLY_NONE if out.complete else NOT_FOUND)
        return CommandResult(status, payload)
    if st.kind is SKind.EXPSUM:
        facts, complete = semidomains.expsum_factorizations(
            st, el, max_count=args.max_count)
        payload = {"factorizations": [_ser(f) for f in facts],
                   "complete": complete}
        status = OK if facts else (PROVABLY_NONE if complete else NOT_FOUND)
        return CommandResult(status, payload)
    if st.kind is SKind.MIXED:
        stt = semidomains.mixedring_ord_status(el)
        if stt.status == "never_factors":
            return CommandResult(PROVABLY_NONE, {
                "factorizations": [], "ord": stt.ord,
                "ord_coeff": _ser(stt.ord_coeff),
                "reason": "order coefficient outside N0"})
        facts, complete = semidomains.mixed_factorizations(
            el, max_count=args.max_count)
        return CommandResult(OK if facts else NOT_FOUND,
                             {"factorizations": [_ser(f) for f in facts],
                              "complete": complete})
    if st.kind in (SKind.N0, SKind.INT):
        n = int(el)
        fac = []
        for p, e in sorted(exact.factor_integer(abs(n)).items()):
            fac.extend([p] * e)
        return CommandResult(OK, {"unit": 1 if n > 0 else -1,
                                  "factorization": fac})
    if st.kind is SKind.QGE1:
        return CommandResult(PROVABLY_NONE,
                             {"factorizations": [],
                              "reason": "QGe1 is antimatter"})
    c, mono, atoms = semidomains.lexcone_canonical_factor(el)
    if mono[1] == 0 and mono[0] >= 0:
        fac = [semidomains.lexcone_poly({(1, 0): 1})] * mono[0] + atoms
        return CommandResult(OK, {"unit": _ser(c),
                                  "factorization": _ser(fac)})
    return CommandResult(PROVABLY_NONE, {
        "factorizations": [],
        "reason": "Laurent monomial part lies outside the atom span"})


def cmd_gcd_mcd(args, which):
    st = parse_structure(args.monoid or args.structure).structure
    elems = [Fraction(e) for e in args.elems.split(",")]
    res = monoids.gcd_mcd_sets(st, elems)
    payload = {"gcd": _ser(res.gcd), "mcd": _ser(res.mcd),
               "common": _ser(res.common), "exact": res.exact}
    return CommandResult(OK, payload,
                         citations=["numerical-2-3-divisor-sets"]
                         if st.kind is Kind.NUMERICAL else [])


def cmd_canon_decomp(args):
    q = Fraction(args.elem)
    decomps = monoids.canonical_decompositions(q)
    return CommandResult(OK if decomps else PROVABLY_NONE, {
        "decompositions": [
            {"dyadic_summand": _ser(d.dyadic_summand),
             "pairs": [{"n": n, "c": c, "c_prime": cp}
                       for n, c, cp in d.pairs]}
            for d in decomps]})


def cmd_greatest_dyadic(args):
    q = Fraction(args.elem)
    d = monoids.greatest_divisor_in_dyadic(q)
    return CommandResult(OK, {"greatest_dyadic_divisor": _ser(d)})


def cmd_embed(args):
    st, el = _structure_and_element(args)
    if isinstance(st, Semidomain):
        img = semidomains.grothendieck_embed(st, el)
        return CommandResult(OK, {"image": _ser(img)})
    raise SubatomicaError("embed expects a semidomain structure")


def cmd_phi(args):
    st, el = _structure_and_element(args)
    if not (isinstance(st, Semidomain) and st.kind is SKind.LEXCONE_ALG):
        raise SubatomicaError("phi is defined on lexconealg elements")
    return CommandResult(OK, {"phi": semidomains.lexcone_phi(el)})


def cmd_ord_status(args):
    st, el = _structure_and_element(args)
    if not (isinstance(st, Semidomain) and st.kind is SKind.MIXED):
        raise SubatomicaError("ord-status is defined on mixed-ring elements")
    s = semidomains.mixedring_ord_status(el)
    return CommandResult(OK, {"status": s.status, "ord": s.ord,
                              "ord_coeff": _ser(s.ord_coeff)})


def cmd_witness(args):
    st, el = _structure_and_element(args)
    budget = _budget(args)
    fn = {"furstenberg": witness.furstenberg_witness,
          "almost-atomic": witness.almost_atomic_witness,
          "quasi-atomic": witness.quasi_atomic_witness}[args.property]
    w = fn(st, el, budget)
    payload = {"kind": w.kind, "status": w.status}
    if w.atom is not None:
        payload["atom"] = _ser(w.atom)
    if w.added_atoms:
        payload["added_atoms"] = _ser(w.added_atoms)
    if w.multiplier is not None:
        payload["multiplier"] = _ser(w.multiplier)
    if w.factorization:
        payload["factorization"] = _ser(w.factorization)
    if w.reason:
        payload["reason"] = w.reason
    if w.found:
        payload["verified"] = witness.verify_witness(st, el, w)
    status = {witness.FOUND: OK, witness.PROVABLY_NONE: PROVABLY_NONE,
              witness.NOT_FOUND: NOT_FOUND}[w.status]
    return CommandResult(status, payload)


def cmd_ufm_check(args):
    st = parse_structure(args.structure or args.monoid).structure
    lo, hi = (int(x) for x in args.range.split(","))
    r = witness.ufm_check_small(st, (lo, hi))
    return CommandResult(OK, {
        "label": r.label,
        "gcd_failures": _ser(r.gcd_failures[:5]),
        "quasi_failures": _ser(r.quasi_failures[:5]),
        "nonunique": _ser(r.nonunique[:5]),
        "hypothesis_holds": r.hypothesis_holds,
        "conclusion_holds": r.conclusion_holds,
        "consistent": r.consistent})


def cmd_oracle(args):
    st, el = _structure_and_element(args)
    out = witness.brute_force_oracle(st, el, args.depth)
    return CommandResult(OK, {"factorizations": [_ser(f) for f in out],
                              "depth": args.depth})


# ---------------------------------------------------------------------------
# The regression suite behind `check`

def _suite_cases():
    from fractions import Fraction as F

    def numerical_2_3():
        r = monoids.gcd_mcd_sets(monoids.numerical(2, 3), [F(5), F(6)])
        return (list(r.gcd) == [] and list(r.mcd) == [F(2), F(3)]
                and list(r.common) == [F(0), F(2), F(3)])

    def mf_atoms():
        got = monoids.atoms_up_to(monoids.MF, F(30))
        want = sorted(F(1, p) for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29])
        return got == want

    def mf_five_fourths_empty():
        out = monoids.factorizations(monoids.MF, F(5, 4))
        ce = out.certified_empty
        return (not out.factorizations and out.complete
                and ce is not None and ce.prime == 2)

    def expsum_atom():
        S = semidomains.expsum_semidomain(monoids.MF)
        r = semidomains.expsum({0: 2, F(1, 2): 1})
        return semidomains.expsum_is_atom(S, r).is_atom

    def expsum_furstenberg():
        S = semidomains.expsum_semidomain(monoids.MF)
        el = semidomains.expsum({F(1, 2): 2, F(3, 2): 3})
        w = witness.furstenberg_witness(S, el)
        return w.found and w.atom == semidomains.expsum({F(1, 2): 1})

    def maa_eighth_empty():
        out = monoids.factorizations(monoids.MAA, F(1, 8))
        return not out.factorizations and out.complete \
            and out.certified_empty is not None

    def maa_eighth_almost():
        w = witness.almost_atomic_witness(monoids.MAA, F(1, 8))
        return (w.found
                and sorted(w.added_atoms) == [F(1, 5)] * 5
                and sorted(w.factorization) == [F(1, 7)] * 2 + [F(47, 112)] * 2
                and witness.verify_witness(monoids.MAA, F(1, 8), w))

    def qge1_decomposition():
        c = F(3, 2)
        lhs = poly.poly_mul(poly.const_poly(poly.Base.QGE1, c),
                            poly.make_poly(poly.Base.QGE1, [1, c + 1 / c, 1]))
        rhs = poly.poly_mul(poly.make_poly(poly.Base.QGE1, [1, c]),
                            poly.make_poly(poly.Base.QGE1, [c, 1]))
        atoms_ok = all(poly.is_atom_poly(g).is_atom for g in (
            poly.make_poly(poly.Base.QGE1, [1, c + 1 / c, 1]),
            poly.make_poly(poly.Base.QGE1, [1, c]),
            poly.make_poly(poly.Base.QGE1, [c, 1])))
        return lhs == rhs and atoms_ok

    def n0x_two_factorizations():
        f = poly.make_poly(poly.Base.N0, [1] * 6)
        out = poly.atom_factorizations(f)
        return out.complete and len(out.factorizations) == 2

    def mixed_quasi():
        s2 = QuadExt(F(0), F(1))
        f = semidomains.MixedPoly((QuadExt(F(0)), QuadExt(F(0)), s2))
        w = witness.quasi_atomic_witness(semidomains.MIXED_SD, f)
        x = semidomains.mixed_poly([0, 1])
        return (w.found and list(w.factorization) == [x] * 4
                and witness.verify_witness(semidomains.MIXED_SD, f, w))

    def lexcone_furstenberg():
        f = semidomains.lexcone_poly({(0, 1): 3, (2, 1): 1})
        w = witness.furstenberg_witness(semidomains.LEXCONE_SD, f)
        return w.found and witness.verify_witness(
            semidomains.LEXCONE_SD, f, w)

    def ufm_nat():
        return witness.ufm_check_small(semidomains.N0_SD, (2, 200)).consistent

    def ufm_numerical():
        r = witness.ufm_check_small(monoids.numerical(2, 3), (2, 30))
        return r.consistent and not r.hypothesis_holds \
            and not r.conclusion_holds

    return [
        ("numerical-2-3-divisor-sets", numerical_2_3),
        ("prime-reciprocal-union-atoms", mf_atoms),
        ("prime-reciprocal-union-5/4-certified-empty", mf_five_fourths_empty),
        ("expsum-2-plus-e-half-atom", expsum_atom),
        ("expsum-furstenberg-exponent-shift", expsum_furstenberg),
        ("almost-atomic-monoid-1/8-certified-empty", maa_eighth_empty),
        ("almost-atomic-monoid-1/8-witness", maa_eighth_almost),
        ("qge1-scalar-decomposition-identity", qge1_decomposition),
        ("n0x-two-atom-factorizations", n0x_two_factorizations),
        ("mixed-ring-sqrt2x2-quasi-witness", mixed_quasi),
        ("lexcone-algebra-furstenberg", lexcone_furstenberg),
        ("ufm-cross-check-natural-numbers", ufm_nat),
        ("ufm-cross-check-numerical-2-3", ufm_numerical),
    ]


def cmd_check(args):
    cases = _suite_cases()
    results = []
    for name, fn in cases:
        try:
            ok = bool(fn())
        except Exception as e:  # a crash is a failure, not an abort
            ok = False
            name = f"{name} ({type(e).__name__})"
        results.append((name, ok))
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(f"1..{len(results)}\n")
            for i, (name, ok) in enumerate(results, 1):
                fh.write(f"{'ok' if ok else 'not ok'} {i} - {name}\n")
    passed = sum(ok for _, ok in results)
    payload = {"suite": args.suite,
               "passed": passed, "total": len(results),
               "cases": {name: ("pass" if ok else "FAIL")
                         for name, ok in results}}
    status = OK if passed == len(results) else ERROR
    return CommandResult(status, payload,
                         citations=[n for n, _ in _suite_cases()])


# ---------------------------------------------------------------------------

def _add_common(sp, element=True, budget=False):
    sp.add_argument("--structure")
    sp.add_argument("--monoid")
    if element:
        sp.add_argument("--elem")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--jobs", type=int, default=1,
                    help="reserved; the command loop is single-threaded")
    if budget:
        sp.add_argument("--denominator-bound", type=int, default=100,
                        dest="denominator_bound")
        sp.add_argument("--depth", type=int, default=8)
        sp.add_argument("--degree-bound", type=int, default=8,
                        dest="degree_bound")
        sp.add_argument("--precision-cap", type=int, default=None,
                        dest="precision_cap")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="subatomica",
        description="exact divisibility, atoms, factorizations and "
                    "subatomicity witnesses in monoids and semidomains")
    sub = ap.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("contains"))
    sp = sub.add_parser("divides")
    sp.add_argument("--structure")
    sp.add_argument("--monoid")
    sp.add_argument("--b", required=True)
    sp.add_argument("--c", required=True)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp = sub.add_parser("atoms")
    _add_common(sp, element=False)
    sp.add_argument("--bound", required=True)
    _add_common(sub.add_parser("is-atom"))
    sp = sub.add_parser("factorize")
    _add_common(sp)
    sp.add_argument("--max-count", type=int, default=16, dest="max_count")
    for name in ("gcd", "mcd"):
        sp = sub.add_parser(name)
        _add_common(sp, element=False)
        sp.add_argument("--elems", required=True)
    sp = sub.add_parser("canon-decomp")
    sp.add_argument("--elem", required=True)
    sp.add_argument("--json", action="store_true")
    sp = sub.add_parser("greatest-dyadic")
    sp.add_argument("--elem", required=True)
    sp.add_argument("--json", action="store_true")
    _add_common(sub.add_parser("embed"))
    _add_common(sub.add_parser("phi"))
    _add_common(sub.add_parser("ord-status"))
    sp = sub.add_parser("witness")
    sp.add_argument("property",
                    choices=["furstenberg", "almost-atomic", "quasi-atomic"])
    _add_common(sp, budget=True)
    sp = sub.add_parser("ufm-check")
    _add_common(sp, element=False)
    sp.add_argument("--range", default="2,30")
    sp = sub.add_parser("oracle")
    _add_common(sp)
    sp.add_argument("--depth", type=int, default=3)
    sp = sub.add_parser("check")
    sp.add_argument("--suite", default="paper")
    sp.add_argument("--report", default=None)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    return ap


_DISPATCH = {
    "contains": cmd_contains,
    "divides": cmd_divides,
    "atoms": cmd_atoms,
    "is-atom": cmd_is_atom,
    "factorize": cmd_factorize,
    "gcd": lambda a: cmd_gcd_mcd(a, "gcd"),
    "mcd": lambda a: cmd_gcd_mcd(a, "mcd"),
    "canon-decomp": cmd_canon_decomp,
    "greatest-dyadic": cmd_greatest_dyadic,
    "embed": cmd_embed,
    "phi": cmd_phi,
    "ord-status": cmd_ord_status,
    "witness": cmd_witness,
    "ufm-check": cmd_ufm_check,
    "oracle": cmd_oracle,
    "check": cmd_check,
}


def run_command(argv) -> CommandResult:
    args = build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args), args
    except (SubatomicaError, ValueError, ZeroDivisionError) as e:
        payload = {"error": str(e), "type": type(e).__name__}
        for attr in ("line", "column", "expected"):
            if hasattr(e, attr):
                payload[attr] = _ser(getattr(e, attr))
        return CommandResult(ERROR, payload), args


def main(argv=None) -> int:
    res, args = run_command(sys.argv[1:] if argv is None else argv)
    _render(res, getattr(args, "json", False))
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
