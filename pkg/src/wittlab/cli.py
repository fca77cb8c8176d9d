"""Command-line front end: deterministic JSON answers for depth, symbol,
canonical decomposition, equality and the Q_2 enumeration, plus built-in
reproducible example fixtures.

Exit codes: 0 success, 2 literal syntax error, 3 Indistinguishable,
4 unsupported field/operation, 5 precision exhausted, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import arason, norms, quadform
from .errors import (INDISTINGUISHABLE, FormSyntaxError, PrecisionExhausted,
                     UnsupportedResidueField, Undecidable, WittlabError)
from .fields import DyadicField, LaurentField, field_shorthand
from .fields.gf2m import GF2m
from .fields.ratfunc import RatFuncField
from .literals import parse_element, parse_form

SCHEMA = "wittlab/1"

EXIT_SYNTAX = 2
EXIT_INDISTINGUISHABLE = 3
EXIT_UNSUPPORTED = 4
EXIT_PRECISION = 5


def _field_payload(field):
    if isinstance(field, DyadicField):
        return {"kind": "dyadic", "residue": "GF(2)"}
    k = field.residue_field
    if isinstance(k, GF2m):
        return {"kind": "laurent", "residue": f"GF(2^{k.m})", "m": k.m}
    return {"kind": "laurent", "residue": f"GF(2^{k.base.m})(x)",
            "m": k.base.m, "variable": k.variable}


def _pinned(field):
    pinned = {
        "uniformizer": "t" if isinstance(field, LaurentField) else "2",
        "section": ("constant-coefficient" if isinstance(field, LaurentField)
                    else "bits {0,1}"),
        "orbit_order": ["0", "1/2"],
    }
    if isinstance(field, LaurentField) and isinstance(field.residue_field,
                                                      RatFuncField):
        pinned["two_basis"] = ["1", "x"]
    return pinned


def _fmt(field, x) -> str:
    return field.format_elem(x)


def _kfmt(k, c) -> str:
    return k.format_elem(c)


def _invariant_payload(inv, k):
    from .residue_witt import TensorElem, WClass, WedgeElem, WqClass
    if isinstance(inv, WqClass):
        if inv.decides():
            return {"group": "Wq", "arf": inv.arf}
        return {"group": "Wq(partial)",
                "raw": [[_kfmt(k, a), _kfmt(k, b)] for a, b in inv.raw],
                "arf_representative": _kfmt(k, inv.arf_representative)}
    if isinstance(inv, WedgeElem):
        coord = inv.coordinate()
        return {"group": "wedge",
                "coordinate_on_1^x": "0" if inv.is_zero() else _kfmt(k, coord)}
    if isinstance(inv, TensorElem):
        if getattr(k, "is_perfect", False):
            return {"group": "tensor", "coordinate_on_1@1": _kfmt(k, inv.coords[0])}
        names = ("1@1", "1@x", "x@1", "x@x")
        return {"group": "tensor",
                "coordinates": {n: _kfmt(k, c * c)
                                for n, c in zip(names, inv.coords)}}
    if isinstance(inv, WClass):
        return {"group": "W", "dim_mod_2": inv.bit}
    raise TypeError(f"unknown invariant {type(inv).__name__}")


def _symbol_payload(sym, field):
    k = field.residue_field
    return {
        "depth": str(sym.eps),
        "kind": sym.kind,
        "payload": [_invariant_payload(p, k) for p in sym.payload],
        "nonzero": not sym.is_zero(),
    }


def _certificate_payload(cert, field):
    return {
        "depth": str(cert.eps),
        "values": [str(v) for v in cert.norm.values],
        "basis_columns": [[_fmt(field, cert.norm.basis[r][c])
                           for r in range(cert.norm.n)]
                          for c in range(cert.norm.n)],
        "conditions_checked": list(cert.checked),
    }


def _equal_payload(res):
    if res is INDISTINGUISHABLE:
        return "indistinguishable"
    return bool(res)


# -- command implementations ----------------------------------------------------


def _cmd_depth(field, forms):
    out = []
    for text in forms:
        q = parse_form(text, field)
        eps, cert = norms.wildness_index(q)
        out.append({"form": text, "depth": str(eps),
                    "certificate": _certificate_payload(cert, field)})
    return {"results": out}


def _cmd_symbol(field, forms):
    out = []
    for text in forms:
        q = parse_form(text, field)
        eps, sym = arason.boundary_symbol(q)
        out.append({"form": text, "symbol": _symbol_payload(sym, field)})
    return {"results": out}


def _cmd_canonical(field, forms):
    k = field.residue_field
    out = []
    for text in forms:
        q = parse_form(text, field)
        dec = arason.canonical_decomposition(q)
        out.append({"form": text, "canonical": dec.describe(k)})
    return {"results": out}


def _cmd_equal(field, text1, text2):
    q1 = parse_form(text1, field)
    q2 = parse_form(text2, field)
    res = arason.witt_equal(q1, q2)
    return {"forms": [text1, text2], "equal": _equal_payload(res)}


def _cmd_enumerate_q2(field):
    decomps, table = arason.enumerate_wq_Q2(field.precision)
    k = field.residue_field
    return {
        "count": len(decomps),
        "classes": [d.describe(k) for d in decomps],
        "addition_table": table,
        "zero_class_index": next(
            i for i, d in enumerate(decomps)
            if not d.wild and d.a0.is_zero() and d.b0.is_zero()
            and not d.unit_bit and not d.pi_bit),
    }


def _assert_entry(name, expected, computed):
    return {"name": name, "expected": expected, "computed": computed,
            "pass": expected == computed}


def _fixture_example_1(precision, degree_cap):
    F2t = field_shorthand("f2-laurent", precision=precision)
    F2xt = field_shorthand("f2x-laurent", precision=precision,
                           degree_cap=degree_cap)
    entries = []
    eps, _ = norms.wildness_index(parse_form("[1+t, t^-1+t]", F2t))
    entries.append(_assert_entry("depth([1+t, t^-1+t]) over F2((t))", "1/2", str(eps)))
    for lit in ("[1, t]", "[t, t]"):
        q = parse_form(lit, F2t)
        e = quadform.WittExpr.binary(F2t, q.U[0][0], q.U[1][1])
        reduced = quadform.rewrite(e, "e", at=0)
        entries.append(_assert_entry(f"{lit}_W = 0 by rule (e)", 0,
                                     len(reduced.summands)))
    eps, _ = norms.wildness_index(parse_form("[t, t^-1]", F2t))
    entries.append(_assert_entry("depth([t, t^-1])", "0", str(eps)))
    res = arason.witt_equal(parse_form("[1, t^-2]", F2t),
                            parse_form("[1, t^-1]", F2t))
    entries.append(_assert_entry("[1,t^-2]_W = [1,t^-1]_W", True,
                                 _equal_payload(res)))
    q = parse_form("[1, x*t^-2]", F2xt)
    eps, sym = arason.boundary_symbol(q)
    entries.append(_assert_entry("depth([1, x*t^-2]) over F2(x)((t))",
                                 "1", str(eps)))
    entries.append(_assert_entry("symbol([1, x*t^-2]) = (1^x, 0)",
                                 [{"group": "wedge", "coordinate_on_1^x": "1"},
                                  {"group": "wedge", "coordinate_on_1^x": "0"}],
                                 _symbol_payload(sym, F2xt)["payload"]))
    expr = arason.generator_certificate(parse_form("[1+t, t^-1+t]", F2t),
                                        Fraction(1, 2))
    entries.append(_assert_entry(
        "[1+t, t^-1+t]_W = [1, t^-1]_W + [t, t^-1]_W",
        [[False, "1", "1"], [True, "1", "t"]],
        [[t.scaled, _fmt(F2t, t.alpha), _fmt(F2t, t.beta)] for t in expr.terms]))
    return entries


def _fixture_example_2(precision, degree_cap):
    F2t = field_shorthand("f2-laurent", precision=precision)
    F2xt = field_shorthand("f2x-laurent", precision=precision,
                           degree_cap=degree_cap)
    entries = []
    _, sym = arason.boundary_symbol(parse_form("[1, 1]", F2t))
    entries.append(_assert_entry("[1,1]_W maps to ([1,1]_W, 0) tamely",
                                 [{"group": "Wq", "arf": 1},
                                  {"group": "Wq", "arf": 0}],
                                 _symbol_payload(sym, F2t)["payload"]))
    _, sym = arason.boundary_symbol(parse_form("[t, t^-1]", F2t))
    entries.append(_assert_entry("[t,t^-1]_W maps to (0, [1,1]_W)",
                                 [{"group": "Wq", "arf": 0},
                                  {"group": "Wq", "arf": 1}],
                                 _symbol_payload(sym, F2t)["payload"]))
    res = arason.witt_equal(parse_form("scale(t, [1, t^-1])", F2t),
                            parse_form("[1, t^-1]", F2t))
    entries.append(_assert_entry("t[1,t^-1] = [1,t^-1] in W_q", True,
                                 _equal_payload(res)))
    _, sym = arason.boundary_symbol(parse_form("scale(t, [1, x*t^-2])", F2xt))
    entries.append(_assert_entry("t[1, x t^-2] maps to (0, 1^x)",
                                 [{"group": "wedge", "coordinate_on_1^x": "0"},
                                  {"group": "wedge", "coordinate_on_1^x": "1"}],
                                 _symbol_payload(sym, F2xt)["payload"]))
    return entries


def _fixture_example_3(precision, degree_cap):
    Q2 = field_shorthand("q2", precision=precision)
    entries = []
    eps, sym = arason.boundary_symbol(parse_form("<1>", Q2))
    entries.append(_assert_entry("depth(<1>)", "1", str(eps)))
    entries.append(_assert_entry("symbol(<1>) = (<1>_W, 0)",
                                 [{"group": "W", "dim_mod_2": 1},
                                  {"group": "W", "dim_mod_2": 0}],
                                 _symbol_payload(sym, Q2)["payload"]))
    eps, sym = arason.boundary_symbol(parse_form("<2>", Q2))
    entries.append(_assert_entry("symbol(2<1>) = (0, <1>_W)",
                                 [{"group": "W", "dim_mod_2": 0},
                                  {"group": "W", "dim_mod_2": 1}],
                                 _symbol_payload(sym, Q2)["payload"]))
    eps, _ = norms.wildness_index(parse_form("<1, 1>", Q2))
    entries.append(_assert_entry("depth(<1,1>)", "1/2", str(eps)))
    realized = set()
    for lit in ("[0, 0]", "<1, 1>", "<1>"):
        e, _ = norms.wildness_index(parse_form(lit, Q2))
        realized.add(e)
    entries.append(_assert_entry("realized filtration indices", ["0", "1/2", "1"],
                                 [str(e) for e in sorted(realized)]))
    return entries


FIXTURES = {"1": _fixture_example_1, "2": _fixture_example_2,
            "3": _fixture_example_3}


def _cmd_example(name, precision, degree_cap):
    key = name.split(":")[-1]
    if key not in FIXTURES:
        raise UnsupportedResidueField(f"unknown fixture {name!r}")
    entries = FIXTURES[key](precision, degree_cap)
    return {"fixture": f"example:{key}",
            "assertions": entries,
            "all_pass": all(e["pass"] for e in entries)}


# -- driver ------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="f2-laurent",
                        help="f2-laurent | f2m-laurent:m=K | f2x-laurent | "
                             "f2mx-laurent:m=K | q2")
    common.add_argument("--precision", type=int, default=64)
    common.add_argument("--degree-cap", type=int, default=512)
    common.add_argument("--json-out", default=None,
                        help="also write the JSON result to this path")
    p = argparse.ArgumentParser(prog="wittlab", parents=[common],
                                description=__doc__)
    p.add_argument("--fixture", default=None,
                   help="run a named fixture (example:1|2|3) and exit")
    sub = p.add_subparsers(dest="command")
    for name in ("depth", "symbol", "canonical"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("forms", nargs="+",
                        help="form literal(s); '-' reads one per stdin line")
    sp = sub.add_parser("equal", parents=[common])
    sp.add_argument("form1")
    sp.add_argument("form2")
    sub.add_parser("enumerate-q2", parents=[common])
    sp = sub.add_parser("example", parents=[common])
    sp.add_argument("name", help="1, 2, 3 or example:N")
    return p


def _expand_stdin(forms):
    out = []
    for f in forms:
        if f == "-":
            out.extend(line.strip() for line in sys.stdin if line.strip())
        else:
            out.append(f)
    return out


def _run_once(args, precision):
    field = field_shorthand(args.field, precision=precision,
                            degree_cap=args.degree_cap)
    if args.fixture:
        return field, _cmd_example(args.fixture, precision, args.degree_cap)
    if args.command == "depth":
        return field, _cmd_depth(field, _expand_stdin(args.forms))
    if args.command == "symbol":
        return field, _cmd_symbol(field, _expand_stdin(args.forms))
    if args.command == "canonical":
        return field, _cmd_canonical(field, _expand_stdin(args.forms))
    if args.command == "equal":
        return field, _cmd_equal(field, args.form1, args.form2)
    if args.command == "enumerate-q2":
        return field, _cmd_enumerate_q2(field)
    if args.command == "example":
        return field, _cmd_example(args.name, precision, args.degree_cap)
    raise UnsupportedResidueField("no command given (see --help)")


def run(argv):
    args = build_parser().parse_args(argv)
    attempts = 0
    precision = args.precision
    indistinguishable = False
    while True:
        try:
            field, result = _run_once(args, precision)
            break
        except PrecisionExhausted:
            attempts += 1
            if attempts > 4:
                raise
            precision *= 2
    payload = {
        "schema": SCHEMA,
        "command": "fixture" if args.fixture else args.command,
        "field": _field_payload(field),
        "precision": precision,
        "degree_cap": args.degree_cap,
        "pinned": _pinned(field),
        "result": result,
    }
    if result.get("equal") == "indistinguishable":
        indistinguishable = True
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    if indistinguishable:
        return EXIT_INDISTINGUISHABLE
    if result.get("all_pass") is False:
        return 1
    return 0


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        return run(argv)
    except FormSyntaxError as e:
        print(json.dumps({"schema": SCHEMA, "error": "syntax", "message": str(e),
                          "line": e.line, "column": e.column}, sort_keys=True))
        return EXIT_SYNTAX
    except (UnsupportedResidueField, Undecidable) as e:
        print(json.dumps({"schema": SCHEMA, "error": "unsupported",
                          "message": str(e)}, sort_keys=True))
        return EXIT_UNSUPPORTED
    except PrecisionExhausted as e:
        print(json.dumps({"schema": SCHEMA, "error": "precision-exhausted",
                          "message": str(e)}, sort_keys=True))
        return EXIT_PRECISION
    except WittlabError as e:
        print(json.dumps({"schema": SCHEMA, "error": type(e).__name__,
                          "message": str(e)}, sort_keys=True))
        return 1


if __name__ == "__main__":
    sys.exit(main())
