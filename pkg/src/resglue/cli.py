"""Batch front end: load and save algebras, run constructions and checks.

Every subcommand reads algebras in the line-oriented file format, prints
a deterministic report (stable ordering, no timestamps) and exits with

* 0 -- the checked property holds / the construction succeeded,
* 1 -- a precondition or a structured verdict failed,
* 2 -- an input file or a term/flag did not parse,
* 3 -- an internal invariant broke (never expected).

``--format structured`` switches the report to JSON; ``--oracle``
re-verifies construction output against the brute-force oracle.  The
environment variable RESGLUE_THREADS caps internal parallelism (used
when verifying several files at once).
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .core import hasse_text, oracle_check, verify_axioms
from .filters import all_congruence_filters, check_lower_pair, check_quadruple
from .gluing import (
    f_gluing,
    fi_gluing,
    fold_triple,
    one_sum,
    partial_gluing_tau,
)
from .io import ParseError, dump, dumps, load
from .partial import extract_upper_triple, upper_triple_from_total
from .rotations import identity_nucleus, n_rotation, nucleus_from_term
from .varieties.gl2 import (
    brute_force_amalgam,
    gl2_amalgam_decide,
    gl2_chains,
    gl2_generate,
    gl2_violation,
    recognize_gl2,
    vformation,
)
from .varieties.terms import (
    TermError,
    check_equation,
    parse_equation,
    parse_equation_file,
    parse_term,
)

__all__ = ["main"]


def _thread_cap():
    raw = os.environ.get("RESGLUE_THREADS", "")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    return cap if cap > 0 else (os.cpu_count() or 1)


def _resolve_set(a, spec):
    """Comma list of labels or indices -> tuple of element indices."""
    if not spec:
        return ()
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok:
            continue
        hits = [x for x in range(a.n) if a.label(x) == tok]
        if hits:
            out.append(hits[0])
            continue
        try:
            idx = int(tok)
        except ValueError:
            raise ValueError("no element labelled %r" % tok) from None
        if not 0 <= idx < a.n:
            raise ValueError("element index %d out of range" % idx)
        out.append(idx)
    return tuple(out)


def _emit(args, doc, lines):
    if args.format == "structured":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _oracle_gate(alg, what):
    v = oracle_check(alg)
    if not v.ok:
        raise RuntimeError("internal: %s failed the oracle: %s"
                           % (what, "; ".join(v.lines())))


def _deliver(args, g_result, doc, lines):
    """Attach the result algebra to the report or write it to --output."""
    text = dumps(g_result)
    doc["algebra"] = text
    if args.output:
        dump(g_result, args.output)
        lines.append("written: %s" % args.output)
    else:
        lines.append("")
        lines.append(text.rstrip("\n"))
    return doc, lines


# -- subcommands -------------------------------------------------------------


def _cmd_verify(args):
    def check(path):
        a = load(path)
        v = verify_axioms(a)
        if args.oracle:
            v = v.merge(oracle_check(a))
        return a, v

    cap = min(_thread_cap(), len(args.files))
    if cap > 1:
        with ThreadPoolExecutor(max_workers=cap) as pool:
            results = list(pool.map(check, args.files))
    else:
        results = [check(p) for p in args.files]
    doc, lines, all_ok = {"files": []}, [], True
    for path, (a, v) in zip(args.files, results):
        all_ok = all_ok and v.ok
        doc["files"].append({"file": path, "n": a.n, "ok": v.ok,
                             "report": v.lines()})
        lines.append("%s: %s (n=%d, height=%d)"
                     % (path, "ok" if v.ok else "FAIL", a.n, a.height))
        if not v.ok:
            lines.extend("  " + s for s in v.lines())
        lines.extend("  " + s for s in hasse_text(a).splitlines())
    doc["ok"] = all_ok
    _emit(args, doc, lines)
    return 0 if all_ok else 1


def _cmd_glue(args):
    b, c = load(args.lower), load(args.upper)
    filt = _resolve_set(b, args.filter)
    ideal = _resolve_set(b, args.ideal)
    f_in_c = _resolve_set(c, args.filter_in_c)
    i_in_c = _resolve_set(c, args.ideal_in_c)
    if args.mode == "one-sum":
        g = one_sum(b, c)
    elif args.mode in ("f", "fi"):
        if not filt:
            raise ValueError("mode %s needs --filter" % args.mode)
        q = check_quadruple(b, filt, c, ideal=ideal, f_in_c=f_in_c or None,
                            i_in_c=i_in_c, non_strict=args.non_strict)
        if not q.ok:
            _emit(args, {"ok": False, "report": q.lines()}, q.lines())
            return 1
        g = fi_gluing(q) if args.mode == "fi" else \
            f_gluing(b, filt, c, f_in_c=f_in_c or None,
                     non_strict=args.non_strict)
    else:  # partial-tau
        if not b.has_zero:
            raise ValueError("partial-tau needs a bounded lower stack")
        upper = (extract_upper_triple(c, i_in_c) if i_in_c
                 else upper_triple_from_total(c))
        g = partial_gluing_tau(fold_triple(b), ideal or {b.zero}, upper)
    result = g.result if not hasattr(g.result, "to_total") else \
        g.result.to_total()
    if args.oracle:
        _oracle_gate(result, "glue --mode %s" % args.mode)
    doc = {"ok": True, "provenance": g.provenance()}
    lines = ["mode: %s" % g.mode,
             "result: n=%d, height=%d" % (result.n, result.height)]
    doc, lines = _deliver(args, result, doc, lines)
    _emit(args, doc, lines)
    return 0


def _cmd_rotate(args):
    a = load(args.file)
    if args.nucleus == "identity":
        nu = identity_nucleus(a)
    else:
        nu = nucleus_from_term(a, parse_term(args.nucleus))
    r = n_rotation(a, nu, args.n)
    if args.oracle:
        _oracle_gate(r.result, "rotate")
    doc = {"ok": True, "mode": r.mode, "n": r.n,
           "a_map": list(r.a_map), "prime_map": list(r.prime_map)}
    lines = ["mode: %s (n=%d, nucleus=%s)" % (r.mode, r.n, args.nucleus),
             "result: n=%d, height=%d" % (r.result.n, r.result.height)]
    doc, lines = _deliver(args, r.result, doc, lines)
    _emit(args, doc, lines)
    return 0


def _cmd_filters(args):
    a = load(args.file)
    fl = all_congruence_filters(a)
    order = sorted(range(fl.n),
                   key=lambda i: (len(fl.filters[i]), sorted(fl.filters[i])))
    atoms = set(fl.atoms())
    doc = {"count": fl.n, "sdi": len(atoms) == 1,
           "filters": [sorted(fl.filters[i]) for i in order]}
    lines = ["congruence filters: %d" % fl.n]
    for i in order:
        members = ", ".join(a.label(x) for x in sorted(fl.filters[i]))
        tag = "  (atom)" if i in atoms else ""
        lines.append("  {%s}%s" % (members, tag))
    lines.append("subdirectly irreducible: %s"
                 % ("yes" if len(atoms) == 1 else "no"))
    _emit(args, doc, lines)
    return 0


def _cmd_check_pair(args):
    b = load(args.file)
    rep = check_lower_pair(b, _resolve_set(b, args.filter),
                           non_strict=args.non_strict)
    _emit(args, {"ok": rep.ok, "verdict": rep.verdict,
                 "report": rep.lines()}, rep.lines())
    return 0 if rep.ok else 1


def _cmd_check_quadruple(args):
    b, c = load(args.lower), load(args.upper)
    q = check_quadruple(b, _resolve_set(b, args.filter), c,
                        ideal=_resolve_set(b, args.ideal),
                        f_in_c=_resolve_set(c, args.filter_in_c) or None,
                        i_in_c=_resolve_set(c, args.ideal_in_c),
                        non_strict=args.non_strict)
    _emit(args, {"ok": q.ok, "report": q.lines()}, q.lines())
    return 0 if q.ok else 1


def _cmd_check_eq(args):
    a = load(args.file)
    eqs = [parse_equation(e) for e in args.equations]
    if args.eq_file:
        with open(args.eq_file, encoding="utf-8") as fh:
            eqs.extend(parse_equation_file(fh.read()))
    if not eqs:
        raise ValueError("no equations given")
    doc, lines, all_hold = {"equations": []}, [], True
    for eq in eqs:
        rep = check_equation(a, eq)
        all_hold = all_hold and rep.holds
        entry = {"equation": str(eq), "holds": rep.holds}
        if rep.holds:
            lines.append("%s: holds" % eq)
        else:
            at = ", ".join("%s=%s" % (v, a.label(x))
                           for v, x in zip(rep.variables, rep.assignment))
            entry["witness"] = {v: a.label(x) for v, x in
                                zip(rep.variables, rep.assignment)}
            lines.append("%s: fails at %s (lhs=%s, rhs=%s)"
                         % (eq, at, a.label(rep.lhs_value),
                            a.label(rep.rhs_value)))
        doc["equations"].append(entry)
    doc["ok"] = all_hold
    _emit(args, doc, lines)
    return 0 if all_hold else 1


def _cmd_gl2(args):
    a = load(args.file)
    viol = gl2_violation(a)
    if viol is not None:
        law, witness, detail = viol
        lines = ["not a 2-potent bounded chain",
                 "law: %s" % law,
                 "witness: %s" % (witness,),
                 "detail: %s" % detail]
        _emit(args, {"ok": False, "law": law, "detail": detail}, lines)
        return 1
    g = recognize_gl2(a)
    doc = {"ok": True, "godel": g.is_godel,
           "blocks": [[a.label(x) for x in blk] for blk in g.blocks]}
    lines = ["2-potent bounded chain with %d blocks" % len(g.blocks)]
    for blk in g.blocks:
        lines.append("  block: {%s}" % ", ".join(a.label(x) for x in blk))
    lines.append("godel: %s" % ("yes" if g.is_godel else "no"))
    code = 0
    if args.seed:
        seed = _resolve_set(a, args.seed)
        rep = gl2_generate(g, seed)
        doc["generation"] = {"case": rep.case, "bound": rep.bound,
                             "generated": sorted(rep.generated),
                             "ok": rep.ok}
        lines.extend(rep.lines())
        if not rep.ok:
            raise RuntimeError("internal: generation bound violated")
    _emit(args, doc, lines)
    return code


def _cmd_amalgamate(args):
    a, b, c = load(args.shared), load(args.left), load(args.right)
    try:
        v = vformation(a, b, c)
    except ValueError as exc:
        _emit(args, {"ok": False, "reason": str(exc)},
              ["no V-formation: %s" % exc])
        return 1
    d = gl2_amalgam_decide(v, confirm_bound=args.confirm_bound)
    if not d.exists:
        doc = {"ok": False, "exists": False, "clause": d.clause,
               "side": d.side, "detail": d.detail,
               "witness": None if d.element is None else a.label(d.element)}
        if d.brute is not None:
            doc["brute"] = {"bound": d.brute[0],
                            "found": d.brute[1] is not None}
        _emit(args, doc, d.lines())
        return 1
    if args.oracle:
        found = brute_force_amalgam(v)
        if found is None:
            raise RuntimeError("internal: decision and brute force disagree")
    doc = {"ok": True, "exists": True, "h": list(d.h), "k": list(d.k)}
    lines = list(d.lines())
    doc, lines = _deliver(args, d.amalgam, doc, lines)
    _emit(args, doc, lines)
    return 0


def _cmd_enumerate(args):
    if args.cls == "gl2-chain":
        algs = [x.algebra for k in range(1, args.max_size + 1)
                for x in gl2_chains(k)]
    else:
        from .core import enumerate_irls
        algs = list(enumerate_irls(args.max_size,
                                   with_zero=args.cls == "flw"))
    blocks = [dumps(x) for x in algs]
    doc = {"class": args.cls, "max_size": args.max_size,
           "count": len(algs), "algebras": blocks}
    lines = ["class %s, size <= %d: %d algebras"
             % (args.cls, args.max_size, len(algs))]
    for i, text in enumerate(blocks):
        lines.append("# %d" % i)
        lines.append(text.rstrip("\n"))
        lines.append("")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines[1:]) + "\n")
        lines = lines[:1] + ["written: %s" % args.output]
    _emit(args, doc, lines)
    return 0


# -- wiring -------------------------------------------------------------------


def _build_parser():
    top = argparse.ArgumentParser(
        prog="resglue",
        description="finite residuated lattices: constructions and checks")
    top.add_argument("--format", choices=("text", "structured"),
                     default="text", help="report style (default text)")
    sub = top.add_subparsers(dest="command", required=True)

    def cmd(name, func, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(func=func)
        return p

    p = cmd("verify", _cmd_verify, help="check the axioms of algebra files")
    p.add_argument("files", nargs="+")
    p.add_argument("--oracle", action="store_true",
                   help="add the brute-force residuation oracle")

    p = cmd("glue", _cmd_glue, help="glue a lower and an upper algebra")
    p.add_argument("--mode", required=True,
                   choices=("one-sum", "f", "fi", "partial-tau"))
    p.add_argument("lower")
    p.add_argument("upper")
    p.add_argument("--filter", default="",
                   help="shared filter, comma list of labels or indices")
    p.add_argument("--filter-in-c", default="", dest="filter_in_c",
                   help="its image in the upper algebra")
    p.add_argument("--ideal", default="",
                   help="shared ideal (fi and partial-tau modes)")
    p.add_argument("--ideal-in-c", default="", dest="ideal_in_c",
                   help="its image in the upper algebra")
    p.add_argument("--non-strict", action="store_true", dest="non_strict")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("-o", "--output")

    p = cmd("rotate", _cmd_rotate, help="generalized n-rotation")
    p.add_argument("file")
    p.add_argument("--n", type=int, default=2,
                   help="rotation order (2 = plain generalized rotation)")
    p.add_argument("--nucleus", default="identity",
                   help="'identity' or a one-variable term, e.g. '(x\\\\0)\\\\0'")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("-o", "--output")

    p = cmd("filters", _cmd_filters,
            help="list congruence filters and judge subdirect irreducibility")
    p.add_argument("file")

    p = cmd("check-pair", _cmd_check_pair,
            help="is (algebra, filter) a lower-compatible pair?")
    p.add_argument("file")
    p.add_argument("--filter", required=True)
    p.add_argument("--non-strict", action="store_true", dest="non_strict")

    p = cmd("check-quadruple", _cmd_check_quadruple,
            help="is (B, F, C, I) glueable?")
    p.add_argument("lower")
    p.add_argument("upper")
    p.add_argument("--filter", required=True)
    p.add_argument("--filter-in-c", default="", dest="filter_in_c")
    p.add_argument("--ideal", default="")
    p.add_argument("--ideal-in-c", default="", dest="ideal_in_c")
    p.add_argument("--non-strict", action="store_true", dest="non_strict")

    p = cmd("check-eq", _cmd_check_eq,
            help="does an equation hold in the algebra?")
    p.add_argument("file")
    p.add_argument("equations", nargs="*",
                   help="equations like 'x*(x\\\\y) = x & y'")
    p.add_argument("--eq-file", dest="eq_file",
                   help="file with one equation per line")

    p = cmd("gl2", _cmd_gl2,
            help="recognize a 2-potent bounded chain, show its blocks")
    p.add_argument("file")
    p.add_argument("--seed", default="",
                   help="report the subalgebra generated by these elements")

    p = cmd("amalgamate", _cmd_amalgamate,
            help="decide amalgamation of a V-formation of 2-potent chains")
    p.add_argument("shared")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--confirm-bound", type=int, default=None,
                   dest="confirm_bound",
                   help="on failure, brute-force check up to this size")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("-o", "--output")

    p = cmd("enumerate", _cmd_enumerate,
            help="list algebras up to isomorphism")
    p.add_argument("--max-size", type=int, required=True, dest="max_size")
    p.add_argument("--class", required=True, dest="cls",
                   choices=("irl", "flw", "gl2-chain"))
    p.add_argument("-o", "--output")
    return top


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (ParseError, TermError) as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("cannot read input: %s" % exc, file=sys.stderr)
        return 2
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (AssertionError, RuntimeError) as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
