"""Command-line interface.

Exit codes: 0 verified, 1 refuted, 2 usage or parse error.

Examples::

    seqcomp generate theorem2 --q 3 --m 3 --v 1 --alpha 2 --beta 1 \\
        --pi 1,2 --c1 1,2,1 --c2 0,1,2 --c0 0 -o table1.json
    seqcomp verify table1.json --claim zccs --params 9,3,27,9
    seqcomp classify table1.json --engine both
    seqcomp demo table1
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import __version__, analysis, reproduce, seeds
from .constructions import (
    NEGATIONS,
    Theorem2Params,
    build_css_theorem1,
    build_ternary_css,
    build_zccs_theorem2,
    ccc_theorem4,
    interleave_escss_theorem3,
    mocss_theorem5,
)
from .core import SetFamily
from .correlation import ENGINES, classify, default_engine, first_violation, profile_counts, zero_mask
from .document import ROLES, DocumentError, FamilyDocument, load_document
from .errors import EngineDisagreementError, PreconditionError, SeqCompError

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fail(message: str, code: int, **extra) -> int:
    print(json.dumps({"error": message, **extra}), file=sys.stderr)
    return code


# ---------------------------------------------------------------------------
# generate


_COEFF_FLAG = re.compile(r"^--c(\d+)$")


def _coefficient_rows(extra: list[str], q: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Collect ``--c1 .. --c{q-1}`` flags into the c[l][k] table."""
    rows: dict[int, tuple[int, ...]] = {}
    it = iter(extra)
    for tok in it:
        key, _, value = tok.partition("=")
        match = _COEFF_FLAG.match(key)
        if not match:
            raise UsageError(f"unrecognized argument {tok!r}")
        if not value:
            value = next(it, None)
            if value is None:
                raise UsageError(f"{key} needs a value")
        l = int(match.group(1))
        if not 1 <= l <= q - 1:
            raise UsageError(f"{key}: power must lie in 1..{q - 1}")
        rows[l] = _ints(value)
    return tuple(rows.get(l, (0,) * m) for l in range(1, q))


def _load_family(ref: str) -> SetFamily:
    if ref.startswith("seeds:"):
        return seeds.resolve(ref)
    return load_document(ref).to_family()


def _generate(args, extra) -> FamilyDocument:
    kind = args.construction
    params: dict = {"construction": kind}
    if kind in ("theorem1", "theorem2"):
        if args.q is None or args.m is None or args.alpha is None or args.pi is None:
            raise UsageError(f"{kind} needs --q, --m, --alpha and --pi")
        coeffs = _coefficient_rows(extra, args.q, args.m)
        params.update(q=args.q, m=args.m, alpha=args.alpha, pi=list(args.pi),
                      coeffs=[list(r) for r in coeffs], c0=args.c0)
    elif extra:
        raise UsageError(f"unrecognized arguments {extra}")

    if kind == "theorem1":
        A = build_css_theorem1(args.q, args.m, args.alpha, args.pi, coeffs, args.c0, verify=args.verify)
        F = SetFamily((A,))
        return _document(F, "css", {"M": 1, "N": args.q, "L": args.q**args.m}, params, args)
    if kind == "lemma3":
        if args.m is None or args.alpha is None or args.pi is None:
            raise UsageError("lemma3 needs --m, --alpha and --pi")
        A = build_ternary_css(args.m, args.alpha, args.pi, args.square, args.linear, args.c0, verify=args.verify)
        params.update(m=args.m, alpha=args.alpha, pi=list(args.pi), c0=args.c0,
                      square=list(args.square or ()), linear=list(args.linear or ()))
        return _document(SetFamily((A,)), "css", {"M": 1, "N": 3, "L": 3**args.m}, params, args)
    if kind == "theorem2":
        if args.v is None or args.beta is None:
            raise UsageError("theorem2 needs --v and --beta")
        p = Theorem2Params(args.q, args.m, args.v, args.alpha, args.beta, tuple(args.pi), coeffs, args.c0)
        F = build_zccs_theorem2(p, verify=args.verify)
        params.update(v=args.v, beta=args.beta)
        role = "ccc" if args.v == 0 else "zccs"
        claim = {"M": F.m, "N": F.n, "L": F.length, "Z": p.zcz}
        return _document(F, role, claim, params, args)
    if kind == "theorem3":
        if not args.c:
            raise UsageError("theorem3 needs --c (a CCC document or seeds:ccc-2xL)")
        sets = interleave_escss_theorem3(_load_family(args.c), verify=args.verify)
        F = SetFamily(tuple(sets))
        params.update(c=args.c)
        return _document(F, "escss", {"M": F.m, "N": F.n, "L": F.length}, params, args)
    if kind in ("theorem4", "theorem5"):
        if not args.a or not args.b:
            raise UsageError(f"{kind} needs --a and --b (CCC documents or seeds:ccc-2xL)")
        A, B = _load_family(args.a), _load_family(args.b)
        params.update(a=args.a, b=args.b)
        if kind == "theorem4":
            F = ccc_theorem4(A, B, verify=args.verify)
            return _document(F, "ccc", {"M": F.m, "N": F.n, "L": F.length, "Z": F.length}, params, args)
        F = mocss_theorem5(A, B, negation=args.negation, verify=args.verify)
        params.update(negation=args.negation)
        return _document(F, "mocss", {"M": F.m, "N": F.n, "L": F.length, "Z": F.length}, params, args)
    if kind == "seed":
        if not args.name:
            raise UsageError("seed needs --name (gcp-L or ccc-2xL)")
        F = seeds.resolve(args.name)
        params.update(name=args.name)
        role = "gcp" if F.m == 1 else "ccc"
        claim = {"M": F.m, "N": F.n, "L": F.length}
        if role == "ccc":
            claim["Z"] = F.length
        return _document(F, role, claim, params, args)
    raise UsageError(f"unknown construction {kind!r}")


def _document(F, role, claim, params, args) -> FamilyDocument:
    meta = {"parameters": params}
    if args.seed_metadata == "on":
        meta["generator"] = f"seqcomp {__version__}"
    return FamilyDocument.from_family(F, role, claimed_params=claim, metadata=meta)


def cmd_generate(args, extra) -> int:
    doc = _generate(args, extra)
    text = doc.to_csv() if args.format == "csv" else doc.to_json()
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify / classify


def _first_css_failure(F: SetFamily, engine: str, even_only: bool = False):
    L = F.length
    if L == 1:
        return None
    auto = profile_counts(F.array, F.array, F.q)[:, L:]
    zeros = zero_mask(auto, F.q, engine)
    for s in range(F.m):
        for t in range(1, L):
            if even_only and t % 2:
                continue
            if not zeros[s, t - 1]:
                return {"set": s, "tau": t, "counts": auto[s, t - 1].tolist()}
    return None


def _check_claim(F: SetFamily, role: str, params: dict, report, engine: str) -> tuple[bool, dict | None]:
    for key, actual in zip("MNL", F.shape):
        if key in params and params[key] != actual:
            return False, {"reason": f"claimed {key}={params[key]}, found {actual}"}
    if role == "raw":
        return True, None
    if role in ("css", "gcp"):
        if role == "gcp" and (F.q, F.m, F.n) != (2, 1, 2):
            return False, {"reason": "a Golay pair is a single binary 2-row set"}
        bad = _first_css_failure(F, engine)
        return bad is None, bad
    if role == "escss":
        bad = _first_css_failure(F, engine, even_only=True)
        return bad is None, bad
    z = F.length if role in ("mocss", "ccc") else params.get("Z", 1)
    if role == "ccc" and F.m != F.n:
        return False, {"reason": f"a CCC needs M == N, found M={F.m}, N={F.n}"}
    if not 1 <= z <= F.length:
        return False, {"reason": f"zone width {z} outside [1, {F.length}]"}
    v = first_violation(F, z, engine)
    if v is None:
        return True, None
    return False, {"reason": f"nonzero correlation inside |tau| <= {z - 1}", **v.as_dict()}


def _parse_params(text: str | None) -> dict:
    if text is None:
        return {}
    vals = _ints(text)
    if not 3 <= len(vals) <= 4:
        raise UsageError("--params expects M,N,L or M,N,L,Z")
    return dict(zip("MNLZ", vals))


def _report(F: SetFamily, engine: str) -> dict:
    report = classify(F, engine)
    z = report.zcz_width
    bound = analysis.feng_bound(F.m, F.n, F.length, z).as_dict() if z >= 1 else None
    return {"report": report.as_dict(), "bound": bound, "engine": engine}, report


def cmd_verify(args) -> int:
    doc = load_document(args.input)
    F = doc.to_family()
    role = args.claim or doc.role
    params = _parse_params(args.params) if args.params else dict(doc.claimed_params or {})
    engine = args.engine or default_engine()
    out, report = _report(F, engine)
    ok, detail = _check_claim(F, role, params, report, engine)
    out.update(claim={"role": role, "params": params}, verified=ok)
    if detail:
        out["violation"] = detail
    print(json.dumps(out, indent=2))
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_classify(args) -> int:
    F = load_document(args.input).to_family()
    out, _ = _report(F, args.engine or default_engine())
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_export(args) -> int:
    doc = load_document(args.input)
    sys.stdout.write(doc.to_csv() if args.format == "csv" else doc.to_json())
    return EXIT_OK


# ---------------------------------------------------------------------------
# demo


def _demo_diff(d: reproduce.Diff) -> int:
    print(d.summary())
    return EXIT_OK if d.ok else EXIT_REFUTED


def cmd_demo(args) -> int:
    name = args.name
    if name == "example1":
        d = reproduce.example1()
        print(f"{d.shape[0]} sequences of length {d.shape[1]}: "
              + ("all match" if d.ok else d.summary()))
        return EXIT_OK if d.ok else EXIT_REFUTED
    if name == "example2":
        d = reproduce.example2()
        generated = classify(SetFamily((reproduce.example2_set(),)))
        printed = classify(SetFamily((reproduce.printed_example2_set(),)))
        print(d.summary())
        print(f"generated set is a CSS: {generated.is_css}; printed set is a CSS: {printed.is_css}")
        return EXIT_OK if d.ok else EXIT_REFUTED
    if name == "table1":
        d = reproduce.table1()
        report = classify(reproduce.table1_family())
        print(f"{d.shape[0]} rows x {d.shape[1]} symbols, {len(d.mismatches)} mismatches")
        if not d.ok:
            print(d.summary())
        print(f"zcz_width={report.zcz_width} feng_optimal={report.feng_optimal}")
        ok = d.ok and report.zcz_width == 9 and report.feng_optimal
        return EXIT_OK if ok else EXIT_REFUTED
    if name == "remark-2-4-11":
        F = reproduce.remark_2_4_11()
        report = classify(F)
        print(f"params (M,N,L)=({F.m},{F.n},{F.length}); MOCSS verified: {report.is_mocss}")
        return EXIT_OK if report.is_mocss and F.shape == (2, 4, 11) else EXIT_REFUTED
    if name == "table3":
        res = reproduce.table3()
        for e in res.entries:
            wit = f"{e.witness[0]}+{e.witness[1]}" if e.witness else "-"
            built = {True: "built+verified", False: "BUILD FAILED", None: ""}[res.built.get(e.length)]
            print(f"L={e.length:3d}  {e.status:16s} witness={wit:6s} {built}")
        print(f"flags: {res.flags}; expected: {res.expected_flags}")
        return EXIT_OK if res.ok else EXIT_REFUTED
    raise UsageError(f"unknown demo {name!r}")


DEMOS = ("example1", "example2", "table1", "remark-2-4-11", "table3")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqcomp", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"seqcomp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a family and write it as JSON or CSV")
    g.add_argument("construction",
                   choices=("theorem1", "lemma3", "theorem2", "theorem3", "theorem4", "theorem5", "seed"))
    g.add_argument("--q", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--v", type=int)
    g.add_argument("--alpha", type=int)
    g.add_argument("--beta", type=int)
    g.add_argument("--pi", type=_ints, help="1-based permutation, e.g. 1,2")
    g.add_argument("--c0", type=int, default=0)
    g.add_argument("--square", type=_ints, help="lemma3: coefficients of x_k^2")
    g.add_argument("--linear", type=_ints, help="lemma3: coefficients of x_k")
    g.add_argument("--a", help="input CCC: document path or seeds:ccc-2xL")
    g.add_argument("--b", help="second input CCC")
    g.add_argument("--c", help="theorem3 seed CCC")
    g.add_argument("--name", help="seed name (gcp-L or ccc-2xL)")
    g.add_argument("--negation", choices=NEGATIONS, default="phase")
    g.add_argument("--verify", choices=("always", "debug", "never"), default="always")
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--seed-metadata", choices=("on", "off"), default="on")
    g.add_argument("-o", "--output", help="output path (default: stdout)")

    v = sub.add_parser("verify", help="check a document against a claimed role")
    v.add_argument("input")
    v.add_argument("--claim", choices=ROLES)
    v.add_argument("--params", help="M,N,L or M,N,L,Z")
    v.add_argument("--engine", choices=ENGINES)

    c = sub.add_parser("classify", help="report every property of a document")
    c.add_argument("input")
    c.add_argument("--engine", choices=ENGINES)

    e = sub.add_parser("export", help="re-emit a document as canonical JSON or flat CSV")
    e.add_argument("input")
    e.add_argument("--format", choices=("json", "csv"), default="csv")

    d = sub.add_parser("demo", help="reproduce a worked example and diff it")
    d.add_argument("name", choices=DEMOS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args, extra = parser.parse_known_args(argv)
    if extra and args.command != "generate":
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        if args.command == "generate":
            return cmd_generate(args, extra)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "classify":
            return cmd_classify(args)
        if args.command == "export":
            return cmd_export(args)
        return cmd_demo(args)
    except (UsageError, DocumentError, seeds.CatalogError, OSError) as exc:
        return _fail(str(exc), EXIT_USAGE, kind=type(exc).__name__)
    except EngineDisagreementError as exc:
        return _fail(str(exc), EXIT_REFUTED, kind=type(exc).__name__)
    except PreconditionError as exc:
        return _fail(str(exc), EXIT_USAGE, kind=type(exc).__name__)
    except SeqCompError as exc:
        return _fail(str(exc), EXIT_REFUTED, kind=type(exc).__name__)


if __name__ == "__main__":
    sys.exit(main())
