"""Command-line front end: load or build semigroups, run the analyses, and
emit human-readable or JSON reports plus identity-family certificates.

Exit codes: 0 verified/true, 1 refuted/false (witness printed),
2 inconclusive (bounded search or budget), 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .core import (DEFAULT_CAP, ClosureOverflowError, FiniteSemigroup,
                   NotAssociativeError, generate, power_data)
from .constructions import (BinaryMatrix, PartialTransformation, compose,
                            from_builtin_name, mat_mul, verify_homomorphism,
                            build_ic, build_tn2, embed_ic4)
from .green import green, in_DS, in_LDS
from .words import (DEFAULT_BUDGET, BudgetExceededError, Identity,
                    is_isoterm_bounded, parse_identity, parse_word, satisfies,
                    word_str)
from .nfb import (build_instance, certificate_text, check_P0, check_P1,
                  check_P2, parse_certificate, verify_holds)
from .divisor import InconclusiveSearchError, has_divisor

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


class InputError(Exception):
    pass


def _element_cap() -> int:
    raw = os.environ.get("SEMIGROUP_LAB_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"SEMIGROUP_LAB_CAP must be an integer, got {raw!r}") from exc


def _load_spec_file(path: str, cap: int) -> FiniteSemigroup:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc

    def fail(where: str, msg: str):
        raise InputError(f"{path}: {where}: {msg}")

    if not isinstance(data, dict) or "kind" not in data:
        fail("$", "spec object must have a 'kind' field")
    kind = data["kind"]
    if kind == "builtin":
        name = data.get("name")
        if not isinstance(name, str):
            fail("name", "missing builtin name")
        return from_builtin_name(name)
    if kind == "partial_transformations":
        degree = data.get("degree")
        gens_raw = data.get("generators")
        if not isinstance(degree, int) or degree < 1:
            fail("degree", "need a positive integer degree")
        if not isinstance(gens_raw, list) or not gens_raw:
            fail("generators", "need a nonempty generator list")
        gens = []
        for i, img in enumerate(gens_raw):
            if not isinstance(img, list) or len(img) != degree:
                fail(f"generators[{i}]", f"image must be a length-{degree} array")
            try:
                gens.append(PartialTransformation(
                    degree, tuple(None if v is None else int(v) for v in img)))
            except (TypeError, ValueError) as exc:
                fail(f"generators[{i}]", str(exc))
        s = generate(gens, compose, PartialTransformation.label, cap=cap,
                     source=f"file:{os.path.basename(path)}")
        return s
    if kind == "matrices_gf2":
        gens_raw = data.get("generators")
        if not isinstance(gens_raw, list) or not gens_raw:
            fail("generators", "need a nonempty generator list")
        gens = []
        for i, rows in enumerate(gens_raw):
            try:
                gens.append(BinaryMatrix.from_lists(rows))
            except (TypeError, ValueError) as exc:
                fail(f"generators[{i}]", str(exc))
        if len({m.dimension for m in gens}) != 1:
            fail("generators", "matrices must share one dimension")
        return generate(gens, mat_mul, BinaryMatrix.label, cap=cap,
                        source=f"file:{os.path.basename(path)}")
    if kind == "cayley":
        labels = data.get("labels")
        table = data.get("table")
        if not isinstance(labels, list) or not labels:
            fail("labels", "need a nonempty label list")
        if not isinstance(table, list) or len(table) != len(labels):
            fail("table", f"need a {len(labels)}x{len(labels)} table")
        for i, row in enumerate(table):
            if not isinstance(row, list) or len(row) != len(labels):
                fail(f"table[{i}]", f"row must have {len(labels)} entries")
        try:
            return FiniteSemigroup(labels, table,
                                   source=f"file:{os.path.basename(path)}")
        except (NotAssociativeError, ValueError) as exc:
            fail("table", str(exc))
    fail("kind", f"unknown kind {kind!r}")


def load_spec(spec: str, cap: int | None = None) -> FiniteSemigroup:
    """Resolve a builtin name or load a JSON spec file."""
    cap = _element_cap() if cap is None else cap
    try:
        return from_builtin_name(spec)
    except ValueError as exc:
        if "unknown builtin" not in str(exc):
            raise InputError(str(exc)) from exc
    if os.path.exists(spec):
        return _load_spec_file(spec, cap)
    raise InputError(f"unknown builtin and no such file: {spec!r}")


def _spec_info(s: FiniteSemigroup) -> dict:
    return {
        "source": s.source,
        "order": len(s),
        "identity": None if s.identity is None else s.labels[s.identity],
        "validation": s.validation,
    }


def _report(command: str, spec: dict | None, verdict: str, witnesses: dict,
            bounds: dict, t0: float) -> dict:
    return {
        "command": command,
        "spec": spec or {},
        "verdict": verdict,
        "witnesses": witnesses,
        "bounds": bounds,
        "timings": {"seconds": round(time.perf_counter() - t0, 3)},
    }


def _witness_labels(s: FiniteSemigroup, witness: dict[str, int]) -> dict[str, str]:
    return {v: s.labels[i] for v, i in sorted(witness.items())}


def _cmd_info(args) -> tuple[dict, list[str], int]:
    t0 = time.perf_counter()
    s = load_spec(args.spec)
    pd = power_data(s)
    idems = s.idempotents()
    lines = [
        f"source: {s.source}",
        f"order: {len(s)}",
        f"identity: {s.labels[s.identity] if s.identity is not None else 'none'}",
        f"idempotents: {len(idems)}",
        f"uniform idempotent power k: {pd.uniform_k}",
        f"subgroup exponent lcm m: {pd.subgroup_lcm_m}",
        f"max index: {max(pd.index)}, lcm of periods: "
        f"{max(pd.period) if len(set(pd.period)) == 1 else 'varies'}",
        f"associativity validation: {s.validation}",
    ]
    witnesses = {
        "idempotent_count": len(idems),
        "uniform_k": pd.uniform_k,
        "subgroup_lcm_m": pd.subgroup_lcm_m,
    }
    return _report("info", _spec_info(s), "ok", witnesses, {}, t0), lines, EXIT_TRUE


def _cmd_green(args) -> tuple[dict, list[str], int]:
    t0 = time.perf_counter()
    s = load_spec(args.spec)
    data = green(s)
    d_sizes = data.class_sizes(data.d_class)
    ds = all(sub or not idem for idem, sub in
             zip(data.d_contains_idempotent, data.d_is_subsemigroup))
    lds = in_LDS(s)
    lines = [
        f"order: {len(s)}",
        f"R-classes: {max(data.r_class) + 1}",
        f"L-classes: {max(data.l_class) + 1}",
        f"H-classes: {max(data.h_class) + 1}",
        f"D-classes: {max(data.d_class) + 1} (sizes {','.join(map(str, d_sizes))})",
        "J = D: yes",
        f"DS: {str(ds).lower()}",
        f"LDS: {str(lds).lower()}",
    ]
    witnesses = {
        "d_class_sizes": d_sizes,
        "counts": {"R": max(data.r_class) + 1, "L": max(data.l_class) + 1,
                   "H": max(data.h_class) + 1, "D": max(data.d_class) + 1,
                   "J": max(data.j_class) + 1},
        "in_DS": ds,
        "in_LDS": lds,
    }
    return _report("green", _spec_info(s), "ok", witnesses, {}, t0), lines, EXIT_TRUE


def _cmd_check_id(args) -> tuple[dict, list[str], int]:
    t0 = time.perf_counter()
    s = load_spec(args.spec)
    try:
        ident = parse_identity(args.identity)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    bounds = {"budget": args.budget, "threads": args.threads}
    ok, witness = satisfies(s, ident, budget=args.budget, threads=args.threads)
    if ok:
        lines = [f"{args.identity}: holds in {s.source} "
                 f"(all substitutions agree)"]
        return (_report("check-id", _spec_info(s), "true", {}, bounds, t0),
                lines, EXIT_TRUE)
    labelled = _witness_labels(s, witness)
    lines = [f"{args.identity}: fails in {s.source}",
             "witness: " + ", ".join(f"{v} = {lbl}" for v, lbl in labelled.items())]
    report = _report("check-id", _spec_info(s), "false",
                     {"substitution": labelled}, bounds, t0)
    return report, lines, EXIT_FALSE


def _cmd_isoterm(args) -> tuple[dict, list[str], int]:
    t0 = time.perf_counter()
    s = load_spec(args.spec)
    try:
        w = parse_word(args.word)
        ok, witness = is_isoterm_bounded(s, w, args.max_len, budget=args.budget)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    bounds = {"max_len": args.max_len, "budget": args.budget}
    if ok:
        lines = [f"{word_str(w)}: no equivalent word up to length {args.max_len}",
                 "note: bounded check only; words longer than the bound "
                 "were not examined"]
        return (_report("isoterm", _spec_info(s), "true", {}, bounds, t0),
                lines, EXIT_TRUE)
    lines = [f"{word_str(w)}: not an isoterm",
             f"witness: {s.source} satisfies "
             f"{word_str(w)} == {word_str(witness)}"]
    report = _report("isoterm", _spec_info(s), "false",
                     {"word": word_str(witness)}, bounds, t0)
    return report, lines, EXIT_FALSE


def _cmd_nfb_gen(args) -> tuple[dict, list[str], int]:
    t0 = time.perf_counter()
    if args.n < 1 or args.k < 1 or args.m < 1:
        raise InputError("n, k, m must be positive")
    inst = build_instance(args.n, args.k, args.m)
    verdicts = {"P0": check_P0(inst)[0], "P1": check_P1(inst)[0],
                "P2": check_P2(inst)[0]}
    cert = certificate_text(inst, verdicts)
    all_ok = all(verdicts.values())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(cert)
        lines = [f"wrote certificate to {args.out}"]
    else:
        lines = [cert.rstrip("\n")]
    lines.append("P0 %s, P1 %s, P2 %s" % tuple(
        "pass" if verdicts[p] else "fail" for p in ("P0", "P1", "P2")))
    spec = {"source": f"nfb:n={args.n},k={args.k},m={args.m}",
            "order": None, "identity": None, "validation": None}
    report = _report("nfb-gen", spec, "true" if all_ok else "false",
                     {"verdicts": verdicts, "u_length": len(inst.u),
                      "certificate": cert},
                     {"n": args.n, "k": args.k, "m": args.m}, t0)
    return report, lines, EXIT_TRUE if all_ok else EXIT_FALSE


def _cmd_nfb_verify(args) -> tuple[dict, list[str], int]:
    t0 = time.perf_counter()
    s = load_spec(args.spec)
    if args.cert:
        try:
            with open(args.cert, "r", encoding="utf-8") as fh:
                inst, _recorded = parse_certificate(fh.read())
        except OSError as exc:
            raise InputError(f"{args.cert}: {exc.strerror or exc}") from exc
        except ValueError as exc:
            raise InputError(f"{args.cert}: {exc}") from exc
        if build_instance(inst.n, inst.k, inst.m) != inst:
            raise InputError(f"{args.cert}: certificate does not match its "
                             "stated parameters")
        if args.n is not None and args.n != inst.n:
            raise InputError(f"--n {args.n} conflicts with certificate n={inst.n}")
    else:
        if args.n is None:
            raise InputError("nfb verify needs --n (or --cert)")
        pd = power_data(s)
        inst = build_instance(args.n, pd.uniform_k, pd.subgroup_lcm_m)
    verdicts = {"P0": check_P0(inst)[0], "P1": check_P1(inst)[0],
                "P2": check_P2(inst)[0]}
    bounds = {"n": inst.n, "k": inst.k, "m": inst.m, "budget": args.budget,
              "variables": 3 * inst.n + 4}
    lines = [f"instance n={inst.n} k={inst.k} m={inst.m}: "
             f"|u| = {len(inst.u)}, |v| = {len(inst.v)}",
             "P0 %s, P1 %s, P2 %s" % tuple(
                 "pass" if verdicts[p] else "fail" for p in ("P0", "P1", "P2"))]
    if not all(verdicts.values()):
        report = _report("nfb-verify", _spec_info(s), "false",
                         {"verdicts": verdicts}, bounds, t0)
        return report, lines + ["projection properties failed"], EXIT_FALSE
    try:
        ok, witness = verify_holds(s, inst, budget=args.budget,
                                   threads=args.threads)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if ok:
        lines.append(f"u == v holds in {s.source} "
                     f"(exhaustive over {len(s)}^{3 * inst.n + 4} substitutions)")
        report = _report("nfb-verify", _spec_info(s), "true",
                         {"verdicts": verdicts}, bounds, t0)
        return report, lines, EXIT_TRUE
    labelled = _witness_labels(s, witness)
    lines.append("u == v fails; witness: " +
                 ", ".join(f"{v} = {lbl}" for v, lbl in labelled.items()))
    report = _report("nfb-verify", _spec_info(s), "false",
                     {"verdicts": verdicts, "substitution": labelled}, bounds, t0)
    return report, lines, EXIT_FALSE


def _cmd_divisor(args) -> tuple[dict, list[str], int]:
    t0 = time.perf_counter()
    s = load_spec(args.spec)
    target = from_builtin_name(args.target)
    bounds = {"target": args.target, "max_gens": args.max_gens,
              "max_tuples": args.max_tuples}
    try:
        witness = has_divisor(s, target, args.max_gens, args.max_tuples)
    except InconclusiveSearchError:
        lines = [f"no {args.target} divisor found before the tuple cap; "
                 "bounded search inconclusive"]
        return (_report("divisor", _spec_info(s), "inconclusive", {}, bounds, t0),
                lines, EXIT_INCONCLUSIVE)
    if witness is None:
        lines = [f"no {args.target} divisor found with at most "
                 f"{args.max_gens} generators (bounded search; "
                 "larger subsemigroups were not examined)"]
        return (_report("divisor", _spec_info(s), "inconclusive", {}, bounds, t0),
                lines, EXIT_INCONCLUSIVE)
    ok = witness.revalidate(s, target)
    gens = [s.labels[g] for g in witness.generators]
    mapping = {s.labels[u]: target.labels[t] for u, t in sorted(witness.mapping.items())}
    adjoined = (None if witness.adjoined_idempotent is None
                else s.labels[witness.adjoined_idempotent])
    lines = [f"{args.target} divides {s.source}:",
             f"  generators: {', '.join(gens)}",
             f"  subsemigroup size: {len(witness.elements)}"
             + (f" plus adjoined idempotent {adjoined}" if adjoined else ""),
             f"  revalidated: {str(ok).lower()}"]
    report = _report("divisor", _spec_info(s), "true",
                     {"generators": gens, "mapping": mapping,
                      "adjoined_idempotent": adjoined,
                      "revalidated": ok}, bounds, t0)
    return report, lines, EXIT_TRUE if ok else EXIT_FALSE


def _cmd_embed_ic4(args) -> tuple[dict, list[str], int]:
    t0 = time.perf_counter()
    ic4 = build_ic(4)
    t42 = build_tn2(4)
    emb = embed_ic4()
    images = [t42.index_of(emb[ic4.carriers[i]]) for i in range(len(ic4))]
    injective = len(set(images)) == len(ic4)
    shaped = all(m.is_upper_triangular() and m.is_row_monomial()
                 for m in emb.values())
    ok, pair = verify_homomorphism(images, ic4, t42)
    pairs = len(ic4) * len(ic4)
    verdict = ok and injective and shaped
    lines = [f"homomorphism {'verified' if ok else 'FAILED'} over {pairs} pairs; "
             f"image {'row-monomial and upper triangular' if shaped else 'MALFORMED'}; "
             f"{'injective' if injective else 'NOT injective'}"]
    if pair is not None:
        lines.append(f"counterexample pair: {ic4.labels[pair[0]]}, {ic4.labels[pair[1]]}")
    report = _report("embed-ic4", _spec_info(ic4),
                     "true" if verdict else "false",
                     {"pairs_checked": pairs, "injective": injective,
                      "row_monomial_upper_triangular": shaped},
                     {}, t0)
    return report, lines, EXIT_TRUE if verdict else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semigroup-lab",
        description="Finite semigroup workbench: Green's relations, identity "
                    "checking, isoterms, the nonfinite-basis family, divisor "
                    "searches.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit a JSON report instead of text")
    common.add_argument("--threads", type=int,
                        default=max(1, os.cpu_count() or 1),
                        help="worker cap for substitution sweeps")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("info", parents=[common],
                       help="order, identity, idempotents, power data")
    p.add_argument("spec", help="builtin name or JSON spec file")
    p.set_defaults(handler=_cmd_info)

    p = sub.add_parser("green", parents=[common],
                       help="Green's relations, D-classes, DS/LDS verdicts")
    p.add_argument("spec")
    p.set_defaults(handler=_cmd_green)

    p = sub.add_parser("check-id", parents=[common],
                       help="check an identity 'LHS == RHS' by exhaustive substitution")
    p.add_argument("spec")
    p.add_argument("identity")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(handler=_cmd_check_id)

    p = sub.add_parser("isoterm", parents=[common],
                       help="bounded isoterm check for a word")
    p.add_argument("spec")
    p.add_argument("word")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(handler=_cmd_isoterm)

    p = sub.add_parser("nfb", parents=[],
                       help="generate or verify the identity family")
    nfb_sub = p.add_subparsers(dest="nfb_command")
    p_gen = nfb_sub.add_parser("gen", parents=[common])
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--k", type=int, required=True)
    p_gen.add_argument("--m", type=int, required=True)
    p_gen.add_argument("--out")
    p_gen.set_defaults(handler=_cmd_nfb_gen)
    p_ver = nfb_sub.add_parser("verify", parents=[common])
    p_ver.add_argument("spec")
    p_ver.add_argument("--n", type=int)
    p_ver.add_argument("--cert")
    p_ver.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_ver.set_defaults(handler=_cmd_nfb_verify)

    p = sub.add_parser("divisor", parents=[common],
                       help="bounded divisor search")
    p.add_argument("spec")
    p.add_argument("--target", choices=["b2", "b21"], required=True)
    p.add_argument("--max-gens", type=int, required=True)
    p.add_argument("--max-tuples", type=int, default=10_000_000)
    p.set_defaults(handler=_cmd_divisor)

    p = sub.add_parser("embed-ic4", parents=[common],
                       help="verify the embedding of IC_4 into T_4(2)")
    p.add_argument("--check", action="store_true",
                   help="run the full verification (default action)")
    p.set_defaults(handler=_cmd_embed_ic4)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "handler", None) is None:
        parser.print_help()
        return EXIT_INPUT
    try:
        report, lines, code = args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ClosureOverflowError, NotAssociativeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return code


def run() -> None:
    sys.exit(main(sys.argv[1:]))
