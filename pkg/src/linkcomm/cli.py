"""Command line front end: deterministic JSON or text reports."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .generators import Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- serialization

def _plain(x):
    """Recursively turn results into JSON-ready values, floats at 12 digits."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return float(f"{x:.12g}")
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "to_json"):
        return _plain(x.to_json())
    return str(x)


def envelope(command: str, inputs: dict, results: dict, reports: list[Report]) -> dict:
    failures = [f"{r.title}: {c.name}" for r in reports for c in r.failures()]
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "summary": {"passed": not failures,
                    "checks": sum(len(r.checks) for r in reports),
                    "failures": failures},
        "version": __version__,
    }


def render_json(env: dict) -> str:
    return json.dumps(_plain(env), sort_keys=True, indent=2, ensure_ascii=False)


def _text_lines(value, prefix=""):
    if isinstance(value, dict):
        for k in sorted(value):
            yield from _text_lines(value[k], f"{prefix}{k}." if prefix or k else k)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, v in enumerate(value):
            yield from _text_lines(v, f"{prefix}{i}.")
    else:
        yield f"{prefix.rstrip('.')}: {json.dumps(value, ensure_ascii=False)}"


def render_text(env: dict, reports: list[Report]) -> str:
    out = [f"linkcomm {env['version']} {env['command']}"]
    for r in reports:
        for c in r.checks:
            mark = "PASS" if c.passed else "FAIL"
            out.append(f"  {mark} {r.title}: {c.name}" + (f"  ({c.detail})" if c.detail else ""))
    results = _plain(env["results"])
    if results:
        out.extend(_text_lines(results))
    s = env["summary"]
    if reports:
        out.append(f"{s['checks'] - len(s['failures'])}/{s['checks']} checks passed")
    return "\n".join(out)


# ---------------------------------------------------------------- input handling

def _word(text: str | None, alphabet: str, n: int | None):
    from .kleinian import MutationWord

    if text is None:
        if n is None:
            raise UsageError("need --n or --mutation")
        return MutationWord((0,) * (n + 1))
    try:
        I = MutationWord.parse(text, alphabet)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if n is not None and I.n != n:
        raise UsageError(f"--mutation has {len(I)} entries but --n {n} needs {n + 1}")
    return I


def _need_n(n: int | None, lo: int = 1, hi: int | None = None) -> int:
    if n is None:
        raise UsageError("--n is required")
    if n < lo or (hi is not None and n > hi):
        raise UsageError(f"--n must lie in [{lo}, {hi if hi is not None else 'inf'}]")
    return n


# ---------------------------------------------------------------- commands

def cmd_verify(args) -> tuple[dict, list[Report]]:
    from .generators import broken_table, identity_suite
    from .kleinian import commensurator_suite
    from .polyhedra import (broken_octahedron_pairing, cuboctahedron, cuboctahedron_pairing,
                            horosphere_compatibility, octahedron, octahedron_pairing,
                            verify_internal_face_pairing)
    from .tiling import canonicity_report

    table = broken_table() if args.break_injection else None
    reports = [identity_suite(table)]
    P1, P2 = octahedron(), cuboctahedron()
    for title, P, FP in (("P1 pairing", P1, octahedron_pairing()),
                         ("P2 pairing", P2, cuboctahedron_pairing())):
        r = verify_internal_face_pairing(P, FP)
        r.title = title
        reports.append(r)
        h = horosphere_compatibility(P, FP)
        h.title = f"{title} horospheres"
        reports.append(h)
    neg = Report("negative controls")
    neg.add("P1 with s twice is rejected",
            not verify_internal_face_pairing(P1, broken_octahedron_pairing()).passed)
    reports.append(neg)
    reports.append(commensurator_suite(args.n or 1))
    reports.append(canonicity_report())
    return {"break_injection": bool(args.break_injection)}, reports


def cmd_moduli(args) -> tuple[dict, list[Report]]:
    from .cusp_moduli import (assemble_mutant_moduli, brute_force_pgl2q, mn_moduli,
                              mutant_moduli, pgl2q_equivalent, walk_chain)

    I = _word(args.mutation, "02", args.n)
    n = _need_n(I.n)
    T = mutant_moduli(I)
    A = assemble_mutant_moduli(I)
    base = mn_moduli(n)
    rep = Report("moduli")
    rep.add("closed form agrees with annulus assembly", T == A)
    results = {
        "T1": T[0], "T2": T[1],
        "T1_str": str(T[0]), "T2_str": str(T[1]),
        "chains": {f"T{k}": walk_chain(I, k).labels() for k in (1, 2)},
        "M_n": {"T1": base[0], "T2": base[1]},
        "equivalent_to_M_n": [pgl2q_equivalent(t, b) for t, b in zip(T, base)],
    }
    if args.bound is not None:
        results["brute_force_witness"] = [
            brute_force_pgl2q(t, b, args.bound) for t, b in zip(T, base)]
    return results, [rep]


def cmd_regulator(args) -> tuple[dict, list[Report]]:
    from .bloch import (beta1, beta2, bloch_invariant_Mn, borel_regulator,
                        incommensurability_certificate, triangulate_P1, triangulate_P2, volume)

    n = _need_n(args.n)
    B = borel_regulator(bloch_invariant_Mn(n))
    v1, v2 = volume(triangulate_P1()), volume(triangulate_P2())
    rep = Report("regulator")
    rep.add("B(beta1) = (v1, v1)", abs(borel_regulator(beta1()).r2 - v1) < 1e-9)
    b2 = borel_regulator(beta2())
    rep.add("B(beta2) = 2(v2, -v2)", abs(b2.r1 - 2 * v2) < 1e-9 and abs(b2.r2 + 2 * v2) < 1e-9)
    rep.add("B = (2v1 + 2n v2, 2v1 - 2n v2)",
            abs(B.r1 - (2 * v1 + 2 * n * v2)) < 1e-8 and abs(B.r2 - (2 * v1 - 2 * n * v2)) < 1e-8)
    others = [m for m in range(1, max(n, 3) + 2) if m != n]
    certs = [incommensurability_certificate(n, m) for m in others]
    for c in certs:
        rep.add(f"M_{n} and M_{c.n} regulators independent", c.distinct, f"det {c.determinant:.6g}")
    results = {"bloch_invariant": str(bloch_invariant_Mn(n)), "regulator": B,
               "v1": v1, "v2": v2, "certificates": certs}
    return results, [rep]


def cmd_classify(args) -> tuple[dict, list[Report]]:
    import math

    from .cusp_moduli import classify_family

    n = _need_n(args.n, 1, 12)
    C = classify_family(n)
    rep = Report("classify")
    single = C.single_two_classes()
    rep.add(f"single-2 family has at least {math.ceil(n / 2)} distinct classes",
            len(set(single)) >= math.ceil(n / 2), f"{len(set(single))} classes")
    if n >= 2:
        rep.add("adjacent-pair family shares one class", len(set(C.adjacent_pair_classes())) == 1)
    return C.to_json(), [rep]


def cmd_tiling_check(args) -> tuple[dict, list[Report]]:
    from .tiling import convexity_witnesses, coplanarity_values, load_MN, NORMAL, canonicity_report

    M, N = load_MN()
    results = {
        "n_dot_m": [str(x) for x in coplanarity_values(NORMAL, M)],
        "witnesses": convexity_witnesses(),
    }
    if args.n is not None:
        results["n"] = _need_n(args.n)
    return results, [canonicity_report()]


def cmd_report(args) -> tuple[dict, list[Report]]:
    from .bloch import borel_regulator, bloch_invariant_Mn, mutation_invariance_check
    from .cusp_moduli import mutant_moduli
    from .kleinian import gamma_I, integrality_scan, trace_field

    I = _word(args.mutation, "012", args.n)
    n = _need_n(I.n)
    G = gamma_I(I)
    scan = integrality_scan(G, args.max_word_length)
    results = {
        "word": str(I),
        "trace_field": trace_field(G.elements),
        "integrality": scan,
        "regulator": borel_regulator(bloch_invariant_Mn(n)),
    }
    if 1 not in I.entries:
        T = mutant_moduli(I)
        results["moduli"] = {"T1": T[0], "T2": T[1], "T1_str": str(T[0]), "T2_str": str(T[1])}
    else:
        results["moduli"] = None
    return results, [mutation_invariance_check(I)]


COMMANDS = {
    "verify": cmd_verify,
    "moduli": cmd_moduli,
    "regulator": cmd_regulator,
    "classify": cmd_classify,
    "tiling-check": cmd_tiling_check,
    "report": cmd_report,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="linkcomm", description=__doc__)
    p.add_argument("--version", action="version", version=f"linkcomm {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--n", type=int)
        s.add_argument("--json", action="store_true")
        if name in ("moduli", "report"):
            s.add_argument("--mutation")
        if name == "moduli":
            s.add_argument("--bound", type=int)
        if name == "report":
            s.add_argument("--max-word-length", type=int, default=3)
        if name == "verify":
            s.add_argument("--break-injection", action="store_true")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.n is not None and args.n < 1:
            raise UsageError("--n must be at least 1")
        if getattr(args, "max_word_length", 1) < 1:
            raise UsageError("--max-word-length must be at least 1")
        if getattr(args, "bound", None) is not None and args.bound < 0:
            raise UsageError("--bound must be nonnegative")
        inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "json")}
        results, reports = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"linkcomm: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    env = envelope(args.command, inputs, results, reports)
    print(render_json(env) if args.json else render_text(env, reports))
    failures = env["summary"]["failures"]
    if failures:
        print(f"linkcomm: first failing check: {failures[0]}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK
