"""Command-line interface.

Commands operate on a single instance document (``--instance``) or, for
``corpus-run``, on a seeded generated corpus.  Exit status: 0 for
HOLDS/success, 2 when a hypothesis gate fires, 1 for errors.  Reports are
deterministic: identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .abcengine import (DEFAULT_RHOS, _frac_str, verify_abc_first,
                        verify_abc_second, verify_basic_abc, verify_corollaries)
from .errors import CasError, SearchExhausted
from .fields import NEG_INFINITY
from .hasse import hasse_derivative
from .instances import (CorpusSpec, Instance, field_spec_from_code, generate_corpus,
                        instance_to_dict, parse_instance)
from .nevanlinna import counting, log_gauss_norm, norm_profile, poisson_constant, truncated_counting
from .radicals import higher_radical, radical, radical_chain, square_free_part
from .wronskian import find_certificate, index_of_independence, collection_independence_index

COMMANDS = ("norm", "counting", "radical", "sqfree", "hasse", "wronskian",
            "independence", "verify-basic", "verify-abc1", "verify-abc2",
            "corollaries", "corpus-run")


def _parse_rhos(text: str):
    return [Fraction(part.strip()) for part in text.split(",") if part.strip()]


def _pl_doc(pl):
    return {
        "breakpoints": [_frac_str(b) for b in pl.breakpoints],
        "slopes": [_frac_str(s) for s in pl.slopes],
        "values": [_frac_str(v) for v in pl.values],
        "final_slope": _frac_str(pl.final_slope),
    }


def _counting_doc(cd):
    return {
        "n_at_zero": cd.n_at_zero,
        "breakpoints": [_frac_str(b) for b in cd.breakpoints],
        "n_values": cd.n_values,
        "integrated": _pl_doc(cd.integrated),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyabc",
                                     description="exact ABC-theorem verification")
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--instance", help="path to an instance document")
        p.add_argument("--rho", help="comma-separated rational sample radii (log scale)")
        p.add_argument("--ell", type=int, help="truncation level")
        p.add_argument("--s", type=int, help="level parameter (radical level, power level, search step)")
        p.add_argument("--k", type=int, help="relative-primality level")
        p.add_argument("--seed", type=int, default=0, help="corpus seed")
        p.add_argument("--format", choices=("text", "machine"), default="text")
        p.add_argument("--max-n", type=int, default=12, help="guard on the number of functions")
        p.add_argument("--oracle-degree-cap", type=int)
        if name == "corpus-run":
            p.add_argument("--count", type=int, default=5)
            p.add_argument("--field", default="q2", help="field code (q2, q3, q5, f2, f3, f5, f2t, f3t, f5t)")
            p.add_argument("--m", type=int, default=1)
            p.add_argument("--n", type=int, default=2)
            p.add_argument("--deg", type=int, default=4)
            p.add_argument("--mode", choices=("pairwise", "kwise", "none"), default="pairwise")
            p.add_argument("--check", choices=("verify-basic", "verify-abc1", "verify-abc2", "corollaries"),
                           default="verify-abc1")
    return parser


def _load_instance(args) -> Instance:
    if not args.instance:
        raise CasError("VALIDATION_ERROR", "--instance is required for this command")
    with open(args.instance, "r", encoding="utf-8") as fh:
        inst = parse_instance(fh.read())
    if len(inst.polys) > args.max_n + 1:
        raise CasError("GUARD_EXCEEDED",
                       f"{len(inst.polys)} polynomials exceed --max-n {args.max_n}")
    return inst


def _rhos_for(args, inst: Instance):
    if args.rho:
        return _parse_rhos(args.rho)
    if inst is not None and "rho" in inst.params:
        return [Fraction(str(x)) for x in inst.params["rho"]]
    return list(DEFAULT_RHOS)


def _param(args, inst, flag, key, default=None):
    v = getattr(args, flag)
    if v is not None:
        return v
    if inst is not None and key in inst.params:
        return inst.params[key]
    return default


# ---------------------------------------------------------------------------
# command bodies; each returns (doc, exit_code)

def _cmd_norm(args):
    inst = _load_instance(args)
    rhos = _rhos_for(args, inst)
    entries = []
    for f in inst.polys:
        if f.is_zero():
            entries.append({"poly": "0", "zero": True})
            continue
        prof = norm_profile(f)
        vals = []
        for r in rhos:
            v = log_gauss_norm(f, r)
            vals.append([_frac_str(r), "-inf" if v is NEG_INFINITY else _frac_str(v)])
        entries.append({"poly": str(f), "profile": _pl_doc(prof), "values": vals})
    doc = {"id": inst.instance_id, "command": "norm", "profiles": entries}
    if "trunc_order" in inst.params:
        doc["caveat"] = (f"inputs truncated at order {inst.params['trunc_order']}: "
                         "values are exact only below the truncation's reliability radius")
    return doc, 0


def _cmd_counting(args):
    inst = _load_instance(args)
    ell = _param(args, inst, "ell", "ell")
    entries = []
    for f in inst.polys:
        cd = counting(f)
        entry = {"poly": str(f), "counting": _counting_doc(cd),
                 "poisson_constant": _frac_str(poisson_constant(f))}
        if ell:
            entry["truncated"] = _counting_doc(truncated_counting(f, int(ell)))
        entries.append(entry)
    doc = {"id": inst.instance_id, "command": "counting", "entries": entries}
    if "trunc_order" in inst.params:
        doc["caveat"] = (f"inputs truncated at order {inst.params['trunc_order']}: "
                         "values are exact only below the truncation's reliability radius")
    return doc, 0


def _oracle_check(f, cap):
    from .oracle import squarefree_factor_oracle

    if f.is_constant() or f.total_degree() > cap:
        return None
    pairs = squarefree_factor_oracle(f, degree_cap=cap)
    return all(e == 1 for _, e in pairs)


def _cmd_radical(args):
    inst = _load_instance(args)
    s = _param(args, inst, "s", "s", 0)
    cap = int(_param(args, inst, "oracle_degree_cap", "oracle_degree_cap", 8))
    entries = []
    for f in inst.polys:
        entry = {"poly": str(f), "radical": str(radical(f))}
        if s:
            entry[f"higher_radical_level_{s}"] = str(higher_radical(f, int(s)))
        chk = _oracle_check(radical(f), cap)
        if chk is not None:
            entry["oracle_squarefree"] = chk
        entries.append(entry)
    return {"id": inst.instance_id, "command": "radical", "entries": entries}, 0


def _cmd_sqfree(args):
    inst = _load_instance(args)
    cap = int(_param(args, inst, "oracle_degree_cap", "oracle_degree_cap", 8))
    entries = []
    for f in inst.polys:
        chain = radical_chain(f)
        entry = {
            "poly": str(f),
            "square_free_part": str(square_free_part(f)),
            "chain": [[s, str(r)] for s, r in chain.entries],
            "terminal_level": chain.terminal_s,
        }
        chk = _oracle_check(square_free_part(f), cap)
        if chk is not None:
            entry["oracle_squarefree"] = chk
        entries.append(entry)
    return {"id": inst.instance_id, "command": "sqfree", "entries": entries}, 0


def _cmd_hasse(args):
    inst = _load_instance(args)
    gamma = inst.params.get("gamma")
    if gamma is None:
        raise CasError("VALIDATION_ERROR", "hasse needs params.gamma in the instance")
    gamma = tuple(int(g) for g in gamma)
    entries = [{"poly": str(f), "derivative": str(hasse_derivative(f, gamma))}
               for f in inst.polys]
    return {"id": inst.instance_id, "command": "hasse",
            "gamma": list(gamma), "entries": entries}, 0


def _cmd_wronskian(args):
    inst = _load_instance(args)
    step = _param(args, inst, "s", "step_c")
    if step is None:
        if inst.spec.characteristic == 0:
            step = 1
        else:
            s = collection_independence_index(inst.polys)
            step = inst.spec.p ** (s - 1)
    doc = {"id": inst.instance_id, "command": "wronskian", "step": int(step)}
    try:
        cert = find_certificate(inst.polys, int(step))
        doc["certificate"] = {"gammas": [list(g) for g in cert.gammas],
                              "determinant": str(cert.determinant)}
        doc["outcome"] = "found"
    except SearchExhausted as exc:
        doc["outcome"] = "search_exhausted"
        doc["last_degree"] = exc.last_degree
    return doc, 0


def _cmd_independence(args):
    inst = _load_instance(args)
    res = index_of_independence(inst.polys)
    doc = {"id": inst.instance_id, "command": "independence",
           "index": res.index_s, "search_cap": res.search_cap}
    if res.dependent_over:
        level, qs = res.dependent_over
        doc["witness"] = {"level": level, "coefficients": [str(q) for q in qs]}
    return doc, 0


def _cmd_verify_basic(args):
    inst = _load_instance(args)
    if len(inst.polys) < 2:
        raise CasError("VALIDATION_ERROR", "verify-basic needs two polynomials")
    rep = verify_basic_abc(inst.polys[0], inst.polys[1], rhos=_rhos_for(args, inst),
                           instance_id=inst.instance_id)
    return rep.as_dict(), rep.exit_code


def _cmd_verify_abc1(args):
    inst = _load_instance(args)
    rep = verify_abc_first(inst.polys, rhos=_rhos_for(args, inst),
                           instance_id=inst.instance_id)
    return rep.as_dict(), rep.exit_code


def _cmd_verify_abc2(args):
    inst = _load_instance(args)
    k = _param(args, inst, "k", "k")
    rep = verify_abc_second(inst.polys, k=int(k) if k is not None else None,
                            rhos=_rhos_for(args, inst), instance_id=inst.instance_id)
    return rep.as_dict(), rep.exit_code


def _cmd_corollaries(args):
    inst = _load_instance(args)
    rep = verify_corollaries(inst.polys, rhos=_rhos_for(args, inst),
                             instance_id=inst.instance_id)
    return rep.as_dict(), rep.exit_code


_CHECKS = {
    "verify-basic": lambda inst, rhos: verify_basic_abc(
        inst.polys[0], inst.polys[1], rhos=rhos, instance_id=inst.instance_id),
    "verify-abc1": lambda inst, rhos: verify_abc_first(
        inst.polys, rhos=rhos, instance_id=inst.instance_id),
    "verify-abc2": lambda inst, rhos: verify_abc_second(
        inst.polys, rhos=rhos, instance_id=inst.instance_id),
    "corollaries": lambda inst, rhos: verify_corollaries(
        inst.polys, rhos=rhos, instance_id=inst.instance_id),
}


def _cmd_corpus_run(args):
    spec = CorpusSpec(seed=args.seed, count=args.count,
                      field=field_spec_from_code(args.field), m=args.m, n=args.n,
                      degree_bound=args.deg, coprimality=args.mode)
    instances = generate_corpus(spec)
    rhos = _parse_rhos(args.rho) if args.rho else list(DEFAULT_RHOS)
    reports = []
    worst = 0
    for inst in instances:
        rep = _CHECKS[args.check](inst, rhos)
        reports.append({"instance": instance_to_dict(inst), "report": rep.as_dict()})
        worst = max(worst, rep.exit_code)
    doc = {"command": "corpus-run", "check": args.check,
           "corpus": {"seed": spec.seed, "count": spec.count, "field": args.field,
                      "m": spec.m, "n": spec.n, "deg": spec.degree_bound,
                      "mode": spec.coprimality},
           "reports": reports}
    return doc, worst


_BODIES = {
    "norm": _cmd_norm, "counting": _cmd_counting, "radical": _cmd_radical,
    "sqfree": _cmd_sqfree, "hasse": _cmd_hasse, "wronskian": _cmd_wronskian,
    "independence": _cmd_independence, "verify-basic": _cmd_verify_basic,
    "verify-abc1": _cmd_verify_abc1, "verify-abc2": _cmd_verify_abc2,
    "corollaries": _cmd_corollaries, "corpus-run": _cmd_corpus_run,
}


# ---------------------------------------------------------------------------
# rendering

def _render_text(doc, out):
    def emit(prefix, value):
        if isinstance(value, dict):
            for key in sorted(value):
                emit(f"{prefix}{key}.", value[key])
        elif isinstance(value, list):
            if all(not isinstance(x, (dict, list)) for x in value):
                out.write(f"{prefix[:-1]}: {' '.join(str(x) for x in value)}\n")
            else:
                for i, x in enumerate(value):
                    emit(f"{prefix}{i}.", x)
        else:
            out.write(f"{prefix[:-1]}: {value}\n")

    for key in ("id", "command", "check", "verdict"):
        if key in doc:
            out.write(f"{key}: {doc[key]}\n")
    for key in sorted(doc):
        if key in ("id", "command", "check", "verdict"):
            continue
        emit(f"{key}.", doc[key])


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if not argv or argv[0] in ("-h", "--help"):
        parser.print_help()
        return 0 if argv else 1
    if argv[0] not in COMMANDS:
        sys.stderr.write(f"unknown command {argv[0]!r}\n")
        parser.print_usage(sys.stderr)
        return 1
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        doc, code = _BODIES[args.command](args)
    except CasError as exc:
        err = {"error": exc.code, "message": str(exc)}
        if args.format == "machine":
            sys.stdout.write(json.dumps(err, sort_keys=True, indent=2) + "\n")
        else:
            sys.stdout.write(f"error: {exc.code}\nmessage: {exc}\n")
        return 1
    if args.format == "machine":
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        _render_text(doc, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
