"""Command-line front end.

Exit codes: 0 success, 1 error, 2 decrypt flag = 0 or verify ok = 0,
3 infeasible parameter plan.  Every randomized subcommand requires an
explicit seed so runs are reproducible.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bitvec import BitString
from .bounds import InfeasiblePlanError, best_eta, eta_details, plan_params, robustness_bound
from .games import (epr_honest_adversary, estimate_gap, make_strategy,
                    product_zero_adversary, run_epr_game_oracle)
from .scheme import (FormatError, SchemeParams, decrypt, delete,
                     deserialize_certificate, deserialize_ciphertext,
                     deserialize_keys, encrypt, keygen, serialize_certificate,
                     serialize_ciphertext, serialize_keys, verify)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECTED = 2
EXIT_INFEASIBLE = 3


def _load_params(spec: str) -> SchemeParams:
    path = Path(spec)
    if path.exists():
        doc = json.loads(path.read_text())
        if "params" in doc:
            doc = doc["params"]
    else:
        doc = json.loads(spec)
    return SchemeParams.from_dict(doc)


def _emit(doc: dict, out: str | None):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_keygen(args) -> int:
    params = _load_params(args.params)
    rng = np.random.default_rng(args.seed)
    aux, key = keygen(params, rng)
    Path(args.out).write_text(serialize_keys(params, aux, key))
    return EXIT_OK


def cmd_encrypt(args) -> int:
    params, aux, key = deserialize_keys(Path(args.key).read_text())
    msg_bytes = Path(args.infile).read_bytes()
    if len(msg_bytes) != (params.n + 7) // 8:
        raise FormatError(
            f"message file must hold exactly {params.n} bits "
            f"({(params.n + 7) // 8} bytes)")
    msg = BitString.from_bytes(msg_bytes, params.n)
    ct = encrypt(msg, aux, key, params)
    Path(args.out).write_bytes(serialize_ciphertext(params, ct))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    params, _aux, key = deserialize_keys(Path(args.key).read_text())
    ct_params, ct = deserialize_ciphertext(Path(args.infile).read_bytes())
    if ct_params != params:
        raise FormatError("ciphertext parameters do not match the key file")
    rng = np.random.default_rng(args.seed)
    out = decrypt(key, ct, params, rng)
    _emit({"plaintext_hex": out.plaintext.to_hex(), "flag": out.flag}, args.out)
    return EXIT_OK if out.flag else EXIT_REJECTED


def cmd_delete(args) -> int:
    params, ct = deserialize_ciphertext(Path(args.infile).read_bytes())
    rng = np.random.default_rng(args.seed)
    cert = delete(ct, params, rng)
    Path(args.out).write_bytes(serialize_certificate(cert))
    return EXIT_OK


def cmd_verify(args) -> int:
    params, aux, key = deserialize_keys(Path(args.key).read_text())
    cert = deserialize_certificate(Path(args.infile).read_bytes())
    ok = verify(aux, key, cert, params)
    _emit({"ok": ok}, args.out)
    return EXIT_OK if ok else EXIT_REJECTED


def cmd_params(args) -> int:
    if args.action == "plan":
        try:
            plan = plan_params(args.n, args.delta, args.target_eta)
        except InfeasiblePlanError as exc:
            sys.stderr.write(f"infeasible plan: {exc}\n")
            return EXIT_INFEASIBLE
        detail = eta_details(plan.params.s, plan.params.k, plan.params.m,
                             plan.params.n, plan.params.delta, plan.nu)
        doc = {"eta": detail["eta"], "g": detail["g"],
               "epsilon": detail["epsilon"], "nu_star": plan.nu,
               "robustness": robustness_bound(plan.params.tau),
               "params": plan.params.as_dict()}
        _emit(doc, args.out)
        return EXIT_OK
    params = _load_params(args.params)
    eta_val, nu = best_eta(params.s, params.k, params.n, params.delta)
    detail = eta_details(params.s, params.k, params.m, params.n,
                         params.delta, nu)
    doc = {"eta": eta_val, "g": detail["g"], "epsilon": detail["epsilon"],
           "nu_star": nu, "robustness": robustness_bound(params.tau),
           "params": params.as_dict()}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    params = _load_params(args.params)
    reports = []
    for spec in args.strategy:
        strategy = make_strategy(spec)
        reports.append(estimate_gap(params, strategy, args.trials,
                                    args.seed, workers=args.workers))
    doc = {"seed": args.seed, "reports": [r.as_dict() for r in reports]}
    _emit(doc, args.out)
    if args.report_dir:
        from .report import write_gap_report
        write_gap_report(reports, args.report_dir)
    return EXIT_OK


def cmd_oracle(args) -> int:
    doc = json.loads(Path(args.infile).read_text())
    params = SchemeParams.from_dict(doc["params"])
    kind = doc.get("adversary", "epr-honest")
    if kind == "epr-honest":
        adversary = epr_honest_adversary(params.m)
    elif kind == "product-zero":
        adversary = product_zero_adversary(params.m)
    else:
        raise FormatError(f"unknown oracle adversary {kind!r}")
    joint = run_epr_game_oracle(params, adversary)
    out_doc = {"adversary": kind,
               "joint": {f"ok={ok},b'={bp}": p
                         for (ok, bp), p in sorted(joint.items())},
               "p_success": joint[(1, 1)]}
    _emit(out_doc, args.out)
    if args.report_dir:
        from .report import write_oracle_report
        write_oracle_report(joint, args.report_dir)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="certdel",
        description="Certified-deletion encryption simulator and analyzer")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("keygen", cmd_keygen, help="generate a key file")
    p.add_argument("--params", required=True,
                   help="params JSON file or inline JSON")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)

    p = add("encrypt", cmd_encrypt, help="encrypt a message file")
    p.add_argument("--key", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)

    p = add("decrypt", cmd_decrypt, help="decrypt a ciphertext file")
    p.add_argument("--key", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)

    p = add("delete", cmd_delete, help="measure a ciphertext into a certificate")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)

    p = add("verify", cmd_verify, help="check a deletion certificate")
    p.add_argument("--key", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)

    p = add("params", cmd_params, help="plan or evaluate security parameters")
    p.add_argument("action", choices=["plan", "eval"])
    p.add_argument("--params", help="params for eval")
    p.add_argument("--n", type=int, help="plaintext bits for plan")
    p.add_argument("--delta", type=float, help="threshold rate for plan")
    p.add_argument("--target-eta", type=float, help="advantage target for plan")
    p.add_argument("--out", default=None)

    p = add("simulate", cmd_simulate, help="Monte-Carlo deletion game")
    p.add_argument("--params", required=True)
    p.add_argument("--strategy", action="append", required=True,
                   help="strategy spec, repeatable (e.g. honest, partial:f=0.3)")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)
    p.add_argument("--report-dir", default=None,
                   help="also write CSV and PNG report files here")

    p = add("oracle", cmd_oracle, help="exact entanglement-based game oracle")
    p.add_argument("--in", dest="infile", required=True,
                   help="instance JSON: {params: {...}, adversary: name}")
    p.add_argument("--out", default=None)
    p.add_argument("--report-dir", default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "params" and args.action == "plan":
        missing = [f for f in ("n", "delta", "target_eta")
                   if getattr(args, f) is None]
        if missing:
            parser.error(f"params plan requires --{', --'.join(missing)}")
    if args.command == "params" and args.action == "eval" and not args.params:
        parser.error("params eval requires --params")
    try:
        return args.fn(args)
    except (FormatError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
