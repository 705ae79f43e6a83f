"""Command-line frontend: construct codes, verify gauge fixings, certify
expanders, and run error-correction simulations.

Every report is JSON (or CSV for simulation sweeps), tagged with a schema
version and echoing the full configuration including the seed, so any
output can be reproduced bit-exactly.  Exit status: 0 on success, 1 when
a verification produced a negative verdict, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import bbs, classical, expander, f2, gaugefix, hgp, pauli, sim

SCHEMA = "bbscodes/1"


def _seed_default() -> int:
    return int(os.environ.get("BBSCODES_SEED", "0"))


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(report: dict, out_file: str | None) -> None:
    text = json.dumps(_jsonable(report), indent=2)
    if out_file:
        with open(out_file, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _read_matrix(path: str) -> f2.BitMatrix:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".alist"):
        return classical.from_alist(text)
    return f2.from_text(text)


class InputError(Exception):
    pass


# ------------------------------------------------------------------ commands


def cmd_code(args) -> int:
    h = _read_matrix(args.checks)
    code = classical.code_from_checks(h)
    profile = classical.ldpc_profile(h)
    t = classical.transpose_code(code)
    report = {
        "schema": SCHEMA,
        "command": "code",
        "config": {"checks": args.checks, "distance": args.distance},
        "n": code.n,
        "k": code.k,
        "ldpc": {"b": profile.b, "c": profile.c},
        "transpose": {"n": t.nT, "k": t.kT},
    }
    if args.distance:
        report["d"] = code.distance()
        report["transpose"]["d"] = t.dT
    _emit(report, args.out_file)
    return 0


def _bbs_from_args(args) -> tuple[bbs.BbsCode, dict]:
    config: dict = {"seed": args.seed}
    if args.hamming:
        c = classical.hamming_code()
        config["construction"] = "hamming"
        if args.q_search == "exhaustive":
            q, code = bbs.minimize_weight_q(c, c)
            config["q_search"] = "exhaustive"
            config["q"] = q.to_lists()
            return code, config
        q = f2.BitMatrix.identity(c.k)
        config["q"] = q.to_lists()
        return bbs.bbs_from_codes(c, c, q), config
    if args.rep:
        c = classical.repetition_code(args.rep)
        config["construction"] = f"repetition:{args.rep}"
        return bbs.bbs_from_codes(c, c, f2.BitMatrix.identity(1)), config
    if args.matrix:
        a = _read_matrix(args.matrix)
        config["matrix"] = args.matrix
        return bbs.bbs_from_matrix(a), config
    raise InputError("one of --matrix, --hamming, --rep is required")


def cmd_bbs(args) -> int:
    code, config = _bbs_from_args(args)
    sub = code.code
    report = {
        "schema": SCHEMA,
        "command": "bbs",
        "config": config,
        "N": code.N,
        "K": code.K,
        "D": code.D,
        "D_X": code.D_X,
        "D_Z": code.D_Z,
        "A": code.A.to_lists(),
        "stabilizers": {
            "x_independent": sub.stabilizer.gx.rows,
            "z_independent": sub.stabilizer.gz.rows,
        },
        "gauge_qubits": sub.J,
    }
    if args.augmented:
        aug = bbs.abbs_from_matrix(code.A)
        report["augmented"] = {
            "N": aug.N,
            "K": aug.K,
            "D": aug.D,
            "local_generators": aug.n_g2d,
        }
    if args.emit_gauge:
        with open(args.emit_gauge, "w") as fh:
            fh.write(pauli.css_group_to_text(sub.gauge, "L"))
    if args.emit_stabilizers:
        with open(args.emit_stabilizers, "w") as fh:
            fh.write(pauli.css_group_to_text(sub.stabilizer, "L"))
    _emit(report, args.out_file)
    return 0


def cmd_hgp(args) -> int:
    config: dict = {"seed": args.seed}
    if args.toric:
        code = hgp.toric_code(args.toric)
        config["construction"] = f"toric:{args.toric}"
    elif args.rep:
        if len(args.rep) == 1:
            args.rep = args.rep * 2
        h1 = classical.repetition_checks(args.rep[0])
        h2 = classical.repetition_checks(args.rep[1])
        code = hgp.hgp_code(h1, h2)
        config["construction"] = f"repetition:{args.rep[0]}x{args.rep[1]}"
    elif args.checks1 and args.checks2:
        code = hgp.hgp_code(_read_matrix(args.checks1), _read_matrix(args.checks2))
        config["checks"] = [args.checks1, args.checks2]
    else:
        raise InputError("provide --toric N, --rep N [--rep M], or --checks1/--checks2")
    report = {
        "schema": SCHEMA,
        "command": "hgp",
        "config": config,
        "N": code.N,
        "K": code.K,
        "D": hgp.hgp_distance(code),
        "ldpc": {"beta": code.beta, "gamma": code.gamma},
        "stabilizer_ranks": {
            "x": f2.rank(code.S_X),
            "z": f2.rank(code.S_Z),
        },
    }
    if args.emit:
        for name, mat in (("sx", code.S_X), ("sz", code.S_Z)):
            path = f"{args.emit}.{name}.{'alist' if args.emit_format == 'alist' else 'txt'}"
            with open(path, "w") as fh:
                if args.emit_format == "alist":
                    fh.write(classical.to_alist(mat))
                else:
                    fh.write(f2.to_text(mat))
    _emit(report, args.out_file)
    return 0


def cmd_gaugefix(args) -> int:
    a = _read_matrix(args.matrix)
    a = bbs.strip_zero_lines(a)
    config = {"matrix": args.matrix, "seed": args.seed}
    results: dict = {}

    g_prime, g = gaugefix.bbs_fixing_of_abbs(a)
    v1 = gaugefix.is_gauge_fixing(g_prime, g)
    results["bbs_of_abbs"] = {"ok": v1.ok, "reason": v1.reason}

    h1 = _read_matrix(args.h1) if args.h1 else f2.kernel_basis(a.T)
    h2 = _read_matrix(args.h2) if args.h2 else f2.kernel_basis(a)
    try:
        qp, qpp, q = gaugefix.hgp_fixings_of_abbs(a, h1, h2)
        v2 = gaugefix.is_gauge_fixing(qp, q)
        v3 = gaugefix.is_gauge_fixing(qpp, q)
        results["hgp_rep_h2_of_abbs"] = {"ok": v2.ok, "reason": v2.reason}
        results["hgp_h1_rep_of_abbs"] = {"ok": v3.ok, "reason": v3.reason}
        results["K"] = [qp.K, qpp.K, q.K]
    except ValueError as exc:
        raise InputError(str(exc)) from None

    ok = all(v["ok"] for v in results.values() if isinstance(v, dict))
    report = {
        "schema": SCHEMA,
        "command": "gaugefix",
        "config": config,
        "verdict": ok,
        "results": results,
    }
    _emit(report, args.out_file)
    return 0 if ok else 1


def cmd_expander(args) -> int:
    config = {"seed": args.seed}
    if args.alist:
        with open(args.alist) as fh:
            graph = expander.from_alist(fh.read())
        config["alist"] = args.alist
    else:
        if not args.nodes:
            raise InputError("provide --nodes NL NR --degree B or --alist FILE")
        graph = expander.random_bipartite(args.nodes[0], args.nodes[1],
                                          args.degree, args.seed)
        config["nodes"] = args.nodes
        config["degree"] = args.degree
    cert = expander.expansion_profile(graph, args.max_subset)
    code = expander.tanner_code(graph)
    report = {
        "schema": SCHEMA,
        "command": "expander",
        "config": config,
        "certificate": json.loads(cert.to_json()),
        "tanner_code": {"n": code.n, "k": code.k},
    }
    if args.emit_alist:
        with open(args.emit_alist, "w") as fh:
            fh.write(expander.to_alist(graph))
    _emit(report, args.out_file)
    return 0


def _parse_grid(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v != ""]


def cmd_simulate(args) -> int:
    config = {
        "construction": args.construction,
        "matrix": args.matrix,
        "augmented": args.augmented,
        "q": args.q,
        "qprime": args.qprime,
        "rounds": args.rounds,
        "trials": args.trials,
        "seed": args.seed,
        "decoder": args.decoder,
    }
    if args.decoder != "flip":
        raise InputError(f"unknown decoder {args.decoder!r}")
    if args.matrix:
        a = _read_matrix(args.matrix)
    elif args.construction:
        name = args.construction
        if name == "hamming":
            c = classical.hamming_code()
            a = bbs.bbs_from_codes(c, c, f2.BitMatrix.identity(4)).A
        elif name == "hamming-opt":
            c = classical.hamming_code()
            a = bbs.minimize_weight_q(c, c)[1].A
        elif name.startswith("rep:"):
            n = int(name.split(":", 1)[1])
            a = f2.BitMatrix.ones(n, n)
        else:
            raise InputError(f"unknown construction {name!r}")
    else:
        raise InputError("provide --matrix FILE or --construction NAME")

    code = bbs.abbs_from_matrix(a) if args.augmented else bbs.bbs_from_matrix(a)
    rows = []
    for q in _parse_grid(args.q):
        for qp in _parse_grid(args.qprime):
            noise = sim.NoiseModel(q=q, qprime=qp, seed=args.seed)
            rep = sim.run_trials(code, noise, args.rounds, args.trials)
            rows.append(
                {
                    "q": q,
                    "qprime": qp,
                    "trials": rep.trials,
                    "rounds": rep.rounds,
                    "failures": rep.failures,
                    "rate": rep.rate,
                    "wilson_low": rep.wilson_low,
                    "wilson_high": rep.wilson_high,
                    "seed": args.seed,
                }
            )

    if args.out == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
        if args.out_file:
            with open(args.out_file, "w") as fh:
                fh.write(text)
        else:
            print(text, end="")
    else:
        report = {
            "schema": SCHEMA,
            "command": "simulate",
            "config": config,
            "code": {"N": code.N, "K": code.K, "D": code.D},
            "points": rows,
        }
        _emit(report, args.out_file)
    return 0


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bbscodes",
        description="2D subsystem codes from classical codes: construction, "
        "gauge-fixing verification, and decoding simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=_seed_default(),
                       help="RNG seed (default: $BBSCODES_SEED or 0)")
        p.add_argument("--out-file", help="write the report here instead of stdout")

    p = sub.add_parser("code", help="inspect a classical code from its checks")
    p.add_argument("--checks", required=True, help="dense text or .alist file")
    p.add_argument("--distance", action="store_true",
                   help="also compute the exact distance (2^k enumeration)")
    common(p)
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("bbs", help="construct a Bravyi-Bacon-Shor code")
    p.add_argument("--matrix", help="defining matrix A (dense text)")
    p.add_argument("--hamming", action="store_true",
                   help="build from two [7,4,3] Hamming codes")
    p.add_argument("--rep", type=int, help="build from two [n,1,n] repetition codes")
    p.add_argument("--q-search", choices=["none", "exhaustive"], default="none",
                   help="optimize the qubit count over the change of basis Q")
    p.add_argument("--augmented", action="store_true",
                   help="also report the 2D-local augmented code")
    p.add_argument("--emit-gauge", help="write the gauge generators to this file")
    p.add_argument("--emit-stabilizers", help="write the stabilizer generators")
    common(p)
    p.set_defaults(func=cmd_bbs)

    p = sub.add_parser("hgp", help="construct a hypergraph product code")
    p.add_argument("--checks1", help="first check matrix file")
    p.add_argument("--checks2", help="second check matrix file")
    p.add_argument("--rep", type=int, action="append",
                   help="use repetition checks of this length (repeatable)")
    p.add_argument("--toric", type=int, help="toric code from cyclic checks")
    p.add_argument("--emit", help="write S_X/S_Z matrices with this path prefix")
    p.add_argument("--emit-format", choices=["dense", "alist"], default="dense")
    common(p)
    p.set_defaults(func=cmd_hgp)

    p = sub.add_parser("gaugefix", help="verify the gauge-fixing chain for a matrix A")
    p.add_argument("--matrix", required=True, help="defining matrix A (dense text)")
    p.add_argument("--h1", help="checks spanning ker(A^T); canonical kernel if omitted")
    p.add_argument("--h2", help="checks spanning ker(A); canonical kernel if omitted")
    common(p)
    p.set_defaults(func=cmd_gaugefix)

    p = sub.add_parser("expander", help="build and certify a bipartite expander")
    p.add_argument("--nodes", type=int, nargs=2, metavar=("NL", "NR"))
    p.add_argument("--degree", type=int, default=3, help="left degree b")
    p.add_argument("--max-subset", type=int, default=2,
                   help="certify expansion for subsets up to this size")
    p.add_argument("--alist", help="read the graph from an alist file instead")
    p.add_argument("--emit-alist", help="write the graph as an alist file")
    common(p)
    p.set_defaults(func=cmd_expander)

    p = sub.add_parser("simulate", help="Monte Carlo logical error rate")
    p.add_argument("--matrix", help="defining matrix A (dense text)")
    p.add_argument("--construction",
                   help="named construction: hamming, hamming-opt, rep:N")
    p.add_argument("--augmented", action="store_true", help="simulate the aBBS code")
    p.add_argument("--q", default="0.001", help="qubit error rate(s), comma-separated")
    p.add_argument("--qprime", default="0.001",
                   help="measurement error rate(s), comma-separated")
    p.add_argument("--rounds", type=int, default=1)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--decoder", default="flip", help="classical decoder (flip)")
    p.add_argument("--out", choices=["json", "csv"], default="json")
    common(p)
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
