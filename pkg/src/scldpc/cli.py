"""Command-line front end: ``scldpc {presets,construct,partition,analyze,interleave,simulate}``."""

from __future__ import annotations

import argparse
import contextlib
import csv
import sys

import numpy as np

from . import codeconstruct as cc
from . import graphan, interleave, partition, presets, sim
from .channel import uniform_model


def _spec_from_args(args) -> cc.SCCodeSpec:
    if getattr(args, "spec", None):
        return cc.SCCodeSpec.load(args.spec)
    if getattr(args, "preset", None):
        return presets.get_preset(args.preset)
    raise ValueError("give --preset or --spec")


def _open_out(path):
    return open(path, "w") if path else contextlib.nullcontext(sys.stdout)


def cmd_presets(args) -> int:
    print("name,gamma,kappa,z,m,L,length,design_rate")
    for name, s in presets.PRESETS.items():
        rate = cc.design_rate(s.gamma, s.kappa, s.m, s.L)
        print(f"{name},{s.gamma},{s.kappa},{s.z},{s.m},{s.L},{s.length},{float(rate):.4f}")
    return 0


def cmd_construct(args) -> int:
    spec = _spec_from_args(args)
    if args.json:
        with _open_out(args.out) as fh:
            fh.write(spec.to_json() + "\n")
        return 0
    if args.protograph:
        grid = cc.sc_protograph(spec)
        with _open_out(args.out) as fh:
            for row in grid:
                fh.write(" ".join(map(str, row)) + "\n")
        return 0
    H = cc.assemble_sc(spec)
    if args.out:
        H.write_triplets(args.out)
    else:
        sys.stdout.write(f"{H.rows} {H.cols} {H.nnz}\n")
        for r, c in zip(H.edge_rows().tolist(), H.col_idx.tolist()):
            sys.stdout.write(f"{r} {c}\n")
    return 0


def cmd_partition(args) -> int:
    gamma, kappa, m = args.gamma, args.kappa, args.m
    if args.bruteforce:
        if args.balance:
            counts = [int(x) for x in args.balance.split(",")]
        else:
            if gamma % (m + 1):
                raise ValueError("give --balance when m+1 does not divide gamma")
            counts = [gamma // (m + 1)] * (m + 1)
        t, pm = partition.mo_search_bruteforce(kappa, gamma, m, counts)
    else:
        if gamma != 2 * (m + 1):
            raise ValueError("constructive MO partitioning needs gamma = 2(m+1); use --bruteforce otherwise")
        pm = partition.mo_construct(kappa, m, seed=args.seed)
        t = partition.overall_overlap(pm, m)
    if args.out:
        cc.write_grid(args.out, pm)
    for row in pm:
        print(" ".join(map(str, row)))
    print(f"t={t}")
    if gamma % 2 == 0:
        print(f"tmin={partition.tmin(kappa, gamma)}")
    return 0


def cmd_analyze(args) -> int:
    names = args.preset or []
    specs = [presets.get_preset(n) for n in names]
    if args.spec:
        specs.append(cc.SCCodeSpec.load(args.spec))
    if not specs:
        raise ValueError("give at least one --preset or --spec")
    with _open_out(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["name", "z", "cycles6", "as3"])
        for spec in specs:
            oc = graphan.analyze(spec)
            w.writerow([oc.name, oc.z, oc.cycles6, oc.as_count])
    return 0


def cmd_interleave(args) -> int:
    spec = _spec_from_args(args)
    kind = args.interleaver
    if spec.is_block:
        if kind == "sc":
            raise ValueError("the sc interleaver needs a coupled code")
        n_sec = args.sections
        imap = (interleave.block_interleaver(n_sec, spec.block_length) if kind == "block"
                else interleave.identity_map(n_sec * spec.block_length, n_sec))
        report = None
    else:
        if kind == "block":
            raise ValueError("the block interleaver needs an uncoupled block code")
        imap = interleave.sc_interleaver(spec) if kind == "sc" else interleave.identity_map(spec.length, spec.L)
        report = interleave.verify_coverage(imap, spec)
    if args.out:
        imap.write(args.out)
    print(f"mu={imap.mu}")
    print(f"sections={imap.n_sections} section_len={imap.section_len}")
    if report is not None:
        print(report.summary())
        print("pass" if report.passed else "fail")
    if args.print_permutation:
        np.savetxt(sys.stdout, imap.permutation, fmt="%d")
    return 0


def cmd_simulate(args) -> int:
    if args.config:
        cfg = sim.load_config(args.config)
    elif args.preset:
        if not args.snr:
            raise ValueError("--snr is required without --config")
        cfg = sim.SimConfig(code=presets.get_preset(args.preset), snr_db=[0.0])
    else:
        raise ValueError("give --config or --preset")
    if args.snr:
        cfg.snr_db = [float(x) for x in args.snr.split(",")]
    if args.interleaver:
        cfg.interleaver = args.interleaver
    if args.frames is not None:
        cfg.frames = args.frames
    if args.min_frame_errors is not None:
        cfg.min_frame_errors = args.min_frame_errors
    if args.seed is not None:
        cfg.master_seed = args.seed
    if args.max_iters is not None:
        cfg.max_iterations = args.max_iters
    if args.uniform:
        cfg.model = uniform_model()
    cfg = sim.SimConfig(**{k: getattr(cfg, k) for k in cfg.__dataclass_fields__})
    progress = None if args.quiet else sim.stderr_progress
    result = sim.run_campaign(cfg, threads=args.threads, progress=progress)
    if args.out:
        sim.export_csv(result, args.out)
    else:
        sim.write_csv(result, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scldpc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("presets", help="list embedded codes")
    sp.set_defaults(func=cmd_presets)

    sp = sub.add_parser("construct", help="emit a parity-check matrix as sparse triplets")
    sp.add_argument("--preset", choices=sorted(presets.PRESETS))
    sp.add_argument("--spec", help="code spec JSON file")
    sp.add_argument("--out")
    sp.add_argument("--protograph", action="store_true", help="emit the protograph grid instead")
    sp.add_argument("--json", action="store_true", help="emit the code spec as JSON instead")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("partition", help="minimum-overlap partitioning")
    sp.add_argument("--gamma", type=int, required=True)
    sp.add_argument("--kappa", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--bruteforce", action="store_true")
    sp.add_argument("--balance", help="per-column label counts, e.g. 2,2")
    sp.add_argument("--seed", type=int, help="shuffle stripes after the first")
    sp.add_argument("--out", help="write the partitioning grid here")
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("analyze", help="count 6-cycles and (3,3(gamma-2)) objects")
    sp.add_argument("--preset", action="append", choices=sorted(presets.PRESETS))
    sp.add_argument("--spec")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("interleave", help="build an interleaver and audit check coverage")
    sp.add_argument("--preset", choices=sorted(presets.PRESETS))
    sp.add_argument("--spec")
    sp.add_argument("--interleaver", choices=sim.INTERLEAVERS, default="sc")
    sp.add_argument("--sections", type=int, default=30, help="codewords per group for block codes")
    sp.add_argument("--out", help="write the permutation, one integer per line")
    sp.add_argument("--print-permutation", action="store_true")
    sp.set_defaults(func=cmd_interleave)

    sp = sub.add_parser("simulate", help="run a Monte Carlo campaign and write CSV")
    sp.add_argument("--config")
    sp.add_argument("--preset", choices=sorted(presets.PRESETS))
    sp.add_argument("--out")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--max-iters", type=int)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--min-frame-errors", type=int)
    sp.add_argument("--frames", type=int)
    sp.add_argument("--snr", help="comma-separated absolute SNRs in dB")
    sp.add_argument("--interleaver", choices=sim.INTERLEAVERS)
    sp.add_argument("--uniform", action="store_true", help="disable SNR variation")
    sp.add_argument("--quiet", action="store_true")
    sp.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
