"""Command-line interface: synth, sample, decompose, validate, score,
oracle-check, perturb.

Exit codes: 0 success, 1 validation/scoring mismatch or operational
failure, 2 usage error. Diagnostics go to stderr; machine output goes to
files or, with --json, to stdout.
"""

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, dataset, kernels, netpbm, perturb
from .errors import MaskSeqError
from .hss import HssConfig, hss_score, run_oracle_trials
from .masks import Mask, manipulated_set
from .sampler import decompose_one_shot, sample_path_set
from .synth import SynthConfig, generate_texture, synthesize


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maskseq",
        description="Synthesize tree-structured manipulation datasets and "
                    "score mask sequences.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--quiet", action="store_true",
                        help="suppress progress diagnostics on stderr")
    parser.add_argument("--json", action="store_true",
                        help="emit machine-readable JSON on stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate composite samples with trees")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--width", type=int, default=64)
    p.add_argument("--height", type=int, default=64)
    p.add_argument("--nodes-min", type=int, default=2)
    p.add_argument("--nodes-max", type=int, default=6)
    p.add_argument("--nest-prob", type=float, default=0.5)
    p.add_argument("--area-frac-min", type=float, default=0.05)
    p.add_argument("--area-frac-max", type=float, default=0.40)
    p.add_argument("--max-depth", type=int, default=4)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("sample", help="draw ground-truth path sets from trees")
    p.add_argument("--manifest", required=True)
    p.add_argument("--paths", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--boundary-radius", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("decompose",
                       help="turn a one-shot binary mask into a two-step sequence")
    p.add_argument("--mask", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("validate", help="check a dataset manifest")
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("score", help="score a predicted sequence directory")
    p.add_argument("--pred", required=True, help="directory of step .pgm files")
    p.add_argument("--gt", required=True, help="ground-truth manifest")
    p.add_argument("--sample", default=None, help="sample id (default: first)")
    p.add_argument("--pathset", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--report", default=None, help="write the report JSON here")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("oracle-check",
                       help="compare the alignment DP against brute force")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-steps", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("perturb", help="deterministically distort a sequence")
    p.add_argument("--in", dest="pred_in", required=True)
    p.add_argument("--mode", required=True, choices=perturb.MODES)
    p.add_argument("--magnitude", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_perturb)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MaskSeqError as exc:
        print(f"maskseq: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"maskseq: error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


def cmd_synth(args) -> int:
    seeds = np.random.SeedSequence(args.seed).generate_state(
        2 * args.count, dtype=np.uint64)

    def make(i: int):
        texture = generate_texture(args.width, args.height, int(seeds[2 * i]))
        cfg = SynthConfig(seed=int(seeds[2 * i + 1]),
                          nodes_min=args.nodes_min, nodes_max=args.nodes_max,
                          nest_prob=args.nest_prob,
                          area_frac_min=args.area_frac_min,
                          area_frac_max=args.area_frac_max,
                          max_depth=args.max_depth)
        return synthesize(texture, cfg)

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(make, range(args.count)))
    else:
        results = [make(i) for i in range(args.count)]
    ds = dataset.Dataset(args.width, args.height)
    for i, sample in enumerate(results):
        ds.samples.append(dataset.SampleRecord(f"s{i:04d}", sample.image, sample.tree))
    manifest = dataset.save_dataset(ds, args.out)
    _log(args, f"wrote {args.count} samples to {manifest}")
    _emit(args, {"manifest": str(manifest), "samples": args.count})
    return 0


def cmd_sample(args) -> int:
    ds = dataset.load_dataset(args.manifest)
    streams = np.random.SeedSequence(args.seed).spawn(max(len(ds.samples), 1))
    total_masks = 0
    for sample, stream in zip(ds.samples, streams):
        rng = np.random.Generator(np.random.PCG64(stream))
        path_set = sample_path_set(sample.tree, args.paths, rng,
                                   tree_ref=sample.sample_id)
        sample.path_sets.append(dataset.PathSetRecord(args.seed, path_set))
        total_masks += sum(len(s.content_masks) for s in path_set.sequences)
    ds.boundary_radius = args.boundary_radius
    manifest = dataset.save_dataset(ds, args.out)
    _log(args, f"sampled {args.paths} path(s) per sample "
               f"({total_masks} step masks) into {manifest}")
    _emit(args, {"manifest": str(manifest), "paths": args.paths,
                 "step_masks": total_masks})
    return 0


def cmd_decompose(args) -> int:
    grid = netpbm.read_label_grid(args.mask)
    seq = decompose_one_shot(manipulated_set(Mask(grid)))
    written = dataset.save_sequence_dir(seq, args.out)
    _log(args, f"decomposed {args.mask} into {len(written)} step masks + EOS")
    _emit(args, {"out": str(Path(args.out)), "steps": len(written)})
    return 0


def cmd_validate(args) -> int:
    ds = dataset.load_dataset(args.manifest, lenient=True)
    for line in ds.violations:
        print(f"violation: {line}", file=sys.stderr)
    _log(args, f"{len(ds.samples)} samples checked, "
               f"{len(ds.violations)} violation(s)")
    _emit(args, {"samples": len(ds.samples), "violations": ds.violations})
    return 1 if ds.violations else 0


def cmd_score(args) -> int:
    pred = dataset.load_sequence_dir(args.pred)
    ds = dataset.load_dataset(args.gt)
    sample = _pick_sample(ds, args.sample)
    if not sample.path_sets:
        raise MaskSeqError(f"sample {sample.sample_id} has no path sets; "
                           "run `maskseq sample` first")
    try:
        record = sample.path_sets[args.pathset]
    except IndexError:
        raise MaskSeqError(f"sample {sample.sample_id} has no path set "
                           f"index {args.pathset}") from None
    report = hss_score(pred, record.path_set, HssConfig(alpha=args.alpha),
                       threads=args.threads)
    payload = {"sample_id": sample.sample_id, "pathset_index": args.pathset,
               **report.to_dict()}
    if args.report:
        Path(args.report).write_text(dataset.canonical_json(payload),
                                     encoding="utf-8")
        _log(args, f"report written to {args.report}")
    if args.json:
        print(dataset.canonical_json(payload), end="")
    else:
        print(f"HSS {report.score:.6f} (f1_match {report.f1_match:.6f}, "
              f"length_penalty {report.length_penalty:.6f}, "
              f"t_p {report.t_p}, t_g {report.t_g})")
    return 0


def cmd_oracle_check(args) -> int:
    mismatches, trials = run_oracle_trials(args.trials, args.max_steps, args.seed)
    for line in mismatches:
        print(f"mismatch: {line}", file=sys.stderr)
    _log(args, f"{trials} trials, {len(mismatches)} mismatch(es), "
               f"kernel backend: {kernels.backend_name()}")
    _emit(args, {"trials": trials, "mismatches": len(mismatches)})
    return 1 if mismatches else 0


def cmd_perturb(args) -> int:
    seq = dataset.load_sequence_dir(args.pred_in)
    out_seq = perturb.perturb_sequence(seq, args.mode, args.magnitude, args.seed)
    written = dataset.save_sequence_dir(out_seq, args.out)
    _log(args, f"{args.mode} magnitude {args.magnitude}: "
               f"{len(seq.content_masks)} -> {len(written)} step masks")
    _emit(args, {"out": str(Path(args.out)), "steps": len(written)})
    return 0


def _pick_sample(ds, sample_id):
    if not ds.samples:
        raise MaskSeqError("dataset contains no samples")
    if sample_id is None:
        return ds.samples[0]
    for sample in ds.samples:
        if sample.sample_id == sample_id:
            return sample
    raise MaskSeqError(f"no sample with id {sample_id!r}")


def _log(args, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


def _emit(args, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
