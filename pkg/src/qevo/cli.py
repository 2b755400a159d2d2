"""Command-line front end.

Subcommands: run (one seeded optimization), refspace (build and export a
reference space), batch (seed sweep with aggregate success statistics),
pca (project sampled molecules onto reference-space components), export
(top-N candidate CSV for downstream tools), validate-config.  Errors are
reported as one JSON object on stderr with a nonzero exit code (2 for
configuration problems, 1 for runtime failures).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from .chem.scores import LossWeights, get_scorer
from .codec import get_vocabulary
from .config import load_run_config
from .driver import make_score_cache, resolve_p0, run_qevo, \
    success_against_reference
from .errors import ConfigError, QevoError
from .pca import fit_components, project_molecules
from .presets import PRESET_NAMES, get_preset
from .refspace import build_reference_space
from .decoder import decode_molecule


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def _load_config(args) -> "RunConfig":
    if args.config:
        cfg = load_run_config(args.config)
    elif args.preset:
        cfg = get_preset(args.preset, seed=args.seed or 0)
    else:
        raise ConfigError("provide --preset or --config")
    updates = {}
    if args.seed is not None:
        updates["seed"] = args.seed
    if getattr(args, "init_mode", None):
        updates["init_mode"] = args.init_mode
    if updates:
        cfg = dataclasses.replace(cfg, **updates)
    cfg.validate()
    return cfg


def _scorer_for(name: str, alpha: float, beta: float, gamma: float):
    if name == "plogp":
        return get_scorer("plogp"), "plogp"
    weights = LossWeights(alpha, beta, gamma)
    return (get_scorer("drug", weights=weights),
            f"drug[a={alpha},b={beta},g={gamma}]")


def cmd_run(args) -> int:
    cfg = _load_config(args)
    out_dir = args.out or "."
    stem = f"run_{cfg.preset or 'custom'}_seed{cfg.seed}"
    try:
        record = run_qevo(cfg, cache_dir=args.cache_dir)
    except Exception as err:
        partial = getattr(err, "partial_record", None)
        if partial is not None:
            partial.write(out_dir, stem + "_partial")
        raise
    rows_path, summary_path = record.write(out_dir, stem)
    print(json.dumps({"rows": rows_path, "summary": summary_path,
                      "best": record.best_canonical,
                      "best_score": record.best_score,
                      "unique_molecules": record.cumulative_unique},
                     sort_keys=True))
    return 0


def _run_one_seed(payload):
    cfg, seed, out_dir, cache_dir = payload
    run_cfg = dataclasses.replace(cfg, seed=seed)
    _, reference = resolve_p0(run_cfg, cache_dir)
    record = run_qevo(run_cfg, reference=reference)
    stem = f"run_{cfg.preset or 'custom'}_seed{seed}"
    record.write(out_dir, stem)
    hit = (success_against_reference(record, reference)
           if reference is not None else None)
    return {"seed": seed, "best": record.best_canonical,
            "best_score": record.best_score,
            "unique_molecules": record.cumulative_unique,
            "top10": hit}


def cmd_batch(args) -> int:
    cfg = _load_config(args)
    lo, _, hi = args.seeds.partition("..")
    seeds = list(range(int(lo), int(hi) + 1)) if hi else [int(lo)]
    out_dir = args.out or "."
    _, reference = resolve_p0(cfg, args.cache_dir)
    workers = int(os.environ.get("QEVO_WORKERS", "1"))
    if workers > 1:
        # Runs are fully isolated; workers rebuild their in-memory caches
        # from the shared disk cache, so results match the sequential path.
        import multiprocessing
        with multiprocessing.Pool(workers) as pool:
            results = pool.map(
                _run_one_seed,
                [(cfg, s, out_dir, args.cache_dir) for s in seeds])
    else:
        cache = make_score_cache(cfg)
        results = []
        for seed in seeds:
            run_cfg = dataclasses.replace(cfg, seed=seed)
            record = run_qevo(run_cfg, reference=reference, score_cache=cache)
            stem = f"run_{cfg.preset or 'custom'}_seed{seed}"
            record.write(out_dir, stem)
            hit = (success_against_reference(record, reference)
                   if reference is not None else None)
            results.append({"seed": seed, "best": record.best_canonical,
                            "best_score": record.best_score,
                            "unique_molecules": record.cumulative_unique,
                            "top10": hit})
    summary = {
        "preset": cfg.preset, "seeds": seeds,
        "success_rate": (sum(1 for r in results if r["top10"]) / len(results)
                         if reference is not None else None),
        "median_unique": sorted(r["unique_molecules"] for r in results)[
            len(results) // 2],
        "runs": results,
    }
    path = os.path.join(out_dir, f"batch_{cfg.preset or 'custom'}.json")
    os.makedirs(out_dir, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, sort_keys=True, indent=1)
        fh.write("\n")
    print(json.dumps({"batch": path, "success_rate": summary["success_rate"],
                      "median_unique": summary["median_unique"]},
                     sort_keys=True))
    return 0


def cmd_refspace(args) -> int:
    vocab = get_vocabulary(args.vocab)
    scorer, scorer_id = _scorer_for(args.scorer, args.alpha, args.beta,
                                    args.gamma)
    ref = build_reference_space(vocab, args.k, scorer, scorer_id,
                                cache_dir=args.cache_dir)
    out = args.out or f"refspace_{args.vocab}_k{args.k}_{args.scorer}.csv"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("rank,canonical,score,multiplicity\n")
        for rank, (canon, score) in enumerate(ref.top_k(args.top), 1):
            mult = ref.entries[canon][1]
            fh.write(f"{rank},{canon},{score!r},{mult}\n")
    print(json.dumps({
        "csv": out,
        "unique_molecules": ref.unique_molecule_count,
        "published_unique_count": ref.published_unique_count,
        "total_combinations": ref.total_combinations,
        "best": ref.best()[0],
    }, sort_keys=True))
    return 0


def cmd_pca(args) -> int:
    vocab = get_vocabulary(args.vocab)
    scorer, scorer_id = _scorer_for(args.scorer, args.alpha, args.beta,
                                    args.gamma)
    ref = build_reference_space(vocab, args.k, scorer, scorer_id,
                                cache_dir=args.cache_dir)
    from .chem.fingerprint import fingerprint
    n = vocab.bits_per_token
    graphs = {}

    def graph_of(canon):
        if canon not in graphs:
            rep = ref.representatives[canon]
            tokens = [vocab.token_of(format(d, f"0{n}b")) for d in rep]
            graphs[canon] = decode_molecule(tokens)
        return graphs[canon]

    fps = [fingerprint(graph_of(c)) for c in sorted(ref.entries)]
    model = fit_components(fps)
    molecules = {}
    total_iters = 0
    with open(args.molecules, encoding="utf-8") as fh:
        header = fh.readline()
        for line in fh:
            canon, score, first = line.rstrip("\n").split(",")
            if canon not in ref.entries:
                continue
            molecules[canon] = (float(score), int(first))
            total_iters = max(total_iters, int(first) + 1)
    rows = project_molecules(model, molecules, graph_of, total_iters)
    out = args.out or "pca_projection.csv"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("canonical,pc1,pc2,loss,window\n")
        for row in rows:
            fh.write(f"{row['canonical']},{row['pc1']!r},{row['pc2']!r},"
                     f"{row['loss']!r},{row['window']}\n")
    print(json.dumps({"csv": out, "molecules": len(rows),
                      "explained": list(model.explained)}, sort_keys=True))
    return 0


def cmd_export(args) -> int:
    rows = []
    with open(args.molecules, encoding="utf-8") as fh:
        fh.readline()
        for line in fh:
            canon, score, first = line.rstrip("\n").split(",")
            rows.append((float(score), canon, int(first)))
    rows.sort(key=lambda t: (t[0], t[1]))
    out = args.out or "candidates.csv"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("rank,canonical,score\n")
        for rank, (score, canon, _) in enumerate(rows[:args.top], 1):
            fh.write(f"{rank},{canon},{score!r}\n")
    print(json.dumps({"csv": out, "rows": min(args.top, len(rows))},
                     sort_keys=True))
    return 0


def cmd_validate_config(args) -> int:
    cfg = load_run_config(args.config)
    print(json.dumps(dataclasses.asdict(cfg), sort_keys=True, default=str))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qevo",
        description="Sample-based variational molecule optimization")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--preset", metavar="|".join(PRESET_NAMES[:2]) + "|...")
        p.add_argument("--config")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--init-mode", dest="init_mode",
                       choices=("uniform", "random", "biased"))
        p.add_argument("--out")
        p.add_argument("--cache-dir", default=os.environ.get("QEVO_CACHE_DIR"))

    p_run = sub.add_parser("run", help="execute one seeded run")
    add_common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_batch = sub.add_parser("batch", help="run a seed sweep")
    add_common(p_batch)
    p_batch.add_argument("--seeds", required=True,
                         help="range like 1..30 or a single seed")
    p_batch.set_defaults(func=cmd_batch)

    def add_space(p):
        p.add_argument("--vocab", default="table_2_3")
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--scorer", choices=("plogp", "drug"), default="plogp")
        p.add_argument("--alpha", type=float, default=2.0)
        p.add_argument("--beta", type=float, default=1.0)
        p.add_argument("--gamma", type=float, default=0.0)
        p.add_argument("--out")
        p.add_argument("--cache-dir", default=os.environ.get("QEVO_CACHE_DIR"))

    p_ref = sub.add_parser("refspace", help="enumerate a reference space")
    add_space(p_ref)
    p_ref.add_argument("--top", type=int, default=100)
    p_ref.set_defaults(func=cmd_refspace)

    p_pca = sub.add_parser("pca", help="project run molecules onto "
                                       "reference-space components")
    add_space(p_pca)
    p_pca.add_argument("--molecules", required=True,
                       help="a run *_molecules.csv file")
    p_pca.set_defaults(func=cmd_pca)

    p_exp = sub.add_parser("export", help="export top-N candidates")
    p_exp.add_argument("--molecules", required=True)
    p_exp.add_argument("--top", type=int, default=10000)
    p_exp.add_argument("--out")
    p_exp.set_defaults(func=cmd_export)

    p_val = sub.add_parser("validate-config", help="check a config file")
    p_val.add_argument("--config", required=True)
    p_val.set_defaults(func=cmd_validate_config)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, KeyError) as err:
        return _fail(2, "config", str(err))
    except QevoError as err:
        return _fail(1, type(err).__name__, str(err))
    except OSError as err:
        return _fail(1, "io", str(err))


if __name__ == "__main__":
    sys.exit(main())
