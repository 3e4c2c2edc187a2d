"""``kae`` command line: match-props, sim, train, align, recognize, extend, eval, pipeline."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from kae import bundled
from kae.config import resolve_config
from kae.errors import KaeError
from kae.evaluation import GoldAlignment, accuracy, build_samples, score
from kae.extension import extend_kg
from kae.ingest import dump_json, load_alignment, load_gold, load_kg, save_alignment, save_kg
from kae.matcher import align_etypes, balance_training_set, recognize_etypes, stratified_split
from kae.ml.model import ClassifierModel, train_classifier
from kae.pipeline import StageError, run_pipeline, stage
from kae.property_matcher import match_properties
from kae.similarity import matrix_to_csv, similarity_matrix

_CONFIG_FLAGS = {
    "lambda": "lam",
    "preselect_th": "preselect_th",
    "preselect_direction": "preselect_direction",
    "prop_th": "prop_th",
    "decision_th": "decision_th",
    "seed": "seed",
    "ratio": "ratio",
    "split": "split",
    "model_kind": "model_kind",
    "embeddings": "embeddings",
    "taxonomy": "taxonomy",
    "stopwords": "stopwords",
    "jobs": "jobs",
}


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--config", help="key = value config file (flags take precedence)")
    g.add_argument("--lambda", type=float, help="constraint factor for horizontal specificity (default 0.5)")
    g.add_argument("--preselect-th", type=float, help="pre-selection threshold (default 0.3)")
    g.add_argument("--preselect-direction", choices=["below", "above"],
                   help="prune pairs whose pre-selection factor is below (default) or above the threshold")
    g.add_argument("--no-preselect", action="store_true", help="disable trivial-pair pruning")
    g.add_argument("--prop-th", type=float, help="property-match acceptance threshold (default 0.75)")
    g.add_argument("--decision-th", type=float, help="classifier decision threshold (default 0.5)")
    g.add_argument("--seed", type=int, help="random seed (default 42, or $KAE_SEED)")
    g.add_argument("--ratio", type=int, help="negatives per positive after balancing (default 10)")
    g.add_argument("--split", type=float, help="training fraction for --holdout (default 0.8)")
    g.add_argument("--model-kind", choices=["gbdt", "mlp"], help="classifier family (default gbdt)")
    g.add_argument("--embeddings", help="word2vec text file (default: bundled mini vectors)")
    g.add_argument("--taxonomy", help="child<TAB>parent taxonomy file (default: bundled)")
    g.add_argument("--stopwords", help="stopword list, one per line (default: bundled)")
    g.add_argument("--jobs", type=int, help="worker cap (default: logical cores)")
    g.add_argument("--keep-unaligned-etypes", action="store_true",
                   help="attach unaligned candidate etypes under a synthetic cand:Unaligned root")
    return p


def _config(args):
    flags = {dest: getattr(args, name) for name, dest in _CONFIG_FLAGS.items()}
    if args.no_preselect:
        flags["preselect_enabled"] = False
    if args.keep_unaligned_etypes:
        flags["keep_unaligned_etypes"] = True
    return resolve_config(flags, args.config)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _model(path, task, cfg):
    return ClassifierModel.load(path or bundled.model_path(task, cfg.model_kind))


def cmd_match_props(args, cfg):
    with stage("ingest"):
        ref, cand = load_kg(args.ref), load_kg(args.cand)
    with stage("property-matcher"):
        pm = match_properties(ref, cand, cfg.prop_th, cfg.resources, jobs=cfg.jobs)
    _write(json.dumps([m.to_dict() for m in pm], indent=2) + "\n", args.out)


def cmd_sim(args, cfg):
    with stage("ingest"):
        ref, cand = load_kg(args.ref), load_kg(args.cand)
    with stage("similarity"):
        pm = match_properties(ref, cand, cfg.prop_th, cfg.resources, jobs=cfg.jobs)
        rows = similarity_matrix(ref, cand, pm, cfg.lam, args.kind, jobs=cfg.jobs)
    _write(matrix_to_csv(rows), args.out)


def cmd_train(args, cfg):
    if not (len(args.ref) == len(args.cand) == len(args.gold)):
        raise StageError("config", "--ref, --cand and --gold must be given the same number of times")
    samples = []
    with stage("ingest"):
        corpora = [(load_kg(r), load_kg(c), load_gold(g)) for r, c, g in zip(args.ref, args.cand, args.gold)]
    with stage("dataset"):
        for ref, cand, gold in corpora:
            gold.check(ref, cand)
            samples += build_samples(ref, cand, gold, args.task, cfg, preselect=cfg.preselect_enabled)
        test = []
        if args.holdout:
            train, test = stratified_split(samples, cfg.split, cfg.seed)
        else:
            train = samples
        train = balance_training_set(train, cfg.ratio, cfg.seed)
    with stage("train"):
        X = np.array([s.features for s in train])
        y = np.array([s.label for s in train], dtype=float)
        model = train_classifier(X, y, cfg.model_kind, seed=cfg.seed)
        model.save(args.out)
    summary = {
        "task": args.task,
        "kind": cfg.model_kind,
        "train_samples": len(train),
        "train_positives": int(y.sum()),
        "train_accuracy": accuracy(model, train, cfg.decision_th),
    }
    if test:
        summary["test_samples"] = len(test)
        summary["test_accuracy"] = accuracy(model, test, cfg.decision_th)
    print(json.dumps(summary, indent=2))


def cmd_align(args, cfg):
    with stage("ingest"):
        ref, cand = load_kg(args.ref), load_kg(args.cand)
        model = _model(args.model, "etype", cfg)
    with stage("etype-matcher"):
        result = align_etypes(ref, cand, model, cfg)
    _finish_alignment(result, args)


def cmd_recognize(args, cfg):
    with stage("ingest"):
        ref, cand = load_kg(args.ref), load_kg(args.cand)
        model = _model(args.model, "entity", cfg)
    with stage("etype-recognizer"):
        result = recognize_etypes(ref, cand, model, cfg)
    _finish_alignment(result, args)


def _finish_alignment(result, args):
    if args.out:
        save_alignment(result, args.out)
    else:
        print(json.dumps(result.to_dict(), indent=2))
    if args.gold:
        with stage("eval"):
            gold = load_gold(args.gold)
            kind = result.pairs[0].kind if result.pairs else "etype"
            report = score(result, gold.of_kind(kind))
        print(report.table(), file=sys.stderr)


def cmd_extend(args, cfg):
    with stage("ingest"):
        ref, cand = load_kg(args.ref), load_kg(args.cand)
        alignment = load_alignment(args.alignment)
        recognizer = _model(args.recognizer, "entity", cfg)
    with stage("extension"):
        extended, report = extend_kg(ref, cand, alignment, recognizer, cfg)
    save_kg(extended, args.out)
    if args.report:
        dump_json(report.to_dict(), args.report)


def cmd_eval(args, cfg):
    with stage("ingest"):
        pred = load_alignment(args.pred)
        gold = load_gold(args.gold)
    with stage("eval"):
        kinds = {p.kind for p in pred.pairs} or {"etype"}
        report = score(pred, GoldAlignment(p for p in gold.pairs if p[2] in kinds))
    print(report.table())
    if args.out:
        dump_json(report.to_dict(), args.out)
    else:
        print(json.dumps(report.to_dict(), indent=2))


def cmd_pipeline(args, cfg):
    for name, path in (("reference", args.ref), ("candidate", args.cand), ("gold", args.gold)):
        if path is not None and not Path(path).is_file():
            raise StageError("ingest", f"{name} file not found: {path}")
    manifest = run_pipeline(cfg, args.ref, args.cand, args.gold, args.out_dir, args.model, args.recognizer)
    print(json.dumps({"out_dir": args.out_dir, "artifacts": sorted(manifest["artifacts"])}, indent=2))


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="kae", description="Property-based KG alignment and extension")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("match-props", cmd_match_props, "align properties of two KGs")
    p.add_argument("--ref", required=True)
    p.add_argument("--cand", required=True)
    p.add_argument("--out")

    p = add("sim", cmd_sim, "dump the Sim_H/Sim_V/Sim_I matrix as CSV")
    p.add_argument("--ref", required=True)
    p.add_argument("--cand", required=True)
    p.add_argument("--kind", choices=["etype", "entity"], default="etype")
    p.add_argument("--out")

    p = add("train", cmd_train, "train an etype-alignment or etype-recognition model")
    p.add_argument("--task", choices=["etype", "entity"], required=True)
    p.add_argument("--ref", action="append", required=True, help="repeatable; pairs with --cand/--gold")
    p.add_argument("--cand", action="append", required=True)
    p.add_argument("--gold", action="append", required=True)
    p.add_argument("--holdout", action="store_true", help="keep a stratified test split and report on it")
    p.add_argument("--out", required=True)

    for name, func, task in (("align", cmd_align, "etype"), ("recognize", cmd_recognize, "entity")):
        p = add(name, func, f"run the {task} classifier over all candidate pairs")
        p.add_argument("--ref", required=True)
        p.add_argument("--cand", required=True)
        p.add_argument("--model", help="model file (default: bundled model for --model-kind)")
        p.add_argument("--gold", help="print an evaluation table to stderr")
        p.add_argument("--out")

    p = add("extend", cmd_extend, "extend the reference KG with the candidate KG")
    p.add_argument("--ref", required=True)
    p.add_argument("--cand", required=True)
    p.add_argument("--alignment", required=True)
    p.add_argument("--recognizer", help="entity model (default: bundled)")
    p.add_argument("--out", required=True)
    p.add_argument("--report")

    p = add("eval", cmd_eval, "score an alignment against gold pairs")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--out")

    p = add("pipeline", cmd_pipeline, "run every stage and write artifacts plus a manifest")
    p.add_argument("--ref", required=True)
    p.add_argument("--cand", required=True)
    p.add_argument("--gold")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--model", help="etype model (default: bundled)")
    p.add_argument("--recognizer", help="entity model (default: bundled)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with stage("config"):
            cfg = _config(args)
        args.func(args, cfg)
    except StageError as exc:
        print(json.dumps({"stage": exc.stage, "message": str(exc)}), file=sys.stderr)
        return 2 if exc.expected else 1
    except KaeError as exc:
        print(json.dumps({"stage": exc.stage, "message": str(exc)}), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
