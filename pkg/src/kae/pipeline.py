"""End-to-end run: parse, formalize, match, score, align, extend, evaluate."""

from __future__ import annotations

import hashlib
import json
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path

from kae import bundled
from kae.config import RunConfig
from kae.errors import KaeError
from kae.evaluation import EvalReport, GoldAlignment, score, score_pairs
from kae.extension import extend_kg
from kae.ingest import dump_json, load_gold, load_kg, save_alignment, save_kg
from kae.matcher import align_etypes
from kae.ml.model import ClassifierModel
from kae.model import build_context
from kae.property_matcher import match_properties
from kae.similarity import matrix_to_csv, similarity_matrix


class StageError(KaeError):
    def __init__(self, stage: str, message: str, expected: bool = True):
        super().__init__(message)
        self.stage = stage
        # False for bugs/unexpected failures (non-KaeError causes)
        self.expected = expected


@contextmanager
def stage(name: str):
    try:
        yield
    except StageError:
        raise
    except KaeError as exc:
        raise StageError(name, str(exc)) from exc
    except (OSError, ValueError) as exc:
        raise StageError(name, str(exc)) from exc
    except Exception as exc:
        raise StageError(name, f"{type(exc).__name__}: {exc}", expected=False) from exc


def sha256_file(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def run_pipeline(
    cfg: RunConfig,
    ref_path: str | Path,
    cand_path: str | Path,
    gold_path: str | Path | None,
    out_dir: str | Path,
    model_path: str | Path | None = None,
    recognizer_path: str | Path | None = None,
) -> dict:
    """Write every intermediate artifact to ``out_dir`` and return the manifest."""
    out = Path(out_dir)
    model_path = model_path or bundled.model_path("etype", cfg.model_kind)
    recognizer_path = recognizer_path or bundled.model_path("entity", cfg.model_kind)
    with stage("ingest"):
        ref_kg = load_kg(ref_path)
        cand_kg = load_kg(cand_path)
        gold = load_gold(gold_path) if gold_path else None
        if gold is not None:
            gold.check(ref_kg, cand_kg)
        model = ClassifierModel.load(model_path)
        recognizer = ClassifierModel.load(recognizer_path)
        out.mkdir(parents=True, exist_ok=True)
    with stage("formalize"):
        build_context(ref_kg, bool(ref_kg.entities))
        build_context(cand_kg, bool(cand_kg.entities))

    artifacts: dict[str, Path] = {}

    def emit(name: str) -> Path:
        artifacts[name] = out / name
        return out / name

    dump_json(cfg.to_dict(), emit("config.json"))
    with stage("property-matcher"):
        pm = match_properties(ref_kg, cand_kg, cfg.prop_th, cfg.resources, jobs=cfg.jobs)
        dump_json([m.to_dict() for m in pm], emit("property_matches.json"))
    with stage("similarity"):
        rows = similarity_matrix(ref_kg, cand_kg, pm, cfg.lam, "etype", jobs=cfg.jobs)
        emit("similarity_etype.csv").write_text(matrix_to_csv(rows), encoding="utf-8")
    with stage("etype-matcher"):
        alignment = align_etypes(ref_kg, cand_kg, model, cfg, pm)
        save_alignment(alignment, emit("alignment.json"))
    with stage("extension"):
        extended, report = extend_kg(ref_kg, cand_kg, alignment, recognizer, cfg, pm)
        save_kg(extended, emit("extended_kg.json"))
        dump_json(report.to_dict(), emit("extension_report.json"))
    if gold is not None:
        with stage("eval"):
            typed = {(r, e, "entity") for e, r in report.merged_entities + report.recognized_entities}
            reports: dict[str, EvalReport] = {
                "etype": score(alignment, gold.of_kind("etype")),
                "entity": score_pairs(typed, gold.of_kind("entity").pairs),
            }
            dump_json({k: v.to_dict() for k, v in reports.items()}, emit("eval_report.json"))

    manifest = {
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "config": cfg.to_dict(),
        "inputs": {
            name: {"path": str(p), "sha256": sha256_file(p)}
            for name, p in [
                ("reference", ref_path), ("candidate", cand_path), ("gold", gold_path),
                ("model", model_path), ("recognizer", recognizer_path),
            ]
            if p is not None
        },
        "artifacts": {name: sha256_file(path) for name, path in sorted(artifacts.items())},
    }
    dump_json(manifest, out / "manifest.json")
    return manifest


def lambda_sweep(
    cfg: RunConfig,
    ref_path,
    cand_path,
    gold_path,
    out_dir,
    lambdas=(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9),
    **models,
) -> dict[float, dict]:
    """One pipeline run per constraint factor; returns the evaluation section of each."""
    results = {}
    for lam in lambdas:
        run_dir = Path(out_dir) / f"lambda_{lam:.1f}"
        run_pipeline(cfg.replace(lam=lam), ref_path, cand_path, gold_path, run_dir, **models)
        results[lam] = json.loads((run_dir / "eval_report.json").read_text(encoding="utf-8"))
    return results
