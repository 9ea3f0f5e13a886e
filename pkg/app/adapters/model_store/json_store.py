"""LWPT-MODEL-v1 JSON documents for models and training checkpoints.

Floats are written by json with repr() precision, so save -> load is bit-identical.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

import numpy as np

from app.adapters.files import atomic_write_text
from app.application.dto.records import Checkpoint
from app.application.ports.model_store import ModelStore
from app.domain.entities.lwpt_model import LwptModel
from app.domain.errors import FormatError, ValidationError, VersionError
from app.domain.policies.training import AdamState, EpochRecord

logger = logging.getLogger(__name__)

MODEL_MAGIC = "LWPT-MODEL-v1"


def model_to_document(model: LwptModel) -> dict[str, Any]:
    return {
        "magic": MODEL_MAGIC,
        "layers": model.layers,
        "kernel_len": model.kernel_len,
        "theta": [t.tolist() for t in model.theta],
        "beta": [b.tolist() for b in model.beta],
        "gamma": [g.tolist() for g in model.gamma],
        "metadata": model.metadata,
    }


def model_from_document(doc: Any, source: str = "<document>") -> LwptModel:
    if not isinstance(doc, dict):
        raise FormatError(f"{source}: model document must be a JSON object")
    if doc.get("magic") != MODEL_MAGIC:
        raise VersionError(f"{source}: magic {doc.get('magic')!r}, expected {MODEL_MAGIC!r}")
    try:
        model = LwptModel(
            theta=tuple(np.array(t, dtype=np.float64) for t in doc["theta"]),
            beta=tuple(np.array(b, dtype=np.float64) for b in doc["beta"]),
            gamma=tuple(np.array(g, dtype=np.float64) for g in doc["gamma"]),
            metadata=doc.get("metadata") or {},
        )
    except KeyError as e:
        raise FormatError(f"{source}: missing field {e}") from e
    except (ValidationError, ValueError, TypeError) as e:
        raise FormatError(f"{source}: {e}") from e
    if model.layers != doc.get("layers") or model.kernel_len != doc.get("kernel_len"):
        raise FormatError(f"{source}: layers/kernel_len header disagrees with the arrays")
    return model


def _read_document(path: Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: malformed or truncated model file ({e.msg})") from e
    except UnicodeDecodeError as e:
        raise FormatError(f"{path}: not a UTF-8 JSON document") from e


def save_model(model: LwptModel, path: Path) -> None:
    atomic_write_text(Path(path), json.dumps(model_to_document(model), indent=1) + "\n")


def load_model(path: Path) -> LwptModel:
    return model_from_document(_read_document(path), str(path))


class JsonModelStore(ModelStore):
    def save(self, model: LwptModel, path: Path) -> None:
        save_model(model, path)

    def load(self, path: Path) -> LwptModel:
        return load_model(path)

    def save_checkpoint(self, checkpoint: Checkpoint, path: Path) -> None:
        doc = model_to_document(checkpoint.model)
        doc["epoch"] = checkpoint.epoch
        doc["history"] = [[r.epoch, r.mean_loss, r.learning_rate] for r in checkpoint.history]
        if checkpoint.state is not None:
            doc["optimizer"] = {
                "step": checkpoint.state.step,
                "first_moment": checkpoint.state.first_moment.tolist(),
                "second_moment": checkpoint.state.second_moment.tolist(),
            }
        atomic_write_text(Path(path), json.dumps(doc, indent=1) + "\n")

    def load_checkpoint(self, path: Path) -> Checkpoint:
        doc = _read_document(path)
        model = model_from_document(doc, str(path))
        try:
            history = [EpochRecord(int(e), float(v), float(lr)) for e, v, lr in doc.get("history", [])]
            state = None
            if (opt := doc.get("optimizer")) is not None:
                state = AdamState(
                    step=int(opt["step"]),
                    first_moment=np.array(opt["first_moment"], dtype=np.float64),
                    second_moment=np.array(opt["second_moment"], dtype=np.float64),
                )
            epoch = int(doc.get("epoch", 0))
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError(f"{path}: malformed checkpoint ({e})") from e
        if state is not None and not state.matches(model):
            raise FormatError(f"{path}: optimizer state does not match the model")
        return Checkpoint(model=model, epoch=epoch, state=state, history=history)
