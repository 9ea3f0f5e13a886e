"""TrainModelUseCase — epoch loop with periodic checkpoints and exact resume."""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Any

from app.application.dto.records import Checkpoint
from app.application.ports.model_store import ModelStore
from app.application.ports.pair_source import PairSource
from app.domain.entities.lwpt_model import LwptModel
from app.domain.errors import TrainingDivergedError
from app.domain.policies.lwpt import param_count
from app.domain.policies.training import AdamState, EpochRecord, TrainResult, train
from app.domain.value_objects.specs import TrainConfig

logger = logging.getLogger(__name__)

_EPOCH_SUFFIX = re.compile(r"\.epoch(\d+)\.json$")


def checkpoint_path(output: Path, epoch: int) -> Path:
    """<stem>.epoch0050.json beside the model file."""
    return output.with_name(f"{output.stem}.epoch{epoch:04d}.json")


def latest_checkpoint(output: Path) -> Path | None:
    found = []
    for p in output.parent.glob(f"{output.stem}.epoch*.json"):
        m = _EPOCH_SUFFIX.search(p.name)
        if m:
            found.append((int(m.group(1)), p))
    return max(found)[1] if found else None


class TrainModelUseCase:
    """Trains from an initial model and saves the result (with metadata) to *output*."""

    def __init__(self, models: ModelStore):
        self._models = models

    def execute(
        self,
        initial: LwptModel,
        source: PairSource,
        cfg: TrainConfig,
        output: Path,
        *,
        checkpoint_every: int | None = None,
        resume: bool = False,
        metadata: dict[str, Any] | None = None,
    ) -> TrainResult:
        model, start, state, history = initial, 0, None, []
        if resume:
            found = latest_checkpoint(output)
            if found is None:
                logger.warning("No checkpoint beside %s, starting from scratch", output)
            else:
                ckpt = self._models.load_checkpoint(found)
                model, start, state, history = ckpt.model, ckpt.epoch, ckpt.state, ckpt.history
                logger.info("Resuming from %s (epoch %d)", found.name, start)

        def _checkpoint(
            epoch: int, current: LwptModel, adam: AdamState, records: list[EpochRecord]
        ) -> None:
            if checkpoint_every and epoch % checkpoint_every == 0 and epoch < cfg.epochs:
                path = checkpoint_path(output, epoch)
                self._models.save_checkpoint(Checkpoint(current, epoch, adam, list(records)), path)
                logger.info("Checkpoint written: %s", path.name)

        try:
            result = train(
                model,
                source.epoch_batches,
                cfg,
                start_epoch=start,
                state=state,
                history=history,
                on_epoch=_checkpoint,
            )
        except TrainingDivergedError as e:
            logger.exception("Training diverged; keeping the last finite model")
            epoch = e.history[-1].epoch if e.history else start
            self._models.save_checkpoint(
                Checkpoint(e.model, epoch, None, list(e.history)),
                output.with_name(f"{output.stem}.diverged.json"),
            )
            raise

        final = result.model.with_metadata(
            **(metadata or {}),
            param_count=param_count(result.model),
            epochs=cfg.epochs,
        )
        self._models.save(final, output)
        logger.info("Model saved to %s (%d parameters)", output, param_count(final))
        return TrainResult(model=final, history=result.history, state=result.state)
