"""argparse front-end.

Every option defaults to SUPPRESS so that only flags actually given on the
command line reach the merge and override config-file values.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from app import __version__
from app.application.dto.run_config import Method
from app.domain.value_objects.enums import FunctionClass, Modification, NoiseFamily, SignalFormat


def _optional_float(value: str) -> float | None:
    if value.strip().lower() == "none":
        return None
    try:
        return float(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a number or 'none', got {value!r}") from e


def _values(enum) -> list[str]:
    return [m.value for m in enum]


def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    parent.add_argument("--config", type=Path, help="INI run-config file")
    parent.add_argument("--log-level", help="override LWPT_LOG_LEVEL")
    return parent


def _add_output(p: argparse.ArgumentParser, what: str, with_format: bool = True) -> None:
    p.add_argument("-o", "--output", type=Path, help=what)
    if with_format:
        p.add_argument("--format", dest="signal_format", choices=_values(SignalFormat))


def _add_denoiser_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", choices=_values(Method))
    p.add_argument("--model", type=Path, help="LWPT-MODEL-v1 file (method lwpt)")
    p.add_argument("--lambda", dest="threshold", type=float, help="HT threshold (method ht)")
    p.add_argument("--layers", type=int)
    p.add_argument("--wavelet")
    p.add_argument("--delta", type=float, help="bias scale for the L-WPT model")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lwpt", description="Learnable wavelet packet transform denoising toolkit"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    parent = _common_parent()

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(
            name, help=help_text, parents=[parent], argument_default=argparse.SUPPRESS
        )

    p = add("generate", "write seeded benchmark pairs")
    p.add_argument("--class", dest="class_id", choices=_values(FunctionClass))
    p.add_argument("--count", type=int)
    p.add_argument("--sigma", type=float)
    p.add_argument("--family", choices=_values(NoiseFamily))
    p.add_argument("--length", type=int)
    p.add_argument("--modification", choices=_values(Modification))
    p.add_argument("--seed", type=int)
    _add_output(p, "dataset directory")

    p = add("train", "train an L-WPT model")
    p.add_argument("--data", type=Path, help="dataset directory")
    p.add_argument("--stream-class", dest="stream_classes", action="append",
                   choices=_values(FunctionClass), help="stream fresh pairs of this class")
    p.add_argument("--audio-manifest", type=Path)
    p.add_argument("--train-label", dest="train_labels", action="append")
    p.add_argument("--sigma", type=float)
    p.add_argument("--family", choices=_values(NoiseFamily))
    p.add_argument("--length", type=int)
    p.add_argument("--snr-db", type=_optional_float)
    p.add_argument("--target-rate", type=float)
    p.add_argument("--layers", help="layer count or 'auto'")
    p.add_argument("--layer-candidates", type=int, nargs="+")
    p.add_argument("--wavelet")
    p.add_argument("--lr", dest="learning_rate", type=float)
    p.add_argument("--batch", dest="batch_size", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--lr-drop-epochs", type=int, nargs="*")
    p.add_argument("--samples-per-epoch", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--checkpoint-every", type=int)
    _add_output(p, "model file", with_format=False)

    p = add("denoise", "denoise signal files, dataset directories or WAVs")
    p.add_argument("-i", "--input", dest="inputs", type=Path, action="append")
    _add_denoiser_options(p)
    p.add_argument("--auto-delta", action="store_true")
    p.add_argument("--leading", type=int, help="background-only leading samples")
    _add_output(p, "output directory")

    p = add("evaluate", "score a denoiser on test dataset directories")
    p.add_argument("--test", type=Path, action="append")
    p.add_argument("--trained-class", dest="trained_classes", action="append")
    p.add_argument("--fit-lambda-on", type=Path)
    p.add_argument("--per-class", action="store_true")
    p.add_argument("--sweep-layers", type=int, nargs="+", help="score once per layer count")
    p.add_argument("--sweep-sigma", dest="sweep_sigmas", type=float, nargs="+",
                   help="score on fresh pairs per noise level")
    p.add_argument("--sweep-family", dest="sweep_families", action="append",
                   choices=_values(NoiseFamily))
    p.add_argument("--sweep-class", dest="sweep_classes", action="append",
                   choices=_values(FunctionClass))
    p.add_argument("--sweep-count", type=int, help="pairs per class and noise setting")
    p.add_argument("--length", type=int)
    p.add_argument("--seed", type=int)
    _add_denoiser_options(p)
    _add_output(p, "score CSV", with_format=False)

    p = add("gainmap", "cosine-probe gain map")
    _add_denoiser_options(p)
    p.add_argument("--amplitude-count", type=int)
    p.add_argument("--amplitude-max", type=float)
    p.add_argument("--frequency-count", type=int)
    p.add_argument("--frequency-max", type=float)
    p.add_argument("--length", type=int)
    p.add_argument("--sample-rate", type=float)
    _add_output(p, "gain map CSV", with_format=False)

    p = add("mix", "mix foreground and background recordings")
    p.add_argument("--manifest", type=Path)
    p.add_argument("--count", type=int)
    p.add_argument("--label", dest="labels", action="append")
    p.add_argument("--target-length", type=int)
    p.add_argument("--target-rate", type=float)
    p.add_argument("--snr-db", type=_optional_float)
    p.add_argument("--background-gain", type=float)
    p.add_argument("--leading", type=int)
    p.add_argument("--raw-background", action="store_true")
    p.add_argument("--seed", type=int)
    _add_output(p, "dataset directory")

    p = add("folds", "split foreground classes into folds")
    p.add_argument("--manifest", type=Path)
    p.add_argument("--folds", dest="n_folds", type=int)
    p.add_argument("--seed", type=int)
    _add_output(p, "fold CSV", with_format=False)

    return parser
