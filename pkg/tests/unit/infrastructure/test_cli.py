"""Tests for the command-line front-end: config merge, exit codes and artifacts."""

import json
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from app.adapters.csv_loader.loader import read_csv
from app.adapters.model_store.json_store import JsonModelStore
from app.adapters.signal_io.codecs import FileSignalStore
from app.domain.policies.filter_bank import standard_kernel
from app.domain.policies.lwpt import init_wpt
from app.infrastructure.cli.commands import resolve_config
from app.infrastructure.cli.config_file import canonical_key, merge_config
from app.infrastructure.cli.parser import build_parser
from app.infrastructure.cli.provenance import PROVENANCE_NAME
from app.main import EXIT_IO, EXIT_OK, EXIT_VALIDATION, main


def _generate(out: Path, *extra: str) -> int:
    return main(
        ["generate", "--class", "block", "--count", "3", "--sigma", "0.2", "--length", "64",
         "--seed", "7", "-o", str(out), *extra]
    )


def _snapshot(directory: Path) -> dict[str, bytes]:
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir()) if p.is_file()}


# ─── Config merge ────────────────────────────────────────────────────


def test_canonical_key_aliases():
    assert canonical_key("lambda") == "threshold"
    assert canonical_key("Stream-Class") == "stream_classes"
    assert canonical_key("samples-per-epoch") == "samples_per_epoch"


def test_merge_config_precedence(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text(
        "[common]\nseed = 1\nlength = 128\n\n[generate]\nseed = 2\ncount = 4\nclass = bumps\n",
        encoding="utf-8",
    )
    merged = merge_config("generate", {"count": 9}, cfg, {"length": 1024, "sigma": 0.1})
    assert merged["seed"] == "2"
    assert merged["length"] == "128"
    assert merged["count"] == 9
    assert merged["class_id"] == "bumps"
    assert merged["sigma"] == 0.1


def test_merge_config_lists_and_none(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text(
        "[train]\nlr-drop-epochs = 10, 20\nstream-class = block,bumps\nsnr_db = none\n",
        encoding="utf-8",
    )
    merged = merge_config("train", {}, cfg)
    assert merged["lr_drop_epochs"] == ["10", "20"]
    assert merged["stream_classes"] == ["block", "bumps"]
    assert merged["snr_db"] is None


def test_merge_config_ignores_other_sections(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[train]\nepochs = 3\n", encoding="utf-8")
    assert "epochs" not in merge_config("generate", {}, cfg)


def test_resolve_config_validates_strings_from_file(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text(
        "[generate]\nclass = doppler\ncount = 2\nsigma = 0.5\nseed = 11\nlength = 256\n",
        encoding="utf-8",
    )
    resolved = resolve_config("generate", {"output": tmp_path / "out"}, cfg)
    assert resolved.count == 2
    assert resolved.length == 256
    assert resolved.class_id.value == "doppler"


def test_train_run_config_defaults(tmp_path):
    resolved = resolve_config(
        "train", {"stream_classes": ["block"], "seed": 1, "output": tmp_path / "m.json"}
    )
    assert resolved.learning_rate == 0.0005
    assert resolved.batch_size == 8
    assert resolved.epochs == 500
    assert resolved.lr_drop_epochs == [350, 450]


def test_parser_suppresses_missing_flags():
    args = vars(build_parser().parse_args(["folds", "--folds", "4"]))
    assert args == {"command": "folds", "n_folds": 4}


def test_parser_reads_auto_layers_and_none_snr():
    args = vars(build_parser().parse_args(["train", "--layers", "auto", "--snr-db", "none"]))
    assert args["layers"] == "auto"
    assert args["snr_db"] is None


# ─── Exit codes ──────────────────────────────────────────────────────


def test_negative_sigma_is_a_validation_error(tmp_path):
    assert _generate(tmp_path / "d", "--sigma", "-1") == EXIT_VALIDATION
    assert not (tmp_path / "d").exists()


def test_length_too_short_for_the_class_is_a_validation_error(tmp_path):
    assert _generate(tmp_path / "d", "--length", "8") == EXIT_VALIDATION


def test_missing_output_is_a_validation_error():
    code = main(["generate", "--class", "block", "--count", "1", "--sigma", "0", "--seed", "1"])
    assert code == EXIT_VALIDATION


def test_unknown_choice_exits_from_argparse():
    with pytest.raises(SystemExit):
        main(["generate", "--class", "sawtooth"])


def test_bad_model_file_is_an_io_error(tmp_path):
    _generate(tmp_path / "d")
    bad = tmp_path / "m.json"
    bad.write_text("{not json", encoding="utf-8")
    code = main(
        ["denoise", "-i", str(tmp_path / "d"), "--model", str(bad), "-o", str(tmp_path / "o")]
    )
    assert code == EXIT_IO


def test_missing_model_file_is_a_validation_error(tmp_path):
    _generate(tmp_path / "d")
    code = main(
        ["denoise", "-i", str(tmp_path / "d"), "--model", str(tmp_path / "nope.json"),
         "-o", str(tmp_path / "o")]
    )
    assert code == EXIT_VALIDATION


# ─── generate ────────────────────────────────────────────────────────


def test_generate_writes_pairs_manifest_and_provenance(tmp_path):
    out = tmp_path / "d"
    assert _generate(out) == EXIT_OK
    names = {p.name for p in out.iterdir()}
    assert {f"block_{k:05d}_{role}.csv" for k in range(3) for role in ("clean", "noisy")} < names
    assert [r["id"] for r in read_csv(out / "manifest.csv")] == [f"block_{k:05d}" for k in range(3)]

    doc = json.loads((out / PROVENANCE_NAME).read_text(encoding="utf-8"))
    assert doc["command"] == "generate"
    assert doc["config"]["seed"] == 7
    assert doc["config"]["sigma"] == 0.2
    assert "version" in doc


def test_generate_twice_is_byte_identical(tmp_path):
    out = tmp_path / "d"
    _generate(out)
    first = _snapshot(out)
    _generate(out)
    assert _snapshot(out) == first


def test_generate_binary_format(tmp_path):
    out = tmp_path / "d"
    assert _generate(out, "--format", "bin") == EXIT_OK
    assert (out / "block_00000_noisy.bin").exists()


# ─── train ───────────────────────────────────────────────────────────


def test_train_writes_model_history_and_provenance(tmp_path):
    model = tmp_path / "run" / "model.json"
    code = main(
        ["train", "--stream-class", "block", "--length", "64", "--layers", "5", "--wavelet", "db4",
         "--epochs", "1", "--samples-per-epoch", "8", "--lr-drop-epochs", "--seed", "3",
         "-o", str(model)]
    )
    assert code == EXIT_OK
    loaded = JsonModelStore().load(model)
    assert loaded.metadata["param_count"] == 1054
    assert loaded.metadata["wavelet"] == "db4"
    assert [r["epoch"] for r in read_csv(model.with_name("model.history.csv"))] == ["1"]
    doc = json.loads((model.parent / PROVENANCE_NAME).read_text(encoding="utf-8"))
    assert doc["results"]["param_count"] == 1054


def test_train_needs_exactly_one_source(tmp_path):
    code = main(["train", "--seed", "1", "--epochs", "1", "-o", str(tmp_path / "m.json")])
    assert code == EXIT_VALIDATION


# ─── denoise ─────────────────────────────────────────────────────────


@pytest.fixture
def model_file(tmp_path):
    kernel = standard_kernel("haar")
    path = tmp_path / "init.json"
    JsonModelStore().save(init_wpt(2, len(kernel), kernel), path)
    return path


def test_delta_one_equals_no_flag(tmp_path, model_file):
    _generate(tmp_path / "d")
    base = ["denoise", "-i", str(tmp_path / "d"), "--model", str(model_file)]
    assert main([*base, "-o", str(tmp_path / "a")]) == EXIT_OK
    assert main([*base, "--delta", "1", "-o", str(tmp_path / "b")]) == EXIT_OK
    a = (tmp_path / "a" / "block_00001_denoised.csv").read_bytes()
    b = (tmp_path / "b" / "block_00001_denoised.csv").read_bytes()
    assert a == b


def test_ht_with_zero_lambda_returns_input(tmp_path):
    _generate(tmp_path / "d")
    code = main(
        ["denoise", "-i", str(tmp_path / "d" / "block_00000_noisy.csv"), "--method", "ht",
         "--lambda", "0", "--layers", "3", "--wavelet", "db2", "-o", str(tmp_path / "o")]
    )
    assert code == EXIT_OK
    store = FileSignalStore()
    noisy = store.read_signal(tmp_path / "d" / "block_00000_noisy.csv")
    out = store.read_signal(tmp_path / "o" / "block_00000_denoised.csv")
    assert np.allclose(out.samples, noisy.samples, rtol=0, atol=1e-8)


def test_auto_delta_needs_a_reference_norm(tmp_path, model_file):
    _generate(tmp_path / "d")
    code = main(
        ["denoise", "-i", str(tmp_path / "d"), "--model", str(model_file), "--auto-delta",
         "--leading", "16", "-o", str(tmp_path / "o")]
    )
    assert code == EXIT_VALIDATION


def test_delta_and_auto_delta_are_exclusive(tmp_path, model_file):
    _generate(tmp_path / "d")
    code = main(
        ["denoise", "-i", str(tmp_path / "d"), "--model", str(model_file), "--auto-delta",
         "--delta", "2", "-o", str(tmp_path / "o")]
    )
    assert code == EXIT_VALIDATION


@pytest.mark.parametrize("method", [["--method", "ht", "--lambda", "1"], ["--method", "identity"]])
def test_delta_is_rejected_without_a_learned_model(tmp_path, method):
    _generate(tmp_path / "d")
    code = main(
        ["denoise", "-i", str(tmp_path / "d"), *method, "--layers", "3", "--delta", "2",
         "-o", str(tmp_path / "o")]
    )
    assert code == EXIT_VALIDATION
    assert not (tmp_path / "o").exists()


def test_resolve_config_names_the_delta_conflict(tmp_path):
    with pytest.raises(ValidationError, match="method=lwpt only"):
        resolve_config(
            "gainmap", {"method": "ht", "threshold": 1.0, "delta": 2.0, "output": tmp_path / "g.csv"}
        )


# ─── evaluate / gainmap ──────────────────────────────────────────────


def test_evaluate_identity_per_class(tmp_path, capsys):
    _generate(tmp_path / "d")
    scores = tmp_path / "eval" / "scores.csv"
    code = main(
        ["evaluate", "--method", "identity", "--test", str(tmp_path / "d"),
         "--trained-class", "block", "--per-class", "-o", str(scores)]
    )
    assert code == EXIT_OK
    rows = read_csv(scores)
    assert list(rows[0]) == ["method", "s_p", "s_r", "s_bar", "n_test", "mse_block"]
    assert rows[0]["method"] == "identity"
    assert float(rows[0]["s_r"]) == 0.0
    assert float(rows[0]["s_p"]) > 0.0
    assert "s_bar" in capsys.readouterr().out
    assert (scores.parent / PROVENANCE_NAME).exists()


def test_evaluate_fits_lambda_when_asked(tmp_path):
    _generate(tmp_path / "d")
    scores = tmp_path / "scores.csv"
    code = main(
        ["evaluate", "--method", "ht", "--fit-lambda-on", str(tmp_path / "d"), "--layers", "3",
         "--wavelet", "db2", "--test", str(tmp_path / "d"), "--trained-class", "block",
         "-o", str(scores)]
    )
    assert code == EXIT_OK
    doc = json.loads((tmp_path / PROVENANCE_NAME).read_text(encoding="utf-8"))
    assert doc["results"]["threshold"] >= 0.0


def test_evaluate_layer_sweep_writes_one_row_per_layer_count(tmp_path, capsys):
    _generate(tmp_path / "d")
    out = tmp_path / "sweep" / "layers.csv"
    code = main(
        ["evaluate", "--method", "ht", "--lambda", "0.5", "--wavelet", "db2",
         "--sweep-layers", "1", "2", "3", "--test", str(tmp_path / "d"),
         "--trained-class", "block", "-o", str(out)]
    )
    assert code == EXIT_OK
    rows = read_csv(out)
    assert list(rows[0]) == ["layers", "s_p", "s_r", "s_bar"]
    assert [r["layers"] for r in rows] == ["1", "2", "3"]
    assert "layers" in capsys.readouterr().out
    doc = json.loads((out.parent / PROVENANCE_NAME).read_text(encoding="utf-8"))
    assert doc["config"]["sweep_layers"] == [1, 2, 3]


def test_evaluate_noise_sweep_generates_its_own_pairs(tmp_path):
    out = tmp_path / "sigma.csv"
    code = main(
        ["evaluate", "--method", "identity", "--sweep-sigma", "0", "0.3",
         "--sweep-family", "gaussian", "--sweep-family", "uniform", "--sweep-class", "block",
         "--sweep-class", "bumps", "--sweep-count", "2", "--length", "64", "--seed", "4",
         "--trained-class", "block", "-o", str(out)]
    )
    assert code == EXIT_OK
    rows = read_csv(out)
    assert [(r["family"], r["sigma"]) for r in rows] == [
        ("gaussian", "0.0"), ("gaussian", "0.3"), ("uniform", "0.0"), ("uniform", "0.3")
    ]
    assert float(rows[0]["s_p"]) == 0.0
    assert float(rows[1]["s_r"]) > 0.0


@pytest.mark.parametrize(
    "extra",
    [
        ["--method", "identity", "--sweep-layers", "2", "--sweep-sigma", "0.1"],
        ["--model", "{model}", "--sweep-layers", "2"],
        ["--method", "identity"],
    ],
)
def test_evaluate_sweep_option_conflicts(tmp_path, model_file, extra):
    extra = [a.replace("{model}", str(model_file)) for a in extra]
    code = main(["evaluate", *extra, "--trained-class", "block", "-o", str(tmp_path / "s.csv")])
    assert code == EXIT_VALIDATION


def test_gainmap_identity_grid(tmp_path):
    out = tmp_path / "gm.csv"
    code = main(
        ["gainmap", "--method", "identity", "--amplitude-count", "3", "--amplitude-max", "1.0",
         "--frequency-count", "4", "--frequency-max", "512", "--length", "256",
         "--sample-rate", "1024", "-o", str(out)]
    )
    assert code == EXIT_OK
    rows = read_csv(out)
    assert len(rows) == 3
    assert len(rows[0]) == 5
    assert all(float(v) == 0.0 for k, v in rows[0].items() if k != "amplitude")
    assert all(float(v) == pytest.approx(1.0) for r in rows[1:] for k, v in r.items() if k != "amplitude")


def test_gainmap_rejects_frequencies_above_nyquist(tmp_path):
    code = main(
        ["gainmap", "--method", "identity", "--frequency-max", "600", "--sample-rate", "1024",
         "--length", "256", "-o", str(tmp_path / "gm.csv")]
    )
    assert code == EXIT_VALIDATION
