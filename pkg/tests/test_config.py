import json
import logging
from pathlib import Path

import pytest
from entanglement_persistence.config import Config, NumericsConfig, PipelineConfig


def test_default_values():
    config = Config.default()
    assert config.numerics.eig_solver == "lapack"
    assert config.numerics.monotone_tol == 1e-9
    assert config.pipeline.q == 2.0
    assert config.pipeline.mode == "reduced"
    assert config.pipeline.max_parties == 10
    assert config.verify.trials == 50
    assert config.output.significant_digits == 17
    assert config.output.svg_margin == 80


def test_missing_file_gives_defaults(tmp_path: Path):
    config = Config.load(tmp_path / "missing.json")
    assert config.to_dict() == Config.default().to_dict()
    assert Config.load(None).to_dict() == Config.default().to_dict()


def test_partial_file_fills_defaults(tmp_path: Path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"pipeline": {"q": 1.5}, "verify": {"workers": 2}}), encoding="utf-8")
    config = Config.load(path)
    assert config.pipeline.q == 1.5
    assert config.pipeline.mode == "reduced"
    assert config.verify.workers == 2
    assert config.numerics.eig_solver == "lapack"


def test_save_and_reload(tmp_path: Path):
    config = Config.default()
    config.numerics.eig_solver = "jacobi"
    config.pipeline.mode = "absolute"
    path = tmp_path / "nested" / "config.json"
    config.save(path)
    reloaded = Config.load(path)
    assert reloaded.to_dict() == config.to_dict()
    reloaded.verify.trials = 5
    reloaded.save()
    assert json.loads(path.read_text(encoding="utf-8"))["verify"]["trials"] == 5


def test_save_without_path_fails():
    with pytest.raises(ValueError):
        Config.default().save()


def test_invalid_values():
    with pytest.raises(ValueError):
        NumericsConfig.from_dict({"eig_solver": "qr"})
    with pytest.raises(ValueError):
        PipelineConfig.from_dict({"mode": "cubical"})


def test_invalid_json(tmp_path: Path):
    path = tmp_path / "config.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ValueError):
        Config.load(path)


def test_solver_follows_config():
    numerics = NumericsConfig.from_dict({"eig_solver": "jacobi", "jacobi_max_sweeps": 7})
    solver = numerics.solver()
    assert solver.method == "jacobi"
    assert solver.jacobi_max_sweeps == 7


def test_logging_apply_with_verbosity():
    config = Config.default()
    config.logging.apply(verbosity=1)
    assert logging.getLogger().level == logging.INFO
    config.logging.apply(verbosity=5)
    assert logging.getLogger().level == logging.DEBUG
    config.logging.level = "NOPE"
    config.logging.apply()
    assert logging.getLogger().level == logging.WARNING
