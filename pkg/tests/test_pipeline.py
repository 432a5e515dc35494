import math
from pathlib import Path

import pytest
from entanglement_persistence import PersistencePipeline, create_pipeline, ghz
from entanglement_persistence.config import Config
from entanglement_persistence.errors import InvalidSubset, ParseError, TooLarge
from entanglement_persistence.persistence import FiltrationMode


def test_run_on_k3(pipeline: PersistencePipeline, state_file: Path):
    state = pipeline.load_state(f"@{state_file}")
    result = pipeline.run(state, q=2, mode="reduced")
    assert [(i.birth, i.death) for i in result.barcode.in_dim(1)] == [
        (pytest.approx(0.5), pytest.approx(1.5))
    ]
    assert result.report.iec == pytest.approx(0.0, abs=1e-12)
    assert result.report.mode is FiltrationMode.REDUCED
    assert len(result.complex) == 8

    doc = result.to_document(min_length=0.1)
    assert len(doc.intervals) == 3
    assert doc.summaries.iec == result.report.iec


def test_run_uses_config_defaults():
    config = Config.default()
    config.pipeline.q = 1.0
    config.pipeline.mode = "absolute"
    result = PersistencePipeline(config).run(ghz(2))
    assert result.barcode.q == 1.0
    assert result.barcode.mode is FiltrationMode.ABSOLUTE
    assert result.barcode.has_infinite


def test_relative_run(pipeline: PersistencePipeline):
    result = pipeline.run(ghz(3), q=1, mode="relative", relative_to=["A1", "A2"])
    assert result.report.iec == pytest.approx(-math.log(2.0))
    assert result.barcode.relative_to == 0b011


def test_relative_mask(pipeline: PersistencePipeline):
    f = pipeline.functional(ghz(3))
    assert pipeline.relative_mask(f, None) is None
    assert pipeline.relative_mask(f, 0b101) == 0b101
    assert pipeline.relative_mask(f, ["A1", "A3"]) == 0b101
    assert pipeline.relative_mask(f, ["1"]) == 0b010
    assert pipeline.relative_mask(f, [2, "A1"]) == 0b101
    with pytest.raises(InvalidSubset):
        pipeline.relative_mask(f, ["B7"])
    with pytest.raises(InvalidSubset):
        pipeline.relative_mask(f, [3])


def test_size_limit():
    config = Config.default()
    config.pipeline.max_parties = 3
    pipeline = PersistencePipeline(config)
    with pytest.raises(TooLarge):
        pipeline.load_state('{"kind": "ghz", "n": 4}')
    with pytest.raises(TooLarge):
        pipeline.run(ghz(4))
    assert pipeline.run(ghz(3)).barcode.n_parties == 3


def test_load_state_errors(pipeline: PersistencePipeline):
    with pytest.raises(ParseError):
        pipeline.load_state('{"kind": "ghz", "n": 2, "extra": true}')
    with pytest.raises(TooLarge):
        pipeline.load_state('{"kind": "ghz", "n": 11}')


def test_verify(pipeline: PersistencePipeline):
    result = pipeline.verify("corollary", trials=2, seed=1, parallel=False)
    assert result.success
    assert [t.seed for t in result.trials] == [1, 2]


def test_create_pipeline(tmp_path: Path):
    pipeline = create_pipeline(None)
    assert pipeline.config.pipeline.q == 2.0
    assert len(pipeline.registry) == 12
    assert repr(pipeline) == "PersistencePipeline(kinds=12, q=2.0)"
    assert create_pipeline(str(tmp_path / "missing.json")).config.numerics.eig_solver == "lapack"


@pytest.mark.parametrize("mode", ["reduced", "absolute"])
def test_relative_to_outside_relative_mode(pipeline: PersistencePipeline, mode):
    with pytest.raises(InvalidSubset):
        pipeline.run(ghz(3), mode=mode, relative_to=["A1"])
