from pathlib import Path

import pytest
from entanglement_persistence import Config, MultipartiteState, PersistencePipeline, ghz, graph_state


@pytest.fixture
def k3() -> MultipartiteState:
    """三角形图态，q = 2 时 C₂ 在单体、两体、三体上分别为 0、0.5、1.5"""
    return graph_state(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def bell() -> MultipartiteState:
    return ghz(2)


@pytest.fixture
def pipeline() -> PersistencePipeline:
    return PersistencePipeline(Config.default())


@pytest.fixture
def state_file(tmp_path: Path) -> Path:
    path = tmp_path / "states" / "k3.json"
    path.parent.mkdir(parents=True)
    path.write_text('{"kind": "graph", "n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}', encoding="utf-8")
    return path
