import pytest

from kgatlas.fixture import CORPUS_DIR, FIXTURE_PATH
from kgatlas.graph import GraphStore
from kgatlas.providers.mock import build_mock_providers


@pytest.fixture(scope="session")
def fixture_store() -> GraphStore:
    return GraphStore.load(FIXTURE_PATH)


@pytest.fixture(scope="session")
def mock_providers():
    return build_mock_providers(CORPUS_DIR)


@pytest.fixture(scope="session")
def taishan(fixture_store):
    node = fixture_store.get_node_by_name("Product", "Huawei TaiShan Server")
    assert node is not None
    return node
