import pytest

from lyndonreg.chains import chain_graph, chains, is_antichain, verify_chain_uniqueness
from lyndonreg.closedsets import phi
from lyndonreg.words import format_word

from conftest import A2, U2, U3, U4, U5, U5P, U5PP, W


def test_antichain():
    assert is_antichain([W("211"), W("221")])
    assert not is_antichain([W("21"), W("221")])
    with pytest.raises(ValueError):
        chain_graph([W("21"), W("221")], A2)


def test_chain_graph_quantum_plane():
    g = chain_graph([W("21")], A2)
    assert set(g.arrows[()]) == {W("1"), W("2")}
    assert g.arrows[W("2")] == [W("1")]
    assert chains([W("21")], A2, 2) == [W("21")]
    assert chains([W("21")], A2, 3) == []


@pytest.mark.parametrize("U", [U2, U3, U4, U5PP, U5P])
def test_chain_uniqueness(U):
    rep = verify_chain_uniqueness(U)
    assert rep.passed, rep
    assert rep.top_chains == [rep.expected]


def test_chain_graph_json():
    doc = chain_graph(phi(U3), A2).to_json()
    assert doc["vertices"][0] == "[]"
    assert ["2", "21"] in doc["arrows"] and ["21", "1"] in doc["arrows"]
    assert ["21", "21"] not in doc["arrows"]
