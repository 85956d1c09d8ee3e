import logging

import pytest

from tdcount import ParseError, load_corpus, parse_smiles
from conftest import CAFFEINE_SMILES


def test_methane_heavy_atom_graph():
    mol = parse_smiles("C")
    assert mol.graph.n == 1
    assert mol.graph.m == 0
    assert mol.graph.labels == ("C",)


def test_cyclohexane_ring_closure():
    g = parse_smiles("C1CCCCC1").graph
    assert (g.n, g.m) == (6, 6)
    assert all(g.degree(v) == 2 for v in range(6))


def test_caffeine():
    g = parse_smiles(CAFFEINE_SMILES).graph
    assert (g.n, g.m) == (14, 15)
    assert sorted(g.labels) == sorted("CCCCCCCC" "NNNN" "OO")
    # two fused rings: cyclomatic number 2, all of it in one component
    assert g.is_connected()
    assert g.m - g.n + 1 == 2


def test_bond_order_erasure():
    assert parse_smiles("C=C").graph == parse_smiles("CC").graph
    assert parse_smiles("C#N").graph == parse_smiles("CN").graph
    assert parse_smiles("C:C").graph == parse_smiles("C-C").graph


def test_ring_rotation_gives_isomorphic_graph():
    # methylcyclohexane with the ring opened at different atoms
    base = parse_smiles("CC1CCCCC1").graph
    for variant in ["C1CCCCC1C", "C1(C)CCCCC1", "CC%12CCCCC%12"]:
        g = parse_smiles(variant).graph
        assert (g.n, g.m) == (base.n, base.m)
        assert sorted(g.degree(v) for v in range(g.n)) == \
            sorted(base.degree(v) for v in range(base.n))


def test_branches():
    g = parse_smiles("CC(C)(C)C").graph  # neopentane
    assert (g.n, g.m) == (5, 4)
    assert sorted(g.degree(v) for v in range(5)) == [1, 1, 1, 1, 4]


def test_two_letter_and_aromatic_atoms():
    g = parse_smiles("Clc1ccccc1Br").graph
    assert g.labels.count("Cl") == 1
    assert g.labels.count("Br") == 1
    assert g.labels.count("C") == 6


def test_bracket_atoms():
    mol = parse_smiles("[Se]=[Cr]")
    assert mol.graph.labels == ("Se", "Cr")
    with pytest.raises(ParseError, match="hydrogen"):
        parse_smiles("[H]C")


def test_unsupported_tokens_carry_offset():
    for text, bad_offset in [("C[N+]C", 1), ("C*C", 1), ("C/C=C", 1)]:
        with pytest.raises(ParseError) as err:
            parse_smiles(text)
        assert err.value.offset == bad_offset


def test_structural_errors():
    with pytest.raises(ParseError, match="ring-closure"):
        parse_smiles("C1CC")
    with pytest.raises(ParseError, match="'\\('"):
        parse_smiles("C(CC")
    with pytest.raises(ParseError, match="'\\)'"):
        parse_smiles("CC)C")
    with pytest.raises(ParseError, match="itself"):
        parse_smiles("C11")
    with pytest.raises(ParseError):
        parse_smiles("")
    with pytest.raises(ParseError, match="dangling bond"):
        parse_smiles("CC=")


def test_dot_fragments_warn_and_disconnect(caplog):
    with caplog.at_level(logging.WARNING, logger="tdcount.smiles"):
        mol = parse_smiles("CC.O")
    assert not mol.graph.is_connected()
    assert mol.graph.n == 3
    assert any("fragments" in rec.message for rec in caplog.records)
    with pytest.raises(ParseError):
        parse_smiles("CC.")


def test_duplicate_ring_bond_collapses():
    # ring closure re-declares the 1-2 bond
    g = parse_smiles("C1C1").graph
    assert (g.n, g.m) == (2, 1)


def test_load_corpus(tmp_path):
    path = tmp_path / "corpus.smi"
    path.write_text(
        "# comment\n"
        "CCO\tethanol\n"
        "C1CCCCC1\n"
        "C[Zz]C\tgarbage\n"
        "\n"
        "CC\n",
        encoding="utf-8",
    )
    corpus = load_corpus(path)
    assert len(corpus.molecules) == 3
    assert len(corpus.rejects) == 1
    assert corpus.rejects[0].line == 4
    assert corpus.molecules[0].name == "ethanol"
    assert corpus.molecules[1].name is None


def test_load_corpus_empty(tmp_path):
    path = tmp_path / "empty.smi"
    path.write_text("", encoding="utf-8")
    corpus = load_corpus(path)
    assert corpus.molecules == []
    assert corpus.rejects == []
