import json
import random
from collections import Counter
from itertools import combinations, permutations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from flagdesign.designlib import (
    TABLE1,
    Design,
    DesignError,
    DesignParams,
    are_isomorphic,
    block_permutations,
    design_invariants,
    develop_base_block,
    dump_design,
    find_base_blocks,
    find_isomorphism,
    flag_orbit_count,
    flag_transitivity,
    hermitian_unital,
    intersection_distribution,
    is_flag_transitive,
    load_design,
    onan_count,
    report_text,
    table1_action,
    table1_construction,
    table1_row,
    unital_construction,
    verification_report,
    verify_design,
    wbs_construction,
    witt_bose_shrikhande,
)
from flagdesign.permgrp import PermGroup, Permutation, is_primitive, subdegrees
from flagdesign.unitary import psl2_action

FANO = Design(7, ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)))


def _brute_automorphisms(d):
    """Oracle: every point permutation mapping the block set onto itself."""
    blocks = set(d.blocks)
    return [p for p in permutations(range(d.v))
            if all(tuple(sorted(p[x] for x in B)) in blocks for B in d.blocks)]


FANO_AUTS = _brute_automorphisms(FANO)
FANO_GROUP = PermGroup(7, [Permutation(p) for p in FANO_AUTS])


def pair_count_oracle(d):
    """Independent parameter computation: count incidences point by point."""
    r = {x: sum(x in B for B in d.blocks) for x in range(d.v)}
    lam = {p: sum(set(p) <= set(B) for B in d.blocks) for p in combinations(range(d.v), 2)}
    assert len(set(r.values())) == 1 and len(set(lam.values())) == 1
    return (d.v, len(d.blocks), r[0], len(d.blocks[0]), lam[(0, 1)])


def relabel(d, perm):
    return Design(d.v, tuple(tuple(perm[x] for x in B) for B in d.blocks))


# -- params and verification -------------------------------------------------------

def test_design_params_identities():
    p = DesignParams(7, 7, 3, 3, 1)
    assert all(p.identity_checks().values())
    assert p.fisher_ok() and p.is_nontrivial()
    bad = DesignParams(36, 42, 7, 6, 1)
    assert bad.identity_checks()["lam*v < r^2"]
    assert DesignParams(10, 15, 9, 6, 5).identity_checks()["r | v-1"]


def test_verify_fano():
    assert verify_design(FANO).as_tuple() == (7, 7, 3, 3, 1) == pair_count_oracle(FANO)


def test_verify_reports_pair_witness():
    with pytest.raises(DesignError) as exc:
        verify_design(Design(4, ((0, 1, 2), (0, 1, 3))))
    assert "(0, 2)" in str(exc.value) or "(2, 3)" in str(exc.value)
    pair, count, lam = exc.value.witness
    assert lam == 2 and count != 2


def test_verify_rejects_full_block():
    g = psl2_action(5)
    with pytest.raises(DesignError):
        verify_design(develop_base_block(g, range(6)))
    assert develop_base_block(g, range(6)).b == 1


def test_verify_rejects_nonuniform_blocks():
    with pytest.raises(DesignError):
        verify_design(Design(4, ((0, 1, 2), (0, 3))))


def test_design_rejects_bad_points():
    with pytest.raises(DesignError):
        Design(3, ((0, 1, 3),))
    with pytest.raises(DesignError):
        Design(3, ((0, 0, 1),))


def test_design_json_roundtrip(tmp_path):
    path = tmp_path / "fano.json"
    dump_design(FANO, path)
    doc = json.loads(path.read_text())
    assert doc == {"schema": 1, "v": 7, "k": 3, "blocks": [list(B) for B in FANO.blocks]}
    assert load_design(path) == FANO
    with pytest.raises(DesignError):
        Design.from_dict(dict(doc, k=4))


# -- constructions ----------------------------------------------------------------

@pytest.mark.parametrize("q,params", [
    (2, (9, 12, 4, 3, 1)),
    (3, (28, 63, 9, 4, 1)),
    (4, (65, 208, 16, 5, 1)),
    (5, (126, 525, 25, 6, 1)),
])
def test_hermitian_unital(q, params):
    d = hermitian_unital(q)
    assert verify_design(d).as_tuple() == params
    if q <= 3:
        assert pair_count_oracle(d) == params
    assert d.b == q * q * (q * q - q + 1) and d.is_simple()


def test_hermitian_unital_range():
    with pytest.raises(DesignError):
        hermitian_unital(7)


@pytest.mark.parametrize("n,params", [(3, (28, 63, 9, 4, 1)), (4, (120, 255, 17, 8, 1))])
def test_witt_bose_shrikhande(n, params):
    d = witt_bose_shrikhande(n)
    assert verify_design(d).as_tuple() == params
    if n == 3:
        assert pair_count_oracle(d) == params


def test_witt_bose_shrikhande_range():
    with pytest.raises(DesignError):
        witt_bose_shrikhande(2)
    with pytest.raises(DesignError):
        witt_bose_shrikhande(6)


def test_develop_base_block_line1():
    d = develop_base_block(psl2_action(5), (0, 1, 2))
    assert d.b == 10
    assert verify_design(d).as_tuple() == (6, 10, 5, 3, 2)
    with pytest.raises(DesignError):
        develop_base_block(psl2_action(5), (0, 1, 6))


def test_develop_base_block_line3():
    g = psl2_action(7)
    found = [B for B in combinations(range(8), 4)
             if _is_design(develop_base_block(g, B), 3)]
    assert found
    assert verify_design(develop_base_block(g, found[0])).as_tuple() == (8, 14, 7, 4, 3)


def _is_design(d, lam):
    try:
        return verify_design(d).lam == lam
    except DesignError:
        return False


# -- base-block search -------------------------------------------------------------

@pytest.mark.parametrize("line,count", [(1, 2), (2, 1), (3, 2), (4, 2), (5, 1), (6, 1)])
def test_find_base_blocks_table1(line, count):
    row = table1_row(line)
    g = table1_action(line)
    designs = find_base_blocks(g, row.params[3], row.params[4])
    assert len(designs) == count
    for d in designs:
        assert verify_design(d).as_tuple() == row.params
        assert is_flag_transitive(g, d)
    # several orbits of base blocks, but one design up to isomorphism
    for d in designs[1:]:
        assert find_isomorphism(designs[0], d) is not None
    assert g.order() // g.degree == row.stabilizer_order


def test_find_base_blocks_psl11_is_paley():
    designs = find_base_blocks(psl2_action(11), 5, 2)
    # the PSL(2,11) Moebius action has degree 12, no (12,5,2) design
    assert designs == []
    d = table1_construction(5).design
    assert verify_design(d).as_tuple() == (11, 11, 5, 5, 2)


def test_find_base_blocks_bound():
    with pytest.raises(DesignError):
        find_base_blocks(psl2_action(31), 12, 1)


def test_find_base_blocks_empty_when_no_design():
    # (8, 3, 1) violates divisibility
    assert find_base_blocks(psl2_action(7), 3, 1) == []


def test_find_base_blocks_deterministic():
    a = find_base_blocks(psl2_action(9), 6, 5)
    b = find_base_blocks(psl2_action(9), 6, 5)
    assert a == b


# -- flag-transitivity -----------------------------------------------------------

def test_trivial_group_on_fano():
    g = PermGroup(7, [])
    assert flag_orbit_count(g, FANO) == 21
    assert not is_flag_transitive(g, FANO)


def test_fano_collineation_group():
    assert len(FANO_AUTS) == FANO_GROUP.order() == 168
    assert is_flag_transitive(FANO_GROUP, FANO)


def test_group_must_preserve_blocks():
    g = PermGroup(7, [Permutation.from_cycles(7, (0, 1))])
    with pytest.raises(DesignError):
        block_permutations(g, FANO)


def test_unital_flag_transitive():
    c = unital_construction(3)
    ft = flag_transitivity(c.group, c.design)
    assert ft["flag_orbits_route"] and ft["block_route"]
    assert ft["block_stabilizer_order"] == 6048 // 63


def test_table1_line6_flag_transitive():
    c = table1_construction(6)
    assert is_flag_transitive(c.group, c.design)
    subs = subdegrees(c.group)
    assert all(s % 9 == 0 for s in subs[1:])


def test_flag_routes_agree_on_partial_groups():
    c = unital_construction(2)
    for gens in ([], c.group.generators[:1], c.group.generators[:2], c.group.generators):
        g = PermGroup(c.group.degree, gens)
        ft = flag_transitivity(g, c.design)
        assert ft["flag_orbits_route"] == ft["block_route"]


# -- invariants and isomorphism -----------------------------------------------------

def test_intersection_distributions_coincide_at_28():
    # both designs are linear spaces with the same b, so the counts are forced
    u, w = hermitian_unital(3), witt_bose_shrikhande(3)
    assert intersection_distribution(u) == intersection_distribution(w) == {0: 945, 1: 1008}


def test_onan_count_separates_unital_from_wbs():
    assert onan_count(hermitian_unital(3)) == 0
    assert onan_count(witt_bose_shrikhande(3)) == 630


def test_full_search_separates_unital_from_wbs():
    u, w = hermitian_unital(3), witt_bose_shrikhande(3)
    assert find_isomorphism(u, w) is None
    assert not are_isomorphic(u, w)


def test_isomorphism_of_relabelled_unital():
    u = hermitian_unital(3)
    perm = list(range(28))
    random.Random(7).shuffle(perm)
    image = find_isomorphism(u, relabel(u, perm))
    assert image is not None
    assert relabel(u, image) == relabel(u, perm)


def test_invariants_keys():
    inv = design_invariants(FANO)
    assert inv["params"] == (7, 7, 3, 3, 1)
    # the four lines missing a point form the only configurations
    assert inv["onan"] == 7
    assert "onan" not in design_invariants(table1_construction(1).design)


@settings(max_examples=20, deadline=None)
@given(st.permutations(list(range(7))))
def test_fano_relabel_isomorphic(perm):
    g = relabel(FANO, perm)
    assert verify_design(g).as_tuple() == (7, 7, 3, 3, 1)
    image = find_isomorphism(FANO, g)
    assert image is not None and relabel(FANO, image) == g


@settings(max_examples=15, deadline=None)
@given(st.permutations(list(range(9))))
def test_affine_plane_relabel_invariants(perm):
    d = hermitian_unital(2)
    e = relabel(d, perm)
    assert design_invariants(d) == design_invariants(e)
    assert are_isomorphic(d, e)


def test_non_isomorphic_same_params_small():
    # two 2-(6,3,2) designs: the line-1 design and its complement in the 20 triples
    d = table1_construction(1).design
    rest = Design(6, tuple(B for B in combinations(range(6), 3) if B not in d.blocks))
    assert verify_design(rest).as_tuple() == (6, 10, 5, 3, 2)
    # complementary halves of the triples are isomorphic here
    assert are_isomorphic(d, rest)


# -- identities across constructions ---------------------------------------------------

def _constructions():
    yield unital_construction(3)
    yield wbs_construction(3)
    for row in TABLE1:
        if row.line != 5:
            yield table1_construction(row.line)


@pytest.mark.parametrize("c", list(_constructions()), ids=lambda c: c.name)
def test_design_identities(c):
    p = verify_design(c.design)
    v, b, r, k, lam = p.as_tuple()
    assert r * (k - 1) == lam * (v - 1)
    assert v * r == b * k
    assert lam * v < r * r
    assert gcd(r, lam) == 1 and (v - 1) % r == 0
    assert is_flag_transitive(c.group, c.design)
    assert is_primitive(c.group)[0]
    assert all(s % r == 0 for s in subdegrees(c.group)[1:])


# -- reports ----------------------------------------------------------------------

def test_verification_report_fano():
    rep = verification_report(FANO, FANO_GROUP)
    assert rep["params"] == {"v": 7, "b": 7, "r": 3, "k": 3, "lambda": 1}
    assert rep["flag_transitive"] and rep["primitive"] and rep["ok"]
    assert rep["subdegrees"] == [1, 6]
    assert rep["point_stabilizer_order"] == 24
    text = report_text(rep)
    assert "flag transitive" in text
    assert text.splitlines()[-1].split() == ["ok", "true"]
    json.dumps(rep)


def test_verification_report_without_group():
    rep = verification_report(FANO)
    assert rep["ok"] and "flag_transitive" not in rep


def test_verification_report_trivial_group_fails():
    rep = verification_report(FANO, PermGroup(7, []))
    assert not rep["ok"] and not rep["flag_transitive"] and not rep["primitive"]
