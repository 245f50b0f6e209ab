"""Code family construction: counts, structure, distances, fold layouts."""

import numpy as np
import pytest

from foldqec.pauli import PauliWord, commutator_exponent
from foldqec.codes import (build_square, build_diamond, build_steane,
                           build_cone, fold_square, code_distance,
                           mirror_dual_group_check, CodeValidationError)

DIMS = [2, 3, 4, 5]


def test_square_counts():
    for D in range(2, 10):
        code = build_square(D, 2)
        assert code.n == 2 * D * D - 2 * D + 1
        assert len(code.x_sites()) == D * D - D
        assert len(code.z_sites()) == D * D - D
    assert build_square(5, 2).n == 41
    assert build_square(2, 2).n == 5


def test_diamond_counts():
    for D in range(2, 10):
        code = build_diamond(D, 2)
        assert code.n == D * D
        if D % 2 == 1:
            assert len(code.x_sites()) == (D * D - 1) // 2
            assert len(code.z_sites()) == (D * D - 1) // 2
        else:
            assert len(code.x_sites()) == D * D // 2 - 1
            assert len(code.z_sites()) == D * D // 2
    assert build_diamond(5, 2).n == 25
    assert len(build_diamond(4, 2).x_sites()) == 7
    assert len(build_diamond(4, 2).z_sites()) == 8


def test_cone_counts():
    for D in range(2, 10):
        cmin, _ = build_cone(D, 2, "minimal")
        assert cmin.n == 2 * D * D - 2 * D + 1
        ccomp, _ = build_cone(D, 2, "compatible")
        assert ccomp.n == 2 * D * D - 1
    with pytest.raises(ValueError):
        build_cone(3, 2, "bogus")


@pytest.mark.parametrize("d", DIMS)
@pytest.mark.parametrize("D", [2, 3, 4, 5])
def test_square_validates(d, D):
    code = build_square(D, d)
    code.validate()
    assert code_distance(code) == D


@pytest.mark.parametrize("d", DIMS)
@pytest.mark.parametrize("D", [2, 3, 4, 5])
def test_diamond_validates(d, D):
    code = build_diamond(D, d)
    code.validate()
    assert code_distance(code) == D


@pytest.mark.parametrize("d", DIMS)
def test_steane_validates(d):
    code = build_steane(d)
    code.validate()
    assert code_distance(code) == 3
    assert code.n == 7
    assert len(code.x_sites()) == 3 and len(code.z_sites()) == 3
    for i in code.x_sites():
        for j in code.z_sites():
            assert commutator_exponent(code.generators[i],
                                       code.generators[j]) == 0


def test_steane_d2_is_self_dual_css():
    code = build_steane(2)
    xs = {frozenset(code.sites[i].support()) for i in code.x_sites()}
    zs = {frozenset(code.sites[i].support()) for i in code.z_sites()}
    assert xs == zs


def test_diamond_generator_commutation_d3():
    code = build_diamond(3, 3)
    gens = code.generators
    for i in range(len(gens)):
        for j in range(len(gens)):
            assert commutator_exponent(gens[i], gens[j]) == 0


def test_fold_square_layout():
    for D in (2, 3, 5):
        code = build_square(D, 2)
        layout = fold_square(code)
        layout.validate()
        folds = layout.fold_qudits
        assert len(folds) == 2 * D - 1
        assert len(folds) + 2 * len(layout.pairs) == code.n
        # reflection applied twice is the identity
        for q in range(code.n):
            assert layout.partner[layout.partner[q]] == q
    layout5 = fold_square(build_square(5, 2))
    assert len(layout5.fold_qudits) == 9
    assert len(layout5.pairs) == 16


def test_fold_square_mirror_dual():
    for d in DIMS:
        for D in (2, 3):
            code = build_square(D, d)
            layout = fold_square(code)
            assert mirror_dual_group_check(code, layout)


def test_bipartition_cross_product_rule():
    code = build_square(3, 2)
    layout = fold_square(code)
    # fold qudit at (0,0): top edge points right, reflected edge points up:
    # right x up = out of plane -> dark
    q00 = code.coords.index((0, 0))
    assert layout.cluster_type[layout.cluster_of[q00]] == "dark"
    q11 = code.coords.index((1, 1))
    assert layout.cluster_type[layout.cluster_of[q11]] == "light"
    # every cluster got a type
    assert set(layout.cluster_type) == set(layout.cluster_pos)


def test_square_site_partner_pairs_vertex_to_face():
    code = build_square(3, 3)
    layout = fold_square(code)
    for i, s in enumerate(code.sites):
        j = layout.site_partner[i]
        assert code.sites[j].kind != s.kind
        assert layout.site_partner[j] == i


def test_distance_invariant_under_relabeling():
    rng = np.random.default_rng(0)
    code = build_diamond(3, 2)
    perm = rng.permutation(code.n)
    from foldqec.codes import StabilizerCode, StabSite
    sites = [StabSite(s.kind, s.pos, [(int(perm[q]), xe, ze)
                                      for q, xe, ze in s.terms])
             for s in code.sites]
    coords = [None] * code.n
    for q, p in enumerate(code.coords):
        coords[int(perm[q])] = p
    lx = PauliWord(code.dims, 0, code.logical_x.xpow[np.argsort(perm)],
                   code.logical_x.zpow[np.argsort(perm)])
    lz = PauliWord(code.dims, 0, code.logical_z.xpow[np.argsort(perm)],
                   code.logical_z.zpow[np.argsort(perm)])
    permuted = StabilizerCode("diamond", 3, 2, coords, sites, lx, lz,
                              arcs_x={int(perm[q]): a for q, a in code.arcs_x.items()},
                              arcs_z={int(perm[q]): a for q, a in code.arcs_z.items()})
    assert code_distance(permuted) == 3


def test_boundary_generator_weights():
    code = build_square(3, 2)
    weights = sorted(len(s.terms) for s in code.sites)
    assert weights[0] == 3 and weights[-1] == 4


def test_json_roundtrip_keys():
    code = build_square(2, 3)
    blob = code.to_json()
    assert blob["family"] == "square"
    assert blob["n"] == 5
    assert len(blob["generators"]) == 4
    w = PauliWord.from_text(blob["logical_x"], code.dims)
    assert w == code.logical_x


def test_rejects_bad_D():
    with pytest.raises(ValueError):
        build_square(1, 2)
    with pytest.raises(ValueError):
        build_diamond(1, 2)
