from __future__ import annotations

import itertools

import pytest

from tropfold.rep_oracle import (
    OracleError,
    character_dimension,
    clebsch_gordan_invariants,
    dominant_weight_box,
    invariant_dim,
    invariant_dim_dynkin,
    saturation_scan,
    tensor_decompose,
    tensor_decompose_dynkin,
    tensor_multiplicity_dynkin,
    twining_rhs,
    weight_multiplicity,
    weyl_dimension,
)
from tropfold.rootdata import CartanType, build_root_datum, standard_automorphism

A1 = build_root_datum("A1")
A2 = build_root_datum("A2")
A2ad = build_root_datum("A2", "adjoint")


def test_weight_multiplicity_examples():
    assert weight_multiplicity(A1, (2,), (0,)) == 1
    assert weight_multiplicity(A2ad, (1, 1), (0, 0)) == 2  # adjoint rep: rank-many zero weights
    assert weight_multiplicity(A2, (1, 0), (5, 5)) == 0
    with pytest.raises(OracleError):
        weight_multiplicity(A2, (-1, 0), (0, 0))


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "C3", "G2", "D4", "F4"])
def test_weyl_dimension_matches_character(name):
    cartan = CartanType.parse(name).cartan_matrix()
    r = len(cartan)
    labels = [tuple(int(i == k) for i in range(r)) for k in range(r)] + [(1,) * r]
    if name in ("F4",):
        labels = labels[:2]
    for lam in labels:
        assert weyl_dimension(cartan, lam) == character_dimension(cartan, lam)
    assert weyl_dimension(CartanType.parse("G2").cartan_matrix(), (1, 0)) in (7, 14)
    assert weyl_dimension(CartanType.parse("E6").cartan_matrix(), (1, 0, 0, 0, 0, 0)) == 27


def test_tensor_examples():
    for a, b in itertools.product(range(5), repeat=2):
        dec = tensor_decompose(A1, (a,), (b,))
        assert dec == {(a + b - 2 * k,): 1 for k in range(min(a, b) + 1)}
    assert tensor_decompose(A2, (1, 0), (1, 0)) == {(2, 0): 1, (0, 1): 1}
    assert tensor_decompose(A2, (2, 1), (0, 0)) == {(2, 1): 1}


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "C3"])
def test_klimyk_dimension_conservation(name):
    cartan = CartanType.parse(name).cartan_matrix()
    r = len(cartan)
    for lam, mu in itertools.product([tuple(int(i == k) for i in range(r)) for k in range(r)], repeat=2):
        dec = tensor_decompose_dynkin(cartan, lam, mu)
        assert sum(m * weyl_dimension(cartan, nu) for nu, m in dec.items()) == weyl_dimension(
            cartan, lam
        ) * weyl_dimension(cartan, mu)
        for nu, m in dec.items():
            assert tensor_multiplicity_dynkin(cartan, lam, mu, nu) == m


def test_invariant_examples():
    assert invariant_dim(A2, [(1, 0), (0, 1)]) == 1
    assert invariant_dim(A2ad, [(1, 1)] * 3) == 2
    assert invariant_dim(A1, [(1,), (1,), (1,)]) == 0
    assert invariant_dim(A1, []) == 1


def test_clebsch_gordan_matches_klimyk():
    cartan = A1.cartan
    for labels in itertools.product(range(5), repeat=3):
        assert clebsch_gordan_invariants(labels) == invariant_dim_dynkin(cartan, [(a,) for a in labels])
    for labels in itertools.product(range(3), repeat=4):
        assert clebsch_gordan_invariants(labels) == invariant_dim_dynkin(cartan, [(a,) for a in labels])


def test_twining_examples():
    s2 = standard_automorphism(A2)
    assert twining_rhs(A2, s2, [(0, 0)] * 3) == 1
    assert twining_rhs(A2, s2, [(1, 1)] * 3) == 0  # C1 with three odd labels
    assert twining_rhs(A2, s2, [(1, 1), (1, 1), (2, 2)]) == 1
    a3 = build_root_datum("A3", "adjoint")
    s3 = standard_automorphism(a3)
    assert twining_rhs(a3, s3, [(1, 1, 1), (1, 1, 1), (1, 2, 1)]) == 1
    with pytest.raises(OracleError):
        twining_rhs(A2, s2, [(1, 0), (0, 1)])


def test_saturation_scans():
    recs = saturation_scan(A1, [[(a,), (b,), (c,)] for a, b, c in itertools.product(range(4), repeat=3)], 1, 3)
    assert recs and not any(r.counterexample for r in recs)
    b2 = build_root_datum("B2")
    box = dominant_weight_box(b2, 1)
    recs = saturation_scan(b2, itertools.combinations_with_replacement(box, 3), 2, 3)
    assert not any(r.counterexample for r in recs)
    assert all(r.to_dict()["least_N"] in (None, 1, 2, 3) for r in recs)
