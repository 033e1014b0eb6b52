from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropfold.rootdata import (
    CartanType,
    RootDataError,
    RootDatum,
    build_gl,
    build_root_datum,
    c_sigma,
    diagram_automorphism,
    dual,
    fold,
    height,
    in_coroot_lattice,
    in_root_lattice,
    integer_kernel,
    integer_solve,
    s_map,
    same_cartan_up_to_relabel,
    standard_automorphism,
)


def test_cartan_matrices():
    assert build_root_datum("A1").cartan == ((2,),)
    assert build_root_datum("A2").cartan == ((2, -1), (-1, 2))
    b2 = CartanType("B", 2).cartan_matrix()
    assert b2 == ((2, -2), (-1, 2)) or b2 == ((2, -1), (-2, 2))
    assert CartanType("B", 3).dual() == CartanType("C", 3)
    with pytest.raises(RootDataError):
        CartanType("E", 9)


def test_gl_convention():
    gl = build_gl(3)
    assert gl.dim == 3
    assert [list(r) for r in gl.simple_roots] == [[1, -1, 0], [0, 1, -1]]
    assert gl.cartan == ((2, -1), (-1, 2))
    assert build_root_datum("GL3").simple_roots == gl.simple_roots


@pytest.mark.parametrize("name", ["A1", "A3", "B2", "C3", "D4", "G2", "F4", "E6"])
@pytest.mark.parametrize("form", ["simply_connected", "adjoint"])
def test_dual_is_involutive(name, form):
    d = build_root_datum(name, form)
    dd = dual(dual(d))
    assert dd.simple_roots == d.simple_roots and dd.simple_coroots == d.simple_coroots
    assert dual(d).cartan_type == d.cartan_type.dual()


def test_dual_forms():
    assert dual(build_root_datum("A3")).form == "adjoint"
    assert dual(build_gl(4)).cartan == build_gl(4).cartan


def test_json_round_trip():
    d = build_root_datum("C3", "adjoint")
    assert RootDatum.from_dict(json.loads(d.to_json())) == d


@pytest.mark.parametrize(
    "name,order,expected",
    [("A3", 2, "B2"), ("A4", 2, "C2"), ("A2", 2, "C1"), ("A5", 2, "B3"), ("D4", 2, "C3"),
     ("D5", 2, "C4"), ("D4", 3, "G2"), ("E6", 2, "F4")],
)
def test_fold_types(name, order, expected):
    d = build_root_datum(name)
    f = fold(d, standard_automorphism(d, order))
    assert str(f.cartan_type) == expected
    assert same_cartan_up_to_relabel(f.folded.cartan, CartanType.parse(expected).cartan_matrix())


def test_fold_identity_is_isomorphic():
    d = build_root_datum("A3")
    f = fold(d, diagram_automorphism(d, [1, 2, 3]))
    assert f.cartan_type == d.cartan_type
    assert same_cartan_up_to_relabel(f.folded.cartan, d.cartan)


def test_fold_adjacency_a4():
    d = build_root_datum("A4")
    f = fold(d, standard_automorphism(d))
    assert f.orbits == ((1, 4), (2, 3))
    assert f.adjacent == (False, True)


def test_c_sigma_table():
    assert c_sigma(standard_automorphism(build_root_datum("A3"))) == 2
    assert c_sigma(standard_automorphism(build_root_datum("A4"))) == 4
    assert c_sigma(standard_automorphism(build_root_datum("A2"))) == 4
    assert c_sigma(standard_automorphism(build_root_datum("D4"), 3)) == 3
    assert c_sigma(standard_automorphism(build_root_datum("E6"))) == 2


def test_s_map_examples():
    a3 = build_root_datum("A3")
    s3 = standard_automorphism(a3)
    assert s_map((1, 2, 1), s3) == (2, 4, 2)
    a4 = build_root_datum("A4")
    s4 = standard_automorphism(a4)
    assert s_map((1, 0, 0, 1), s4) == (4, 0, 0, 4)
    d4 = build_root_datum("D4")
    s = standard_automorphism(d4, 3)
    lam = (1, 0, 0, 0)
    out = s_map(lam, s)
    assert s.on_coweight(out) == out
    assert out == tuple(a + b + c for a, b, c in zip(lam, s.on_coweight(lam), s.on_coweight(s.on_coweight(lam))))


@pytest.mark.parametrize("name,order", [("A2", 2), ("A3", 2), ("A4", 2), ("D4", 3), ("D5", 2), ("E6", 2)])
@given(data=st.data())
def test_s_map_is_sigma_fixed(name, order, data):
    d = build_root_datum(name)
    s = standard_automorphism(d, order)
    lam = tuple(data.draw(st.lists(st.integers(-10, 10), min_size=d.dim, max_size=d.dim)))
    out = s_map(lam, s)
    assert s.on_coweight(out) == out
    if s.on_coweight(lam) == lam:
        assert out == tuple(c_sigma(s) * x for x in lam)


def test_height_examples():
    a1 = build_root_datum("A1", "adjoint")  # coweight lattice spanned by the fundamental coweight
    assert height(a1, [(1,), (1,), (1,)]) == Fraction(3, 2)
    assert height(a1, []) == 0
    a2 = build_root_datum("A2")  # coroot coordinates: rho^vee = alpha_1^vee + alpha_2^vee
    assert height(a2, [(1, 1)]) == 2
    assert height(build_root_datum("A2", "adjoint"), [(1, 1)]) == 2


def test_root_lattice_examples():
    a1 = build_root_datum("A1")  # weights in fundamental coordinates
    assert in_root_lattice(a1, (2,))
    assert not in_root_lattice(a1, (1,))
    assert in_root_lattice(build_root_datum("A2"), (1, 1))
    assert not in_coroot_lattice(build_root_datum("A2", "adjoint"), (1, 0))


def test_integer_linear_algebra():
    a = [[2, 4, 6], [1, 3, 5]]
    ker = integer_kernel(a)
    assert len(ker) == 1 and all(sum(r[k] * ker[0][k] for k in range(3)) == 0 for r in a)
    sol = integer_solve([[2, 0], [0, 3]], [4, 9])
    assert tuple(sol) == (2, 3)
    assert integer_solve([[2, 0], [0, 3]], [1, 9]) is None


def test_automorphism_validation():
    a3 = build_root_datum("A3")
    with pytest.raises(RootDataError):
        diagram_automorphism(a3, [2, 1, 3])
    s = standard_automorphism(build_root_datum("D4"), 3)
    assert s.order == 3
    assert standard_automorphism(build_root_datum("D4")).order == 2
