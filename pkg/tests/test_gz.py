from fractions import Fraction as Fr
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from qschub.errors import PreconditionError
from qschub.gz import (
    GZPattern,
    bruhat_interval_points,
    cube_polytope,
    face_contains,
    flag_from_star_matrix,
    gz_face,
    gz_to_cube,
    hhmp_locate,
    hhmp_membership,
    in_permutahedron,
    moment_mu,
    pattern_from_word,
    rank,
)
from qschub.forest import NestedForest
from qschub.ops import parse_word
from qschub.perm import Permutation, uv_of
from qschub.rtword import box_contains, box_of, enumerate_rtseq, nested_forest_of, star_matrix

W = parse_word


def test_moment_map_small():
    lam = (2, 1)
    assert moment_mu(GZPattern(((Fr(2), Fr(1)), (Fr(2),)))) == (1, 2)
    assert moment_mu(GZPattern(((Fr(2), Fr(1)), (Fr(1),)))) == (2, 1)
    assert moment_mu(pattern_from_word(lam, W("r1 t1"), [2])) == (1, 2)


def test_interval_points():
    lam = (3, 2, 1)
    w = Permutation.parse("231")
    assert bruhat_interval_points(w, w, lam) == {(1, 3, 2)}
    everything = bruhat_interval_points(Permutation.identity(), Permutation.longest(3), lam)
    assert everything == set(permutations(map(Fr, lam)))


@pytest.mark.parametrize("n", range(1, 6))
def test_vertices_are_interval_points(n):
    lam = tuple(range(n, 0, -1))
    for w in enumerate_rtseq(n):
        face = gz_face(lam, w)
        verts = face.vertices()
        assert len(verts) == 2 ** face.dimension
        assert all(face.contains(v) for v in verts)
        u, v = uv_of(w)
        assert {moment_mu(p) for p in verts} == bruhat_interval_points(u, v, lam)
        inner = face.interior_point()
        assert face.contains(inner, relative=True)
        assert hhmp_locate(moment_mu(inner), lam) == w


def test_degenerate_vertex_is_not_a_face_vertex():
    lam = (Fr(3), Fr(2), Fr(1))
    p = GZPattern(((Fr(3), Fr(2), Fr(1)), (Fr(2), Fr(2)), (Fr(2),)))
    assert p.satisfies_interlacing()
    for w in (W("r1 t1 t1"), W("r1 t1 t2")):
        face = gz_face(lam, w)
        assert face.dimension == 2
        assert p not in face.vertices()
        assert not face.contains(p)


def test_lambda_must_be_strict():
    with pytest.raises(PreconditionError):
        gz_face((2, 2), W("r1 t1"))


def test_locate_special_points():
    lam = (Fr(4), Fr(2), Fr(1))
    assert hhmp_locate(lam, lam) == W("r1 r1 r1")
    center = (Fr(7, 3),) * 3
    word = hhmp_locate(center, lam)
    assert word[0] == W("r1")[0] and all(l.kind == "t" for l in word[1:])
    assert face_contains(center, lam, word)
    with pytest.raises(PreconditionError):
        hhmp_locate((5, 1, 1), lam)


def _point(draw, n):
    lam = tuple(range(n, 0, -1))
    perms = [draw(st.permutations(lam)) for _ in range(3)]
    weights = draw(st.lists(st.integers(0, 5), min_size=3, max_size=3).filter(any))
    total = sum(weights)
    return lam, tuple(sum(Fr(c) * p[k] for c, p in zip(weights, perms)) / total for k in range(n))


@given(st.data(), st.integers(1, 4))
def test_location_partitions_the_permutahedron(data, n):
    lam, z = _point(data.draw, n)
    assert in_permutahedron(z, lam)
    located = hhmp_locate(z, lam)
    hits = [w for w in enumerate_rtseq(n) if face_contains(z, lam, w)]
    assert hits == [located]
    for w in enumerate_rtseq(n):
        closed = face_contains(z, lam, w, relative=False)
        assert closed == box_contains(box_of(w), box_of(located))


def test_permutahedron_oracle():
    assert in_permutahedron((2, 2, 2), (3, 2, 1))
    assert not in_permutahedron((3, 3, 0), (3, 2, 1))
    assert not in_permutahedron((1, 1, 1), (3, 2, 1))


@pytest.mark.parametrize("n", range(1, 5))
def test_cube_bijection(n):
    lam = tuple(Fr(v) for v in range(2 * n, 0, -2))
    for w in enumerate_rtseq(n):
        cube = cube_polytope(nested_forest_of(w), lam)
        face = gz_face(lam, w)
        images = [gz_to_cube(v, w) for v in face.vertices()]
        assert all(set(img) == set(cube.nodes) and cube.contains(img) for img in images)
        as_set = lambda phis: sorted(sorted((str(k), v) for k, v in phi.items()) for phi in phis)
        assert as_set(images) == as_set(cube.vertices())


def test_empty_cube():
    cube = cube_polytope(NestedForest(()), (Fr(1),))
    assert cube.nodes == () and cube.vertices() == [{}]


def test_small_flags():
    e = lambda *v: tuple(Fr(a) for a in v)
    # V_1 inside span(e2, e3)
    assert hhmp_membership([e(0, 1, 1), e(1, 2, 0), e(0, 0, 1)])
    # V_2 contains e1
    assert hhmp_membership([e(1, 1, 1), e(0, 1, 1), e(0, 0, 1)])
    # neither clause holds
    assert not hhmp_membership([e(1, 2, 3), e(4, 5, 7), e(2, 11, 3)])
    assert hhmp_membership([e(1)])
    with pytest.raises(PreconditionError):
        hhmp_membership([e(1, 0), e(2, 0)])


@pytest.mark.parametrize("n", range(1, 5))
def test_star_matrix_flags_are_members(n):
    values = [3, -1, 2, 5, -7, 4, 1, 6, -2, 9, 8, -3, 7, 2, 5, 11]
    for w in enumerate_rtseq(n):
        flag = flag_from_star_matrix(star_matrix(w), iter(values))
        assert rank(flag) == n
        assert hhmp_membership(flag)
