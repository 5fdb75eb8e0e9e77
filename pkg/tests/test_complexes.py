from itertools import combinations

import pytest

from dvrhom import (
    InputError,
    SimplicialComplex,
    build_complex,
    check_cone,
    check_full_subcomplex,
    circulant,
    digital_image,
    f_vector,
    figure_digraph,
    from_edge_list,
    induced_subgraph,
    is_simplex,
    is_symmetric,
    map_complex,
    minimal_neighborhood,
    random_digraph,
    restrict_to,
)
from oracles import brute_force_dvr, clique_complex_faces

S2_POINTS = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]


def test_is_simplex_singleton():
    g = from_edge_list(3, [])
    assert is_simplex(g, [2]) == (2,)


def test_is_simplex_figure_left_triangle():
    g = figure_digraph("left")
    assert is_simplex(g, [0, 1, 3]) == (0, 1, 3)


def test_is_simplex_strict_cycle_has_no_witness():
    g = from_edge_list(3, [(0, 1), (1, 2), (2, 0)])
    assert is_simplex(g, [0, 1, 2]) is None
    assert (0, 1, 2) not in brute_force_dvr(g)


def test_is_simplex_rejects_bad_input():
    g = from_edge_list(3, [])
    with pytest.raises(InputError):
        is_simplex(g, [])
    with pytest.raises(InputError):
        is_simplex(g, [0, 7])


def test_build_complex_figure_fixtures():
    left = build_complex(figure_digraph("left"))
    assert f_vector(left) == (4, 5, 2)
    assert left.by_dimension[1] == [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]
    assert left.by_dimension[2] == [(0, 1, 3), (0, 2, 3)]

    middle = build_complex(figure_digraph("middle"))
    # no triangles: the f-vector stops at dimension 1, i.e. (4, 5, 0)
    assert f_vector(middle) == (4, 5)
    assert (0, 3) in middle  # the diagonal D->A edge is present

    right = build_complex(figure_digraph("right"))
    assert f_vector(right) == (4, 4)


def test_build_complex_octahedron():
    k = build_complex(circulant(6, 2))
    assert f_vector(k) == (6, 12, 8)
    assert set(k.by_dimension[2]) == set(brute_force_dvr(circulant(6, 2))) - set(
        k.by_dimension[0]
    ) - set(k.by_dimension[1])


def test_f_vector_small_cases():
    assert f_vector(build_complex(from_edge_list(1, []))) == (1,)
    assert f_vector(build_complex(from_edge_list(0, []))) == ()
    assert f_vector(build_complex(digital_image(S2_POINTS))) == (6, 12, 8)


def test_face_closure_and_witness_validity():
    for seed in range(8):
        g = random_digraph(6, 0.45, seed)
        k = build_complex(g)
        for s in k.simplices():
            for size in range(1, len(s) + 1):
                for face in combinations(s, size):
                    assert face in k
            w = k.witness[s]
            assert tuple(sorted(w)) == s
            assert all(
                g.has_edge(w[i], w[j])
                for i in range(len(w))
                for j in range(i + 1, len(w))
            )


def test_matches_brute_force_enumeration():
    for seed in range(12):
        g = random_digraph(2 + seed % 6, (0.2, 0.5, 0.8)[seed % 3], 50 + seed)
        assert set(build_complex(g).simplices()) == brute_force_dvr(g)


def test_symmetric_case_matches_clique_complex():
    for seed in range(8):
        g = random_digraph(10, 0.5, 900 + seed)
        sym_edges = [(u, v) for u, v in g.edges() if g.has_edge(v, u)]
        sg = from_edge_list(10, sym_edges + [(v, u) for u, v in sym_edges])
        assert is_symmetric(sg)
        assert set(build_complex(sg).simplices()) == clique_complex_faces(sg)


def test_max_dim_cap_and_truncation_flag():
    g = circulant(6, 2)
    k0 = build_complex(g, max_dim=0)
    assert f_vector(k0) == (6,)
    assert k0.truncated

    k1 = build_complex(g, max_dim=1)
    assert f_vector(k1) == (6, 12)
    assert k1.truncated

    k2 = build_complex(g, max_dim=2)
    assert f_vector(k2) == (6, 12, 8)
    assert not k2.truncated  # nothing exists above dimension 2

    kfull = build_complex(g)
    assert not kfull.truncated


def test_determinism():
    g = random_digraph(7, 0.5, 3)
    k1 = build_complex(g)
    k2 = build_complex(g)
    assert k1 == k2
    assert k1.witness == k2.witness


def test_check_full_subcomplex_whole_and_examples():
    g = circulant(6, 2)
    assert check_full_subcomplex(g, range(6))
    assert check_full_subcomplex(g, [0, 1, 2])
    sub = build_complex(induced_subgraph(g, [0, 1, 2]))
    assert f_vector(sub) == (3, 3, 1)


def test_check_full_subcomplex_campaign():
    import random

    rng = random.Random(5)
    for i in range(50):
        g = random_digraph(2 + i % 6, (0.2, 0.4, 0.7)[i % 3], 600 + i)
        a = [v for v in range(g.n) if rng.random() < 0.6] or [0]
        assert check_full_subcomplex(g, a)


def test_check_cone_examples():
    assert check_cone(from_edge_list(3, []), 0)
    assert check_cone(circulant(6, 2), 0)
    middle = figure_digraph("middle")
    assert minimal_neighborhood(middle, 3) == (1, 2, 3)
    assert check_cone(middle, 3)


def test_check_cone_campaign():
    for i in range(30):
        g = random_digraph(2 + i % 6, (0.2, 0.4, 0.7)[i % 3], 700 + i)
        for x in range(g.n):
            assert check_cone(g, x)


def test_map_complex_identity_and_constant():
    g = figure_digraph("left")
    ident = map_complex(list(range(4)), g, g)
    assert ident.all_images_present
    assert all(src == img for src, img in ident.entries)
    assert ident.degenerate == ()

    const = map_complex([2, 2, 2, 2], g, g)
    assert const.all_images_present
    assert all(img == (2,) for _, img in const.entries)
    # every positive-dimensional simplex collapses
    assert len(const.degenerate) == 5 + 2


def test_map_complex_quotient_onto_triangle():
    source = circulant(6, 2)
    target = circulant(3, 1)
    rep = map_complex([v % 3 for v in range(6)], source, target)
    assert rep.all_images_present
    triangles = [img for src, img in rep.entries if len(src) == 3]
    assert len(triangles) == 8
    assert all(img == (0, 1, 2) for img in triangles)


def test_map_complex_rejects_non_morphism():
    g = figure_digraph("left")
    h = figure_digraph("right")  # no A->D edge in the target
    with pytest.raises(InputError, match="morphism"):
        map_complex([0, 1, 2, 3], g, h)


def test_restrict_to_gives_full_subcomplex():
    k = build_complex(circulant(6, 2))
    sub = restrict_to(k, (0, 1, 2))
    assert f_vector(sub) == (3, 3, 1)
    assert all(set(s) <= {0, 1, 2} for s in sub.simplices())


def test_from_simplices_closes_faces():
    k = SimplicialComplex.from_simplices([(0, 1, 2)])
    assert f_vector(k) == (3, 3, 1)
    assert k.witness[(0, 1, 2)] == (0, 1, 2)
    with pytest.raises(InputError):
        SimplicialComplex.from_simplices([()])
