"""Certified construction pipeline and the triangle-deletion patch."""

from __future__ import annotations

import random
import re

import pytest

import oracles
from idcodes import (
    BoundMissedError,
    Certificate,
    Graph,
    InvalidDeletionSetError,
    NotConnectedError,
    NotIdentifiableError,
    NotTriangleFreeError,
    bound_check,
    construct_near_triangle_free,
    construct_triangle_free,
    gamma_id_exact,
    graph_hash,
    in_f_delta,
    is_identifying,
    make_family,
    min_triangle_deletion_size,
    random_triangle_free,
    serialize_certificate,
    triangle_deletion_set,
    triangle_witness,
)
from idcodes.construct import (
    STEP_COROLLARY_PATCH,
    STEP_DELTA2_CYCLE,
    STEP_DELTA2_PATH,
    STEP_FAMILY_HIT,
)

KNOWN_LABELS = {
    "Delta2Path",
    "Delta2Cycle",
    "TreeBase",
    "FamilyHit",
    "ClaimA",
    "ClaimB",
    "ClaimC",
    "GStar",
    "ComponentAssembly",
    "ExactFallback",
    "CorollaryPatch",
}


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def check_certificate(g: Graph, cert: Certificate) -> None:
    assert cert.verified
    assert cert.n == g.n and cert.delta == g.max_degree()
    assert cert.input_hash == graph_hash(g)
    assert cert.code == tuple(sorted(set(cert.code)))
    assert is_identifying(g, cert.code)
    assert cert.bound_den * len(cert.code) <= cert.bound_num
    assert {s.label for s in cert.trace} <= KNOWN_LABELS


def test_input_validation():
    with pytest.raises(ValueError):
        construct_triangle_free(Graph(2, [(0, 1)]))
    with pytest.raises(NotTriangleFreeError):
        construct_triangle_free(Graph(3, [(0, 1), (1, 2), (0, 2)]))
    with pytest.raises(NotConnectedError):
        construct_triangle_free(Graph(4, [(0, 1), (2, 3)]))


def test_paths_and_cycles():
    for n in range(3, 16):
        cert = construct_triangle_free(path(n))
        check_certificate(path(n), cert)
        assert len(cert.code) == n // 2 + 1
        assert cert.trace[0].label == STEP_DELTA2_PATH
        if n == 4:  # P4 is a family member and carries the family bound
            assert cert.bound_num == 9 and cert.bound_den == 3
        else:
            assert cert.bound_num == n + 3 and cert.bound_den == 2
    for n in range(6, 16):
        cert = construct_triangle_free(cycle(n))
        check_certificate(cycle(n), cert)
        assert len(cert.code) == (n // 2 if n % 2 == 0 else (n + 3) // 2)
        if n != 7:  # C7 likewise
            assert cert.trace[0].label == STEP_DELTA2_CYCLE


def test_family_members_get_tight_certificates():
    from idcodes import all_family_ids

    for fid in all_family_ids():
        entry = make_family(fid)
        cert = construct_triangle_free(entry.graph)
        check_certificate(entry.graph, cert)
        assert cert.family == entry.family
        assert len(cert.code) == entry.gamma
        d = max(entry.graph.max_degree(), 3)
        assert cert.bound_num == (d - 1) * entry.graph.n + 1
        assert cert.bound_den == d
        # Tight: the family members sit exactly on their bound. Members of
        # maximum degree two (P4, C4, C7) go through the path/cycle branch.
        assert cert.bound_den * len(cert.code) == cert.bound_num
        if entry.graph.max_degree() >= 3:
            assert cert.trace[0].label == STEP_FAMILY_HIT


def test_chorded_cycles_avoid_fallback():
    for n in range(7, 18):
        for j in range(3, n - 2):
            edges = [(i, (i + 1) % n) for i in range(n)] + [(0, j)]
            g = Graph(n, edges)
            if triangle_witness(g) is not None:
                continue
            cert = construct_triangle_free(g)
            check_certificate(g, cert)
            assert all(s.label != "ExactFallback" for s in cert.trace)


def test_nonfamily_bound_is_delta_minus_one_over_delta():
    g = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (3, 7)])
    cert = construct_triangle_free(g)
    check_certificate(g, cert)
    assert cert.family is None
    assert cert.bound_num == 2 * 8 and cert.bound_den == 3


def test_exhaustive_small_graphs():
    # Scaled-down sweep; the acceptance suite runs the full one with dedup.
    for n in (4, 5, 6):
        for edges in oracles.connected_triangle_free_graphs(n):
            g = Graph(n, edges)
            cert = construct_triangle_free(g)
            check_certificate(g, cert)
            if g.max_degree() >= 3:
                extra = 1 if in_f_delta(g, g.max_degree()) else 0
                assert (
                    cert.bound_den * len(cert.code)
                    <= (g.max_degree() - 1) * n + extra
                )


def test_random_stress_small():
    for i in range(30):
        rng = random.Random(7000 + i)
        n = rng.randrange(8, 26)
        g = random_triangle_free(n, n - 1 + rng.randrange(0, n), seed=7100 + i)
        cert = construct_triangle_free(g)
        check_certificate(g, cert)
        if n <= 14:
            assert gamma_id_exact(g).size <= len(cert.code)


def test_certificates_are_deterministic():
    g = random_triangle_free(22, 30, seed=99)
    a = serialize_certificate(construct_triangle_free(g))
    b = serialize_certificate(construct_triangle_free(Graph(g.n, list(g.edges))))
    assert a == b
    assert a.startswith("idcodes-certificate v1\n")
    assert "verified yes" in a


def test_serialized_certificate_shape():
    cert = construct_triangle_free(cycle(6))
    text = serialize_certificate(cert)
    lines = text.splitlines()
    assert lines[1].startswith("input-hash ")
    assert lines[2] == "n 6"
    assert lines[3] == "delta 2"
    assert lines[4] == "family -"
    assert lines[5] == "bound 9/2"
    assert lines[6] == "code-size 3"
    assert lines[8] == "verified yes"
    assert text.endswith("\n")


def test_bound_check_reports():
    g = cycle(6)
    rep = bound_check(g, (0, 2, 4))
    assert rep.holds and rep.slack == 2 * 3 - (1 * 6 + 0)
    rep = bound_check(g, (0, 2, 4), delta=3)
    assert rep.bound_num == 12 and rep.slack == -3
    rep = bound_check(g, (0, 2, 4), extra_num=1)
    assert rep.bound_num == 7


def test_fallback_threshold_is_respected():
    # Tiny threshold forces the constructive branches; certificates still hold.
    g = random_triangle_free(18, 24, seed=123)
    cert = construct_triangle_free(g, fallback_threshold=0)
    check_certificate(g, cert)


# --- triangle deletion ------------------------------------------------------


def bowtie() -> Graph:
    return Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def test_triangle_deletion_set_properties():
    g = bowtie()
    dels = triangle_deletion_set(g)
    h = Graph(g.n, [e for e in g.edges if e not in set(dels)])
    assert triangle_witness(h) is None
    assert oracles.connected(h.n, h.edges)
    assert len(dels) == 2  # the two triangles share no edge
    assert triangle_deletion_set(path(5)) == ()


def test_min_triangle_deletion_size():
    assert min_triangle_deletion_size(bowtie(), 4) == 2
    one = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert min_triangle_deletion_size(one, 4) == 1
    assert min_triangle_deletion_size(path(4), 4) == 0
    k4 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert min_triangle_deletion_size(k4, 4) == 2
    assert min_triangle_deletion_size(k4, 1) is None


def net() -> Graph:
    """Triangle with a pendant on each corner: one triangle, no twins."""
    return Graph(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])


def two_chord_hexagon() -> Graph:
    """6-cycle plus two chords: two edge-disjoint triangles, no twins."""
    return Graph(6, [(i, (i + 1) % 6) for i in range(6)] + [(0, 2), (3, 5)])


def test_near_construct_validation():
    with pytest.raises(NotTriangleFreeError):
        construct_triangle_free(net())
    with pytest.raises(ValueError):
        construct_near_triangle_free(path(6))  # max degree 2
    twins = Graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    with pytest.raises(NotIdentifiableError):
        construct_near_triangle_free(twins)
    with pytest.raises(InvalidDeletionSetError):
        construct_near_triangle_free(
            two_chord_hexagon(), deletions=[(0, 2)]
        )


def test_near_construct_certificate():
    g = net()
    cert = construct_near_triangle_free(g)
    assert cert.verified
    assert is_identifying(g, cert.code)
    t = len(triangle_deletion_set(g))
    assert t == 1
    d = g.max_degree()
    assert cert.bound_num == (d - 1) * g.n + 4 * t * d + 1
    assert cert.bound_den == d
    assert cert.family is None
    assert cert.input_hash == graph_hash(g)
    patch_steps = [s for s in cert.trace if s.label == STEP_COROLLARY_PATCH]
    assert patch_steps
    # The deletion summary reports the brute-force minimum for small t.
    assert any("brute-force minimum" in s.detail for s in patch_steps)


def test_near_construct_per_edge_damage_at_most_four():
    for i in range(25):
        g = planted_triangles(seed=8000 + i)
        if g is None:
            continue
        cert = construct_near_triangle_free(g)
        assert cert.verified
        for s in cert.trace:
            if s.label == STEP_COROLLARY_PATCH and "new vertices" in s.detail:
                inside = re.search(r"new vertices \[(.*)\]", s.detail).group(1)
                fresh = [int(x) for x in inside.split(",") if x.strip()]
                assert len(fresh) <= 4


def planted_triangles(seed: int) -> Graph | None:
    rng = random.Random(seed)
    n = rng.randrange(7, 14)
    base = random_triangle_free(n, n - 1 + rng.randrange(0, n // 2), seed=seed)
    edges = set(base.edges)
    for _ in range(3):
        u, v = rng.randrange(n), rng.randrange(n)
        e = (min(u, v), max(u, v))
        if u == v or e in edges:
            continue
        cand = Graph(n, sorted(edges | {e}))
        if triangle_witness(cand) is not None:
            edges.add(e)
    g = Graph(n, sorted(edges))
    if (
        triangle_witness(g) is None
        or g.max_degree() < 3
        or oracles.closed_twins(n, g.edges)
        or not oracles.connected(n, g.edges)
    ):
        return None
    return g


def test_near_construct_explicit_deletions():
    g = two_chord_hexagon()
    cert = construct_near_triangle_free(g, deletions=[(0, 2), (3, 5)])
    assert cert.verified
    d = g.max_degree()
    assert cert.bound_num == (d - 1) * g.n + 4 * 2 * d + 1
    with pytest.raises(InvalidDeletionSetError):
        # Deleting a whole triangle disconnects nothing here but leaves the
        # other triangle in place.
        construct_near_triangle_free(g, deletions=[(0, 1), (1, 2), (0, 2)])


def test_near_construct_on_triangle_free_input():
    g = random_triangle_free(10, 13, seed=5)
    assert g.max_degree() >= 3
    cert = construct_near_triangle_free(g)
    assert cert.verified
    assert cert.bound_num == (g.max_degree() - 1) * g.n + 1
