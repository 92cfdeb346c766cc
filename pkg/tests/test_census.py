"""Census correctness: brute-force equality at small n, classification
filters, determinism, and worker-count independence."""

import os

import pytest

from gridrealizer.canonical import are_isomorphic, canonical_internal
from gridrealizer.census import (
    EnumerationConstraints,
    InadmissibleConstraints,
    enumerate_surfaces,
)
from gridrealizer.surfaces import (
    seven_vertex_torus,
    validate_closed_surface,
)

from brute import brute_subset_enumerate, lexgrow_enumerate

SLOW = os.environ.get("GRIDREALIZER_SLOW") == "1"


def test_tetrahedron_only_4_vertex_surface():
    out = enumerate_surfaces(EnumerationConstraints(4))
    assert len(out) == 1
    assert out[0].external_facets == ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))


@pytest.mark.parametrize("n,expected", [(4, 1), (5, 1), (6, 3)])
def test_small_census_equals_brute_force(n, expected):
    ours = {t.facets for t in enumerate_surfaces(EnumerationConstraints(n))}
    brute = brute_subset_enumerate(n)
    assert ours == brute
    assert len(ours) == expected


def test_n7_census_equals_independent_lexgrow():
    ours = {t.facets for t in enumerate_surfaces(EnumerationConstraints(7))}
    other = lexgrow_enumerate(7)
    assert ours == other
    assert len(ours) == 9


def test_n7_torus_unique():
    out = enumerate_surfaces(EnumerationConstraints(7, chi=0, orientable=True))
    assert len(out) == 1
    assert are_isomorphic(out[0], seven_vertex_torus())


def test_all_emitted_pass_validation_and_constraints():
    for n in (5, 6, 7):
        for chi, orientable in ((2, True), (0, True), (1, False)):
            try:
                cons = EnumerationConstraints(n, chi=chi, orientable=orientable)
                cons.validate()
            except InadmissibleConstraints:
                continue
            for t in enumerate_surfaces(cons):
                info = validate_closed_surface(t)
                assert info.closed
                assert info.chi == chi
                assert info.orientable == orientable
                assert 2 * info.E == 3 * info.F
                assert info.V - info.E + info.F == chi


def test_no_duplicate_canonical_labels():
    out = enumerate_surfaces(EnumerationConstraints(7))
    labels = [canonical_internal(t.n, t.facets) for t in out]
    assert len(set(labels)) == len(labels)
    assert [t.facets for t in out] == sorted(labels), "output must be sorted canonical forms"


def test_counts_split_by_type_n7():
    sphere = enumerate_surfaces(EnumerationConstraints(7, chi=2, orientable=True))
    torus = enumerate_surfaces(EnumerationConstraints(7, chi=0, orientable=True))
    rp2 = enumerate_surfaces(EnumerationConstraints(7, chi=1, orientable=False))
    assert len(sphere) + len(torus) + len(rp2) == 9
    assert len(sphere) == 5 and len(torus) == 1 and len(rp2) == 3


def test_worker_count_independence():
    serial = enumerate_surfaces(EnumerationConstraints(7))
    parallel = enumerate_surfaces(EnumerationConstraints(7), workers=4, partition_depth=2)
    assert [t.facets for t in serial] == [t.facets for t in parallel]
    s8 = enumerate_surfaces(EnumerationConstraints(8, chi=0, orientable=True))
    p8 = enumerate_surfaces(
        EnumerationConstraints(8, chi=0, orientable=True), workers=3, partition_depth=4
    )
    assert [t.facets for t in s8] == [t.facets for t in p8]


def test_inadmissible_constraints():
    with pytest.raises(InadmissibleConstraints):
        EnumerationConstraints(4, chi=-2).validate()  # E would exceed C(4,2)
    with pytest.raises(InadmissibleConstraints):
        EnumerationConstraints(10, chi=3).validate()
    with pytest.raises(InadmissibleConstraints):
        EnumerationConstraints(10, chi=-1, orientable=True).validate()
    with pytest.raises(InadmissibleConstraints):
        EnumerationConstraints(3).validate()


def test_n8_census_count():
    # 43 classes on 8 vertices; cross-checked against the independent
    # lexicographic-growth enumerator when GRIDREALIZER_SLOW=1.
    out = enumerate_surfaces(EnumerationConstraints(8))
    assert len(out) == 43
    if SLOW:
        assert {t.facets for t in out} == lexgrow_enumerate(8)


def test_n9_census_count():
    out = enumerate_surfaces(EnumerationConstraints(9))
    assert len(out) == 655
