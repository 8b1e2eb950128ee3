import random

from coregrowth.partitions import (
    EMPTY,
    bounded_to_core,
    conjugate,
    core_to_bounded,
)
from coregrowth.posets import (
    cores_of_level,
    contains,
    enumerate_bounded,
    poset_edges_csv,
    skew_components,
    strong_covers,
    weak_covers_bounded,
    weak_covers_core,
    weak_dim,
    weak_predecessors_bounded,
)
from coregrowth.dimensions import hook_dim


def bfs_components(outer, inner):
    """Flood-fill oracle for connected components of a skew shape."""
    cells = set()
    for i in range(len(outer)):
        lo = inner[i] if i < len(inner) else 0
        cells.update((i, j) for j in range(lo, outer[i]))
    comps = 0
    while cells:
        comps += 1
        stack = [cells.pop()]
        while stack:
            i, j = stack.pop()
            for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
                if nb in cells:
                    cells.remove(nb)
                    stack.append(nb)
    return comps


def test_enumerate_bounded():
    assert enumerate_bounded(3, 4) == ((3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert enumerate_bounded(1, 5) == ((1, 1, 1, 1, 1),)
    assert enumerate_bounded(4, 0) == (EMPTY,)


def test_weak_covers_core_examples():
    assert {c for _r, c in weak_covers_core((2, 1), 3)} == {(3, 1, 1), (2, 2)}
    assert weak_covers_core(EMPTY, 3) == [(0, (1,))]


def test_weak_covers_bounded_examples():
    assert set(weak_covers_bounded((2, 1), 3)) == {(2, 1, 1), (2, 2)}
    assert set(weak_covers_bounded((1,), 3)) == {(2,), (1, 1)}
    assert weak_covers_bounded(EMPTY, 3) == [(1,)]


def test_weak_cover_cross_engine_agreement():
    for k in range(2, 6):
        top = 20 if k <= 3 else 12
        for n in range(0, top):
            for b in enumerate_bounded(k, n):
                via_cores = sorted(
                    core_to_bounded(c, k) for _r, c in weak_covers_core(bounded_to_core(b, k), k)
                )
                assert sorted(weak_covers_bounded(b, k)) == via_cores


def test_weak_covers_count_bound():
    for k in (2, 3, 4):
        for n in range(1, 12):
            for b in enumerate_bounded(k, n):
                covers = weak_covers_bounded(b, k)
                assert 1 <= len(covers) <= k


def test_weak_cover_increments_bounded_size_on_cores():
    for k in (2, 3, 4):
        for n in range(0, 10):
            for c in cores_of_level(k, n):
                for _r, cov in weak_covers_core(c, k):
                    assert sum(core_to_bounded(cov, k)) == n + 1


def test_every_weak_cover_is_strong():
    for k in (2, 3, 4):
        for n in range(0, 12):
            for b in enumerate_bounded(k, n):
                c = bounded_to_core(b, k)
                strong = {s.to_core for s in strong_covers(c, k)}
                weak = {cov for _r, cov in weak_covers_core(c, k)}
                assert weak <= strong
                assert len(strong) >= len(weak)


def test_strong_covers_examples():
    covs = strong_covers(EMPTY, 3)
    assert len(covs) == 1 and covs[0].to_core == (1,) and covs[0].components == 1
    # multiplicities feeding the dimension anchor d((2,1,1)) = 6 at k = 3
    into = {
        s.from_core: s.components
        for s in strong_covers((3,), 3) + strong_covers((2, 1), 3) + strong_covers((1, 1, 1), 3)
        if s.to_core == (3, 1, 1)
    }
    assert into == {(3,): 1, (2, 1): 2, (1, 1, 1): 1}


def test_strong_cover_conjugation_stability():
    for k in (2, 3):
        for n in range(0, 9):
            for c in cores_of_level(k, n):
                mapped = {
                    (conjugate(s.to_core), s.components) for s in strong_covers(c, k)
                }
                direct = {
                    (s.to_core, s.components) for s in strong_covers(conjugate(c), k)
                }
                assert mapped == direct


def test_skew_components_against_flood_fill():
    rng = random.Random(7)
    for _ in range(300):
        outer = tuple(
            sorted((rng.randint(1, 9) for _ in range(rng.randint(1, 7))), reverse=True)
        )
        inner = tuple(
            sorted((rng.randint(0, outer[i]) for i in range(len(outer))), reverse=True)
        )
        inner = tuple(x for x in inner if x)
        if not contains(outer, inner):
            continue
        assert skew_components(outer, inner) == bfs_components(outer, inner)


def test_weak_dim_values():
    assert weak_dim(EMPTY, 3) == 1
    assert weak_dim((1,), 3) == 1
    # with k at least the size, weak paths coincide with standard tableaux
    for n in range(0, 8):
        for lam in enumerate_bounded(7, n):
            assert weak_dim(lam, 7) == hook_dim(lam)


def test_weak_dim_at_most_hook_dim():
    for k in (2, 3, 4):
        for n in range(0, 10):
            for lam in enumerate_bounded(k, n):
                assert weak_dim(lam, k) <= hook_dim(lam)


def test_weak_predecessors_invert_covers():
    for k in (2, 3, 4):
        for n in range(0, 10):
            for lam in enumerate_bounded(k, n):
                for cov in weak_covers_bounded(lam, k):
                    assert lam in weak_predecessors_bounded(cov, k)


def test_poset_edges_csv():
    text = poset_edges_csv(3, 3)
    lines = text.strip().splitlines()
    assert lines[0] == "from,to,components"
    assert '"","1",1' in lines[1]
