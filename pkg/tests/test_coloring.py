import itertools

import pytest

from crowell.coloring import (
    ColoringSpace,
    count_constrained,
    count_nonconstant,
    fingerprint,
    orbit_image,
    profile,
    solve_colorings,
    sublink_fingerprints,
    swap_profile,
)
from crowell.diagram import permute_components
from crowell.errors import DimensionError
from crowell.presentation import build_presentation, simplify
from crowell.targets import FiniteModuleSpec, default_battery


def brute_force_count(p, spec):
    """Count colorings of a rank-1 target by trying every assignment."""
    n = spec.modulus
    evaluate = ColoringSpace(p, spec).evaluate
    rows = [[evaluate(entry)[0][0] for entry in row] for row in p.rows]
    return sum(
        1
        for values in itertools.product(range(n), repeat=len(p.generators))
        if all(sum(a * v for a, v in zip(row, values)) % n == 0 for row in rows)
    )


def test_counts_match_brute_force(diagrams):
    for name in ("W", "L7_2_8", "trefoil", "unknot", "unlink2"):
        p = build_presentation(diagrams[name])
        for spec in default_battery(p.mu):
            if spec.rank != 1 or spec.modulus ** len(p.generators) > 3 ** 7:
                continue
            assert ColoringSpace(p, spec).count() == brute_force_count(p, spec), (name, spec.spec_id)


def test_fox_three_colorings(diagrams, fox3):
    assert solve_colorings(build_presentation(diagrams["unknot"]), fox3).count() == 3
    assert solve_colorings(build_presentation(diagrams["trefoil"]), fox3).count() == 9


def test_gf3chi_counts(W_raw, L_raw, chi):
    assert ColoringSpace(W_raw, chi).count() == 9
    assert ColoringSpace(L_raw, chi).count() == 9


def test_gf3chi_profiles(W_raw, L_raw, chi):
    w = profile(W_raw, chi)
    assert (w.unconstrained, w.constant, w.zero) == (9, (3, 3), (1, 3))
    l = profile(L_raw, chi)
    assert (l.unconstrained, l.constant, l.zero) == (9, (3, 9), (1, 9))


def test_separating_coloring(L_raw, W_raw, chi):
    assert count_nonconstant(L_raw, chi, 1, {2: "zero"}) == 6
    assert count_nonconstant(W_raw, chi, 1, {2: "constant"}) == 0
    space = ColoringSpace(L_raw, chi)
    wanted = {"a1": (0,), "a2": (1,), "a3": (0,), "a4": (1,), "a5": (2,), "a6": (0,), "a7": (0,)}
    assert any(space.arc_values(c) == wanted for c in space)


def test_orbit_image_of_separating_coloring(L_raw, chi):
    space = ColoringSpace(L_raw, chi)
    for coloring in space:
        values = space.arc_values(coloring)
        if values["a2"] == (1,) and values["a5"] == (2,) and values["a1"] == (0,):
            assert orbit_image(L_raw, coloring, chi, 1) == {(0,), (1,), (2,)}
            assert orbit_image(L_raw, coloring, chi, 2) == {(0,)}
            break
    else:
        pytest.fail("expected coloring not found")


def test_counts_survive_simplification(diagrams):
    for d in diagrams.values():
        raw = build_presentation(d)
        simple = simplify(raw)
        assert fingerprint(raw) == fingerprint(simple)


def test_simplified_arc_values_color_the_raw_presentation(W_raw, W_simple, chi):
    raw_space = ColoringSpace(W_raw, chi)
    simple_space = ColoringSpace(W_simple, chi)
    for coloring in simple_space:
        values = simple_space.arc_values(coloring)
        assert raw_space.space.contains([v for a in W_raw.generators for v in values[a]])


def test_rank_two_target(diagrams):
    spec = FiniteModuleSpec(3, 2, (((0, 1), (2, 1)),))
    p = build_presentation(diagrams["trefoil"])
    space = ColoringSpace(p, spec)
    listed = list(space)
    assert len(listed) == space.count()
    assert all(space.contains(c) for c in listed)
    assert space.count() == ColoringSpace(simplify(p), spec).count()


def test_dimension_mismatch(W_raw, fox3):
    with pytest.raises(DimensionError):
        ColoringSpace(W_raw, fox3)


def test_constraint_validation(W_raw, chi):
    with pytest.raises(ValueError):
        count_constrained(W_raw, chi, {1: "bogus"})
    with pytest.raises(DimensionError):
        count_constrained(W_raw, chi, {3: "zero"})
    assert count_constrained(W_raw, chi, {1: "free", 2: "free"}) == 9


def test_swap_asymmetry(W, L, chi):
    swapped_w = build_presentation(permute_components(W, [2, 1]))
    w, w_swapped = swap_profile(build_presentation(W), swapped_w, chi)
    assert (w.constant, w.zero) == (w_swapped.constant, w_swapped.zero)
    swapped_l = build_presentation(permute_components(L, [2, 1]))
    l, l_swapped = swap_profile(build_presentation(L), swapped_l, chi)
    assert (l_swapped.constant, l_swapped.zero) == ((3, 3), (1, 3))
    assert (l.constant, l.zero) != (l_swapped.constant, l_swapped.zero)


def test_swapped_spec_matches_permuted_diagram(L, chi):
    swapped = build_presentation(permute_components(L, [2, 1]))
    original = profile(build_presentation(L), chi)
    mirrored = profile(swapped, chi.swapped([2, 1]))
    assert mirrored.unconstrained == original.unconstrained
    assert mirrored.constant == tuple(reversed(original.constant))
    assert mirrored.zero == tuple(reversed(original.zero))


def test_fingerprint_order_and_jobs(W_simple):
    battery = default_battery(2)
    serial = fingerprint(W_simple, list(reversed(battery)))
    assert [e.spec_id for e in serial.entries] == [s.spec_id for s in battery]
    assert fingerprint(W_simple, battery, jobs=2) == serial
    assert serial.entry("n=3 k=1 t1=2 t2=1").unconstrained == 9


def test_sublink_fingerprints(W, L):
    w = sublink_fingerprints(W)
    l = sublink_fingerprints(L)
    assert set(w) == {1, 2}
    # both links have an unknotted component 2
    assert w[1] == l[1]
    assert w[2] != l[2]


def chi_value(poly):
    # t1 -> -1, t2 -> 1 over Z/3
    return sum(c * (-1) ** e[0] for e, c in poly.terms) % 3


def chi_closure(seeds):
    sign = {1: -1, 2: 1}
    reached = set(seeds)
    while True:
        fresh = set()
        for (cx, x), (cy, y) in itertools.product(reached, repeat=2):
            fresh.add((cx, (sign[cy] * x - (sign[cx] - 1) * y) % 3))
            fresh.add((cx, (sign[cy] * (x + (sign[cx] - 1) * y)) % 3))
        if fresh <= reached:
            return reached
        reached |= fresh


def brute_force_profile(p):
    rows = [[chi_value(entry) for entry in row] for row in p.rows]
    kinds = []
    for values in itertools.product(range(3), repeat=len(p.generators)):
        if any(sum(a * v for a, v in zip(row, values)) % 3 for row in rows):
            continue
        seeds = {(p.arcs[g].component, v) for g, v in zip(p.generators, values)}
        closed = chi_closure(seeds)
        kind = {}
        for component in (1, 2):
            image = {v for c, v in closed if c == component}
            kind[component] = "zero" if image == {0} else "constant" if len(image) == 1 else "varying"
        kinds.append(kind)
    return kinds


def test_constrained_counts_match_brute_force(W_raw, L_raw, chi):
    allowed = {"free": {"zero", "constant", "varying"}, "constant": {"zero", "constant"}, "zero": {"zero"}}
    for p in (W_raw, L_raw):
        kinds = brute_force_profile(p)
        for first, second in itertools.product(allowed, repeat=2):
            expected = sum(1 for k in kinds if k[1] in allowed[first] and k[2] in allowed[second])
            assert count_constrained(p, chi, {1: first, 2: second}) == expected, (first, second)
        for other in allowed:
            expected = sum(1 for k in kinds if k[1] == "varying" and k[2] in allowed[other])
            assert count_nonconstant(p, chi, 1, {2: other}) == expected
    assert sum(1 for k in brute_force_profile(L_raw) if k[1] == "varying" and k[2] == "zero") == 6
