import itertools
import random

import pytest

from crowell.quandle import (
    GradedElement,
    closure,
    element_lengths,
    op_right,
    op_right_inv,
    orbit_summary,
)
from crowell.targets import FiniteModuleSpec, default_battery


def elements(spec):
    values = itertools.product(range(spec.modulus), repeat=spec.rank)
    return [GradedElement(c, v) for v in values for c in range(1, spec.mu + 1)]


def test_fox_coloring_closure(fox3):
    seeds = [GradedElement(1, (0,)), GradedElement(1, (1,))]
    lengths = element_lengths(seeds, fox3, 5)
    assert lengths == {
        GradedElement(1, (0,)): 1,
        GradedElement(1, (1,)): 1,
        GradedElement(1, (2,)): 2,
    }
    assert closure(seeds, fox3) == set(lengths)


def test_maxlen_limits_exploration(fox3):
    seeds = [GradedElement(1, (0,)), GradedElement(1, (1,))]
    assert set(element_lengths(seeds, fox3, 1)) == set(seeds)
    with pytest.raises(ValueError):
        element_lengths(seeds, fox3, 0)


def test_chi_action_fixes_component_two(chi):
    seeds = [GradedElement(1, (1,)), GradedElement(2, (0,))]
    assert closure(seeds, chi) == set(seeds)


def test_chi_operation(chi):
    # t1 acts by -1 and t2 trivially on Z/3
    for a, b in itertools.product(range(3), repeat=2):
        left = op_right(GradedElement(1, (a,)), GradedElement(1, (b,)), chi)
        assert left == GradedElement(1, ((2 * a + 2 * b) % 3,))
        mixed = op_right(GradedElement(1, (a,)), GradedElement(2, (b,)), chi)
        assert mixed == GradedElement(1, ((a + 2 * b) % 3,))


def test_orbit_summary(fox3, chi):
    assert orbit_summary([GradedElement(1, (0,))], fox3, [1]) == {1: (True, True)}
    assert orbit_summary([GradedElement(1, (0,)), GradedElement(1, (1,))], fox3, [1]) == {1: (False, False)}
    summary = orbit_summary([GradedElement(1, (1,)), GradedElement(2, (0,))], chi, [1, 2])
    assert summary == {1: (True, False), 2: (True, True)}


def test_quandle_axioms_randomized():
    rng = random.Random(9)
    specs = [s for s in default_battery(2) if s.modulus <= 4]
    checked = 0
    for spec in specs:
        pool = elements(spec)
        for _ in range(125):
            x, y, z = (rng.choice(pool) for _ in range(3))
            assert op_right(x, x, spec) == x
            assert op_right_inv(op_right(x, y, spec), y, spec) == x
            assert op_right(op_right_inv(x, y, spec), y, spec) == x
            left = op_right(op_right(x, y, spec), z, spec)
            right = op_right(op_right(x, z, spec), op_right(y, z, spec), spec)
            assert left == right
            assert op_right(x, y, spec).component == x.component
            checked += 1
    assert checked >= 1000


def test_closure_is_closed_randomized():
    rng = random.Random(10)
    for spec in default_battery(2):
        if spec.modulus > 5:
            continue
        pool = elements(spec)
        seeds = rng.sample(pool, 2)
        closed = closure(seeds, spec)
        for a, b in itertools.product(closed, repeat=2):
            assert op_right(a, b, spec) in closed
            assert op_right_inv(a, b, spec) in closed


def test_orbit_summary_agrees_with_closure_randomized():
    rng = random.Random(11)
    for spec in default_battery(2):
        pool = elements(spec)
        seeds = rng.sample(pool, 3)
        closed = closure(seeds, spec)
        summary = orbit_summary(seeds, spec, [1, 2])
        for component in (1, 2):
            values = {e.value for e in closed if e.component == component}
            if values:
                assert summary[component] == (len(values) == 1, values == {spec.zero()})
