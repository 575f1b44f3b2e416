import pytest

from dualskew.exactmath import IntPoly
from dualskew.nclattice import (
    build_group,
    characteristic_poly,
    coxeter_element,
    load_lattice,
    mobius,
    nc_interval,
    reflection_length,
    save_lattice,
    skew_growth_by_subsets,
    verify_mobius_identity,
)
from dualskew.skewgrowth import CoxeterType, skew_growth


def T(spec: str) -> CoxeterType:
    return CoxeterType.parse(spec)


# -- group construction ---------------------------------------------------------

@pytest.mark.parametrize(
    "spec, order, nrefl",
    [
        ("A1", 2, 1),
        ("A2", 6, 3),
        ("A3", 24, 6),
        ("B2", 8, 4),
        ("B3", 48, 9),
        ("D4", 192, 12),
        ("G2", 12, 6),
        ("F4", 1152, 24),
        ("I2(7)", 14, 7),
        ("I2(12)", 24, 12),
    ],
)
def test_group_orders_and_reflection_counts(spec, order, nrefl):
    g = build_group(T(spec))
    assert len(g) == order
    assert len(g.reflections) == nrefl


def test_irrational_types_are_refused():
    with pytest.raises(ValueError, match="irrational realization"):
        build_group(T("H3"))


@pytest.mark.parametrize("spec", ["E7", "E8"])
def test_large_groups_hit_the_order_limit(spec):
    with pytest.raises(ValueError, match="10000"):
        build_group(T(spec))


def test_order_limit_is_configurable():
    with pytest.raises(ValueError, match="720 exceeds .* 100"):
        build_group(T("A5"), max_order=100)


def test_dihedral_p_limit():
    with pytest.raises(ValueError, match="200"):
        build_group(T("I2(201)"))


def test_reflections_are_closed_under_conjugation():
    for spec in ("A3", "B3"):
        g = build_group(T(spec))
        refl = set(g.reflections)
        for w in g.elements:
            winv = g.elements[g.inverse[g.index[w]]]
            assert all(g.mult(g.mult(w, s), winv) in refl for s in refl)


# -- reflection length ------------------------------------------------------------

def test_reflection_lengths_of_named_elements():
    g = build_group(T("A3"))
    assert reflection_length(g, g.identity) == 0
    assert all(reflection_length(g, s) == 1 for s in g.reflections)
    assert reflection_length(g, coxeter_element(g)) == 3


def test_reflection_length_rejects_foreign_elements():
    g = build_group(T("A2"))
    with pytest.raises(ValueError, match="not in A2"):
        reflection_length(g, ((1, 2), (3, 4)))


def test_coxeter_element_orders():
    for spec, h in (("A2", 3), ("B2", 4), ("G2", 6), ("I2(5)", 5)):
        g = build_group(T(spec))
        c = coxeter_element(g)
        power = c
        order = 1
        while power != g.identity:
            power = g.mult(power, c)
            order += 1
        assert order == h
    d4 = build_group(T("D4"))
    assert reflection_length(d4, coxeter_element(d4)) == 4


# -- the interval -----------------------------------------------------------------

@pytest.mark.parametrize(
    "spec, size",
    [
        ("A1", 2),
        ("A2", 5),
        ("A3", 14),
        ("B3", 20),
        ("D4", 50),
        ("I2(3)", 5),
        ("I2(7)", 9),
        ("I2(12)", 14),
    ],
)
def test_interval_sizes(spec, size):
    ncl = nc_interval(build_group(T(spec)))
    assert len(ncl) == size


def test_interval_shape():
    ncl = nc_interval(build_group(T("B3")))
    assert ncl.grades[0] == 0
    assert ncl.grades[-1] == 3
    assert ncl.grades == tuple(sorted(ncl.grades))
    assert len(ncl.atoms) == 9  # every reflection sits below the Coxeter element
    # bottom below everything, top above everything
    n = len(ncl)
    assert ncl.up[0] == (1 << n) - 1
    assert ncl.down[n - 1] == (1 << n) - 1


def test_interval_rejects_a_non_coxeter_element():
    g = build_group(T("A3"))
    with pytest.raises(ValueError, match="not a Coxeter element"):
        nc_interval(g, coxeter=g.reflections[0])


def test_join_and_meet_tables_are_bounds():
    ncl = nc_interval(build_group(T("A3")))
    n = len(ncl)
    for a in range(n):
        for b in range(n):
            j = ncl.join_table[a][b]
            m = ncl.meet_table[a][b]
            assert ncl.up[a] & (1 << j) and ncl.up[b] & (1 << j)
            assert ncl.down[a] & (1 << m) and ncl.down[b] & (1 << m)


# -- Mobius sweep and the headline oracle -------------------------------------------

def test_mobius_of_named_elements():
    ncl = nc_interval(build_group(T("I2(7)")))
    mu = mobius(ncl)
    assert mu[ncl.elements[0]] == 1
    assert all(mu[ncl.elements[i]] == -1 for i in ncl.atoms)
    assert mu[ncl.coxeter] == 6


@pytest.mark.parametrize(
    "spec",
    ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "G2", "F4"]
    + [f"I2({p})" for p in range(3, 13)],
)
def test_characteristic_poly_matches_the_closed_form(spec):
    ctype = T(spec)
    ncl = nc_interval(build_group(ctype))
    assert characteristic_poly(ncl) == skew_growth(ctype).poly


def test_characteristic_poly_examples():
    assert characteristic_poly(nc_interval(build_group(T("A1")))) == IntPoly((1, -1))
    assert characteristic_poly(nc_interval(build_group(T("I2(6)")))) == IntPoly((1, -6, 5))
    assert characteristic_poly(nc_interval(build_group(T("A3")))) == IntPoly((1, -6, 10, -5))


# -- subset fold ----------------------------------------------------------------------

@pytest.mark.parametrize(
    "spec",
    ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "G2", "I2(3)", "I2(9)"],
)
def test_subset_fold_equals_the_mobius_route(spec):
    ncl = nc_interval(build_group(T(spec)))
    assert skew_growth_by_subsets(ncl) == characteristic_poly(ncl)


def test_subset_fold_respects_the_limit():
    ncl = nc_interval(build_group(T("B4")))
    with pytest.raises(ValueError, match="Mobius route"):
        skew_growth_by_subsets(ncl, subset_limit=10)


@pytest.mark.parametrize("spec", ["A3", "B3", "D4", "I2(6)"])
def test_per_element_mobius_identity(spec):
    ncl = nc_interval(build_group(T(spec)))
    assert verify_mobius_identity(ncl) is True


# -- independence of the Coxeter element choice ------------------------------------------

@pytest.mark.parametrize("spec", ["A2", "B2", "A3", "B3", "D4"])
def test_lattice_does_not_depend_on_the_coxeter_element(spec):
    g = build_group(T(spec))
    ncl = nc_interval(g)
    seen = {characteristic_poly(ncl)}
    for order in (range(len(g.generators)), reversed(range(len(g.generators)))):
        c = g.identity
        for i in order:
            c = g.mult(c, g.generators[i])
        other = nc_interval(g, coxeter=c)
        assert len(other) == len(ncl)
        assert other.grades == ncl.grades
        seen.add(characteristic_poly(other))
    assert len(seen) == 1


# -- cache round-trip -----------------------------------------------------------------------

def test_lattice_round_trips_through_json(tmp_path):
    ncl = nc_interval(build_group(T("A3")))
    path = tmp_path / "A3.json"
    save_lattice(ncl, path)
    loaded = load_lattice(path)
    assert loaded.ctype == ncl.ctype
    assert loaded.elements == ncl.elements
    assert loaded.grades == ncl.grades
    assert loaded.join_table == ncl.join_table
    assert characteristic_poly(loaded) == characteristic_poly(ncl)
    assert verify_mobius_identity(loaded)


def test_dihedral_lattice_round_trips_through_json(tmp_path):
    ncl = nc_interval(build_group(T("I2(5)")))
    path = tmp_path / "I2_5.json"
    save_lattice(ncl, path)
    loaded = load_lattice(path)
    assert loaded.elements == ncl.elements
    assert characteristic_poly(loaded) == characteristic_poly(ncl)
