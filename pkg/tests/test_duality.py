"""Super-duality setups, spectrum matching and truncation reports."""

import random
from fractions import Fraction

import pytest

from supergaudin.duality import (
    build_setup,
    central_shift,
    cubic_spectrum_match,
    spectrum_match,
    truncation_check,
)
from supergaudin.indices import IndexSet
from supergaudin.modules import polynomial_module, singular_space, tensor_product
from supergaudin.partitions import Partition, all_partitions, hook_tableau_dimension
from supergaudin.weights import Weight, eps, hook_weight_to_partition


def test_build_setup_examples():
    setup = build_setup([[1], [1]], 1, 1, [1, 1])
    assert setup.k == 2
    assert setup.super_weight == eps(1) + eps("1/2")
    assert setup.classical_weight == Weight({1: 2})
    assert [f.total_dim for f in setup.super_factors] == [2, 2]
    assert [f.total_dim for f in setup.classical_factors] == [2, 2]

    setup2 = build_setup([[1], [1]], 1, 1, [2])
    assert setup2.classical_weight == eps("1/2") + eps("3/2")

    setup3 = build_setup([[2], [1]], 1, 1, [2, 1])
    # classical factors carry the conjugate highest weights
    assert setup3.classical_factors[0].highest_weight == eps("1/2") + eps("3/2")
    assert setup3.classical_weight == Weight({1: 2, 3: 1})


def test_build_setup_hook_errors():
    with pytest.raises(ValueError, match="hook"):
        build_setup([[2, 2]], 1, 1, [2, 2])
    with pytest.raises(ValueError, match="hook"):
        build_setup([[1], [1]], 1, 1, [2, 2])


def test_spectrum_match_worked_cases():
    setup = build_setup([[1], [1]], 1, 1, [1, 1])
    rep = spectrum_match(setup, [0, 1])
    assert rep["equal"] and rep["dims"] == {"super": 1, "classical": 1}
    # eigenvalue -1/(z1 - z2) = 1 on both sides: char poly t - 1
    assert rep["per_i"][0]["charpoly_super"] == ["-1", "1"]
    assert rep["per_i"][0]["charpoly_classical"] == ["-1", "1"]

    rep2 = spectrum_match(build_setup([[1], [1]], 1, 1, [2]), [0, 1])
    assert rep2["per_i"][0]["charpoly_super"] == ["1", "1"]

    rep3 = spectrum_match(build_setup([[1], [1], [1]], 1, 1, [2, 1]), [0, 1, 3])
    assert rep3["equal"] and rep3["dims"] == {"super": 2, "classical": 2}


def test_cubic_spectrum_match():
    rng = random.Random(6)
    for lams, mu, ell in (([[1], [1]], [1, 1], 2), ([[1], [1], [1]], [2, 1], 3)):
        setup = build_setup(lams, 1, 1, mu)
        z = [Fraction(k) for k in range(ell)]
        rep = cubic_spectrum_match(setup, z)
        assert rep["equal"], rep
    # vacuously equal on an empty singular space
    setup = build_setup([[1], [1]], 1, 1, [1, 1])
    rep = cubic_spectrum_match(setup, [0, 1])
    assert rep["dims"]["super"] == 1


def test_dimension_match_across_grid():
    """dim of the super singular space equals the classical one for all
    setups with few boxes (the computable face of the isomorphism)."""
    for m, n in ((1, 1), (2, 1), (1, 2)):
        shapes = [lam for lam in all_partitions(2, 1) if lam.hook_ok(m, n)]
        lists = [[a, b] for a in shapes for b in shapes if a.size + b.size <= 4]
        for lams in lists:
            total = sum(l.size for l in lams)
            for mu in all_partitions(total, total):
                if not mu.hook_ok(m, n):
                    continue
                setup = build_setup(lams, m, n, mu)
                sup, cla = setup.singular_pair()
                assert sup.dim == cla.dim, (m, n, lams, mu)


def test_multiplicity_accounting_on_both_sides():
    setup = build_setup([[1], [2]], 1, 1, [2, 1])
    for tensor, iset, hook_m, hook_n in (
        (setup.super_tensor, setup.super_set, setup.m, setup.n),
        (setup.classical_tensor, setup.classical_set, 0, setup.k),
    ):
        total = 0
        for w in tensor.weights():
            s = singular_space(tensor, w)
            if not s.dim:
                continue
            lam = hook_weight_to_partition(w, hook_m, hook_n)
            total += s.dim * hook_tableau_dimension(lam, hook_m, hook_n)
        assert total == tensor.total_dim


def test_per_mu_counts_agree_across_sides():
    setup = build_setup([[1], [1], [1]], 1, 1, [2, 1])
    total = sum(l.size for l in setup.partitions)
    for mu in all_partitions(total, total):
        if not mu.hook_ok(1, 1):
            continue
        s = build_setup(list(setup.partitions), 1, 1, mu)
        sup, cla = s.singular_pair()
        assert sup.dim == cla.dim


def test_central_shift_examples():
    z = [Fraction(0), Fraction(1)]
    assert central_shift(0, 0, [1, 1], z, 1) == 0
    assert central_shift(1, 0, [1, 1], z, 1) == -1
    assert central_shift(1, 1, [1, 1], z, 1) == 0


def test_truncation_check_reports():
    big_set = IndexSet.classical(0, 3)
    mod = polynomial_module(big_set, Partition([2]))
    rep = truncation_check(mod, IndexSet.classical(0, 2))
    assert rep["expected"] == "irreducible" and rep["equal"]
    rep_zero = truncation_check(mod, IndexSet.classical(0, 1))
    assert rep_zero["expected"] == "zero" and rep_zero["equal"]
    rep_same = truncation_check(mod, big_set)
    assert rep_same["equal"]
