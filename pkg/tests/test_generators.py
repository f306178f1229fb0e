import itertools

import numpy as np
import pytest

from nncert.analysis import chsh, postselected_chsh
from nncert.corr import check_s2, marginalize, mirror, validate
from nncert.generators import (
    DETERMINISTIC_STRATEGIES,
    FritzSide,
    LauandParams,
    MixtureParams,
    PostSelectionParams,
    gen_entanglement_swapping,
    gen_fritz,
    gen_local_test,
    gen_local_test_quantum,
    gen_mnn1,
    gen_mnn1_quantum,
    gen_mnn2,
    gen_post_selection_box,
    gen_pr_box,
    gen_random_classical,
    gen_random_degenerate,
)

SQRT2 = np.sqrt(2.0)


class TestPrBox:
    def test_perfect_box_table(self):
        p = gen_pr_box(1.0)
        assert p[0, 0, 0, 0] == pytest.approx(0.5)
        assert p[0, 0, 1, 1] == pytest.approx(0.5)
        assert p[0, 0, 0, 1] == 0.0 and p[0, 0, 1, 0] == 0.0

    def test_zero_visibility_is_uniform(self):
        assert np.allclose(gen_pr_box(0.0), 0.25)

    def test_chsh_is_four_v(self):
        # independent check: direct summation of the defining formula
        for v in (0.3, 1 / SQRT2, 0.9):
            brute = sum((-1.0) ** (x * y) * (-1.0) ** (a + b) * (1 + v * (-1) ** (a + b + x * y)) / 4
                        for x, y, a, b in itertools.product(range(2), repeat=4))
            assert brute == pytest.approx(4 * v)
            assert chsh(gen_pr_box(v)).value == pytest.approx(4 * v, abs=1e-12)

    def test_uniform_marginals(self):
        p = gen_pr_box(0.7)
        assert np.allclose(p.sum(axis=3), 0.5)
        assert np.allclose(p.sum(axis=2), 0.5)

    def test_range(self):
        with pytest.raises(ValueError):
            gen_pr_box(1.1)


class TestPostSelectionBox:
    def test_slices_at_zero_visibility(self):
        p = gen_post_selection_box(0.0, 0.25)
        assert np.allclose(p.values[:, :, :, 0, :], 1 / 16)
        assert np.allclose(p.values[:, :, :, 1, :], 3 / 16)

    def test_postselected_perfect_pr(self):
        p = gen_post_selection_box(1.0, 0.25)
        assert postselected_chsh(p, 0).value == pytest.approx(4.0, abs=1e-12)

    def test_equals_entanglement_swapping(self):
        ps = gen_post_selection_box(1 / SQRT2, 0.25)
        es = gen_entanglement_swapping(1.0)
        assert np.abs(ps.values - es.values).max() <= 1e-10

    def test_bob_marginal_is_pps(self):
        for pps in (0.1, 0.25, 0.4):
            p = gen_post_selection_box(0.5, pps)
            for x, z in itertools.product(range(2), repeat=2):
                m = marginalize(p, {"b"}, {"x": x, "z": z})
                assert m[0] == pytest.approx(pps, abs=1e-12)

    def test_illegal_combination_raises(self):
        with pytest.raises(ValueError, match="negativity"):
            gen_post_selection_box(1.0, 0.6)
        with pytest.raises(ValueError):
            PostSelectionParams(0.9, 0.55)
        # boundary case is legal: the b=1 block just touches zero
        p = gen_post_selection_box(1.0, 0.5)
        assert validate(p).is_valid


class TestLocalTest:
    def test_table_values(self):
        p = gen_local_test()
        assert p.values[0, 0, 0, 0, 0] == pytest.approx(0.25)  # x+c even, a=b
        assert p.values[0, 0, 0, 1, 0] == 0.0                  # x+c even, a!=b
        assert p.values[0, 0, 0, 0, 1] == pytest.approx(0.125)  # x+c odd
        assert validate(p).is_valid

    def test_quantum_realization_reproduces_table(self):
        q = gen_local_test_quantum(1.0)
        assert np.abs(q.values - gen_local_test().values).max() <= 1e-12

    def test_noisy_realization_interpolates_to_uniform_correlators(self):
        q = gen_local_test_quantum(0.0)
        # at v=0 the A-B pair is uncorrelated: p(a,b|x,c) = 1/4 throughout
        assert np.allclose(q.values, 0.125)


class TestEntanglementSwapping:
    def test_zero_visibility(self):
        p = gen_entanglement_swapping(0.0)
        assert np.allclose(p.values[:, :, :, 0, :], 1 / 16, atol=1e-12)

    def test_visibility_maps_to_pr_visibility(self):
        # both sources at visibility v give the post-selection box at V = v^2/sqrt(2)
        for v in (0.6, 0.9):
            es = gen_entanglement_swapping(v)
            ps = gen_post_selection_box(v * v / SQRT2, 0.25)
            assert np.abs(es.values - ps.values).max() <= 1e-12

    def test_postselected_chsh_maximal(self):
        val = postselected_chsh(gen_entanglement_swapping(1.0), 0)
        assert val.value == pytest.approx(2 * SQRT2, abs=1e-10)


class TestFritz:
    def test_charlie_marginal_uniform_both_sides(self):
        for side in (FritzSide.R, FritzSide.L):
            p = gen_fritz(side, 1.0)
            for z in range(2):
                assert np.allclose(marginalize(p, {"c"}, {"z": z}), [0.5, 0.5], atol=1e-12)

    def test_side_l_is_exact_mirror(self):
        r = gen_fritz(FritzSide.R, 0.8)
        l = gen_fritz(FritzSide.L, 0.8)
        assert np.array_equal(mirror(r).values, l.values)

    def test_accepts_string_side(self):
        assert np.array_equal(gen_fritz("L", 1.0).values, gen_fritz(FritzSide.L, 1.0).values)

    def test_in_s2(self):
        assert check_s2(gen_fritz("R", 1.0), 1e-9).in_s2


class TestMixtures:
    def test_mu_zero_is_local_test(self):
        p = gen_mnn1(0.0, 1 / SQRT2, 0.25)
        assert np.allclose(p.values, gen_local_test().values)

    def test_mu_one_is_post_selection_box(self):
        p = gen_mnn1(1.0, 1.0, 0.25)
        assert np.allclose(p.values, gen_post_selection_box(1.0, 0.25).values)

    def test_quantum_flavor_at_full_visibility(self):
        q = gen_mnn1_quantum(0.65, 1.0)
        a = gen_mnn1(0.65, 1 / SQRT2, 0.25)
        assert np.abs(q.values - a.values).max() <= 1e-10

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            gen_mnn1(1.2, 0.5, 0.25)
        with pytest.raises(ValueError):
            MixtureParams(-0.1)


class TestMnn2:
    def test_mirror_maps_theta_to_complement(self):
        for theta in (np.pi / 8, 0.3, np.pi / 3):
            m = mirror(gen_mnn2(theta, 1.0))
            twin = gen_mnn2(np.pi / 2 - theta, 1.0)
            assert np.abs(m.values - twin.values).max() <= 1e-12

    def test_symmetric_point(self):
        p = gen_mnn2(np.pi / 4, 0.9)
        assert np.abs(p.values - mirror(p).values).max() <= 1e-12

    def test_theta_range(self):
        with pytest.raises(ValueError):
            gen_mnn2(-0.1, 1.0)
        with pytest.raises(ValueError):
            LauandParams(2.0)


class TestGeneratorInvariants:
    def test_every_generator_valid_and_in_s2(self):
        rng = np.random.default_rng(9)
        samples = [gen_local_test(), gen_entanglement_swapping(1.0)]
        for _ in range(5):
            v = rng.uniform(0, 1)
            samples += [
                gen_post_selection_box(rng.uniform(0, 1), rng.uniform(0, 0.5)),
                gen_entanglement_swapping(v),
                gen_local_test_quantum(v),
                gen_fritz("R", v),
                gen_fritz("L", v),
                gen_mnn1(rng.uniform(0, 1), rng.uniform(0, 1), 0.25),
                gen_mnn1_quantum(rng.uniform(0, 1), v),
                gen_mnn2(rng.uniform(0, np.pi / 2), v),
            ]
        for p in samples:
            assert validate(p).is_valid
            assert check_s2(p, 1e-9).in_s2

    def test_random_classical_matches_its_model(self):
        rng = np.random.default_rng(21)
        corr, (q1, q2, p_b1) = gen_random_classical(rng, return_model=True)
        rebuilt = np.zeros((2, 2, 2, 2, 2))
        for l1, l2 in itertools.product(range(4), repeat=2):
            for x, z in itertools.product(range(2), repeat=2):
                a = DETERMINISTIC_STRATEGIES[l1][x]
                c = DETERMINISTIC_STRATEGIES[l2][z]
                rebuilt[x, z, a, 1, c] += q1[l1] * q2[l2] * p_b1[l1, l2]
                rebuilt[x, z, a, 0, c] += q1[l1] * q2[l2] * (1 - p_b1[l1, l2])
        assert np.array_equal(rebuilt, corr.values)

    def test_degenerate_forms_valid(self):
        rng = np.random.default_rng(22)
        for kind in ("constant_b", "constant_c", "b_then_a"):
            for _ in range(5):
                p = gen_random_degenerate(kind, rng)
                assert validate(p).is_valid
        with pytest.raises(ValueError):
            gen_random_degenerate("nope", rng)
