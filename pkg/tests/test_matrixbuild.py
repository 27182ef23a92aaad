import math

import numpy as np
import pytest

from kkatom.matrixbuild import (BasisSpec, alpha_geometric,
                                build_compact_exponential, build_compact_hydrogen,
                                build_toy_exponential, build_toy_hydrogen,
                                dump_hamiltonian, yukawa_element_closed,
                                yukawa_element_quad)
from kkatom.potential import ModelConfig


class TestBasisSpec:
    def test_hydrogen_validation(self):
        BasisSpec.hydrogen(3, 2)
        with pytest.raises(ValueError):
            BasisSpec.hydrogen(2, 2)
        with pytest.raises(ValueError):
            BasisSpec.hydrogen(3, Q=-1)

    def test_exponential_validation(self):
        BasisSpec.exponential((0.5, 1.0, 2.0))
        with pytest.raises(ValueError):
            BasisSpec.exponential((1.0, 1.0))   # not strictly increasing
        with pytest.raises(ValueError):
            BasisSpec.exponential((-1.0, 2.0))
        with pytest.raises(ValueError):
            BasisSpec(family="exponential", alphas=(1.0, 2.0), l=1)
        with pytest.raises(ValueError):
            BasisSpec(family="plane-wave")

    def test_index_map_q_major(self):
        spec = BasisSpec.hydrogen(3, 1, Q=1)
        assert spec.dim == 6
        assert spec.index_map() == ((2, -1), (3, -1), (2, 0), (3, 0), (2, 1), (3, 1))

    def test_toy_map(self):
        spec = BasisSpec.exponential((0.1, 0.2))
        assert spec.index_map() == ((1, 0), (2, 0))


class TestYukawaElements:
    def test_quad_hand_values(self):
        # 2g int r^2 (2e^-r)^2 e^(-mu r)/r dr = 8g/(2+mu)^2
        assert yukawa_element_quad(1, 1, 0, 1.0, 0.0) == pytest.approx(2.0, abs=1e-10)
        assert yukawa_element_quad(1, 2, 0, 1.0, 0.0) == pytest.approx(
            8 * math.sqrt(2) / 27, abs=1e-10)

    def test_zero_coupling(self):
        assert yukawa_element_quad(3, 5, 1, 0.0, 7.0) == 0.0
        assert yukawa_element_closed(3, 5, 1, 0.0, 7.0) == 0.0

    def test_closed_hand_values(self):
        assert yukawa_element_closed(1, 1, 0, 1.0, 1.0) == pytest.approx(8.0 / 9.0, rel=1e-13)
        assert yukawa_element_closed(1, 2, 0, 1.0, 0.0) == pytest.approx(
            8 * math.sqrt(2) / 27, rel=1e-13)

    def test_symmetric_in_n(self):
        for n in range(1, 11):
            for nprime in range(n, 11):
                a = yukawa_element_closed(n, nprime, 0, 1.0, 0.7)
                b = yukawa_element_closed(nprime, n, 0, 1.0, 0.7)
                assert a == pytest.approx(b, rel=1e-12)

    @pytest.mark.parametrize("l", [0, 1, 2])
    @pytest.mark.parametrize("mu", [0.0, 1.0, 40.0])
    def test_closed_matches_quadrature(self, l, mu):
        for n in range(l + 1, 7):
            for nprime in range(n, 7):
                closed = yukawa_element_closed(n, nprime, l, 1.0, mu)
                ref = yukawa_element_quad(n, nprime, l, 1.0, mu)
                assert abs(closed - ref) < 1e-9 * max(1.0, abs(ref)), \
                    f"n={n} n'={nprime} l={l} mu={mu}"

    def test_invalid_quantum_numbers(self):
        with pytest.raises(ValueError):
            yukawa_element_closed(1, 1, 1, 1.0, 0.0)


class TestToyBuilders:
    def test_hydrogen_free_is_diagonal(self):
        pair = build_toy_hydrogen(5, 0, g=0.0)
        np.testing.assert_allclose(pair.H, np.diag([-1.0 / n**2 for n in range(1, 6)]))
        assert pair.S is None

    def test_hydrogen_one_by_one(self):
        pair = build_toy_hydrogen(1, 0, g=1.0, mu=2.0)
        assert pair.H[0, 0] == pytest.approx(-1.5, rel=1e-14)

    def test_hydrogen_exact_symmetry(self):
        pair = build_toy_hydrogen(8, 1, g=1.0, mu=0.3)
        assert np.abs(pair.H - pair.H.T).max() == 0.0

    def test_exponential_single_ground_state(self):
        pair = build_toy_exponential((1.0,), g=0.0)
        assert pair.H[0, 0] == pytest.approx(-1.0, rel=1e-14)
        assert pair.S[0, 0] == pytest.approx(1.0, rel=1e-15)

    def test_exponential_overlap_entry(self):
        pair = build_toy_exponential((1.0, 2.0), g=0.0)
        assert pair.S[0, 1] == pytest.approx((2 * math.sqrt(2) / 3) ** 3, rel=1e-14)

    def test_exponential_unit_diagonal(self):
        pair = build_toy_exponential(alpha_geometric(0.1, 1.5, 8), g=1.0, mu=0.5)
        np.testing.assert_allclose(np.diag(pair.S), 1.0, rtol=1e-14)
        assert np.abs(pair.H - pair.H.T).max() == 0.0
        assert np.abs(pair.S - pair.S.T).max() == 0.0


class TestAlphaGeometric:
    def test_values(self):
        assert alpha_geometric(0.1, 1.5, 1) == (0.1,)
        np.testing.assert_allclose(alpha_geometric(0.1, 1.5, 3), (0.1, 0.15, 0.225))
        assert alpha_geometric(1, 2, 4) == (1, 2, 4, 8)

    def test_validation(self):
        with pytest.raises(ValueError):
            alpha_geometric(0.0, 1.5, 3)
        with pytest.raises(ValueError):
            alpha_geometric(0.1, 1.0, 3)
        with pytest.raises(ValueError):
            alpha_geometric(0.1, 1.5, 0)


class TestCompactHydrogen:
    def test_diagonal_entries(self):
        cfg = ModelConfig(R=0.5)
        pair = build_compact_hydrogen(2, 0, 1, cfg)
        imap = pair.index_map
        i00 = imap.index((1, 0))
        i11 = imap.index((1, 1))
        assert pair.H[i00, i00] == pytest.approx(-1.0)          # any R
        assert pair.H[i11, i11] == pytest.approx(-1.0 + 4.0)    # -1/n^2 + q^2/R^2

    def test_mode_coupling_entry(self):
        cfg = ModelConfig(R=0.25)
        pair = build_compact_hydrogen(2, 0, 2, cfg)
        imap = pair.index_map
        v = pair.H[imap.index((1, 0)), imap.index((1, 1))]
        assert v == pytest.approx(-8.0 / 36.0, rel=1e-13)       # -8g/(2+|dq|/R)^2

    def test_no_radial_mixing_within_one_mode(self):
        cfg = ModelConfig(R=0.1)
        pair = build_compact_hydrogen(4, 0, 1, cfg)
        imap = pair.index_map
        for n in range(1, 5):
            for nprime in range(1, 5):
                if n != nprime:
                    assert pair.H[imap.index((n, 0)), imap.index((nprime, 0))] == 0.0

    def test_q_zero_reduces_to_free_toy(self):
        cfg = ModelConfig(R=0.17)
        pair = build_compact_hydrogen(6, 0, 0, cfg)
        toy = build_toy_hydrogen(6, 0, g=0.0)
        np.testing.assert_array_equal(pair.H, toy.H)

    def test_coupling_equals_yukawa_element(self):
        cfg = ModelConfig(R=0.2)
        pair = build_compact_hydrogen(3, 0, 3, cfg)
        imap = pair.index_map
        for k in (1, 2, 3):
            got = pair.H[imap.index((2, 0)), imap.index((3, k))]
            assert got == pytest.approx(-yukawa_element_closed(2, 3, 0, 1.0, k / 0.2),
                                        rel=1e-13)

    def test_exact_symmetry_and_dim(self):
        cfg = ModelConfig(R=0.25)
        pair = build_compact_hydrogen(5, 1, 4, cfg)
        assert pair.H.shape == (4 * 9, 4 * 9)
        assert np.abs(pair.H - pair.H.T).max() == 0.0


class TestCompactExponential:
    def test_pure_coulomb_entry(self):
        cfg = ModelConfig(R=0.3)
        pair = build_compact_exponential((1.0,), 0, cfg)
        assert pair.H[0, 0] == pytest.approx(-1.0, rel=1e-14)

    def test_coulomb_term_is_overlap_scaled(self):
        # -(2 sqrt(ai aj))^3/(ai+aj)^2 = -(ai+aj) S_ij
        al = (0.3, 0.9, 2.1)
        cfg = ModelConfig(R=0.1)
        pair = build_compact_exponential(al, 0, cfg)
        a = np.asarray(al)
        S = pair.S
        coulomb = -8.0 * np.multiply.outer(a, a) ** 1.5 / np.add.outer(a, a) ** 2
        np.testing.assert_allclose(coulomb, -np.add.outer(a, a) * S, rtol=1e-13)

    def test_overlap_block_diagonal(self):
        cfg = ModelConfig(R=0.2)
        pair = build_compact_exponential((0.5, 1.5), 2, cfg)
        ni = 2
        blocks = pair.S.reshape(5, ni, 5, ni)
        for a in range(5):
            for b in range(5):
                if a == b:
                    np.testing.assert_array_equal(blocks[a, :, b, :], blocks[0, :, 0, :])
                else:
                    assert np.abs(blocks[a, :, b, :]).max() == 0.0

    def test_q_zero_reduces_to_free_toy(self):
        cfg = ModelConfig(R=0.21)
        al = alpha_geometric(0.1, 1.5, 6)
        pair = build_compact_exponential(al, 0, cfg)
        toy = build_toy_exponential(al, g=0.0)
        np.testing.assert_allclose(pair.H, toy.H, atol=1e-14)
        np.testing.assert_array_equal(pair.S, toy.S)

    def test_exact_symmetry(self):
        cfg = ModelConfig(R=0.25)
        pair = build_compact_exponential(alpha_geometric(0.1, 1.5, 4), 3, cfg)
        assert np.abs(pair.H - pair.H.T).max() == 0.0
        assert np.abs(pair.S - pair.S.T).max() == 0.0


class TestDump:
    def test_header_and_shape(self, tmp_path):
        cfg = ModelConfig(R=0.25)
        pair = build_compact_hydrogen(2, 0, 1, cfg)
        path = tmp_path / "h.txt"
        dump_hamiltonian(pair, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "dim=6 basis=hydrogen R=0.25 N=2 Q=1"
        rows = [list(map(float, ln.split())) for ln in lines[1:]]
        np.testing.assert_allclose(np.array(rows), pair.H, rtol=1e-15)
