import numpy as np
import pytest

from primeframes.eigen import jacobi_eigh
from primeframes.errors import ZeroWindowError
from primeframes.frames import (
    analyze, brute_force_energy, characterize_subgroups, dual_frame, frame_criterion, frame_operator,
    frame_spectrum, gamma, norm_formula_coset, norm_formula_ffs, y_matrix,
)
from primeframes.spectral import Domain, Signal, dft, idft, norm2_sq
from primeframes.wavelet import WaveletSystem, all_coefficients
from primeframes.zmod import divisors_of_group_order, find_generator, subgroup_of_order

from conftest import SMALL_PRIMES, SWEEP_PRIMES, random_signal, sparse_window

P13_SUPPORT = [0, 2, 3, 8, 11, 12]


def lam_min(sys_):
    y = sys_.window
    unit = WaveletSystem(y.replace(y.values / np.sqrt(norm2_sq(y))), sys_.subgroup)
    return jacobi_eigh(frame_operator(unit), vectors=False).eigenvalues[0]


def reference_window_13(ctx, seed=13):
    return sparse_window(ctx, np.random.default_rng(seed), 0, support=P13_SUPPORT)


def test_frame_operator_zero_window(ctx7):
    S = frame_operator(WaveletSystem.unchecked(Signal.zeros(ctx7), subgroup_of_order(ctx7, 3)))
    assert np.all(S == 0)


@pytest.mark.parametrize("p", [5, 7, 13])
def test_frame_operator_hermitian_trace(p, rng):
    ctx = find_generator(p)
    for M in divisors_of_group_order(ctx):
        sys_ = WaveletSystem(random_signal(ctx, rng), subgroup_of_order(ctx, M))
        S = frame_operator(sys_)
        assert np.max(np.abs(S - S.conj().T)) <= 1e-12 * max(1.0, np.abs(S).max())
        assert np.trace(S).real == pytest.approx(M * p * norm2_sq(sys_.window), rel=1e-12)
        assert np.linalg.eigvalsh(S).min() > -1e-10 * np.abs(S).max()
        # S x = sum <x, v> v
        x = random_signal(ctx, rng)
        coeffs = all_coefficients(x, sys_).reshape(-1)
        assert np.allclose(S @ x.values, coeffs @ sys_.vectors(), atol=1e-10 * np.abs(S).max())


def test_frame_operator_parseval_window(ctx7):
    ys = idft(Signal(ctx7, [1 / np.sqrt(21), 1 / np.sqrt(7), 0, 1 / np.sqrt(7), 0, 0, 0], Domain.FREQ))
    S = frame_operator(WaveletSystem(ys, subgroup_of_order(ctx7, 3)))
    assert np.max(np.abs(S - np.eye(7))) <= 1e-9


def test_analyze_parseval_example(ctx7):
    ys = idft(Signal(ctx7, [1 / np.sqrt(21), 1 / np.sqrt(7), 0, 1 / np.sqrt(7), 0, 0, 0], Domain.FREQ))
    rep = analyze(WaveletSystem(ys, subgroup_of_order(ctx7, 3)))
    assert rep.lower_bound == pytest.approx(1, abs=1e-8)
    assert rep.upper_bound == pytest.approx(1, abs=1e-8)
    assert rep.is_frame and rep.is_tight and rep.is_parseval and rep.is_equal_norm
    assert rep.redundancy == 3 and rep.vector_count == 21 and rep.tolerance_used == 1e-8


def test_analyze_dc_free_window_is_not_frame(ctx7):
    y = Signal(ctx7, [1, -1, 0, 0, 0, 0, 0])
    assert abs(dft(y)[0]) < 1e-15
    for M in (1, 2, 3, 6):
        sys_ = WaveletSystem(y, subgroup_of_order(ctx7, M))
        rep = analyze(sys_)
        assert not rep.is_frame
        assert abs(rep.lower_bound) < 1e-12
        assert np.linalg.eigvalsh(frame_operator(sys_)).min() < 1e-12
        assert not frame_criterion(sys_).is_frame


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_full_support_window_is_frame_for_all_subgroups(p, rng):
    ctx = find_generator(p)
    y = sparse_window(ctx, rng, 1.0, support=range(p))
    for M in divisors_of_group_order(ctx):
        sys_ = WaveletSystem(y, subgroup_of_order(ctx, M))
        assert analyze(sys_).is_frame
        assert frame_criterion(sys_).is_frame
        assert np.linalg.eigvalsh(frame_operator(sys_)).min() > 1e-6


def test_analyze_rescales_bounds(ctx7, rng):
    y = random_signal(ctx7, rng)
    H = subgroup_of_order(ctx7, 2)
    r1 = analyze(WaveletSystem(y, H))
    r2 = analyze(WaveletSystem(y.replace(5 * y.values), H))
    assert r2.lower_bound == pytest.approx(25 * r1.lower_bound, rel=1e-10)
    assert r2.upper_bound == pytest.approx(25 * r1.upper_bound, rel=1e-10)
    ev = np.linalg.eigvalsh(frame_operator(WaveletSystem(y, H)))
    assert r1.lower_bound == pytest.approx(ev[0], rel=1e-9)
    assert r1.upper_bound == pytest.approx(ev[-1], rel=1e-9)
    assert r1.lower_bound <= r1.upper_bound


@pytest.mark.parametrize("p", [7, 13])
def test_rayleigh_quotients_between_bounds(p, rng):
    ctx = find_generator(p)
    sys_ = WaveletSystem(random_signal(ctx, rng), subgroup_of_order(ctx, 2))
    rep = analyze(sys_)
    S = frame_operator(sys_)
    for _ in range(100):
        x = random_signal(ctx, rng).values
        q = np.vdot(x, S @ x).real / np.vdot(x, x).real
        assert rep.lower_bound - 1e-8 <= q <= rep.upper_bound + 1e-8


def test_dual_frame_reconstructs(ctx13, rng):
    sys_ = WaveletSystem(random_signal(ctx13, rng), subgroup_of_order(ctx13, 3))
    x = random_signal(ctx13, rng)
    coeffs = all_coefficients(x, sys_).reshape(-1)
    assert np.allclose(coeffs @ dual_frame(sys_), x.values, atol=1e-9)


# -- closed forms --------------------------------------------------------------

@pytest.mark.parametrize("p", SWEEP_PRIMES)
def test_norm_formulas_match_brute_force(p):
    rng = np.random.default_rng(100 + p)
    ctx = find_generator(p)
    for M in divisors_of_group_order(ctx):
        H = subgroup_of_order(ctx, M)
        for _ in range(5):
            x = random_signal(ctx, rng)
            sys_ = WaveletSystem(random_signal(ctx, rng), H)
            brute = float(np.sum(np.abs(all_coefficients(x, sys_)) ** 2))
            assert brute == pytest.approx(brute_force_energy(x, sys_), rel=1e-12)
            assert norm_formula_ffs(x, sys_) == pytest.approx(brute, rel=1e-8)
            assert norm_formula_coset(x, sys_) == pytest.approx(brute, rel=1e-8)
            assert norm_formula_coset(x, sys_) == pytest.approx(norm_formula_ffs(x, sys_), rel=1e-10)


def test_norm_formula_zero_x(ctx7, rng):
    sys_ = WaveletSystem(random_signal(ctx7, rng), subgroup_of_order(ctx7, 3))
    assert norm_formula_ffs(Signal.zeros(ctx7), sys_) == 0
    assert norm_formula_coset(Signal.zeros(ctx7), sys_) == 0


def test_norm_formula_full_group_has_no_remainder(ctx7, rng):
    H = subgroup_of_order(ctx7, 6)
    y, x = random_signal(ctx7, rng), random_signal(ctx7, rng)
    yh2 = np.abs(dft(y).values) ** 2
    xh2 = np.abs(dft(x).values) ** 2
    two_terms = 7 * (6 * yh2[0] * xh2[0] + yh2[1:].sum() * xh2[1:].sum())
    assert norm_formula_ffs(x, WaveletSystem(y, H)) == pytest.approx(two_terms, rel=1e-13)


def test_gamma_is_constant_on_cosets(ctx13, rng):
    yh = dft(random_signal(ctx13, rng)).values
    H = subgroup_of_order(ctx13, 3)
    for coset in H.cosets:
        vals = [gamma(yh, H, l) for l in coset]
        assert np.allclose(vals, vals[0], rtol=1e-13)
        assert vals[0] == pytest.approx(np.sum(np.abs(yh[list(coset)]) ** 2), rel=1e-13)


def test_p7_example_energy_reduces_to_norm(ctx7, rng):
    ys = idft(Signal(ctx7, [1 / np.sqrt(21), 1 / np.sqrt(7), 0, 1 / np.sqrt(7), 0, 0, 0], Domain.FREQ))
    sys_ = WaveletSystem(ys, subgroup_of_order(ctx7, 3))
    for _ in range(20):
        x = random_signal(ctx7, rng)
        assert norm_formula_coset(x, sys_) == pytest.approx(norm2_sq(x), rel=1e-12)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_frame_spectrum_matches_eigenvalues(p, rng):
    ctx = find_generator(p)
    for M in divisors_of_group_order(ctx):
        sys_ = WaveletSystem(random_signal(ctx, rng), subgroup_of_order(ctx, M))
        S = frame_operator(sys_)
        assert np.allclose(np.sort(frame_spectrum(sys_)), np.linalg.eigvalsh(S), atol=1e-9 * np.abs(S).max())


# -- criterion, Y matrix, characterization ----------------------------------

def test_criterion_p7_example(ctx7):
    y = idft(Signal(ctx7, [1, 1, 0, 1, 0, 0, 0], Domain.FREQ))
    res = frame_criterion(WaveletSystem(y, subgroup_of_order(ctx7, 3)))
    assert res.is_frame
    # coset 0 hit at eps^0 * 1, coset 1 = {3, 6, 5} hit at 3 = 3 * 1
    assert res.witnesses == (1, 1)


def test_criterion_p13_examples(ctx13):
    y = reference_window_13(ctx13)
    ok = frame_criterion(WaveletSystem(y, subgroup_of_order(ctx13, 3)))
    assert ok.is_frame and len(ok.witnesses) == 4
    yh = dft(y).values
    for t, m in enumerate(ok.witnesses):
        assert abs(yh[ctx13.power(t) * m % 13]) > 1e-3
    bad = frame_criterion(WaveletSystem(y, subgroup_of_order(ctx13, 4)))
    assert not bad.is_frame
    assert bad.failed_condition == "ii" and bad.failed_coset == 2


def test_criterion_zero_window(ctx7):
    with pytest.raises(ZeroWindowError):
        frame_criterion(WaveletSystem.unchecked(Signal.zeros(ctx7), subgroup_of_order(ctx7, 3)))


def test_y_matrix_p13_examples(ctx13):
    y = reference_window_13(ctx13)
    Y1 = y_matrix(WaveletSystem(y, subgroup_of_order(ctx13, 3)))
    assert Y1.shape == (4, 3)
    assert Y1.positions.tolist() == [[1, 3, 9], [2, 6, 5], [4, 12, 10], [8, 11, 7]]
    assert Y1.nonzero_pattern().astype(int).tolist() == [[0, 1, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]
    assert Y1.nonzero_rows() == 4
    Y4 = y_matrix(WaveletSystem(y, subgroup_of_order(ctx13, 4)))
    assert Y4.positions.tolist() == [[1, 8, 12, 5], [2, 3, 11, 10], [4, 6, 9, 7]]
    assert not Y4.nonzero_pattern()[2].any()
    assert Y4.nonzero_rows() == 2
    assert Y4.render().splitlines()[2].split() == ["·"] * 4


def test_y_matrix_entries_are_dft_samples(ctx13, rng):
    y = random_signal(ctx13, rng)
    yh = dft(y).values
    for M in divisors_of_group_order(ctx13):
        H = subgroup_of_order(ctx13, M)
        Y = y_matrix(WaveletSystem(y, H))
        for t in range(H.index):
            for r in range(M):
                assert Y.entries[t, r] == yh[ctx13.power(t + r * H.index)]


@pytest.mark.parametrize("p", SWEEP_PRIMES)
def test_criterion_agrees_with_spectrum(p):
    rng = np.random.default_rng(7 * p)
    ctx = find_generator(p)
    for M in divisors_of_group_order(ctx):
        H = subgroup_of_order(ctx, M)
        for _ in range(8):
            sys_ = WaveletSystem(sparse_window(ctx, rng, 0.4), H)
            crit = frame_criterion(sys_)
            Y = y_matrix(sys_)
            assert crit.is_frame == (lam_min(sys_) > 1e-8)
            assert crit.is_frame == (abs(dft(sys_.window)[0]) > 1e-9 and Y.nonzero_rows() == H.index)


def test_characterize_p13_example(ctx13):
    res = characterize_subgroups(ctx13, reference_window_13(ctx13))
    assert res.support_size == 6
    assert res.frame_subgroup_orders == [3, 6, 12]
    assert (2, 0) in res.lambda_set and (0, 1) not in res.lambda_set
    assert set(res.lambda_set) <= {(0, 0), (1, 0), (0, 1), (2, 0)}
    assert not res.disagreements
    assert 4 not in res.witnesses and set(res.witnesses) == {3, 6, 12}


@pytest.mark.parametrize("p", [5, 7, 13])
def test_characterize_full_support(p, rng):
    ctx = find_generator(p)
    res = characterize_subgroups(ctx, sparse_window(ctx, rng, 1.0, support=range(p)))
    assert res.frame_subgroup_orders == divisors_of_group_order(ctx)


def test_characterize_dc_free(ctx7):
    res = characterize_subgroups(ctx7, Signal(ctx7, [1, -1, 0, 0, 0, 0, 0]))
    assert res.frame_subgroup_orders == [] and res.lambda_set == []
    assert "condition (i)" in res.reason


@pytest.mark.parametrize("p", [q for q in SMALL_PRIMES if 3 <= q <= 31])
def test_characterize_matches_per_subgroup_criterion(p):
    rng = np.random.default_rng(31 * p)
    ctx = find_generator(p)
    divs = divisors_of_group_order(ctx)
    for density in (0.15, 0.3, 0.5):
        for _ in range(6):
            v = np.zeros(p, dtype=complex)
            v[0] = 1.0
            extra = rng.random(p) < density
            extra[0] = False
            v[extra] = rng.normal(size=extra.sum()) + 1j
            y = idft(Signal(ctx, v, Domain.FREQ))
            res = characterize_subgroups(ctx, y)
            direct = [M for M in divs if frame_criterion(WaveletSystem(y, subgroup_of_order(ctx, M))).is_frame]
            assert res.frame_subgroup_orders == direct
            assert not res.disagreements
            # upward closure in the divisor lattice
            for M in res.frame_subgroup_orders:
                assert all(Mp in res.frame_subgroup_orders for Mp in divs if Mp % M == 0)
            if p <= 13:
                spectral = [M for M in divs if lam_min(WaveletSystem(y, subgroup_of_order(ctx, M))) > 1e-8]
                assert spectral == direct


def test_characterization_result_serializes(ctx13):
    import json

    d = characterize_subgroups(ctx13, reference_window_13(ctx13)).to_dict()
    assert json.loads(json.dumps(d))["frame_subgroup_orders"] == [3, 6, 12]
