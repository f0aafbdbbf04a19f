import math

import numpy as np
import pytest

from spinbattery.floquet import (
    FloquetParams,
    battery_operator,
    charger_operator,
    evolve,
    kick_phases,
    rotate_partial,
)
from spinbattery.observables import (
    EnergyDistribution,
    average_power,
    bound_series,
    energy_populations,
    expectation,
    fisher_analytic,
    fisher_bound,
    fisher_discrete,
    instantaneous_power,
    kl_divergence,
    robertson_bound,
    variance,
)
from spinbattery.sectors import (
    HermitianOperator,
    SpinSector,
    StateVector,
    build_collective_operator,
    coherent_state,
    dicke_state,
)


def two_level(gap=1.0, lam=1.0):
    """Ground level at zero, excited at `gap`, transverse drive lam*sigma_x."""
    sector = SpinSector(1)
    h_b = HermitianOperator(sector, np.diag([0.0, gap]).astype(complex))
    h_c = HermitianOperator(sector, lam * np.array([[0, 1], [1, 0]], dtype=complex))
    return sector, h_b, h_c


def rabi_state(sector, lam, t):
    return StateVector(sector, np.array([math.cos(lam * t), -1j * math.sin(lam * t)]))


# --- expectation / variance -------------------------------------------------


def test_expectation_on_eigenstates():
    sector = SpinSector(6)
    jz = battery_operator(sector)
    for m in sector.m_values():
        assert expectation(jz, dicke_state(sector, m)) == pytest.approx(m, abs=1e-12)


def test_expectation_flipped_coherent():
    sector = SpinSector(7)
    jz = battery_operator(sector)
    assert expectation(jz, coherent_state(sector, math.pi, 0.0)) == pytest.approx(-sector.j, abs=1e-10)


def test_expectation_jx_on_poles():
    sector = SpinSector(5)
    jx = build_collective_operator(sector, "x")
    assert abs(expectation(jx, dicke_state(sector, sector.j))) <= 1e-12
    assert abs(expectation(jx, dicke_state(sector, -sector.j))) <= 1e-12


def test_sector_mismatch_rejected():
    jz = battery_operator(SpinSector(4))
    state = coherent_state(SpinSector(5), 1.0, 0.0)
    with pytest.raises(ValueError, match="mismatch"):
        expectation(jz, state)
    with pytest.raises(ValueError, match="mismatch"):
        variance(jz, state)


def test_variance_vanishes_on_eigenstates():
    sector = SpinSector(6)
    jz = battery_operator(sector)
    for m in (sector.j, 0.0, -sector.j):
        assert variance(jz, dicke_state(sector, m)) <= 1e-12


@pytest.mark.parametrize("n", [2, 4, 6])
def test_transverse_coherent_variance(n):
    # equatorial coherent state: Var(J_z) = j/2
    sector = SpinSector(n)
    state = coherent_state(sector, math.pi / 2, 0.0)
    assert variance(battery_operator(sector), state) == pytest.approx(sector.j / 2, abs=1e-10)


def test_transverse_variance_against_product_oracle():
    from spinbattery.bruteforce import build_full, product_state

    for n in (2, 4, 6):
        psi = product_state(n, math.pi / 2, 0.0)
        jz_full = build_full("z", n).matrix
        mean = np.vdot(psi, jz_full @ psi).real
        second = np.vdot(psi, jz_full @ jz_full @ psi).real
        assert second - mean**2 == pytest.approx(n / 4, abs=1e-12)


def test_variance_of_squared_operator_consistent_with_moments():
    sector = SpinSector(8)
    state = coherent_state(sector, 1.1, 0.4)
    jz = battery_operator(sector)
    jz2 = HermitianOperator(sector, jz.matrix @ jz.matrix)
    jz4 = HermitianOperator(sector, jz2.matrix @ jz2.matrix)
    direct = variance(jz2, state)
    from_moments = expectation(jz4, state) - expectation(jz2, state) ** 2
    assert direct == pytest.approx(from_moments, abs=1e-10)


def test_variance_never_negative():
    sector = SpinSector(4)
    jz = battery_operator(sector)
    assert variance(jz, dicke_state(sector, 1.0)) >= 0.0


# --- powers -------------------------------------------------------------------


def test_average_power_step_validation():
    sector = SpinSector(4)
    traj = evolve(coherent_state(sector, math.pi, 0.0), FloquetParams(beta=7.0), 5)
    h_b = battery_operator(sector)
    with pytest.raises(ValueError):
        average_power(traj, h_b, 0)
    with pytest.raises(ValueError):
        average_power(traj, h_b, 6)


def test_average_power_first_step_is_energy_gain():
    sector = SpinSector(6)
    traj = evolve(coherent_state(sector, math.pi, 0.0), FloquetParams(beta=7.0), 3)
    h_b = battery_operator(sector)
    gain = expectation(h_b, traj.state(1)) - expectation(h_b, traj.state(0))
    assert average_power(traj, h_b, 1) == pytest.approx(gain, abs=1e-12)


def test_average_power_zero_after_full_rotation_cycle():
    # without kicks, four quarter turns about y restore <J_z> (integer j)
    sector = SpinSector(4)
    traj = evolve(coherent_state(sector, math.pi, 0.0), FloquetParams(beta=0.0), 4)
    h_b = battery_operator(sector)
    assert abs(average_power(traj, h_b, 4)) <= 1e-10


def test_average_power_on_two_level_orbit():
    # stroboscopic samples of a transverse-drive orbit: P_avg(k) = gap*sin^2(lam*k*tau)/(k*tau)
    from spinbattery.floquet import Trajectory

    gap, lam, tau = 1.3, 0.4, 1.0
    sector, h_b, _ = two_level(gap, lam)
    params = FloquetParams(beta=0.0, tau=tau)
    snapshots = tuple((k, rabi_state(sector, lam, k * tau)) for k in range(9))
    traj = Trajectory(params, sector, snapshots)
    for step in (1, 3, 8):
        t = step * tau
        expected = gap * math.sin(lam * t) ** 2 / t
        assert average_power(traj, h_b, step) == pytest.approx(expected, abs=1e-12)


def test_instantaneous_power_vanishes_for_commuting_drive():
    sector = SpinSector(6)
    jz = battery_operator(sector)
    kick_term = HermitianOperator(sector, jz.matrix @ jz.matrix)
    state = coherent_state(sector, 1.2, 0.7)
    assert abs(instantaneous_power(state, kick_term, jz)) <= 1e-12


def test_instantaneous_power_matches_finite_difference():
    sector = SpinSector(8)
    h_b = battery_operator(sector)
    drive = charger_operator(sector, "between_kicks", beta=7.0)
    state = rotate_partial(coherent_state(sector, math.pi, 0.0), 0.37)
    h = 1e-5
    up = expectation(h_b, rotate_partial(state, h))
    # step backwards by rotating forward from an earlier state
    down_state = rotate_partial(coherent_state(sector, math.pi, 0.0), 0.37 - h)
    down = expectation(h_b, down_state)
    numeric = (up - down) / (2 * h)
    assert instantaneous_power(state, drive, h_b) == pytest.approx(numeric, abs=1e-6)


def test_instantaneous_power_rabi_closed_form():
    gap, lam = 2.3, 0.9
    sector, h_b, h_c = two_level(gap, lam)
    for t in (0.2, 0.9, 1.7):
        state = rabi_state(sector, lam, t)
        assert instantaneous_power(state, h_c, h_b) == pytest.approx(
            gap * lam * math.sin(2 * lam * t), abs=1e-12
        )


# --- Robertson bound ----------------------------------------------------------


def test_robertson_bound_zero_on_battery_eigenstate():
    sector, h_b, h_c = two_level()
    ground = StateVector(sector, np.array([1.0, 0.0], dtype=complex))
    assert robertson_bound(ground, h_b, h_c) <= 1e-12
    assert abs(instantaneous_power(ground, h_c, h_b)) <= 1e-12


def test_robertson_bound_saturates_on_rabi_orbit():
    gap, lam = 1.7, 1.3
    sector, h_b, h_c = two_level(gap, lam)
    for t in (0.3, 0.8, 1.1):
        state = rabi_state(sector, lam, t)
        power = instantaneous_power(state, h_c, h_b)
        assert robertson_bound(state, h_b, h_c) == pytest.approx(abs(power), abs=1e-10)


def test_robertson_bound_holds_on_kicked_trajectory():
    sector = SpinSector(8)
    traj = evolve(coherent_state(sector, math.pi, 0.0), FloquetParams(beta=7.0), 50)
    h_b = battery_operator(sector)
    drive = charger_operator(sector, "between_kicks", beta=7.0)
    for step in range(1, 51):
        state = traj.state(step)
        assert abs(instantaneous_power(state, drive, h_b)) <= robertson_bound(state, h_b, drive) + 1e-9


# --- energy populations -------------------------------------------------------


def test_populations_point_mass():
    sector = SpinSector(5)
    h_b = battery_operator(sector)
    dist = energy_populations(dicke_state(sector, -0.5), h_b)
    idx = np.argmax(dist.populations)
    assert dist.energies[idx] == pytest.approx(-0.5)
    assert dist.populations[idx] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_coherent_populations_are_binomial(n):
    theta = 1.05
    sector = SpinSector(n)
    dist = energy_populations(coherent_state(sector, theta, 0.0), battery_operator(sector))
    j = sector.j
    for energy, pop in zip(dist.energies, dist.populations):
        k = int(round(j + energy))
        expected = math.comb(n, k) * math.cos(theta / 2) ** (2 * k) * math.sin(theta / 2) ** (2 * (n - k))
        assert pop == pytest.approx(expected, abs=1e-10)


def test_kick_leaves_energy_distribution_alone():
    sector = SpinSector(8)
    state = coherent_state(sector, 2.0, 0.9)
    phases = kick_phases(sector, FloquetParams(beta=7.0))
    kicked = StateVector(sector, phases * state.amplitudes)
    h_b = battery_operator(sector)
    before = energy_populations(state, h_b)
    after = energy_populations(kicked, h_b)
    assert np.max(np.abs(before.populations - after.populations)) <= 1e-12


def test_population_grouping_merges_degenerate_levels():
    sector = SpinSector(2)
    h_b = HermitianOperator(sector, np.diag([0.0, 0.0, 1.0]).astype(complex))
    state = StateVector(sector, np.array([0.6, 0.8j, 0.0]))
    per_vec = energy_populations(state, h_b, grouping="per_eigenvector")
    assert per_vec.populations == pytest.approx([0.36, 0.64, 0.0], abs=1e-12)
    merged = energy_populations(state, h_b, grouping="per_distinct_energy")
    assert merged.energies == pytest.approx([0.0, 1.0])
    assert merged.populations == pytest.approx([1.0, 0.0], abs=1e-12)
    assert np.all(np.diff(merged.energies) > 0)


def test_populations_normalized_along_trajectory():
    sector = SpinSector(10)
    traj = evolve(coherent_state(sector, math.pi, 0.0), FloquetParams(beta=7.0), 50)
    h_b = battery_operator(sector)
    for step in range(51):
        dist = energy_populations(traj.state(step), h_b)
        assert abs(dist.populations.sum() - 1.0) <= 1e-10


# --- KL divergence -------------------------------------------------------------


def _dist(populations, energies=None, grouping="per_distinct_energy"):
    populations = np.asarray(populations, dtype=float)
    if energies is None:
        energies = np.arange(len(populations), dtype=float)
    return EnergyDistribution(np.asarray(energies, dtype=float), populations, grouping)


def test_kl_zero_for_identical():
    p = _dist([0.25, 0.75])
    assert kl_divergence(p, p) == 0.0


def test_kl_one_bit():
    p = _dist([1.0, 0.0])
    q = _dist([0.5, 0.5])
    assert kl_divergence(p, q, base="bits") == pytest.approx(1.0, abs=1e-12)
    assert kl_divergence(p, q, base="nats") == pytest.approx(math.log(2), abs=1e-12)


def test_kl_never_negative_for_near_identical_distributions():
    p = _dist([0.3 + 1e-13, 0.7 - 1e-13])
    q = _dist([0.3, 0.7])
    assert kl_divergence(p, q) >= 0.0


def test_kl_support_violation_is_infinite():
    p = _dist([0.9, 0.1])
    q = _dist([0.0, 1.0])
    assert math.isinf(kl_divergence(p, q))


def test_kl_rejects_mismatched_levels():
    p = _dist([0.5, 0.5], energies=[0.0, 1.0])
    q = _dist([0.5, 0.5], energies=[0.0, 2.0])
    with pytest.raises(ValueError):
        kl_divergence(p, q)
    r = _dist([0.5, 0.5], energies=[0.0, 1.0], grouping="per_eigenvector")
    with pytest.raises(ValueError):
        kl_divergence(p, r)


# --- Fisher information ---------------------------------------------------------


def test_fisher_analytic_rabi_constant():
    lam = 1.0
    for t in (0.3, 0.7, 1.2):
        p = np.array([math.cos(lam * t) ** 2, math.sin(lam * t) ** 2])
        rate = lam * math.sin(2 * lam * t)
        assert fisher_analytic(p, np.array([-rate, rate])) == pytest.approx(4 * lam**2, abs=1e-12)


def test_fisher_analytic_stationary_is_zero():
    assert fisher_analytic([0.4, 0.6], [0.0, 0.0]) == 0.0


def test_fisher_analytic_boundary_blowup():
    assert math.isinf(fisher_analytic([1.0, 0.0], [-0.1, 0.1]))


def test_fisher_analytic_validation():
    with pytest.raises(ValueError):
        fisher_analytic([0.5, 0.5], [0.1, -0.1, 0.0])
    with pytest.raises(ValueError):
        fisher_analytic([0.5, 0.6], [0.1, -0.1])
    with pytest.raises(ValueError):
        fisher_analytic([0.5, 0.5], [0.1, 0.1])


def test_fisher_discrete_zero_for_identical():
    p = _dist([0.3, 0.7])
    assert fisher_discrete(p, p, 1e-3) == 0.0


def test_fisher_discrete_matches_analytic():
    lam, t, dt = 1.0, 0.7, 1e-4
    now = _dist([math.cos(lam * t) ** 2, math.sin(lam * t) ** 2])
    nxt = _dist([math.cos(lam * (t + dt)) ** 2, math.sin(lam * (t + dt)) ** 2])
    estimate = fisher_discrete(nxt, now, dt)
    assert abs(estimate - 4 * lam**2) / (4 * lam**2) <= 1e-3


def test_fisher_discrete_error_shrinks_with_dt():
    lam, t = 1.0, 0.7
    errors = []
    for dt in (1e-2, 1e-3, 1e-4):
        now = _dist([math.cos(lam * t) ** 2, math.sin(lam * t) ** 2])
        nxt = _dist([math.cos(lam * (t + dt)) ** 2, math.sin(lam * (t + dt)) ** 2])
        errors.append(abs(fisher_discrete(nxt, now, dt) - 4 * lam**2))
    assert errors[0] > errors[1] > errors[2]


def test_fisher_discrete_turning_point_blowup():
    lam = 1.0
    t_star = math.pi / (2 * lam)
    for dt in (1e-2, 1e-3, 1e-4):
        now = _dist([math.cos(lam * t_star) ** 2, math.sin(lam * t_star) ** 2])
        nxt = _dist([math.cos(lam * (t_star + dt)) ** 2, math.sin(lam * (t_star + dt)) ** 2])
        assert math.isinf(fisher_discrete(nxt, now, dt))


def test_fisher_discrete_rejects_bad_dt():
    p = _dist([0.3, 0.7])
    with pytest.raises(ValueError):
        fisher_discrete(p, p, 0.0)


def test_fisher_time_reversal_symmetry():
    lam = 1.0
    for t in np.linspace(0.1, math.pi / 2 - 0.1, 9):
        mirrored = math.pi / lam - t

        def activity(tt):
            p = np.array([math.cos(lam * tt) ** 2, math.sin(lam * tt) ** 2])
            rate = lam * math.sin(2 * lam * tt)
            return fisher_analytic(p, np.array([-rate, rate]))

        assert abs(activity(t) - activity(mirrored)) <= 1e-10


# --- Fisher bound ---------------------------------------------------------------


def test_fisher_bound_zero_activity():
    sector, h_b, _ = two_level()
    state = rabi_state(sector, 1.0, 0.4)
    assert fisher_bound(state, h_b, 0.0) == 0.0


def test_fisher_bound_rejects_negative_activity():
    sector, h_b, _ = two_level()
    with pytest.raises(ValueError):
        fisher_bound(rabi_state(sector, 1.0, 0.4), h_b, -1.0)


def test_fisher_bound_infinite_activity():
    sector, h_b, _ = two_level()
    assert math.isinf(fisher_bound(rabi_state(sector, 1.0, 0.4), h_b, math.inf))


def test_fisher_bound_saturates_on_rabi_orbit():
    gap, lam = 1.0, 1.0
    sector, h_b, h_c = two_level(gap, lam)
    for t in (0.3, 0.8, 1.2):
        state = rabi_state(sector, lam, t)
        bound = fisher_bound(state, h_b, 4 * lam**2)
        power = instantaneous_power(state, h_c, h_b)
        assert bound == pytest.approx(abs(power), abs=1e-10)
        assert bound == pytest.approx(robertson_bound(state, h_b, h_c), abs=1e-10)


def test_fisher_bound_vanishes_for_degenerate_flow():
    # drive confined to a degenerate level: distinct-energy populations freeze
    sector = SpinSector(2)
    h_b = HermitianOperator(sector, np.diag([0.0, 0.0, 1.0]).astype(complex))
    lam, t = 0.8, 0.6
    state = StateVector(sector, np.array([math.cos(lam * t), -1j * math.sin(lam * t), 0.0]))
    now = energy_populations(state, h_b, grouping="per_distinct_energy")
    later = StateVector(sector, np.array([math.cos(lam * (t + 1e-4)), -1j * math.sin(lam * (t + 1e-4)), 0.0]))
    nxt = energy_populations(later, h_b, grouping="per_distinct_energy")
    i_e = fisher_discrete(nxt, now, 1e-4)
    assert i_e <= 1e-12
    assert fisher_bound(state, h_b, i_e) <= 1e-12


def test_fisher_bound_below_robertson_on_rabi_family():
    gap, lam = 1.4, 0.6
    sector, h_b, h_c = two_level(gap, lam)
    for t in (0.25, 0.65, 1.35):
        state = rabi_state(sector, lam, t)
        fisher = fisher_bound(state, h_b, 4 * lam**2)
        assert fisher <= robertson_bound(state, h_b, h_c) + 1e-9


@pytest.mark.parametrize("n", [4, 10])
def test_fisher_bound_below_robertson_on_kicked_trajectory(n):
    # activity measured by intra-period finite differences of the populations
    beta, dt = 7.0, 1e-4
    sector = SpinSector(n)
    traj = evolve(coherent_state(sector, math.pi, 0.0), FloquetParams(beta=beta), 8)
    h_b = battery_operator(sector)
    drive = charger_operator(sector, "between_kicks", beta=beta)
    phases = kick_phases(sector, FloquetParams(beta=beta))
    for step in (2, 5, 7):
        post_kick = StateVector(sector, phases * traj.state(step).amplitudes)
        for fraction in (0.21, 0.55, 0.83):
            state = rotate_partial(post_kick, fraction)
            later = rotate_partial(post_kick, fraction + dt)
            now_dist = energy_populations(state, h_b)
            next_dist = energy_populations(later, h_b)
            i_e = fisher_discrete(next_dist, now_dist, dt)
            if math.isinf(i_e):
                continue  # straddled a vanishing population; no finite estimate here
            assert fisher_bound(state, h_b, i_e) <= robertson_bound(state, h_b, drive) + 1e-9


# --- bound series ----------------------------------------------------------------


def test_bound_series_shapes_and_inequality():
    sector = SpinSector(6)
    traj = evolve(coherent_state(sector, math.pi, 0.0), FloquetParams(beta=7.0), 20)
    series = bound_series(traj)
    assert len(series.steps) == 20
    assert np.all(series.robertson >= 0.0)
    assert np.all(series.var_hb >= 0.0)
    assert np.all(np.abs(series.inst_power) <= series.robertson + 1e-9)
    # the first stroboscopic distribution leaves the initial point mass: infinite step KL
    assert math.isinf(series.kl_step[0])
    assert np.isfinite(series.kl_step[1:]).any()
