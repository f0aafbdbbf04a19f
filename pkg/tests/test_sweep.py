import json
import math

import numpy as np
import pytest

from spinbattery.serialize import read_csv
from spinbattery.sweep import emit, fit_power_law, run_single, run_sweep


def test_fit_exact_power_law():
    fit = fit_power_law([(n, 2.0 * n**3) for n in (2, 4, 8, 16)])
    assert fit.exponent == pytest.approx(3.0, abs=1e-12)
    assert fit.prefactor == pytest.approx(2.0, rel=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


def test_fit_recovers_noisy_exponent():
    rng = np.random.default_rng(7)
    ns = np.arange(4, 65, 4)
    ys = 0.6 * ns**1.9 * (1.0 + 0.01 * rng.standard_normal(ns.size))
    fit = fit_power_law(list(zip(ns, ys)))
    assert fit.exponent == pytest.approx(1.9, abs=0.05)


def test_fit_constant_series():
    fit = fit_power_law([(n, 5.0) for n in (2, 4, 8)])
    assert fit.exponent == pytest.approx(0.0, abs=1e-12)
    assert fit.prefactor == pytest.approx(5.0, rel=1e-12)


def test_fit_validation():
    with pytest.raises(ValueError):
        fit_power_law([(2, 1.0), (4, 2.0)])
    with pytest.raises(ValueError):
        fit_power_law([(2, 1.0), (4, -2.0), (8, 3.0)])


def test_sweep_rejects_bad_inputs():
    with pytest.raises(ValueError):
        run_sweep([])
    with pytest.raises(ValueError):
        run_sweep([1, 4])
    with pytest.raises(ValueError):
        run_sweep([4], steps=0)


def test_sweep_variance_bounded_without_kicks():
    (record,) = run_sweep([2], beta=0.0, steps=12)
    assert 0.0 <= record.time_avg_var_hb <= 1.0  # Var(J_z) <= j^2 = 1 for N = 2


def test_sweep_smoke_record():
    (record,) = run_sweep([8], beta=7.0, steps=50)
    assert record.n_spins == 8 and record.steps == 50
    for value in (record.time_avg_var_hb, record.time_avg_var_hc, record.time_avg_bound,
                  record.time_avg_kl_bits, record.final_energy, record.avg_power):
        assert math.isfinite(value)
    assert record.time_avg_bound >= 0.0
    assert record.time_avg_kl_bits >= 0.0
    assert 0 <= record.kl_support_violations < 50
    assert record.time_avg_kl_nats == pytest.approx(record.time_avg_kl_bits * math.log(2), rel=1e-12)


def test_sweep_deterministic():
    a = run_sweep([6], beta=7.0, steps=20)
    b = run_sweep([6], beta=7.0, steps=20)
    assert a == b


def test_sweep_include_initial_changes_averages():
    base = run_sweep([6], beta=7.0, steps=10)[0]
    with_initial = run_sweep([6], beta=7.0, steps=10, include_initial=True)[0]
    assert with_initial.time_avg_var_hb != base.time_avg_var_hb
    # the starting coherent state has no J_z spread, so folding it in lowers the average
    assert with_initial.time_avg_var_hb < base.time_avg_var_hb


@pytest.mark.parametrize("n", [2, 4, 6])
def test_sweep_matches_full_space_recomputation(n):
    # oracle: recompute every averaged quantity from the 2^N evolution
    from spinbattery.bruteforce import build_full, full_dicke_embedding, full_floquet
    from spinbattery.sectors import SpinSector, coherent_state

    beta, steps = 7.0, 50
    (record,) = run_sweep([n], beta=beta, steps=steps)

    v = full_dicke_embedding(n)
    psi = v @ coherent_state(SpinSector(n), math.pi, 0.0).amplitudes
    u = full_floquet(n, beta)
    h_b = build_full("z", n).matrix
    h_c = build_full("at_kicks", n, beta).matrix
    h_b2, h_c2 = h_b @ h_b, h_c @ h_c
    m_of_state = np.real(np.diag(h_b))
    m_levels = np.arange(n / 2, -n / 2 - 1, -1)
    e0 = np.vdot(psi, h_b @ psi).real

    def populations(state):
        out = np.zeros(n + 1)
        for idx, m in enumerate(m_levels):
            mask = np.abs(m_of_state - m) < 1e-9
            out[idx] = np.sum(np.abs(state[mask]) ** 2)
        return out

    var_hb, var_hc, bounds, kls = [], [], [], []
    prev = populations(psi)
    for _ in range(steps):
        psi = u @ psi
        eb, eb2 = np.vdot(psi, h_b @ psi).real, np.vdot(psi, h_b2 @ psi).real
        ec, ec2 = np.vdot(psi, h_c @ psi).real, np.vdot(psi, h_c2 @ psi).real
        var_hb.append(eb2 - eb**2)
        var_hc.append(ec2 - ec**2)
        bounds.append(2 * math.sqrt(max(var_hb[-1], 0) * max(var_hc[-1], 0)))
        p = populations(psi)
        live = p > 1e-12
        if np.any(live & (prev <= 1e-12)):
            kls.append(math.inf)
        else:
            kls.append(float(np.sum(p[live] * np.log(p[live] / prev[live]))))
        prev = p
    kls = np.array(kls)
    finite = np.isfinite(kls)

    assert record.time_avg_var_hb == pytest.approx(np.mean(var_hb), abs=1e-9)
    assert record.time_avg_var_hc == pytest.approx(np.mean(var_hc), abs=1e-9)
    assert record.time_avg_bound == pytest.approx(np.mean(bounds), abs=1e-9)
    assert record.kl_support_violations == int(np.sum(~finite))
    assert record.time_avg_kl_nats == pytest.approx(np.mean(kls[finite]), abs=1e-9)
    assert record.final_energy == pytest.approx(np.vdot(psi, h_b @ psi).real, abs=1e-9)
    assert record.avg_power == pytest.approx((np.vdot(psi, h_b @ psi).real - e0) / steps, abs=1e-9)


def test_run_single_series_lengths():
    series = run_single(6, beta=7.0, steps=15)
    assert len(series.steps) == 15
    assert series.times[-1] == pytest.approx(15.0)


def test_emit_csv_roundtrip(tmp_path):
    records = run_sweep([4, 6], beta=7.0, steps=5)
    path = tmp_path / "sweep.csv"
    emit(records, "csv", str(path))
    name, version, rows = read_csv(str(path))
    assert name == "sweep" and version == 1
    assert len(rows) == 2
    assert rows[0]["N"] == 4
    assert rows[0]["bound"] == pytest.approx(records[0].time_avg_bound, abs=1e-12)
    assert rows[1]["kl_bits"] == pytest.approx(records[1].time_avg_kl_bits, abs=1e-12)


def test_emit_single_record_layout(tmp_path):
    records = run_sweep([4], beta=7.0, steps=3)
    path = tmp_path / "one.csv"
    emit(records, "csv", str(path))
    lines = path.read_text().strip().splitlines()
    assert len(lines) == 3  # schema comment, header, one row
    assert lines[0].startswith("# schema=sweep.v")
    assert lines[1] == "N,beta,steps,var_hb,var_hc,bound,kl_bits,final_energy,avg_power"


def test_emit_json_roundtrip(tmp_path):
    records = run_sweep([4, 6], beta=7.0, steps=5)
    path = tmp_path / "sweep.json"
    emit(records, "json", str(path))
    rows = json.loads(path.read_text())
    assert [row["N"] for row in rows] == [4, 6]
    assert set(rows[0]) == {"N", "beta", "steps", "var_hb", "var_hc", "bound", "kl_bits",
                            "final_energy", "avg_power"}
    assert rows[0]["var_hb"] == pytest.approx(records[0].time_avg_var_hb, abs=1e-12)


def test_emit_rejects_unwritable_destination(tmp_path):
    records = run_sweep([4], beta=7.0, steps=3)
    with pytest.raises(OSError):
        emit(records, "csv", str(tmp_path / "missing" / "sweep.csv"))


def test_emit_rejects_empty():
    with pytest.raises(ValueError):
        emit([], "csv", "anywhere.csv")
