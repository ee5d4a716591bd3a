"""Response-table cache against the direct solver."""

import numpy as np
import pytest

from eitlens import (
    DirectResponse,
    FieldPoint,
    LevelScheme,
    ResponseTable,
    build_liouvillian,
    coherence_eg,
    response_table,
    steady_state,
)
from eitlens.exceptions import ResponseRangeError

GE = LevelScheme().gamma_e


@pytest.fixture(scope="module")
def table():
    levels = LevelScheme.with_ground_rydberg_width()
    # fig3b-style scenario at its canonical red detuning
    return ResponseTable.from_ranges(
        omega_p_max=4 * 0.16 * GE,
        omega_c_max=1.98 * GE,
        delta_p=-0.28 * GE,
        delta_c=0.0,
        levels=levels,
        n_p=128,
        n_c=128,
    )


def test_query_at_node_matches_direct_steady_state(table, levels):
    ip, ic = 37, 90
    op = table.omega_p_samples[ip]
    oc = table.omega_c_samples[ic]
    got = complex(table.rho_eg(np.array(op + 0j), np.array(oc)))
    fp = FieldPoint(op, oc, table.delta_p, table.delta_c)
    want = coherence_eg(steady_state(build_liouvillian(fp, levels)))
    assert abs(got - want) <= 1e-12 * abs(want)


def test_probe_phase_gauge_identity(table):
    op = 0.11 * GE
    oc = np.array(1.3 * GE)
    real_phase = complex(table.rho_eg(np.array(op + 0j), oc))
    rotated = complex(table.rho_eg(np.array(op * 1j), oc))
    assert abs(rotated - 1j * real_phase) < 1e-15 * abs(real_phase) + 1e-300


def test_random_off_node_queries_against_direct_solve(table, levels, rng):
    # Queries span the fields the scenario actually reaches during
    # propagation (input 0.16 gamma_e amplified by < 2.5x by focusing);
    # the table itself carries the production 4x headroom.
    direct = DirectResponse(table.delta_p, table.delta_c, levels)
    op = rng.uniform(0.0, 2.5 * 0.16, 128) * GE
    oc = rng.uniform(0.0, 1.98, 128) * GE
    got = table.rho_eg(op.astype(complex), oc)
    want = direct.rho_eg(op.astype(complex), oc)
    scale = np.abs(want).max()
    mask = np.abs(want) > 1e-9 * scale
    rel = np.abs(got - want)[mask] / np.abs(want)[mask]
    assert rel.max() < 1e-4


def test_out_of_range_queries_rejected(table):
    with pytest.raises(ResponseRangeError):
        table.rho_eg(np.array(2.0 * table.omega_p_max + 0j), np.array(0.5 * GE))
    with pytest.raises(ResponseRangeError):
        table.rho_eg(np.array(0.01 * GE + 0j), np.array(2.0 * table.omega_c_max))


def test_sample_grid_validation(levels):
    good = np.linspace(0, GE, 16)
    bad = good.copy()
    bad[5] = bad[4]
    with pytest.raises(ValueError):
        response_table(bad, good, 0.0, 0.0, levels)
    with pytest.raises(ValueError):
        response_table(good - GE, good, 0.0, 0.0, levels)


def test_functional_alias_builds_table(levels):
    tab = response_table(
        np.linspace(0, 0.1 * GE, 12), np.linspace(0, GE, 12), 0.0, 0.0, levels
    )
    value = tab.rho_eg(np.array(0.05 * GE + 0j), np.array(0.5 * GE))
    assert np.isfinite(complex(value))
