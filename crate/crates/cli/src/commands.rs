use anyhow::{bail, Context};
use nonstatic_phase::envelope::nonstaticity_measure;
use nonstatic_phase::wavefunction::density_surface;
use nonstatic_phase::{phases, Grid, GridKind, Params, StateIndex};

use crate::config::RunConfig;
use crate::table::Table;

/// `A` values of the measure ladder (the other coefficient is 1).
pub const LADDER: [f64; 7] = [1.0, 2.0, 5.0, 10.0, 20.0, 40.0, 100.0];

pub fn density(config: &RunConfig) -> anyhow::Result<Table> {
    let [n] = config.states()?[..] else {
        bail!("density takes a single Fock index, got {:?}", config.n);
    };
    let params = config.params()?;
    let times = config.time_grid()?;
    let q_grid = Grid::new(GridKind::UniformTrapezoid, config.q_max, config.nq)?;
    let surface = density_surface(&params, n, &times, &q_grid);
    let mut table = Table::new(&["t", "q", "density"], false);
    for (t, row) in surface.times.iter().zip(surface.rows()) {
        for (q, rho) in surface.q.iter().zip(row) {
            table.push(n.get(), &[*t, *q, *rho]);
        }
    }
    Ok(table)
}

pub fn phases(config: &RunConfig) -> anyhow::Result<Table> {
    let params = config.params()?;
    let times = config.time_grid()?.points();
    let states = config.states()?;
    let d_f = params.nonstaticity_measure();
    let mut table = Table::new(
        &["t", "gamma_G", "gamma_D", "gamma_total", "first_part", "second_part", "hannay", "D_F_constant"],
        states.len() > 1,
    );
    for &n in &states {
        for &t in &times {
            let r = phases::phase_record(&params, n, t)?;
            table.push(
                n.get(),
                &[r.t, r.gamma_g, r.gamma_d, r.gamma_total, r.first_part, r.second_part, r.hannay, d_f],
            );
        }
    }
    Ok(table)
}

pub fn rates(config: &RunConfig) -> anyhow::Result<Table> {
    let params = config.params()?;
    let times = config.time_grid()?.points();
    let states = config.states()?;
    let mut table = Table::new(&["t", "dgamma_G", "dgamma_D", "dgamma_total"], states.len() > 1);
    for &n in &states {
        for &t in &times {
            let r = phases::phase_rate(&params, n, t)?;
            table.push(n.get(), &[t, r.geometric, r.dynamical, r.total]);
        }
    }
    Ok(table)
}

pub fn sweep_phi(config: &RunConfig) -> anyhow::Result<Table> {
    if config.phi_list.is_empty() {
        bail!("sweep-phi needs at least one angle in --phi-list");
    }
    let base = config.params()?;
    let times = config.time_grid()?.points();
    let states = config.states()?;
    let mut table = Table::new(&["phi", "t", "gamma_G"], states.len() > 1);
    for &n in &states {
        for &phi in &config.phi_list {
            let params = base.with_phi(phi).with_context(|| format!("phi = {phi}"))?;
            for &t in &times {
                table.push(n.get(), &[phi, t, phases::geometric_phase(&params, n, t)?]);
            }
        }
    }
    Ok(table)
}

pub fn measure(config: &RunConfig) -> anyhow::Result<Table> {
    let mut table = Table::new(&["A", "B", "C", "D_F"], false);
    let mut row = |a: f64, b: f64| -> anyhow::Result<()> {
        let p = Params::new(a, b, config.c_sign, config.omega, config.t0, config.phi, config.eps, config.hbar)?;
        table.push(0, &[a, b, p.c(), nonstaticity_measure(a, b)]);
        Ok(())
    };
    if config.ladder {
        for a in LADDER {
            row(a, 1.0)?;
        }
        for b in LADDER {
            row(1.0, b)?;
        }
    } else {
        row(config.a, config.b)?;
    }
    Ok(table)
}

/// Fock indices as validated state indices, for callers outside `config`.
pub fn states_of(list: &[u32]) -> nonstatic_phase::Result<Vec<StateIndex>> {
    list.iter().map(|&n| StateIndex::new(n)).collect()
}
