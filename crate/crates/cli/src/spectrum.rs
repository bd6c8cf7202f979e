use std::path::PathBuf;

use gupnoise_core::model::derive_params;
use gupnoise_core::spectra::{coeff_ledger, delta_s_coefficients, delta_s_full, s0, spectrum_series};
use gupnoise_core::{Constants, Series};

use crate::config::RunConfig;
use crate::error::Result;
use crate::output::write_csv;

pub const SPECTRUM_HEADER: [&str; 4] = ["omega_rad_s", "s0_m2_per_hz", "delta_s_m2_per_hz", "total_m2_per_hz"];

/// Values on the mechanical resonance line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceLine {
    pub omega: f64,
    pub s0: f64,
    pub delta_s: f64,
    pub c_alpha: f64,
    pub c_gamma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumOutcome {
    pub path: PathBuf,
    pub series: Series,
    pub resonance: ResonanceLine,
    /// Frequencies where δS changes sign, interpolated linearly between grid points.
    pub sign_changes: Vec<f64>,
}

fn sign_changes(omega: &[f64], values: &[f64]) -> Vec<f64> {
    omega
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| v[0] * v[1] < 0.0)
        .map(|(w, v)| w[0] + (w[1] - w[0]) * v[0] / (v[0] - v[1]))
        .collect()
}

pub fn cmd_spectrum(config: &RunConfig) -> Result<SpectrumOutcome> {
    let consts = Constants::codata2018();
    let exp = &config.experiment;
    let grid = config.grid.points::<f64>()?;
    let series = spectrum_series(&grid, &config.gup, exp, &consts, config.ledger_mode)?;

    let path = config.output.resolve(&config.output.spectrum);
    let rows = (0..series.len()).map(|i| vec![series.omega_grid[i], series.s0[i], series.delta_s[i], series.total[i]]);
    write_csv(&path, &SPECTRUM_HEADER, rows)?;
    log::info!("wrote {} rows to {}", series.len(), path.display());

    let derived = derive_params(exp, &consts)?;
    let ledger = coeff_ledger(exp, &derived, &consts, config.ledger_mode)?;
    let w = exp.omega_m;
    let co = delta_s_coefficients(w, &ledger, exp, &derived);
    let resonance = ResonanceLine {
        omega: w,
        s0: s0(w, exp, &derived),
        delta_s: delta_s_full(w, &config.gup, &ledger, exp, &derived),
        c_alpha: co.c_alpha,
        c_gamma: co.c_gamma,
    };
    let sign_changes = sign_changes(&series.omega_grid, &series.delta_s);
    Ok(SpectrumOutcome { path, series, resonance, sign_changes })
}

impl SpectrumOutcome {
    pub fn summary(&self) -> Vec<String> {
        let r = &self.resonance;
        let mut lines = vec![
            format!("spectrum: {} points written to {}", self.series.len(), self.path.display()),
            format!("resonance omega = {:.6e} rad/s: S0 = {:.6e} m^2/Hz, delta S = {:.6e} m^2/Hz", r.omega, r.s0, r.delta_s),
            format!("bilinear coefficients: c_alpha = {:.6e}, c_gamma = {:.6e} m^2/Hz", r.c_alpha, r.c_gamma),
        ];
        if self.sign_changes.is_empty() {
            lines.push("delta S keeps one sign over the grid".into());
        } else {
            let list = self.sign_changes.iter().map(|w| format!("{w:.6e}")).collect::<Vec<_>>().join(", ");
            lines.push(format!("delta S changes sign near omega = {list} rad/s"));
        }
        lines
    }
}
