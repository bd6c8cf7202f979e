use rayon::prelude::*;

use super::grid::check_grid;
use super::ledger::{coeff_ledger, LedgerMode};
use super::{delta_s_full, s0};
use crate::error::{Error, Result};
use crate::model::{derive_params, ExperimentParams, GupParams, PhysicalConstants};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMetadata<T> {
    pub preset: String,
    pub gup: GupParams<T>,
    pub mode: LedgerMode,
}

/// Gridded S₀, δS and their sum (m²/Hz) over angular frequencies (rad/s).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSeries<T> {
    pub omega_grid: Vec<T>,
    pub s0: Vec<T>,
    pub delta_s: Vec<T>,
    pub total: Vec<T>,
    pub metadata: SpectrumMetadata<T>,
}

impl<T: Real> SpectrumSeries<T> {
    pub fn len(&self) -> usize {
        self.omega_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega_grid.is_empty()
    }
}

/// Evaluates the spectrum on a grid; points are independent and evaluated in parallel.
pub fn spectrum_series<T: Real>(
    grid: &[T],
    gup: &GupParams<T>,
    exp: &ExperimentParams<T>,
    consts: &PhysicalConstants<T>,
    mode: LedgerMode,
) -> Result<SpectrumSeries<T>> {
    check_grid(grid)?;
    let derived = derive_params(exp, consts)?;
    let ledger = coeff_ledger(exp, &derived, consts, mode)?;

    let rows: Vec<(T, T)> = grid
        .par_iter()
        .map(|&w| (s0(w, exp, &derived), delta_s_full(w, gup, &ledger, exp, &derived)))
        .collect();

    let mut s0_col = Vec::with_capacity(rows.len());
    let mut delta_col = Vec::with_capacity(rows.len());
    let mut total_col = Vec::with_capacity(rows.len());
    for (&w, &(s, d)) in grid.iter().zip(&rows) {
        let total = s + d;
        if !(s.is_finite() && d.is_finite() && total.is_finite()) {
            return Err(Error::domain(
                "spectrum",
                format!(
                    "non-finite value at omega = {:e} rad/s (s0 = {:e}, delta_s = {:e})",
                    w.to_f64_lossy(),
                    s.to_f64_lossy(),
                    d.to_f64_lossy()
                ),
            ));
        }
        s0_col.push(s);
        delta_col.push(d);
        total_col.push(total);
    }

    Ok(SpectrumSeries {
        omega_grid: grid.to_vec(),
        s0: s0_col,
        delta_s: delta_col,
        total: total_col,
        metadata: SpectrumMetadata { preset: exp.name.clone(), gup: *gup, mode },
    })
}
