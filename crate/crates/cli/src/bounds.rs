use std::path::PathBuf;

use gupnoise_core::bounds::{solve_bound, Constraint};
use gupnoise_core::model::derive_params;
use gupnoise_core::spectra::{coeff_ledger, delta_s_coefficients, s0};
use gupnoise_core::{Constants, Error as ModelError};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{write_json, Sci};

pub const BOUNDS_SCHEMA: &str = "gupnoise.bounds";
pub const BOUNDS_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct ConstraintRecord {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<Sci>,
}

impl From<Constraint<f64>> for ConstraintRecord {
    fn from(c: Constraint<f64>) -> Self {
        match c {
            Constraint::Joint { ratio } => ConstraintRecord { kind: c.label(), ratio: Some(Sci(ratio)) },
            Constraint::GammaOnly => ConstraintRecord { kind: c.label(), ratio: None },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Bounded {
        alpha_max: Sci,
        gamma_max: Sci,
        alpha0_max: Sci,
        gamma0_max: Sci,
        alpha0_decade: Sci,
        gamma0_decade: Sci,
    },
    /// The constrained coefficient is not positive, so δS ≤ S₀ never binds.
    Unbounded { reason: String, coefficient: Sci },
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundEntry {
    pub preset: String,
    pub constraint: ConstraintRecord,
    pub ledger_mode: &'static str,
    pub omega_eval: Sci,
    pub c_alpha: Sci,
    pub c_gamma: Sci,
    pub s0: Sci,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsDocument {
    pub schema: &'static str,
    pub schema_version: u32,
    pub omega_over_resonance: Sci,
    pub entries: Vec<BoundEntry>,
}

#[derive(Debug, Clone)]
pub struct BoundsOutcome {
    pub path: PathBuf,
    pub document: BoundsDocument,
}

pub fn cmd_bounds(config: &RunConfig) -> Result<BoundsOutcome> {
    let consts = Constants::codata2018();
    let spec = &config.bounds;
    let mut entries = Vec::new();
    for exp in &spec.targets {
        let w = spec.omega_over_resonance * exp.omega_m;
        let derived = derive_params(exp, &consts)?;
        let ledger = coeff_ledger(exp, &derived, &consts, config.ledger_mode)?;
        let co = delta_s_coefficients(w, &ledger, exp, &derived);
        let s0_at = s0(w, exp, &derived);
        for &constraint in &spec.constraints {
            let outcome = match solve_bound(exp, &consts, w, constraint, config.ledger_mode) {
                Ok(b) => Outcome::Bounded {
                    alpha_max: Sci(b.alpha_max),
                    gamma_max: Sci(b.gamma_max),
                    alpha0_max: Sci(b.alpha0_max),
                    gamma0_max: Sci(b.gamma0_max),
                    alpha0_decade: Sci(b.alpha0_decade),
                    gamma0_decade: Sci(b.gamma0_decade),
                },
                Err(e @ ModelError::Unbounded { coefficient, .. }) => {
                    log::warn!("{}: {e}", exp.name);
                    Outcome::Unbounded { reason: e.to_string(), coefficient: Sci(coefficient) }
                }
                Err(e) => return Err(e.into()),
            };
            entries.push(BoundEntry {
                preset: exp.name.clone(),
                constraint: constraint.into(),
                ledger_mode: config.ledger_mode.as_str(),
                omega_eval: Sci(w),
                c_alpha: Sci(co.c_alpha),
                c_gamma: Sci(co.c_gamma),
                s0: Sci(s0_at),
                outcome,
            });
        }
    }
    let document = BoundsDocument {
        schema: BOUNDS_SCHEMA,
        schema_version: BOUNDS_SCHEMA_VERSION,
        omega_over_resonance: Sci(spec.omega_over_resonance),
        entries,
    };
    let path = config.output.resolve(&config.output.bounds);
    write_json(&path, &document, "bounds report")?;
    Ok(BoundsOutcome { path, document })
}

impl BoundsOutcome {
    pub fn summary(&self) -> Vec<String> {
        let mut lines = vec![format!("bounds: {} entries written to {}", self.document.entries.len(), self.path.display())];
        for e in &self.document.entries {
            let result = match &e.outcome {
                Outcome::Bounded { alpha0_max, gamma0_max, alpha0_decade, gamma0_decade, .. } => format!(
                    "alpha0 <= {:.4e} (decade {:.0e}), gamma0 <= {:.4e} (decade {:.0e})",
                    alpha0_max.0, alpha0_decade.0, gamma0_max.0, gamma0_decade.0
                ),
                Outcome::Unbounded { coefficient, .. } => format!("unbounded (coefficient {:.4e})", coefficient.0),
            };
            lines.push(format!("  {:<8} {:<10} omega = {:.4e} rad/s: {result}", e.preset, e.constraint.kind, e.omega_eval.0));
        }
        lines
    }
}
