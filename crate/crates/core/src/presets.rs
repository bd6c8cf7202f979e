//! Built-in experiment rows.

use crate::model::ExperimentParams;
use crate::scalar::Real;

#[allow(clippy::too_many_arguments)]
fn row<T: Real>(
    name: &str,
    temperature: f64,
    omega_m: f64,
    damping: f64,
    quality_factor: f64,
    drive_frequency: f64,
    cavity_length: f64,
    kappa: f64,
    mass: f64,
    power: f64,
    finesse_quoted: f64,
    s_min: f64,
) -> ExperimentParams<T> {
    ExperimentParams {
        name: name.to_owned(),
        temperature: T::lit(temperature),
        omega_m: T::lit(omega_m),
        damping: T::lit(damping),
        quality_factor: T::lit(quality_factor),
        drive_frequency: T::lit(drive_frequency),
        cavity_length: T::lit(cavity_length),
        kappa: T::lit(kappa),
        mass: T::lit(mass),
        power: T::lit(power),
        finesse_quoted: T::lit(finesse_quoted),
        s_min: T::lit(s_min),
    }
}

/// Advanced LIGO test mass.
pub fn aligo<T: Real>() -> ExperimentParams<T> {
    row("aligo", 300.0, 4.15, 1e-6, 1.33e9, 2.82e14, 4e3, 4.78e3, 10.0, 3.6e3, 4.92e1, 9e-40)
}

/// Purdy et al. membrane-in-the-middle oscillator.
pub fn purdy<T: Real>() -> ExperimentParams<T> {
    row("purdy", 1.7e-3, 9.75e6, 8.98e3, 1.08e3, 2.82e14, 5.1e-3, 5.59e6, 7e-12, 9.4e-5, 3.30e4, 4.4e-32)
}

/// Teufel et al. microwave electromechanical drum.
pub fn teufel<T: Real>() -> ExperimentParams<T> {
    row("teufel", 4e-2, 5.88e7, 1.53e2, 3.83e5, 6.71e9, 4e-8, 6.64e7, 8.5e-14, 7.8e-9, 3.55e8, 1e-26)
}

pub const PRESET_NAMES: [&str; 3] = ["aligo", "purdy", "teufel"];

pub fn by_name<T: Real>(name: &str) -> Option<ExperimentParams<T>> {
    match name {
        "aligo" => Some(aligo()),
        "purdy" => Some(purdy()),
        "teufel" => Some(teufel()),
        _ => None,
    }
}
