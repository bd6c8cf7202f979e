use gupnoise_core::Experiment;

use crate::library::PresetLibrary;
use crate::output::sci;

fn fields(e: &Experiment) -> [(&'static str, &'static str, f64); 11] {
    [
        ("temperature", "K", e.temperature),
        ("omega_m", "rad/s", e.omega_m),
        ("damping", "rad/s", e.damping),
        ("quality_factor", "", e.quality_factor),
        ("drive_frequency", "Hz", e.drive_frequency),
        ("cavity_length", "m", e.cavity_length),
        ("kappa", "rad/s", e.kappa),
        ("mass", "kg", e.mass),
        ("power", "W", e.power),
        ("finesse", "", e.finesse_quoted),
        ("s_min", "m^2/Hz", e.s_min),
    ]
}

/// Human-readable listing of every preset with its source.
pub fn cmd_presets(library: &PresetLibrary) -> Vec<String> {
    let mut lines = Vec::new();
    for (name, entry) in library.iter() {
        let kind = if entry.builtin { "built-in" } else { "user" };
        lines.push(format!("{name} ({kind}): {}", entry.source));
        for (field, unit, value) in fields(&entry.experiment) {
            let unit = if unit.is_empty() { String::new() } else { format!(" {unit}") };
            lines.push(format!("  {field:<16} {}{unit}", sci(value)));
        }
    }
    lines
}
