//! Built-in experiment rows plus any extra rows defined in a config file.

use std::collections::BTreeMap;

use gupnoise_core::{presets, Experiment};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PresetEntry {
    pub experiment: Experiment,
    pub source: String,
    pub builtin: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PresetLibrary {
    entries: BTreeMap<String, PresetEntry>,
}

fn builtin_source(name: &str) -> &'static str {
    match name {
        "aligo" => "Advanced LIGO, one 10 kg test mass in a 4 km arm cavity",
        "purdy" => "Purdy et al., silicon nitride membrane in a Fabry-Perot cavity",
        "teufel" => "Teufel et al., aluminium drum coupled to a microwave LC cavity",
        _ => unreachable!("every built-in has a source"),
    }
}

impl Default for PresetLibrary {
    fn default() -> Self {
        Self::builtin()
    }
}

impl PresetLibrary {
    pub fn builtin() -> Self {
        let entries = presets::PRESET_NAMES
            .iter()
            .map(|&name| {
                let experiment = presets::by_name(name).expect("built-in preset");
                (name.to_owned(), PresetEntry { experiment, source: builtin_source(name).to_owned(), builtin: true })
            })
            .collect();
        Self { entries }
    }

    /// Adds a user row; built-in names cannot be redefined.
    pub fn extend(&mut self, name: &str, mut experiment: Experiment, source: String) -> Result<()> {
        if let Some(existing) = self.entries.get(name) {
            let what = if existing.builtin { "a built-in preset" } else { "already defined" };
            return Err(CliError::validation(format!("presets.{name}"), format!("{name:?} is {what} and cannot be redefined")));
        }
        experiment.name = name.to_owned();
        experiment.validate().map_err(|e| CliError::validation(format!("presets.{name}"), e))?;
        self.entries.insert(name.to_owned(), PresetEntry { experiment, source, builtin: false });
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&PresetEntry> {
        self.entries.get(name)
    }

    pub fn experiment(&self, name: &str) -> Result<Experiment> {
        self.get(name).map(|e| e.experiment.clone()).ok_or_else(|| {
            let known = self.entries.keys().cloned().collect::<Vec<_>>().join(", ");
            CliError::validation("preset", format!("unknown preset {name:?} (known: {known})"))
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &PresetEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
