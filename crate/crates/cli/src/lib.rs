//! Library side of the `gupnoise` command: configuration, preset library and the
//! `spectrum`, `bounds`, `verify` and `presets` verbs.

pub mod bounds;
pub mod config;
pub mod error;
pub mod library;
pub mod output;
pub mod presets;
pub mod spectrum;
pub mod verify;

pub use bounds::cmd_bounds;
pub use config::{load_config, parse_config, RunConfig, Tier};
pub use error::{CliError, Result};
pub use library::PresetLibrary;
pub use presets::cmd_presets;
pub use spectrum::cmd_spectrum;
pub use verify::cmd_verify;
