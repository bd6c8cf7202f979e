mod common;

use std::path::Path;

use common::*;
use gupnoise_cli::config::{DEFAULT_GRID_POINTS, DEFAULT_SIM_SEED, DEFAULT_SIM_TRAJECTORIES};
use gupnoise_cli::{load_config, parse_config, CliError, Tier};
use gupnoise_core::bounds::Constraint;
use gupnoise_core::presets;
use gupnoise_core::spectra::{GridScale, LedgerMode};

fn parse(text: &str) -> Result<gupnoise_cli::RunConfig, CliError> {
    parse_config(text, Path::new("test.toml"))
}

const TEUFEL_INLINE: &str = r#"
[experiment]
name = "teufel"
temperature = 4.00e-2
omega_m = 5.88e7
damping = 1.53e2
quality_factor = 3.83e5
drive_frequency = 6.71e9
cavity_length = 4.00e-8
kappa = 6.64e7
mass = 8.50e-14
power = 7.80e-9
finesse = 3.55e8
s_min = 1.00e-26
"#;

#[test]
fn minimal_file_gets_defaults() {
    let c = parse("preset = \"aligo\"\n[gup]\nalpha0 = 0.0\ngamma0 = 0.0\n").unwrap();
    assert_eq!(c.experiment, presets::aligo());
    assert_eq!((c.alpha0, c.gamma0), (0.0, 0.0));
    assert_eq!((c.gup.alpha, c.gup.gamma), (0.0, 0.0));
    assert_eq!(c.ledger_mode, LedgerMode::Exact);
    assert_eq!(c.tier, Tier::Fast);
    assert_eq!(c.grid.points, DEFAULT_GRID_POINTS);
    assert_eq!(c.grid.scale, GridScale::Log);
    assert_eq!((c.grid.min, c.grid.max), (4.15 / 10.0, 4.15 * 10.0));
    assert_eq!(c.bounds.constraints, vec![Constraint::Joint { ratio: 3.5 }]);
    assert_eq!(c.bounds.omega_over_resonance, 1.0);
    assert_eq!(c.bounds.targets, vec![presets::aligo()]);
    assert_eq!(c.simulation.experiment, presets::purdy());
    assert_eq!((c.simulation.trajectories, c.simulation.seed), (DEFAULT_SIM_TRAJECTORIES, DEFAULT_SIM_SEED));
    assert_eq!(c.output.resolve(&c.output.spectrum), Path::new("./spectrum.csv"));
}

#[test]
fn overdamped_inline_experiment_is_rejected() {
    let text = TEUFEL_INLINE.replace("damping = 1.53e2", "damping = 1.2e8");
    let err = parse(&text).unwrap_err();
    assert!(matches!(&err, CliError::Validation { field, .. } if field == "experiment"), "{err}");
    assert!(err.to_string().contains("underdamped"), "{err}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn inline_teufel_row_equals_builtin() {
    let c = parse(TEUFEL_INLINE).unwrap();
    assert_eq!(c.experiment, presets::teufel());
}

#[test]
fn unknown_key_names_line_and_field() {
    let err = parse("preset = \"purdy\"\n\n[gup]\nalpha0 = 1e19\ngama0 = 1e38\n").unwrap_err();
    match &err {
        CliError::Parse { line, message, .. } => {
            assert_eq!(*line, 5, "{err}");
            assert!(message.contains("gama0"), "{err}");
        }
        other => panic!("expected a parse error, got {other}"),
    }
    assert!(err.to_string().starts_with("test.toml:5:"), "{err}");
    assert!(parse("preset = \"purdy\"\nomega = 3.0\n").is_err());
    assert!(parse("preset = \"purdy\"\n[grid]\nmin = 1.0\nmax = 2.0\npoints = 3\nunits = \"Hz\"\n").is_err());
}

#[test]
fn malformed_toml_is_a_parse_error() {
    let err = parse("preset = \"purdy\"\n[gup\n").unwrap_err();
    assert!(matches!(err, CliError::Parse { line: 2, .. }), "{err}");
}

#[test]
fn exactly_one_experiment_source() {
    let both = format!("preset = \"aligo\"\n{TEUFEL_INLINE}");
    assert!(matches!(parse(&both), Err(CliError::Validation { .. })));
    assert!(matches!(parse("ledger = \"exact\"\n"), Err(CliError::Validation { .. })));
    let err = parse("preset = \"virgo\"\n").unwrap_err();
    assert!(err.to_string().contains("virgo"), "{err}");
}

#[test]
fn invalid_values_name_their_field() {
    let cases = [
        ("preset = \"aligo\"\nledger = \"approximate\"\n", "ledger"),
        ("preset = \"aligo\"\n[gup]\nalpha0 = -1.0\n", "gup"),
        ("preset = \"aligo\"\n[grid]\nmin = 10.0\nmax = 1.0\npoints = 5\n", "grid"),
        ("preset = \"aligo\"\n[grid]\nmin = 1.0\nmax = 10.0\npoints = 5\nscale = \"cubic\"\n", "grid.scale"),
        ("preset = \"aligo\"\n[bounds]\nconstraints = [\"alpha_only\"]\n", "bounds.constraints"),
        ("preset = \"aligo\"\n[bounds]\nconstraints = [\"joint\", \"joint\"]\n", "bounds.constraints"),
        ("preset = \"aligo\"\n[bounds]\nratio = 0.0\n", "bounds.ratio"),
        ("preset = \"aligo\"\n[bounds]\nomega_over_resonance = -1.0\n", "bounds.omega_over_resonance"),
        ("preset = \"aligo\"\n[simulation]\ntrajectories = 1\n", "simulation.trajectories"),
        ("preset = \"aligo\"\n[simulation]\nscheme = \"rk4\"\n", "simulation.scheme"),
        ("preset = \"aligo\"\n[verify]\ntier = \"medium\"\n", "verify.tier"),
    ];
    for (text, expected) in cases {
        match parse(text) {
            Err(CliError::Validation { field, .. }) => assert_eq!(field, expected, "{text}"),
            other => panic!("{text}: expected a validation error, got {other:?}"),
        }
    }
}

#[test]
fn user_presets_extend_but_never_replace_builtins() {
    let extra = TEUFEL_INLINE.replace("[experiment]\nname = \"teufel\"", "[presets.drum]");
    let c = parse(&format!("preset = \"drum\"\n{extra}")).unwrap();
    assert_eq!(c.experiment.name, "drum");
    assert_eq!(c.library.len(), 4);
    let mut renamed = presets::teufel();
    renamed.name = "drum".into();
    assert_eq!(c.experiment, renamed);
    assert!(!c.library.get("drum").unwrap().builtin);

    let clash = TEUFEL_INLINE.replace("[experiment]\nname = \"teufel\"", "[presets.purdy]");
    let err = parse(&format!("preset = \"purdy\"\n{clash}")).unwrap_err();
    assert!(matches!(&err, CliError::Validation { field, .. } if field == "presets.purdy"), "{err}");
    assert_eq!(c.library.get("purdy").unwrap().experiment, presets::purdy());
}

#[test]
fn full_schema_round_trips_into_run_config() {
    let text = r#"
preset = "purdy"
ledger = "white_noise"

[gup]
alpha0 = 1e19
gamma0 = 3.5e38

[grid]
min = 1e6
max = 1e8
points = 11
scale = "linear"

[bounds]
constraints = ["gamma_only", "joint"]
ratio = 4.0
omega_over_resonance = 2.0
presets = ["aligo", "teufel"]

[output]
dir = "out"
spectrum = "s.csv"
bounds = "/abs/b.json"
verification = "v.json"

[simulation]
preset = "teufel"
trajectories = 8
seed = 7
scheme = "euler_maruyama"

[verify]
tier = "full"
"#;
    let c = parse(text).unwrap();
    assert_eq!(c.ledger_mode, LedgerMode::WhiteNoise);
    assert_eq!((c.grid.min, c.grid.max, c.grid.points, c.grid.scale), (1e6, 1e8, 11, GridScale::Linear));
    assert_eq!(c.bounds.constraints, vec![Constraint::GammaOnly, Constraint::Joint { ratio: 4.0 }]);
    assert_eq!(c.bounds.targets, vec![presets::aligo(), presets::teufel()]);
    assert_eq!(c.output.resolve(&c.output.spectrum), Path::new("out/s.csv"));
    assert_eq!(c.output.resolve(&c.output.bounds), Path::new("/abs/b.json"));
    assert_eq!(c.simulation.experiment, presets::teufel());
    assert_eq!((c.simulation.trajectories, c.simulation.seed), (8, 7));
    assert_eq!(c.tier, Tier::Full);
}

#[test]
fn missing_file_is_an_io_error() {
    let dir = tempdir();
    let err = load_config(&dir.path().join("absent.toml")).unwrap_err();
    assert!(matches!(err, CliError::Io { .. }), "{err}");
    assert_eq!(err.exit_code(), 3);
    let path = write(dir.path(), "ok.toml", "preset = \"teufel\"\n");
    assert_eq!(load_config(&path).unwrap().experiment, presets::teufel());
}
