//! Configuration files, figure presets, scenario execution, and flat-file
//! output behind the `wgqed` command-line tool.

mod config;
mod output;
mod plot;
mod presets;
mod runner;

pub use config::{
    ConfigError, DistanceSpec, InitialState, Method, ModesSpec, OmegaSpec, ScenarioConfig,
    SolverSettings, SweepSpec, TimeSpec,
};
pub use output::{write_config_echo, write_csv};
pub use plot::write_concurrence_svg;
pub use presets::{figure_preset, preset_names};
pub use runner::{
    compare_methods, resolve, run_scenario, CompareReport, MethodTrajectory, ResolvedScenario,
    RunError, RunReport,
};
