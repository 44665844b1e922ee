//! CSV trajectory output and the canonical config echo.
//!
//! The CSV layout is part of the tool's interface: fixed header
//! `t_over_tau1,re_B1,im_B1,re_B2,im_B2,population,concurrence`, every value
//! printed with 17 significant digits, and a trailing newline. Identical runs
//! produce byte-identical files.

use std::io::Write;

use super::runner::{MethodTrajectory, ResolvedScenario};
use crate::scenario::ScenarioConfig;

pub const CSV_HEADER: &str = "t_over_tau1,re_B1,im_B1,re_B2,im_B2,population,concurrence";

/// Writes one method's trajectory. Times are reported in units of `tau_1`,
/// or raw when the atoms are co-located (`tau_1 = 0`).
pub fn write_csv(
    mut w: impl Write,
    resolved: &ResolvedScenario,
    traj: &MethodTrajectory,
) -> std::io::Result<()> {
    let unit = resolved.time_unit();
    writeln!(w, "{CSV_HEADER}")?;
    for i in 0..traj.times.len() {
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            traj.times[i] / unit,
            traj.b1[i].re,
            traj.b1[i].im,
            traj.b2[i].re,
            traj.b2[i].im,
            traj.population[i],
            traj.concurrence[i],
        )?;
    }
    Ok(())
}

/// Writes the canonical TOML form of the config next to the data, so a run
/// directory is self-describing and replayable.
pub fn write_config_echo(mut w: impl Write, config: &ScenarioConfig) -> std::io::Result<()> {
    w.write_all(config.to_toml_string().as_bytes())
}
