//! Built-in scenario sets behind `wgqed figure <name>`.
//!
//! Each preset is a named family of configs that differ in one physical knob
//! (detuning phase, separation, or winding number), so a single invocation
//! produces every curve of one figure.

use super::config::ScenarioConfig;
use super::runner::RunError;

const FIG2_DELTAS: [(&str, &str); 4] = [
    ("delta_0", "0.0"),
    ("delta_pi", "3.141592653589793"),
    ("delta_half_pi", "1.5707963267948966"),
    ("delta_quarter_pi", "0.7853981633974483"),
];

fn fig2(n: u32) -> Vec<(String, ScenarioConfig)> {
    FIG2_DELTAS
        .iter()
        .map(|(name, delta)| {
            let text = format!(
                r#"
omega_a = "mid(11,31)"
coupling_d = 0.05
initial = "symmetric"
method = "both"

[distance]
phase = {{ n = {n}, delta = {delta} }}

[time]
t_max_tau1 = 12.0
"#
            );
            (name.to_string(), parse(&text))
        })
        .collect()
}

fn fig3() -> Vec<(String, ScenarioConfig)> {
    let mut out = Vec::new();
    let co_located = r#"
omega_a = "mid(11,31)"
coupling_d = 0.05
initial = "antisymmetric"
method = "both"

[distance]
d = 0.0

[time]
t_max_gamma = 10.0
"#;
    out.push(("d_0".to_string(), parse(co_located)));
    for (name, x) in [("d_10_lambda1", 10.0), ("d_200_lambda1", 200.0)] {
        let text = format!(
            r#"
omega_a = "mid(11,31)"
coupling_d = 0.05
initial = "antisymmetric"
method = "both"

[distance]
lambda1 = {x}

[time]
t_max_tau1 = 12.0
"#
        );
        out.push((name.to_string(), parse(&text)));
    }
    out
}

fn fig4(n: u32) -> Vec<(String, ScenarioConfig)> {
    let mut out = Vec::new();
    let co_located = r#"
omega_a = "mid(31,51)"
coupling_d = 0.0086
initial = "antisymmetric"
method = "both"

[distance]
d = 0.0

[time]
t_max_gamma = 10.0
"#;
    out.push(("d_0".to_string(), parse(co_located)));
    for (name, modes_line) in [
        ("tm11", "modes = [[1, 1]]\n"),
        ("tm11_tm31", ""),
    ] {
        let text = format!(
            r#"
omega_a = "mid(31,51)"
coupling_d = 0.0086
initial = "antisymmetric"
method = "both"
{modes_line}
[distance]
phase = {{ n = {n} }}

[time]
t_max_tau1 = 10.0
"#
        );
        out.push((name.to_string(), parse(&text)));
    }
    out
}

fn parse(text: &str) -> ScenarioConfig {
    ScenarioConfig::from_toml_str(text).expect("preset config is valid")
}

pub fn preset_names() -> &'static [&'static str] {
    &["fig2a", "fig2b", "fig2c", "fig3", "fig4a", "fig4b", "fig4c", "fig4d"]
}

/// Named scenario configs making up one figure.
///
/// `fig2*`: symmetric state, one mode, windings n = 2 / 20 / 150, four
/// detuning phases each. `fig3`: antisymmetric state at d = 0, 10, 200
/// wavelengths. `fig4*`: two-band regime, windings n = 4 / 10 / 30 / 3000,
/// each with the co-located, single-mode, and two-mode variants.
pub fn figure_preset(name: &str) -> Result<Vec<(String, ScenarioConfig)>, RunError> {
    match name {
        "fig2a" => Ok(fig2(2)),
        "fig2b" => Ok(fig2(20)),
        "fig2c" => Ok(fig2(150)),
        "fig3" => Ok(fig3()),
        "fig4a" => Ok(fig4(4)),
        "fig4b" => Ok(fig4(10)),
        "fig4c" => Ok(fig4(30)),
        "fig4d" => Ok(fig4(3000)),
        other => Err(RunError::UnknownPreset(other.to_string())),
    }
}
