//! Minimal SVG line plots of concurrence vs time. Enough to eyeball a run
//! without pulling in a plotting stack; anything publication-grade should
//! start from the CSV instead.

use std::io::Write;

use super::runner::{MethodTrajectory, ResolvedScenario};

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 520.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Writes one SVG with a concurrence curve per (label, trajectory) pair.
/// Time axis is in units of `tau_1` (raw time when `tau_1 = 0`).
pub fn write_concurrence_svg(
    mut w: impl Write,
    resolved: &ResolvedScenario,
    curves: &[(String, &MethodTrajectory)],
) -> std::io::Result<()> {
    let unit = resolved.time_unit();
    let t_max = (resolved.t_max / unit).max(f64::MIN_POSITIVE);
    let c_max = curves
        .iter()
        .flat_map(|(_, traj)| traj.concurrence.iter().copied())
        .fold(0.0f64, f64::max)
        .max(1e-6);
    let x = |t: f64| MARGIN + (t / unit) / t_max * (WIDTH - 2.0 * MARGIN);
    let y = |c: f64| HEIGHT - MARGIN - c / c_max * (HEIGHT - 2.0 * MARGIN);

    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )?;
    writeln!(w, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#)?;
    // axes
    writeln!(
        w,
        r#"<line x1="{m}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#,
        m = MARGIN,
        y0 = HEIGHT - MARGIN,
        x1 = WIDTH - MARGIN
    )?;
    writeln!(
        w,
        r#"<line x1="{m}" y1="{m}" x2="{m}" y2="{y0}" stroke="black"/>"#,
        m = MARGIN,
        y0 = HEIGHT - MARGIN
    )?;
    let x_label = if resolved.tau1 > 0.0 { "t / tau_1" } else { "t" };
    writeln!(
        w,
        r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">{x_label}</text>"#,
        WIDTH / 2.0,
        HEIGHT - MARGIN / 3.0
    )?;
    writeln!(
        w,
        r#"<text x="{}" y="{}" font-size="14" text-anchor="middle" transform="rotate(-90 {x} {y})">concurrence</text>"#,
        MARGIN / 3.0,
        HEIGHT / 2.0,
        x = MARGIN / 3.0,
        y = HEIGHT / 2.0
    )?;
    // axis extents
    writeln!(
        w,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{t_max:.3}</text>"#,
        WIDTH - MARGIN,
        HEIGHT - MARGIN + 18.0
    )?;
    writeln!(
        w,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{c_max:.3}</text>"#,
        MARGIN - 6.0,
        MARGIN + 4.0
    )?;

    for (i, (label, traj)) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let points: Vec<String> = traj
            .times
            .iter()
            .zip(&traj.concurrence)
            .map(|(&t, &c)| format!("{:.2},{:.2}", x(t), y(c)))
            .collect();
        writeln!(
            w,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            points.join(" ")
        )?;
        writeln!(
            w,
            r#"<text x="{}" y="{}" font-size="12" fill="{color}">{label}</text>"#,
            WIDTH - MARGIN + 4.0,
            MARGIN + 16.0 * i as f64
        )?;
    }
    writeln!(w, "</svg>")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{run_scenario, ScenarioConfig};

    #[test]
    fn svg_contains_one_polyline_per_curve() {
        let text = r#"
omega_a = "mid(11,31)"
coupling_d = 0.05
initial = "symmetric"
method = "both"

[distance]
phase = { n = 2 }

[time]
t_max_tau1 = 2.0
samples = 50
"#;
        let cfg = ScenarioConfig::from_toml_str(text).unwrap();
        let report = run_scenario(&cfg).unwrap();
        let curves: Vec<(String, &MethodTrajectory)> = report
            .trajectories()
            .map(|t| (t.method.to_string(), t))
            .collect();
        let mut buf = Vec::new();
        write_concurrence_svg(&mut buf, &report.resolved, &curves).unwrap();
        let svg = String::from_utf8(buf).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("dde"));
        assert!(svg.contains("series"));
    }
}
