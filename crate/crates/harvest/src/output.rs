//! CSV, JSON, SVG and plain-text writers.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use harvest_core::oracle::ReducedDensityMatrix;

use crate::config::Engine;
use crate::regimes::RegimeLabel;
use crate::sweep::SweepResult;
use crate::HarvestError;

/// Header line of the results CSV.
pub const CSV_HEADER: &str = "xi_x,epsilon_b,concurrence,engine,valid,converged";

/// C `printf("%.{digits}e")`: the exponent carries a sign and at least two
/// digits.
pub fn format_exp(value: f64, digits: usize) -> String {
    if !value.is_finite() {
        return format!("{value}");
    }
    let s = format!("{value:.digits$e}");
    let (mantissa, exponent) = s.split_once('e').expect("exponent present");
    let (sign, magnitude) = match exponent.strip_prefix('-') {
        Some(m) => ('-', m),
        None => ('+', exponent),
    };
    format!("{mantissa}e{sign}{magnitude:0>2}")
}

/// Results table, one row per record in result order.
pub fn csv_string(result: &SweepResult) -> String {
    let mut out = String::with_capacity(64 * (result.records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &result.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            format_exp(r.xi_x, 12),
            format_exp(r.epsilon_b, 12),
            format_exp(r.concurrence, 12),
            r.engine.name(),
            r.valid,
            r.converged
        );
    }
    out
}

/// Full result with metadata.
pub fn json_string(result: &SweepResult) -> String {
    serde_json::to_string_pretty(result).expect("result serializes")
}

fn lerp(a: u8, b: u8, t: f64) -> u8 {
    (a as f64 + (b as f64 - a as f64) * t).round() as u8
}

fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let (lo, mid, hi) = ((255u8, 255u8, 255u8), (66u8, 146u8, 198u8), (8u8, 29u8, 88u8));
    let (a, b, s) = if t < 0.5 { (lo, mid, 2.0 * t) } else { (mid, hi, 2.0 * t - 1.0) };
    format!("#{:02x}{:02x}{:02x}", lerp(a.0, b.0, s), lerp(a.1, b.1, s), lerp(a.2, b.2, s))
}

/// Heatmap of one engine's concurrence: ξ_x to the right, ε_b upwards,
/// colour linear on `[0, panel maximum]`.
pub fn svg_heatmap(result: &SweepResult, engine: Engine) -> String {
    let cfg = &result.config;
    let (nx, ny) = (cfg.xi_x.steps, cfg.epsilon_b.steps);
    let (left, top, width, height) = (70.0, 40.0, 480.0, 360.0);
    let (cw, ch) = (width / nx as f64, height / ny as f64);
    let peak = result.engine_records(engine).map(|r| r.concurrence).fold(0.0, f64::max);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="680" height="460" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="24" text-anchor="middle">concurrence, {} engine, rho_x/lambda = {}</text>"#,
        left + width / 2.0,
        engine.name(),
        cfg.distance
    );
    for r in result.engine_records(engine) {
        let (i, j) = (r.index % nx, r.index / nx);
        let level = if peak > 0.0 { r.concurrence / peak } else { 0.0 };
        let _ = writeln!(
            s,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
            left + i as f64 * cw,
            top + (ny - 1 - j) as f64 * ch,
            cw + 0.05,
            ch + 0.05,
            color(level)
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{width}" height="{height}" fill="none" stroke="black"/>"#
    );
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let x = left + f * width;
        let y = top + height - f * height;
        let xv = cfg.xi_x.min + f * (cfg.xi_x.max - cfg.xi_x.min);
        let yv = cfg.epsilon_b.min + f * (cfg.epsilon_b.max - cfg.epsilon_b.min);
        let _ = writeln!(s, r#"<line x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/>"#, top + height, top + height + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{xv:.2}</text>"#, top + height + 18.0);
        let _ = writeln!(s, r#"<line x1="{:.1}" y1="{y:.1}" x2="{left}" y2="{y:.1}" stroke="black"/>"#, left - 5.0);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{yv:.2}</text>"#, left - 8.0, y + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">xi_x</text>"#, left + width / 2.0, top + height + 38.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">epsilon_b</text>"#,
        top + height / 2.0,
        top + height / 2.0
    );
    let (bx, bw, steps) = (left + width + 30.0, 20.0, 50);
    for k in 0..steps {
        let f = k as f64 / steps as f64;
        let _ = writeln!(
            s,
            r#"<rect x="{bx}" y="{:.2}" width="{bw}" height="{:.2}" fill="{}"/>"#,
            top + height - (f + 1.0 / steps as f64) * height,
            height / steps as f64 + 0.05,
            color(f + 0.5 / steps as f64)
        );
    }
    let _ = writeln!(s, r#"<rect x="{bx}" y="{top}" width="{bw}" height="{height}" fill="none" stroke="black"/>"#);
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}">0</text>"#, bx + bw + 4.0, top + height);
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}">{}</text>"#, bx + bw + 4.0, top + 10.0, format_exp(peak, 2));
    s.push_str("</svg>\n");
    s
}

/// Two-column flux table: `# cell flux_phi0`, then `index value` rows.
pub fn profile_table(rows: &[(usize, f64)]) -> String {
    let mut s = String::from("# cell flux_phi0\n");
    for &(i, v) in rows {
        let _ = writeln!(s, "{i} {}", format_exp(v, 12));
    }
    s
}

/// Sixteen `re im` lines in row-major order.
pub fn density_dump(rho: &ReducedDensityMatrix) -> String {
    let mut s = String::new();
    for z in rho.flatten() {
        let _ = writeln!(s, "{} {}", format_exp(z.re, 17), format_exp(z.im, 17));
    }
    s
}

/// Regime labels, one line per distance.
pub fn regimes_text(labels: &[RegimeLabel]) -> String {
    let mut s = String::from("# rho_x_over_lambda flat_max far_max regime\n");
    for l in labels {
        let _ = writeln!(s, "{} {} {} {}", l.distance, format_exp(l.flat, 6), format_exp(l.far, 6), l.regime);
    }
    s
}

/// Writes `contents` to `path`, creating parent directories.
pub fn write_file(path: &Path, contents: &str) -> Result<(), HarvestError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| HarvestError::io(parent, e))?;
    }
    fs::write(path, contents).map_err(|e| HarvestError::io(path, e))
}

/// Writes `results.csv`, `results.json`, one heatmap per engine and, when
/// present, the density dumps under `density/`.
pub fn emit_outputs(result: &SweepResult, dir: &Path) -> Result<(), HarvestError> {
    write_file(&dir.join("results.csv"), &csv_string(result))?;
    write_file(&dir.join("results.json"), &json_string(result))?;
    for &engine in result.config.engine.expand() {
        write_file(&dir.join(format!("heatmap_{}.svg", engine.name())), &svg_heatmap(result, engine))?;
    }
    for (index, rho) in &result.densities {
        write_file(&dir.join("density").join(format!("{index}.txt")), &density_dump(rho))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_style_exponents() {
        assert_eq!(format_exp(0.0, 12), "0.000000000000e+00");
        assert_eq!(format_exp(1.5, 3), "1.500e+00");
        assert_eq!(format_exp(-2.5e-7, 2), "-2.50e-07");
        assert_eq!(format_exp(6.02e123, 1), "6.0e+123");
        assert_eq!(format_exp(1e-300, 0), "1e-300");
    }

    #[test]
    fn profile_format() {
        let t = profile_table(&[(0, 0.25), (1, 0.5)]);
        assert_eq!(t, "# cell flux_phi0\n0 2.500000000000e-01\n1 5.000000000000e-01\n");
    }

    #[test]
    fn colour_ends() {
        assert_eq!(color(0.0), "#ffffff");
        assert_eq!(color(1.0), "#081d58");
    }
}
