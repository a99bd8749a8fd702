//! Minimal self-contained SVG line charts for paths and bands.

use std::fmt::Write;

pub struct Series<'a> {
    pub label: &'a str,
    pub values: &'a [f64],
    pub color: &'a str,
    pub dashed: bool,
}

pub struct Band<'a> {
    pub lower: &'a [f64],
    pub upper: &'a [f64],
    pub color: &'a str,
}

const W: f64 = 720.0;
const H: f64 = 360.0;
const PAD: f64 = 48.0;

pub fn chart(title: &str, years: &[i32], series: &[Series<'_>], bands: &[Band<'_>]) -> String {
    let finite = |v: &&f64| v.is_finite();
    let all = series
        .iter()
        .flat_map(|s| s.values.iter())
        .chain(bands.iter().flat_map(|b| b.lower.iter().chain(b.upper.iter())))
        .filter(finite);
    let (mut lo, mut hi) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(*v), b.max(*v)));
    if !lo.is_finite() {
        lo = 0.0;
        hi = 1.0;
    }
    if hi - lo < 1e-12 {
        hi = lo + 1.0;
    }
    let (x0, x1) = (*years.first().unwrap_or(&0) as f64, *years.last().unwrap_or(&1) as f64);
    let span = if x1 > x0 { x1 - x0 } else { 1.0 };
    let px = |y: i32| PAD + (y as f64 - x0) / span * (W - 2.0 * PAD);
    let py = |v: f64| H - PAD - (v - lo) / (hi - lo) * (H - 2.0 * PAD);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{PAD}" y="24" font-family="sans-serif" font-size="14">{}</text>"#, escape(title));
    let _ = writeln!(
        s,
        r##"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="#999"/>"##,
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    for (v, anchor) in [(lo, H - PAD), (hi, PAD)] {
        let _ = writeln!(s, r#"<text x="4" y="{anchor:.1}" font-family="sans-serif" font-size="10">{v:.3}</text>"#);
    }
    for (y, anchor) in [(x0, PAD), (x1, W - PAD - 24.0)] {
        let _ = writeln!(s, r#"<text x="{anchor:.1}" y="{}" font-family="sans-serif" font-size="10">{y}</text>"#, H - PAD + 14.0);
    }
    for b in bands {
        let mut pts = Vec::new();
        for (i, y) in years.iter().enumerate() {
            if b.upper[i].is_finite() {
                pts.push(format!("{:.2},{:.2}", px(*y), py(b.upper[i])));
            }
        }
        for (i, y) in years.iter().enumerate().rev() {
            if b.lower[i].is_finite() {
                pts.push(format!("{:.2},{:.2}", px(*y), py(b.lower[i])));
            }
        }
        let _ = writeln!(s, r#"<polygon points="{}" fill="{}" fill-opacity="0.25" stroke="none"/>"#, pts.join(" "), b.color);
    }
    for (k, ser) in series.iter().enumerate() {
        let pts: Vec<String> = years
            .iter()
            .zip(ser.values)
            .filter(|(_, v)| v.is_finite())
            .map(|(y, v)| format!("{:.2},{:.2}", px(*y), py(*v)))
            .collect();
        let dash = if ser.dashed { r#" stroke-dasharray="5,3""# } else { "" };
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"{dash}/>"#, pts.join(" "), ser.color);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="{}">{}</text>"#,
            W - PAD - 140.0,
            PAD + 14.0 + 14.0 * k as f64,
            ser.color,
            escape(ser.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
