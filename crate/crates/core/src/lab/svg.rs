use std::fmt::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use super::SweepRow;
use crate::bounds::{effective_lower_ratio, ratio_upper_finite_field};

const W: f64 = 720.0;
const H: f64 = 440.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 52.0;
const BITS: u32 = 128;

/// A static line chart of `ln h / (g ln q)` against `g`, with the
/// horizontal bound `2 ln(1 + sqrt q) / ln q` and the effective floor
/// `1 - (1 + ln 4g) / (g ln 2)`.
///
/// With `timestamp` a generation-time comment is embedded; everything
/// else is a pure function of the rows.
pub fn render_svg(rows: &[SweepRow], q: u64, timestamp: bool) -> String {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| Some((r.bounds.g as f64, r.bounds.ratio.as_ref()?.parse().ok()?)))
        .collect();
    let upper = ratio_upper_finite_field(q, BITS).to_f64();
    let g_max = rows.iter().map(|r| r.bounds.g).max().unwrap_or(1).max(2);
    let floor: Vec<(f64, f64)> = (1..=g_max)
        .map(|g| (g as f64, effective_lower_ratio(g, BITS).to_f64()))
        .collect();

    let y_hi = points.iter().map(|p| p.1).fold(upper, f64::max).max(1.0) + 0.1;
    let y_lo = 0.0f64.min(floor.iter().map(|p| p.1).fold(f64::INFINITY, f64::min).max(-1.0));
    let (x_lo, x_hi) = (1.0, g_max as f64);
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * (W - LEFT - RIGHT);
    let sy = |y: f64| TOP + (y_hi - y.clamp(y_lo, y_hi)) / (y_hi - y_lo) * (H - TOP - BOTTOM);
    let path = |pts: &[(f64, f64)]| {
        pts.iter()
            .enumerate()
            .map(|(i, &(x, y))| format!("{}{:.2},{:.2}", if i == 0 { "M" } else { " L" }, sx(x), sy(y)))
            .collect::<String>()
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    if timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let _ = writeln!(s, "<!-- generated at unix time {secs} -->");
    }
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">ln h / (g ln q) over F_{q}</text>"#,
        W / 2.0
    );

    // axes and ticks
    let (x0, x1, y0, y1) = (sx(x_lo), sx(x_hi), sy(y_lo), sy(y_hi));
    let _ = writeln!(s, r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" fill="none" stroke="black"/>"#);
    let step = (g_max as f64 / 10.0).ceil().max(1.0) as u64;
    for g in (1..=g_max).filter(|g| (g - 1) % step == 0) {
        let x = sx(g as f64);
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, y0 + 4.0);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{g}</text>"#, y0 + 18.0);
    }
    let mut y = (y_lo * 4.0).ceil() / 4.0;
    while y <= y_hi {
        let py = sy(y);
        let _ = writeln!(s, r##"<line x1="{x0:.2}" y1="{py:.2}" x2="{x1:.2}" y2="{py:.2}" stroke="#e4e4e4"/>"##);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{y:.2}</text>"#, x0 - 6.0, py + 4.0);
        y += 0.25;
    }
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">genus g</text>"#, (x0 + x1) / 2.0, H - 12.0);

    let uy = sy(upper);
    let _ = writeln!(s, r##"<line x1="{x0:.2}" y1="{uy:.2}" x2="{x1:.2}" y2="{uy:.2}" stroke="#c0392b" stroke-dasharray="6 4"/>"##);
    let _ = writeln!(s, r##"<path d="{}" fill="none" stroke="#2e86c1" stroke-dasharray="2 3"/>"##, path(&floor));
    if !points.is_empty() {
        let _ = writeln!(s, r#"<path d="{}" fill="none" stroke="black" stroke-width="1.5"/>"#, path(&points));
        for &(x, y) in &points {
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5"/>"#, sx(x), sy(y));
        }
    }

    let lx = x1 - 250.0;
    for (i, (label, style)) in [
        ("ln h / (g ln q)", r#"stroke="black""#),
        ("2 ln(1 + sqrt q) / ln q", r##"stroke="#c0392b" stroke-dasharray="6 4""##),
        ("1 - (1 + ln 4g) / (g ln 2)", r##"stroke="#2e86c1" stroke-dasharray="2 3""##),
    ]
    .iter()
    .enumerate()
    {
        let ly = y0 - 60.0 + 16.0 * i as f64;
        let _ = writeln!(s, r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" {style}/>"#, lx + 24.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{label}</text>"#, lx + 30.0, ly + 4.0);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_without_timestamp() {
        let a = render_svg(&[], 2, false);
        assert_eq!(a, render_svg(&[], 2, false));
        assert!(a.starts_with("<?xml") && a.ends_with("</svg>\n"));
        assert!(!a.contains("<!--"));
        assert!(render_svg(&[], 2, true).contains("<!-- generated at"));
    }
}
