//! Minimal SVG charts: a target-vs-generated bar overlay and a relative
//! entropy curve on a log axis.

use std::fmt::Write;

use qgan_core::Pmf;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn open(title: &str) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    svg
}

fn axes(svg: &mut String) {
    let (x0, y0, x1) = (LEFT, HEIGHT - BOTTOM, WIDTH - RIGHT);
    let _ = writeln!(svg, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#);
    let _ = writeln!(svg, r#"<line x1="{x0}" y1="{TOP}" x2="{x0}" y2="{y0}" stroke="black"/>"#);
}

/// Bars of the target next to bars of the generated distribution.
pub fn pmf_overlay(target: &Pmf, generated: &Pmf, title: &str) -> String {
    let mut svg = open(title);
    axes(&mut svg);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let peak = target
        .probs()
        .iter()
        .chain(generated.probs())
        .fold(0.0f64, |a, &b| a.max(b))
        .max(1e-9)
        * 1.1;
    let slot = plot_w / target.len() as f64;
    let bar = slot * 0.38;
    for (m, (t, g)) in target.probs().iter().zip(generated.probs()).enumerate() {
        let x = LEFT + m as f64 * slot + slot * 0.1;
        for (offset, value, color) in [(0.0, t, "#4c72b0"), (bar, g, "#dd8452")] {
            let h = value / peak * plot_h;
            let _ = writeln!(
                svg,
                r#"<rect x="{:.2}" y="{:.2}" width="{bar:.2}" height="{h:.2}" fill="{color}"/>"#,
                x + offset,
                HEIGHT - BOTTOM - h
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">{m}</text>"#,
            LEFT + (m as f64 + 0.5) * slot,
            HEIGHT - BOTTOM + 16.0
        );
    }
    for i in 0..=4 {
        let v = peak * i as f64 / 4.0;
        let y = HEIGHT - BOTTOM - plot_h * i as f64 / 4.0;
        let _ = writeln!(svg, r#"<text x="{}" y="{y:.2}" text-anchor="end">{v:.2}</text>"#, LEFT - 6.0);
    }
    let _ = writeln!(svg, r##"<rect x="{}" y="{}" width="10" height="10" fill="#4c72b0"/>"##, WIDTH - 150.0, TOP);
    let _ = writeln!(svg, r#"<text x="{}" y="{}">target</text>"#, WIDTH - 135.0, TOP + 9.0);
    let _ = writeln!(svg, r##"<rect x="{}" y="{}" width="10" height="10" fill="#dd8452"/>"##, WIDTH - 150.0, TOP + 16.0);
    let _ = writeln!(svg, r#"<text x="{}" y="{}">generated</text>"#, WIDTH - 135.0, TOP + 25.0);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">label</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    svg.push_str("</svg>\n");
    svg
}

/// Relative entropy per epoch on a log10 axis.
pub fn entropy_curve(values: &[f64], title: &str) -> String {
    let mut svg = open(title);
    axes(&mut svg);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let logs: Vec<f64> = values.iter().map(|v| v.max(1e-12).log10()).collect();
    let lo = logs.iter().copied().fold(f64::INFINITY, f64::min).floor();
    let hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max).ceil();
    let (lo, hi) = if lo.is_finite() && hi > lo { (lo, hi) } else { (lo.min(0.0) - 1.0, lo.min(0.0) + 1.0) };
    let span = (values.len().max(2) - 1) as f64;
    let points: Vec<String> = logs
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let x = LEFT + i as f64 / span * plot_w;
            let y = HEIGHT - BOTTOM - (l - lo) / (hi - lo) * plot_h;
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(
        svg,
        r##"<polyline fill="none" stroke="#4c72b0" stroke-width="1.5" points="{}"/>"##,
        points.join(" ")
    );
    let decades = (hi - lo) as i64;
    for d in 0..=decades {
        let y = HEIGHT - BOTTOM - d as f64 / decades as f64 * plot_h;
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{y:.2}" text-anchor="end">1e{}</text>"#,
            LEFT - 6.0,
            lo as i64 + d
        );
    }
    let _ = writeln!(svg, r#"<text x="{LEFT}" y="{}">0</text>"#, HEIGHT - BOTTOM + 16.0);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        WIDTH - RIGHT,
        HEIGHT - BOTTOM + 16.0,
        values.len().saturating_sub(1)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">epoch</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    svg.push_str("</svg>\n");
    svg
}
