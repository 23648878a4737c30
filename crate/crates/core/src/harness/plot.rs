use std::fmt::Write;

use super::curve::ErrorCurve;
use super::schedule::MAX_DEGREE;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

/// Error rate vs degree as a standalone SVG line chart.
pub fn curve_svg(curve: &ErrorCurve) -> String {
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let x = |d: f64| MARGIN + (d - 1.0) / f64::from(MAX_DEGREE - 1) * plot_w;
    let y = |r: f64| HEIGHT - MARGIN - r * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="25" text-anchor="middle" font-family="sans-serif" font-size="16">{} / {}</text>"#,
        WIDTH / 2.0,
        curve.algorithm(),
        curve.gender()
    );
    let _ = writeln!(
        s,
        r#"<path d="M{:.1},{:.1} V{:.1} H{:.1}" fill="none" stroke="black"/>"#,
        MARGIN,
        MARGIN,
        HEIGHT - MARGIN,
        WIDTH - MARGIN
    );
    let _ = writeln!(
        s,
        r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#999" stroke-dasharray="4 4"/>"##,
        MARGIN,
        y(0.5),
        WIDTH - MARGIN,
        y(0.5)
    );
    for d in [1u32, 5, 10, 15, 20, 25] {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-family="sans-serif" font-size="11">{d}</text>"#,
            x(f64::from(d)),
            HEIGHT - MARGIN + 16.0
        );
    }
    for r in [0.0, 0.5, 1.0] {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end" font-family="sans-serif" font-size="11">{r:.1}</text>"#,
            MARGIN - 6.0,
            y(r) + 4.0
        );
    }
    let points: Vec<String> = curve
        .rates()
        .into_iter()
        .filter_map(|(d, r)| r.map(|r| format!("{:.1},{:.1}", x(f64::from(d)), y(r))))
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#c0392b" stroke-width="2"/>"##,
        points.join(" ")
    );
    s.push_str("</svg>\n");
    s
}
