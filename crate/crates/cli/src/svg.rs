use std::fmt::Write;

use tailratio::montecarlo::SimTable;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 120.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

/// Line chart of the table's means against `i`, one series per `s`, with a
/// horizontal reference line at `target`. Rows with `i < from` are skipped.
pub fn line_chart(table: &SimTable, target: f64, from: usize, title: &str) -> String {
    let rows: Vec<_> = table.rows.iter().filter(|r| r.i >= from && r.mean.is_finite()).collect();
    let (mut x_lo, mut x_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_lo, mut y_hi) = (target, target);
    for r in &rows {
        x_lo = x_lo.min(r.i as f64);
        x_hi = x_hi.max(r.i as f64);
        y_lo = y_lo.min(r.mean);
        y_hi = y_hi.max(r.mean);
    }
    if !x_lo.is_finite() {
        x_lo = from as f64;
        x_hi = x_lo + 1.0;
    }
    if x_hi <= x_lo {
        x_hi = x_lo + 1.0;
    }
    let pad = if y_hi > y_lo { 0.05 * (y_hi - y_lo) } else { 0.5 * y_hi.abs().max(1.0) };
    y_lo -= pad;
    y_hi += pad;

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let py = |y: f64| TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{:.1}" y="18" text-anchor="middle">{}</text>"#, LEFT + plot_w / 2.0, escape(title));
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );

    for k in 0..=5 {
        let x = x_lo + (x_hi - x_lo) * k as f64 / 5.0;
        let y = y_lo + (y_hi - y_lo) * k as f64 / 5.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            px(x),
            TOP + plot_h + 18.0,
            tick(x)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            py(y) + 4.0,
            tick(y)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">i</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );

    let _ = writeln!(
        svg,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1.5"/>"#,
        LEFT,
        py(target),
        LEFT + plot_w,
        py(target)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}">true {}</text>"#,
        LEFT + plot_w + 8.0,
        py(target) + 4.0,
        tick(target)
    );

    for (idx, s) in table.s_values().into_iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let points: Vec<String> = rows
            .iter()
            .filter(|r| r.s == s)
            .map(|r| format!("{:.2},{:.2}", px(r.i as f64), py(r.mean)))
            .collect();
        if points.is_empty() {
            continue;
        }
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let ly = TOP + 20.0 + 18.0 * idx as f64;
        let lx = LEFT + plot_w + 8.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{color}" stroke-width="2"/>"#,
            ly - 4.0,
            lx + 20.0,
            ly - 4.0
        );
        let _ = writeln!(svg, r#"<text x="{:.1}" y="{ly:.1}">s = {s}</text>"#, lx + 26.0);
    }
    svg.push_str("</svg>\n");
    svg
}

fn tick(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e5).contains(&a) {
        format!("{v:.2e}")
    } else if a >= 100.0 {
        format!("{v:.0}")
    } else if a >= 1.0 {
        format!("{v:.2}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
