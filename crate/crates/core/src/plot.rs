//! Minimal deterministic SVG output: a line plot and a barcode chart.

use std::fmt::Write as _;

use crate::persistence::Barcode;

const W: f64 = 640.0;
const H: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

fn header(out: &mut String, title: &str, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{height}" viewBox="0 0 {W} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{W}" height="{height}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
        W / 2.0,
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Range padded so that a constant series still gets a nonzero span.
fn span(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn axes(
    out: &mut String,
    height: f64,
    x: (f64, f64),
    y: Option<(f64, f64)>,
    xlabel: &str,
    ylabel: &str,
) {
    let bottom = height - BOTTOM;
    let _ = writeln!(
        out,
        r#"<line x1="{LEFT}" y1="{bottom}" x2="{}" y2="{bottom}" stroke="black"/>"#,
        W - RIGHT
    );
    let _ = writeln!(
        out,
        r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{bottom}" stroke="black"/>"#
    );
    for i in 0..=4 {
        let t = f64::from(i) / 4.0;
        let px = LEFT + t * (W - LEFT - RIGHT);
        let _ = writeln!(
            out,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{:.3}</text>"#,
            bottom + 16.0,
            x.0 + t * (x.1 - x.0)
        );
        if let Some(y) = y {
            let py = bottom - t * (bottom - TOP);
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{:.0}</text>"#,
                LEFT - 6.0,
                py + 4.0,
                y.0 + t * (y.1 - y.0)
            );
        }
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + (W - LEFT - RIGHT) / 2.0,
        height - 12.0,
        escape(xlabel)
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        (TOP + bottom) / 2.0,
        (TOP + bottom) / 2.0,
        escape(ylabel)
    );
}

/// Polyline through `points` with labelled axes.
pub fn line_plot(title: &str, xlabel: &str, ylabel: &str, points: &[(f64, f64)]) -> String {
    let mut out = String::new();
    header(&mut out, title, H);
    let (x0, x1) = span(
        points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min),
        points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max),
    );
    let (y0, y1) = span(
        points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min),
        points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max),
    );
    if points.is_empty() {
        axes(&mut out, H, (0.0, 1.0), Some((0.0, 1.0)), xlabel, ylabel);
    } else {
        axes(&mut out, H, (x0, x1), Some((y0, y1)), xlabel, ylabel);
        let bottom = H - BOTTOM;
        let coords: Vec<String> = points
            .iter()
            .map(|&(x, y)| {
                let px = LEFT + (x - x0) / (x1 - x0) * (W - LEFT - RIGHT);
                let py = bottom - (y - y0) / (y1 - y0) * (bottom - TOP);
                format!("{px:.2},{py:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#,
            coords.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}

/// (birth, death, essential) in plot units.
type Bar = (f64, f64, bool);

/// Horizontal bars grouped by dimension, longest first within each group.
/// Bars are the `top_k` longest presented intervals per dimension; `scale`
/// multiplies filtration values (1 for diameters, 0.5 for ball radii).
/// Essential bars run to the horizon and end in an arrow.
pub fn barcode_svg(title: &str, b: &Barcode, scale: f64, axis_label: &str, top_k: usize) -> String {
    let horizon = b.horizon() * scale;
    let mut groups: Vec<(usize, Vec<Bar>)> = Vec::new();
    for i in b.presented() {
        let bar = (
            i.birth * scale,
            i.death.min(b.horizon()) * scale,
            i.is_essential(),
        );
        match groups.iter_mut().find(|g| g.0 == i.dim) {
            Some(g) => g.1.push(bar),
            None => groups.push((i.dim, vec![bar])),
        }
    }
    for g in &mut groups {
        g.1.sort_by(|a, b| {
            (b.1 - b.0)
                .total_cmp(&(a.1 - a.0))
                .then(a.0.total_cmp(&b.0))
        });
        g.1.truncate(top_k);
    }
    let rows: usize = groups.iter().map(|g| g.1.len() + 1).sum();
    let row_h = 8.0;
    let height = TOP + BOTTOM + (rows.max(1) as f64) * row_h + 10.0;
    let mut out = String::new();
    header(&mut out, title, height);
    let x1 = if horizon.is_finite() && horizon > 0.0 {
        horizon
    } else {
        1.0
    };
    axes(&mut out, height, (0.0, x1), None, axis_label, "bars");
    let px = |x: f64| LEFT + x / x1 * (W - LEFT - RIGHT);
    let mut y = TOP + 4.0;
    let colors = ["firebrick", "steelblue", "darkgreen", "darkorange"];
    for (dim, bars) in &groups {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">H{dim}</text>"#,
            LEFT - 6.0,
            y + row_h
        );
        y += row_h;
        let color = colors[dim % colors.len()];
        for &(birth, death, essential) in bars {
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="4"/>"#,
                px(birth),
                px(death)
            );
            if essential {
                let tip = px(death);
                let _ = writeln!(
                    out,
                    r#"<polygon points="{:.2},{:.2} {:.2},{y:.2} {:.2},{:.2}" fill="{color}"/>"#,
                    tip - 6.0,
                    y - 4.0,
                    tip,
                    tip - 6.0,
                    y + 4.0
                );
            }
            y += row_h;
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::Interval;

    #[test]
    fn line_plot_is_deterministic_and_well_formed() {
        let pts = [(0.05, 700.0), (0.5, 600.0), (0.95, 500.0)];
        let a = line_plot("n* vs gamma", "gamma", "n*", &pts);
        assert_eq!(a, line_plot("n* vs gamma", "gamma", "n*", &pts));
        assert!(a.starts_with("<svg") && a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("<polyline").count(), 1);
        assert!(line_plot("t", "x", "y", &[]).contains("</svg>"));
        assert!(line_plot("a<b", "x", "y", &[(1.0, 1.0)]).contains("a&lt;b"));
    }

    #[test]
    fn barcode_chart_groups_and_limits_bars() {
        let mut iv = vec![Interval::new(0, 0.0, f64::INFINITY)];
        for j in 0..30 {
            iv.push(Interval::new(1, 0.1, 0.2 + f64::from(j) * 0.01));
        }
        iv.push(Interval::new(2, 0.3, f64::INFINITY));
        let b = Barcode::new(iv, 2, 1.0);
        let svg = barcode_svg("bars", &b, 0.5, "ball radius", 20);
        assert!(svg.contains(">H0<") && svg.contains(">H1<") && !svg.contains(">H2<"));
        assert_eq!(svg.matches("stroke-width=\"4\"").count(), 21);
        assert_eq!(svg.matches("<polygon").count(), 1);
    }
}
