//! Minimal static SVG line charts. No external assets, fixed-precision
//! coordinates, deterministic output.

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 520.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 60.0;

/// Render a single polyline chart. With `log_log` set, both axes are
/// logarithmic and non-positive points are dropped.
pub fn polyline_chart(
    title: &str,
    x_label: &str,
    y_label: &str,
    points: &[(f64, f64)],
    log_log: bool,
) -> String {
    let transformed: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| {
            x.is_finite() && y.is_finite() && (!log_log || (*x > 0.0 && *y > 0.0))
        })
        .map(|(x, y)| {
            if log_log {
                (x.log10(), y.log10())
            } else {
                (*x, *y)
            }
        })
        .collect();

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    ));

    if transformed.is_empty() {
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">no plottable points</text>\n",
            WIDTH / 2.0,
            HEIGHT / 2.0
        ));
        svg.push_str("</svg>\n");
        return svg;
    }

    let (mut x_min, mut x_max) = min_max(transformed.iter().map(|p| p.0));
    let (mut y_min, mut y_max) = min_max(transformed.iter().map(|p| p.1));
    if x_max == x_min {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if y_max == y_min {
        y_min -= 0.5;
        y_max += 0.5;
    }
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_px = |x: f64, y: f64| -> (f64, f64) {
        (
            MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w,
            MARGIN_TOP + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h,
        )
    };

    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        MARGIN_LEFT,
        MARGIN_TOP + plot_h,
        MARGIN_LEFT + plot_w,
        MARGIN_TOP + plot_h
    ));
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        MARGIN_LEFT, MARGIN_TOP, MARGIN_LEFT, MARGIN_TOP + plot_h
    ));

    // Ticks and labels.
    for k in 0..=4 {
        let fx = k as f64 / 4.0;
        let xv = x_min + fx * (x_max - x_min);
        let (px, _) = to_px(xv, y_min);
        svg.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            MARGIN_TOP + plot_h,
            MARGIN_TOP + plot_h + 6.0
        ));
        svg.push_str(&format!(
            "<text x=\"{px:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            MARGIN_TOP + plot_h + 20.0,
            tick_label(xv, log_log)
        ));

        let yv = y_min + fx * (y_max - y_min);
        let (_, py) = to_px(x_min, yv);
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" stroke=\"black\"/>\n",
            MARGIN_LEFT - 6.0,
            MARGIN_LEFT
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
            MARGIN_LEFT - 10.0,
            py + 4.0,
            tick_label(yv, log_log)
        ));
    }

    // Axis labels.
    let x_axis = if log_log { format!("{x_label} (log)") } else { x_label.to_owned() };
    let y_axis = if log_log { format!("{y_label} (log)") } else { y_label.to_owned() };
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0,
        escape(&x_axis)
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">{}</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        escape(&y_axis)
    ));

    // The polyline itself.
    let mut coords = String::new();
    for (x, y) in &transformed {
        let (px, py) = to_px(*x, *y);
        coords.push_str(&format!("{px:.2},{py:.2} "));
    }
    svg.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n",
        coords.trim_end()
    ));
    svg.push_str("</svg>\n");
    svg
}

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}

fn tick_label(value: f64, log_axis: bool) -> String {
    if log_axis {
        format!("1e{value:.2}")
    } else if value == 0.0 {
        "0".to_owned()
    } else if value.abs() >= 1e4 || value.abs() < 1e-3 {
        format!("{value:.2e}")
    } else {
        format!("{value:.4}")
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
