//! Deterministic output: %g-style float formatting, CSV assembly, and the
//! self-contained SVG line chart.

use std::io::Write;
use std::path::Path;

/// Formats like C's `%.12g`: 12 significant digits, fixed or scientific
/// depending on the exponent, trailing zeros stripped.
pub fn g12(x: f64) -> String {
    format_g(x, 12)
}

fn format_g(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    // The exponent of the value after rounding to `sig` digits decides the
    // style, exactly as %g does.
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("{:e} always carries an exponent");
    let exponent: i32 = exponent.parse().expect("exponent is an integer");
    if exponent >= -4 && exponent < sig as i32 {
        let decimals = (sig as i32 - 1 - exponent).max(0) as usize;
        strip_zeros(format!("{x:.decimals$}"))
    } else {
        let mantissa = strip_zeros(mantissa.to_string());
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exponent.abs())
    }
}

fn strip_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Empty cell for a missing value, `g12` otherwise.
pub fn opt_g12(x: Option<f64>) -> String {
    x.map(g12).unwrap_or_default()
}

/// CSV under construction: a schema tag, comment lines, a header, rows.
/// Cells never contain commas, so no quoting is involved.
pub struct Table {
    out: String,
}

impl Table {
    pub fn new(schema: &str) -> Self {
        Table {
            out: format!("# schema: {schema}\n"),
        }
    }

    pub fn comment(&mut self, text: &str) {
        self.out.push_str("# ");
        self.out.push_str(text);
        self.out.push('\n');
    }

    pub fn row<S: AsRef<str>>(&mut self, cells: &[S]) {
        let mut first = true;
        for cell in cells {
            if !first {
                self.out.push(',');
            }
            self.out.push_str(cell.as_ref());
            first = false;
        }
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

/// Writes to the file when a path is given, otherwise to stdout.
pub fn write_out(path: Option<&Path>, content: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, content),
        None => std::io::stdout().write_all(content.as_bytes()),
    }
}

/// A minimal standalone SVG line chart with a log-scaled y axis. `points`
/// are (x, y) in data coordinates; y values are clamped below at 1e-16
/// before taking logs.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, points: &[(f64, f64)]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 420.0;
    const LEFT: f64 = 80.0;
    const RIGHT: f64 = 24.0;
    const TOP: f64 = 46.0;
    const BOTTOM: f64 = 58.0;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\" font-family=\"monospace\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        W / 2.0,
        title
    ));

    if points.is_empty() {
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">no completed rows</text>\n",
            W / 2.0,
            H / 2.0
        ));
        svg.push_str("</svg>\n");
        return svg;
    }

    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(x, y)| (x, y.max(1e-16).log10()))
        .collect();
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut lmin = f64::INFINITY;
    let mut lmax = f64::NEG_INFINITY;
    for &(x, l) in &logs {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        lmin = lmin.min(l);
        lmax = lmax.max(l);
    }
    if xmin == xmax {
        xmin -= 1.0;
        xmax += 1.0;
    }
    let mut dec_lo = lmin.floor() as i32;
    let mut dec_hi = lmax.ceil() as i32;
    if dec_lo == dec_hi {
        dec_lo -= 1;
        dec_hi += 1;
    }

    let sx = |x: f64| LEFT + (x - xmin) / (xmax - xmin) * (W - LEFT - RIGHT);
    let sy = |l: f64| H - BOTTOM - (l - dec_lo as f64) / (dec_hi - dec_lo) as f64 * (H - TOP - BOTTOM);

    // Decade gridlines and y tick labels.
    for dec in dec_lo..=dec_hi {
        let y = sy(dec as f64);
        svg.push_str(&format!(
            "  <line x1=\"{LEFT}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
            W - RIGHT
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">1e{dec}</text>\n",
            LEFT - 8.0,
            y + 4.0
        ));
    }

    // X ticks at the data points.
    for &(x, _) in &logs {
        let px = sx(x);
        svg.push_str(&format!(
            "  <line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
            H - BOTTOM,
            H - BOTTOM + 6.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            H - BOTTOM + 20.0,
            g12(x)
        ));
    }

    // Axes.
    svg.push_str(&format!(
        "  <line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{:.2}\" stroke=\"#000000\" stroke-width=\"1\"/>\n",
        H - BOTTOM
    ));
    svg.push_str(&format!(
        "  <line x1=\"{LEFT}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#000000\" stroke-width=\"1\"/>\n",
        H - BOTTOM,
        W - RIGHT,
        H - BOTTOM
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
        (LEFT + W - RIGHT) / 2.0,
        H - 16.0,
        x_label
    ));
    svg.push_str(&format!(
        "  <text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">{}</text>\n",
        (TOP + H - BOTTOM) / 2.0,
        (TOP + H - BOTTOM) / 2.0,
        y_label
    ));

    // The curve itself.
    let path: Vec<String> = logs
        .iter()
        .map(|&(x, l)| format!("{:.2},{:.2}", sx(x), sy(l)))
        .collect();
    svg.push_str(&format!(
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\"/>\n",
        path.join(" ")
    ));
    for &(x, l) in &logs {
        svg.push_str(&format!(
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"#1f6fb2\"/>\n",
            sx(x),
            sy(l)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12_styles_match_printf() {
        assert_eq!(g12(0.0), "0");
        assert_eq!(g12(1.0), "1");
        assert_eq!(g12(-2.5), "-2.5");
        assert_eq!(g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(g12(0.0001), "0.0001");
        assert_eq!(g12(0.00001), "1e-05");
        assert_eq!(g12(1e13), "1e+13");
        assert_eq!(g12(123456789012.0), "123456789012");
        assert_eq!(g12(1234567890123.0), "1.23456789012e+12");
        assert_eq!(g12(0.25), "0.25");
        assert_eq!(g12(8.0 / 27.0), "0.296296296296");
    }

    #[test]
    fn g12_rounds_up_across_a_decade() {
        assert_eq!(g12(0.999_999_999_999_6), "1");
        assert_eq!(g12(9.999_999_999_996e-6), "1e-05");
    }

    #[test]
    fn chart_is_self_contained() {
        let svg = line_chart("t", "x", "y", &[(2.0, 0.1), (4.0, 0.01)]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("href"));
        assert!(svg.contains("polyline"));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(512))]

        // 12 significant digits pin a double to ~5e-13 relative error.
        #[test]
        fn g12_roundtrips_normal_doubles(x in -1e300f64..1e300) {
            proptest::prop_assume!(x == 0.0 || x.is_normal());
            let s = g12(x);
            let back: f64 = s.parse().unwrap();
            if x == 0.0 {
                proptest::prop_assert_eq!(back, 0.0);
            } else {
                proptest::prop_assert!(((back - x) / x).abs() <= 1e-11, "{} -> {}", x, s);
            }
        }

        // Mantissa range [1.05, 9.5] keeps rounding from crossing a decade,
        // so the notation is determined by the exponent alone.
        #[test]
        fn g12_style_matches_magnitude(mant in 1.05f64..9.5, exp in -300i32..300) {
            let x = mant * 10f64.powi(exp);
            let s = g12(x);
            let scientific = exp >= 12 || exp < -4;
            proptest::prop_assert_eq!(s.contains('e'), scientific, "{} -> {}", x, s);
        }

        #[test]
        fn g12_is_sign_symmetric(x in 1e-300f64..1e300) {
            let s = format!("-{}", g12(x));
            proptest::prop_assert_eq!(s, g12(-x));
        }
    }
}
