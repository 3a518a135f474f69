//! Deterministic CSV and SVG emission. CSV is the record of truth: fixed
//! 17-significant-digit scientific formatting, metadata lines prefixed
//! with '#' ahead of the header row. SVG plots are optional companions.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// One numeric value, formatted for byte-identical reproduction.
pub fn fmt_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// Compact γ tag for file names and column labels: `0.5` → `0.5`,
/// `-0.5` → `m0.5`.
pub fn gamma_tag(gamma: f64) -> String {
    if gamma < 0.0 {
        format!("m{}", -gamma)
    } else {
        format!("{gamma}")
    }
}

pub fn write_csv(
    path: &Path,
    metadata: &[(String, String)],
    header: &[String],
    rows: &[Vec<f64>],
) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut out = String::new();
    for (key, value) in metadata {
        out.push_str(&format!("# {key} = {value}\n"));
    }
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(|&v| fmt_value(v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    let mut file = fs::File::create(path)?;
    file.write_all(out.as_bytes())
}

/// A named curve for [`line_plot`].
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_L: f64 = 80.0;
const MARGIN_R: f64 = 25.0;
const MARGIN_T: f64 = 45.0;
const MARGIN_B: f64 = 55.0;

fn ranges(series: &[Series]) -> ((f64, f64), (f64, f64)) {
    let mut x_min = f64::MAX;
    let mut x_max = f64::MIN;
    let mut y_min = f64::MAX;
    let mut y_max = f64::MIN;
    for s in series {
        for &(x, y) in &s.points {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    if x_max <= x_min {
        x_max = x_min + 1.0;
    }
    if y_max <= y_min {
        y_max = y_min + 1.0;
    }
    let pad = 0.04 * (y_max - y_min);
    ((x_min, x_max), (y_min - pad, y_max + pad))
}

/// Standalone SVG 1.1 line plot, one file per plot.
pub fn line_plot(
    path: &Path,
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[Series],
) -> std::io::Result<PathBuf> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let ((x0, x1), (y0, y1)) = ranges(series);
    let px = |x: f64| MARGIN_L + (x - x0) / (x1 - x0) * (WIDTH - MARGIN_L - MARGIN_R);
    let py = |y: f64| HEIGHT - MARGIN_B - (y - y0) / (y1 - y0) * (HEIGHT - MARGIN_T - MARGIN_B);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" \
         version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"25\" font-family=\"sans-serif\" font-size=\"17\" \
         text-anchor=\"middle\">{title}</text>\n",
        WIDTH / 2.0
    ));

    // frame and ticks
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"none\" \
         stroke=\"black\" stroke-width=\"1\"/>\n",
        WIDTH - MARGIN_L - MARGIN_R,
        HEIGHT - MARGIN_T - MARGIN_B
    ));
    for i in 0..=5 {
        let fx = x0 + (x1 - x0) * i as f64 / 5.0;
        let fy = y0 + (y1 - y0) * i as f64 / 5.0;
        let tx = px(fx);
        let ty = py(fy);
        svg.push_str(&format!(
            "<line x1=\"{tx:.1}\" y1=\"{:.1}\" x2=\"{tx:.1}\" y2=\"{:.1}\" stroke=\"#cccccc\" \
             stroke-width=\"0.5\"/>\n",
            MARGIN_T,
            HEIGHT - MARGIN_B
        ));
        svg.push_str(&format!(
            "<line x1=\"{MARGIN_L}\" y1=\"{ty:.1}\" x2=\"{:.1}\" y2=\"{ty:.1}\" \
             stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n",
            WIDTH - MARGIN_R
        ));
        svg.push_str(&format!(
            "<text x=\"{tx:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{fx:.4}</text>\n",
            HEIGHT - MARGIN_B + 18.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"end\">{fy:.4}</text>\n",
            MARGIN_L - 6.0,
            ty + 4.0
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\">{x_label}</text>\n",
        MARGIN_L + (WIDTH - MARGIN_L - MARGIN_R) / 2.0,
        HEIGHT - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\" transform=\"rotate(-90 18 {:.1})\">{y_label}</text>\n",
        MARGIN_T + (HEIGHT - MARGIN_T - MARGIN_B) / 2.0,
        MARGIN_T + (HEIGHT - MARGIN_T - MARGIN_B) / 2.0
    ));

    for (idx, s) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\"/>\n",
            pts.join(" ")
        ));
        let ly = MARGIN_T + 16.0 + idx as f64 * 18.0;
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n",
            WIDTH - MARGIN_R - 150.0,
            WIDTH - MARGIN_R - 120.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            WIDTH - MARGIN_R - 112.0,
            ly + 4.0,
            s.name
        ));
    }
    svg.push_str("</svg>\n");
    fs::write(path, svg)?;
    Ok(path.to_path_buf())
}

fn ramp(t: f64) -> (u8, u8, u8) {
    // blue -> white -> red
    let t = t.clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64, s: f64| (a + (b - a) * s).round() as u8;
    if t < 0.5 {
        let s = t / 0.5;
        (lerp(11.0, 247.0, s), lerp(61.0, 247.0, s), lerp(145.0, 247.0, s))
    } else {
        let s = (t - 0.5) / 0.5;
        (lerp(247.0, 178.0, s), lerp(247.0, 24.0, s), lerp(247.0, 43.0, s))
    }
}

/// Standalone SVG 1.1 heatmap of a row-major matrix (y slow index).
/// Large matrices are strided down to at most 200 cells per axis.
pub fn heatmap(
    path: &Path,
    title: &str,
    xs: &[f64],
    ys: &[f64],
    values: &[f64],
) -> std::io::Result<PathBuf> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let nx = xs.len();
    let ny = ys.len();
    let stride_x = nx.div_ceil(200);
    let stride_y = ny.div_ceil(200);
    let vmax = values.iter().cloned().fold(f64::MIN, f64::max);
    let vmin = values.iter().cloned().fold(f64::MAX, f64::min);
    let span = (vmax - vmin).max(1e-300);

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let x_lo = xs[0];
    let x_hi = xs[nx - 1];
    let y_lo = ys[0];
    let y_hi = ys[ny - 1];
    let px = |x: f64| MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let py = |y: f64| HEIGHT - MARGIN_B - (y - y_lo) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" \
         version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"25\" font-family=\"sans-serif\" font-size=\"17\" \
         text-anchor=\"middle\">{title}</text>\n",
        WIDTH / 2.0
    ));
    let mut iy = 0;
    while iy < ny {
        let iy2 = (iy + stride_y).min(ny - 1);
        let mut ix = 0;
        while ix < nx {
            let ix2 = (ix + stride_x).min(nx - 1);
            let v = values[iy * nx + ix];
            let (r, g, b) = ramp((v - vmin) / span);
            let x_left = px(xs[ix]);
            let y_top = py(ys[iy2]);
            let w = (px(xs[ix2]) - x_left).max(0.3);
            let h = (py(ys[iy]) - y_top).max(0.3);
            svg.push_str(&format!(
                "<rect x=\"{x_left:.2}\" y=\"{y_top:.2}\" width=\"{w:.2}\" height=\"{h:.2}\" \
                 fill=\"rgb({r},{g},{b})\"/>\n"
            ));
            if ix2 == nx - 1 {
                break;
            }
            ix = ix2;
        }
        if iy2 == ny - 1 {
            break;
        }
        iy = iy2;
    }
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{plot_w:.1}\" height=\"{plot_h:.1}\" \
         fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n"
    ));
    for i in 0..=4 {
        let fx = x_lo + (x_hi - x_lo) * i as f64 / 4.0;
        let fy = y_lo + (y_hi - y_lo) * i as f64 / 4.0;
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{fx:.3}</text>\n",
            px(fx),
            HEIGHT - MARGIN_B + 18.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"end\">{fy:.3}</text>\n",
            MARGIN_L - 6.0,
            py(fy) + 4.0
        ));
    }
    svg.push_str("</svg>\n");
    fs::write(path, svg)?;
    Ok(path.to_path_buf())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_formatting_is_17_significant_digits() {
        assert_eq!(fmt_value(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_value(-0.5), "-5.0000000000000000e-1");
        let pi = std::f64::consts::PI;
        let text = fmt_value(pi);
        assert_eq!(text.parse::<f64>().unwrap(), pi, "round-trips bit-exactly");
    }

    #[test]
    fn gamma_tags() {
        assert_eq!(gamma_tag(0.5), "0.5");
        assert_eq!(gamma_tag(-0.5), "m0.5");
        assert_eq!(gamma_tag(0.0), "0");
    }

    #[test]
    fn csv_is_deterministic() {
        let dir = std::env::temp_dir().join("gamma_qm_csv_test");
        let path = dir.join("t.csv");
        let meta = vec![("L".to_string(), "1".to_string())];
        let header = vec!["x".to_string(), "y".to_string()];
        let rows = vec![vec![0.1, 0.2], vec![0.3, 0.4]];
        write_csv(&path, &meta, &header, &rows).unwrap();
        let first = std::fs::read(&path).unwrap();
        write_csv(&path, &meta, &header, &rows).unwrap();
        let second = std::fs::read(&path).unwrap();
        assert_eq!(first, second);
        let text = String::from_utf8(first).unwrap();
        assert!(text.starts_with("# L = 1\nx,y\n"));
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn svg_emits_valid_shell() {
        let dir = std::env::temp_dir().join("gamma_qm_svg_test");
        let path = dir.join("p.svg");
        let series = vec![Series {
            name: "one".into(),
            points: vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.5)],
        }];
        line_plot(&path, "t", "x", "y", &series).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("<?xml version=\"1.0\""));
        assert!(text.contains("version=\"1.1\""));
        assert!(text.contains("polyline"));
        assert!(text.ends_with("</svg>\n"));
        std::fs::remove_file(&path).ok();
    }
}
