//! Static SVG charts rendered from benchmark records: mean time, timing
//! ratio and mean residual against `n`. Output is a pure function of the
//! records, so identical CSV input gives byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::invert::AlgorithmId;
use crate::model::{mean_residuals, mean_wall_times, BenchmarkRecord};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

/// File names written by [`write_plots`], in order.
pub const PLOT_FILES: [&str; 3] = ["time.svg", "ratio.svg", "residual.svg"];

fn color(alg: AlgorithmId) -> &'static str {
    match alg {
        AlgorithmId::ComplexFrobenius => "#d62728",
        AlgorithmId::RealFrobenius => "#1f77b4",
        AlgorithmId::ComplexEmbed => "#2ca02c",
        AlgorithmId::RealEmbed => "#9467bd",
        AlgorithmId::SkewReal => "#ff7f0e",
        AlgorithmId::QtfmRecursive => "#8c564b",
        AlgorithmId::Phi2Oracle => "#7f7f7f",
    }
}

#[derive(Debug, Clone)]
struct Series {
    alg: AlgorithmId,
    points: Vec<(f64, f64)>,
}

struct Chart<'a> {
    title: &'a str,
    y_label: &'a str,
    log_y: bool,
    series: Vec<Series>,
    note: Option<String>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Pads a degenerate or empty range so the chart still has extent.
fn padded(lo: f64, hi: f64, log: bool) -> (f64, f64) {
    if !lo.is_finite() || !hi.is_finite() {
        return if log { (-1.0, 0.0) } else { (0.0, 1.0) };
    }
    if hi - lo > 0.0 {
        return (lo, hi);
    }
    let pad = if log { 0.5 } else { (lo.abs() * 0.5).max(0.5) };
    (lo - pad, hi + pad)
}

fn render(chart: &Chart<'_>) -> String {
    let ty = |y: f64| if chart.log_y { y.log10() } else { y };
    let usable: Vec<(AlgorithmId, Vec<(f64, f64)>)> = chart
        .series
        .iter()
        .map(|s| {
            let pts = s
                .points
                .iter()
                .filter(|(_, y)| y.is_finite() && (!chart.log_y || *y > 0.0))
                .map(|&(x, y)| (x, ty(y)))
                .collect();
            (s.alg, pts)
        })
        .collect();
    let all = usable.iter().flat_map(|(_, p)| p.iter().copied());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let (x0, x1) = padded(x0, x1, false);
    let (y0, y1) = if chart.log_y { padded(y0.floor(), y1.ceil(), true) } else { padded(y0, y1, false) };
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let py = |y: f64| TOP + (1.0 - (y - y0) / (y1 - y0)) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{:.1}" y="24" font-size="15" text-anchor="middle">{}</text>"#, LEFT + pw / 2.0, escape(chart.title));
    let _ = writeln!(s, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);

    // Ticks: five on x; decades on a log axis, five otherwise on y.
    for i in 0..=4 {
        let x = x0 + (x1 - x0) * i as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<line x1="{0:.1}" y1="{1:.1}" x2="{0:.1}" y2="{2:.1}" stroke="black"/><text x="{0:.1}" y="{3:.1}" text-anchor="middle">{4}</text>"#,
            px(x),
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 20.0,
            format_tick(x)
        );
    }
    let y_ticks: Vec<f64> = if chart.log_y {
        let (lo, hi) = (y0.ceil() as i32, y1.floor() as i32);
        let step = ((hi - lo) / 8).max(1);
        (lo..=hi).step_by(step as usize).map(f64::from).collect()
    } else {
        (0..=4).map(|i| y0 + (y1 - y0) * i as f64 / 4.0).collect()
    };
    for y in y_ticks {
        let label = if chart.log_y { format!("1e{}", y as i32) } else { format_tick(y) };
        let _ = writeln!(
            s,
            r##"<line x1="{0:.1}" y1="{1:.1}" x2="{2:.1}" y2="{1:.1}" stroke="#dddddd"/><text x="{3:.1}" y="{4:.1}" text-anchor="end">{5}</text>"##,
            LEFT,
            py(y),
            LEFT + pw,
            LEFT - 6.0,
            py(y) + 4.0,
            label
        );
    }
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">n</text>"#, LEFT + pw / 2.0, HEIGHT - 15.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{0:.1}" text-anchor="middle" transform="rotate(-90 18 {0:.1})">{1}</text>"#,
        TOP + ph / 2.0,
        escape(chart.y_label)
    );

    for (row, (alg, pts)) in usable.iter().enumerate() {
        let c = color(*alg);
        if !pts.is_empty() {
            let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
            let _ = writeln!(s, r#"<polyline fill="none" stroke="{c}" stroke-width="2" points="{}"/>"#, coords.join(" "));
            for &(x, y) in pts {
                let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{c}"/>"#, px(x), py(y));
            }
        }
        let ly = TOP + 10.0 + 18.0 * row as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{c}" stroke-width="2"/><text x="{:.1}" y="{:.1}">{} {}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            alg.code(),
            alg.name()
        );
    }
    if let Some(note) = &chart.note {
        let _ = writeln!(s, r##"<text x="{:.1}" y="{:.1}" text-anchor="middle" fill="#555555">{}</text>"##, LEFT + pw / 2.0, TOP + ph / 2.0, escape(note));
    }
    s.push_str("</svg>\n");
    s
}

fn format_tick(v: f64) -> String {
    if v == v.round() && v.abs() < 1e9 {
        format!("{}", v as i64)
    } else {
        format!("{v:.3}")
    }
}

fn series_from(map: &std::collections::BTreeMap<(usize, AlgorithmId), f64>, skip: Option<AlgorithmId>) -> Vec<Series> {
    let mut algs: Vec<AlgorithmId> = map.keys().map(|&(_, a)| a).filter(|a| Some(*a) != skip).collect();
    algs.sort();
    algs.dedup();
    algs.into_iter()
        .map(|alg| Series {
            alg,
            points: map.iter().filter(|((_, a), _)| *a == alg).map(|(&(n, _), &v)| (n as f64, v)).collect(),
        })
        .collect()
}

/// Mean wall time against `n`, log scale.
pub fn time_plot(records: &[BenchmarkRecord]) -> String {
    render(&Chart {
        title: "Mean running time",
        y_label: "seconds",
        log_y: true,
        series: series_from(&mean_wall_times(records), None),
        note: None,
    })
}

/// `r_{n,s} = t_{n,5} / t_{n,s}` against `n` for every `s` other than 5.
/// Sizes without a skew real baseline are left out.
pub fn ratio_plot(records: &[BenchmarkRecord]) -> String {
    let times = mean_wall_times(records);
    let ratios: std::collections::BTreeMap<_, _> = times
        .iter()
        .filter(|((_, a), _)| *a != AlgorithmId::SkewReal)
        .filter_map(|(&(n, a), &t)| times.get(&(n, AlgorithmId::SkewReal)).map(|b| ((n, a), b / t)))
        .collect();
    let note = ratios.is_empty().then(|| "no skew real baseline timings".to_owned());
    render(&Chart {
        title: "Timing ratio to the skew real method",
        y_label: "t(5) / t(s)",
        log_y: false,
        series: series_from(&ratios, Some(AlgorithmId::SkewReal)),
        note,
    })
}

/// Mean right residual against `n`, log scale.
pub fn residual_plot(records: &[BenchmarkRecord]) -> String {
    let residuals = mean_residuals(records);
    let note = residuals.values().all(|&r| r <= 0.0).then(|| "all residuals are zero".to_owned());
    render(&Chart {
        title: "Mean right residual",
        y_label: "||Z Zhat - I||_F / n^2",
        log_y: true,
        series: series_from(&residuals, None),
        note,
    })
}

/// Writes the three charts into `dir` and returns their paths.
pub fn write_plots(records: &[BenchmarkRecord], dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let bodies = [time_plot(records), ratio_plot(records), residual_plot(records)];
    let mut paths = Vec::new();
    for (name, body) in PLOT_FILES.iter().zip(bodies) {
        let path = dir.join(name);
        fs::write(&path, body)?;
        paths.push(path);
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flops::FlopCounter;

    fn rec(alg: AlgorithmId, n: usize, t: f64, res: f64) -> BenchmarkRecord {
        BenchmarkRecord { algorithm: alg, n, trial: 0, seed: 1, wall_time: t, residual: res, flops: FlopCounter::new(), failure: None }
    }

    fn polyline_ys(svg: &str) -> Vec<Vec<String>> {
        svg.lines()
            .filter(|l| l.starts_with("<polyline"))
            .map(|l| {
                let pts = l.split("points=\"").nth(1).unwrap().trim_end_matches("\"/>");
                pts.split(' ').map(|p| p.split(',').nth(1).unwrap().to_owned()).collect()
            })
            .collect()
    }

    #[test]
    fn single_row_gives_three_nonempty_charts() {
        let recs = vec![rec(AlgorithmId::RealFrobenius, 2, 1e-5, 3e-17)];
        for svg in [time_plot(&recs), ratio_plot(&recs), residual_plot(&recs)] {
            assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        }
        assert!(ratio_plot(&recs).contains("no skew real baseline"));
    }

    #[test]
    fn identical_timings_give_a_flat_ratio_line() {
        let recs: Vec<_> = [64, 128, 256]
            .iter()
            .flat_map(|&n| AlgorithmId::ALL.map(|a| rec(a, n, 0.25, 1e-15)))
            .collect();
        let svg = ratio_plot(&recs);
        let lines = polyline_ys(&svg);
        assert_eq!(lines.len(), 5);
        let y = &lines[0][0];
        assert!(lines.iter().all(|l| l.len() == 3 && l.iter().all(|v| v == y)));
    }

    #[test]
    fn output_is_deterministic() {
        let recs: Vec<_> = (1..5).map(|n| rec(AlgorithmId::SkewReal, n * 10, n as f64 * 0.1, 1e-16 * n as f64)).collect();
        assert_eq!(time_plot(&recs), time_plot(&recs));
        assert_eq!(residual_plot(&recs), residual_plot(&recs));
        let dir = std::env::temp_dir().join(format!("quatinv-plot-{}", std::process::id()));
        let paths = write_plots(&recs, &dir).unwrap();
        assert_eq!(paths.len(), 3);
        for p in &paths {
            assert!(fs::metadata(p).unwrap().len() > 0);
        }
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn zero_and_failed_residuals_do_not_break_the_log_axis() {
        let mut bad = rec(AlgorithmId::RealFrobenius, 8, 0.1, f64::NAN);
        bad.failure = Some("x".into());
        let recs = vec![rec(AlgorithmId::RealFrobenius, 4, 0.1, 0.0), bad];
        let svg = residual_plot(&recs);
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
