//! Deterministic SVG rendering of convergence traces.
//!
//! The renderer is hand-rolled on purpose: output bytes depend only on the
//! input series and the library version, never on a plotting framework's
//! internals, so repeated invocations on the same build produce identical
//! files. Each panel shows one curve per series (the cross-run mean of the
//! best-so-far value) over a shaded min/max envelope, on a log y-axis when
//! every plotted value is positive and a linear one otherwise.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

use super::ConvergenceTrace;

/// One labeled curve: the cross-run mean plus its min/max envelope.
#[derive(Debug, Clone)]
pub struct TraceSeries {
    /// Legend entry.
    pub label: String,
    /// Aggregated trace supplying the curve and its envelope.
    pub trace: ConvergenceTrace,
}

/// One panel: a titled set of series sharing axes.
#[derive(Debug, Clone)]
pub struct PlotPanel {
    /// Text drawn above the panel.
    pub title: String,
    /// Curves drawn in order; colors are assigned from a fixed palette.
    pub series: Vec<TraceSeries>,
}

const PANEL_WIDTH: f64 = 520.0;
const PANEL_HEIGHT: f64 = 420.0;
const PLOT_LEFT: f64 = 72.0;
const PLOT_TOP: f64 = 46.0;
const PLOT_WIDTH: f64 = 420.0;
const PLOT_HEIGHT: f64 = 310.0;
/// Curves longer than this are subsampled (first and last points kept); the
/// unabridged series always lives in the trace file next to the plot.
const MAX_POINTS_PER_CURVE: usize = 600;

const PALETTE: [&str; 4] = ["#3465a4", "#cc0000", "#4e9a06", "#75507b"];

/// Renders panels side by side into a standalone SVG document.
pub fn render_convergence_svg(panels: &[PlotPanel]) -> Result<String> {
    if panels.is_empty() {
        return Err(Error::InvalidParameter {
            field: "plot panels",
            message: "at least one panel is required".into(),
        });
    }
    for panel in panels {
        if panel.series.is_empty() {
            return Err(Error::InvalidParameter {
                field: "plot panels",
                message: format!("panel \"{}\" has no series", panel.title),
            });
        }
        let expected = panel.series[0].trace.generations();
        for series in &panel.series {
            let found = series.trace.generations();
            if found != expected {
                return Err(Error::TraceLengthMismatch { expected, found });
            }
        }
    }

    let width = PANEL_WIDTH * panels.len() as f64;
    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{PANEL_HEIGHT}\" \
         viewBox=\"0 0 {width} {PANEL_HEIGHT}\" font-family=\"sans-serif\">\n"
    );
    let _ = write!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{PANEL_HEIGHT}\" fill=\"#ffffff\"/>\n"
    );
    for (index, panel) in panels.iter().enumerate() {
        render_panel(&mut svg, panel, PANEL_WIDTH * index as f64);
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Renders panels and writes the document to `path`.
pub fn write_convergence_plot(path: &Path, panels: &[PlotPanel]) -> Result<()> {
    let svg = render_convergence_svg(panels)?;
    std::fs::write(path, svg).map_err(|source| Error::Io {
        action: "write plot",
        path: path.to_path_buf(),
        source,
    })
}

fn render_panel(svg: &mut String, panel: &PlotPanel, offset_x: f64) {
    let generations = panel.series[0].trace.generations();
    let log_scale = panel
        .series
        .iter()
        .flat_map(|s| [s.trace.mean(), s.trace.min(), s.trace.max()])
        .flatten()
        .all(|&v| v > 0.0);

    let (mut low, mut high) = (f64::INFINITY, f64::NEG_INFINITY);
    for series in &panel.series {
        for value in [series.trace.mean(), series.trace.min(), series.trace.max()]
            .into_iter()
            .flatten()
        {
            let t = if log_scale { value.log10() } else { *value };
            low = low.min(t);
            high = high.max(t);
        }
    }
    if low == high {
        // Flat data: open up a band so the curve sits mid-panel.
        low -= 0.5;
        high += 0.5;
    }

    let x_at = |generation_index: usize| -> f64 {
        let span = (generations - 1).max(1) as f64;
        PLOT_LEFT + generation_index as f64 / span * PLOT_WIDTH
    };
    let y_at = |value: f64| -> f64 {
        let t = if log_scale { value.log10() } else { value };
        PLOT_TOP + PLOT_HEIGHT - (t - low) / (high - low) * PLOT_HEIGHT
    };

    let scale_name = if log_scale { "log" } else { "linear" };
    let _ = write!(
        svg,
        "<g class=\"panel\" data-yscale=\"{scale_name}\" transform=\"translate({offset_x} 0)\">\n"
    );
    let _ = write!(
        svg,
        "<text x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        PLOT_LEFT + PLOT_WIDTH / 2.0,
        escape_text(&panel.title)
    );
    let _ = write!(
        svg,
        "<rect x=\"{PLOT_LEFT}\" y=\"{PLOT_TOP}\" width=\"{PLOT_WIDTH}\" height=\"{PLOT_HEIGHT}\" \
         fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n"
    );

    render_x_ticks(svg, generations, &x_at);
    render_y_ticks(svg, low, high, log_scale);

    let indices = sampled_indices(generations);
    for (series_index, series) in panel.series.iter().enumerate() {
        let color = PALETTE[series_index % PALETTE.len()];
        // Envelope: min curve forward, max curve backward, closed.
        let mut band = String::new();
        for &g in &indices {
            let _ = write!(band, "{:.2},{:.2} ", x_at(g), y_at(series.trace.min()[g]));
        }
        for &g in indices.iter().rev() {
            let _ = write!(band, "{:.2},{:.2} ", x_at(g), y_at(series.trace.max()[g]));
        }
        let _ = write!(
            svg,
            "<polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.15\" stroke=\"none\"/>\n",
            band.trim_end()
        );
        let mut line = String::new();
        for &g in &indices {
            let _ = write!(line, "{:.2},{:.2} ", x_at(g), y_at(series.trace.mean()[g]));
        }
        let _ = write!(
            svg,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\"/>\n",
            line.trim_end()
        );
    }

    // Legend, top-right inside the plot rectangle.
    for (series_index, series) in panel.series.iter().enumerate() {
        let color = PALETTE[series_index % PALETTE.len()];
        let y = PLOT_TOP + 18.0 + 18.0 * series_index as f64;
        let x = PLOT_LEFT + PLOT_WIDTH - 150.0;
        let _ = write!(
            svg,
            "<line x1=\"{x:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" \
             stroke=\"{color}\" stroke-width=\"2\"/>\n",
            x + 22.0
        );
        let _ = write!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>\n",
            x + 28.0,
            y + 4.0,
            escape_text(&series.label)
        );
    }

    let _ = write!(
        svg,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"13\">generation</text>\n",
        PLOT_LEFT + PLOT_WIDTH / 2.0,
        PLOT_TOP + PLOT_HEIGHT + 40.0
    );
    let _ = write!(
        svg,
        "<text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"13\" \
         transform=\"rotate(-90 18 {:.2})\">best objective value</text>\n",
        PLOT_TOP + PLOT_HEIGHT / 2.0,
        PLOT_TOP + PLOT_HEIGHT / 2.0
    );
    svg.push_str("</g>\n");
}

fn render_x_ticks(svg: &mut String, generations: usize, x_at: &dyn Fn(usize) -> f64) {
    let mut previous = usize::MAX;
    for step in 0..5 {
        let g = if generations == 1 {
            0
        } else {
            step * (generations - 1) / 4
        };
        if g == previous {
            continue;
        }
        previous = g;
        let x = x_at(g);
        let _ = write!(
            svg,
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#333333\"/>\n",
            PLOT_TOP + PLOT_HEIGHT,
            PLOT_TOP + PLOT_HEIGHT + 5.0
        );
        let _ = write!(
            svg,
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\">{}</text>\n",
            PLOT_TOP + PLOT_HEIGHT + 19.0,
            g + 1
        );
    }
}

fn render_y_ticks(svg: &mut String, low: f64, high: f64, log_scale: bool) {
    let ticks: Vec<f64> = if log_scale {
        let first = low.ceil() as i64;
        let last = high.floor() as i64;
        let decades: Vec<i64> = (first..=last).collect();
        if decades.len() >= 2 {
            let stride = decades.len().div_ceil(8).max(1);
            decades
                .iter()
                .step_by(stride)
                .map(|&k| k as f64)
                .collect()
        } else {
            (0..5).map(|i| low + (high - low) * i as f64 / 4.0).collect()
        }
    } else {
        (0..5).map(|i| low + (high - low) * i as f64 / 4.0).collect()
    };
    for t in ticks {
        let y = PLOT_TOP + PLOT_HEIGHT - (t - low) / (high - low) * PLOT_HEIGHT;
        let value = if log_scale { 10f64.powf(t) } else { t };
        let _ = write!(
            svg,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{PLOT_LEFT}\" y2=\"{y:.2}\" stroke=\"#333333\"/>\n",
            PLOT_LEFT - 5.0
        );
        let _ = write!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"11\">{}</text>\n",
            PLOT_LEFT - 8.0,
            y + 4.0,
            format_tick(value)
        );
    }
}

/// Indices actually plotted: every generation when short, an even stride plus
/// the final generation when long.
fn sampled_indices(generations: usize) -> Vec<usize> {
    if generations <= MAX_POINTS_PER_CURVE {
        return (0..generations).collect();
    }
    let stride = generations.div_ceil(MAX_POINTS_PER_CURVE);
    let mut indices: Vec<usize> = (0..generations).step_by(stride).collect();
    if *indices.last().expect("nonempty by construction") != generations - 1 {
        indices.push(generations - 1);
    }
    indices
}

fn format_tick(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let magnitude = value.abs();
    if !(1e-3..1e4).contains(&magnitude) {
        format!("{value:.1e}")
    } else if value.fract() == 0.0 {
        format!("{value:.0}")
    } else {
        format!("{value:.3}")
    }
}

fn escape_text(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
