//! Deterministic SVG plot emission.
//!
//! Every emitter renders a fixed 800×600 SVG 1.1 document from its data
//! alone — no timestamps, no randomness — so identical inputs produce
//! byte-identical files. Pixel coordinates are written with two decimals,
//! keeping rounding error two orders of magnitude below the 0.5 px
//! tolerance used when plots are checked geometrically.

use std::fmt::Write as _;

use thermoforge_core::metrics::ConfusionMatrix;
use thermoforge_core::{Error, Result};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    ActualVsPredicted,
    Residual,
    Qq,
    Roc,
    ConfusionHeatmap,
    Contour,
    SurfaceIsometric,
    CorrelationHeatmap,
    FeatureImportanceBars,
}

impl PlotKind {
    pub fn id(self) -> &'static str {
        match self {
            PlotKind::ActualVsPredicted => "actual_vs_predicted",
            PlotKind::Residual => "residual",
            PlotKind::Qq => "qq",
            PlotKind::Roc => "roc",
            PlotKind::ConfusionHeatmap => "confusion_heatmap",
            PlotKind::Contour => "contour",
            PlotKind::SurfaceIsometric => "surface_isometric",
            PlotKind::CorrelationHeatmap => "correlation_heatmap",
            PlotKind::FeatureImportanceBars => "feature_importance_bars",
        }
    }
}

fn c(v: f64) -> String {
    format!("{v:.2}")
}

fn xml_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
    out
}

/// Mapping from a padded data window onto the pixel plot area.
struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    left: f64,
    right: f64,
    top: f64,
    bottom: f64,
}

impl Frame {
    fn new(x_range: (f64, f64), y_range: (f64, f64)) -> Frame {
        Frame::with_margins(x_range, y_range, 80.0, 40.0, 50.0, 70.0)
    }

    fn with_margins(
        x_range: (f64, f64),
        y_range: (f64, f64),
        left: f64,
        right: f64,
        top: f64,
        bottom: f64,
    ) -> Frame {
        let (x_min, x_max) = pad_range(x_range);
        let (y_min, y_max) = pad_range(y_range);
        Frame {
            x_min,
            x_max,
            y_min,
            y_max,
            left,
            right,
            top,
            bottom,
        }
    }

    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - self.left - self.right)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT
            - self.bottom
            - (y - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - self.top - self.bottom)
    }
}

/// 5% padding on each side; a degenerate range widens to ±1 around it.
fn pad_range((lo, hi): (f64, f64)) -> (f64, f64) {
    if lo == hi {
        return (lo - 1.0, hi + 1.0);
    }
    let pad = (hi - lo) * 0.05;
    (lo - pad, hi + pad)
}

fn range_of(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Tick positions on a 1/2/5 grid, inclusive of the window edges' span.
fn ticks(lo: f64, hi: f64) -> (Vec<f64>, usize) {
    let range = hi - lo;
    let raw = range / 5.0;
    let mag = 10f64.powf((raw.log10() + 1e-9).floor());
    let norm = raw / mag;
    let step = mag
        * if norm < 1.5 {
            1.0
        } else if norm < 3.0 {
            2.0
        } else if norm < 7.0 {
            5.0
        } else {
            10.0
        };
    let decimals = (-((step.log10() + 1e-9).floor())).max(0.0) as usize;
    let mut out = Vec::new();
    let mut k = (lo / step).ceil();
    // Guard against a -0.0 first tick rendering as "-0".
    while k * step <= hi + step * 1e-9 {
        let v = k * step;
        out.push(if v == 0.0 { 0.0 } else { v });
        k += 1.0;
    }
    (out, decimals)
}

fn document(title: &str, body: &str) -> String {
    format!(
        concat!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ",
            "width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n",
            "<rect width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n",
            "<g font-family=\"sans-serif\" font-size=\"12\">\n",
            "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-size=\"16\" ",
            "font-weight=\"bold\" fill=\"#1f2430\">{}</text>\n",
            "{}</g>\n</svg>\n"
        ),
        xml_escape(title),
        body
    )
}

fn axes(out: &mut String, f: &Frame, x_label: &str, y_label: &str) {
    let x0 = f.left;
    let x1 = WIDTH - f.right;
    let y0 = HEIGHT - f.bottom;
    let y1 = f.top;
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#1f2430\" stroke-width=\"1\"/>",
        c(x0),
        c(y0),
        c(x1),
        c(y0)
    );
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#1f2430\" stroke-width=\"1\"/>",
        c(x0),
        c(y0),
        c(x0),
        c(y1)
    );
    let (xt, xd) = ticks(f.x_min, f.x_max);
    for t in xt {
        let px = f.px(t);
        let _ = writeln!(
            out,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#1f2430\" stroke-width=\"1\"/>",
            c(px),
            c(y0),
            c(y0 + 6.0)
        );
        let _ = writeln!(
            out,
            "<text class=\"tick\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"#1f2430\">{}</text>",
            c(px),
            c(y0 + 22.0),
            format_args!("{t:.xd$}")
        );
    }
    let (yt, yd) = ticks(f.y_min, f.y_max);
    for t in yt {
        let py = f.py(t);
        let _ = writeln!(
            out,
            "<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"#1f2430\" stroke-width=\"1\"/>",
            c(py),
            c(x0 - 6.0),
            c(x0)
        );
        let _ = writeln!(
            out,
            "<text class=\"tick\" x=\"{}\" y=\"{}\" text-anchor=\"end\" fill=\"#1f2430\">{}</text>",
            c(x0 - 10.0),
            c(py + 4.0),
            format_args!("{t:.yd$}")
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\" fill=\"#1f2430\">{}</text>",
        c((x0 + x1) / 2.0),
        c(HEIGHT - 18.0),
        xml_escape(x_label)
    );
    let _ = writeln!(
        out,
        "<text x=\"22\" y=\"{0}\" text-anchor=\"middle\" font-size=\"13\" fill=\"#1f2430\" \
         transform=\"rotate(-90 22 {0})\">{1}</text>",
        c((y0 + y1) / 2.0),
        xml_escape(y_label)
    );
}

fn scatter(out: &mut String, f: &Frame, points: &[(f64, f64)], color: &str) {
    for &(x, y) in points {
        let _ = writeln!(
            out,
            "<circle class=\"marker\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{color}\" fill-opacity=\"0.85\"/>",
            c(f.px(x)),
            c(f.py(y))
        );
    }
}

fn require_data<T>(kind: PlotKind, data: &[T]) -> Result<()> {
    if data.is_empty() {
        return Err(Error::Data(format!("{} plot: no data", kind.id())));
    }
    Ok(())
}

fn require_finite(kind: PlotKind, values: impl IntoIterator<Item = f64>) -> Result<()> {
    for v in values {
        if !v.is_finite() {
            return Err(Error::Data(format!("{} plot: non-finite value", kind.id())));
        }
    }
    Ok(())
}

/// Sequential palette (dark violet → yellow) for t in [0,1].
fn heat_color(t: f64) -> String {
    const ANCHORS: [(f64, f64, f64); 5] = [
        (68.0, 1.0, 84.0),
        (59.0, 82.0, 139.0),
        (33.0, 145.0, 140.0),
        (94.0, 201.0, 98.0),
        (253.0, 231.0, 37.0),
    ];
    let t = t.clamp(0.0, 1.0) * (ANCHORS.len() - 1) as f64;
    let i = (t.floor() as usize).min(ANCHORS.len() - 2);
    let frac = t - i as f64;
    let (r0, g0, b0) = ANCHORS[i];
    let (r1, g1, b1) = ANCHORS[i + 1];
    format!(
        "#{:02x}{:02x}{:02x}",
        (r0 + (r1 - r0) * frac).round() as u8,
        (g0 + (g1 - g0) * frac).round() as u8,
        (b0 + (b1 - b0) * frac).round() as u8
    )
}

/// Diverging palette (blue → white → red) for t in [-1,1].
fn diverging_color(t: f64) -> String {
    let t = t.clamp(-1.0, 1.0);
    let (from, to): ((f64, f64, f64), (f64, f64, f64)) = if t < 0.0 {
        ((247.0, 247.0, 247.0), (33.0, 102.0, 172.0))
    } else {
        ((247.0, 247.0, 247.0), (178.0, 24.0, 43.0))
    };
    let a = t.abs();
    format!(
        "#{:02x}{:02x}{:02x}",
        (from.0 + (to.0 - from.0) * a).round() as u8,
        (from.1 + (to.1 - from.1) * a).round() as u8,
        (from.2 + (to.2 - from.2) * a).round() as u8
    )
}

/// Scatter of predictions against truth with the ideal-fit diagonal
/// (`id="reference"`); a perfect model puts every marker on that line.
pub fn actual_vs_predicted(
    actual: &[f64],
    predicted: &[f64],
    title: &str,
    x_label: &str,
    y_label: &str,
) -> Result<String> {
    require_data(PlotKind::ActualVsPredicted, actual)?;
    if actual.len() != predicted.len() {
        return Err(Error::Data(format!(
            "actual_vs_predicted plot: {} actual vs {} predicted values",
            actual.len(),
            predicted.len()
        )));
    }
    require_finite(
        PlotKind::ActualVsPredicted,
        actual.iter().chain(predicted).copied(),
    )?;
    // Shared range on both axes keeps the y=x reference at 45 degrees.
    let range = range_of(actual.iter().chain(predicted).copied());
    let f = Frame::new(range, range);
    let mut body = String::new();
    axes(&mut body, &f, x_label, y_label);
    let _ = writeln!(
        body,
        "<line id=\"reference\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" \
         stroke=\"#c44536\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>",
        c(f.px(f.x_min)),
        c(f.py(f.x_min)),
        c(f.px(f.x_max)),
        c(f.py(f.x_max))
    );
    let points: Vec<(f64, f64)> = actual
        .iter()
        .zip(predicted)
        .map(|(&a, &p)| (a, p))
        .collect();
    scatter(&mut body, &f, &points, "#2b6cb0");
    Ok(document(title, &body))
}

/// Residuals against predictions with a zero line (`id="zero"`).
pub fn residual(
    predicted: &[f64],
    residuals: &[f64],
    title: &str,
    x_label: &str,
) -> Result<String> {
    require_data(PlotKind::Residual, predicted)?;
    if predicted.len() != residuals.len() {
        return Err(Error::Data(format!(
            "residual plot: {} predictions vs {} residuals",
            predicted.len(),
            residuals.len()
        )));
    }
    require_finite(
        PlotKind::Residual,
        predicted.iter().chain(residuals).copied(),
    )?;
    let x_range = range_of(predicted.iter().copied());
    // Symmetric y window keeps zero in view even for one-sided residuals.
    let (rlo, rhi) = range_of(residuals.iter().copied());
    let y_range = (rlo.min(0.0), rhi.max(0.0));
    let f = Frame::new(x_range, y_range);
    let mut body = String::new();
    axes(&mut body, &f, x_label, "Residual");
    let _ = writeln!(
        body,
        "<line id=\"zero\" x1=\"{}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" \
         stroke=\"#c44536\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>",
        c(f.px(f.x_min)),
        c(f.py(0.0)),
        c(f.px(f.x_max))
    );
    let points: Vec<(f64, f64)> = predicted
        .iter()
        .zip(residuals)
        .map(|(&p, &r)| (p, r))
        .collect();
    scatter(&mut body, &f, &points, "#2f855a");
    Ok(document(title, &body))
}

/// Normal quantile-quantile scatter with the y=x reference.
pub fn qq(points: &[(f64, f64)], title: &str) -> Result<String> {
    require_data(PlotKind::Qq, points)?;
    require_finite(PlotKind::Qq, points.iter().flat_map(|&(a, b)| [a, b]))?;
    let range = range_of(points.iter().flat_map(|&(a, b)| [a, b]));
    let f = Frame::new(range, range);
    let mut body = String::new();
    axes(&mut body, &f, "Theoretical quantile", "Sample quantile");
    let _ = writeln!(
        body,
        "<line id=\"reference\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" \
         stroke=\"#c44536\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>",
        c(f.px(f.x_min)),
        c(f.py(f.x_min)),
        c(f.px(f.x_max)),
        c(f.py(f.x_max))
    );
    scatter(&mut body, &f, points, "#6b46c1");
    Ok(document(title, &body))
}

/// ROC polyline over the unit square with the chance diagonal.
pub fn roc(points: &[(f64, f64)], title: &str) -> Result<String> {
    require_data(PlotKind::Roc, points)?;
    require_finite(PlotKind::Roc, points.iter().flat_map(|&(a, b)| [a, b]))?;
    let f = Frame::new((0.0, 1.0), (0.0, 1.0));
    let mut body = String::new();
    axes(&mut body, &f, "False positive rate", "True positive rate");
    let _ = writeln!(
        body,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#a0aec0\" \
         stroke-width=\"1\" stroke-dasharray=\"4 4\"/>",
        c(f.px(0.0)),
        c(f.py(0.0)),
        c(f.px(1.0)),
        c(f.py(1.0))
    );
    let path: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{},{}", c(f.px(x)), c(f.py(y))))
        .collect();
    let _ = writeln!(
        body,
        "<polyline class=\"curve\" fill=\"none\" stroke=\"#2b6cb0\" stroke-width=\"2\" points=\"{}\"/>",
        path.join(" ")
    );
    scatter(&mut body, &f, points, "#2b6cb0");
    Ok(document(title, &body))
}

/// 2×2 confusion matrix as a shaded grid with counts.
pub fn confusion_heatmap(m: &ConfusionMatrix, title: &str) -> Result<String> {
    let total = m.n();
    if total == 0 {
        return Err(Error::Data("confusion_heatmap plot: no data".into()));
    }
    // Grid layout: rows = actual class (0 on top), columns = predicted.
    let cells = [
        (0usize, 0usize, "TN", m.true_negative),
        (0, 1, "FP", m.false_positive),
        (1, 0, "FN", m.false_negative),
        (1, 1, "TP", m.true_positive),
    ];
    let side = 180.0;
    let x0 = 240.0;
    let y0 = 120.0;
    let mut body = String::new();
    for (row, col, tag, count) in cells {
        let x = x0 + col as f64 * side;
        let y = y0 + row as f64 * side;
        let shade = count as f64 / total as f64;
        let color = heat_color(shade);
        let text_color = if shade > 0.55 { "#1f2430" } else { "#ffffff" };
        let _ = writeln!(
            body,
            "<rect class=\"cell\" x=\"{}\" y=\"{}\" width=\"{side}\" height=\"{side}\" \
             fill=\"{color}\" stroke=\"#1f2430\" stroke-width=\"1\"/>",
            c(x),
            c(y)
        );
        let _ = writeln!(
            body,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"22\" fill=\"{text_color}\">{tag} = {count}</text>",
            c(x + side / 2.0),
            c(y + side / 2.0 + 8.0)
        );
    }
    for (i, label) in ["Actual 0", "Actual 1"].iter().enumerate() {
        let _ = writeln!(
            body,
            "<text x=\"{0}\" y=\"{1}\" text-anchor=\"middle\" font-size=\"13\" fill=\"#1f2430\" \
             transform=\"rotate(-90 {0} {1})\">{label}</text>",
            c(x0 - 24.0),
            c(y0 + side * (i as f64 + 0.5))
        );
    }
    for (i, label) in ["Predicted 0", "Predicted 1"].iter().enumerate() {
        let _ = writeln!(
            body,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\" fill=\"#1f2430\">{label}</text>",
            c(x0 + side * (i as f64 + 0.5)),
            c(y0 + 2.0 * side + 28.0)
        );
    }
    Ok(document(title, &body))
}

/// Square response-surface grid: `values[i * m + j]` is the prediction at
/// space coordinate `xs[i]`, time coordinate `ts[j]`.
pub struct SurfaceGrid<'a> {
    pub xs: &'a [f64],
    pub ts: &'a [f64],
    pub values: &'a [f64],
}

impl SurfaceGrid<'_> {
    fn validate(&self, kind: PlotKind) -> Result<()> {
        if self.xs.len() < 2 || self.ts.len() < 2 {
            return Err(Error::Data(format!(
                "{} plot: grid needs at least 2 points per axis",
                kind.id()
            )));
        }
        if self.values.len() != self.xs.len() * self.ts.len() {
            return Err(Error::Data(format!(
                "{} plot: {} values for a {}x{} grid",
                kind.id(),
                self.values.len(),
                self.xs.len(),
                self.ts.len()
            )));
        }
        require_finite(kind, self.values.iter().copied())?;
        require_finite(kind, self.xs.iter().chain(self.ts).copied())
    }

    fn value_range(&self) -> (f64, f64) {
        range_of(self.values.iter().copied())
    }

    /// Value normalized to [0,1]; 0.5 for a constant surface.
    fn unit(&self, v: f64) -> f64 {
        let (lo, hi) = self.value_range();
        if lo == hi {
            0.5
        } else {
            (v - lo) / (hi - lo)
        }
    }
}

fn colorbar(body: &mut String, lo: f64, hi: f64) {
    let x = WIDTH - 88.0;
    let y0 = 120.0;
    let h = 320.0;
    let bands = 10;
    for b in 0..bands {
        let t = (bands - 1 - b) as f64 / (bands - 1) as f64;
        let _ = writeln!(
            body,
            "<rect x=\"{}\" y=\"{}\" width=\"18\" height=\"{}\" fill=\"{}\"/>",
            c(x),
            c(y0 + b as f64 * h / bands as f64),
            c(h / bands as f64),
            heat_color(t)
        );
    }
    let _ = writeln!(
        body,
        "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"#1f2430\">{}</text>",
        c(x + 24.0),
        c(y0 + 8.0),
        format_args!("{hi:.1}")
    );
    let _ = writeln!(
        body,
        "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"#1f2430\">{}</text>",
        c(x + 24.0),
        c(y0 + h),
        format_args!("{lo:.1}")
    );
}

/// Filled-band contour view of a surface grid: each grid cell is shaded
/// by the 10-band bucket of its mean value.
pub fn contour(grid: &SurfaceGrid, title: &str, x_label: &str, y_label: &str) -> Result<String> {
    grid.validate(PlotKind::Contour)?;
    let f = Frame::with_margins(
        range_of(grid.xs.iter().copied()),
        range_of(grid.ts.iter().copied()),
        80.0,
        130.0,
        50.0,
        70.0,
    );
    let mut body = String::new();
    let (nx, nt) = (grid.xs.len(), grid.ts.len());
    for i in 0..nx - 1 {
        for j in 0..nt - 1 {
            let mean = (grid.values[i * nt + j]
                + grid.values[i * nt + j + 1]
                + grid.values[(i + 1) * nt + j]
                + grid.values[(i + 1) * nt + j + 1])
                / 4.0;
            let band = ((grid.unit(mean) * 10.0).floor() / 10.0).clamp(0.0, 0.9) + 0.05;
            let px0 = f.px(grid.xs[i]);
            let px1 = f.px(grid.xs[i + 1]);
            let py0 = f.py(grid.ts[j + 1]);
            let py1 = f.py(grid.ts[j]);
            let _ = writeln!(
                body,
                "<rect class=\"cell\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                c(px0),
                c(py0),
                c(px1 - px0),
                c(py1 - py0),
                heat_color(band)
            );
        }
    }
    axes(&mut body, &f, x_label, y_label);
    let (lo, hi) = grid.value_range();
    colorbar(&mut body, lo, hi);
    Ok(document(title, &body))
}

/// Isometric 3-D rendering of a surface grid, painted back to front.
pub fn surface_isometric(grid: &SurfaceGrid, title: &str, z_label: &str) -> Result<String> {
    grid.validate(PlotKind::SurfaceIsometric)?;
    let (nx, nt) = (grid.xs.len(), grid.ts.len());
    let (xlo, xhi) = range_of(grid.xs.iter().copied());
    let (tlo, thi) = range_of(grid.ts.iter().copied());
    let unit_x = |v: f64| {
        if xlo == xhi {
            0.5
        } else {
            (v - xlo) / (xhi - xlo)
        }
    };
    let unit_t = |v: f64| {
        if tlo == thi {
            0.5
        } else {
            (v - tlo) / (thi - tlo)
        }
    };
    let project = |u: f64, v: f64, z: f64| -> (f64, f64) {
        (400.0 + (u - v) * 230.0, 280.0 + (u + v) * 110.0 - z * 170.0)
    };
    let mut body = String::new();
    // Cells sorted by depth (u+v ascending) so nearer quads paint last.
    let mut order: Vec<(usize, usize)> = Vec::new();
    for i in 0..nx - 1 {
        for j in 0..nt - 1 {
            order.push((i, j));
        }
    }
    order.sort_by_key(|&(i, j)| (i + j, i));
    for (i, j) in order {
        let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
        let mut pts = Vec::with_capacity(4);
        let mut mean = 0.0;
        for (a, b) in corners {
            let v = grid.values[a * nt + b];
            mean += v / 4.0;
            let (sx, sy) = project(unit_x(grid.xs[a]), unit_t(grid.ts[b]), grid.unit(v));
            pts.push(format!("{},{}", c(sx), c(sy)));
        }
        let _ = writeln!(
            body,
            "<polygon class=\"cell\" points=\"{}\" fill=\"{}\" stroke=\"#1f2430\" stroke-width=\"0.4\"/>",
            pts.join(" "),
            heat_color(grid.unit(mean))
        );
    }
    // Base-edge direction labels.
    let (ax, ay) = project(0.55, -0.08, 0.0);
    let _ = writeln!(
        body,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\" fill=\"#1f2430\">space →</text>",
        c(ax),
        c(ay)
    );
    let (bx, by) = project(-0.08, 0.55, 0.0);
    let _ = writeln!(
        body,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\" fill=\"#1f2430\">← time</text>",
        c(bx),
        c(by)
    );
    let (lo, hi) = grid.value_range();
    let _ = writeln!(
        body,
        "<text x=\"30\" y=\"60\" font-size=\"13\" fill=\"#1f2430\">{}: {} – {}</text>",
        xml_escape(z_label),
        format_args!("{lo:.1}"),
        format_args!("{hi:.1}")
    );
    colorbar(&mut body, lo, hi);
    Ok(document(title, &body))
}

/// k×k correlation matrix with per-cell coefficients.
pub fn correlation_heatmap(labels: &[String], values: &[f64], title: &str) -> Result<String> {
    require_data(PlotKind::CorrelationHeatmap, labels)?;
    let k = labels.len();
    if values.len() != k * k {
        return Err(Error::Data(format!(
            "correlation_heatmap plot: {} values for a {k}x{k} matrix",
            values.len()
        )));
    }
    require_finite(PlotKind::CorrelationHeatmap, values.iter().copied())?;
    let area = 380.0;
    let side = area / k as f64;
    let x0 = 250.0;
    let y0 = 110.0;
    let mut body = String::new();
    for i in 0..k {
        for j in 0..k {
            let v = values[i * k + j];
            let x = x0 + j as f64 * side;
            let y = y0 + i as f64 * side;
            let text_color = if v.abs() > 0.6 { "#ffffff" } else { "#1f2430" };
            let _ = writeln!(
                body,
                "<rect class=\"cell\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" \
                 fill=\"{}\" stroke=\"#ffffff\" stroke-width=\"1\"/>",
                c(x),
                c(y),
                c(side),
                c(side),
                diverging_color(v)
            );
            let _ = writeln!(
                body,
                "<text class=\"value\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" \
                 font-size=\"{}\" fill=\"{text_color}\">{}</text>",
                c(x + side / 2.0),
                c(y + side / 2.0 + 4.0),
                c((side / 4.0).min(14.0)),
                format_args!("{v:.2}")
            );
        }
    }
    for (i, label) in labels.iter().enumerate() {
        let _ = writeln!(
            body,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\" fill=\"#1f2430\">{}</text>",
            c(x0 - 8.0),
            c(y0 + i as f64 * side + side / 2.0 + 4.0),
            xml_escape(label)
        );
        let cx = x0 + i as f64 * side + side / 2.0;
        let cy = y0 + k as f64 * side + 14.0;
        let _ = writeln!(
            body,
            "<text x=\"{0}\" y=\"{1}\" text-anchor=\"end\" font-size=\"11\" fill=\"#1f2430\" \
             transform=\"rotate(-40 {0} {1})\">{2}</text>",
            c(cx),
            c(cy),
            xml_escape(label)
        );
    }
    Ok(document(title, &body))
}

/// Horizontal importance bars in the given feature order.
pub fn feature_importance_bars(labels: &[String], values: &[f64], title: &str) -> Result<String> {
    require_data(PlotKind::FeatureImportanceBars, labels)?;
    if values.len() != labels.len() {
        return Err(Error::Data(format!(
            "feature_importance_bars plot: {} values for {} labels",
            values.len(),
            labels.len()
        )));
    }
    require_finite(PlotKind::FeatureImportanceBars, values.iter().copied())?;
    let max = values.iter().copied().fold(0.0f64, f64::max).max(1e-12);
    let f = Frame::with_margins((0.0, max), (0.0, 1.0), 230.0, 60.0, 50.0, 70.0);
    let n = labels.len();
    let span = HEIGHT - f.top - f.bottom;
    let slot = span / n as f64;
    let bar_h = (slot * 0.6).min(46.0);
    let mut body = String::new();
    let (xt, xd) = ticks(f.x_min, f.x_max);
    for t in &xt {
        let px = f.px(*t);
        let _ = writeln!(
            body,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#e2e8f0\" stroke-width=\"1\"/>",
            c(px),
            c(f.top),
            c(HEIGHT - f.bottom)
        );
        let _ = writeln!(
            body,
            "<text class=\"tick\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"#1f2430\">{}</text>",
            c(px),
            c(HEIGHT - f.bottom + 22.0),
            format_args!("{t:.xd$}")
        );
    }
    for (i, (label, &v)) in labels.iter().zip(values).enumerate() {
        let y = f.top + i as f64 * slot + (slot - bar_h) / 2.0;
        let w = f.px(v) - f.px(0.0);
        let _ = writeln!(
            body,
            "<rect class=\"bar\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#2b6cb0\"/>",
            c(f.px(0.0)),
            c(y),
            c(w),
            c(bar_h)
        );
        let _ = writeln!(
            body,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"12\" fill=\"#1f2430\">{}</text>",
            c(f.px(0.0) - 8.0),
            c(y + bar_h / 2.0 + 4.0),
            xml_escape(label)
        );
        let _ = writeln!(
            body,
            "<text class=\"value\" x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"#1f2430\">{}</text>",
            c(f.px(v) + 6.0),
            c(y + bar_h / 2.0 + 4.0),
            format_args!("{v:.3}")
        );
    }
    let _ = writeln!(
        body,
        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#1f2430\" stroke-width=\"1\"/>",
        c(f.px(0.0)),
        c(f.top),
        c(HEIGHT - f.bottom)
    );
    let _ = writeln!(
        body,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\" fill=\"#1f2430\">Importance</text>",
        c((f.px(0.0) + f.px(max)) / 2.0),
        c(HEIGHT - 18.0)
    );
    Ok(document(title, &body))
}
