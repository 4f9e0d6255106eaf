//! Static SVG scatter plots of pair observations with their OLS trendline.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dataset::{Gender, Group, PairObservation};
use crate::econometrics::RegressionResult;
use crate::{Error, Result};

const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 60.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotPoint {
    pub iv: f64,
    pub dv: f64,
    pub host_iso3: String,
    pub sender_iso3: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotSpec {
    pub group: Group,
    pub gender: Gender,
    pub width: u32,
    pub height: u32,
    pub points: Vec<PlotPoint>,
    pub slope: f64,
    pub intercept: f64,
}

impl PlotSpec {
    /// Scatter of `pairs` with the trendline copied from `result`.
    pub fn new(pairs: &[PairObservation], result: &RegressionResult, width: u32, height: u32) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidParameters("nothing to plot".into()));
        }
        if (width as f64) <= MARGIN_LEFT + MARGIN_RIGHT || (height as f64) <= MARGIN_TOP + MARGIN_BOTTOM {
            return Err(Error::InvalidParameters(format!("plot size {width}x{height} too small")));
        }
        Ok(Self {
            group: result.group,
            gender: result.gender,
            width,
            height,
            points: pairs
                .iter()
                .map(|p| PlotPoint {
                    iv: p.iv,
                    dv: p.dv,
                    host_iso3: p.host_iso3.clone(),
                    sender_iso3: p.sender_iso3.clone(),
                })
                .collect(),
            slope: result.slope,
            intercept: result.intercept,
        })
    }
}

/// Round tick positions covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| span / s <= 6.0).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn tick_label(v: f64) -> f64 {
    (v * 1e6).round() / 1e6 + 0.0
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let pad = if hi > lo { 0.05 * (hi - lo) } else { 1.0 };
    (lo - pad, hi + pad)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders a standalone SVG 1.1 document. Output depends only on `spec`.
///
/// The trendline element carries `data-slope` and `data-intercept` in
/// shortest round-trip form, so they parse back to the exact regression
/// coefficients.
pub fn render_svg(spec: &PlotSpec) -> String {
    let (w, h) = (spec.width as f64, spec.height as f64);
    let plot_w = w - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = h - MARGIN_TOP - MARGIN_BOTTOM;
    let (x_lo, x_hi) = padded_range(spec.points.iter().map(|p| p.iv));
    let (y_lo, y_hi) = padded_range(spec.points.iter().map(|p| p.dv));
    let sx = |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let title = format!("{}_{}", spec.group, spec.gender.suffix());
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(s, r#"<title>{}</title>"#, escape(&title));
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, spec.width, spec.height);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="30" font-family="sans-serif" font-size="16" text-anchor="middle">{} (n = {})</text>"#,
        w / 2.0,
        escape(&title),
        spec.points.len()
    );

    // axes
    let _ = writeln!(
        s,
        r#"<g class="axes" stroke="black" stroke-width="1"><line x1="{l:.2}" y1="{b:.2}" x2="{r:.2}" y2="{b:.2}"/><line x1="{l:.2}" y1="{t:.2}" x2="{l:.2}" y2="{b:.2}"/></g>"#,
        l = MARGIN_LEFT,
        r = MARGIN_LEFT + plot_w,
        t = MARGIN_TOP,
        b = MARGIN_TOP + plot_h
    );
    let _ = writeln!(s, r#"<g class="ticks" font-family="sans-serif" font-size="10">"#);
    for x in ticks(x_lo, x_hi) {
        let px = sx(x);
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{b:.2}" x2="{px:.2}" y2="{b5:.2}" stroke="black"/><text x="{px:.2}" y="{by:.2}" text-anchor="middle">{}</text>"#,
            tick_label(x),
            b = MARGIN_TOP + plot_h,
            b5 = MARGIN_TOP + plot_h + 5.0,
            by = MARGIN_TOP + plot_h + 17.0,
        );
    }
    for y in ticks(y_lo, y_hi) {
        let py = sy(y);
        let _ = writeln!(
            s,
            r#"<line x1="{l5:.2}" y1="{py:.2}" x2="{l:.2}" y2="{py:.2}" stroke="black"/><text x="{lx:.2}" y="{pyt:.2}" text-anchor="end">{}</text>"#,
            tick_label(y),
            l = MARGIN_LEFT,
            l5 = MARGIN_LEFT - 5.0,
            lx = MARGIN_LEFT - 8.0,
            pyt = py + 3.5,
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">Secondary-industry share difference, sender - host (percentage points)</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        h - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 18 {:.2})">Manufacturing wage differential (2017 PPP $)</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    let _ = writeln!(s, r#"<g class="points" font-family="sans-serif" font-size="7" fill="steelblue">"#);
    for p in &spec.points {
        let (px, py) = (sx(p.iv), sy(p.dv));
        let _ = writeln!(
            s,
            r#"<circle cx="{px:.2}" cy="{py:.2}" r="2.5"><title>{}-{}</title></circle><text x="{:.2}" y="{:.2}" fill="dimgray">{}</text>"#,
            escape(&p.host_iso3),
            escape(&p.sender_iso3),
            px + 3.0,
            py - 3.0,
            escape(&p.host_iso3)
        );
    }
    let _ = writeln!(s, "</g>");

    let line_y = |x: f64| spec.intercept + spec.slope * x;
    let _ = writeln!(
        s,
        r#"<line class="trendline" data-slope="{}" data-intercept="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="firebrick" stroke-width="1.5" clip-path="url(#plot-area)"/>"#,
        spec.slope,
        spec.intercept,
        sx(x_lo),
        sy(line_y(x_lo)),
        sx(x_hi),
        sy(line_y(x_hi))
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot-area"><rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/></clipPath></defs>"#,
        MARGIN_LEFT, MARGIN_TOP, plot_w, plot_h
    );
    let sign = if spec.intercept < 0.0 { '-' } else { '+' };
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="end" fill="firebrick">y = {:.3}x {} {:.3}</text>"#,
        MARGIN_LEFT + plot_w - 5.0,
        MARGIN_TOP + 15.0,
        spec.slope,
        sign,
        spec.intercept.abs()
    );
    s.push_str("</svg>\n");
    s
}

/// Reads the trendline coefficients back out of an SVG produced by
/// [`render_svg`].
pub fn trendline_from_svg(svg: &str) -> Option<(f64, f64)> {
    let line = svg.lines().find(|l| l.contains(r#"class="trendline""#))?;
    let attr = |name: &str| -> Option<f64> {
        let key = format!(r#"{name}=""#);
        let start = line.find(&key)? + key.len();
        let end = start + line[start..].find('"')?;
        line[start..end].parse().ok()
    };
    Some((attr("data-slope")?, attr("data-intercept")?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::canonical_nations;
    use crate::econometrics::{cell_pairs, regress_pairs, Transform};

    fn spec(group: Group, gender: Gender) -> PlotSpec {
        let pairs = cell_pairs(&canonical_nations(), group, gender).unwrap();
        let result = regress_pairs(&pairs, group, gender, Transform::None).unwrap();
        PlotSpec::new(&pairs, &result, 800, 600).unwrap()
    }

    #[test]
    fn ticks_are_round_and_cover_range() {
        let t = ticks(-3.2, 41.7);
        assert_eq!(t, [0.0, 10.0, 20.0, 30.0, 40.0]);
        let t = ticks(100.0, 5000.0);
        assert_eq!(t.first(), Some(&1000.0));
        assert_eq!(t.last(), Some(&5000.0));
    }

    #[test]
    fn svg_contains_every_point_and_trendline() {
        let s = spec(Group::All, Gender::Total);
        let svg = render_svg(&s);
        assert_eq!(svg.matches("<circle").count(), 180);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        let (slope, intercept) = trendline_from_svg(&svg).unwrap();
        assert_eq!(slope.to_bits(), s.slope.to_bits());
        assert_eq!(intercept.to_bits(), s.intercept.to_bits());
        assert!(slope < 0.0);
    }

    #[test]
    fn naoc_trendline_positive() {
        let svg = render_svg(&spec(Group::Naoc, Gender::Total));
        assert_eq!(svg.matches("<circle").count(), 36);
        assert!(trendline_from_svg(&svg).unwrap().0 > 0.0);
    }

    #[test]
    fn rendering_is_deterministic() {
        let s = spec(Group::Ea, Gender::Male);
        assert_eq!(render_svg(&s), render_svg(&s.clone()));
    }

    #[test]
    fn rejects_degenerate_specs() {
        let pairs = cell_pairs(&canonical_nations(), Group::Ea, Gender::Male).unwrap();
        let result = regress_pairs(&pairs, Group::Ea, Gender::Male, Transform::None).unwrap();
        assert!(PlotSpec::new(&[], &result, 800, 600).is_err());
        assert!(PlotSpec::new(&pairs, &result, 50, 600).is_err());
    }
}
