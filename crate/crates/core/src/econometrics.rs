//! Simple OLS with inference, the 6-group × 3-gender regression table and
//! the three hypothesis verdicts built on it.
//!
//! Every regression includes an intercept and uses `n - 2` residual degrees
//! of freedom. The optional log transforms apply to the dependent variable
//! only.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dataset::{self, Gender, Group, NationRecord, PairObservation};
use crate::distribution::t_p_value;
use crate::{Error, Result};

/// Core fields of a simple regression `y = intercept + slope·x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OlsFit {
    pub n: usize,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub adj_r2: f64,
    pub se_slope: f64,
    pub t: f64,
    pub p: f64,
}

/// One row of the regression table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionResult {
    pub group: Group,
    pub gender: Gender,
    pub n: usize,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub adj_r2: f64,
    pub se_slope: f64,
    pub t: f64,
    pub p: f64,
    pub stars: String,
}

impl RegressionResult {
    pub fn new(group: Group, gender: Gender, fit: OlsFit) -> Self {
        Self {
            group,
            gender,
            n: fit.n,
            slope: fit.slope,
            intercept: fit.intercept,
            r2: fit.r2,
            adj_r2: fit.adj_r2,
            se_slope: fit.se_slope,
            t: fit.t,
            p: fit.p,
            stars: stars(fit.p).to_string(),
        }
    }

    /// Row label such as `ALL_TOTAL` or `EA_M`.
    pub fn label(&self) -> String {
        format!("{}_{}", self.group, self.gender.suffix())
    }
}

/// Significance marks: `*` p < 0.05, `**` p < 0.01, `***` p < 0.001.
pub fn stars(p: f64) -> &'static str {
    if p < 0.001 {
        "***"
    } else if p < 0.01 {
        "**"
    } else if p < 0.05 {
        "*"
    } else {
        ""
    }
}

/// Least-squares line through `(xs, ys)` with intercept.
///
/// A perfect fit has zero standard error, an infinite t statistic and
/// p-value 0. A constant `ys` gives `r2 = 0`.
pub fn ols_simple(xs: &[f64], ys: &[f64]) -> Result<OlsFit> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    let n = xs.len();
    if n < 3 {
        return Err(Error::TooFewObservations(n));
    }
    let nf = n as f64;
    let x_mean = xs.iter().sum::<f64>() / nf;
    let y_mean = ys.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - x_mean, y - y_mean);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if !(sxx > 0.0) {
        return Err(Error::DegenerateRegressor);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ssr: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - intercept - slope * x;
            e * e
        })
        .sum();
    let df = nf - 2.0;
    let r2 = if syy > 0.0 { (1.0 - ssr / syy).clamp(0.0, 1.0) } else { 0.0 };
    let adj_r2 = 1.0 - (1.0 - r2) * (nf - 1.0) / df;
    let se_slope = (ssr / df / sxx).sqrt();
    let t = slope / se_slope;
    let p = if se_slope > 0.0 {
        t_p_value(t, df)?
    } else if slope == 0.0 {
        1.0
    } else {
        0.0
    };
    Ok(OlsFit { n, slope, intercept, r2, adj_r2, se_slope, t, p })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transform {
    #[default]
    None,
    Ln,
    Log10,
}

impl Transform {
    pub fn as_str(self) -> &'static str {
        match self {
            Transform::None => "none",
            Transform::Ln => "ln",
            Transform::Log10 => "log10",
        }
    }

    fn apply(self, pair: &PairObservation) -> Result<f64> {
        if self != Transform::None && !(pair.dv > 0.0) {
            return Err(Error::NonPositiveDv {
                transform: self.as_str(),
                value: pair.dv,
                host: pair.host_iso3.clone(),
                sender: pair.sender_iso3.clone(),
            });
        }
        Ok(match self {
            Transform::None => pair.dv,
            Transform::Ln => pair.dv.ln(),
            Transform::Log10 => pair.dv.log10(),
        })
    }
}

impl FromStr for Transform {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(Transform::None),
            "ln" => Ok(Transform::Ln),
            "log10" => Ok(Transform::Log10),
            _ => Err(Error::UnknownToken { kind: "transform", token: s.to_string() }),
        }
    }
}

/// Regresses (optionally transformed) `dv` on `iv`.
pub fn regress_pairs(
    pairs: &[PairObservation],
    group: Group,
    gender: Gender,
    transform: Transform,
) -> Result<RegressionResult> {
    let xs: Vec<f64> = pairs.iter().map(|p| p.iv).collect();
    let ys = pairs.iter().map(|p| transform.apply(p)).collect::<Result<Vec<_>>>()?;
    Ok(RegressionResult::new(group, gender, ols_simple(&xs, &ys)?))
}

/// Pair observations for one table cell.
pub fn cell_pairs(nations: &[NationRecord], group: Group, gender: Gender) -> Result<Vec<PairObservation>> {
    let (hosts, senders) = dataset::partition(nations);
    let pairs = dataset::build_pairs(&hosts, &senders, gender)?;
    Ok(dataset::filter_region(&pairs, group))
}

/// All 18 table rows, ordered ALL, NAOC, WE, NE, SE, EA and within each
/// group total, male, female.
pub fn run_table2(nations: &[NationRecord], transform: Transform) -> Result<Vec<RegressionResult>> {
    let (hosts, senders) = dataset::partition(nations);
    let mut rows = Vec::with_capacity(18);
    for group in Group::ALL {
        for gender in Gender::ALL {
            let pairs = dataset::build_pairs(&hosts, &senders, gender)?;
            let pairs = dataset::filter_region(&pairs, group);
            rows.push(regress_pairs(&pairs, group, gender, transform)?);
        }
    }
    Ok(rows)
}

pub const TABLE_CSV_HEADER: [&str; 11] =
    ["group", "gender", "n", "slope", "intercept", "r2", "adj_r2", "se", "t", "p", "stars"];

/// `table2.csv` schema. Floats use shortest round-trip formatting so that
/// values parse back bit-for-bit.
pub fn table_to_csv(rows: &[RegressionResult]) -> String {
    let mut out = TABLE_CSV_HEADER.join(",");
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.group, r.gender, r.n, r.slope, r.intercept, r.r2, r.adj_r2, r.se_slope, r.t, r.p, r.stars
        );
    }
    out
}

/// Aligned plain-text rendering of the regression table.
pub fn format_table(rows: &[RegressionResult]) -> String {
    let mut out = format!(
        "{:<12} {:>10} {:>8} {:>10} {:>9} {:>9} {:>10} {:>4} {:>11} {:>4}\n",
        "DV", "Coef.", "R-sq", "Adj. R-sq", "St. Err.", "t-value", "p-value", "sig", "Intercept", "n"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<12} {:>10.3} {:>8.4} {:>10.4} {:>9.4} {:>9.4} {:>10.3e} {:>4} {:>11.3} {:>4}",
            r.label(),
            r.slope,
            r.r2,
            r.adj_r2,
            r.se_slope,
            r.t,
            r.p,
            r.stars,
            r.intercept,
            r.n
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeSign {
    pub group: Group,
    pub slope: f64,
    pub p: f64,
    pub negative: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscountVerdict {
    /// Every pooled (ALL) slope negative with p < 0.001.
    pub confirmed: bool,
    /// Total-gender slope of every group.
    pub signs: Vec<SlopeSign>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypologyVerdict {
    pub traditional_mean: f64,
    pub pioneer_mean: f64,
    pub latecomer_mean: f64,
    pub traditional_insignificant: bool,
    /// `|latecomer| > |pioneer|`; `None` on a tie.
    pub latecomer_exceeds_pioneer: Option<bool>,
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenderComparison {
    pub group: Group,
    pub male_slope: f64,
    pub female_slope: f64,
    /// Both gender slopes significant at 0.05.
    pub significant: bool,
    /// `|male| > |female|`; `None` on a tie.
    pub male_dominates: Option<bool>,
    pub reversed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenderVerdict {
    pub comparisons: Vec<GenderComparison>,
    /// Significant groups where `|female| > |male|`.
    pub reversed_groups: Vec<Group>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub h1: DiscountVerdict,
    pub h2: TypologyVerdict,
    pub h3: GenderVerdict,
}

fn abs_greater(a: f64, b: f64) -> Option<bool> {
    let (a, b) = (a.abs(), b.abs());
    (a != b).then_some(a > b)
}

/// Evaluates the discount, typology and gender hypotheses from a full
/// 18-row table.
///
/// Typology means are unweighted averages of regional total-gender slopes:
/// traditional = NAOC, pioneer = mean(WE, NE), latecomer = mean(SE, EA).
pub fn evaluate_hypotheses(results: &[RegressionResult]) -> Result<HypothesisReport> {
    let get = |group: Group, gender: Gender| -> Result<&RegressionResult> {
        results
            .iter()
            .find(|r| r.group == group && r.gender == gender)
            .ok_or_else(|| Error::IncompleteResults(format!("{group}_{}", gender.suffix())))
    };
    for group in Group::ALL {
        for gender in Gender::ALL {
            get(group, gender)?;
        }
    }

    let confirmed = Gender::ALL
        .iter()
        .map(|&g| get(Group::All, g))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|r| r.slope < 0.0 && r.p < 0.001);
    let signs = Group::ALL
        .iter()
        .map(|&g| {
            let r = get(g, Gender::Total)?;
            Ok(SlopeSign { group: g, slope: r.slope, p: r.p, negative: r.slope < 0.0 })
        })
        .collect::<Result<Vec<_>>>()?;

    let total = |g| get(g, Gender::Total).map(|r| r.slope);
    let traditional = get(Group::Naoc, Gender::Total)?;
    let pioneer_mean = (total(Group::We)? + total(Group::Ne)?) / 2.0;
    let latecomer_mean = (total(Group::Se)? + total(Group::Ea)?) / 2.0;
    let traditional_insignificant = traditional.p >= 0.05;
    let latecomer_exceeds_pioneer = abs_greater(latecomer_mean, pioneer_mean);
    let h2 = TypologyVerdict {
        traditional_mean: traditional.slope,
        pioneer_mean,
        latecomer_mean,
        traditional_insignificant,
        latecomer_exceeds_pioneer,
        confirmed: traditional_insignificant && latecomer_exceeds_pioneer == Some(true),
    };

    let comparisons = Group::ALL
        .iter()
        .map(|&g| {
            let (m, f) = (get(g, Gender::Male)?, get(g, Gender::Female)?);
            let male_dominates = abs_greater(m.slope, f.slope);
            let significant = m.p < 0.05 && f.p < 0.05;
            Ok(GenderComparison {
                group: g,
                male_slope: m.slope,
                female_slope: f.slope,
                significant,
                male_dominates,
                reversed: significant && male_dominates == Some(false),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let reversed_groups = comparisons.iter().filter(|c| c.reversed).map(|c| c.group).collect();

    Ok(HypothesisReport {
        h1: DiscountVerdict { confirmed, signs },
        h2,
        h3: GenderVerdict { comparisons, reversed_groups },
    })
}
