//! Subcommand bodies. Each returns the text destined for standard output
//! and writes any requested files itself, so the dispatch in `main` stays a
//! thin shell.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use skillrel_core::dataset::{self, Gender, Group, NationRecord, Role};
use skillrel_core::econometrics::{self, RegressionResult, Transform};
use skillrel_core::plot::{self, PlotSpec};
use skillrel_core::solver::{self, SolverConfig};
use skillrel_core::{model, statics, GameParameters, SpneSolution};

/// Canonical records, or the records in `path` when given.
pub fn load_data(path: Option<&Path>) -> Result<Vec<NationRecord>> {
    match path {
        None => Ok(dataset::canonical_nations()),
        Some(path) => {
            let file = fs::File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
            dataset::load_nations(file).with_context(|| format!("cannot load {}", path.display()))
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn format_solution(out: &mut String, title: &str, s: &SpneSolution) {
    let _ = writeln!(out, "{title}");
    let _ = writeln!(out, "  wage differential  Δw* = {}", s.wage_differential);
    let _ = writeln!(out, "  effort             a*  = {}", s.effort);
    let _ = writeln!(out, "  agent utility host U1  = {}", s.agent_utility_host);
    let _ = writeln!(out, "  agent utility home U0  = {}", s.agent_utility_home);
    let _ = writeln!(out, "  principal profit   V   = {}", s.principal_profit);
    let _ = writeln!(out, "  IR slack      U1 - U0  = {}", s.ir_slack);
    let _ = writeln!(out, "  SOC agent              = {}", s.soc_agent);
    let _ = writeln!(out, "  SOC principal          = {}", s.soc_principal);
}

pub fn spne(s0: f64, s1: f64, w0: f64, m: f64, numeric: bool) -> Result<String> {
    let params = GameParameters::new(s0, s1, w0, m)?;
    let closed = model::spne_closed_form(&params)?;
    let mut out = String::new();
    let _ = writeln!(out, "parameters: s0 = {s0}, s1 = {s1}, w0 = {w0}, m = {m}");
    format_solution(&mut out, "closed form:", &closed);
    if numeric {
        let num = solver::backward_induction(&params, &SolverConfig::default())?;
        format_solution(&mut out, "backward induction:", &num);
        let _ = writeln!(out, "agreement:");
        let _ =
            writeln!(out, "  |Δw numeric - closed| = {:e}", (num.wage_differential - closed.wage_differential).abs());
        let _ = writeln!(out, "  |a numeric - closed|  = {:e}", (num.effort - closed.effort).abs());
    }
    Ok(out)
}

pub fn statics(s0: f64, s1: f64, step: Option<f64>) -> Result<String> {
    let h = step.unwrap_or_else(|| statics::default_step(s0, s1));
    let report = statics::verify_statics(s0, s1, h)?;
    let mut out = String::new();
    let _ = writeln!(out, "s0 = {s0}, s1 = {s1}, delta = {}, step = {h:e}", s0 - s1);
    let _ = writeln!(out, "{:<10} {:>24} {:>24} {:>11}", "partial", "analytic", "central diff", "rel err");
    let rows = [
        ("dΔw/ds1", report.d_dw_ds1, report.fd_ds1),
        ("dΔw/ds0", report.d_dw_ds0, report.fd_ds0),
        ("dΔw/dδ", report.d_dw_ddelta, report.fd_ddelta),
    ];
    for (name, analytic, fd) in rows {
        let rel = (fd - analytic).abs() / analytic.abs();
        let _ = writeln!(out, "{name:<10} {analytic:>24} {fd:>24} {rel:>11.3e}");
    }
    let _ = writeln!(out, "max relative error = {:e}", report.max_rel_error);
    let mark = |ok: bool| if ok { "holds" } else { "VIOLATED" };
    let _ = writeln!(out, "(i)   dΔw/ds1 > 0: {}", mark(report.d_dw_ds1 > 0.0));
    let _ = writeln!(out, "(ii)  dΔw/ds0 < 0: {}", mark(report.d_dw_ds0 < 0.0));
    let _ = writeln!(out, "(iii) dΔw/dδ  < 0: {}", mark(report.d_dw_ddelta < 0.0));
    Ok(out)
}

pub fn ingest(data: &Path, out_path: Option<&Path>) -> Result<(String, String)> {
    let records = load_data(Some(data))?;
    let normalized = dataset::nations_to_csv(&records);
    if let Some(path) = out_path {
        write_file(path, &normalized)?;
    }
    let hosts = records.iter().filter(|r| r.role == Role::Host).count();
    let summary = format!("{} records validated: {hosts} hosts, {} senders", records.len(), records.len() - hosts);
    Ok((normalized, summary))
}

pub struct RegressArgs<'a> {
    pub data: Option<&'a Path>,
    pub group: Option<Group>,
    pub gender: Option<Gender>,
    pub transform: Transform,
    pub out: &'a Path,
    pub hypotheses: bool,
    pub hypotheses_out: Option<&'a Path>,
}

fn hypotheses_path(table_out: &Path) -> PathBuf {
    table_out.with_file_name("hypotheses.json")
}

pub fn regress(args: &RegressArgs) -> Result<String> {
    let nations = load_data(args.data)?;
    let table = econometrics::run_table2(&nations, args.transform)?;
    let rows: Vec<RegressionResult> = table
        .iter()
        .filter(|r| args.group.is_none_or(|g| g == r.group))
        .filter(|r| args.gender.is_none_or(|g| g == r.gender))
        .cloned()
        .collect();
    write_file(args.out, &econometrics::table_to_csv(&rows))?;

    let mut out = econometrics::format_table(&rows);
    if args.transform != Transform::None {
        let _ = writeln!(out, "dependent variable: {}(dv)", args.transform.as_str());
    }
    if args.hypotheses {
        // The verdicts always use the full table, whatever rows were shown.
        let report = econometrics::evaluate_hypotheses(&table)?;
        let json = serde_json::to_string_pretty(&report)? + "\n";
        let path = args.hypotheses_out.map(Path::to_path_buf).unwrap_or_else(|| hypotheses_path(args.out));
        write_file(&path, &json)?;
        out.push_str(&json);
    }
    Ok(out)
}

pub struct PlotArgs<'a> {
    pub data: Option<&'a Path>,
    pub group: Group,
    pub gender: Gender,
    pub out: &'a Path,
    pub points: Option<&'a Path>,
    pub width: u32,
    pub height: u32,
}

/// `<stem>_points.csv` next to the SVG.
pub fn points_path(svg: &Path) -> PathBuf {
    let stem = svg.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "plot".into());
    svg.with_file_name(format!("{stem}_points.csv"))
}

pub fn plot(args: &PlotArgs) -> Result<String> {
    let nations = load_data(args.data)?;
    let pairs = econometrics::cell_pairs(&nations, args.group, args.gender)?;
    if pairs.is_empty() {
        bail!("no observations for {}_{}", args.group, args.gender.suffix());
    }
    let result = econometrics::regress_pairs(&pairs, args.group, args.gender, Transform::None)?;
    let spec = PlotSpec::new(&pairs, &result, args.width, args.height)?;
    let svg = plot::render_svg(&spec);
    write_file(args.out, &svg)?;
    let points = args.points.map(Path::to_path_buf).unwrap_or_else(|| points_path(args.out));
    write_file(&points, &dataset::pairs_to_csv(&pairs))?;
    Ok(format!(
        "{}: {} points, slope {}, intercept {}\nwrote {} and {}\n",
        result.label(),
        pairs.len(),
        result.slope,
        result.intercept,
        args.out.display(),
        points.display()
    ))
}
