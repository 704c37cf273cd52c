use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use emchi::km::Km;
use emchi::milnor::{self, MilnorSeq};
use emchi::resolve::{self, AlgebraName, ChartFormat, ExtChart, GradedModule};
use emchi::theorems::{self, SearchOutcome, SplitPart};
use emchi::{fixtures, Ideal, KPoly};

use crate::args::{AlgebraArg, Command, FormatArg, Global, ModuleSource, PartArg, TableArg};
use crate::output::{CliError, Report};

type CliResult<T> = Result<T, CliError>;

pub fn run(cmd: &Command, g: &Global) -> CliResult<Report> {
    match cmd {
        Command::Mul { r, s } => mul(r, s),
        Command::Chi { d } => chi(*d),
        Command::Basis { d } => basis(*d),
        Command::ChiClass { n, k } => chi_class(*n, *k, g),
        Command::Membership { n, k, ideal } => membership(*n, *k, (*ideal).into(), g),
        Command::MinK { n, ideal, search, k_max } => min_k(*n, (*ideal).into(), *search, *k_max, g),
        Command::VerifyMinK { ideal, n_max, n_min } => verify_min_k((*ideal).into(), n_min.unwrap_or(2), *n_max, g),
        Command::SplitMin { n, part } => split_min(*n, *part),
        Command::TwoSeries { j } => two_series(*j),
        Command::Margolis {
            source,
            q,
            max_deg,
            algebra,
        } => margolis(source, *q, *max_deg, *algebra, g),
        Command::Ext {
            source,
            algebra,
            max_s,
            max_t,
            truncate,
            chart_out,
        } => ext(source, *algebra, *max_s, *max_t, *truncate, chart_out.as_deref(), g),
        Command::Module {
            source,
            algebra,
            max_deg,
        } => module(source, *algebra, *max_deg, g),
        Command::Render { chart, format } => render(chart, *format),
        Command::CheckTable { table } => check_table(*table),
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn km(k: u32, g: &Global) -> CliResult<Km> {
    Ok(Km::with_column_cap(k, g.column_cap)?)
}

fn seq_strings<'a>(it: impl Iterator<Item = &'a MilnorSeq>) -> Vec<String> {
    it.map(MilnorSeq::to_string).collect()
}

fn mul(r: &str, s: &str) -> CliResult<Report> {
    let r: MilnorSeq = r.parse()?;
    let s: MilnorSeq = s.parse()?;
    let p = milnor::product(&r, &s);
    let text = format!("{r} * {s} = {p}");
    let result = json!({
        "degree": r.degree() + s.degree(),
        "terms": seq_strings(p.terms()),
    });
    Ok(Report::new(json!({ "r": r.to_string(), "s": s.to_string() }), result, text))
}

fn chi(d: usize) -> CliResult<Report> {
    let c = milnor::chi(d);
    let text = format!("chi(Sq^{d}) = {c}");
    let result = json!({ "degree": d, "terms": seq_strings(c.terms()) });
    Ok(Report::new(json!({ "d": d }), result, text))
}

fn basis(d: usize) -> CliResult<Report> {
    let b = milnor::basis(d);
    let mut text = format!("degree {d}: {} elements\n", b.len());
    for r in &b {
        let _ = writeln!(text, "  {r}");
    }
    let result = json!({ "degree": d, "dim": b.len(), "basis": seq_strings(b.iter()) });
    Ok(Report::new(json!({ "d": d }), result, text))
}

fn class_json(km: &Km, p: &KPoly) -> Value {
    json!({
        "named": km.display(p),
        "generic": km.display_generic(p),
        "terms": p.len(),
    })
}

fn chi_class(n: usize, k: u32, g: &Global) -> CliResult<Report> {
    let km = km(k, g)?;
    let class = km.chi_class(n)?;
    let text = format!("chi(Sq^{}) i_{k} = {}", n - k as usize, km.display(&class));
    let result = json!({ "degree": n, "class": class_json(&km, &class) });
    Ok(Report::new(json!({ "n": n, "k": k }), result, text))
}

fn membership(n: usize, k: u32, ideal: Ideal, g: &Global) -> CliResult<Report> {
    let km = km(k, g)?;
    let class = km.chi_class(n)?;
    let m = km.in_image(&class, n, ideal.operations())?;
    let witness: Vec<Value> = m
        .witness
        .iter()
        .map(|(i, mono)| json!({ "operation": format!("Sq{i}"), "argument": km.display(&KPoly::from(mono.clone())) }))
        .collect();
    let verdict = if m.in_image { "in-image" } else { "not-in-image" };
    let mut text = format!(
        "chi(Sq^{}) i_{k} = {}\n{verdict} of {ideal} ({} x {} system)\n",
        n - k as usize,
        km.display(&class),
        m.rows,
        m.columns
    );
    for (i, mono) in &m.witness {
        let _ = writeln!(text, "  + Sq{i}({})", km.display(&KPoly::from(mono.clone())));
    }
    let result = json!({
        "class": class_json(&km, &class),
        "verdict": verdict,
        "in_image": m.in_image,
        "rows": m.rows,
        "columns": m.columns,
        "witness": witness,
    });
    let params = json!({ "n": n, "k": k, "ideal": ideal.to_string() });
    Ok(Report::new(params, result, text).answer(m.in_image))
}

/// The `k < n` found by the closed form.
fn proper(formula: Option<u32>, n: u32) -> Option<u32> {
    formula.filter(|&k| k < n)
}

fn min_k(n: u32, ideal: Ideal, search: bool, k_max: Option<u32>, g: &Global) -> CliResult<Report> {
    let formula = theorems::min_k_formula(n as u64, ideal)?;
    let case = theorems::case_tag(n as u64, ideal).ok();
    let outcome = if search {
        Some(theorems::min_k_search(n, ideal, k_max.unwrap_or(n), g.column_cap)?)
    } else {
        None
    };
    let k = match &outcome {
        Some(o) => o.proper_k(),
        None => proper(formula, n),
    };
    let mut text = format!("n={n} ideal={ideal}\n");
    if let Some(c) = case {
        let _ = writeln!(text, "case: {c}");
    }
    let _ = writeln!(text, "formula: {}", formula.map_or("none".into(), |k| k.to_string()));
    if let Some(o) = &outcome {
        let _ = writeln!(text, "search: {}", describe_outcome(o));
    }
    let _ = write!(text, "min k: {}", k.map_or("none".into(), |k| k.to_string()));
    let result = json!({
        "case": case,
        "alpha": theorems::alpha(n as u64),
        "eps": theorems::eps(n as u64).ok(),
        "eps_prime": theorems::eps_prime(n as u64).ok(),
        "formula": formula,
        "search": outcome,
        "k": k,
    });
    let params = json!({ "n": n, "ideal": ideal.to_string(), "search": search, "k_max": k_max });
    Ok(Report::new(params, result, text).answer(k.is_some()))
}

fn describe_outcome(o: &SearchOutcome) -> String {
    match o {
        SearchOutcome::Found { k } => k.to_string(),
        SearchOutcome::TopClassOnly { n } => format!("none below k={n}"),
        SearchOutcome::NotFound => "none up to k-max".into(),
    }
}

#[derive(Serialize)]
struct VerifyRow {
    n: u32,
    formula: Option<u32>,
    search: SearchOutcome,
    agree: bool,
}

fn verify_min_k(ideal: Ideal, n_min: u32, n_max: u32, g: &Global) -> CliResult<Report> {
    let lo = n_min.max(2);
    let rows = (lo..=n_max)
        .into_par_iter()
        .map(|n| {
            let formula = theorems::min_k_formula(n as u64, ideal)?;
            let search = theorems::min_k_search(n, ideal, n, g.column_cap)?;
            let agree = match formula {
                Some(f) => search.k() == Some(f),
                None => search.proper_k().is_none(),
            };
            Ok(VerifyRow {
                n,
                formula,
                search,
                agree,
            })
        })
        .collect::<Result<Vec<_>, emchi::Error>>()?;
    let all = rows.iter().all(|r| r.agree);
    let mut text = format!("{:>4} {:>8} {:>16}  agree\n", "n", "formula", "search");
    for r in &rows {
        let _ = writeln!(
            text,
            "{:>4} {:>8} {:>16}  {}",
            r.n,
            r.formula.map_or("none".into(), |k| k.to_string()),
            describe_outcome(&r.search),
            if r.agree { "yes" } else { "NO" }
        );
    }
    let _ = write!(text, "{}", if all { "all agree" } else { "disagreement found" });
    let result = json!({ "all_agree": all, "rows": rows });
    let params = json!({ "ideal": ideal.to_string(), "n_min": lo, "n_max": n_max });
    Ok(Report::new(params, result, text).answer(all))
}

fn split_min(n: u64, part: PartArg) -> CliResult<Report> {
    let part = match part {
        PartArg::A => SplitPart::A,
        PartArg::B => SplitPart::B,
    };
    let res = theorems::split_minimizers(n, part)?;
    let moves = theorems::split_moves(n, part)?;
    let agree = res.minimizers == moves;
    let fmt = |v: &[Vec<u32>]| v.iter().map(|r| format!("{r:?}")).collect::<Vec<_>>().join(" ");
    let text = format!(
        "n={n} target={} least sum={}\nminimizers: {}\nmoves:      {}\n{}",
        res.target,
        res.min_sum,
        fmt(&res.minimizers),
        fmt(&moves),
        if agree { "sets agree" } else { "sets differ" }
    );
    let result = json!({
        "target": res.target,
        "min_sum": res.min_sum,
        "minimizers": res.minimizers,
        "moves": moves,
        "agree": agree,
    });
    let params = json!({ "n": n, "part": part });
    Ok(Report::new(params, result, text).answer(agree))
}

fn two_series(j: u32) -> CliResult<Report> {
    let coeffs = theorems::two_series_image(j)?;
    let mut text = format!("coefficient of x^{j}:\n");
    for (i, c) in &coeffs {
        let _ = writeln!(text, "  beta_{i}: {c} v1^{}", j - i);
    }
    let map: BTreeMap<String, String> = coeffs.iter().map(|(i, c)| (i.to_string(), c.to_string())).collect();
    let result = json!({ "coefficients": map });
    Ok(Report::new(json!({ "j": j }), result, text))
}

fn load_module(source: &ModuleSource, algebra: Option<AlgebraArg>, max_deg: Option<usize>, g: &Global) -> CliResult<GradedModule> {
    if let Some(path) = &source.module {
        let m = GradedModule::from_json(&read_file(path)?)?;
        if let Some(a) = algebra {
            let want: AlgebraName = a.into();
            if want != m.algebra_name() {
                return Err(emchi::Error::Domain(format!("module is over {}, not {want}", m.algebra_name())).into());
            }
        }
        return Ok(m);
    }
    let k = source.k.expect("clap requires --k without --module");
    let algebra = algebra.ok_or_else(|| CliError::Usage("--algebra is required with --k".into()))?;
    let max_deg = max_deg.ok_or_else(|| CliError::Usage("a degree bound is required with --k".into()))?;
    Ok(resolve::module_from_km(&km(k, g)?, algebra.into(), max_deg, source.reduced)?)
}

fn source_json(source: &ModuleSource) -> Value {
    match &source.module {
        Some(p) => json!({ "module": p.display().to_string() }),
        None => json!({ "k": source.k, "reduced": source.reduced }),
    }
}

fn margolis(source: &ModuleSource, q: usize, max_deg: Option<i32>, algebra: AlgebraArg, g: &Global) -> CliResult<Report> {
    let bound = match max_deg {
        Some(d) if d < 0 => return Err(emchi::Error::Domain(format!("max-deg must be nonnegative (got {d})")).into()),
        // Room for Q_j out of the top reported degree.
        d => d.map(|d| d as usize + milnor::xi_degree(q + 1)),
    };
    let algebra = source.module.is_none().then_some(algebra);
    let m = load_module(source, algebra, bound, g)?;
    let h = resolve::margolis_homology(&m, q, max_deg)?;
    let named = match source.k {
        Some(k) if source.module.is_none() => Some(named_representatives(&km(k, g)?, &h)),
        _ => None,
    };
    let mut text = format!("Q{q}-homology of {}\n", h.module);
    for d in h.degrees.iter().filter(|d| d.dim > 0) {
        let reps = match &named {
            Some(n) => &n[&d.degree],
            None => &d.representatives,
        };
        let _ = writeln!(text, "  degree {:>3}: dim {}  [{}]", d.degree, d.dim, reps.join("; "));
    }
    if let Some(v) = h.valid_through {
        let _ = write!(text, "through degree {v}");
    }
    let dims: BTreeMap<String, usize> = h.dims().into_iter().map(|(d, n)| (d.to_string(), n)).collect();
    let mut result = json!({ "dims": dims, "homology": h });
    if let Some(n) = named {
        let n: BTreeMap<String, Vec<String>> = n.into_iter().map(|(d, r)| (d.to_string(), r)).collect();
        result["named_representatives"] = json!(n);
    }
    let mut params = source_json(source);
    params["q"] = json!(q);
    params["max_deg"] = json!(max_deg);
    if let Some(a) = algebra {
        params["algebra"] = json!(AlgebraName::from(a));
    }
    Ok(Report::new(params, result, text))
}

/// Homology representatives rewritten in the named basis; the module basis in
/// each degree is the monomial basis of that degree.
fn named_representatives(km: &Km, h: &resolve::MargolisHomology) -> BTreeMap<i32, Vec<String>> {
    h.degrees
        .iter()
        .filter(|d| d.dim > 0)
        .map(|d| {
            let basis = km.monomial_basis(d.degree as usize);
            let reps = d
                .vectors
                .iter()
                .map(|v| km.display(&v.ones().map(|i| basis[i].clone()).collect()))
                .collect();
            (d.degree, reps)
        })
        .collect()
}

fn ext(
    source: &ModuleSource,
    algebra: Option<AlgebraArg>,
    max_s: usize,
    max_t: i32,
    truncate: Option<usize>,
    chart_out: Option<&Path>,
    g: &Global,
) -> CliResult<Report> {
    let truncate = match (truncate, algebra) {
        (Some(d), _) => Some(d),
        (None, Some(a)) => {
            let top = resolve::algebra(a.into()).top_degree() as i32;
            Some((max_t + top).max(0) as usize)
        }
        (None, None) => None,
    };
    let m = load_module(source, algebra, truncate, g)?;
    let res = resolve::minimal_resolution(&m, max_s, max_t)?;
    res.check_d_squared()?;
    res.check_minimal()?;
    res.check_euler()?;
    let chart = res.chart();
    if let Some(path) = chart_out {
        write_file(path, &format!("{}\n", serde_json::to_string_pretty(&chart).map_err(emchi::Error::from)?))?;
    }
    let text = chart.render_text();
    let mut params = source_json(source);
    params["algebra"] = json!(m.algebra_name());
    params["max_s"] = json!(max_s);
    params["max_t"] = json!(max_t);
    params["truncate"] = json!(truncate);
    Ok(Report::new(params, chart, text))
}

fn module(source: &ModuleSource, algebra: Option<AlgebraArg>, max_deg: Option<usize>, g: &Global) -> CliResult<Report> {
    let m = load_module(source, algebra, max_deg, g)?;
    let mut text = format!("{} over {}\n", m.name(), m.algebra_name());
    for d in m.degrees() {
        let _ = writeln!(text, "  degree {d:>3}: dim {}", m.dim(d));
    }
    let _ = write!(text, "total dim {}", m.total_dim());
    let mut params = source_json(source);
    params["max_deg"] = json!(max_deg);
    let mut report = Report::new(params, Value::Null, text);
    if !g.pretty {
        report.raw = Some(m.to_json());
    }
    Ok(report)
}

fn render(chart: &Path, format: FormatArg) -> CliResult<Report> {
    let c = ExtChart::from_json(&read_file(chart)?)?;
    let format = match format {
        FormatArg::Text => ChartFormat::Text,
        FormatArg::Svg => ChartFormat::Svg,
        FormatArg::Json => ChartFormat::Json,
    };
    let mut out = c.render(format);
    if !out.ends_with('\n') {
        out.push('\n');
    }
    let mut report = Report::new(json!({ "chart": chart.display().to_string() }), Value::Null, String::new());
    report.raw = Some(out);
    Ok(report)
}

fn check_table(table: TableArg) -> CliResult<Report> {
    let (name, cells) = match table {
        TableArg::K2E1 => ("k2-e1", fixtures::check_k2_e1()?),
        TableArg::K3Gens => ("k3-gens", fixtures::check_k3_generators()?),
    };
    let failed = cells.iter().filter(|c| !c.ok).count();
    let mut text = String::new();
    for c in &cells {
        let _ = writeln!(
            text,
            "{} {:<4} {:<5} expected {}  computed {}",
            if c.ok { "ok  " } else { "FAIL" },
            c.class,
            c.operation,
            c.expected,
            c.computed
        );
    }
    let _ = write!(text, "{} cells, {failed} mismatched", cells.len());
    let result = json!({ "cells": cells, "mismatched": failed });
    Ok(Report::new(json!({ "table": name }), result, text).answer(failed == 0))
}
