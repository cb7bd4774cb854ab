//! `slingcalc` command-line front end.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 verification mismatch or
//! internal inconsistency, 4 resource limit.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use slingcalc::conway::{nabla_j, nabla_j_oracle, nabla_m, omega_mr, omega_mr_oracle, substitute_u};
use slingcalc::group::{
    conj_t_vs_txy, freeprod_conjugate_test, trefoil_word_translate,
};
use slingcalc::knot_module::{
    one_minus_t_invertible, presentation_reduce_wild, torsion_decide, wild_module_companion,
    wild_presentation,
};
use slingcalc::rational::{
    accumulate_product, accumulate_sum, certify_no_fit, counterexample_mobius_sum,
    counterexample_product, growth_f, schedule_validate, stage_divisibility, Schedule, StageData,
};
use slingcalc::{
    BigInt, Error, LaurentPoly, ModulePresentation, RationalFitBound, RationalSeries, RingTag,
    TruncatedSeries, Variant, Verdict, Word,
};

/// Largest cover degree accepted for one-variable Conway polynomials.
const MAX_R_POLY: usize = 400;
/// Largest cover degree accepted for two-variable potentials.
const MAX_R_OMEGA: usize = 60;
/// Largest series order accepted by `certify`.
const MAX_ORDER: usize = 4000;

#[derive(Parser)]
#[command(name = "slingcalc", version, about = "Exact Conway-potential and rationality calculator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Conway polynomials of J_r and M_r, or the potential of M_r.
    Conway(ConwayArgs),
    /// Rational-fit certificates for stage series.
    Certify(CertifyArgs),
    /// Group-theoretic demonstrations.
    Group(GroupArgs),
    /// Knot-module reports.
    Module(ModuleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "J")]
    J,
    #[value(name = "M")]
    M,
    #[value(name = "omega")]
    Omega,
}

#[derive(Args)]
struct ConwayArgs {
    #[arg(long, value_enum)]
    which: Which,
    /// Cover degrees: `3`, `1,2,5` or `1..8`.
    #[arg(long)]
    r: String,
    /// Cross-check against the product over roots of unity.
    #[arg(long)]
    verify: bool,
    /// Worker threads for independent cover degrees.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Demo {
    RationalProduct,
    NecklaceSum,
}

#[derive(Args)]
struct CertifyArgs {
    /// Run a built-in rational example instead of a stage series.
    #[arg(long, value_enum, conflicts_with_all = ["variant", "r"])]
    demo: Option<Demo>,
    #[arg(long, required_unless_present = "demo")]
    variant: Option<String>,
    /// Stage cover degrees, comma separated.
    #[arg(long, required_unless_present = "demo")]
    r: Option<String>,
    #[arg(long = "M", default_value_t = 3)]
    m: usize,
    #[arg(long = "N", default_value_t = 2)]
    n: usize,
    /// Series order; defaults to just past the first coefficient touched by the last stage.
    #[arg(long)]
    order: Option<usize>,
    /// Also require r_{i+1} / (3 r_i) to be an integer greater than 1.
    #[arg(long)]
    construction: bool,
    /// Recompute the series from the cleared fraction and check the verdict.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long)]
    demo: String,
    /// Search box for the conjugator search.
    #[arg(long, default_value_t = 6)]
    bound: i64,
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Action {
    Reduce,
    Torsion,
    Companion,
}

#[derive(Args)]
struct ModuleArgs {
    #[arg(long, value_enum)]
    action: Action,
    /// Cyclic presentation Z[t^±1]/(delta).
    #[arg(long, conflicts_with_all = ["free", "input"])]
    delta: Option<String>,
    /// Free module of this rank.
    #[arg(long, conflicts_with = "input")]
    free: Option<usize>,
    /// Presentation JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    verify: bool,
}

enum Failure {
    Lib(Error),
    Mismatch(String),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Usage(_) | Error::Parse(_) | Error::Domain(_)) | Failure::Usage(_) => 2,
            Failure::Lib(Error::Internal(_)) | Failure::Mismatch(_) => 3,
            Failure::Lib(Error::Resource(_)) => 4,
            Failure::Io(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Mismatch(m) => format!("verification mismatch: {m}"),
            Failure::Usage(m) => format!("usage error: {m}"),
            Failure::Io(m) => format!("i/o error: {m}"),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// A rendered report plus the exit status it implies.
struct Report {
    json: Value,
    table: String,
    csv: Option<String>,
    status: u8,
}

impl Report {
    fn new(json: Value, table: String) -> Self {
        Report { json, table, csv: None, status: 0 }
    }

    fn render(&self, format: Format) -> Outcome<String> {
        Ok(match format {
            Format::Table => self.table.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| Failure::Usage("csv output is only available for a single polynomial".into()))?,
        })
    }
}

fn parse_r_list(s: &str) -> Outcome<Vec<usize>> {
    let bad = || Failure::Usage(format!("cannot read cover degrees {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        if let Some((a, b)) = part.split_once("..") {
            let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    if out.contains(&0) {
        return Err(Failure::Usage("cover degree r must be at least 1".into()));
    }
    Ok(out)
}

fn csv_of(p: &LaurentPoly) -> String {
    let mut s = String::from("exponent,coefficient\n");
    for (e, c) in p.terms() {
        let exp = e.iter().take(p.nvars()).map(i64::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(s, "{exp},{c}");
    }
    s
}

fn which_name(w: Which) -> &'static str {
    match w {
        Which::J => "J",
        Which::M => "M",
        Which::Omega => "omega",
    }
}

/// `(x - x^-1) Ω(x, x)` as a polynomial in `x`.
fn diagonal_times_u(omega: &LaurentPoly) -> Outcome<LaurentPoly> {
    let x = LaurentPoly::var(&["x"], 0);
    let diag = omega.compose(&[x.clone(), x])?;
    Ok(&LaurentPoly::parse(&["x"], "x - x^-1")? * &diag)
}

fn conway_one(which: Which, r: usize, verify: bool) -> Outcome<(LaurentPoly, Option<bool>)> {
    let p = match which {
        Which::J => nabla_j(r)?,
        Which::M => nabla_m(r)?,
        Which::Omega => omega_mr(r)?,
    };
    if !verify {
        return Ok((p, None));
    }
    let agrees = match which {
        Which::J => nabla_j_oracle(r)? == p,
        Which::M => diagonal_times_u(&omega_mr_oracle(r)?)? == substitute_u(&p, "x")?,
        Which::Omega => omega_mr_oracle(r)? == p,
    };
    if !agrees {
        return Err(Failure::Mismatch(format!(
            "{} for r = {r} disagrees with the roots-of-unity product",
            which_name(which)
        )));
    }
    Ok((p, Some(true)))
}

fn cmd_conway(a: &ConwayArgs, format: Format) -> Outcome<Report> {
    let rs = parse_r_list(&a.r)?;
    let limit = if a.which == Which::Omega { MAX_R_OMEGA } else { MAX_R_POLY };
    if let Some(&r) = rs.iter().find(|&&r| r > limit) {
        return Err(Failure::Lib(Error::Resource(format!(
            "r = {r} exceeds the limit {limit} for {}; split the job or use a smaller r",
            which_name(a.which)
        ))));
    }
    if format == Format::Csv && rs.len() != 1 {
        return Err(Failure::Usage("csv output takes a single cover degree".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.max(1))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let results: Vec<Outcome<(LaurentPoly, Option<bool>)>> =
        pool.install(|| rs.par_iter().map(|&r| conway_one(a.which, r, a.verify)).collect());
    let mut entries = Vec::new();
    let mut table = String::new();
    let mut last = None;
    for (&r, res) in rs.iter().zip(results) {
        let (p, verified) = res?;
        let _ = writeln!(
            table,
            "{}_{r} = {p}{}",
            which_name(a.which),
            if verified.is_some() { "  [verified]" } else { "" }
        );
        entries.push(json!({
            "r": r,
            "polynomial": p,
            "text": p.to_string(),
            "verified": verified,
        }));
        last = Some(p);
    }
    let mut report = Report::new(json!({ "which": which_name(a.which), "results": entries }), table);
    if rs.len() == 1 {
        report.csv = last.as_ref().map(csv_of);
    }
    Ok(report)
}

fn fit_json(f: &RationalSeries) -> Value {
    json!({ "num": f.num(), "den": f.den(), "text": format!("({})/({})", f.num(), f.den()) })
}

fn cmd_certify_demo(demo: Demo, order: Option<usize>) -> Outcome<Report> {
    let order = order.unwrap_or(20);
    let (name, (series, fit)) = match demo {
        Demo::RationalProduct => ("rational-product", counterexample_product(order)?),
        Demo::NecklaceSum => ("necklace-sum", counterexample_mobius_sum(order)?),
    };
    let mut table = format!("{name} through order {order}\nseries: {series}\n");
    match &fit {
        Some(f) => {
            let _ = writeln!(table, "fit: ({})/({})", f.num(), f.den());
        }
        None => table.push_str("no fit\n"),
    }
    Ok(Report::new(
        json!({
            "demo": name,
            "order": order,
            "verdict": if fit.is_some() { "fit" } else { "no-fit" },
            "fit": fit.as_ref().map(fit_json),
        }),
        table,
    ))
}

/// The stage series as one cleared fraction, expanded independently of the
/// stage-by-stage accumulation.
fn cleared_fraction(variant: Variant, stages: &[StageData], order: usize) -> Outcome<TruncatedSeries> {
    let one = LaurentPoly::one(&["z"]);
    let den = stages.iter().fold(one.clone(), |acc, s| &acc * &s.q);
    let num = match variant {
        Variant::Growth1 => stages.iter().fold(one, |acc, s| &acc * &(&s.q + &s.p)),
        Variant::Growth2 => stages.iter().enumerate().fold(LaurentPoly::zero(&["z"]), |acc, (i, s)| {
            let others = stages
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(one.clone(), |a, (_, t)| &a * &t.q);
            &acc + &(&s.p * &others)
        }),
    };
    Ok(TruncatedSeries::from_fraction(&num, &den, order)?)
}

fn cmd_certify(a: &CertifyArgs) -> Outcome<Report> {
    if let Some(demo) = a.demo {
        return cmd_certify_demo(demo, a.order);
    }
    let variant: Variant = a.variant.as_deref().unwrap_or_default().parse()?;
    let rs = parse_r_list(a.r.as_deref().unwrap_or_default())?;
    if let Some(&r) = rs.iter().find(|&&r| r > MAX_R_POLY) {
        return Err(Failure::Lib(Error::Resource(format!("r = {r} exceeds the limit {MAX_R_POLY}"))));
    }
    let schedule = Schedule { variant, r: rs.iter().map(|&r| BigInt::from(r)).collect() };
    let verdict = schedule_validate(&schedule, a.construction);
    if let Some(i) = verdict.first_violation {
        let msg = if i == 0 {
            "r_1 must be positive".to_string()
        } else {
            let (prev, next) = (rs[i - 1], rs[i]);
            let f = growth_f(variant, &BigInt::from(prev))?;
            if BigInt::from(next) < f || next <= prev {
                format!("r_{} = {next} violates r_{} ≥ f(r_{i}) = {f} ({next} < {f})", i + 1, i + 1)
            } else {
                format!("r_{} = {next} is not 3·r_{i}·k with k > 1", i + 1)
            }
        };
        return Err(Failure::Usage(format!("invalid {} schedule: {msg}", variant_name(variant))));
    }
    let bound = RationalFitBound::new(a.m, a.n);
    let order = match a.order {
        Some(o) => o,
        None => {
            let mut o = bound.certification_order();
            if rs.len() >= 2 {
                let k = rs.len();
                let (_, _, val) = stage_divisibility(variant, rs[k - 2], rs[k - 1])?;
                o = o.max(val + a.m + a.n + 2);
            }
            o
        }
    };
    if order > MAX_ORDER {
        return Err(Failure::Lib(Error::Resource(format!(
            "order {order} exceeds the limit {MAX_ORDER}; pass a smaller --order"
        ))));
    }
    let stages = StageData::stages(variant, &rs)?;
    let series = match variant {
        Variant::Growth1 => accumulate_product(&stages, order)?,
        Variant::Growth2 => accumulate_sum(&stages, order)?,
    };
    let cert = certify_no_fit(&series, bound)?;
    let mut verified = None;
    if a.verify {
        let oracle = cleared_fraction(variant, &stages, order)?;
        if oracle != series {
            return Err(Failure::Mismatch("stage accumulation disagrees with the cleared fraction".into()));
        }
        if let Some(f) = &cert.fit {
            let expand = TruncatedSeries::from_fraction(&f.num, &f.den, order)?;
            if expand != series {
                return Err(Failure::Mismatch("reported fit does not reproduce the series".into()));
            }
        }
        verified = Some(true);
    }
    let mut divisibility = Vec::new();
    for w in rs.windows(2) {
        let (holds, threshold, valuation) = stage_divisibility(variant, w[0], w[1])?;
        divisibility.push(json!({ "r": [w[0], w[1]], "holds": holds, "threshold": threshold, "valuation": valuation }));
    }
    let unexpected_fit = rs.len() >= 2 && cert.verdict == Verdict::Fit;
    let mut table = format!(
        "{} stages r = {:?}, bound (M, N) = ({}, {}), order {order}\nverdict: {}\n",
        variant_name(variant),
        rs,
        a.m,
        a.n,
        match cert.verdict {
            Verdict::Fit => "fit",
            Verdict::NoFit => "no-fit",
        }
    );
    if let (Some(r), Some(ar)) = (cert.rank, cert.augmented_rank) {
        let _ = writeln!(table, "rank {r} < augmented rank {ar}");
    }
    if let Some(f) = &cert.fit {
        let _ = writeln!(table, "fit: ({})/({})", f.num, f.den);
    }
    if unexpected_fit {
        table.push_str("a fit exists although the schedule predicts none; raise --order\n");
    }
    let mut report = Report::new(
        json!({
            "variant": variant_name(variant),
            "r": rs,
            "certificate": cert,
            "divisibility": divisibility,
            "verified": verified,
        }),
        table,
    );
    if unexpected_fit {
        report.status = 3;
    }
    Ok(report)
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Growth1 => "growth1",
        Variant::Growth2 => "growth2",
    }
}

fn cmd_group(a: &GroupArgs) -> Outcome<Report> {
    match a.demo.as_str() {
        "heis-conj" => {
            if a.bound < 0 {
                return Err(Failure::Usage("bound must be non-negative".into()));
            }
            let w = conj_t_vs_txy(a.bound);
            if !w.found.is_empty() || w.residual == 0 {
                return Err(Failure::Mismatch(format!("conjugator found: {:?}", w.found)));
            }
            let table = format!(
                "t and txy not conjugate; inconsistent system {}\nforced (l, m) = {:?}, residual {}\nno conjugator with |k|, |l|, |m|, |n| ≤ {}\n",
                w.equations.join(", "),
                w.forced,
                w.residual,
                w.search_bound
            );
            Ok(Report::new(json!({ "demo": "heis-conj", "conjugate": false, "witness": w }), table))
        }
        "trefoil-meridian" => {
            let tr = |s: &str| -> Outcome<_> { Ok(trefoil_word_translate(&Word::parse(s)?)?) };
            let (a_w, b_w) = (tr("x^2 y^-1")?, tr("x")?);
            let (ra, rb) = (a_w.cyclic_reduce(), b_w.cyclic_reduce());
            let conj = freeprod_conjugate_test(&a_w, &b_w);
            if a.verify && (conj || ra.len() == rb.len()) {
                return Err(Failure::Mismatch("alternation lengths do not separate the words".into()));
            }
            let table = format!(
                "x^2 y^-1 -> {ra} (length {})\nx -> {rb} (length {})\nalternation {} vs {} ⇒ {}\n",
                ra.len(),
                rb.len(),
                ra.len(),
                rb.len(),
                if conj { "conjugate" } else { "not conjugate" }
            );
            Ok(Report::new(
                json!({
                    "demo": "trefoil-meridian",
                    "words": { "x^2 y^-1": ra.to_string(), "x": rb.to_string() },
                    "alternation": [ra.len(), rb.len()],
                    "conjugate": conj,
                }),
                table,
            ))
        }
        other => Err(Failure::Usage(format!(
            "unknown demo {other:?}; expected heis-conj or trefoil-meridian"
        ))),
    }
}

fn read_presentation(a: &ModuleArgs) -> Outcome<ModulePresentation> {
    if let Some(d) = &a.delta {
        return Ok(ModulePresentation::cyclic(LaurentPoly::parse(&["t"], d)?)?);
    }
    if let Some(n) = a.free {
        let gens = (1..=n).map(|i| format!("e{i}")).collect();
        return Ok(ModulePresentation::new(RingTag::LaurentT, gens, Vec::new())?);
    }
    if let Some(path) = &a.input {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        return Ok(ModulePresentation::from_json(&text)?);
    }
    Err(Failure::Usage("torsion needs one of --delta, --free or --input".into()))
}

fn cmd_module(a: &ModuleArgs) -> Outcome<Report> {
    match a.action {
        Action::Reduce => {
            let r = presentation_reduce_wild()?;
            if a.verify {
                let pres = wild_presentation();
                let [c1, c2] = &r.combination;
                let alpha = &(c1 * &pres.rels[0][0]) + &(c2 * &pres.rels[1][0]);
                let beta = &(c1 * &pres.rels[0][1]) + &(c2 * &pres.rels[1][1]);
                if alpha != r.relator || !beta.is_zero() {
                    return Err(Failure::Mismatch("relator is not the stated combination".into()));
                }
            }
            let mut table = String::new();
            for (i, s) in r.steps.iter().enumerate() {
                let _ = writeln!(table, "{}. {s}", i + 1);
            }
            let _ = writeln!(table, "relator: {}", r.relator);
            Ok(Report::new(
                json!({
                    "steps": r.steps,
                    "substitution": r.substitution,
                    "relator": r.relator,
                    "relator_text": r.relator.to_string(),
                    "combination": r.combination,
                    "presentation": r.presentation.to_json(),
                }),
                table,
            ))
        }
        Action::Torsion => {
            let p = read_presentation(a)?;
            let torsion = torsion_decide(&p)?;
            let cyclic = p.gens.len() == 1 && p.rels.len() == 1 && p.ring == RingTag::LaurentT;
            let invertible = if cyclic && torsion { Some(one_minus_t_invertible(&p)?) } else { None };
            if a.verify && cyclic && torsion == p.rels[0][0].is_zero() {
                return Err(Failure::Mismatch("cyclic torsion verdict disagrees with Δ ≠ 0".into()));
            }
            let mut table = format!("torsion={torsion}\n");
            if let Some(inv) = invertible {
                let _ = writeln!(table, "1 - t invertible={inv}");
            }
            Ok(Report::new(
                json!({ "presentation": p.to_json(), "torsion": torsion, "one_minus_t_invertible": invertible }),
                table,
            ))
        }
        Action::Companion => {
            let c = wild_module_companion();
            let det = c.determinant();
            if a.verify {
                let inv = c.inverse()?;
                if !det.is_unit() || !c.compose(&inv).is_identity() || !inv.compose(&c).is_identity() {
                    return Err(Failure::Mismatch("companion matrix is not invertible".into()));
                }
            }
            let rows: Vec<Vec<String>> =
                c.matrix.iter().map(|row| row.iter().map(|e| e.to_string()).collect()).collect();
            let table = format!(
                "[{}, {}]\n[{}, {}]\ndet = {det} (unit: {})\n",
                rows[0][0],
                rows[0][1],
                rows[1][0],
                rows[1][1],
                det.is_unit()
            );
            Ok(Report::new(
                json!({ "ring": RingTag::Localized, "matrix": rows, "determinant": det.to_string(), "unit": det.is_unit() }),
                table,
            ))
        }
    }
}

fn run(cli: &Cli) -> Outcome<u8> {
    let report = match &cli.cmd {
        Cmd::Conway(a) => cmd_conway(a, cli.format)?,
        Cmd::Certify(a) => cmd_certify(a)?,
        Cmd::Group(a) => cmd_group(a)?,
        Cmd::Module(a) => cmd_module(a)?,
    };
    let text = report.render(cli.format)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(report.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("slingcalc: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
