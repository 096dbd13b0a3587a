//! One function per subcommand. Each returns a report and whether its checks
//! passed.

use std::fs;
use std::path::Path;

use fpdim_core::bricks::{enumerate_bricks, fpdim_search, loop_extension_report, EnumConfig};
use fpdim_core::formulas::{level_one_root, poly_ext1, poly_hom_dim, two_cycle_radius, long_cycle_radius, FactoredPoly};
use fpdim_core::quiver::{check_admissible, check_loop_commutativity};
use fpdim_core::{Algebra, BoundQuiver, Field, Rational, F101, F11, F13, F2, F3, F5, F7};
use serde_json::json;

use crate::dsl::{self, FieldChoice, QuiverFile};
use crate::error::CliError;
use crate::report::{certificate, witness_cert, Report, SearchCert};

pub struct Outcome {
    pub report: Report,
    pub passed: bool,
    /// Exit code when `passed` is false.
    pub failure_code: u8,
}

impl Outcome {
    pub fn new(report: Report, passed: bool) -> Self {
        Outcome {
            report,
            passed,
            failure_code: 2,
        }
    }

    fn ok(report: Report) -> Self {
        Outcome::new(report, true)
    }
}

/// Calls `$func::<F>(args)` with `F` the field named by `$choice`.
macro_rules! dispatch {
    ($choice:expr, $func:ident ( $($arg:expr),* )) => {
        match $choice {
            FieldChoice::Prime(2) => $func::<F2>($($arg),*),
            FieldChoice::Prime(3) => $func::<F3>($($arg),*),
            FieldChoice::Prime(5) => $func::<F5>($($arg),*),
            FieldChoice::Prime(7) => $func::<F7>($($arg),*),
            FieldChoice::Prime(11) => $func::<F11>($($arg),*),
            FieldChoice::Prime(13) => $func::<F13>($($arg),*),
            FieldChoice::Prime(101) => $func::<F101>($($arg),*),
            FieldChoice::Prime(p) => Err(CliError::Input(format!("unsupported prime {p}"))),
            FieldChoice::Rationals => $func::<Rational>($($arg),*),
        }
    };
}
pub(crate) use dispatch;

pub struct Loaded {
    pub path: String,
    pub file: QuiverFile,
    pub bq: BoundQuiver,
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let file = dsl::parse(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    let bq = file.bound_quiver()?;
    Ok(Loaded {
        path: path.display().to_string(),
        file,
        bq,
    })
}

/// Comma-separated list, e.g. `2,2,1`.
pub fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad {what} entry {x:?} in {s:?}")))
        })
        .collect()
}

fn check_cap(bq: &BoundQuiver, cap: &[usize], what: &str) -> Result<(), CliError> {
    if cap.len() != bq.vertex_count() {
        return Err(CliError::Input(format!(
            "{what} has {} entries for {} vertices",
            cap.len(),
            bq.vertex_count()
        )));
    }
    Ok(())
}

fn field_for(flag: Option<FieldChoice>, file: &QuiverFile, default: FieldChoice) -> FieldChoice {
    flag.or(file.field).unwrap_or(default)
}

pub fn check(path: &Path, field: Option<FieldChoice>, max_len: usize) -> Result<Outcome, CliError> {
    let l = load(path)?;
    let field = field_for(field, &l.file, FieldChoice::Rationals);
    dispatch!(field, check_in(&l, max_len))
}

fn check_in<F: Field>(l: &Loaded, max_len: usize) -> Result<Outcome, CliError> {
    let adm = check_admissible::<F>(&l.bq, max_len);
    let mut results = json!({
        "admissible": adm.admissible,
        "nilpotency": adm.nilpotency,
        "algebra_dim": adm.algebra_dim,
        "surviving_path": adm.witness.as_ref().map(|p| p.display(l.bq.quiver()).to_string()),
    });
    let mut passed = adm.admissible;
    let mut report_lines = vec![format!(
        "admissible: {} (nilpotency {:?}, dimension {:?})",
        adm.admissible, adm.nilpotency, adm.algebra_dim
    )];
    if adm.admissible && l.bq.quiver().has_loops() {
        let alg = Algebra::<F>::with_max_len(&l.bq, max_len)?;
        let c = check_loop_commutativity(&alg);
        passed &= c.holds;
        results["loop_commutativity"] = json!({ "holds": c.holds, "violations": c.violations });
        report_lines.push(format!("loop commutativity: {}", c.holds));
    }
    let inputs = json!({ "file": l.path, "field": F::name(), "max_len": max_len });
    let mut report = Report::new("check", inputs, results);
    report.summary = report_lines;
    // an inadmissible or non-commuting input is an input error
    Ok(Outcome {
        failure_code: 1,
        ..Outcome::new(report, passed)
    })
}

pub struct SearchArgs {
    pub cap: Vec<usize>,
    pub field: Option<FieldChoice>,
    pub budget: Option<u64>,
}

fn enum_config(bq: &BoundQuiver, args: &SearchArgs) -> Result<EnumConfig, CliError> {
    check_cap(bq, &args.cap, "--cap")?;
    let mut cfg = EnumConfig::new(args.cap.clone());
    if let Some(b) = args.budget {
        cfg.budget = b;
    }
    Ok(cfg)
}

pub fn bricks(path: &Path, args: &SearchArgs) -> Result<Outcome, CliError> {
    let l = load(path)?;
    let field = field_for(args.field, &l.file, FieldChoice::Prime(2));
    dispatch!(field, bricks_in(&l, args))
}

fn bricks_in<F: Field>(l: &Loaded, args: &SearchArgs) -> Result<Outcome, CliError> {
    let list = enumerate_bricks::<F>(&l.bq, &enum_config(&l.bq, args)?)?;
    let dims: Vec<&[usize]> = list.bricks.iter().map(|b| b.dims()).collect();
    let results = json!({
        "count": list.bricks.len(),
        "exhaustive": list.exhaustive,
        "nodes_visited": list.nodes_visited,
        "dimension_vectors": dims,
    });
    let inputs = json!({ "file": l.path, "field": F::name(), "cap": args.cap });
    let mut report = Report::new("bricks", inputs, results)
        .line(format!("{} bricks below cap {:?} over {}", list.bricks.len(), args.cap, F::name()))
        .line(format!("exhaustive: {}", list.exhaustive));
    report.certificate = Some(certificate(&l.bq, &list)?);
    Ok(Outcome::ok(report))
}

pub fn fpdim(path: &Path, args: &SearchArgs, max_set: usize, tol: f64) -> Result<Outcome, CliError> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::Input(format!("--tol must lie in (0, 1), got {tol}")));
    }
    let l = load(path)?;
    let field = field_for(args.field, &l.file, FieldChoice::Prime(2));
    dispatch!(field, fpdim_for(&l.bq, &l.path, args, max_set, tol))
}

/// The `fpdim` report for an already built bound quiver; `source` is echoed
/// as the input file.
pub fn fpdim_for<F: Field>(
    bq: &BoundQuiver,
    source: &str,
    args: &SearchArgs,
    max_set: usize,
    tol: f64,
) -> Result<Outcome, CliError> {
    let alg = Algebra::<F>::new(bq)?;
    let list = enumerate_bricks::<F>(bq, &enum_config(bq, args)?)?;
    let (est, tables) = fpdim_search(&alg, &list, max_set, tol)?;
    let prediction = est.prediction.as_ref().map(|p| {
        let agrees = match (p.value, p.interval) {
            (Some(v), _) => (est.best - v).abs() <= 2.0 * tol,
            (None, Some((lo, hi))) => lo - tol <= est.best && est.best < hi,
            _ => true,
        };
        json!({ "value": p.value, "interval": p.interval, "rule": p.rule, "agrees": agrees })
    });
    let witness = est.witness.as_ref().map(|w| {
        json!({
            "members": w.members,
            "dimension_vectors": w.members.iter().map(|&i| list.bricks[i].dims()).collect::<Vec<_>>(),
            "adjacency": w.adjacency.rows(),
        })
    });
    let results = json!({
        "best": est.best,
        "method": est.method.as_str(),
        "witness": witness,
        "witness_check": est.witness_check,
        "sets_examined": est.sets_examined,
        "bricks": list.bricks.len(),
        "bricks_exhaustive": est.bricks_exhaustive,
        "prediction": prediction,
    });
    let inputs = json!({
        "file": source,
        "field": F::name(),
        "cap": args.cap,
        "max_set": max_set,
        "tol": tol,
    });
    let mut report = Report::new("fpdim", inputs, results).line(format!(
        "best rho = {:.12} ({}) over {} brick sets of size <= {max_set}",
        est.best,
        est.method.as_str(),
        est.sets_examined
    ));
    if let Some(w) = &est.witness {
        report = report.line(format!("witness adjacency {:?}", w.adjacency.rows()));
    }
    if let Some(p) = &est.prediction {
        report = report.line(format!("prediction ({}): {:?} {:?}", p.rule, p.value, p.interval));
    }
    let mut cert = certificate(bq, &list)?;
    cert.witness = est
        .witness
        .as_ref()
        .map(|w| witness_cert(&tables.hom, w, est.best, est.method.as_str()));
    cert.search = Some(SearchCert {
        max_size: max_set,
        tol,
        best: est.best,
        sets_examined: est.sets_examined,
    });
    report.certificate = Some(cert);
    Ok(Outcome::ok(report))
}

pub fn loopcheck(
    path: &Path,
    cap: Option<Vec<usize>>,
    module_cap: Option<Vec<usize>>,
    field: Option<FieldChoice>,
) -> Result<Outcome, CliError> {
    let l = load(path)?;
    let n = l.bq.vertex_count();
    let cap = cap.unwrap_or_else(|| vec![1; n]);
    let module_cap = module_cap.unwrap_or_else(|| vec![1; n]);
    check_cap(&l.bq, &cap, "--cap")?;
    check_cap(&l.bq, &module_cap, "--module-cap")?;
    let field = field_for(field, &l.file, FieldChoice::Prime(2));
    dispatch!(field, loopcheck_in(&l, &cap, &module_cap))
}

fn loopcheck_in<F: Field>(l: &Loaded, cap: &[usize], module_cap: &[usize]) -> Result<Outcome, CliError> {
    let r = loop_extension_report::<F>(&l.bq, cap, module_cap)?;
    let self_ext: Vec<_> = r
        .self_ext
        .iter()
        .map(|x| json!({ "vertex": x.vertex, "loops": x.loops, "ext": x.ext }))
        .collect();
    let results = json!({
        "passed": r.passed(),
        "bricks_with_loops": r.bricks_a,
        "bricks_without_loops": r.bricks_b,
        "bricks_exhaustive": r.bricks_exhaustive,
        "hom_pairs_compared": r.hom_pairs,
        "ext_pairs_compared": r.ext_pairs,
        "nonsimple_bricks": r.nonsimple_bricks,
        "modules_without_loops": r.modules_b,
        "self_ext": self_ext,
        "violations": r.violations,
    });
    let inputs = json!({ "file": l.path, "field": F::name(), "cap": cap, "module_cap": module_cap });
    let report = Report::new("loopcheck", inputs, results)
        .line(format!(
            "{} bricks with loops, {} without; {} Hom and {} Ext pairs compared",
            r.bricks_a, r.bricks_b, r.hom_pairs, r.ext_pairs
        ))
        .line(format!("violations: {}", r.violations.len()));
    Ok(Outcome::new(report, r.passed()))
}

pub fn formula_case2(nmax: u32) -> Result<Outcome, CliError> {
    let v: f64 = two_cycle_radius(nmax)?;
    let report = Report::new("formula", json!({ "case": "case2", "nmax": nmax }), json!({ "value": v }))
        .line(format!("{v:.12}"));
    Ok(Outcome::ok(report))
}

pub fn formula_case3(nmax: u32, s: u32) -> Result<Outcome, CliError> {
    let v: f64 = long_cycle_radius(nmax, s)?;
    let report = Report::new("formula", json!({ "case": "case3", "nmax": nmax, "s": s }), json!({ "value": v }))
        .line(format!("{v:.12}"));
    Ok(Outcome::ok(report))
}

/// `"0:1,2:2"` is `x (x - 2)^2`.
pub fn parse_factors(s: &str) -> Result<FactoredPoly<f64>, CliError> {
    let factors = s
        .split(',')
        .map(|f| {
            let (root, mult) = f
                .split_once(':')
                .ok_or_else(|| CliError::Input(format!("factor {f:?} is not ROOT:MULTIPLICITY")))?;
            let root: u32 = root
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad root {root:?}")))?;
            let mult: u32 = mult
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad multiplicity {mult:?}")))?;
            Ok((root as f64, mult))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(FactoredPoly::new(factors)?)
}

pub fn formula_root(factors: &str) -> Result<Outcome, CliError> {
    let f = parse_factors(factors)?;
    let v = level_one_root(&f);
    let report = Report::new(
        "formula",
        json!({ "case": "root", "factors": factors }),
        json!({ "value": v, "degree": f.degree() }),
    )
    .line(format!("largest root of f(x) - 1: {v:.12}"));
    Ok(Outcome::ok(report))
}

pub fn polyext(r: usize, lambda: &str, mu: &str, field: FieldChoice) -> Result<Outcome, CliError> {
    dispatch!(field, polyext_in(r, lambda, mu))
}

fn polyext_in<F: Field>(r: usize, lambda: &str, mu: &str) -> Result<Outcome, CliError> {
    let point = |s: &str, what: &str| -> Result<Vec<F>, CliError> {
        let v = s
            .split(',')
            .map(|x| F::parse_exact(x.trim()).ok_or_else(|| CliError::Input(format!("bad {what} entry {x:?}"))))
            .collect::<Result<Vec<F>, _>>()?;
        if v.len() != r {
            return Err(CliError::Input(format!("{what} has {} entries, expected r = {r}", v.len())));
        }
        Ok(v)
    };
    let (lam, m) = (point(lambda, "--lambda")?, point(mu, "--mu")?);
    let ext = poly_ext1(&lam, &m)?;
    let hom = poly_hom_dim(&lam, &m)?;
    let closed = if lam == m { r } else { 0 };
    let results = json!({ "ext1": ext, "hom": hom, "closed_form": closed, "agrees": ext == closed });
    let inputs = json!({ "r": r, "lambda": lambda, "mu": mu, "field": F::name() });
    let report = Report::new("polyext", inputs, results).line(format!("dim Ext1 = {ext}, dim Hom = {hom}"));
    Ok(Outcome::new(report, ext == closed))
}
