//! Verification suites behind `fpdim verify`. Each suite recomputes a family
//! of results at desk scale and reports pass or fail with a time budget.

use std::time::{Duration, Instant};

use fpdim_core::bricks::{
    brick_tables, check_tube_blocks, enumerate_bricks, enumerate_modules, fpdim_search, loop_extension_report,
    tube_witness, BrickSets, EnumConfig,
};
use fpdim_core::ext::{euler_form, ext1_cocycle_dim, ext1_dim, Presentation};
use fpdim_core::formulas::{
    level_one_root, poly_brick_check, poly_ext1, poly_report, two_cycle_radius, long_cycle_radius, FactoredPoly,
};
use fpdim_core::matrix::all_matrices;
use fpdim_core::quiver::builders::{cyclic_tube, dynkin, dynkin_oriented, zero_relation_square};
use fpdim_core::quiver::{loop_extend, DynkinType};
use fpdim_core::rep::hom_dim;
use fpdim_core::spectral::spectral_radius;
use fpdim_core::{Algebra, BoundQuiver, Field, Matrix, Rational, Representation, F101, F2, F3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::{fpdim_for, SearchArgs};
use crate::recheck::recheck;

pub const SUITES: [&str; 10] = [
    "loop-count",
    "zero-square",
    "tubes",
    "tube-witness",
    "root-order",
    "closed-forms",
    "loop-extension",
    "ext-oracle",
    "euler-form",
    "polynomial",
];

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub passed: bool,
    pub seconds: f64,
    pub limit_seconds: Option<f64>,
    pub limit_per_instance: bool,
    pub lines: Vec<String>,
    pub failures: Vec<String>,
}

#[derive(Default)]
struct Log {
    lines: Vec<String>,
    failures: Vec<String>,
    /// Longest single instance, for per-instance limits.
    slowest: Duration,
}

impl Log {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn timed<T>(&mut self, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.slowest = self.slowest.max(start.elapsed());
        out
    }
}

type Run = fn(&mut Log) -> fpdim_core::Result<()>;

/// `(run, time limit in seconds, whether the limit is per instance)`.
fn lookup(name: &str) -> Option<(Run, f64, bool)> {
    let s: (Run, f64, bool) = match name {
        "loop-count" => (loop_count, 30.0, true),
        "zero-square" => (zero_square, 300.0, false),
        "tubes" => (tubes, 120.0, false),
        "tube-witness" => (witnesses, 30.0, false),
        "root-order" => (root_order, 10.0, false),
        "closed-forms" => (closed_forms, 5.0, false),
        "loop-extension" => (loop_extension, 300.0, false),
        "ext-oracle" => (ext_oracle, f64::INFINITY, false),
        "euler-form" => (euler, f64::INFINITY, false),
        "polynomial" => (polynomial, 30.0, false),
        _ => return None,
    };
    Some(s)
}

pub fn run(name: &str) -> Option<SuiteOutcome> {
    let (f, limit, per_instance) = lookup(name)?;
    let mut log = Log::default();
    let start = Instant::now();
    if let Err(e) = f(&mut log) {
        log.failures.push(format!("error: {e}"));
    }
    let seconds = start.elapsed().as_secs_f64();
    let measured = if per_instance { log.slowest.as_secs_f64() } else { seconds };
    if measured > limit {
        log.failures
            .push(format!("took {measured:.1} s, limit {limit} s{}", if per_instance { " per instance" } else { "" }));
    }
    Some(SuiteOutcome {
        name: name.to_string(),
        passed: log.failures.is_empty(),
        seconds,
        limit_seconds: limit.is_finite().then_some(limit),
        limit_per_instance: per_instance,
        lines: log.lines,
        failures: log.failures,
    })
}

fn count_tuples(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=max).map(move |c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

/// Loop extensions of Dynkin quivers: the best brick set has radius equal to
/// the largest loop count.
fn loop_count(log: &mut Log) -> fpdim_core::Result<()> {
    let a2 = dynkin(DynkinType::A(2))?;
    let a3 = dynkin(DynkinType::A(3))?;
    let a3r = dynkin_oriented(DynkinType::A(3), &[1])?;
    let d4 = dynkin(DynkinType::D(4))?;
    let cases: [(&str, &BoundQuiver, usize); 4] = [("A2", &a2, 1), ("A3", &a3, 1), ("A3'", &a3r, 1), ("D4", &d4, 2)];
    for (label, base, c) in cases {
        let mut instances = 0;
        for counts in count_tuples(base.vertex_count(), 3) {
            let bq = loop_extend(base, &counts, 2)?;
            let cap = vec![c; bq.vertex_count()];
            let best = log.timed(|| -> fpdim_core::Result<(f64, bool)> {
                let alg = Algebra::<F2>::new(&bq)?;
                let list = enumerate_bricks::<F2>(&bq, &EnumConfig::new(cap))?;
                let (est, _) = fpdim_search(&alg, &list, list.bricks.len(), 1e-9)?;
                Ok((est.best, list.exhaustive))
            })?;
            let expected = *counts.iter().max().expect("nonempty") as f64;
            log.check(best.1, format!("{label} {counts:?}: brick list not exhaustive"));
            log.check(best.0 == expected, format!("{label} {counts:?}: best {} != {expected}", best.0));
            instances += 1;
        }
        log.line(format!("{label}: {instances} loop-count vectors over F2, cap {c} at every vertex"));
    }
    log.line(format!("slowest instance {:.2} s", log.slowest.as_secs_f64()));
    Ok(())
}

/// Square with one zero relation: loops at the vertex on the killed path
/// give `(N + √(N² + 4))/2`, realised by a two-brick set.
fn zero_square(log: &mut Log) -> fpdim_core::Result<()> {
    let square = zero_relation_square()?;
    let silver = 1.0 + 2f64.sqrt();
    for (counts, expected) in [(vec![0, 2, 0, 0], silver), (vec![3, 2, 0, 0], 3.0)] {
        let bq = loop_extend(&square, &counts, 2)?;
        let args = SearchArgs {
            cap: vec![2; 4],
            field: None,
            budget: None,
        };
        let out = match fpdim_for::<F2>(&bq, "zero-relation square", &args, 4, 1e-9) {
            Ok(o) => o,
            Err(e) => {
                log.check(false, format!("{counts:?}: {e}"));
                continue;
            }
        };
        let cert = out.report.certificate.expect("fpdim reports carry a certificate");
        let best = cert.search.as_ref().map_or(f64::NAN, |s| s.best);
        log.check(
            (best - expected).abs() < 1e-9,
            format!("{counts:?}: best {best}, expected {expected}"),
        );
        if counts[0] == 0 {
            let adj = cert.witness.as_ref().map(|w| w.adjacency.clone()).unwrap_or_default();
            let shape = adj == vec![vec![2, 1], vec![1, 0]] || adj == vec![vec![0, 1], vec![1, 2]];
            log.check(shape, format!("{counts:?}: witness adjacency {adj:?}"));
            if let Some(w) = &cert.witness {
                let dims: Vec<&[usize]> = w.members.iter().map(|&i| cert.bricks[i].dims.as_slice()).collect();
                log.line(format!("loops {counts:?}: witness {dims:?} with adjacency {adj:?}"));
            }
        }
        match recheck(&cert) {
            Ok(checks) => {
                for c in checks.iter().filter(|c| !c.passed) {
                    log.check(false, format!("{counts:?}: recheck {}: {}", c.name, c.detail));
                }
            }
            Err(e) => log.check(false, format!("{counts:?}: recheck: {e}")),
        }
        log.line(format!("loops {counts:?}: best {best:.12} over {} bricks", cert.bricks.len()));
    }
    Ok(())
}

/// Nilpotent cyclic quivers: every brick set has permutation blocks and
/// radius 1, realised by the simples.
fn tubes(log: &mut Log) -> fpdim_core::Result<()> {
    for n in 2..=4 {
        for l in 2..=4 {
            let bq = cyclic_tube(n, l)?;
            let alg = Algebra::<F2>::new(&bq)?;
            let list = enumerate_bricks::<F2>(&bq, &EnumConfig::new(vec![1; n]))?;
            let tables = brick_tables(&alg, &list)?;
            let mut sets = 0;
            for set in BrickSets::new(&tables, list.bricks.len()) {
                if let Err(e) = check_tube_blocks(&set.adjacency) {
                    log.check(false, format!("tube({n}, {l}) set {:?}: {e}", set.members));
                }
                sets += 1;
            }
            let (est, _) = fpdim_search(&alg, &list, list.bricks.len(), 1e-12)?;
            log.check((est.best - 1.0).abs() < 1e-12, format!("tube({n}, {l}): best {}", est.best));
            let simples: Vec<usize> = (0..list.bricks.len()).filter(|&i| list.bricks[i].total_dim() == 1).collect();
            let rho = spectral_radius::<f64>(&tables.adjacency(&simples), 1e-12)?.value;
            log.check(
                simples.len() == n && (rho - 1.0).abs() < 1e-12,
                format!("tube({n}, {l}): simples give {rho}"),
            );
            log.line(format!("tube({n}, {l}): {} bricks, {sets} brick sets, best {}", list.bricks.len(), est.best));
        }
    }
    Ok(())
}

/// For every ordered pair of simples without extensions in the rank-3 tube
/// of nilpotency 4, a brick orthogonal to both with one extension each way.
fn witnesses(log: &mut Log) -> fpdim_core::Result<()> {
    let bq = cyclic_tube(3, 4)?;
    let alg = Algebra::<F2>::new(&bq)?;
    let simples: Vec<Representation<F2>> = (0..3).map(|v| Representation::simple(&bq, v)).collect::<Result<_, _>>()?;
    let mut pairs = 0;
    for a in 0..3 {
        for b in 0..3 {
            if a == b || ext1_dim(&alg, &simples[a], &simples[b])? != 0 {
                continue;
            }
            let m = tube_witness::<F2>(&bq, a, b)?;
            let ok = ext1_dim(&alg, &simples[a], &m)? == 1
                && ext1_dim(&alg, &m, &simples[b])? == 1
                && [&simples[a], &simples[b]]
                    .iter()
                    .try_fold(true, |acc, s| -> fpdim_core::Result<bool> {
                        Ok(acc && hom_dim(&bq, s, &m)? == 0 && hom_dim(&bq, &m, s)? == 0)
                    })?;
            log.check(ok, format!("(S{}, S{}): witness {:?} fails", a + 1, b + 1, m.dims()));
            log.line(format!("(S{}, S{}): witness with dimension vector {:?}", a + 1, b + 1, m.dims()));
            pairs += 1;
        }
    }
    log.check(pairs > 0, "no pair of simples without extensions");
    Ok(())
}

fn rho(factors: &[(f64, u32)]) -> fpdim_core::Result<f64> {
    Ok(level_one_root(&FactoredPoly::new(factors.to_vec())?))
}

fn random_factored(rng: &mut ChaCha8Rng) -> fpdim_core::Result<FactoredPoly<f64>> {
    let top = rng.gen_range(1..7u32);
    let mut factors = Vec::new();
    for n in 0..top {
        if rng.gen_bool(0.5) {
            factors.push((n as f64, rng.gen_range(1..4u32)));
        }
    }
    factors.push((top as f64, rng.gen_range(1..4)));
    FactoredPoly::new(factors)
}

/// Largest roots of `f(x) - 1` for `f` a product of linear factors: known
/// values, the ordering examples, and random instances of the two monotonicity
/// rules.
fn root_order(log: &mut Log) -> fpdim_core::Result<()> {
    let silver = rho(&[(0.0, 1), (2.0, 1)])?;
    log.check((silver - (1.0 + 2f64.sqrt())).abs() < 1e-10, format!("x(x-2): {silver}"));
    let (f1, f, f2) = (
        rho(&[(0.0, 1), (1.0, 1), (2.0, 1)])?,
        silver,
        rho(&[(0.0, 1), (2.0, 2)])?,
    );
    log.check(f1 < f && f < f2, format!("x(x-1)(x-2) < x(x-2) < x(x-2)^2 fails: {f1}, {f}, {f2}"));
    let mixed = rho(&[(0.0, 1), (1.0, 1), (2.0, 2)])?;
    log.check(mixed > f, format!("(x-2)^2(x-1)x: {mixed} <= {f}"));
    let (g, h) = (rho(&[(0.0, 1), (1.0, 2), (3.0, 2)])?, rho(&[(0.0, 1), (3.0, 1)])?);
    log.check(g < h, format!("(x-3)^2(x-1)^2x: {g} >= {h}"));
    log.line(format!("x(x-1)(x-2): {f1:.10}  x(x-2): {f:.10}  x(x-2)^2: {f2:.10}"));
    log.line(format!("(x-2)^2(x-1)x: {mixed:.10}  (x-3)^2(x-1)^2x: {g:.10}  (x-3)x: {h:.10}"));

    let rng = &mut ChaCha8Rng::seed_from_u64(61);
    let (mut lower, mut raise) = (0, 0);
    while lower + raise < 200 {
        let f = random_factored(rng)?;
        let top = f.largest_root();
        let base = level_one_root(&f);
        if rng.gen_bool(0.5) && top >= 1.0 {
            let m = rng.gen_range(0..top as u32) as f64;
            let r = level_one_root(&f.times_linear(m)?);
            log.check(r < base, format!("extra factor x-{m} on {:?}: {r} >= {base}", f.factors()));
            lower += 1;
        } else {
            let r = level_one_root(&f.times_linear(top)?);
            let ok = if f.factors().len() > 1 { r > base } else { (r - base).abs() < 1e-10 };
            log.check(ok, format!("repeated top factor on {:?}: {r} vs {base}", f.factors()));
            raise += 1;
        }
    }
    log.line(format!("{lower} random smaller-factor instances, {raise} repeated-top-factor instances"));
    Ok(())
}

/// Closed forms for canonical loop extensions lie in `[n, n + 1)`, agree at
/// `s = 1`, and grow with `s`.
fn closed_forms(log: &mut Log) -> fpdim_core::Result<()> {
    for n in 1..=6u32 {
        let c2: f64 = two_cycle_radius(n)?;
        let nf = n as f64;
        log.check(nf <= c2 && c2 < nf + 1.0, format!("case2({n}) = {c2}"));
        let mut last = f64::NEG_INFINITY;
        for s in 1..=4 {
            let c3: f64 = long_cycle_radius(n, s)?;
            log.check(nf <= c3 && c3 < nf + 1.0, format!("case3({n}, {s}) = {c3}"));
            log.check(c3 > last, format!("case3({n}, {s}) = {c3} not above {last}"));
            last = c3;
        }
        let c31: f64 = long_cycle_radius(n, 1)?;
        log.check((c31 - c2).abs() < 1e-10, format!("case3({n}, 1) = {c31} but case2({n}) = {c2}"));
        log.line(format!("n = {n}: case2 {c2:.10}, case3 s=4 {last:.10}"));
    }
    Ok(())
}

/// Bricks, Hom and Ext of loop extensions against the loop-free algebra.
fn loop_extension(log: &mut Log) -> fpdim_core::Result<()> {
    let a2 = dynkin(DynkinType::A(2))?;
    let d4 = dynkin(DynkinType::D(4))?;
    let cases: Vec<(&str, &BoundQuiver, Vec<usize>, Vec<usize>, Vec<usize>)> = vec![
        ("A2", &a2, vec![1, 2], vec![2, 2], vec![2, 2]),
        ("A2", &a2, vec![3, 0], vec![2, 2], vec![2, 2]),
        ("A2", &a2, vec![0, 3], vec![2, 2], vec![2, 2]),
        ("A2", &a2, vec![2, 2], vec![2, 2], vec![2, 2]),
        ("D4", &d4, vec![0, 2, 0, 0], vec![1, 2, 1, 1], vec![1, 1, 1, 1]),
        ("D4", &d4, vec![1, 0, 2, 3], vec![1, 2, 1, 1], vec![1, 1, 1, 1]),
        ("D4", &d4, vec![1, 1, 1, 1], vec![1, 2, 1, 1], vec![1, 1, 1, 1]),
    ];
    for (label, base, counts, cap, mcap) in cases {
        let bq = loop_extend(base, &counts, 2)?;
        let r = loop_extension_report::<F2>(&bq, &cap, &mcap)?;
        for v in &r.violations {
            log.check(false, format!("{label} {counts:?}: {v}"));
        }
        log.check(r.bricks_exhaustive, format!("{label} {counts:?}: brick lists not exhaustive"));
        let selfext: Vec<usize> = r.self_ext.iter().map(|x| x.ext).collect();
        log.check(selfext == counts, format!("{label} {counts:?}: Ext(S, S) = {selfext:?}"));
        log.line(format!(
            "{label} {counts:?}: {} bricks, {} Hom pairs, {} Ext pairs, {} violations",
            r.bricks_a,
            r.hom_pairs,
            r.ext_pairs,
            r.violations.len()
        ));
    }
    Ok(())
}

fn oracle_pairs<F: Field>(log: &mut Log, label: &str, bq: &BoundQuiver, cap: Vec<usize>) -> fpdim_core::Result<usize> {
    let alg = Algebra::<F>::new(bq)?;
    let list = enumerate_modules::<F>(bq, &EnumConfig::new(cap.clone()))?;
    let mut bad = 0;
    for m in &list.modules {
        let p = Presentation::new(&alg, m)?;
        for n in &list.modules {
            if p.ext1_dim(&alg, n)? != ext1_cocycle_dim(bq, m, n)? {
                bad += 1;
            }
        }
    }
    let pairs = list.modules.len().pow(2);
    log.check(bad == 0, format!("{label}: {bad} of {pairs} pairs disagree"));
    log.line(format!("{label} over {} cap {cap:?}: {pairs} pairs, {bad} mismatches", F::name()));
    Ok(pairs)
}

/// The projective-presentation and cocycle computations of `Ext¹` agree.
fn ext_oracle(log: &mut Log) -> fpdim_core::Result<()> {
    let a2 = dynkin(DynkinType::A(2))?;
    let mut total = 0;
    total += oracle_pairs::<F2>(log, "A3", &dynkin(DynkinType::A(3))?, vec![1, 2, 1])?;
    total += oracle_pairs::<F2>(log, "tube(3, 2)", &cyclic_tube(3, 2)?, vec![2, 1, 1])?;
    total += oracle_pairs::<F3>(log, "tube(2, 3)", &cyclic_tube(2, 3)?, vec![2, 1])?;
    total += oracle_pairs::<F2>(log, "zero-relation square", &zero_relation_square()?, vec![1, 2, 1, 1])?;
    total += oracle_pairs::<F2>(log, "A2 with loops (1, 1)", &loop_extend(&a2, &[1, 1], 2)?, vec![2, 2])?;
    total += oracle_pairs::<F2>(
        log,
        "square with loops (0, 1, 0, 0)",
        &loop_extend(&zero_relation_square()?, &[0, 1, 0, 0], 2)?,
        vec![1, 1, 1, 1],
    )?;
    log.check(total >= 500, format!("only {total} pairs"));
    log.line(format!("{total} pairs in total"));
    Ok(())
}

fn random_rep<F: Field>(bq: &BoundQuiver, rng: &mut ChaCha8Rng, max_dim: usize) -> fpdim_core::Result<Representation<F>> {
    let dims: Vec<usize> = (0..bq.vertex_count()).map(|_| rng.gen_range(0..=max_dim)).collect();
    let maps = bq
        .quiver()
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (dims[a.target], dims[a.source]);
            Matrix::new(r, c, (0..r * c).map(|_| F::sample(rng, 3)).collect())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Representation::new(bq, dims, maps)
}

/// `dim Hom - dim Ext¹` is the Euler form of the dimension vectors on
/// quivers without relations.
fn euler(log: &mut Log) -> fpdim_core::Result<()> {
    let rng = &mut ChaCha8Rng::seed_from_u64(2024);
    for (label, bq) in [("A3", dynkin(DynkinType::A(3))?), ("D4", dynkin(DynkinType::D(4))?)] {
        let alg = Algebra::<F101>::new(&bq)?;
        let mut nonzero_ext = 0;
        for _ in 0..50 {
            let m = random_rep::<F101>(&bq, rng, 3)?;
            let n = random_rep::<F101>(&bq, rng, 3)?;
            let ext = ext1_dim(&alg, &m, &n)?;
            nonzero_ext += usize::from(ext > 0);
            let lhs = hom_dim(&bq, &m, &n)? as i64 - ext as i64;
            let rhs = euler_form(&bq, m.dims(), n.dims())?;
            log.check(lhs == rhs, format!("{label} {:?} {:?}: {lhs} != {rhs}", m.dims(), n.dims()));
        }
        log.line(format!("{label}: 50 random pairs over F101, {nonzero_ext} with nonzero Ext"));
    }
    Ok(())
}

fn poly_pairs<F: Field>(log: &mut Log, rng: &mut ChaCha8Rng) -> fpdim_core::Result<()> {
    for r in 1..=3 {
        let mut equal = 0;
        for _ in 0..100 {
            let lam: Vec<F> = (0..r).map(|_| F::sample(rng, 3)).collect();
            let mu: Vec<F> = if rng.gen_bool(0.5) {
                lam.clone()
            } else {
                (0..r).map(|_| F::sample(rng, 3)).collect()
            };
            let closed = if lam == mu { r } else { 0 };
            equal += usize::from(lam == mu);
            let e = poly_ext1(&lam, &mu)?;
            log.check(e == closed, format!("r = {r}, {lam:?} {mu:?}: Ext {e}, expected {closed}"));
        }
        log.line(format!("r = {r}: 100 random pairs over {}, {equal} equal", F::name()));
    }
    Ok(())
}

/// Polynomial rings: the Ext closed form on random points, the brick test on
/// every commuting tuple of size at most 2 over F2, and the resulting
/// Frobenius-Perron dimension.
fn polynomial(log: &mut Log) -> fpdim_core::Result<()> {
    let rng = &mut ChaCha8Rng::seed_from_u64(7);
    poly_pairs::<Rational>(log, rng)?;
    poly_pairs::<F101>(log, rng)?;
    for r in 1..=3usize {
        let (mut tuples, mut bricks) = (0, 0);
        for d in 1..=2 {
            let mats = all_matrices::<F2>(d, d)?;
            let mut idx = vec![0usize; r];
            'outer: loop {
                let tuple: Vec<Matrix<F2>> = idx.iter().map(|&i| mats[i].clone()).collect();
                let commuting = tuple.iter().all(|a| tuple.iter().all(|b| a.mul(b) == b.mul(a)));
                if commuting {
                    let c = poly_brick_check(&tuple)?;
                    tuples += 1;
                    bricks += usize::from(c.is_brick);
                    log.check(c.is_brick == (d == 1), format!("r = {r}, dim {d}: brick test {} on {tuple:?}", c.is_brick));
                }
                for k in 0..r {
                    idx[k] += 1;
                    if idx[k] < mats.len() {
                        continue 'outer;
                    }
                    idx[k] = 0;
                }
                break;
            }
        }
        log.line(format!("r = {r}: {tuples} commuting tuples of dimension <= 2 over F2, {bricks} bricks"));
        for rep in [poly_report::<F2>(r)?, poly_report::<F3>(r)?] {
            let ok = rep.fpdim == r as f64
                && rep.max_cross_ext == 0
                && rep.hom_between_distinct == 0
                && rep.self_ext == (r, r);
            log.check(ok, format!("r = {r} over {}: {rep:?}", rep.field));
            log.line(format!("r = {r} over {}: {} bricks, fpdim {}", rep.field, rep.bricks, rep.fpdim));
        }
    }
    Ok(())
}
