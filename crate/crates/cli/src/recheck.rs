//! Recomputes the numbers in a report from its certificate alone.

use std::fs;
use std::path::Path;

use fpdim_core::bricks::{fpdim_search, BrickList};
use fpdim_core::ext::ext1_dim;
use fpdim_core::rep::{are_isomorphic, hom_dim, is_brick, is_valid, IsoConfig};
use fpdim_core::spectral::{characteristic_polynomial, largest_real_root, spectral_radius, NonnegIntMatrix};
use fpdim_core::{Algebra, Field, Rational, Representation, F101, F11, F13, F2, F3, F5, F7};
use serde::Serialize;
use serde_json::json;

use crate::commands::{dispatch, Outcome};
use crate::dsl::{self, FieldChoice};
use crate::error::CliError;
use crate::report::{read_brick, Certificate, Report};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

pub fn recheck_file(path: &Path) -> Result<Outcome, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let report = Report::from_json(&text)?;
    let cert = report
        .certificate
        .as_ref()
        .ok_or_else(|| CliError::Input(format!("{} has no certificate", path.display())))?;
    let checks = recheck(cert)?;
    let passed = checks.iter().all(|c| c.passed);
    let mut out = Report::new(
        "recheck",
        json!({ "report": path.display().to_string(), "command": report.command }),
        json!({ "passed": passed, "checks": checks }),
    );
    out.summary = checks
        .iter()
        .map(|c| format!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail))
        .collect();
    Ok(Outcome::new(out, passed))
}

/// Every check a certificate supports; an error means it could not be read
/// at all.
pub fn recheck(cert: &Certificate) -> Result<Vec<Check>, CliError> {
    let field = FieldChoice::parse(&cert.field).map_err(CliError::Input)?;
    dispatch!(field, recheck_in(cert))
}

fn recheck_in<F: Field>(cert: &Certificate) -> Result<Vec<Check>, CliError> {
    let file = dsl::parse(&cert.quiver).map_err(|source| CliError::Parse {
        path: "certificate".into(),
        source,
    })?;
    let bq = file.bound_quiver()?;
    let alg = Algebra::<F>::new(&bq)?;
    let mut checks = Vec::new();

    let mut bricks: Vec<Representation<F>> = Vec::new();
    let mut bad = Vec::new();
    for (i, b) in cert.bricks.iter().enumerate() {
        match read_brick::<F>(&bq, b) {
            Ok(m) if is_valid(&bq, &m) && is_brick(&bq, &m)? => bricks.push(m),
            Ok(m) => {
                bad.push(i);
                bricks.push(m);
            }
            Err(e) => return Err(CliError::Verification(format!("brick {i}: {e}"))),
        }
    }
    checks.push(check(
        "bricks",
        bad.is_empty(),
        format!("{} listed, not valid bricks: {bad:?}", bricks.len()),
    ));

    let iso = IsoConfig::default();
    let mut duplicates = Vec::new();
    for i in 0..bricks.len() {
        for j in i + 1..bricks.len() {
            if bricks[i].dims() == bricks[j].dims() && are_isomorphic(&bq, &bricks[i], &bricks[j], &iso)? {
                duplicates.push((i, j));
            }
        }
    }
    checks.push(check(
        "pairwise non-isomorphic",
        duplicates.is_empty(),
        format!("isomorphic pairs: {duplicates:?}"),
    ));

    if let Some(w) = &cert.witness {
        if let Some(&i) = w.members.iter().find(|&&i| i >= bricks.len()) {
            return Err(CliError::Verification(format!("witness refers to brick {i}")));
        }
        let k = w.members.len();
        let mut hom = vec![vec![0; k]; k];
        let mut adj = NonnegIntMatrix::zeros(k);
        for (a, &i) in w.members.iter().enumerate() {
            for (b, &j) in w.members.iter().enumerate() {
                hom[a][b] = hom_dim(&bq, &bricks[i], &bricks[j])?;
                adj.set(a, b, ext1_dim(&alg, &bricks[i], &bricks[j])? as u64);
            }
        }
        let orthogonal = (0..k).all(|a| (0..k).all(|b| hom[a][b] == usize::from(a == b)));
        checks.push(check(
            "hom-orthogonality",
            orthogonal && hom == w.hom,
            format!("recomputed Hom {hom:?}"),
        ));
        checks.push(check(
            "ext adjacency",
            adj.rows() == w.adjacency,
            format!("recomputed {:?}", adj.rows()),
        ));
        let tol = cert.search.as_ref().map_or(1e-9, |s| s.tol);
        let rho = spectral_radius::<f64>(&adj, tol)?.value;
        let root = largest_real_root(&characteristic_polynomial(&adj), tol / 4.0);
        let close = (rho - w.rho).abs() <= 2.0 * tol && (root - w.rho).abs() <= 2.0 * tol;
        checks.push(check(
            "spectral radius",
            close,
            format!("iteration {rho}, characteristic polynomial {root}, claimed {}", w.rho),
        ));
    }

    if let Some(s) = &cert.search {
        let list = BrickList {
            cap: cert.cap.clone(),
            field: F::name(),
            bricks,
            exhaustive: cert.bricks_exhaustive,
            nodes_visited: 0,
        };
        let (est, _) = fpdim_search(&alg, &list, s.max_size, s.tol)?;
        let members = est.witness.as_ref().map(|w| w.members.clone());
        let same = (est.best - s.best).abs() <= 2.0 * s.tol
            && est.sets_examined == s.sets_examined
            && members == cert.witness.as_ref().map(|w| w.members.clone());
        checks.push(check(
            "search",
            same,
            format!(
                "best {} over {} sets, witness {members:?}",
                est.best, est.sets_examined
            ),
        ));
    }
    Ok(checks)
}
