//! A bound quiver algebra over a concrete field: the bound quiver, its
//! residue path basis and its indecomposable projectives.

use crate::error::{Error, Result};
use crate::ext::{build_projective, Projective};
use crate::field::Field;
use crate::quiver::ideal::{find_nilpotency, PathBasis};
use crate::quiver::BoundQuiver;

/// Longest path length considered when searching for the nilpotency bound.
pub const DEFAULT_MAX_LEN: usize = 10;

#[derive(Debug, Clone)]
pub struct Algebra<F> {
    bq: BoundQuiver,
    basis: PathBasis<F>,
    projectives: Vec<Projective<F>>,
}

impl<F: Field> Algebra<F> {
    pub fn new(bq: &BoundQuiver) -> Result<Self> {
        Self::with_max_len(bq, DEFAULT_MAX_LEN)
    }

    pub fn with_max_len(bq: &BoundQuiver, max_len: usize) -> Result<Self> {
        let (report, ideal) = find_nilpotency::<F>(bq, max_len);
        let (Some(ideal), Some(l)) = (ideal, report.nilpotency) else {
            let witness = report
                .witness
                .map(|p| p.display(bq.quiver()).to_string())
                .unwrap_or_default();
            return Err(Error::NotAdmissible(format!(
                "path {witness} survives up to length {max_len}"
            )));
        };
        let basis = PathBasis::from_ideal(&ideal, l);
        let projectives = (0..bq.vertex_count())
            .map(|v| build_projective(bq, &basis, v))
            .collect();
        Ok(Algebra {
            bq: bq.clone(),
            basis,
            projectives,
        })
    }

    pub fn bound_quiver(&self) -> &BoundQuiver {
        &self.bq
    }

    pub fn path_basis(&self) -> &PathBasis<F> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn vertex_count(&self) -> usize {
        self.bq.vertex_count()
    }

    pub fn projective(&self, v: usize) -> Result<&Projective<F>> {
        self.projectives.get(v).ok_or(Error::UnknownVertex(v))
    }
}
