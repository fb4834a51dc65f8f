//! Descending filtrations of a finite-dimensional space and their duals.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix, Subspace, Vector};

/// `spaces[i]` is `φ^{start+i}`. Below `start` the filtration is the whole
/// space, above the last index it is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub dim: usize,
    pub start: i64,
    pub spaces: Vec<Subspace>,
}

impl Filtration {
    /// Checks that the filtration is saturated (starts at the whole space,
    /// ends nonzero) and fine (strictly descending).
    pub fn new(dim: usize, start: i64, spaces: Vec<Subspace>) -> Result<Filtration> {
        if spaces.is_empty() {
            return Err(Error::InvalidFiltration("no subspaces".into()));
        }
        if spaces.iter().any(|s| s.ambient_dim() != dim) {
            return Err(Error::InvalidFiltration("ambient dimension mismatch".into()));
        }
        if spaces[0].dim() != dim {
            return Err(Error::InvalidFiltration("first space is not the whole space".into()));
        }
        if spaces.last().unwrap().dim() == 0 {
            return Err(Error::InvalidFiltration("last space is zero".into()));
        }
        for w in spaces.windows(2) {
            if !w[0].contains_space(&w[1]) {
                return Err(Error::InvalidFiltration("not descending".into()));
            }
            if w[0].dim() == w[1].dim() {
                return Err(Error::InvalidFiltration("not strictly descending".into()));
            }
        }
        Ok(Filtration { dim, start, spaces })
    }

    /// Coordinate flag with the given type, e.g. `[4, 3, 1]`: `φ^{start+i}`
    /// spanned by the last `ty[i]` basis vectors.
    pub fn standard(ty: &[usize], start: i64) -> Result<Filtration> {
        let dim = *ty.first().ok_or_else(|| Error::InvalidFiltration("empty type".into()))?;
        let spaces = ty
            .iter()
            .map(|&d| {
                let vs: Vec<Vector> = (dim - d.min(dim)..dim)
                    .map(|i| {
                        let mut v = vec![crate::rational::Rat::ZERO; dim];
                        v[i] = crate::rational::Rat::ONE;
                        v
                    })
                    .collect();
                Subspace::span(dim, &vs)
            })
            .collect();
        Filtration::new(dim, start, spaces)
    }

    pub fn end(&self) -> i64 {
        self.start + self.spaces.len() as i64 - 1
    }

    /// `φ^p` for any integer `p`.
    pub fn at(&self, p: i64) -> Subspace {
        if p < self.start {
            Subspace::full(self.dim)
        } else if p > self.end() {
            Subspace::zero(self.dim)
        } else {
            self.spaces[(p - self.start) as usize].clone()
        }
    }

    pub fn type_dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    /// Representatives of `gr_p = φ^p / φ^{p+1}`.
    pub fn graded_piece(&self, p: i64) -> Vec<Vector> {
        self.at(p + 1).complement_in(&self.at(p))
    }
}

/// Annihilator of a subspace, in dual coordinates.
fn annihilator(s: &Subspace) -> Subspace {
    let n = s.ambient_dim();
    if s.dim() == 0 {
        return Subspace::full(n);
    }
    let m = Matrix::from_rows(n, s.basis());
    Subspace::span(n, &m.kernel())
}

/// `φ*^p = (φ^{1-p})^⊥` in the dual basis.
pub fn dualize_filtration(phi: &Filtration) -> Result<Filtration> {
    let len = phi.spaces.len() as i64;
    let start = 1 - phi.start - len;
    let spaces = (start..start + len).map(|p| annihilator(&phi.at(1 - p))).collect();
    Filtration::new(phi.dim, start, spaces)
}

/// Matrices of the evaluation pairing `gr_p φ × gr_q φ*` on chosen
/// representatives, for every pair of nonzero pieces.
pub fn graded_pairing(phi: &Filtration, dual: &Filtration) -> BTreeMap<(i64, i64), Matrix> {
    let mut out = BTreeMap::new();
    for p in phi.start..=phi.end() {
        let a = phi.graded_piece(p);
        for q in dual.start..=dual.end() {
            let b = dual.graded_piece(q);
            let m = Matrix::from_fn(a.len(), b.len(), |i, j| dot(&a[i], &b[j]));
            out.insert((p, q), m);
        }
    }
    out
}

/// The pairing is well defined and nondegenerate on `p + q = 0` and
/// vanishes for `p + q ≥ 1`.
pub fn check_graded_pairing(phi: &Filtration, dual: &Filtration) -> bool {
    graded_pairing(phi, dual).iter().all(|(&(p, q), m)| {
        if p + q >= 1 {
            m.is_zero()
        } else if p + q == 0 {
            m.rows() == m.cols() && m.rank() == m.rows()
        } else {
            true
        }
    })
}
