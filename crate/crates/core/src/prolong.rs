//! Graded subspaces of `gl(V)`: relative prolongations, centralizers and
//! trace-orthogonal complements.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::rational::Rat;

/// The grading of `gl(V)` induced by degrees on a basis of `V`:
/// `deg E_rs = deg v_r − deg v_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlGrading {
    n: usize,
    vdeg: Vec<Rat>,
    blocks: BTreeMap<Rat, Vec<(usize, usize)>>,
}

impl GlGrading {
    pub fn new(vdeg: &[Rat]) -> GlGrading {
        let n = vdeg.len();
        let mut blocks: BTreeMap<Rat, Vec<(usize, usize)>> = BTreeMap::new();
        for r in 0..n {
            for s in 0..n {
                blocks
                    .entry(&vdeg[r] - &vdeg[s])
                    .or_default()
                    .push((r, s));
            }
        }
        GlGrading {
            n,
            vdeg: vdeg.to_vec(),
            blocks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vdeg(&self) -> &[Rat] {
        &self.vdeg
    }

    pub fn degrees(&self) -> Vec<Rat> {
        self.blocks.keys().cloned().collect()
    }

    pub fn block(&self, d: &Rat) -> &[(usize, usize)] {
        self.blocks.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn block_dim(&self, d: &Rat) -> usize {
        self.block(d).len()
    }

    pub fn to_block(&self, d: &Rat, m: &Matrix) -> Vector {
        self.block(d).iter().map(|&(r, s)| m[(r, s)].clone()).collect()
    }

    pub fn from_block(&self, d: &Rat, v: &[Rat]) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (x, &(r, s)) in v.iter().zip(self.block(d)) {
            m[(r, s)] = x.clone();
        }
        m
    }

    /// Degree of a nonzero homogeneous matrix; `None` if zero or mixed.
    pub fn degree_of(&self, m: &Matrix) -> Option<Rat> {
        let mut deg: Option<Rat> = None;
        for r in 0..self.n {
            for s in 0..self.n {
                if m[(r, s)].is_zero() {
                    continue;
                }
                let d = &self.vdeg[r] - &self.vdeg[s];
                match &deg {
                    None => deg = Some(d),
                    Some(e) if *e == d => {}
                    Some(_) => return None,
                }
            }
        }
        deg
    }

    /// Splits a matrix into its homogeneous components.
    pub fn components(&self, m: &Matrix) -> BTreeMap<Rat, Vector> {
        let mut out = BTreeMap::new();
        for d in self.blocks.keys() {
            let v = self.to_block(d, m);
            if v.iter().any(|x| !x.is_zero()) {
                out.insert(d.clone(), v);
            }
        }
        out
    }
}

/// A graded subspace of `gl(V)`, stored per degree in block coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    grading: GlGrading,
    comps: BTreeMap<Rat, Subspace>,
}

impl GradedSubspace {
    pub fn zero(grading: &GlGrading) -> GradedSubspace {
        GradedSubspace {
            grading: grading.clone(),
            comps: BTreeMap::new(),
        }
    }

    /// All of `gl(V)`.
    pub fn gl(grading: &GlGrading) -> GradedSubspace {
        let comps = grading
            .blocks
            .iter()
            .map(|(d, b)| (d.clone(), Subspace::full(b.len())))
            .collect();
        GradedSubspace {
            grading: grading.clone(),
            comps,
        }
    }

    /// `o(V, κ) = {A : Aᵀκ + κA = 0}`, assuming `κ` is homogeneous so the
    /// condition splits by degree.
    pub fn orthogonal(grading: &GlGrading, kappa: &Matrix) -> GradedSubspace {
        let mut comps = BTreeMap::new();
        for d in grading.degrees() {
            let b = grading.block(&d);
            // Columns: image of each block basis element under A ↦ Aᵀκ + κA.
            let cols: Vec<Vector> = b
                .iter()
                .map(|&(r, s)| {
                    let mut e = Matrix::zeros(grading.n, grading.n);
                    e[(r, s)] = Rat::ONE;
                    e.transpose().mul(kappa).add(&kappa.mul(&e)).flatten()
                })
                .collect();
            let m = Matrix::from_cols(grading.n * grading.n, &cols);
            let ker = m.kernel();
            if !ker.is_empty() {
                comps.insert(d.clone(), Subspace::span(b.len(), &ker));
            }
        }
        GradedSubspace {
            grading: grading.clone(),
            comps,
        }
    }

    /// Span of homogeneous matrices.
    pub fn span(grading: &GlGrading, mats: &[Matrix]) -> Result<GradedSubspace> {
        let mut by_deg: BTreeMap<Rat, Vec<Vector>> = BTreeMap::new();
        for m in mats {
            if m.is_zero() {
                continue;
            }
            let d = grading
                .degree_of(m)
                .ok_or_else(|| Error::NotGraded("matrix is not homogeneous".into()))?;
            let v = grading.to_block(&d, m);
            by_deg.entry(d).or_default().push(v);
        }
        let comps = by_deg
            .into_iter()
            .map(|(d, vs)| {
                let s = Subspace::span(grading.block_dim(&d), &vs);
                (d, s)
            })
            .filter(|(_, s)| s.dim() > 0)
            .collect();
        Ok(GradedSubspace {
            grading: grading.clone(),
            comps,
        })
    }

    /// Span of arbitrary matrices, split into homogeneous components.
    pub fn span_components(grading: &GlGrading, mats: &[Matrix]) -> GradedSubspace {
        let parts: Vec<Matrix> = mats
            .iter()
            .flat_map(|m| {
                grading
                    .components(m)
                    .into_iter()
                    .map(|(d, v)| grading.from_block(&d, &v))
                    .collect::<Vec<_>>()
            })
            .collect();
        GradedSubspace::span(grading, &parts).expect("components are homogeneous")
    }

    pub fn grading(&self) -> &GlGrading {
        &self.grading
    }

    pub fn dim(&self) -> usize {
        self.comps.values().map(Subspace::dim).sum()
    }

    pub fn dim_of(&self, d: &Rat) -> usize {
        self.comps.get(d).map_or(0, Subspace::dim)
    }

    pub fn component(&self, d: &Rat) -> Option<&Subspace> {
        self.comps.get(d)
    }

    /// Degrees with nonzero components, ascending.
    pub fn degrees(&self) -> Vec<Rat> {
        self.comps
            .iter()
            .filter(|(_, s)| s.dim() > 0)
            .map(|(d, _)| d.clone())
            .collect()
    }

    /// `(degree, dimension)` for nonzero components.
    pub fn degree_dims(&self) -> Vec<(Rat, usize)> {
        self.degrees()
            .into_iter()
            .map(|d| {
                let k = self.dim_of(&d);
                (d, k)
            })
            .collect()
    }

    /// Basis matrices of degree `d`.
    pub fn basis_of(&self, d: &Rat) -> Vec<Matrix> {
        self.comps.get(d).map_or(Vec::new(), |s| {
            s.basis()
                .iter()
                .map(|v| self.grading.from_block(d, v))
                .collect()
        })
    }

    /// All basis matrices with their degrees, ascending by degree.
    pub fn basis(&self) -> Vec<(Rat, Matrix)> {
        self.degrees()
            .into_iter()
            .flat_map(|d| {
                self.basis_of(&d)
                    .into_iter()
                    .map(move |m| (d.clone(), m))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.grading.components(m).iter().all(|(d, v)| {
            self.comps.get(d).is_some_and(|s| s.contains(v))
        })
    }

    /// Restriction to negative degrees.
    pub fn negative_part(&self) -> GradedSubspace {
        GradedSubspace {
            grading: self.grading.clone(),
            comps: self
                .comps
                .iter()
                .filter(|(d, _)| d.is_negative())
                .map(|(d, s)| (d.clone(), s.clone()))
                .collect(),
        }
    }

    fn combine(&self, other: &GradedSubspace, f: impl Fn(&Subspace, &Subspace) -> Subspace) -> GradedSubspace {
        let mut comps = BTreeMap::new();
        for d in self.grading.degrees() {
            let k = self.grading.block_dim(&d);
            let a = self.comps.get(&d).cloned().unwrap_or_else(|| Subspace::zero(k));
            let b = other.comps.get(&d).cloned().unwrap_or_else(|| Subspace::zero(k));
            let c = f(&a, &b);
            if c.dim() > 0 {
                comps.insert(d, c);
            }
        }
        GradedSubspace {
            grading: self.grading.clone(),
            comps,
        }
    }

    pub fn sum(&self, other: &GradedSubspace) -> GradedSubspace {
        self.combine(other, Subspace::sum)
    }

    pub fn intersect(&self, other: &GradedSubspace) -> GradedSubspace {
        self.combine(other, Subspace::intersect)
    }

    /// `[self, other] ⊆ target` on basis pairs.
    pub fn brackets_into(&self, other: &GradedSubspace, target: &GradedSubspace) -> bool {
        let a = self.basis();
        let b = other.basis();
        a.iter()
            .all(|(_, x)| b.iter().all(|(_, y)| target.contains(&x.commutator(y))))
    }

    pub fn is_subalgebra(&self) -> bool {
        self.brackets_into(self, self)
    }
}

/// `Prol(g₋, l)`: the largest graded subalgebra of `l` whose negative part
/// is `g₋`, computed degree by degree as
/// `ḡ_p = {A ∈ l_p : [A, X] ∈ ḡ_{p + deg X} for X in g₋}`.
pub fn relative_prolongation(g_minus: &GradedSubspace, ambient: &GradedSubspace) -> Result<GradedSubspace> {
    let grading = g_minus.grading.clone();
    if !g_minus.is_subalgebra() {
        return Err(Error::NotSubalgebra("g₋ is not closed under brackets".into()));
    }
    if g_minus.degrees().iter().any(|d| !d.is_negative()) {
        return Err(Error::Precondition("g₋ must be concentrated in negative degrees".into()));
    }
    if !g_minus.basis().iter().all(|(_, m)| ambient.contains(m)) {
        return Err(Error::Precondition("g₋ is not contained in the ambient algebra".into()));
    }
    let gm = g_minus.basis();
    let mut out = g_minus.clone();
    for p in ambient.degrees().into_iter().filter(|d| !d.is_negative()) {
        let lp = ambient.basis_of(&p);
        if lp.is_empty() {
            continue;
        }
        // Stack the annihilator conditions for every X in g₋.
        let mut rows: Vec<Vector> = Vec::new();
        for (dx, x) in &gm {
            let t = &p + dx;
            let tk = grading.block_dim(&t);
            if tk == 0 {
                continue;
            }
            let target = out
                .comps
                .get(&t)
                .cloned()
                .unwrap_or_else(|| Subspace::zero(tk));
            let ann = annihilator(&target);
            if ann.is_empty() {
                continue;
            }
            let images: Vec<Vector> = lp
                .iter()
                .map(|a| grading.to_block(&t, &a.commutator(x)))
                .collect();
            for w in &ann {
                rows.push(images.iter().map(|im| crate::linalg::dot(w, im)).collect());
            }
        }
        let coeffs: Vec<Vector> = if rows.is_empty() {
            (0..lp.len())
                .map(|i| (0..lp.len()).map(|j| Rat::from((i == j) as i64)).collect())
                .collect()
        } else {
            Matrix::from_rows(lp.len(), &rows).kernel()
        };
        if coeffs.is_empty() {
            continue;
        }
        let vecs: Vec<Vector> = coeffs
            .iter()
            .map(|c| {
                let mut m = Matrix::zeros(grading.n, grading.n);
                for (ci, a) in c.iter().zip(&lp) {
                    if !ci.is_zero() {
                        m = m.add(&a.scale(ci));
                    }
                }
                grading.to_block(&p, &m)
            })
            .collect();
        out.comps
            .insert(p.clone(), Subspace::span(grading.block_dim(&p), &vecs));
    }
    Ok(out)
}

/// Basis of the orthogonal complement (standard dot product) of a subspace.
fn annihilator(s: &Subspace) -> Vec<Vector> {
    let n = s.ambient_dim();
    if s.dim() == 0 {
        return (0..n)
            .map(|i| (0..n).map(|j| Rat::from((i == j) as i64)).collect())
            .collect();
    }
    Matrix::from_rows(n, s.basis()).kernel()
}

/// Matrices commuting with every given matrix, graded.
pub fn centralizer(grading: &GlGrading, gens: &[Matrix]) -> GradedSubspace {
    let mut comps = BTreeMap::new();
    for d in grading.degrees() {
        let b = grading.block(&d);
        let cols: Vec<Vector> = b
            .iter()
            .map(|&(r, s)| {
                let mut e = Matrix::zeros(grading.n, grading.n);
                e[(r, s)] = Rat::ONE;
                gens.iter().flat_map(|x| e.commutator(x).flatten()).collect()
            })
            .collect();
        let rows = gens.len() * grading.n * grading.n;
        let ker = Matrix::from_cols(rows, &cols).kernel();
        if !ker.is_empty() {
            comps.insert(d.clone(), Subspace::span(b.len(), &ker));
        }
    }
    GradedSubspace {
        grading: grading.clone(),
        comps,
    }
}

/// Trace-orthogonal complement of `sub` inside `ambient`:
/// degree `i` part is `{B ∈ ambient_i : tr(AB) = 0 for A ∈ sub_{−i}}`.
pub fn trace_complement(sub: &GradedSubspace, ambient: &GradedSubspace) -> Result<GradedSubspace> {
    let grading = &sub.grading;
    let mut comps = BTreeMap::new();
    for d in ambient.degrees() {
        let amb = ambient.basis_of(&d);
        let nd = -&d;
        let partners = sub.basis_of(&nd);
        let coeffs: Vec<Vector> = if partners.is_empty() {
            (0..amb.len())
                .map(|i| (0..amb.len()).map(|j| Rat::from((i == j) as i64)).collect())
                .collect()
        } else {
            let m = Matrix::from_fn(partners.len(), amb.len(), |r, c| {
                trace_product(&partners[r], &amb[c])
            });
            m.kernel()
        };
        let vecs: Vec<Vector> = coeffs
            .iter()
            .map(|c| {
                let mut m = Matrix::zeros(grading.n, grading.n);
                for (ci, a) in c.iter().zip(&amb) {
                    if !ci.is_zero() {
                        m = m.add(&a.scale(ci));
                    }
                }
                grading.to_block(&d, &m)
            })
            .collect();
        let s = Subspace::span(grading.block_dim(&d), &vecs);
        let inside = sub
            .comps
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(grading.block_dim(&d)));
        if s.intersect(&inside).dim() > 0 || s.dim() + inside.dim() != ambient.dim_of(&d) {
            return Err(Error::DegenerateTrace);
        }
        if s.dim() > 0 {
            comps.insert(d.clone(), s);
        }
    }
    Ok(GradedSubspace {
        grading: grading.clone(),
        comps,
    })
}

/// `tr(AB)`.
pub fn trace_product(a: &Matrix, b: &Matrix) -> Rat {
    let n = a.rows();
    let mut s = Rat::ZERO;
    for i in 0..n {
        for j in 0..n {
            let x = &a[(i, j)];
            if !x.is_zero() {
                let y = &b[(j, i)];
                if !y.is_zero() {
                    s += x * y;
                }
            }
        }
    }
    s
}

/// Symmetric bilinear forms `κ` with `Xᵀκ + κX = 0` for all given `X`.
pub fn invariant_symmetric_forms(gens: &[Matrix]) -> Vec<Matrix> {
    let n = gens[0].rows();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let cols: Vec<Vector> = pairs
        .iter()
        .map(|&(i, j)| {
            let mut k = Matrix::zeros(n, n);
            k[(i, j)] = Rat::ONE;
            k[(j, i)] = Rat::ONE;
            gens.iter()
                .flat_map(|x| x.transpose().mul(&k).add(&k.mul(x)).flatten())
                .collect()
        })
        .collect();
    let ker = Matrix::from_cols(gens.len() * n * n, &cols).kernel();
    ker.iter()
        .map(|c| {
            let mut k = Matrix::zeros(n, n);
            for (x, &(i, j)) in c.iter().zip(&pairs) {
                k[(i, j)] = x.clone();
                k[(j, i)] = x.clone();
            }
            k
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_in_gl3() {
        // V with degrees (−3, −2, −1); g₋ spanned by E_{01}, E_{12} (degree −1).
        let vdeg = vec![Rat::int(-3), Rat::int(-2), Rat::int(-1)];
        let gr = GlGrading::new(&vdeg);
        let e = |r: usize, s: usize| {
            let mut m = Matrix::zeros(3, 3);
            m[(r, s)] = Rat::ONE;
            m
        };
        let gm = GradedSubspace::span(&gr, &[e(0, 1), e(1, 2), e(0, 2)]).unwrap();
        let prol = relative_prolongation(&gm, &GradedSubspace::gl(&gr)).unwrap();
        // Upper triangular g₋ in gl(3) prolongs to all of gl(3).
        assert_eq!(prol.dim(), 9);
        assert!(prol.is_subalgebra());
        let z = centralizer(&gr, &[e(0, 1), e(1, 2), e(1, 0), e(2, 1)]);
        assert_eq!(z.dim(), 1);
    }

    #[test]
    fn trace_complement_dims() {
        let vdeg = vec![Rat::int(-2), Rat::int(-1)];
        let gr = GlGrading::new(&vdeg);
        let mut h = Matrix::zeros(2, 2);
        h[(0, 0)] = Rat::ONE;
        h[(1, 1)] = Rat::int(-1);
        let sub = GradedSubspace::span(&gr, &[h]).unwrap();
        let c = trace_complement(&sub, &GradedSubspace::gl(&gr)).unwrap();
        assert_eq!(c.dim(), 3);
        assert_eq!(c.sum(&sub).dim(), 4);
    }

    #[test]
    fn orthogonal_algebra_dim() {
        let vdeg = vec![Rat::int(-1), Rat::ZERO, Rat::int(1)];
        let gr = GlGrading::new(&vdeg);
        let mut k = Matrix::zeros(3, 3);
        k[(0, 2)] = Rat::ONE;
        k[(2, 0)] = Rat::ONE;
        k[(1, 1)] = Rat::ONE;
        assert_eq!(GradedSubspace::orthogonal(&gr, &k).dim(), 3);
        assert!(GradedSubspace::orthogonal(&gr, &k).is_subalgebra());
    }
}
