//! Chevalley–Eilenberg complexes of graded nilpotent Lie algebras with
//! Hodge theory.
//!
//! A cochain in `Hom(Λ^q g₋, U)` has internal degree `p` when it maps
//! `g_{i_1} ∧ … ∧ g_{i_q}` into `U_{i_1 + … + i_q + p}`. The coboundary is
//! `(∂c)(x_0,…,x_q) = Σ (−1)^i x_i·c(…x̂_i…) + Σ_{i<j} (−1)^{i+j} c([x_i,x_j],…x̂_i…x̂_j…)`
//! and preserves `p`, so everything is computed per degree block.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::gradedlie::GradedLieAlgebra;
use crate::linalg::{axpy, Matrix, Subspace, Vector};
use crate::prolong::{trace_product, GradedSubspace};
use crate::rational::Rat;
use crate::repmod::GradedModule;

/// A graded nilpotent Lie algebra with negative degrees and a positive
/// definite inner product.
#[derive(Clone, Debug)]
pub struct NilpotentAlgebra {
    degrees: Vec<i64>,
    structure: Vec<Vec<Vec<(usize, Rat)>>>,
    gram: Matrix,
    labels: Vec<String>,
}

impl NilpotentAlgebra {
    /// The negative part `g₋` of a graded algebra, with the form `−B(x, θy)`.
    pub fn from_graded(g: &GradedLieAlgebra) -> NilpotentAlgebra {
        let idx = g.negative_indices();
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let structure = idx
            .iter()
            .map(|&a| {
                idx.iter()
                    .map(|&b| {
                        g.bracket_basis(a, b)
                            .iter()
                            .map(|(k, c)| (pos[k], c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let gram = g.positive_form().select(&idx, &idx);
        NilpotentAlgebra {
            degrees: idx.iter().map(|&i| g.degree(i)).collect(),
            structure,
            gram,
            labels: idx.iter().map(|&i| g.label(i)).collect(),
        }
    }

    /// Builds the algebra from linearly independent matrices closed under
    /// commutators.
    pub fn from_matrices(mats: &[Matrix], degrees: &[i64], gram: Matrix, labels: Vec<String>) -> Result<NilpotentAlgebra> {
        let n = mats.len();
        let flat: Vec<Vector> = mats.iter().map(Matrix::flatten).collect();
        let cols = Matrix::from_cols(flat[0].len(), &flat);
        let mut structure = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let c = mats[a].commutator(&mats[b]).flatten();
                let x = cols
                    .solve(&c)
                    .ok_or_else(|| Error::NotSubalgebra("commutator leaves the span".into()))?;
                structure[a][b] = x
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
            }
        }
        let alg = NilpotentAlgebra {
            degrees: degrees.to_vec(),
            structure,
            gram,
            labels,
        };
        alg.check()?;
        Ok(alg)
    }

    /// Abelian algebra with the given negative degrees and identity form.
    pub fn abelian(degrees: &[i64]) -> NilpotentAlgebra {
        let n = degrees.len();
        NilpotentAlgebra {
            degrees: degrees.to_vec(),
            structure: vec![vec![Vec::new(); n]; n],
            gram: Matrix::identity(n),
            labels: (0..n).map(|i| format!("x{}", i + 1)).collect(),
        }
    }

    fn check(&self) -> Result<()> {
        for a in 0..self.dim() {
            if self.degrees[a] >= 0 {
                return Err(Error::Precondition("g₋ must have negative degrees".into()));
            }
            for b in 0..self.dim() {
                for (k, _) in &self.structure[a][b] {
                    if self.degrees[*k] != self.degrees[a] + self.degrees[b] {
                        return Err(Error::NotGraded("bracket is not degree additive".into()));
                    }
                }
            }
        }
        if !self.gram.is_positive_definite() {
            return Err(Error::Precondition("inner product on g₋ is not positive definite".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Rat)] {
        &self.structure[a][b]
    }
}

/// A graded `g₋`-module with a positive definite inner product.
#[derive(Clone, Debug)]
pub struct CoefficientModule {
    pub degrees: Vec<Rat>,
    /// Action of each `g₋` basis element.
    pub action: Vec<Matrix>,
    pub gram: Matrix,
}

impl CoefficientModule {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn trivial(dim: usize, g: &NilpotentAlgebra) -> CoefficientModule {
        CoefficientModule {
            degrees: vec![Rat::ZERO; dim],
            action: vec![Matrix::zeros(dim, dim); g.dim()],
            gram: Matrix::identity(dim),
        }
    }

    /// Restriction of a module of the full algebra to `g₋`.
    pub fn from_module(g: &GradedLieAlgebra, m: &GradedModule) -> Result<CoefficientModule> {
        let gram = m
            .form
            .clone()
            .ok_or_else(|| Error::Precondition("module has no invariant form".into()))?;
        Ok(CoefficientModule {
            degrees: m.degrees.clone(),
            action: g
                .negative_indices()
                .iter()
                .map(|&i| m.action[i].clone())
                .collect(),
            gram,
        })
    }

    /// A `g₋`-stable graded subspace `S ⊆ gl(V)` under the adjoint action
    /// of the given matrices. The inner product is `⟨A, B⟩ = tr(A B*)` with
    /// `B* = G⁻¹BᵀG` for a positive definite form `G` on `V`.
    pub fn from_subspace(sub: &GradedSubspace, g_minus: &[Matrix], vform: &Matrix) -> Result<CoefficientModule> {
        let basis = sub.basis();
        let grading = sub.grading();
        let ginv = vform
            .inverse()
            .ok_or_else(|| Error::Singular("form on V".into()))?;
        let degrees: Vec<Rat> = basis.iter().map(|(d, _)| d.clone()).collect();
        // Offsets of each degree inside the concatenated basis.
        let mut offset: BTreeMap<Rat, usize> = BTreeMap::new();
        for (i, d) in degrees.iter().enumerate() {
            offset.entry(d.clone()).or_insert(i);
        }
        let n = basis.len();
        let mut action = Vec::with_capacity(g_minus.len());
        for x in g_minus {
            let mut m = Matrix::zeros(n, n);
            for (col, (_, b)) in basis.iter().enumerate() {
                let img = x.commutator(b);
                for (d, v) in grading.components(&img) {
                    let comp = sub
                        .component(&d)
                        .ok_or_else(|| Error::InconsistentModule("subspace is not g₋-stable".into()))?;
                    let c = comp
                        .coords(&v)
                        .ok_or_else(|| Error::InconsistentModule("subspace is not g₋-stable".into()))?;
                    let off = offset[&d];
                    for (k, ck) in c.into_iter().enumerate() {
                        m[(off + k, col)] = ck;
                    }
                }
            }
            action.push(m);
        }
        let stars: Vec<Matrix> = basis
            .iter()
            .map(|(_, b)| ginv.mul(&b.transpose()).mul(vform))
            .collect();
        let gram = Matrix::from_fn(n, n, |i, j| trace_product(&basis[i].1, &stars[j]));
        Ok(CoefficientModule {
            degrees,
            action,
            gram,
        })
    }

    /// Checks the module axioms against `g`.
    pub fn check(&self, g: &NilpotentAlgebra) -> Result<()> {
        for a in 0..g.dim() {
            let da = Rat::int(g.degrees()[a]);
            for c in 0..self.dim() {
                for r in 0..self.dim() {
                    if !self.action[a][(r, c)].is_zero() && self.degrees[r] != &self.degrees[c] + &da {
                        return Err(Error::NotGraded("action is not degree additive".into()));
                    }
                }
            }
            for b in a + 1..g.dim() {
                let lhs = self.action[a].commutator(&self.action[b]);
                let mut rhs = Matrix::zeros(self.dim(), self.dim());
                for (k, c) in g.bracket_basis(a, b) {
                    rhs = rhs.add(&self.action[*k].scale(c));
                }
                if lhs != rhs {
                    return Err(Error::InconsistentModule("action does not respect brackets".into()));
                }
            }
        }
        if !self.gram.is_positive_definite() {
            return Err(Error::Precondition("inner product on U is not positive definite".into()));
        }
        Ok(())
    }
}

/// One internal degree `p` of the complex.
#[derive(Clone, Debug)]
pub struct DegreeBlock {
    pub p: Rat,
    /// Basis of `C^q_p` as (wedge index, module index) pairs.
    pub bases: Vec<Vec<(usize, usize)>>,
    /// `∂: C^q_p → C^{q+1}_p` for `q < max_q`.
    pub d: Vec<Matrix>,
    pub gram: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct CochainComplex {
    g: NilpotentAlgebra,
    u: CoefficientModule,
    max_q: usize,
    /// Sorted index sets of size q, for each q.
    wedges: Vec<Vec<Vec<usize>>>,
    blocks: BTreeMap<Rat, DegreeBlock>,
}

fn combinations(n: usize, q: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, q, &mut Vec::new(), &mut out);
    out
}

/// Materializes `C^0 … C^{max_q}` (default use: `max_q = 2`).
pub fn build_complex(g: &NilpotentAlgebra, u: &CoefficientModule, max_q: usize) -> Result<CochainComplex> {
    u.check(g)?;
    let m = g.dim();
    let wedges: Vec<Vec<Vec<usize>>> = (0..=max_q).map(|q| combinations(m, q)).collect();
    let wedge_index: Vec<HashMap<Vec<usize>, usize>> = wedges
        .iter()
        .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
        .collect();
    let wedge_deg = |w: &[usize]| -> i64 { w.iter().map(|&a| g.degrees[a]).sum() };
    // Collect cochain bases per degree.
    let mut bases: BTreeMap<Rat, Vec<Vec<(usize, usize)>>> = BTreeMap::new();
    for (q, ws) in wedges.iter().enumerate() {
        for (wi, w) in ws.iter().enumerate() {
            let wd = Rat::int(wedge_deg(w));
            for k in 0..u.dim() {
                let p = &u.degrees[k] - &wd;
                bases
                    .entry(p)
                    .or_insert_with(|| vec![Vec::new(); max_q + 1])[q]
                    .push((wi, k));
            }
        }
    }
    let kinv = g
        .gram
        .inverse()
        .ok_or_else(|| Error::Singular("form on g₋".into()))?;
    let mut blocks = BTreeMap::new();
    for (p, bs) in bases {
        let pos: Vec<HashMap<(usize, usize), usize>> = bs
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, &x)| (x, i)).collect())
            .collect();
        let mut d = Vec::with_capacity(max_q);
        for q in 0..max_q {
            let mut mat = Matrix::zeros(bs[q + 1].len(), bs[q].len());
            for (col, &(wi, k)) in bs[q].iter().enumerate() {
                let a_set = &wedges[q][wi];
                // x_b · c(…) terms
                for b in 0..m {
                    if a_set.contains(&b) {
                        continue;
                    }
                    let mut bset = a_set.clone();
                    bset.push(b);
                    bset.sort_unstable();
                    let i = bset.iter().position(|&t| t == b).unwrap();
                    let sign = if i % 2 == 0 { Rat::ONE } else { Rat::int(-1) };
                    let bi = wedge_index[q + 1][&bset];
                    let act = &u.action[b];
                    for r in 0..u.dim() {
                        let v = &act[(r, k)];
                        if !v.is_zero() {
                            let row = pos[q + 1][&(bi, r)];
                            mat[(row, col)] += &sign * v;
                        }
                    }
                }
                // c([x_s, x_t], …) terms
                for (ai, &a) in a_set.iter().enumerate() {
                    let rest: Vec<usize> = a_set.iter().copied().filter(|&t| t != a).collect();
                    let sign_a = if ai % 2 == 0 { 1 } else { -1 };
                    for s in 0..m {
                        if rest.contains(&s) {
                            continue;
                        }
                        for t in s + 1..m {
                            if rest.contains(&t) {
                                continue;
                            }
                            let Some((_, c)) = g.structure[s][t].iter().find(|(k2, _)| *k2 == a) else {
                                continue;
                            };
                            let mut bset = rest.clone();
                            bset.push(s);
                            bset.push(t);
                            bset.sort_unstable();
                            let i = bset.iter().position(|&x| x == s).unwrap();
                            let j = bset.iter().position(|&x| x == t).unwrap();
                            let sign = sign_a * if (i + j) % 2 == 0 { 1 } else { -1 };
                            let bi = wedge_index[q + 1][&bset];
                            let row = pos[q + 1][&(bi, k)];
                            mat[(row, col)] += &Rat::int(sign) * c;
                        }
                    }
                }
            }
            d.push(mat);
        }
        let gram = (0..=max_q)
            .map(|q| {
                let b = &bs[q];
                Matrix::from_fn(b.len(), b.len(), |i, j| {
                    let (wa, ka) = b[i];
                    let (wb, kb) = b[j];
                    let gu = &u.gram[(ka, kb)];
                    if gu.is_zero() {
                        return Rat::ZERO;
                    }
                    let aw = &wedges[q][wa];
                    let bw = &wedges[q][wb];
                    let minor = kinv.select(aw, bw);
                    let det = if q == 0 { Rat::ONE } else { minor.determinant() };
                    &det * gu
                })
            })
            .collect();
        blocks.insert(
            p.clone(),
            DegreeBlock {
                p,
                bases: bs,
                d,
                gram,
            },
        );
    }
    Ok(CochainComplex {
        g: g.clone(),
        u: u.clone(),
        max_q,
        wedges,
        blocks,
    })
}

/// Orthogonal decomposition `C^q_p = im ∂ ⊕ im ∂* ⊕ ker Δ`.
#[derive(Clone, Debug)]
pub struct HodgeDecomposition {
    pub image_d: Subspace,
    pub image_dstar: Subspace,
    pub harmonic: Subspace,
}

impl CochainComplex {
    pub fn algebra(&self) -> &NilpotentAlgebra {
        &self.g
    }

    pub fn module(&self) -> &CoefficientModule {
        &self.u
    }

    pub fn max_q(&self) -> usize {
        self.max_q
    }

    /// Internal degrees with a nonzero cochain space, ascending.
    pub fn degrees(&self) -> Vec<Rat> {
        self.blocks.keys().cloned().collect()
    }

    pub fn block(&self, p: &Rat) -> Option<&DegreeBlock> {
        self.blocks.get(p)
    }

    pub fn wedge(&self, q: usize, i: usize) -> &[usize] {
        &self.wedges[q][i]
    }

    pub fn cochain_dim(&self, q: usize, p: &Rat) -> usize {
        self.blocks.get(p).map_or(0, |b| b.bases[q].len())
    }

    /// Total dimension of `C^q`.
    pub fn total_cochain_dim(&self, q: usize) -> usize {
        self.blocks.values().map(|b| b.bases[q].len()).sum()
    }

    fn empty(rows: usize, cols: usize) -> Matrix {
        Matrix::zeros(rows, cols)
    }

    /// `∂: C^q_p → C^{q+1}_p`.
    pub fn d(&self, q: usize, p: &Rat) -> Result<Matrix> {
        if q >= self.max_q {
            return Err(Error::Precondition(format!(
                "∂ on C^{q} needs cochains up to degree {}, complex built to {}",
                q + 1,
                self.max_q
            )));
        }
        Ok(match self.blocks.get(p) {
            Some(b) => b.d[q].clone(),
            None => Self::empty(0, 0),
        })
    }

    pub fn gram(&self, q: usize, p: &Rat) -> Matrix {
        match self.blocks.get(p) {
            Some(b) => b.gram[q].clone(),
            None => Self::empty(0, 0),
        }
    }

    /// `∂* = G_q⁻¹ ∂ᵀ G_{q+1}: C^{q+1}_p → C^q_p`.
    pub fn adjoint_coboundary(&self, q: usize, p: &Rat) -> Result<Matrix> {
        let d = self.d(q, p)?;
        if d.rows() == 0 || d.cols() == 0 {
            return Ok(Matrix::zeros(d.cols(), d.rows()));
        }
        let gq = self.gram(q, p);
        let gq1 = self.gram(q + 1, p);
        let x = gq
            .solve_matrix(&d.transpose().mul(&gq1))
            .ok_or_else(|| Error::Singular("cochain Gram matrix".into()))?;
        Ok(x)
    }

    /// `Δ = ∂∂* + ∂*∂` on `C^q_p`, for `q < max_q`.
    pub fn laplacian(&self, q: usize, p: &Rat) -> Result<Matrix> {
        let n = self.cochain_dim(q, p);
        let mut lap = Matrix::zeros(n, n);
        if n == 0 {
            return Ok(lap);
        }
        let d = self.d(q, p)?;
        if d.rows() > 0 {
            lap = lap.add(&self.adjoint_coboundary(q, p)?.mul(&d));
        }
        if q > 0 {
            let dm = self.d(q - 1, p)?;
            if dm.cols() > 0 {
                lap = lap.add(&dm.mul(&self.adjoint_coboundary(q - 1, p)?));
            }
        }
        Ok(lap)
    }

    fn rank_of(m: &Matrix) -> usize {
        if m.rows() == 0 || m.cols() == 0 {
            0
        } else {
            m.rank()
        }
    }

    /// `dim H^q_p = dim ker ∂^q_p − rank ∂^{q−1}_p`.
    pub fn cohomology_dim(&self, q: usize, p: &Rat) -> Result<usize> {
        let n = self.cochain_dim(q, p);
        if n == 0 {
            // Still validate q.
            if q >= self.max_q {
                self.d(q, p)?;
            }
            return Ok(0);
        }
        let rk = Self::rank_of(&self.d(q, p)?);
        let rk_prev = if q > 0 { Self::rank_of(&self.d(q - 1, p)?) } else { 0 };
        Ok(n - rk - rk_prev)
    }

    /// `(p, dim H^q_p)` for every degree with nonzero cohomology.
    pub fn cohomology_table(&self, q: usize) -> Result<Vec<(Rat, usize)>> {
        let mut out = Vec::new();
        for p in self.degrees() {
            let h = self.cohomology_dim(q, &p)?;
            if h > 0 {
                out.push((p, h));
            }
        }
        Ok(out)
    }

    pub fn hodge_decompose(&self, q: usize, p: &Rat) -> Result<HodgeDecomposition> {
        let n = self.cochain_dim(q, p);
        let d = self.d(q, p)?;
        let image_d = if q > 0 && n > 0 {
            let dm = self.d(q - 1, p)?;
            Subspace::span(n, &dm.transpose().to_rows())
        } else {
            Subspace::zero(n)
        };
        let image_dstar = if d.rows() > 0 && n > 0 {
            let ds = self.adjoint_coboundary(q, p)?;
            Subspace::span(n, &ds.transpose().to_rows())
        } else {
            Subspace::zero(n)
        };
        let harmonic = Subspace::span(n, &self.laplacian(q, p)?.kernel());
        Ok(HodgeDecomposition {
            image_d,
            image_dstar,
            harmonic,
        })
    }

    /// Orthogonal projection onto `ker Δ` with respect to the cochain form.
    pub fn harmonic_part(&self, q: usize, p: &Rat, c: &[Rat]) -> Result<Vector> {
        let n = self.cochain_dim(q, p);
        if c.len() != n {
            return Err(Error::Precondition(format!(
                "cochain has length {}, C^{q}_{p} has dimension {n}",
                c.len()
            )));
        }
        let h = self.laplacian(q, p)?.kernel();
        if h.is_empty() {
            return Ok(vec![Rat::ZERO; n]);
        }
        let hm = Matrix::from_cols(n, &h);
        let g = self.gram(q, p);
        let hg = hm.transpose().mul(&g);
        let small = hg.mul(&hm);
        let coef = small
            .solve(&hg.mul_vec(c))
            .ok_or_else(|| Error::Singular("harmonic Gram matrix".into()))?;
        Ok(hm.mul_vec(&coef))
    }

    pub fn apply_d(&self, q: usize, p: &Rat, c: &[Rat]) -> Result<Vector> {
        let d = self.d(q, p)?;
        if d.cols() == 0 {
            return Ok(vec![Rat::ZERO; d.rows()]);
        }
        Ok(d.mul_vec(c))
    }

    pub fn is_cocycle(&self, q: usize, p: &Rat, c: &[Rat]) -> Result<bool> {
        Ok(self.apply_d(q, p, c)?.iter().all(Rat::is_zero))
    }

    pub fn is_coboundary(&self, q: usize, p: &Rat, c: &[Rat]) -> Result<bool> {
        if c.iter().all(Rat::is_zero) {
            return Ok(true);
        }
        if q == 0 {
            return Ok(false);
        }
        let dm = self.d(q - 1, p)?;
        if dm.cols() == 0 {
            return Ok(false);
        }
        Ok(dm.solve(c).is_some())
    }

    /// Splits a 1-cochain given by its values on the `g₋` basis (in module
    /// coordinates) into its homogeneous components.
    pub fn encode_cochain1(&self, values: &[Vector]) -> BTreeMap<Rat, Vector> {
        let mut out: BTreeMap<Rat, Vector> = BTreeMap::new();
        for (p, b) in &self.blocks {
            let v: Vector = b.bases[1]
                .iter()
                .map(|&(wi, k)| values[self.wedges[1][wi][0]][k].clone())
                .collect();
            if v.iter().any(|x| !x.is_zero()) {
                out.insert(p.clone(), v);
            }
        }
        out
    }

    /// Inverse of [`encode_cochain1`] for a single degree.
    pub fn decode_cochain1(&self, p: &Rat, c: &[Rat]) -> Vec<Vector> {
        let mut out = vec![vec![Rat::ZERO; self.u.dim()]; self.g.dim()];
        if let Some(b) = self.blocks.get(p) {
            for (x, &(wi, k)) in c.iter().zip(&b.bases[1]) {
                out[self.wedges[1][wi][0]][k] = x.clone();
            }
        }
        out
    }

    /// Inner product of two cochains in `C^q_p`.
    pub fn inner(&self, q: usize, p: &Rat, a: &[Rat], b: &[Rat]) -> Rat {
        let g = self.gram(q, p);
        crate::linalg::dot(a, &g.mul_vec(b))
    }
}

/// Projects `v` onto the span of `basis` along nothing else: returns the
/// coefficients if `v` lies in the span.
pub fn coordinates_in(basis: &[Vector], v: &[Rat]) -> Option<Vector> {
    if basis.is_empty() {
        return if v.iter().all(Rat::is_zero) { Some(Vec::new()) } else { None };
    }
    Matrix::from_cols(v.len(), basis).solve(v)
}

/// `x ↦ Σ c_i b_i`.
pub fn combine(basis: &[Vector], coeffs: &[Rat]) -> Vector {
    let mut out = vec![Rat::ZERO; basis.first().map_or(0, Vec::len)];
    for (c, b) in coeffs.iter().zip(basis) {
        axpy(&mut out, c, b);
    }
    out
}
