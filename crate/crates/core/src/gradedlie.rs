//! Semisimple Lie algebras in a Chevalley basis, with parabolic gradings.
//!
//! Root vectors are generated from the simple ones: for a positive root
//! `γ = β + α_i` (smallest such `i`), `e_γ = [e_i, e_β]/(r+1)` and
//! `f_γ = −[f_i, f_β]/(r+1)`, where `r` is the largest `k` with `β − kα_i`
//! a root. Structure constants are read off the adjoint module, which is
//! faithful. The Chevalley involution `e_α ↦ −f_α`, `h ↦ −h` is an
//! automorphism in this basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::rational::Rat;
use crate::repmod::lower_from_highest_weight;
use crate::rootsys::RootSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    /// `e_α` for the positive root with this index.
    E(usize),
    /// `f_α` for the positive root with this index.
    F(usize),
    /// `h_i` for the simple root with this (0-based) index.
    H(usize),
}

#[derive(Clone, Debug)]
enum Recipe {
    Simple(usize),
    Bracket { i: usize, beta: usize, scale: Rat },
}

#[derive(Clone, Debug)]
pub struct GradedLieAlgebra {
    rs: RootSystem,
    labels: Vec<BasisLabel>,
    /// Root of each basis element in simple-root coordinates (zero for h).
    roots: Vec<Vec<i64>>,
    degrees: Vec<i64>,
    /// 1-based indices of the grading set.
    sigma: Vec<usize>,
    /// `[b_i, b_j] = Σ c_k b_k`, sparse, for all ordered pairs.
    structure: Vec<Vec<Vec<(usize, Rat)>>>,
    killing: Matrix,
    /// Coordinates of the grading element in the basis `h_1..h_l`.
    grading_element: Vector,
    theta: Matrix,
    recipes: Vec<Recipe>,
    e_pos: Vec<usize>,
    f_pos: Vec<usize>,
    h_pos: Vec<usize>,
}

impl fmt::Display for GradedLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rs.name())?;
        if !self.sigma.is_empty() {
            let s: Vec<String> = self.sigma.iter().map(|i| i.to_string()).collect();
            write!(f, " graded by {{{}}}", s.join(","))?;
        }
        Ok(())
    }
}

/// Ungraded algebra (all degrees 0) in the Chevalley basis.
pub fn chevalley_algebra(rs: &RootSystem) -> GradedLieAlgebra {
    GradedLieAlgebra::new(rs)
}

pub fn parabolic_grading(g: &GradedLieAlgebra, sigma: &[usize]) -> Result<GradedLieAlgebra> {
    g.with_grading(sigma)
}

pub fn killing_form(g: &GradedLieAlgebra) -> &Matrix {
    &g.killing
}

pub fn theta_involution(g: &GradedLieAlgebra) -> &Matrix {
    &g.theta
}

impl GradedLieAlgebra {
    pub fn new(rs: &RootSystem) -> GradedLieAlgebra {
        let l = rs.rank();
        let pr = rs.positive_roots();
        let np = pr.len();
        let mut recipes = Vec::with_capacity(np);
        for gamma in pr {
            let height: i64 = gamma.iter().sum();
            if height == 1 {
                recipes.push(Recipe::Simple(gamma.iter().position(|&x| x == 1).unwrap()));
                continue;
            }
            let (i, beta) = (0..l)
                .find_map(|i| {
                    let mut b = gamma.clone();
                    b[i] -= 1;
                    rs.root_index(&b).map(|bi| (i, bi))
                })
                .expect("every non-simple positive root is β + α_i");
            let mut r = 0i64;
            loop {
                let mut b = pr[beta].clone();
                b[i] -= r + 1;
                if b[i] >= 0 && rs.root_index(&b).is_some() {
                    r += 1;
                } else {
                    break;
                }
            }
            recipes.push(Recipe::Bracket {
                i,
                beta,
                scale: Rat::new(1, r + 1),
            });
        }
        // Basis order: f (highest root first), h, e (by height).
        let mut labels = Vec::with_capacity(l + 2 * np);
        let mut roots = Vec::with_capacity(l + 2 * np);
        for k in (0..np).rev() {
            labels.push(BasisLabel::F(k));
            roots.push(pr[k].iter().map(|x| -x).collect::<Vec<i64>>());
        }
        for i in 0..l {
            labels.push(BasisLabel::H(i));
            roots.push(vec![0; l]);
        }
        for (k, root) in pr.iter().enumerate() {
            labels.push(BasisLabel::E(k));
            roots.push(root.clone());
        }
        let n = labels.len();
        let f_pos: Vec<usize> = (0..np).map(|k| np - 1 - k).collect();
        let h_pos: Vec<usize> = (0..l).map(|i| np + i).collect();
        let e_pos: Vec<usize> = (0..np).map(|k| np + l + k).collect();
        let mut g = GradedLieAlgebra {
            rs: rs.clone(),
            labels,
            roots,
            degrees: vec![0; n],
            sigma: Vec::new(),
            structure: Vec::new(),
            killing: Matrix::zeros(0, 0),
            grading_element: vec![Rat::ZERO; l],
            theta: Matrix::zeros(n, n),
            recipes,
            e_pos,
            f_pos,
            h_pos,
        };
        g.compute_structure();
        g.compute_killing();
        for k in 0..np {
            g.theta[(g.f_pos[k], g.e_pos[k])] = Rat::int(-1);
            g.theta[(g.e_pos[k], g.f_pos[k])] = Rat::int(-1);
        }
        for i in 0..l {
            g.theta[(g.h_pos[i], g.h_pos[i])] = Rat::int(-1);
        }
        g
    }

    fn compute_structure(&mut self) {
        let rs = &self.rs;
        let theta_w: Vec<i64> = rs.alpha_to_omega_i64(rs.highest_root());
        let adj = lower_from_highest_weight(rs, &theta_w);
        let mats = self.represent(&adj.e, &adj.f);
        let n = self.dim();
        let l = rs.rank();
        let dim_v = adj.dim;
        // Left inverse for Cartan coordinates from diagonal entries.
        let diag = Matrix::from_fn(dim_v, l, |r, i| mats[self.h_pos[i]][(r, r)].clone());
        let (_, rows) = diag.transpose().rref();
        let h_inv = diag
            .select(&rows, &(0..l).collect::<Vec<_>>())
            .inverse()
            .expect("Cartan elements act independently");
        let mut structure = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in (a + 1)..n {
                let m = mats[a].commutator(&mats[b]);
                let w: Vec<i64> = self.roots[a]
                    .iter()
                    .zip(&self.roots[b])
                    .map(|(x, y)| x + y)
                    .collect();
                let mut coeffs: Vec<(usize, Rat)> = Vec::new();
                if m.is_zero() {
                } else if w.iter().all(|&x| x == 0) {
                    let d: Vector = rows.iter().map(|&r| m[(r, r)].clone()).collect();
                    let c = h_inv.mul_vec(&d);
                    for (i, ci) in c.into_iter().enumerate() {
                        if !ci.is_zero() {
                            coeffs.push((self.h_pos[i], ci));
                        }
                    }
                } else {
                    let k = self
                        .roots
                        .iter()
                        .position(|r| *r == w)
                        .expect("nonzero bracket lands in a root space");
                    let target = &mats[k];
                    let (r, c) = (0..dim_v * dim_v)
                        .map(|t| (t / dim_v, t % dim_v))
                        .find(|&(r, c)| !target[(r, c)].is_zero())
                        .expect("root vectors act nontrivially");
                    let coef = &m[(r, c)] / &target[(r, c)];
                    debug_assert_eq!(m, target.scale(&coef));
                    coeffs.push((k, coef));
                }
                let neg: Vec<(usize, Rat)> = coeffs.iter().map(|(k, c)| (*k, -c)).collect();
                structure[a][b] = coeffs;
                structure[b][a] = neg;
            }
        }
        self.structure = structure;
    }

    fn compute_killing(&mut self) {
        let n = self.dim();
        let mut b = Matrix::zeros(n, n);
        for x in 0..n {
            for y in x..n {
                let sum_zero = self.roots[x]
                    .iter()
                    .zip(&self.roots[y])
                    .all(|(p, q)| p + q == 0);
                if !sum_zero {
                    continue;
                }
                // tr(ad x ad y) = Σ_z coefficient of z in [x, [y, z]]
                let mut t = Rat::ZERO;
                for z in 0..n {
                    for (w, c1) in &self.structure[y][z] {
                        for (v, c2) in &self.structure[x][*w] {
                            if *v == z {
                                t += c1 * c2;
                            }
                        }
                    }
                }
                b[(x, y)] = t.clone();
                b[(y, x)] = t;
            }
        }
        self.killing = b;
    }

    /// Extends a representation of the Chevalley generators to all basis
    /// elements, following the construction recipes.
    pub fn represent(&self, e: &[Matrix], f: &[Matrix]) -> Vec<Matrix> {
        let np = self.recipes.len();
        let mut em: Vec<Matrix> = Vec::with_capacity(np);
        let mut fm: Vec<Matrix> = Vec::with_capacity(np);
        for rec in &self.recipes {
            match rec {
                Recipe::Simple(i) => {
                    em.push(e[*i].clone());
                    fm.push(f[*i].clone());
                }
                Recipe::Bracket { i, beta, scale } => {
                    em.push(e[*i].commutator(&em[*beta]).scale(scale));
                    fm.push(f[*i].commutator(&fm[*beta]).scale(&-scale));
                }
            }
        }
        self.labels
            .iter()
            .map(|lab| match lab {
                BasisLabel::E(k) => em[*k].clone(),
                BasisLabel::F(k) => fm[*k].clone(),
                BasisLabel::H(i) => e[*i].commutator(&f[*i]),
            })
            .collect()
    }

    fn with_grading(&self, sigma: &[usize]) -> Result<GradedLieAlgebra> {
        if sigma.is_empty() {
            return Err(Error::EmptySigma);
        }
        let mut s: Vec<usize> = sigma.to_vec();
        s.sort_unstable();
        s.dedup();
        for &i in &s {
            self.rs.check_index(i)?;
        }
        let l = self.rs.rank();
        let mut g = self.clone();
        g.degrees = self
            .roots
            .iter()
            .map(|r| s.iter().map(|&i| r[i - 1]).sum())
            .collect();
        let ind: Vector = (0..l).map(|i| Rat::from(s.contains(&(i + 1)) as i64)).collect();
        g.grading_element = self.rs.inverse_cartan().mul_vec(&ind);
        g.sigma = s;
        Ok(g)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> String {
        let fmt_root = |k: usize| -> String {
            self.rs.positive_roots()[k]
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join("")
        };
        match self.labels[i] {
            BasisLabel::E(k) => format!("e{}", fmt_root(k)),
            BasisLabel::F(k) => format!("f{}", fmt_root(k)),
            BasisLabel::H(j) => format!("h{}", j + 1),
        }
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn h_index(&self, i: usize) -> usize {
        self.h_pos[i]
    }

    pub fn e_index(&self, root: usize) -> usize {
        self.e_pos[root]
    }

    pub fn f_index(&self, root: usize) -> usize {
        self.f_pos[root]
    }

    /// Index of the basis element `e_{α_i}` (0-based simple root).
    pub fn simple_e(&self, i: usize) -> usize {
        self.e_pos[i]
    }

    pub fn simple_f(&self, i: usize) -> usize {
        self.f_pos[i]
    }

    pub fn indices_of_degree(&self, d: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    pub fn negative_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] < 0).collect()
    }

    pub fn max_degree(&self) -> i64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Dimensions of `g_d` for `d = −k..k`.
    pub fn graded_dims(&self) -> Vec<(i64, usize)> {
        let k = self.max_degree();
        (-k..=k).map(|d| (d, self.indices_of_degree(d).len())).collect()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.structure[i][j]
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vector {
        let n = self.dim();
        let mut out = vec![Rat::ZERO; n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for (k, s) in &self.structure[i][j] {
                    out[*k] += &c * s;
                }
            }
        }
        out
    }

    /// Matrix of `ad b_i` in the algebra basis.
    pub fn ad_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in &self.structure[i][j] {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    pub fn killing(&self) -> &Matrix {
        &self.killing
    }

    pub fn theta(&self) -> &Matrix {
        &self.theta
    }

    /// Gram matrix of the positive definite form `−B(x, θy)`.
    pub fn positive_form(&self) -> Matrix {
        self.killing.mul(&self.theta).scale(&Rat::int(-1))
    }

    pub fn grading_element(&self) -> &[Rat] {
        &self.grading_element
    }

    /// The grading element as a vector in the algebra basis.
    pub fn grading_element_vector(&self) -> Vector {
        let mut v = vec![Rat::ZERO; self.dim()];
        for (i, c) in self.grading_element.iter().enumerate() {
            v[self.h_pos[i]] = c.clone();
        }
        v
    }

    /// Grading element in a representation given by basis-element matrices.
    pub fn grading_element_matrix(&self, action: &[Matrix]) -> Matrix {
        let n = action[0].rows();
        let mut m = Matrix::zeros(n, n);
        for (i, c) in self.grading_element.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&action[self.h_pos[i]].scale(c));
            }
        }
        m
    }

    /// Eigenvalue of the grading element on a weight given in ω-coordinates.
    pub fn weight_degree(&self, w: &[i64]) -> Rat {
        self.grading_element
            .iter()
            .zip(w)
            .map(|(c, &x)| c * &Rat::int(x))
            .sum()
    }

    /// Exhaustive Jacobi identity check.
    pub fn check_jacobi(&self) -> bool {
        let n = self.dim();
        let unit = |i: usize| -> Vector {
            let mut v = vec![Rat::ZERO; n];
            v[i] = Rat::ONE;
            v
        };
        for a in 0..n {
            for b in a + 1..n {
                let ab = self.bracket(&unit(a), &unit(b));
                for c in b + 1..n {
                    let bc = self.bracket(&unit(b), &unit(c));
                    let ca = self.bracket(&unit(c), &unit(a));
                    let s1 = self.bracket(&ab, &unit(c));
                    let s2 = self.bracket(&bc, &unit(a));
                    let s3 = self.bracket(&ca, &unit(b));
                    if (0..n).any(|k| !(&(&s1[k] + &s2[k]) + &s3[k]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Contact grading: depth 2, `dim g_{−2} = 1`, and the bracket
    /// `Λ²g_{−1} → g_{−2}` nondegenerate.
    pub fn is_contact(&self) -> bool {
        if self.max_degree() != 2 {
            return false;
        }
        let m2 = self.indices_of_degree(-2);
        if m2.len() != 1 {
            return false;
        }
        let m1 = self.indices_of_degree(-1);
        let z = m2[0];
        let form = Matrix::from_fn(m1.len(), m1.len(), |a, b| {
            self.structure[m1[a]][m1[b]]
                .iter()
                .find(|(k, _)| *k == z)
                .map_or(Rat::ZERO, |(_, c)| c.clone())
        });
        form.rank() == m1.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn alg(f: Family, l: usize) -> GradedLieAlgebra {
        chevalley_algebra(&RootSystem::new(f, l).unwrap())
    }

    #[test]
    fn dims_and_jacobi() {
        for (f, l, d) in [
            (Family::A, 1, 3),
            (Family::A, 2, 8),
            (Family::C, 2, 10),
            (Family::B, 2, 10),
            (Family::G2, 2, 14),
            (Family::A, 3, 15),
            (Family::B, 3, 21),
        ] {
            let g = alg(f, l);
            assert_eq!(g.dim(), d);
            assert!(g.check_jacobi(), "{}", g);
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    for (_, c) in g.bracket_basis(a, b) {
                        assert!(c.is_integer(), "non-integral constant in {}", g);
                    }
                }
            }
        }
    }

    #[test]
    fn sl2_killing() {
        let g = alg(Family::A, 1);
        let h = g.h_index(0);
        assert_eq!(g.killing()[(h, h)], Rat::int(8));
        assert_eq!(g.killing()[(g.simple_e(0), g.simple_f(0))], Rat::int(4));
    }

    #[test]
    fn gradings() {
        let a2 = parabolic_grading(&alg(Family::A, 2), &[1, 2]).unwrap();
        let dims: Vec<usize> = a2.graded_dims().iter().map(|x| x.1).collect();
        assert_eq!(dims, vec![1, 2, 2, 2, 1]);
        assert!(a2.is_contact());
        let c2 = parabolic_grading(&alg(Family::C, 2), &[1]).unwrap();
        let dims: Vec<usize> = c2.graded_dims().iter().map(|x| x.1).collect();
        assert_eq!(dims, vec![1, 2, 4, 2, 1]);
        assert!(c2.is_contact());
        let g2 = parabolic_grading(&alg(Family::G2, 2), &[2]).unwrap();
        let dims: Vec<usize> = g2.graded_dims().iter().map(|x| x.1).collect();
        assert_eq!(dims, vec![1, 4, 4, 4, 1]);
        assert!(g2.is_contact());
        let g2b = parabolic_grading(&alg(Family::G2, 2), &[1]).unwrap();
        assert_eq!(g2b.max_degree(), 3);
        assert!(!g2b.is_contact());
        assert!(matches!(parabolic_grading(&alg(Family::A, 2), &[]), Err(Error::EmptySigma)));
        assert!(parabolic_grading(&alg(Family::A, 2), &[3]).is_err());
    }

    fn check_graded_invariants(g: &GradedLieAlgebra) {
        let n = g.dim();
        let e = g.grading_element_vector();
        let b = g.killing();
        for x in 0..n {
            // [E, b] = deg(b) b
            let mut u = vec![Rat::ZERO; n];
            u[x] = Rat::ONE;
            let br = g.bracket(&e, &u);
            let expect: Vector = u.iter().map(|v| v * &Rat::int(g.degree(x))).collect();
            assert_eq!(br, expect);
            for y in 0..n {
                for (k, _) in g.bracket_basis(x, y) {
                    assert_eq!(g.degree(*k), g.degree(x) + g.degree(y));
                }
                if g.degree(x) + g.degree(y) != 0 {
                    assert!(b[(x, y)].is_zero());
                }
            }
        }
        // invariance B([x,y],z) + B(y,[x,z]) = 0
        for x in 0..n {
            let ad = g.ad_basis(x);
            let lhs = ad.transpose().mul(b).add(&b.mul(&ad));
            assert!(lhs.is_zero());
        }
        let th = g.theta();
        assert_eq!(th.mul(th), Matrix::identity(n));
        // θ is an automorphism
        for x in 0..n {
            for y in 0..n {
                let mut lhs = vec![Rat::ZERO; n];
                for (k, c) in g.bracket_basis(x, y) {
                    for r in 0..n {
                        lhs[r] += c * &th[(r, *k)];
                    }
                }
                let rhs = g.bracket(&th.col(x), &th.col(y));
                assert_eq!(lhs, rhs);
            }
        }
        assert!(g.positive_form().is_positive_definite());
        for d in 1..=g.max_degree() {
            let p = g.indices_of_degree(d);
            let m = g.indices_of_degree(-d);
            assert_eq!(b.select(&p, &m).rank(), p.len());
        }
    }

    #[test]
    fn graded_invariants() {
        check_graded_invariants(&parabolic_grading(&alg(Family::A, 2), &[1, 2]).unwrap());
        check_graded_invariants(&parabolic_grading(&alg(Family::C, 2), &[1]).unwrap());
        check_graded_invariants(&parabolic_grading(&alg(Family::G2, 2), &[2]).unwrap());
        check_graded_invariants(&parabolic_grading(&alg(Family::B, 3), &[2]).unwrap());
        check_graded_invariants(&parabolic_grading(&alg(Family::D, 4), &[1, 3]).unwrap());
    }

    #[test]
    fn theta_of_grading_element() {
        let g = parabolic_grading(&alg(Family::A, 2), &[1, 2]).unwrap();
        let e = g.grading_element_vector();
        let te = g.theta().mul_vec(&e);
        assert_eq!(te, e.iter().map(|x| -x).collect::<Vector>());
    }
}
