//! Root systems of types A, B, C, D and G2.
//!
//! Conventions: simple roots are numbered as in Bourbaki. The Cartan matrix
//! is `C[i][j] = ⟨α_i, α_j^∨⟩`, so row `i` of `C` is `α_i` written in
//! fundamental-weight coordinates and a weight with simple-root coordinates
//! `a` has fundamental-weight coordinates `a·C`. For G2, `α1` is the short
//! root; the grading `{α2}` is the contact grading with dims (1,4,4,4,1).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::rational::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::A, Family::B, Family::C, Family::D, Family::G2];

    pub fn valid_ranks(self) -> &'static str {
        match self {
            Family::A => "1 and above",
            Family::B | Family::C => "2 and above",
            Family::D => "3 (as A3) or 4 and above",
            Family::G2 => "2 only",
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C | Family::G2 => 2,
            Family::D => 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G" | "G2" => Ok(Family::G2),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// Basis tag for weight coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Fundamental weights `ω_i`.
    Omega,
    /// Simple roots `α_i`.
    Alpha,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub coords: Vector,
    pub basis: Basis,
}

impl Weight {
    pub fn omega(coords: Vector) -> Weight {
        Weight {
            coords,
            basis: Basis::Omega,
        }
    }

    pub fn alpha(coords: Vector) -> Weight {
        Weight {
            coords,
            basis: Basis::Alpha,
        }
    }

    pub fn omega_i64(coords: &[i64]) -> Weight {
        Weight::omega(coords.iter().map(|&x| Rat::int(x)).collect())
    }

    pub fn to_omega(&self, rs: &RootSystem) -> Weight {
        match self.basis {
            Basis::Omega => self.clone(),
            Basis::Alpha => Weight::omega(rs.alpha_to_omega(&self.coords)),
        }
    }

    pub fn to_alpha(&self, rs: &RootSystem) -> Weight {
        match self.basis {
            Basis::Alpha => self.clone(),
            Basis::Omega => Weight::alpha(rs.omega_to_alpha(&self.coords)),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.basis {
            Basis::Omega => "ω",
            Basis::Alpha => "α",
        };
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "{tag}({})", c.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    inverse_cartan: Matrix,
    /// Positive roots in simple-root coordinates, ordered by height and
    /// then lexicographically.
    positive_roots: Vec<Vec<i64>>,
    /// `d_i = (α_i, α_i)/2` up to a common scale, so `(α_i, α_j) = C_ij d_j`.
    symmetrizer: Vec<i64>,
}

pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    RootSystem::new(family, rank)
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<RootSystem> {
        let (family, rank) = match (family, rank) {
            (Family::D, 3) => (Family::A, 3),
            (Family::G2, 2) => (Family::G2, 2),
            (f, r) if f != Family::G2 && r >= f.min_rank() => (f, r),
            (f, r) => {
                return Err(Error::InvalidRank {
                    family: f.to_string(),
                    rank: r,
                    valid: f.valid_ranks(),
                })
            }
        };
        let l = rank;
        let mut c = vec![vec![0i64; l]; l];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut d = vec![1i64; l];
        match family {
            Family::A => {
                for i in 0..l.saturating_sub(1) {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
            }
            Family::B | Family::C => {
                for i in 0..l - 1 {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                if family == Family::B {
                    c[l - 2][l - 1] = -2;
                    d = vec![2; l];
                    d[l - 1] = 1;
                } else {
                    c[l - 1][l - 2] = -2;
                    d[l - 1] = 2;
                }
            }
            Family::D => {
                for i in 0..l - 2 {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                c[l - 3][l - 1] = -1;
                c[l - 1][l - 3] = -1;
            }
            Family::G2 => {
                c[0][1] = -1;
                c[1][0] = -3;
                d = vec![1, 3];
            }
        }
        let cm = Matrix::from_fn(l, l, |i, j| Rat::int(c[i][j]));
        let inverse_cartan = cm.inverse().expect("Cartan matrices are invertible");
        let mut rs = RootSystem {
            family,
            rank,
            cartan: c,
            inverse_cartan,
            positive_roots: Vec::new(),
            symmetrizer: d,
        };
        rs.positive_roots = rs.enumerate_positive_roots();
        Ok(rs)
    }

    /// Positive roots by closure under adding simple roots, using α-strings:
    /// for a positive root `β ≠ α_i`, `β + α_i` is a root iff
    /// `r − ⟨β, α_i^∨⟩ > 0`, where `r` is the largest `k` with `β − kα_i`
    /// a root.
    fn enumerate_positive_roots(&self) -> Vec<Vec<i64>> {
        let l = self.rank;
        let mut all: Vec<Vec<i64>> = (0..l)
            .map(|i| (0..l).map(|j| (i == j) as i64).collect())
            .collect();
        let mut level = all.clone();
        while !level.is_empty() {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &level {
                for i in 0..l {
                    let is_simple_i = beta.iter().enumerate().all(|(k, &b)| b == (k == i) as i64);
                    if is_simple_i {
                        continue;
                    }
                    let pairing: i64 = (0..l).map(|k| beta[k] * self.cartan[k][i]).sum();
                    let mut r = 0;
                    loop {
                        let mut down = beta.clone();
                        down[i] -= r + 1;
                        if down[i] >= 0 && all.contains(&down) {
                            r += 1;
                        } else {
                            break;
                        }
                    }
                    if r - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            next.sort();
            all.extend(next.iter().cloned());
            level = next;
        }
        all.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        all
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::G2 => "G2".to_string(),
            f => format!("{f}{}", self.rank),
        }
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_matrix(&self) -> Matrix {
        Matrix::from_fn(self.rank, self.rank, |i, j| Rat::int(self.cartan[i][j]))
    }

    pub fn inverse_cartan(&self) -> &Matrix {
        &self.inverse_cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("nonempty")
    }

    /// Index of a positive root given in simple-root coordinates.
    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == root)
    }

    pub fn alpha_to_omega(&self, a: &[Rat]) -> Vector {
        let l = self.rank;
        (0..l)
            .map(|j| {
                (0..l)
                    .filter(|&i| !a[i].is_zero())
                    .map(|i| &a[i] * &Rat::int(self.cartan[i][j]))
                    .sum()
            })
            .collect()
    }

    pub fn alpha_to_omega_i64(&self, a: &[i64]) -> Vec<i64> {
        let l = self.rank;
        (0..l)
            .map(|j| (0..l).map(|i| a[i] * self.cartan[i][j]).sum())
            .collect()
    }

    pub fn omega_to_alpha(&self, w: &[Rat]) -> Vector {
        self.inverse_cartan.vec_mul(w)
    }

    pub fn rho(&self) -> Weight {
        Weight::omega(vec![Rat::ONE; self.rank])
    }

    pub fn fundamental_weight(&self, i: usize) -> Result<Weight> {
        self.check_index(i)?;
        Ok(Weight::omega(
            (0..self.rank).map(|j| Rat::from((j + 1 == i) as i64)).collect(),
        ))
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank,
            });
        }
        Ok(())
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.coords.len() != self.rank {
            return Err(Error::WeightLength {
                got: w.coords.len(),
                expected: self.rank,
            });
        }
        Ok(())
    }

    /// Simple reflection `σ_{α_i}` (1-based `i`); the result keeps the
    /// basis of the input.
    pub fn reflect(&self, w: &Weight, i: usize) -> Result<Weight> {
        self.check_index(i)?;
        self.check_weight(w)?;
        let om = w.to_omega(self);
        let k = om.coords[i - 1].clone();
        let coords: Vector = (0..self.rank)
            .map(|j| &om.coords[j] - &(&k * &Rat::int(self.cartan[i - 1][j])))
            .collect();
        let out = Weight::omega(coords);
        Ok(match w.basis {
            Basis::Omega => out,
            Basis::Alpha => out.to_alpha(self),
        })
    }

    /// Symmetric invariant form `(λ, μ)` with `(α_i, α_i) = 2 d_i`.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Rat {
        let a = a.to_omega(self);
        let b = b.to_alpha(self);
        (0..self.rank)
            .map(|j| &(&a.coords[j] * &Rat::int(self.symmetrizer[j])) * &b.coords[j])
            .sum()
    }

    /// `⟨λ, α^∨⟩` for a positive root `α` in simple-root coordinates.
    pub fn coroot_pairing(&self, lambda_omega: &[Rat], root: &[i64]) -> Rat {
        let num: Rat = (0..self.rank)
            .map(|k| &lambda_omega[k] * &Rat::int(self.symmetrizer[k] * root[k]))
            .sum();
        &num / &self.root_half_norm(root)
    }

    /// `(α, α)/2` in the symmetrizer's scale.
    pub fn root_half_norm(&self, root: &[i64]) -> Rat {
        let l = self.rank;
        let mut s = 0i64;
        for i in 0..l {
            for j in 0..l {
                s += root[i] * root[j] * self.cartan[i][j] * self.symmetrizer[j];
            }
        }
        Rat::new(s, 2)
    }

    pub fn is_dominant_integral(&self, w: &Weight) -> bool {
        w.coords.len() == self.rank
            && w.to_omega(self)
                .coords
                .iter()
                .all(|x| x.is_integer() && !x.is_negative())
    }

    pub fn is_antidominant_integral(&self, w: &Weight) -> bool {
        w.coords.len() == self.rank
            && w.to_omega(self)
                .coords
                .iter()
                .all(|x| x.is_integer() && !x.is_positive())
    }

    /// `w₀(λ)` in ω-coordinates: the lowest weight of the irreducible module
    /// with highest weight `λ`.
    pub fn w0(&self, lambda_omega: &[Rat]) -> Vector {
        let neg: Vector = lambda_omega.iter().map(|x| -x).collect();
        match self.family {
            Family::A => neg.into_iter().rev().collect(),
            Family::D if self.rank % 2 == 1 => {
                let mut v = neg;
                v.swap(self.rank - 2, self.rank - 1);
                v
            }
            _ => neg,
        }
    }

    /// Diagram automorphisms as permutations of simple-root indices
    /// (0-based), including the identity.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let l = self.rank;
        let id: Vec<usize> = (0..l).collect();
        let mut out = vec![id.clone()];
        match self.family {
            Family::A if l > 1 => out.push((0..l).rev().collect()),
            Family::D => {
                let mut s = id.clone();
                s.swap(l - 2, l - 1);
                out.push(s);
                if l == 4 {
                    // Triality: all permutations of {0, 2, 3} fixing 1.
                    for p in [[0, 3, 2], [2, 0, 3], [2, 3, 0], [3, 0, 2], [3, 2, 0]] {
                        let perm = vec![p[0], 1, p[1], p[2]];
                        if !out.contains(&perm) {
                            out.push(perm);
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn expected_count(f: Family, l: usize) -> usize {
        match f {
            Family::A => l * (l + 1) / 2,
            Family::B | Family::C => l * l,
            Family::D => l * (l - 1),
            Family::G2 => 6,
        }
    }

    fn all_systems() -> Vec<RootSystem> {
        let mut v = Vec::new();
        for l in 1..=7 {
            v.push(RootSystem::new(Family::A, l).unwrap());
        }
        for l in 2..=7 {
            v.push(RootSystem::new(Family::B, l).unwrap());
            v.push(RootSystem::new(Family::C, l).unwrap());
        }
        for l in 4..=7 {
            v.push(RootSystem::new(Family::D, l).unwrap());
        }
        v.push(RootSystem::new(Family::G2, 2).unwrap());
        v
    }

    #[test]
    fn invariants_all_families() {
        for rs in all_systems() {
            let c = rs.cartan_matrix();
            assert_eq!(c.mul(rs.inverse_cartan()), Matrix::identity(rs.rank()));
            for i in 0..rs.rank() {
                assert_eq!(rs.cartan()[i][i], 2);
                for j in 0..rs.rank() {
                    assert!(i == j || rs.cartan()[i][j] <= 0);
                    assert!(rs.inverse_cartan()[(i, j)].is_positive(), "{}", rs.name());
                }
            }
            assert_eq!(
                rs.positive_roots().len(),
                expected_count(rs.family(), rs.rank()),
                "{}",
                rs.name()
            );
        }
    }

    #[test]
    fn small_cases() {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(a2.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(
            *a2.inverse_cartan(),
            Matrix::from_fn(2, 2, |i, j| if i == j { q(2, 3) } else { q(1, 3) })
        );
        let c2 = RootSystem::new(Family::C, 2).unwrap();
        assert_eq!(c2.positive_roots().len(), 4);
        assert_eq!(c2.inverse_cartan()[(0, 0)], Rat::ONE);
        let g2 = RootSystem::new(Family::G2, 2).unwrap();
        assert_eq!(g2.positive_roots().len(), 6);
        assert_eq!(g2.highest_root(), &[3, 2]);
        assert_eq!(g2.cartan_matrix().determinant(), Rat::ONE);
        for i in 0..2 {
            for j in 0..2 {
                assert!(g2.inverse_cartan()[(i, j)].is_integer());
                assert!(g2.inverse_cartan()[(i, j)] >= Rat::ONE);
            }
        }
    }

    #[test]
    fn rank_checks_and_alias() {
        assert!(matches!(
            RootSystem::new(Family::D, 2),
            Err(Error::InvalidRank { .. })
        ));
        assert!(RootSystem::new(Family::B, 1).is_err());
        assert!(RootSystem::new(Family::G2, 3).is_err());
        assert!(RootSystem::new(Family::A, 0).is_err());
        let d3 = RootSystem::new(Family::D, 3).unwrap();
        assert_eq!(d3.family(), Family::A);
        assert_eq!(d3.rank(), 3);
    }

    #[test]
    fn reflections() {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        let w1 = a2.fundamental_weight(1).unwrap();
        let r = a2.reflect(&w1, 1).unwrap();
        // ω1 − α1 = (−1, 1) in ω-coordinates.
        assert_eq!(r, Weight::omega_i64(&[-1, 1]));
        let three = Weight::omega_i64(&[3, 0]);
        let r3 = a2.reflect(&three, 1).unwrap().to_alpha(&a2);
        let expect = Weight::alpha(vec![Rat::int(-1), Rat::int(1)]);
        assert_eq!(r3, expect);
        assert!(a2.reflect(&w1, 3).is_err());
        // reflection fixes ω_j for j ≠ i
        assert_eq!(a2.reflect(&a2.fundamental_weight(2).unwrap(), 1).unwrap(), Weight::omega_i64(&[0, 1]));
    }

    #[test]
    fn w0_matches_reflection_descent() {
        for rs in all_systems() {
            let l = rs.rank();
            let lambda: Vector = (0..l).map(|i| Rat::int(i as i64 + 1)).collect();
            // Descend to the anti-dominant chamber by simple reflections.
            let mut w = Weight::omega(lambda.clone());
            while let Some(i) = w.coords.iter().position(|x| x.is_positive()) {
                w = rs.reflect(&w, i + 1).unwrap();
            }
            assert_eq!(w.coords, rs.w0(&lambda), "{}", rs.name());
        }
    }

    #[test]
    fn g2_adjoint_is_omega2() {
        let g2 = RootSystem::new(Family::G2, 2).unwrap();
        let theta: Vec<Rat> = g2.highest_root().iter().map(|&x| Rat::int(x)).collect();
        assert_eq!(g2.alpha_to_omega(&theta), vec![Rat::ZERO, Rat::ONE]);
    }

    proptest! {
        #[test]
        fn reflection_involution(fam in 0usize..5, l in 2usize..6, coords in proptest::collection::vec(-5i64..6, 6), i in 1usize..7) {
            let family = Family::ALL[fam];
            let l = match family { Family::G2 => 2, Family::D => l.max(4), _ => l };
            let rs = RootSystem::new(family, l).unwrap();
            let i = 1 + (i - 1) % l;
            let w = Weight::omega_i64(&coords[..l]);
            let back = rs.reflect(&rs.reflect(&w, i).unwrap(), i).unwrap();
            prop_assert_eq!(&back, &w);
            let a = w.to_alpha(&rs);
            prop_assert_eq!(a.to_omega(&rs), w.clone());
            // reflection preserves the invariant form
            let r = rs.reflect(&w, i).unwrap();
            prop_assert_eq!(rs.inner(&r, &r), rs.inner(&w, &w));
        }
    }
}
