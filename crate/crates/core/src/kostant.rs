//! First cohomology of `g₋` with coefficients in an irreducible module,
//! predicted from root data alone.
//!
//! Weights here are lowest weights in ω-coordinates with non-positive
//! entries. For `α_i ∈ Σ`, `H¹` has one `g₀`-irreducible component with
//! lowest weight `σ_i(μ) + α_i`, sitting in degree `deg σ_i(μ) + 1`, where
//! `deg` sums the α-coordinates over `Σ`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::rootsys::{Family, RootSystem, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Component {
    /// 1-based index of the simple root in `Σ`.
    pub reflecting_root: usize,
    /// Lowest weight of the `g₀`-module, ω-coordinates.
    pub lowest_weight: Weight,
    pub degree: Rat,
    /// Dimension of the `g₀`-module.
    pub dim: u64,
}

fn check_sigma(rs: &RootSystem, sigma: &[usize]) -> Result<()> {
    if sigma.is_empty() {
        return Err(Error::EmptySigma);
    }
    for &i in sigma {
        rs.check_index(i)?;
    }
    Ok(())
}

/// `Σ_{k ∈ Σ} p_{jk}` for row `j` (0-based) of the inverse Cartan matrix.
fn sigma_row_sum(rs: &RootSystem, sigma: &[usize], j: usize) -> Rat {
    let inv = rs.inverse_cartan();
    sigma.iter().map(|&k| inv[(j, k - 1)].clone()).sum()
}

/// Degree of a weight given in ω-coordinates.
pub fn weight_degree(rs: &RootSystem, sigma: &[usize], w_omega: &[Rat]) -> Rat {
    let a = rs.omega_to_alpha(w_omega);
    sigma.iter().map(|&k| a[k - 1].clone()).sum()
}

/// Dimension of the irreducible `g₀`-module with lowest weight `ν`.
/// The Levi factor has simple roots outside `Σ`; ρ of the full algebra
/// pairs to 1 with every Levi simple coroot, so it can stand in for the
/// Levi ρ in the Weyl product.
pub fn levi_dim(rs: &RootSystem, sigma: &[usize], nu_omega: &[Rat]) -> u64 {
    let top: Vec<Rat> = nu_omega.iter().map(|x| -x).collect();
    let rho = vec![Rat::ONE; rs.rank()];
    let mut num = Rat::ONE;
    for root in rs.positive_roots() {
        if sigma.iter().any(|&k| root[k - 1] != 0) {
            continue;
        }
        let shifted: Vec<Rat> = top.iter().zip(&rho).map(|(a, b)| a + b).collect();
        num *= rs.coroot_pairing(&shifted, root) / rs.coroot_pairing(&rho, root);
    }
    num.to_i64().expect("Weyl product is integral") as u64
}

/// One component per `α ∈ Σ`.
pub fn h1_components(rs: &RootSystem, sigma: &[usize], mu: &Weight) -> Result<Vec<H1Component>> {
    check_sigma(rs, sigma)?;
    rs.check_weight(mu)?;
    if !rs.is_antidominant_integral(mu) {
        return Err(Error::NotAntiDominant(mu.to_string()));
    }
    let mu = mu.to_omega(rs);
    let mut sorted = sigma.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = Vec::with_capacity(sorted.len());
    for &i in &sorted {
        let refl = rs.reflect(&mu, i)?;
        let degree = &weight_degree(rs, &sorted, &refl.coords) + &Rat::ONE;
        let alpha_i: Vec<i64> = rs.cartan()[i - 1].clone();
        let lowest: Vec<Rat> = refl
            .coords
            .iter()
            .zip(&alpha_i)
            .map(|(a, &b)| a + &Rat::int(b))
            .collect();
        out.push(H1Component {
            reflecting_root: i,
            dim: levi_dim(rs, &sorted, &lowest),
            lowest_weight: Weight::omega(lowest),
            degree,
        });
    }
    Ok(out)
}

/// The degree of the component attached to `α_i` expanded as in the
/// rigidity argument: `Σ_{j≠i} μ_j P_j + μ_i (P_i − 1)` plus one, where
/// `P_j = Σ_{k∈Σ} p_{jk}`.
pub fn degree_by_formula(rs: &RootSystem, sigma: &[usize], mu_omega: &[Rat], i: usize) -> Rat {
    let mut s = Rat::ZERO;
    for (j, m) in mu_omega.iter().enumerate() {
        let p = sigma_row_sum(rs, sigma, j);
        if j + 1 == i {
            s += m * &(&p - &Rat::ONE);
        } else {
            s += m * &p;
        }
    }
    s + Rat::ONE
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rigidity {
    /// `H¹₊` vanishes for every nontrivial irreducible coefficient module.
    Rigid,
    Exceptional,
}

impl fmt::Display for Rigidity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rigidity::Rigid => write!(f, "rigid"),
            Rigidity::Exceptional => write!(f, "exceptional"),
        }
    }
}

/// Rigid iff `Σ_{k∈Σ} p_{ik} − 1 > 0` for every `α_i ∈ Σ`.
pub fn rigidity_classify(rs: &RootSystem, sigma: &[usize]) -> Result<Rigidity> {
    check_sigma(rs, sigma)?;
    let rigid = sigma
        .iter()
        .all(|&i| (&sigma_row_sum(rs, sigma, i - 1) - &Rat::ONE).is_positive());
    Ok(if rigid { Rigidity::Rigid } else { Rigidity::Exceptional })
}

/// Nonempty subsets of `1..=rank` with at most `max_size` elements, in
/// lexicographic order.
pub fn subsets(rank: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, rank: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..=rank {
            cur.push(i);
            rec(i + 1, rank, max, cur, out);
            cur.pop();
        }
    }
    rec(1, rank, max_size, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// The known exceptional gradings for a family and rank, closed under
/// diagram automorphisms. `B₂` and `C₂` are the same algebra with the two
/// simple roots swapped, so both of their one-element gradings appear.
pub fn known_exceptional(family: Family, rank: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    match family {
        Family::A => {
            out.insert(vec![1]);
            out.insert(vec![rank]);
            if rank >= 2 {
                out.insert(vec![1, rank]);
            }
            if rank == 3 {
                out.insert(vec![2]);
            }
        }
        Family::B | Family::C => {
            out.insert(vec![1]);
            if rank == 2 {
                out.insert(vec![2]);
            }
        }
        Family::D => {
            out.insert(vec![1]);
            if rank == 4 {
                out.insert(vec![3]);
                out.insert(vec![4]);
            }
        }
        Family::G2 => {}
    }
    out
}

/// Which reduced case an exceptional grading falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExceptionalCase {
    /// `(A_l, {α_1})` or its mirror `(A_l, {α_l})`.
    AEnd,
    /// `B_l`, `C_l`, `D_l` with a node where `p_{ii} = 1`, and `(A_3, {α_2})`.
    UnitDiagonal,
    /// `(A_l, {α_1, α_l})`.
    ABothEnds,
}

fn exceptional_case(rs: &RootSystem, sigma: &[usize]) -> Option<ExceptionalCase> {
    let l = rs.rank();
    let mut s = sigma.to_vec();
    s.sort_unstable();
    s.dedup();
    match rs.family() {
        Family::A if l >= 2 && s == [1, l] => Some(ExceptionalCase::ABothEnds),
        Family::A if s == [1] || s == [l] => Some(ExceptionalCase::AEnd),
        Family::A if l == 3 && s == [2] => Some(ExceptionalCase::UnitDiagonal),
        Family::B | Family::C | Family::D if s.len() == 1 => {
            let i = s[0] - 1;
            rs.inverse_cartan()[(i, i)].is_one().then_some(ExceptionalCase::UnitDiagonal)
        }
        _ => None,
    }
}

/// Human readable form of the condition on `μ` under which positive
/// degree `H¹` occurs.
pub fn positive_condition(rs: &RootSystem, sigma: &[usize]) -> Option<String> {
    let l = rs.rank();
    let case = exceptional_case(rs, sigma)?;
    Some(match case {
        ExceptionalCase::AEnd => {
            if sigma == [1] {
                format!("N = sum_(j=2..{l}) ({}-j) mu_j - mu_1 >= 0, degree N/{}+1", l + 1, l + 1)
            } else {
                format!("N = sum_(j=1..{}) j mu_j - mu_{l} >= 0, degree N/{}+1", l - 1, l + 1)
            }
        }
        ExceptionalCase::UnitDiagonal => {
            format!("mu_j = 0 for j != {}, degree 1", sigma[0])
        }
        ExceptionalCase::ABothEnds => format!("mu supported on omega_1 or on omega_{l} only, degree 1"),
    })
}

/// Positive-degree part of `H¹` for an exceptional grading. Degrees must
/// come out integral; anything else is reported as an error since it
/// signals a mismatched convention.
pub fn positive_h1_table(rs: &RootSystem, sigma: &[usize], mu: &Weight) -> Result<Vec<H1Component>> {
    if rigidity_classify(rs, sigma)? != Rigidity::Exceptional {
        return Err(Error::Precondition(format!(
            "({}, {:?}) is not an exceptional grading",
            rs.name(),
            sigma
        )));
    }
    let comps = h1_components(rs, sigma, mu)?;
    let mut out = Vec::new();
    for c in comps {
        if !c.degree.is_integer() {
            return Err(Error::NonIntegralDegree(format!(
                "component for alpha_{} has degree {}",
                c.reflecting_root, c.degree
            )));
        }
        if c.degree >= Rat::ONE {
            out.push(c);
        }
    }
    Ok(out)
}

/// Positive-degree components for any grading (empty when rigid and `μ`
/// is nontrivial).
pub fn positive_components(rs: &RootSystem, sigma: &[usize], mu: &Weight) -> Result<Vec<H1Component>> {
    Ok(h1_components(rs, sigma, mu)?
        .into_iter()
        .filter(|c| c.degree >= Rat::ONE)
        .collect())
}
