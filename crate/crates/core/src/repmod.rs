//! Irreducible highest-weight modules, characters and decompositions.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::gradedlie::GradedLieAlgebra;
use crate::linalg::{Matrix, Vector};
use crate::rational::Rat;
use crate::rootsys::{RootSystem, Weight};

/// Chevalley generator action on an irreducible module, built by lowering
/// from a highest-weight vector.
#[derive(Clone, Debug)]
pub struct GeneratorAction {
    pub dim: usize,
    /// `e[i]`, `f[i]` for the simple roots, as dense matrices.
    pub e: Vec<Matrix>,
    pub f: Vec<Matrix>,
    /// Weight of each basis vector in ω-coordinates.
    pub weights: Vec<Vec<i64>>,
    /// Contravariant form: `(e_i u, v) = (u, f_i v)`, `(v_0, v_0) = 1`.
    pub form: Matrix,
}

type SparseVec = Vec<(usize, Rat)>;

fn sparse_add(acc: &mut BTreeMap<usize, Rat>, k: usize, v: Rat) {
    if v.is_zero() {
        return;
    }
    let e = acc.entry(k).or_insert(Rat::ZERO);
    *e += v;
    if e.is_zero() {
        acc.remove(&k);
    }
}

pub fn check_dominant(rs: &RootSystem, lambda: &Weight) -> Result<Vec<i64>> {
    rs.check_weight(lambda)?;
    if !rs.is_dominant_integral(lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    Ok(lambda
        .to_omega(rs)
        .coords
        .iter()
        .map(|x| x.to_i64().expect("integral"))
        .collect())
}

/// Builds `e_i`, `f_i` on `L(λ)` depth by depth. A vector `f_i u` at depth
/// `d` is identified by its images under all `e_j`, which lie at depth
/// `d − 1`; the map `w ↦ (e_j w)_j` is injective away from the highest
/// weight, so independence can be decided there.
pub fn lower_from_highest_weight(rs: &RootSystem, lambda: &[i64]) -> GeneratorAction {
    let l = rs.rank();
    let c = rs.cartan();
    let mut weights: Vec<Vec<i64>> = vec![lambda.to_vec()];
    // e_act[j][w] = e_j w, f_act[i][u] = f_i u (sparse, over global indices)
    let mut e_act: Vec<Vec<SparseVec>> = vec![vec![Vec::new()]; l];
    let mut f_act: Vec<Vec<SparseVec>> = vec![Vec::new(); l];
    let mut form_rows: Vec<SparseVec> = vec![vec![(0, Rat::ONE)]];
    let mut origin: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX)];
    let mut prev: std::ops::Range<usize> = 0..1;
    loop {
        // Candidates f_i u for u in the previous layer, grouped by weight.
        let mut groups: BTreeMap<Vec<i64>, Vec<(usize, usize, SparseVec)>> = BTreeMap::new();
        for u in prev.clone() {
            for i in 0..l {
                let mu: Vec<i64> = (0..l).map(|k| weights[u][k] - c[i][k]).collect();
                let mut img: BTreeMap<usize, Rat> = BTreeMap::new();
                for j in 0..l {
                    // e_j f_i u = f_i e_j u + δ_ij ⟨wt u, α_i^∨⟩ u
                    let mut part: BTreeMap<usize, Rat> = BTreeMap::new();
                    for (x, cx) in &e_act[j][u] {
                        for (y, cy) in &f_act[i][*x] {
                            sparse_add(&mut part, *y, cx * cy);
                        }
                    }
                    if i == j {
                        sparse_add(&mut part, u, Rat::int(weights[u][i]));
                    }
                    let off = j * (prev.end);
                    for (k, v) in part {
                        img.insert(off + k, v);
                    }
                }
                let img: SparseVec = img.into_iter().collect();
                groups.entry(mu).or_default().push((i, u, img));
            }
        }
        let layer_start = weights.len();
        for _ in prev.clone() {
            for fi in f_act.iter_mut() {
                fi.push(Vec::new());
            }
        }
        for (mu, cands) in groups {
            let keys: Vec<usize> = {
                let mut k: Vec<usize> = cands
                    .iter()
                    .flat_map(|(_, _, v)| v.iter().map(|(k, _)| *k))
                    .collect();
                k.sort_unstable();
                k.dedup();
                k
            };
            if keys.is_empty() {
                continue;
            }
            let pos: HashMap<usize, usize> = keys.iter().enumerate().map(|(a, &b)| (b, a)).collect();
            let mut m = Matrix::zeros(keys.len(), cands.len());
            for (col, (_, _, v)) in cands.iter().enumerate() {
                for (k, x) in v {
                    m[(pos[k], col)] = x.clone();
                }
            }
            let (r, pivots) = m.rref();
            let new_ids: Vec<usize> = (0..pivots.len()).map(|t| weights.len() + t).collect();
            for (t, &pc) in pivots.iter().enumerate() {
                let (i, u, ref img) = cands[pc];
                weights.push(mu.clone());
                origin.push((i, u));
                for ej in e_act.iter_mut() {
                    ej.push(Vec::new());
                }
                for (k, x) in img {
                    let j = k / prev.end;
                    let idx = k % prev.end;
                    e_act[j][new_ids[t]].push((idx, x.clone()));
                }
            }
            for (col, (i, u, _)) in cands.iter().enumerate() {
                let mut expr: SparseVec = Vec::new();
                for (t, _) in pivots.iter().enumerate() {
                    let coef = &r[(t, col)];
                    if !coef.is_zero() {
                        expr.push((new_ids[t], coef.clone()));
                    }
                }
                f_act[*i][*u] = expr;
            }
            // Contravariant form on the new weight space.
            for &wa in &new_ids {
                let (ia, ua) = origin[wa];
                let mut row: SparseVec = Vec::new();
                for &wb in &new_ids {
                    // (f_ia ua, wb) = (ua, e_ia wb)
                    let mut s = Rat::ZERO;
                    for (x, cx) in &e_act[ia][wb] {
                        if let Some((_, g)) = form_rows[ua].iter().find(|(k, _)| k == x) {
                            s += cx * g;
                        }
                    }
                    if !s.is_zero() {
                        row.push((wb, s));
                    }
                }
                form_rows.push(row);
            }
        }
        if weights.len() == layer_start {
            break;
        }
        prev = layer_start..weights.len();
    }
    let n = weights.len();
    let to_dense = |cols: &Vec<SparseVec>| {
        let mut m = Matrix::zeros(n, n);
        for (src, v) in cols.iter().enumerate() {
            for (dst, x) in v {
                m[(*dst, src)] = x.clone();
            }
        }
        m
    };
    let e: Vec<Matrix> = e_act.iter().map(to_dense).collect();
    let f: Vec<Matrix> = f_act
        .iter()
        .map(|cols| {
            let mut cols = cols.clone();
            cols.resize(n, Vec::new());
            to_dense(&cols)
        })
        .collect();
    let mut form = Matrix::zeros(n, n);
    for (r, row) in form_rows.iter().enumerate() {
        for (cidx, x) in row {
            form[(r, *cidx)] = x.clone();
        }
    }
    GeneratorAction {
        dim: n,
        e,
        f,
        weights,
        form,
    }
}

/// A module over a graded Lie algebra: one action matrix per algebra basis
/// element and a degree per module basis vector.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub dim: usize,
    pub action: Vec<Matrix>,
    pub degrees: Vec<Rat>,
    pub weights: Vec<Vec<i64>>,
    pub highest_weight: Option<Weight>,
    pub shift: Rat,
    /// Positive definite θ-compatible form, when known.
    pub form: Option<Matrix>,
}

impl GradedModule {
    /// Indices of basis vectors of the given degree.
    pub fn indices_of_degree(&self, d: &Rat) -> Vec<usize> {
        (0..self.dim).filter(|&i| &self.degrees[i] == d).collect()
    }

    pub fn distinct_degrees(&self) -> Vec<Rat> {
        let mut v = self.degrees.clone();
        v.sort();
        v.dedup();
        v
    }

    /// Dimensions per degree, ascending.
    pub fn degree_dims(&self) -> Vec<(Rat, usize)> {
        self.distinct_degrees()
            .into_iter()
            .map(|d| {
                let n = self.indices_of_degree(&d).len();
                (d, n)
            })
            .collect()
    }

    /// Exhaustive check that the action is a representation.
    pub fn check_brackets(&self, g: &GradedLieAlgebra) -> Result<()> {
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let lhs = self.action[i].commutator(&self.action[j]);
                let mut rhs = Matrix::zeros(self.dim, self.dim);
                for (k, c) in g.bracket_basis(i, j) {
                    rhs = rhs.add(&self.action[*k].scale(c));
                }
                if lhs != rhs {
                    return Err(Error::InconsistentModule(format!(
                        "bracket of {} and {} not respected",
                        g.label(i),
                        g.label(j)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check of `g_i · V_j ⊆ V_{i+j}`.
    pub fn check_degrees(&self, g: &GradedLieAlgebra) -> Result<()> {
        for x in 0..g.dim() {
            let dx = Rat::int(g.degree(x));
            let a = &self.action[x];
            for c in 0..self.dim {
                for r in 0..self.dim {
                    if !a[(r, c)].is_zero() && self.degrees[r] != &self.degrees[c] + &dx {
                        return Err(Error::NotGraded(format!(
                            "{} maps degree {} to degree {}",
                            g.label(x),
                            self.degrees[c],
                            self.degrees[r]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Irreducible module with highest weight `λ`. Degrees are the raw
/// eigenvalues of the grading element (shift 0).
pub fn irrep(g: &GradedLieAlgebra, lambda: &Weight) -> Result<GradedModule> {
    let rs = g.root_system();
    let lam = check_dominant(rs, lambda)?;
    let gens = lower_from_highest_weight(rs, &lam);
    let action = g.represent(&gens.e, &gens.f);
    let degrees = gens.weights.iter().map(|w| g.weight_degree(w)).collect();
    Ok(GradedModule {
        dim: gens.dim,
        action,
        degrees,
        weights: gens.weights,
        highest_weight: Some(lambda.to_omega(rs)),
        shift: Rat::ZERO,
        form: Some(gens.form),
    })
}

/// Degree normalization applied by [`grade_module`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shift {
    /// Largest degree becomes −1.
    Default,
    Value(Rat),
}

/// Regrades `v` by the eigenvalues of the grading element plus a shift.
/// The grading element acts diagonally on modules built here; anything
/// else is rejected.
pub fn grade_module(g: &GradedLieAlgebra, v: &GradedModule, shift: Shift) -> Result<GradedModule> {
    let e = g.grading_element_matrix(&v.action);
    let mut eig = Vec::with_capacity(v.dim);
    for r in 0..v.dim {
        for c in 0..v.dim {
            if r != c && !e[(r, c)].is_zero() {
                return Err(Error::InconsistentModule(
                    "grading element is not diagonal in the module basis".into(),
                ));
            }
        }
        eig.push(e[(r, r)].clone());
    }
    let s = match shift {
        Shift::Value(s) => s,
        Shift::Default => {
            let max = eig.iter().max().cloned().unwrap_or(Rat::ZERO);
            &Rat::int(-1) - &max
        }
    };
    let mut out = v.clone();
    out.degrees = eig.iter().map(|x| x + &s).collect();
    out.shift = s;
    Ok(out)
}

/// Weyl dimension formula.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<u64> {
    let lam = check_dominant(rs, lambda)?;
    Ok(weyl_dim_raw(rs, &lam))
}

pub fn weyl_dim_raw(rs: &RootSystem, lambda: &[i64]) -> u64 {
    let lr: Vector = lambda.iter().map(|&x| Rat::int(x + 1)).collect();
    let rho: Vector = vec![Rat::ONE; rs.rank()];
    let mut p = Rat::ONE;
    for a in rs.positive_roots() {
        p = &p * &(&rs.coroot_pairing(&lr, a) / &rs.coroot_pairing(&rho, a));
    }
    p.to_i64().expect("Weyl dimension is a positive integer") as u64
}

/// A character as a map from ω-coordinate weights to multiplicities.
pub type Character = BTreeMap<Vec<i64>, i64>;

fn omega_inner(rs: &RootSystem, a: &[i64], b: &[i64]) -> Rat {
    let wa = Weight::omega_i64(a);
    let wb = Weight::omega_i64(b);
    rs.inner(&wa, &wb)
}

/// Reflects `x` (ω-coords) into the dominant chamber; returns the dominant
/// representative and the parity of the number of reflections used.
pub fn to_dominant(rs: &RootSystem, x: &[i64]) -> (Vec<i64>, bool) {
    let c = rs.cartan();
    let mut v = x.to_vec();
    let mut odd = false;
    while let Some(i) = v.iter().position(|&t| t < 0) {
        let k = v[i];
        for (j, vj) in v.iter_mut().enumerate() {
            *vj -= k * c[i][j];
        }
        odd = !odd;
    }
    (v, odd)
}

/// `λ − μ` as a nonnegative integer combination of simple roots?
fn dominates(rs: &RootSystem, lambda: &[i64], mu: &[i64]) -> bool {
    let diff: Vector = lambda.iter().zip(mu).map(|(a, b)| Rat::int(a - b)).collect();
    rs.omega_to_alpha(&diff)
        .iter()
        .all(|x| x.is_integer() && !x.is_negative())
}

/// Weight multiplicities of `L(λ)` by Freudenthal's formula.
pub fn freudenthal(rs: &RootSystem, lambda: &[i64]) -> Character {
    let l = rs.rank();
    let c = rs.cartan();
    let lr: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
    let norm_lr = omega_inner(rs, &lr, &lr);
    let roots_omega: Vec<Vec<i64>> = rs
        .positive_roots()
        .iter()
        .map(|a| rs.alpha_to_omega_i64(a))
        .collect();
    let mut mult: Character = BTreeMap::new();
    mult.insert(lambda.to_vec(), 1);
    let mut layer = vec![lambda.to_vec()];
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for nu in &layer {
            for i in 0..l {
                let mu: Vec<i64> = (0..l).map(|k| nu[k] - c[i][k]).collect();
                if mult.contains_key(&mu) || next.contains(&mu) {
                    continue;
                }
                let (dom, _) = to_dominant(rs, &mu);
                if dominates(rs, lambda, &dom) {
                    next.push(mu);
                }
            }
        }
        next.sort();
        for mu in &next {
            let mut s = Rat::ZERO;
            for a in &roots_omega {
                let mut k = 1;
                loop {
                    let w: Vec<i64> = (0..l).map(|t| mu[t] + k * a[t]).collect();
                    match mult.get(&w) {
                        Some(&m) => {
                            s += &Rat::int(m) * &omega_inner(rs, &w, a);
                            k += 1;
                        }
                        None => break,
                    }
                }
            }
            let mr: Vec<i64> = mu.iter().map(|x| x + 1).collect();
            let den = &norm_lr - &omega_inner(rs, &mr, &mr);
            let m = &(&Rat::int(2) * &s) / &den;
            let m = m.to_i64().expect("integral multiplicity");
            mult.insert(mu.clone(), m);
        }
        layer = next;
    }
    mult.retain(|_, m| *m != 0);
    mult
}

pub fn character_dim(ch: &Character) -> i64 {
    ch.values().sum()
}

pub fn character_product(a: &Character, b: &Character) -> Character {
    let mut out = Character::new();
    for (wa, ma) in a {
        for (wb, mb) in b {
            let w: Vec<i64> = wa.iter().zip(wb).map(|(x, y)| x + y).collect();
            *out.entry(w).or_insert(0) += ma * mb;
        }
    }
    out.retain(|_, m| *m != 0);
    out
}

/// Character of the weights of a module with the given basis weights.
pub fn character_of_weights(weights: &[Vec<i64>]) -> Character {
    let mut out = Character::new();
    for w in weights {
        *out.entry(w.clone()).or_insert(0) += 1;
    }
    out
}

/// Character of `gl(V) = V ⊗ V*`.
pub fn gl_character(weights: &[Vec<i64>]) -> Character {
    let mut out = Character::new();
    for a in weights {
        for b in weights {
            let w: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            *out.entry(w).or_insert(0) += 1;
        }
    }
    out
}

/// Character of `Λ²V`, which is `o(V)` for self-dual orthogonal `V`.
pub fn o_character(weights: &[Vec<i64>]) -> Character {
    let mut out = Character::new();
    for (i, a) in weights.iter().enumerate() {
        for b in &weights[i + 1..] {
            let w: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            *out.entry(w).or_insert(0) += 1;
        }
    }
    out
}

/// Greedy highest-weight subtraction. Returns highest weights with
/// multiplicities, sorted by weight.
pub fn decompose_character(rs: &RootSystem, ch: &Character) -> Result<Vec<(Vec<i64>, u64)>> {
    let mut rest = ch.clone();
    let mut out: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    let height = |w: &Vec<i64>| -> Rat {
        let v: Vector = w.iter().map(|&x| Rat::int(x)).collect();
        rs.omega_to_alpha(&v).iter().sum()
    };
    while !rest.is_empty() {
        let top = rest
            .iter()
            .filter(|(_, m)| **m != 0)
            .map(|(w, _)| w.clone())
            .max_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)))
            .expect("nonempty");
        let m = rest[&top];
        if m < 0 || top.iter().any(|&x| x < 0) {
            return Err(Error::InconsistentModule(
                "weight multiplicities do not form a character".into(),
            ));
        }
        for (w, k) in freudenthal(rs, &top) {
            let e = rest.entry(w.clone()).or_insert(0);
            *e -= k * m;
            if *e == 0 {
                rest.remove(&w);
            }
        }
        *out.entry(top).or_insert(0) += m as u64;
    }
    Ok(out.into_iter().collect())
}

/// Decomposes a module whose Cartan elements act diagonally. The bracket
/// relations are checked first.
pub fn decompose(g: &GradedLieAlgebra, m: &GradedModule) -> Result<Vec<(Weight, u64)>> {
    m.check_brackets(g)?;
    let rs = g.root_system();
    let mut weights = Vec::with_capacity(m.dim);
    for v in 0..m.dim {
        let mut w = Vec::with_capacity(rs.rank());
        for i in 0..rs.rank() {
            let h = &m.action[g.h_index(i)];
            for r in 0..m.dim {
                if r != v && !h[(r, v)].is_zero() {
                    return Err(Error::InconsistentModule(
                        "Cartan subalgebra is not diagonal in the module basis".into(),
                    ));
                }
            }
            w.push(h[(v, v)].to_i64().ok_or_else(|| {
                Error::InconsistentModule("non-integral weight".into())
            })?);
        }
        weights.push(w);
    }
    let ch = character_of_weights(&weights);
    let parts = decompose_character(rs, &ch)?;
    Ok(parts
        .into_iter()
        .map(|(w, k)| (Weight::omega_i64(&w), k))
        .collect())
}

/// Multiplicity of `L(ν)` in `L(λ) ⊗ L(μ)` by the Brauer–Klimyk rule.
pub fn tensor_multiplicity(rs: &RootSystem, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
    let lam = check_dominant(rs, lambda)?;
    let m = check_dominant(rs, mu)?;
    let n = check_dominant(rs, nu)?;
    let mut total = 0i64;
    for (beta, k) in freudenthal(rs, &m) {
        let x: Vec<i64> = (0..rs.rank()).map(|i| lam[i] + beta[i] + 1).collect();
        let (dom, odd) = to_dominant(rs, &x);
        if dom.contains(&0) {
            continue;
        }
        let target: Vec<i64> = dom.iter().map(|t| t - 1).collect();
        if target == n {
            total += if odd { -k } else { k };
        }
    }
    Ok(total.max(0) as u64)
}
