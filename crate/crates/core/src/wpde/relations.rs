//! Rewrite rules for frame-field words acting on the solution space.
//!
//! The coefficients of the system are constant in the frame, so the solution
//! space is invariant under the translations commuting with the fields. A
//! word therefore vanishes on all solutions iff it vanishes on all solutions
//! at the origin, and rules can be read off from the vectors `(W θ_j)(0)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::rational::Rat;

use super::poly::Poly;
use super::space::{ModelSpace, Word};
use super::system::{stable_solutions, OperatorSystem};

/// `word = Σ coeff · standard`, valid on every solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub word: Word,
    pub rhs: Vec<(Poly, Word)>,
}

impl Rule {
    pub fn is_zero(&self) -> bool {
        self.rhs.is_empty()
    }

    pub fn display<'a>(&'a self, space: &'a ModelSpace) -> RuleDisplay<'a> {
        RuleDisplay { rule: self, space }
    }
}

pub struct RuleDisplay<'a> {
    rule: &'a Rule,
    space: &'a ModelSpace,
}

impl fmt::Display for RuleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = super::space::Operator {
            terms: self.rule.rhs.clone(),
        };
        write!(
            f,
            "{} = {}",
            self.space.display_word(&self.rule.word),
            op.display(self.space)
        )
    }
}

#[derive(Clone, Debug)]
pub struct RelationSet {
    /// Monomials in the fields, in field order, spanning the solution dual.
    pub standard: Vec<Word>,
    /// One rule for every non-standard word of weight at most `order`.
    pub rules: Vec<Rule>,
    pub order: i64,
    /// Weight assigned to the symbolic parameter by homogeneity, if any.
    pub param_weight: Option<(usize, Rat)>,
}

impl RelationSet {
    pub fn rule(&self, word: &[usize]) -> Option<&Rule> {
        self.rules.iter().find(|r| r.word == word)
    }

    pub fn rules_of_weight<'a>(&'a self, space: &'a ModelSpace, w: i64) -> impl Iterator<Item = &'a Rule> {
        self.rules.iter().filter(move |r| space.word_weight(&r.word) == w)
    }
}

/// All words of weight exactly `w`.
pub fn words_of_weight(space: &ModelSpace, w: i64) -> Vec<Word> {
    if w == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, f) in space.fields().iter().enumerate() {
        if f.weight <= w {
            for mut rest in words_of_weight(space, w - f.weight) {
                rest.insert(0, i);
                out.push(rest);
            }
        }
    }
    out
}

/// Ordered monomials `F_0^{e_0} F_1^{e_1} …` of weight exactly `w`, in
/// ascending lexicographic order of the exponent vector.
pub fn pbw_monomials(space: &ModelSpace, w: i64) -> Vec<Word> {
    let weights: Vec<i64> = space.fields().iter().map(|f| f.weight).collect();
    let mut exps = Vec::new();
    fn rec(i: usize, left: i64, weights: &[i64], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e as i64 * weights[i] <= left {
            cur.push(e);
            rec(i + 1, left - e as i64 * weights[i], weights, cur, out);
            cur.pop();
            e += 1;
        }
    }
    rec(0, w, &weights, &mut Vec::new(), &mut exps);
    exps.sort();
    exps.into_iter()
        .map(|e| e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k)).collect())
        .collect()
}

/// Solution data: the vector `((W θ_j)(0))_j` for any word.
struct Evaluator<'a> {
    space: &'a ModelSpace,
    basis: Vec<Poly>,
    origin: Vec<Rat>,
}

impl Evaluator<'_> {
    fn vector(&self, w: &[usize]) -> Vector {
        self.basis
            .iter()
            .map(|p| self.space.apply_word(w, p).eval(&self.origin))
            .collect()
    }
}

/// Greedy choice of independent ordered monomials by ascending weight.
fn standard_monomials(ev: &Evaluator, dim: usize, max_weight: i64) -> Result<(Vec<Word>, Vec<Vector>)> {
    let mut words = Vec::new();
    let mut vecs: Vec<Vector> = Vec::new();
    let mut w = 0;
    while words.len() < dim {
        if w > max_weight {
            return Err(Error::Precondition(
                "solution functionals are not spanned by ordered monomials".into(),
            ));
        }
        for m in pbw_monomials(ev.space, w) {
            let v = ev.vector(&m);
            let mut trial = vecs.clone();
            trial.push(v.clone());
            if crate::linalg::rank_fraction_free(trial, dim) > vecs.len() {
                words.push(m);
                vecs.push(v);
            }
        }
        w += 1;
    }
    Ok((words, vecs))
}

/// Weight of the single symbolic parameter forced by homogeneity of every
/// equation, or `None` if the equations do not determine one consistently.
fn homogeneity_weight(sys: &OperatorSystem, p: usize) -> Option<Rat> {
    let n = sys.space.ncoords();
    let mut weight: Option<Rat> = None;
    for op in sys.operators() {
        let mut terms: Vec<(i64, i64)> = Vec::new();
        for (c, w) in &op.terms {
            for (m, _) in c.terms() {
                terms.push((sys.space.word_weight(w), m[n + p] as i64));
            }
        }
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                let (wi, ki) = terms[i];
                let (wj, kj) = terms[j];
                if ki == kj {
                    if wi != wj {
                        return None;
                    }
                    continue;
                }
                let cand = Rat::new(wi - wj, kj - ki);
                match &weight {
                    None => weight = Some(cand),
                    Some(x) if *x != cand => return None,
                    _ => {}
                }
            }
        }
    }
    weight.filter(Rat::is_positive)
}

fn check_constant_coefficients(sys: &OperatorSystem) -> Result<()> {
    for (i, op) in sys.operators().iter().enumerate() {
        if !op.has_constant_coefficients(&sys.space) {
            return Err(Error::Precondition(format!(
                "equation {} has coordinate-dependent coefficients",
                i + 1
            )));
        }
    }
    Ok(())
}

fn evaluator<'a>(sys: &'a OperatorSystem, cap: i64) -> Result<Evaluator<'a>> {
    let sol = stable_solutions(sys, cap)?;
    Ok(Evaluator {
        space: &sys.space,
        basis: sol.basis,
        origin: vec![Rat::ZERO; sys.space.nvars()],
    })
}

/// Detects lower-order consequences: the polynomial solution space must be
/// as large as that of the principal part.
fn check_compatible(sys: &OperatorSystem, cap: i64) -> Result<()> {
    let ev = evaluator(sys, cap)?;
    let symbol = sys.principal_part();
    let sev = evaluator(&symbol, cap)?;
    let (d, sd) = (ev.basis.len(), sev.basis.len());
    if d == sd {
        return Ok(());
    }
    let (sstd, _) = standard_monomials(&sev, sd, cap)?;
    let mut vecs: Vec<Vector> = Vec::new();
    let mut kept: Vec<Word> = Vec::new();
    for m in sstd {
        let v = ev.vector(&m);
        match express(&vecs, &v) {
            Some(c) => {
                let rhs: Vec<(Poly, Word)> = c
                    .into_iter()
                    .zip(&kept)
                    .filter(|(x, _)| !x.is_zero())
                    .map(|(x, w)| (Poly::constant(sys.space.nvars(), x), w.clone()))
                    .collect();
                let rule = Rule { word: m, rhs };
                return Err(Error::Incompatible(format!(
                    "solution space has dimension {d}, the principal part allows {sd}; derived relation {}",
                    rule.display(&sys.space)
                )));
            }
            None => {
                vecs.push(v);
                kept.push(m);
            }
        }
    }
    Err(Error::Incompatible(format!(
        "solution space has dimension {d}, the principal part allows {sd}"
    )))
}

fn express(basis: &[Vector], v: &[Rat]) -> Option<Vector> {
    if basis.is_empty() {
        return v.iter().all(Rat::is_zero).then(Vec::new);
    }
    Matrix::from_cols(v.len(), basis).solve(v)
}

/// Rewrite rules for every word of weight at most `order` in terms of the
/// standard monomials. A single unbound parameter is kept symbolic when the
/// equations are homogeneous for some positive parameter weight.
pub fn prolong_relations(sys: &OperatorSystem, order: i64) -> Result<RelationSet> {
    check_constant_coefficients(sys)?;
    let n = sys.space.ncoords();
    let ops = sys.operators();
    let unbound: Vec<usize> = (0..sys.values.len())
        .filter(|&i| {
            sys.values[i].is_none()
                && ops
                    .iter()
                    .any(|op| op.terms.iter().any(|(c, _)| c.terms().any(|(m, _)| m[n + i] > 0)))
        })
        .collect();
    let (numeric, symbolic) = match unbound.as_slice() {
        [] => (sys.clone(), None),
        [p] => {
            let w = homogeneity_weight(sys, *p)
                .ok_or_else(|| Error::UnboundParameter(sys.space.params()[*p].clone()))?;
            let mut s = sys.clone();
            s.values[*p] = Some(Rat::ONE);
            (s, Some((*p, w)))
        }
        _ => return Err(Error::UnboundParameter(sys.space.params()[unbound[1]].clone())),
    };
    let cap = 3 * order.max(numeric.max_order()) + 6;
    check_compatible(&numeric, cap)?;
    let ev = evaluator(&numeric, cap)?;
    let dim = ev.basis.len();
    let (standard, vecs) = standard_monomials(&ev, dim, cap)?;
    let nv = sys.space.nvars();
    let mut rules = Vec::new();
    for w in 0..=order {
        for word in words_of_weight(&sys.space, w) {
            if standard.contains(&word) {
                continue;
            }
            let c = express(&vecs, &ev.vector(&word)).expect("standard monomials span the dual");
            let mut rhs = Vec::new();
            for (x, m) in c.into_iter().zip(&standard) {
                if x.is_zero() {
                    continue;
                }
                let coeff = match &symbolic {
                    None => Poly::constant(nv, x),
                    Some((p, pw)) => {
                        let e = Rat::int(w - sys.space.word_weight(m)) / pw.clone();
                        let e = e.to_i64().filter(|e| *e >= 0).ok_or_else(|| {
                            Error::Precondition("relation is not homogeneous in the parameter".into())
                        })?;
                        sys.space.param(*p).pow(e as u32).scale(&x)
                    }
                };
                rhs.push((coeff, m.clone()));
            }
            rules.push(Rule { word, rhs });
        }
    }
    Ok(RelationSet {
        standard,
        rules,
        order,
        param_weight: symbolic,
    })
}
