//! Linear operator systems, their polynomial solution spaces and basis
//! verification.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::rational::Rat;

use super::poly::{monomials_up_to, Monomial, Poly};
use super::space::{ModelSpace, Operator};

#[derive(Clone, Debug)]
pub struct Equation {
    pub lhs: Operator,
    pub rhs: Operator,
}

impl Equation {
    /// `lhs - rhs`, the operator that must annihilate solutions.
    pub fn operator(&self) -> Operator {
        self.lhs.sub(&self.rhs)
    }
}

#[derive(Clone, Debug)]
pub struct OperatorSystem {
    pub space: ModelSpace,
    pub equations: Vec<Equation>,
    /// Numeric values of parameters; `None` leaves a parameter symbolic.
    pub values: Vec<Option<Rat>>,
}

impl OperatorSystem {
    pub fn new(space: ModelSpace, equations: Vec<Equation>) -> OperatorSystem {
        let values = vec![None; space.params().len()];
        OperatorSystem {
            space,
            equations,
            values,
        }
    }

    pub fn set_param(&mut self, name: &str, value: Rat) -> Result<()> {
        let i = self
            .space
            .param_index(name)
            .ok_or_else(|| Error::Precondition(format!("unknown parameter `{name}`")))?;
        self.values[i] = Some(value);
        Ok(())
    }

    pub fn with_param(mut self, name: &str, value: Rat) -> Result<OperatorSystem> {
        self.set_param(name, value)?;
        Ok(self)
    }

    pub fn operators(&self) -> Vec<Operator> {
        self.equations.iter().map(Equation::operator).collect()
    }

    pub fn orders(&self) -> Vec<i64> {
        self.operators().iter().map(|op| op.order(&self.space)).collect()
    }

    pub fn max_order(&self) -> i64 {
        self.orders().into_iter().max().unwrap_or(0)
    }

    /// Substitution vector over all variables: coordinates untouched,
    /// parameters replaced by their values.
    pub fn substitution(&self) -> Vec<Option<Rat>> {
        let mut v = vec![None; self.space.ncoords()];
        v.extend(self.values.iter().cloned());
        v
    }

    fn bound_operators(&self) -> Result<Vec<Operator>> {
        let ops = self.operators();
        let n = self.space.ncoords();
        for (i, v) in self.values.iter().enumerate() {
            let used = ops
                .iter()
                .any(|op| op.terms.iter().any(|(c, _)| c.terms().any(|(m, _)| m[n + i] > 0)));
            if v.is_none() && used {
                return Err(Error::UnboundParameter(self.space.params()[i].clone()));
            }
        }
        let sub = self.substitution();
        Ok(self.operators().iter().map(|op| op.substitute(&sub)).collect())
    }

    /// The system keeping only the top-order words of each equation.
    pub fn principal_part(&self) -> OperatorSystem {
        let equations = self
            .operators()
            .into_iter()
            .map(|op| {
                let ord = op.order(&self.space);
                let lhs = Operator {
                    terms: op
                        .terms
                        .into_iter()
                        .filter(|(_, w)| self.space.word_weight(w) == ord)
                        .collect(),
                };
                Equation {
                    lhs,
                    rhs: Operator::zero(),
                }
            })
            .collect();
        OperatorSystem {
            space: self.space.clone(),
            equations,
            values: self.values.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolutionSpace {
    pub basis: Vec<Poly>,
    pub truncation_degree: i64,
    pub stable: bool,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solutions of weighted degree at most `n`, as coefficient vectors over
/// `monos`.
fn solve_truncated(sys: &OperatorSystem, ops: &[Operator], n: i64) -> (Vec<Monomial>, Vec<Vector>) {
    let space = &sys.space;
    let weights = space.coord_weights();
    let monos = monomials_up_to(&weights, space.nvars(), n);
    let nm = monos.len();
    let mut kernel: Vec<Vector> = (0..nm)
        .map(|i| {
            let mut v = vec![Rat::ZERO; nm];
            v[i] = Rat::ONE;
            v
        })
        .collect();
    for op in ops {
        if kernel.is_empty() {
            break;
        }
        let images: Vec<Poly> = monos
            .iter()
            .map(|m| op.apply(space, &Poly::monomial(m.clone(), Rat::ONE)))
            .collect();
        let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
        for p in &images {
            for (m, _) in p.terms() {
                let next = index.len();
                index.entry(m.clone()).or_insert(next);
            }
        }
        if index.is_empty() {
            continue;
        }
        // Column j: image of the j-th kernel vector.
        let cols: Vec<Vector> = kernel
            .iter()
            .map(|k| {
                let mut col = vec![Rat::ZERO; index.len()];
                for (j, c) in k.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (m, v) in images[j].terms() {
                        col[index[m]] += &(c * v);
                    }
                }
                col
            })
            .collect();
        let null = Matrix::from_cols(index.len(), &cols).kernel();
        kernel = null
            .iter()
            .map(|x| {
                let mut v = vec![Rat::ZERO; nm];
                for (c, k) in x.iter().zip(&kernel) {
                    if !c.is_zero() {
                        crate::linalg::axpy(&mut v, c, k);
                    }
                }
                v
            })
            .collect();
    }
    (monos, kernel)
}

fn to_poly(nvars: usize, monos: &[Monomial], v: &[Rat]) -> Poly {
    let mut p = Poly::zero(nvars);
    for (m, c) in monos.iter().zip(v) {
        p.add_term(m.clone(), c);
    }
    p
}

/// Canonical basis: reduced echelon form with pivots on the lowest
/// monomials.
fn canonical_basis(nvars: usize, monos: &[Monomial], kernel: Vec<Vector>) -> Vec<Poly> {
    let sub = Subspace::span(monos.len(), &kernel);
    sub.basis().iter().map(|v| to_poly(nvars, monos, v)).collect()
}

/// Polynomial solutions of weighted degree at most `n`. Every parameter
/// used by an equation must have a value.
pub fn formal_solutions(sys: &OperatorSystem, n: i64) -> Result<SolutionSpace> {
    if n < sys.max_order() {
        return Err(Error::Precondition(format!(
            "truncation degree {n} is below the system order {}",
            sys.max_order()
        )));
    }
    let ops = sys.bound_operators()?;
    let (monos, kernel) = solve_truncated(sys, &ops, n);
    let (_, next) = solve_truncated(sys, &ops, n + 1);
    let stable = next.len() == kernel.len();
    Ok(SolutionSpace {
        basis: canonical_basis(sys.space.nvars(), &monos, kernel),
        truncation_degree: n,
        stable,
    })
}

/// Raises the truncation degree until the dimension is unchanged over two
/// further steps, up to `max_n`.
pub fn stable_solutions(sys: &OperatorSystem, max_n: i64) -> Result<SolutionSpace> {
    let ops = sys.bound_operators()?;
    let start = sys.max_order().max(1);
    let mut dims = Vec::new();
    for n in start..=max_n + 2 {
        let (_, k) = solve_truncated(sys, &ops, n);
        dims.push(k.len());
        let l = dims.len();
        if l >= 3 && dims[l - 1] == dims[l - 2] && dims[l - 2] == dims[l - 3] {
            return formal_solutions(sys, n - 2);
        }
    }
    Err(Error::Precondition(format!(
        "solution space did not stabilise up to degree {max_n}"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub equation: usize,
    pub element: usize,
    pub residual: Poly,
}

#[derive(Clone, Debug)]
pub struct BasisReport {
    pub residuals: Vec<Residual>,
    pub independent: bool,
}

impl BasisReport {
    pub fn ok(&self) -> bool {
        self.residuals.is_empty() && self.independent
    }
}

/// Checks that every equation annihilates every element, with parameters
/// kept symbolic, and that the elements are linearly independent.
pub fn verify_basis(sys: &OperatorSystem, basis: &[Poly]) -> BasisReport {
    let mut residuals = Vec::new();
    for (ei, op) in sys.operators().iter().enumerate() {
        for (bi, p) in basis.iter().enumerate() {
            let r = op.apply(&sys.space, p);
            if !r.is_zero() {
                residuals.push(Residual {
                    equation: ei,
                    element: bi,
                    residual: r,
                });
            }
        }
    }
    BasisReport {
        residuals,
        independent: independent(&sys.space, basis),
    }
}

/// Linear independence over the coordinates, testing a few deterministic
/// parameter values. Full rank at any one value proves independence.
fn independent(space: &ModelSpace, basis: &[Poly]) -> bool {
    let n = space.ncoords();
    let np = space.params().len();
    let trials: Vec<i64> = if np == 0 { vec![0] } else { vec![1, 2, 3, -1, 5] };
    for t in trials {
        let mut sub = vec![None; n];
        sub.extend((0..np).map(|k| Some(Rat::int(t + k as i64))));
        let polys: Vec<Poly> = basis.iter().map(|p| p.substitute(&sub)).collect();
        let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
        for p in &polys {
            for (m, _) in p.terms() {
                let next = index.len();
                index.entry(m.clone()).or_insert(next);
            }
        }
        let rows: Vec<Vector> = polys
            .iter()
            .map(|p| {
                let mut r = vec![Rat::ZERO; index.len()];
                for (m, c) in p.terms() {
                    r[index[m]] = c.clone();
                }
                r
            })
            .collect();
        if crate::linalg::rank_fraction_free(rows, index.len()) == basis.len() {
            return true;
        }
    }
    false
}
