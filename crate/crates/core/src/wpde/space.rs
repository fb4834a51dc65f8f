//! Model spaces: weighted coordinates, parameters and frame fields acting as
//! derivations on polynomials.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::rational::Rat;

use super::poly::{weighted_degree, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinate {
    pub name: String,
    pub weight: i64,
}

/// A derivation `Σ_k coeffs[k] ∂/∂x_k` of weighted degree `-weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameField {
    pub name: String,
    pub coeffs: Vec<Poly>,
    pub weight: i64,
}

/// Indices of frame fields, composed as operators: `[a, b]` means `a ∘ b`.
pub type Word = Vec<usize>;

#[derive(Clone, Debug)]
pub struct ModelSpace {
    coords: Vec<Coordinate>,
    params: Vec<String>,
    fields: Vec<FrameField>,
    /// `commutators[i][j][k]` is the coefficient of `F_k` in `[F_i, F_j]`.
    commutators: Vec<Vec<Vector>>,
}

impl ModelSpace {
    /// Polynomials live in `coords.len() + params.len()` variables, coordinates
    /// first. Field coefficients may only involve coordinates.
    pub fn new(coords: Vec<Coordinate>, params: Vec<String>, fields: Vec<(String, Vec<Poly>)>) -> Result<ModelSpace> {
        let n = coords.len();
        let nvars = n + params.len();
        if let Some(c) = coords.iter().find(|c| c.weight <= 0) {
            return Err(Error::Precondition(format!("coordinate {} has non-positive weight", c.name)));
        }
        let weights: Vec<i64> = coords.iter().map(|c| c.weight).collect();
        let mut out = Vec::with_capacity(fields.len());
        for (name, coeffs) in fields {
            if coeffs.len() != n || coeffs.iter().any(|p| p.nvars() != nvars) {
                return Err(Error::Precondition(format!("field {name} has the wrong number of coefficients")));
            }
            let mut weight = None;
            for (k, p) in coeffs.iter().enumerate() {
                for (m, _) in p.terms() {
                    if m[n..].iter().any(|&e| e > 0) {
                        return Err(Error::Precondition(format!("field {name} depends on a parameter")));
                    }
                    let w = weights[k] - weighted_degree(&m[..n], &weights);
                    match weight {
                        None => weight = Some(w),
                        Some(w0) if w0 != w => {
                            return Err(Error::Precondition(format!("field {name} is not weighted homogeneous")))
                        }
                        _ => {}
                    }
                }
            }
            let weight = weight.ok_or_else(|| Error::Precondition(format!("field {name} is zero")))?;
            if weight <= 0 {
                return Err(Error::Precondition(format!("field {name} does not lower the weighted degree")));
            }
            out.push(FrameField { name, coeffs, weight });
        }
        let mut space = ModelSpace {
            coords,
            params,
            fields: out,
            commutators: Vec::new(),
        };
        space.commutators = space.compute_commutators()?;
        Ok(space)
    }

    pub fn coords(&self) -> &[Coordinate] {
        &self.coords
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn fields(&self) -> &[FrameField] {
        &self.fields
    }

    pub fn ncoords(&self) -> usize {
        self.coords.len()
    }

    pub fn nvars(&self) -> usize {
        self.coords.len() + self.params.len()
    }

    pub fn coord_weights(&self) -> Vec<i64> {
        self.coords.iter().map(|c| c.weight).collect()
    }

    /// Names of all polynomial variables, coordinates then parameters.
    pub fn var_names(&self) -> Vec<String> {
        self.coords
            .iter()
            .map(|c| c.name.clone())
            .chain(self.params.iter().cloned())
            .collect()
    }

    pub fn field_index(&self, name: &str) -> Result<usize> {
        self.fields
            .iter()
            .position(|f| f.name == name)
            .ok_or_else(|| Error::UnknownField(name.to_string()))
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    pub fn word(&self, names: &[&str]) -> Result<Word> {
        names.iter().map(|n| self.field_index(n)).collect()
    }

    pub fn word_weight(&self, w: &[usize]) -> i64 {
        w.iter().map(|&i| self.fields[i].weight).sum()
    }

    pub fn coordinate(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }

    pub fn param(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), self.coords.len() + i)
    }

    pub fn apply_field(&self, i: usize, p: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars());
        for (k, c) in self.fields[i].coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = p.derivative(k);
            if !d.is_zero() {
                out = out.add(&c.mul(&d));
            }
        }
        out
    }

    /// Applies `w[0] ∘ w[1] ∘ … ∘ w[n-1]` to `p`.
    pub fn apply_word(&self, w: &[usize], p: &Poly) -> Poly {
        let mut cur = p.clone();
        for &i in w.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.apply_field(i, &cur);
        }
        cur
    }

    pub fn apply_named(&self, names: &[&str], p: &Poly) -> Result<Poly> {
        Ok(self.apply_word(&self.word(names)?, p))
    }

    /// Coefficients of the derivation `[F_i, F_j]`.
    pub fn bracket_coeffs(&self, i: usize, j: usize) -> Vec<Poly> {
        (0..self.ncoords())
            .map(|k| {
                let a = self.apply_field(i, &self.fields[j].coeffs[k]);
                let b = self.apply_field(j, &self.fields[i].coeffs[k]);
                a.sub(&b)
            })
            .collect()
    }

    fn compute_commutators(&self) -> Result<Vec<Vec<Vector>>> {
        let nf = self.fields.len();
        let mut table = vec![vec![Vec::new(); nf]; nf];
        for i in 0..nf {
            for j in 0..nf {
                let br = self.bracket_coeffs(i, j);
                table[i][j] = self.express_constant(&br).ok_or_else(|| {
                    Error::Precondition(format!(
                        "[{}, {}] is not a constant combination of the frame fields",
                        self.fields[i].name, self.fields[j].name
                    ))
                })?;
            }
        }
        Ok(table)
    }

    /// Writes a derivation as a constant linear combination of frame fields.
    fn express_constant(&self, coeffs: &[Poly]) -> Option<Vector> {
        let nf = self.fields.len();
        let mut monos = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            for (m, _) in p.terms() {
                monos.push((k, m.clone()));
            }
        }
        for f in &self.fields {
            for (k, p) in f.coeffs.iter().enumerate() {
                for (m, _) in p.terms() {
                    monos.push((k, m.clone()));
                }
            }
        }
        monos.sort();
        monos.dedup();
        let mut a = Matrix::zeros(monos.len(), nf);
        let mut b = vec![Rat::ZERO; monos.len()];
        for (r, (k, m)) in monos.iter().enumerate() {
            for (c, f) in self.fields.iter().enumerate() {
                a[(r, c)] = f.coeffs[*k].coeff(m);
            }
            b[r] = coeffs[*k].coeff(m);
        }
        if nf == 0 {
            return b.iter().all(Rat::is_zero).then(Vec::new);
        }
        a.solve(&b)
    }

    pub fn commutators(&self) -> &[Vec<Vector>] {
        &self.commutators
    }

    /// Recomputes every bracket directly and compares with the stored table.
    pub fn check_commutators(&self) -> bool {
        let nf = self.fields.len();
        for i in 0..nf {
            for j in 0..nf {
                let direct = self.bracket_coeffs(i, j);
                let mut table = vec![Poly::zero(self.nvars()); self.ncoords()];
                for (k, c) in self.commutators[i][j].iter().enumerate() {
                    for (t, slot) in table.iter_mut().enumerate() {
                        *slot = slot.add(&self.fields[k].coeffs[t].scale(c));
                    }
                }
                if direct != table {
                    return false;
                }
            }
        }
        true
    }

    pub fn display_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            s.push_str(&self.fields[w[i]].name);
            if j - i > 1 {
                s.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        s
    }
}

/// A linear differential operator `Σ c_t · word_t` with polynomial
/// coefficients written to the left of the fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub terms: Vec<(Poly, Word)>,
}

impl Operator {
    pub fn zero() -> Operator {
        Operator { terms: Vec::new() }
    }

    pub fn word(nvars: usize, w: Word) -> Operator {
        Operator {
            terms: vec![(Poly::one(nvars), w)],
        }
    }

    /// Collects equal words and drops zero terms.
    pub fn normalize(mut self) -> Operator {
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut out: Vec<(Poly, Word)> = Vec::new();
        for (c, w) in self.terms {
            match out.last_mut() {
                Some((c0, w0)) if *w0 == w => *c0 = c0.add(&c),
                _ => out.push((c, w)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        Operator { terms: out }
    }

    pub fn add(&self, other: &Operator) -> Operator {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Operator { terms }.normalize()
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Operator {
        Operator {
            terms: self.terms.iter().map(|(c, w)| (c.neg(), w.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Poly) -> Operator {
        Operator {
            terms: self.terms.iter().map(|(c, w)| (s.mul(c), w.clone())).collect(),
        }
        .normalize()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weighted order: the largest word weight.
    pub fn order(&self, space: &ModelSpace) -> i64 {
        self.terms
            .iter()
            .map(|(_, w)| space.word_weight(w))
            .max()
            .unwrap_or(0)
    }

    /// True when every coefficient is free of coordinates.
    pub fn has_constant_coefficients(&self, space: &ModelSpace) -> bool {
        let n = space.ncoords();
        self.terms
            .iter()
            .all(|(c, _)| c.terms().all(|(m, _)| m[..n].iter().all(|&e| e == 0)))
    }

    pub fn apply(&self, space: &ModelSpace, p: &Poly) -> Poly {
        let mut out = Poly::zero(space.nvars());
        for (c, w) in &self.terms {
            let img = space.apply_word(w, p);
            if !img.is_zero() {
                out = out.add(&c.mul(&img));
            }
        }
        out
    }

    /// Substitutes parameter values into the coefficients.
    pub fn substitute(&self, values: &[Option<Rat>]) -> Operator {
        Operator {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (c.substitute(values), w.clone()))
                .collect(),
        }
        .normalize()
    }

    pub fn display<'a>(&'a self, space: &'a ModelSpace) -> OperatorDisplay<'a> {
        OperatorDisplay { op: self, space }
    }
}

pub struct OperatorDisplay<'a> {
    op: &'a Operator,
    space: &'a ModelSpace,
}

impl fmt::Display for OperatorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.op.is_zero() {
            return write!(f, "0");
        }
        let names = self.space.var_names();
        let mut terms: Vec<&(Poly, Word)> = self.op.terms.iter().collect();
        terms.sort_by(|a, b| {
            self.space
                .word_weight(&b.1)
                .cmp(&self.space.word_weight(&a.1))
                .then_with(|| a.1.cmp(&b.1))
        });
        for (k, (c, w)) in terms.iter().enumerate() {
            let word = self.space.display_word(w);
            let (neg, coeff) = match c.as_constant() {
                Some(r) => (r.is_negative(), if r.abs().is_one() { None } else { Some(r.abs().to_string()) }),
                None if c.len() == 1 => {
                    let (_, r) = c.terms().next().unwrap();
                    let abs = c.scale(&if r.is_negative() { Rat::int(-1) } else { Rat::ONE });
                    (r.is_negative(), Some(abs.display(&names).to_string()))
                }
                None => (false, Some(format!("({})", c.display(&names)))),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (coeff, w.is_empty()) {
                (None, _) => write!(f, "{word}")?,
                (Some(c), true) => write!(f, "{c}")?,
                (Some(c), false) => write!(f, "{c} {word}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    /// Heisenberg frame: X = ∂x + y/2 ∂z, Y = ∂y − x/2 ∂z, Z = ∂z.
    fn heisenberg() -> ModelSpace {
        let n = 3;
        let x = Poly::var(n, 0);
        let y = Poly::var(n, 1);
        let one = Poly::one(n);
        let zero = Poly::zero(n);
        let coords = vec![
            Coordinate { name: "x".into(), weight: 1 },
            Coordinate { name: "y".into(), weight: 1 },
            Coordinate { name: "z".into(), weight: 2 },
        ];
        let fields = vec![
            ("X".to_string(), vec![one.clone(), zero.clone(), y.scale(&q(1, 2))]),
            ("Y".to_string(), vec![zero.clone(), one.clone(), x.scale(&q(-1, 2))]),
            ("Z".to_string(), vec![zero.clone(), zero, one]),
        ];
        ModelSpace::new(coords, Vec::new(), fields).unwrap()
    }

    #[test]
    fn heisenberg_bracket() {
        let s = heisenberg();
        let z = s.coordinate(2);
        let xy = s.apply_named(&["X", "Y"], &z).unwrap();
        let yx = s.apply_named(&["Y", "X"], &z).unwrap();
        assert_eq!(xy.sub(&yx), Poly::constant(3, Rat::int(-1)));
        assert_eq!(s.apply_named(&["X"], &z).unwrap(), s.coordinate(1).scale(&q(1, 2)));
        assert!(s.apply_named(&["Z"], &Poly::one(3)).unwrap().is_zero());
        assert_eq!(s.commutators()[0][1], vec![Rat::ZERO, Rat::ZERO, Rat::int(-1)]);
        assert!(s.check_commutators());
        assert_eq!(s.fields()[2].weight, 2);
    }

    #[test]
    fn unknown_field() {
        let s = heisenberg();
        assert_eq!(s.field_index("W"), Err(Error::UnknownField("W".into())));
    }

    #[test]
    fn word_display() {
        let s = heisenberg();
        assert_eq!(s.display_word(&[0, 0, 1, 2, 2]), "X^2YZ^2");
    }
}
