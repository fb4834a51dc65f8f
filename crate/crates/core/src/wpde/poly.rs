//! Sparse multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::Rat;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Rat::ONE)
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly::monomial(m, Rat::ONE)
    }

    pub fn monomial(m: Monomial, c: Rat) -> Poly {
        let nvars = m.len();
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Rat {
        self.terms.get(m).cloned().unwrap_or(Rat::ZERO)
    }

    /// The constant term, or `None` if other terms are present.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::ZERO),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Rat::int(-1))
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, &(c * &Rat::from(m[i] as i64)));
        }
        out
    }

    /// Substitutes values for some variables; `None` keeps the variable.
    pub fn substitute(&self, values: &[Option<Rat>]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let mut c2 = c.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    if m[i] > 0 {
                        c2 *= v.pow(m[i]);
                        m2[i] = 0;
                    }
                }
            }
            out.add_term(m2, &c2);
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut s = Rat::ZERO;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= point[i].pow(e);
                }
            }
            s += t;
        }
        s
    }

    /// Weighted degree of each term, using `weights[i]` for variable `i`.
    pub fn weighted_degrees(&self, weights: &[i64]) -> Vec<i64> {
        self.terms.keys().map(|m| weighted_degree(m, weights)).collect()
    }

    pub fn max_weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        self.weighted_degrees(weights).into_iter().max()
    }

    /// Variables appearing with nonzero exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m[i] > 0))
            .collect();
        v.dedup();
        v
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { p: self, names }
    }
}

pub fn weighted_degree(m: &[u32], weights: &[i64]) -> i64 {
    m.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum()
}

/// All monomials in the first `weights.len()` variables of weighted degree
/// at most `max`, padded to `nvars` variables. Weights must be positive.
pub fn monomials_up_to(weights: &[i64], nvars: usize, max: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: i64, weights: &[i64], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            out.push(cur.clone());
            return;
        }
        let mut e = 0;
        while e as i64 * weights[i] <= left {
            cur[i] = e;
            rec(i + 1, left - e as i64 * weights[i], weights, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    rec(0, max, weights, &mut cur, &mut out);
    out.sort_by(|a, b| {
        weighted_degree(a, weights)
            .cmp(&weighted_degree(b, weights))
            .then_with(|| b.cmp(a))
    });
    out
}

pub struct PolyDisplay<'a> {
    p: &'a Poly,
    names: &'a [String],
}

fn fmt_monomial(m: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        // Lowest total degree first.
        let mut terms: Vec<(&Monomial, &Rat)> = self.p.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            da.cmp(&db).then_with(|| b.0.cmp(a.0))
        });
        for (k, (m, c)) in terms.iter().enumerate() {
            let mono = fmt_monomial(m, self.names);
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(((0u32..3, 0u32..3), -5i64..5), 0..5).prop_map(|ts| {
            let mut p = Poly::zero(2);
            for ((a, b), c) in ts {
                p.add_term(vec![a, b], &Rat::int(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn leibniz(a in small_poly(), b in small_poly()) {
            let lhs = a.mul(&b).derivative(0);
            let rhs = a.derivative(0).mul(&b).add(&a.mul(&b.derivative(0)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn eval_is_ring_hom(a in small_poly(), b in small_poly(), x in -3i64..3, y in -3i64..3) {
            let pt = [Rat::int(x), Rat::int(y)];
            prop_assert_eq!(a.mul(&b).eval(&pt), a.eval(&pt) * b.eval(&pt));
            prop_assert_eq!(a.add(&b).eval(&pt), a.eval(&pt) + b.eval(&pt));
        }
    }

    #[test]
    fn display_and_substitute() {
        let x = Poly::var(2, 0);
        let a = Poly::var(2, 1);
        let p = x.pow(3).mul(&a).scale(&q(1, 3)).add(&Poly::one(2));
        let names = vec!["x".to_string(), "a".to_string()];
        assert_eq!(p.display(&names).to_string(), "1 + 1/3*x^3*a");
        let s = p.substitute(&[None, Some(Rat::int(3))]);
        assert_eq!(s.display(&names).to_string(), "1 + x^3");
    }

    #[test]
    fn weighted_monomials() {
        // x, y weight 1 and z weight 2: degree ≤ 2 gives 1, x, y, x², xy, y², z.
        let ms = monomials_up_to(&[1, 1, 2], 3, 2);
        assert_eq!(ms.len(), 7);
    }
}
