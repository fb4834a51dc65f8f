//! Moving frames built from solution spaces: the matrix `Θ = Pθ`, the
//! connection matrices `F_i = -(V_i Θ) Θ^{-1}`, the first structure function
//! `χ₁`, and the Wilczynski frame of a scalar linear ODE.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::prolong::{GlGrading, GradedSubspace};
use crate::rational::Rat;

use super::poly::Poly;
use super::space::{ModelSpace, Operator};
use super::system::OperatorSystem;

pub type PolyMatrix = Vec<Vec<Poly>>;

#[derive(Clone, Debug)]
pub struct FrameData {
    pub theta: Vec<Poly>,
    pub p: Vec<Operator>,
    /// `Θ_ij = P_i θ_j`.
    pub theta_matrix: PolyMatrix,
    /// Point (over all variables) where `Θ` is invertible.
    pub evaluation_point: Vec<Rat>,
}

impl FrameData {
    /// Parameters are replaced by the values bound in `sys`. `Θ` must be
    /// square and invertible at the origin or at one of the unit points.
    pub fn new(sys: &OperatorSystem, theta: Vec<Poly>, p: Vec<Operator>) -> Result<FrameData> {
        if theta.len() != p.len() {
            return Err(Error::Precondition(format!(
                "{} solutions but {} operator rows",
                theta.len(),
                p.len()
            )));
        }
        let space = &sys.space;
        let sub = sys.substitution();
        let theta: Vec<Poly> = theta.iter().map(|t| t.substitute(&sub)).collect();
        let p: Vec<Operator> = p.iter().map(|o| o.substitute(&sub)).collect();
        let n = space.ncoords();
        for t in &theta {
            if t.terms().any(|(m, _)| m[n..].iter().any(|&e| e > 0)) {
                let i = (0..space.params().len())
                    .find(|&i| sys.values[i].is_none())
                    .unwrap_or(0);
                return Err(Error::UnboundParameter(space.params()[i].clone()));
            }
        }
        let theta_matrix: PolyMatrix = p
            .iter()
            .map(|op| theta.iter().map(|t| op.apply(space, t)).collect())
            .collect();
        let mut points = vec![vec![Rat::ZERO; space.nvars()]];
        for i in 0..n {
            let mut pt = vec![Rat::ZERO; space.nvars()];
            pt[i] = Rat::ONE;
            points.push(pt);
        }
        for pt in points {
            if eval_matrix(&theta_matrix, &pt).determinant() != Rat::ZERO {
                return Ok(FrameData {
                    theta,
                    p,
                    theta_matrix,
                    evaluation_point: pt,
                });
            }
        }
        Err(Error::Singular("Θ at the origin and every unit point".into()))
    }

    pub fn theta_at_point(&self) -> Matrix {
        eval_matrix(&self.theta_matrix, &self.evaluation_point)
    }

    /// `F = -(V Θ) Θ^{-1}` at the evaluation point, for the frame field `field`.
    pub fn connection(&self, space: &ModelSpace, field: usize) -> Result<Matrix> {
        let theta = self.theta_at_point();
        let vt: PolyMatrix = self
            .theta_matrix
            .iter()
            .map(|row| row.iter().map(|e| space.apply_field(field, e)).collect())
            .collect();
        let rhs = eval_matrix(&vt, &self.evaluation_point).scale(&Rat::int(-1));
        // F Θ = -VΘ  ⇔  Θᵀ Fᵀ = -(VΘ)ᵀ.
        let ft = theta
            .transpose()
            .solve_matrix(&rhs.transpose())
            .ok_or_else(|| Error::Singular("Θ at the evaluation point".into()))?;
        Ok(ft.transpose())
    }
}

pub fn eval_matrix(m: &PolyMatrix, pt: &[Rat]) -> Matrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    Matrix::from_fn(rows, cols, |i, j| m[i][j].eval(pt))
}

#[derive(Clone, Debug)]
pub struct Chi1 {
    /// `F_a` for each `g₋` basis element.
    pub connection: Vec<Matrix>,
    /// `χ₁(x_a)`, a matrix in the complement `ḡ'`.
    pub values: Vec<Matrix>,
}

impl Chi1 {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Matrix::is_zero)
    }
}

/// Degree-one part of the structure function. For each `g₋` element `x_a`
/// (frame field `fields[a]`, degree `degrees[a]`), takes the component of
/// `F_a` of degree `degrees[a] + 1` and projects it to `complement` along
/// `gbar`.
pub fn extract_chi1(
    fd: &FrameData,
    space: &ModelSpace,
    fields: &[usize],
    degrees: &[i64],
    grading: &GlGrading,
    gbar: &GradedSubspace,
    complement: &GradedSubspace,
) -> Result<Chi1> {
    let mut connection = Vec::new();
    let mut values = Vec::new();
    for (&f, &deg) in fields.iter().zip(degrees) {
        let fm = fd.connection(space, f)?;
        let d = Rat::int(deg + 1);
        let comp = grading.components(&fm).remove(&d);
        let n = fm.rows();
        let value = match comp {
            None => Matrix::zeros(n, n),
            Some(v) => {
                let s = gbar.basis_of(&d);
                let c = complement.basis_of(&d);
                let cols: Vec<Vector> = s.iter().chain(&c).map(|b| grading.to_block(&d, b)).collect();
                let x = Matrix::from_cols(v.len(), &cols)
                    .solve(&v)
                    .ok_or_else(|| Error::Precondition("ḡ and its complement do not span gl(V)".into()))?;
                let mut out = Matrix::zeros(n, n);
                for (k, b) in c.iter().enumerate() {
                    out = out.add(&b.scale(&x[s.len() + k]));
                }
                out
            }
        };
        connection.push(fm);
        values.push(value);
    }
    Ok(Chi1 { connection, values })
}

pub fn poly_matmul(a: &PolyMatrix, b: &PolyMatrix, nvars: usize) -> PolyMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = Poly::zero(nvars);
                    for (k, x) in row.iter().enumerate().take(inner) {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            s = s.add(&x.mul(&b[k][j]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Determinant by cofactor expansion; meant for small matrices.
pub fn poly_det(m: &PolyMatrix, nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(nvars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut s = Poly::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: PolyMatrix = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = m[0][j].mul(&poly_det(&minor, nvars));
        s = if j % 2 == 0 { s.add(&t) } else { s.sub(&t) };
    }
    s
}

pub fn poly_adjugate(m: &PolyMatrix, nvars: usize) -> PolyMatrix {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // Cofactor of entry (j, i).
                    let minor: PolyMatrix = m
                        .iter()
                        .enumerate()
                        .filter(|(r, _)| *r != j)
                        .map(|(_, row)| {
                            row.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, x)| x.clone()).collect()
                        })
                        .collect();
                    let d = poly_det(&minor, nvars);
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        d.neg()
                    }
                })
                .collect()
        })
        .collect()
}

/// Companion matrix with first row `p_0..p_k` and ones on the subdiagonal.
pub fn companion(p: &[Poly], nvars: usize) -> PolyMatrix {
    let n = p.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == 0 {
                        p[j].clone()
                    } else if j + 1 == i {
                        Poly::one(nvars)
                    } else {
                        Poly::zero(nvars)
                    }
                })
                .collect()
        })
        .collect()
}

fn truncate(p: &Poly, var: usize, below: Option<u32>) -> Poly {
    match below {
        None => p.clone(),
        Some(b) => {
            let mut out = Poly::zero(p.nvars());
            for (m, c) in p.terms() {
                if m[var] < b {
                    out.add_term(m.clone(), c);
                }
            }
            out
        }
    }
}

#[derive(Clone, Debug)]
pub struct WilczynskiFrame {
    /// Rows `θ^{(k)}, θ^{(k-1)}, …, θ`.
    pub theta_matrix: PolyMatrix,
    /// `dΘ Θ^{-1}`, the companion matrix of the equation.
    pub companion: PolyMatrix,
    pub det: Poly,
}

impl WilczynskiFrame {
    /// `Φ^{-1} dΦ` for `Φ = Θ^{-1}`, available when `det Θ` is a nonzero
    /// constant so that `Φ` is polynomial.
    pub fn maurer_cartan(&self, var: usize) -> Result<PolyMatrix> {
        let nvars = self.det.nvars();
        let d = self
            .det
            .as_constant()
            .filter(|d| !d.is_zero())
            .ok_or_else(|| Error::Precondition("det Θ is not a nonzero constant".into()))?;
        let phi: PolyMatrix = poly_adjugate(&self.theta_matrix, nvars)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.scale(&d.recip())).collect())
            .collect();
        let dphi: PolyMatrix = phi
            .iter()
            .map(|r| r.iter().map(|x| x.derivative(var)).collect())
            .collect();
        Ok(poly_matmul(&self.theta_matrix, &dphi, nvars))
    }
}

/// Builds `Θ` from a fundamental system of `y^{(k+1)} = Σ p_j y^{(k-j)}` in
/// the variable `var` and checks `dΘ = C Θ` with `C` the companion matrix.
/// With `exact_below = Some(b)` the identity is checked on terms of degree
/// `< b` in `var` only, for truncated series solutions.
pub fn wilczynski_frame(p: &[Poly], theta: &[Poly], var: usize, exact_below: Option<u32>) -> Result<WilczynskiFrame> {
    let n = p.len();
    if n == 0 || theta.len() != n {
        return Err(Error::Precondition(format!(
            "need k+1 = {} solutions, got {}",
            n,
            theta.len()
        )));
    }
    let nvars = theta[0].nvars();
    let k = n - 1;
    let mut derivs: Vec<Vec<Poly>> = vec![theta.to_vec()];
    for _ in 0..=k {
        let last = derivs.last().unwrap();
        derivs.push(last.iter().map(|t| t.derivative(var)).collect());
    }
    let theta_matrix: PolyMatrix = (0..n).map(|r| derivs[k - r].clone()).collect();
    let dtheta: PolyMatrix = (0..n).map(|r| derivs[k + 1 - r].clone()).collect();
    let c = companion(p, nvars);
    let ct = poly_matmul(&c, &theta_matrix, nvars);
    for (r1, r2) in dtheta.iter().zip(&ct) {
        for (a, b) in r1.iter().zip(r2) {
            if !truncate(&a.sub(b), var, exact_below).is_zero() {
                return Err(Error::Precondition("θ does not solve the equation".into()));
            }
        }
    }
    let det = poly_det(&theta_matrix, nvars);
    if truncate(&det, var, exact_below.map(|_| 1)).is_zero() {
        return Err(Error::Singular("Wronskian of θ vanishes".into()));
    }
    Ok(WilczynskiFrame {
        theta_matrix,
        companion: c,
        det,
    })
}

/// Taylor polynomials up to `x^{order}` of the fundamental system of
/// `y^{(k+1)} = Σ p_j y^{(k-j)}` with constant (possibly symbolic)
/// coefficients, normalised by `θ_i^{(m)}(0) = δ_{im}`.
pub fn series_fundamental_system(p: &[Poly], var: usize, order: u32) -> Vec<Poly> {
    let n = p.len();
    let nvars = p[0].nvars();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut y: Vec<Poly> = (0..n).map(|m| Poly::constant(nvars, if m == i { Rat::ONE } else { Rat::ZERO })).collect();
        while y.len() <= order as usize {
            let t = y.len() - 1;
            let mut next = Poly::zero(nvars);
            for (j, pj) in p.iter().enumerate() {
                next = next.add(&pj.mul(&y[t - j]));
            }
            y.push(next);
        }
        let mut s = Poly::zero(nvars);
        let mut fact = Rat::ONE;
        for (m, ym) in y.iter().enumerate() {
            if m > 0 {
                fact *= Rat::from(m);
            }
            let mut mono = vec![0u32; nvars];
            mono[var] = m as u32;
            s = s.add(&ym.mul(&Poly::monomial(mono, fact.recip())));
        }
        out.push(s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_order_trivial() {
        // y'' = 0 with θ = (-x, 1).
        let x = Poly::var(1, 0);
        let theta = vec![x.neg(), Poly::one(1)];
        let w = wilczynski_frame(&[Poly::zero(1), Poly::zero(1)], &theta, 0, None).unwrap();
        assert_eq!(w.companion[1][0], Poly::one(1));
        assert!(w.companion[0].iter().all(Poly::is_zero));
        let mc = w.maurer_cartan(0).unwrap();
        assert_eq!(mc[1][0], Poly::constant(1, Rat::int(-1)));
    }

    #[test]
    fn symbolic_first_row() {
        // Variables: x, p0, p1.
        let p = vec![Poly::var(3, 1), Poly::var(3, 2)];
        let theta = series_fundamental_system(&p, 0, 8);
        let w = wilczynski_frame(&p, &theta, 0, Some(7)).unwrap();
        assert_eq!(w.companion[0], p);
    }

    #[test]
    fn rejects_non_solutions() {
        let x = Poly::var(1, 0);
        let theta = vec![x.pow(2), Poly::one(1)];
        assert!(wilczynski_frame(&[Poly::zero(1), Poly::zero(1)], &theta, 0, None).is_err());
        let dup = vec![Poly::one(1), Poly::one(1)];
        assert!(matches!(
            wilczynski_frame(&[Poly::zero(1), Poly::zero(1)], &dup, 0, None),
            Err(Error::Singular(_))
        ));
    }
}
