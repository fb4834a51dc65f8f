//! The adjoint module of `sp(4)` used for the deformation `X^3 u = a Y^2 u`.
//!
//! The classical basis `A_1..A_10` has entries with `1/√2`. We use
//! `B_i = A_i` except `B_5 = A_5/√2`, `B_6 = A_6/√2`; the structure constants
//! of `B` are rational and the operator column of the `ea` fixture is
//! written for the dual basis `B_i^*`. `E_74` is unchanged by the rescaling.

use crate::cohomology::{build_complex, CochainComplex, CoefficientModule, NilpotentAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::prolong::{relative_prolongation, trace_complement, GlGrading, GradedSubspace};
use crate::rational::{q, Rat};

use super::frame::{extract_chi1, Chi1, FrameData};
use super::fixtures::fixture;
use super::system::stable_solutions;

/// Grading of `B_1..B_10`.
pub const DEGREES: [i64; 10] = [2, 1, 1, 0, 0, 0, 0, -1, -1, -2];

/// Indices (0-based) of the `g₋` basis `B_8, B_9, B_10`, matched with the
/// frame fields `X, Y, Z`.
pub const G_MINUS: [usize; 3] = [7, 8, 9];

fn e(i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(4, 4);
    m[(i - 1, j - 1)] = Rat::ONE;
    m
}

/// Odd-degree elements carry a factor `√2` between `B_i` and the rational
/// matrix `M_i`.
fn odd(i: usize) -> bool {
    DEGREES[i].rem_euclid(2) == 1
}

/// `M_i = √2^{π_i} B_i` as 4×4 rational matrices, `π_i = 1` on odd degrees.
pub fn rational_matrices() -> Vec<Matrix> {
    let half = q(1, 2);
    vec![
        e(1, 4),
        e(1, 3).add(&e(2, 4)),
        e(1, 2).sub(&e(3, 4)),
        e(2, 3),
        e(1, 1).sub(&e(4, 4)).scale(&half),
        e(2, 2).sub(&e(3, 3)).scale(&half),
        e(3, 2),
        e(2, 1).sub(&e(4, 3)),
        e(3, 1).add(&e(4, 2)),
        e(4, 1),
    ]
}

/// `c[i][j][k]`: coefficient of `B_k` in `[B_i, B_j]`.
pub fn structure_constants() -> Vec<Vec<Vector>> {
    let m = rational_matrices();
    let flat: Vec<Vector> = m.iter().map(Matrix::flatten).collect();
    let basis = Matrix::from_cols(16, &flat);
    let mut c = vec![vec![Vec::new(); 10]; 10];
    for i in 0..10 {
        for j in 0..10 {
            let d = basis
                .solve(&m[i].commutator(&m[j]).flatten())
                .expect("sp(4) is closed under brackets");
            c[i][j] = d
                .into_iter()
                .enumerate()
                .map(|(k, x)| if odd(i) && odd(j) && !odd(k) { x * q(1, 2) } else { x })
                .collect();
        }
    }
    c
}

/// `ad(B_i)` in the basis `B`, column `j` holding `[B_i, B_j]`.
pub fn adjoint() -> Vec<Matrix> {
    let c = structure_constants();
    (0..10)
        .map(|i| Matrix::from_fn(10, 10, |k, j| c[i][j][k].clone()))
        .collect()
}

/// Matrix unit `E_ij` of `gl(10)`, 1-based as in the classical notation.
pub fn unit(i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(10, 10);
    m[(i - 1, j - 1)] = Rat::ONE;
    m
}

/// Everything needed to read off `χ₁` of the deformed system: the adjoint
/// image, its prolongation in `gl(10)`, the trace complement and the
/// cochain complex `C(g₋, gl(10)/ḡ)`.
pub struct Sp4Setup {
    pub ad: Vec<Matrix>,
    pub grading: GlGrading,
    pub prolongation: GradedSubspace,
    pub complement: GradedSubspace,
    pub complex: CochainComplex,
}

impl Sp4Setup {
    pub fn new() -> Result<Sp4Setup> {
        let ad = adjoint();
        let vdeg: Vec<Rat> = DEGREES.iter().map(|&d| Rat::int(d)).collect();
        let grading = GlGrading::new(&vdeg);
        let gm: Vec<Matrix> = G_MINUS.iter().map(|&i| ad[i].clone()).collect();
        let g_minus = GradedSubspace::span(&grading, &gm)?;
        let gl = GradedSubspace::gl(&grading);
        let prolongation = relative_prolongation(&g_minus, &gl)?;
        let complement = trace_complement(&prolongation, &gl)?;
        let degs: Vec<i64> = G_MINUS.iter().map(|&i| DEGREES[i]).collect();
        let labels = vec!["X".to_string(), "Y".to_string(), "Z".to_string()];
        let nil = NilpotentAlgebra::from_matrices(&gm, &degs, Matrix::identity(3), labels)?;
        let u = CoefficientModule::from_subspace(&complement, &gm, &Matrix::identity(10))?;
        let complex = build_complex(&nil, &u, 2)?;
        Ok(Sp4Setup {
            ad,
            grading,
            prolongation,
            complement,
            complex,
        })
    }

    pub fn g_minus(&self) -> Vec<Matrix> {
        G_MINUS.iter().map(|&i| self.ad[i].clone()).collect()
    }

    /// Frame data of the `ea` fixture at parameter value `a`.
    pub fn frame_data(&self, a: &Rat) -> Result<FrameData> {
        let f = fixture("ea")?;
        let sys = f.system.with_param("a", a.clone())?;
        let sol = stable_solutions(&sys, 12)?;
        FrameData::new(&sys, sol.basis, f.frame)
    }

    /// `χ₁` of the deformed system: frame fields `X, Y, Z` stand for
    /// `B_8, B_9, B_10`.
    pub fn chi1(&self, a: &Rat) -> Result<Chi1> {
        let f = fixture("ea")?;
        let fd = self.frame_data(a)?;
        let space = &f.system.space;
        let fields = vec![space.field_index("X")?, space.field_index("Y")?, space.field_index("Z")?];
        let degs: Vec<i64> = G_MINUS.iter().map(|&i| DEGREES[i]).collect();
        extract_chi1(&fd, space, &fields, &degs, &self.grading, &self.prolongation, &self.complement)
    }

    /// Coordinates of a complement element in the coefficient module.
    pub fn module_coords(&self, m: &Matrix) -> Result<Vector> {
        let basis = self.complement.basis();
        let mut out = vec![Rat::ZERO; basis.len()];
        let mut offset = 0;
        for d in self.complement.degrees() {
            let comp = self.complement.component(&d).expect("listed degree");
            let v = self.grading.to_block(&d, m);
            let c = comp
                .coords(&v)
                .ok_or_else(|| Error::Precondition("matrix is not in the complement".into()))?;
            for (k, x) in c.into_iter().enumerate() {
                out[offset + k] = x;
            }
            offset += comp.dim();
        }
        Ok(out)
    }

    /// The cochain in `C^1_p` given by its values on `X, Y, Z`.
    pub fn cochain(&self, values: &[Matrix]) -> Result<(Rat, Vector)> {
        let coords: Vec<Vector> = values.iter().map(|m| self.module_coords(m)).collect::<Result<_>>()?;
        let enc = self.complex.encode_cochain1(&coords);
        match enc.len() {
            0 => Ok((Rat::ONE, vec![Rat::ZERO; self.complex.cochain_dim(1, &Rat::ONE)])),
            1 => Ok(enc.into_iter().next().unwrap()),
            _ => Err(Error::Precondition("cochain is not homogeneous".into())),
        }
    }

    /// `γ = π(E_74) ⊗ B_8^*`, with `π` the projection onto the complement.
    pub fn gamma(&self) -> Result<(Rat, Vector)> {
        let u = project(&self.grading, &self.prolongation, &self.complement, &unit(7, 4))?;
        let z = Matrix::zeros(10, 10);
        self.cochain(&[u, z.clone(), z])
    }
}

/// Projection onto `complement` along `sub` of a matrix, degree by degree.
pub fn project(grading: &GlGrading, sub: &GradedSubspace, complement: &GradedSubspace, m: &Matrix) -> Result<Matrix> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for (d, v) in grading.components(m) {
        let s = sub.basis_of(&d);
        let c = complement.basis_of(&d);
        let cols: Vec<Vector> = s.iter().chain(&c).map(|b| grading.to_block(&d, b)).collect();
        let x = Matrix::from_cols(v.len(), &cols)
            .solve(&v)
            .ok_or_else(|| Error::Precondition("subspaces do not span gl(V)".into()))?;
        for (k, b) in c.iter().enumerate() {
            out = out.add(&b.scale(&x[s.len() + k]));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_is_a_representation() {
        let ad = adjoint();
        let c = structure_constants();
        for i in 0..10 {
            for j in 0..10 {
                let mut rhs = Matrix::zeros(10, 10);
                for (k, ck) in c[i][j].iter().enumerate() {
                    rhs = rhs.add(&ad[k].scale(ck));
                }
                assert_eq!(ad[i].commutator(&ad[j]), rhs);
            }
        }
    }

    #[test]
    fn heisenberg_relation() {
        // [X, Y] = -Z for X = B_8, Y = B_9, Z = B_10.
        let c = structure_constants();
        let mut expect = vec![Rat::ZERO; 10];
        expect[9] = Rat::int(-1);
        assert_eq!(c[7][8], expect);
    }
}
