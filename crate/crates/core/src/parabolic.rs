//! End-to-end setup of a graded simple algebra acting on an irreducible
//! module: its image in `gl(V)`, the ambient algebra, the relative
//! prolongation, its trace complement and the resulting cochain complex.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::cohomology::{build_complex, CochainComplex, CoefficientModule, NilpotentAlgebra};
use crate::error::{Error, Result};
use crate::gradedlie::{chevalley_algebra, parabolic_grading, GradedLieAlgebra};
use crate::kostant::{h1_components, H1Component};
use crate::linalg::Matrix;
use crate::prolong::{
    invariant_symmetric_forms, relative_prolongation, trace_complement, GlGrading, GradedSubspace,
};
use crate::rational::Rat;
use crate::repmod::{decompose_character, irrep, Character, GradedModule};
use crate::rootsys::{Family, RootSystem, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    Gl,
    /// `o(V, κ)` for the invariant symmetric form of `V`.
    O,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambient::Gl => "gl",
            Ambient::O => "o",
        })
    }
}

impl FromStr for Ambient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ambient> {
        match s {
            "gl" => Ok(Ambient::Gl),
            "o" => Ok(Ambient::O),
            _ => Err(Error::Precondition(format!("unknown ambient '{s}', expected gl or o"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CaseSetup {
    pub g: GradedLieAlgebra,
    pub module: GradedModule,
    pub grading: GlGrading,
    pub kappa: Option<Matrix>,
    pub ambient: GradedSubspace,
    pub g_minus: GradedSubspace,
    pub prolongation: GradedSubspace,
    pub complement: GradedSubspace,
}

/// Builds the graded algebra `(family, rank, Σ)` and the irreducible module
/// with highest weight `λ`, then everything downstream of it.
pub fn setup(family: Family, rank: usize, sigma: &[usize], lambda: &Weight, ambient: Ambient) -> Result<CaseSetup> {
    let rs = RootSystem::new(family, rank)?;
    let g = parabolic_grading(&chevalley_algebra(&rs), sigma)?;
    let module = irrep(&g, lambda)?;
    setup_with(g, module, ambient)
}

pub fn setup_with(g: GradedLieAlgebra, module: GradedModule, ambient: Ambient) -> Result<CaseSetup> {
    let grading = GlGrading::new(&module.degrees);
    let (amb, kappa) = match ambient {
        Ambient::Gl => (GradedSubspace::gl(&grading), None),
        Ambient::O => {
            let forms = invariant_symmetric_forms(&module.action);
            if forms.len() != 1 {
                return Err(Error::Precondition(format!(
                    "module has {} independent invariant symmetric forms, need exactly one",
                    forms.len()
                )));
            }
            let k = forms.into_iter().next().unwrap();
            (GradedSubspace::orthogonal(&grading, &k), Some(k))
        }
    };
    let neg: Vec<Matrix> = g
        .negative_indices()
        .iter()
        .map(|&i| module.action[i].clone())
        .collect();
    let g_minus = GradedSubspace::span(&grading, &neg)?;
    let prolongation = relative_prolongation(&g_minus, &amb)?;
    let complement = trace_complement(&prolongation, &amb)?;
    Ok(CaseSetup {
        g,
        module,
        grading,
        kappa,
        ambient: amb,
        g_minus,
        prolongation,
        complement,
    })
}

impl CaseSetup {
    pub fn root_system(&self) -> &RootSystem {
        self.g.root_system()
    }

    /// Images of the `g₋` basis elements in `gl(V)`, in algebra order.
    pub fn g_minus_matrices(&self) -> Vec<Matrix> {
        self.g
            .negative_indices()
            .iter()
            .map(|&i| self.module.action[i].clone())
            .collect()
    }

    /// Image of the whole algebra as a graded subspace.
    pub fn image(&self) -> Result<GradedSubspace> {
        GradedSubspace::span(&self.grading, &self.module.action)
    }

    pub fn nilpotent(&self) -> NilpotentAlgebra {
        NilpotentAlgebra::from_graded(&self.g)
    }

    /// `ḡ^⊥` as a `g₋`-module.
    pub fn coefficient_module(&self) -> Result<CoefficientModule> {
        let form = self
            .module
            .form
            .as_ref()
            .ok_or_else(|| Error::Precondition("module has no positive form".into()))?;
        CoefficientModule::from_subspace(&self.complement, &self.g_minus_matrices(), form)
    }

    pub fn complex(&self, max_q: usize) -> Result<CochainComplex> {
        build_complex(&self.nilpotent(), &self.coefficient_module()?, max_q)
    }

    /// Character of a Cartan-stable graded subspace of `gl(V)`.
    pub fn character_of(&self, s: &GradedSubspace) -> Character {
        let w = &self.module.weights;
        let mut ch = Character::new();
        for d in s.degrees() {
            let block = self.grading.block(&d);
            let basis = s.component(&d).expect("listed degree").basis();
            let mut by_weight: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
            for (pos, &(r, c)) in block.iter().enumerate() {
                let wt: Vec<i64> = w[r].iter().zip(&w[c]).map(|(a, b)| a - b).collect();
                by_weight.entry(wt).or_default().push(pos);
            }
            for (wt, cols) in by_weight {
                let rows: Vec<Vec<Rat>> = basis
                    .iter()
                    .map(|v| cols.iter().map(|&c| v[c].clone()).collect())
                    .collect();
                let rk = Matrix::from_rows(cols.len(), &rows).rank() as i64;
                if rk > 0 {
                    *ch.entry(wt).or_insert(0) += rk;
                }
            }
        }
        ch
    }

    /// Irreducible components of `ḡ^⊥` as highest weights with multiplicity.
    pub fn complement_decomposition(&self) -> Result<Vec<(Vec<i64>, u64)>> {
        decompose_character(self.root_system(), &self.character_of(&self.complement))
    }

    /// Predicted `H¹` components of every irreducible piece of `ḡ^⊥`.
    pub fn kostant_prediction(&self) -> Result<Vec<(Vec<i64>, H1Component)>> {
        let rs = self.root_system();
        let mut out = Vec::new();
        for (hw, mult) in self.complement_decomposition()? {
            let hw_r: Vec<Rat> = hw.iter().map(|&x| Rat::int(x)).collect();
            let mu = Weight::omega(rs.w0(&hw_r));
            for c in h1_components(rs, self.g.sigma(), &mu)? {
                for _ in 0..mult {
                    out.push((hw.clone(), c.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Predicted `dim H¹_p` per degree.
    pub fn kostant_table(&self) -> Result<BTreeMap<Rat, u64>> {
        let mut t = BTreeMap::new();
        for (_, c) in self.kostant_prediction()? {
            *t.entry(c.degree).or_insert(0) += c.dim;
        }
        Ok(t)
    }
}

/// `dim H¹_p` for every degree with nonzero cohomology, computed directly.
pub fn direct_h1_table(cx: &CochainComplex) -> Result<BTreeMap<Rat, u64>> {
    Ok(cx
        .cohomology_table(1)?
        .into_iter()
        .map(|(p, d)| (p, d as u64))
        .collect())
}

/// Sum of `dim H¹_p` over `p ≥ 1`.
pub fn positive_total(table: &BTreeMap<Rat, u64>) -> u64 {
    table
        .iter()
        .filter(|(p, _)| **p >= Rat::ONE)
        .map(|(_, d)| d)
        .sum()
}

/// Compares the direct `H¹` table against the prediction from root data
/// for `U` irreducible with highest weight `λ`.
pub fn irreducible_h1(g: &GradedLieAlgebra, lambda: &Weight) -> Result<(BTreeMap<Rat, u64>, BTreeMap<Rat, u64>)> {
    let rs = g.root_system();
    let m = irrep(g, lambda)?;
    let u = CoefficientModule::from_module(g, &m)?;
    let cx = build_complex(&NilpotentAlgebra::from_graded(g), &u, 2)?;
    let direct = direct_h1_table(&cx)?;
    let mu = Weight::omega(rs.w0(&lambda.to_omega(rs).coords));
    let mut predicted = BTreeMap::new();
    for c in h1_components(rs, g.sigma(), &mu)? {
        *predicted.entry(c.degree).or_insert(0) += c.dim;
    }
    Ok((direct, predicted))
}
