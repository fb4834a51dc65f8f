use std::collections::BTreeMap;
use std::path::Path;

use extrinsic::kostant::{known_exceptional, positive_condition, rigidity_classify, subsets, Rigidity};
use extrinsic::parabolic::{direct_h1_table, setup, Ambient, CaseSetup};
use extrinsic::prolong::GradedSubspace;
use extrinsic::repmod::{decompose_character, weyl_dim, weyl_dim_raw};
use extrinsic::rootsys::{Family, RootSystem, Weight};
use extrinsic::wpde::parse::parse_poly;
use extrinsic::wpde::sp4::Sp4Setup;
use extrinsic::wpde::*;
use extrinsic::Rat;

use crate::config::{Command, RunConfig};
use crate::report::{Report, Table};
use crate::Failure;

/// The report, and whether the run should still end in failure after the
/// report is written.
pub type Outcome = (Report, Result<(), Failure>);

pub fn run(cfg: &RunConfig) -> Result<Outcome, Failure> {
    match cfg.command {
        Command::Rigidity => rigidity(cfg),
        Command::Cohomology => cohomology(cfg),
        Command::Prolong => prolong(cfg),
        Command::Decompose => decompose(cfg),
        Command::Pde => pde(cfg),
    }
}

fn fmt_list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn rigidity(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let mut t = Table::new(&["family", "rank", "sigma", "verdict", "condition"]);
    let mut mismatches = Vec::new();
    for &family in &cfg.families {
        for l in cfg.ranks.0..=cfg.ranks.1 {
            if l < family.min_rank() || (family == Family::G2 && l != 2) {
                continue;
            }
            let rs = RootSystem::new(family, l)?;
            let known = known_exceptional(family, l);
            for s in subsets(l, cfg.max_sigma.min(l)) {
                let v = rigidity_classify(&rs, &s)?;
                if (v == Rigidity::Exceptional) != known.contains(&s) {
                    mismatches.push(format!("{}{l} {{{}}}", family, fmt_list(&s)));
                }
                let cond = positive_condition(&rs, &s).unwrap_or_else(|| "-".into());
                t.push(vec![family.to_string(), l.to_string(), fmt_list(&s), v.to_string(), cond]);
            }
        }
    }
    let mut r = Report::default();
    r.field("config", cfg);
    r.table(t);
    let verdict = if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Oracle(format!("classification differs from the known list at {}", mismatches.join("; "))))
    };
    Ok((r, verdict))
}

fn weight_of(cfg: &RunConfig, rs: &RootSystem) -> Weight {
    match &cfg.weight {
        Some(w) => Weight::omega(w.clone()),
        None => Weight::omega_i64(&rs.alpha_to_omega_i64(rs.highest_root())),
    }
}

fn ambient_dim(n: u64, ambient: Ambient) -> u64 {
    match ambient {
        Ambient::Gl => n * n,
        Ambient::O => n * (n.saturating_sub(1)) / 2,
    }
}

/// Builds the case after checking the cap on the ambient dimension.
fn build(cfg: &RunConfig, enforce_cap: bool) -> Result<(CaseSetup, Report), Failure> {
    let family = cfg.family()?;
    let rs = RootSystem::new(family, cfg.rank())?;
    let lambda = weight_of(cfg, &rs);
    let n = weyl_dim(&rs, &lambda)?;
    let amb = ambient_dim(n, cfg.ambient);
    if enforce_cap && amb > cfg.cap as u64 {
        let hint = if cfg.command == Command::Cohomology {
            "; use --kostant-only for the prediction alone, or raise --cap"
        } else {
            "; raise --cap to proceed"
        };
        return Err(Failure::Compute(format!(
            "{}({}) has dimension {amb}, above the cap {}{hint}",
            cfg.ambient, n, cfg.cap
        )));
    }
    let s = setup(family, cfg.rank(), &cfg.sigma, &lambda, cfg.ambient)?;
    let mut r = Report::default();
    r.field("config", cfg);
    r.field("algebra", format!("{} sigma={{{}}}", rs.name(), fmt_list(&cfg.sigma)));
    r.field("module", format!("highest weight {lambda}, dim {n}"));
    r.field("ambient", format!("{}({n}), dim {}", cfg.ambient, s.ambient.dim()));
    r.field("prolongation dim", s.prolongation.dim());
    r.field("complement dim", s.complement.dim());
    Ok((s, r))
}

fn cohomology(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let (s, mut r) = build(cfg, !cfg.kostant_only)?;
    let predicted = s.kostant_prediction()?;
    let mut by_degree: BTreeMap<Rat, (u64, Vec<String>)> = BTreeMap::new();
    for (_, c) in &predicted {
        let e = by_degree.entry(c.degree.clone()).or_default();
        e.0 += c.dim;
        e.1.push(c.lowest_weight.to_string());
    }
    let direct = if cfg.kostant_only {
        None
    } else {
        Some(direct_h1_table(&s.complex(2)?)?)
    };
    let mut degrees: Vec<Rat> = by_degree.keys().cloned().collect();
    if let Some(d) = &direct {
        degrees.extend(d.keys().cloned());
    }
    degrees.sort();
    degrees.dedup();
    let mut t = Table::new(&["q", "p", "dim", "kostant", "lowest weights"]);
    let mut mismatch = Vec::new();
    let mut positive = 0;
    for p in degrees {
        let (k, lw) = by_degree.get(&p).cloned().unwrap_or_default();
        let dcell = match &direct {
            Some(d) => {
                let v = d.get(&p).copied().unwrap_or(0);
                if v != k {
                    mismatch.push(format!("p={p}: direct {v}, kostant {k}"));
                }
                v.to_string()
            }
            None => "-".into(),
        };
        if p >= Rat::ONE {
            positive += direct.as_ref().map_or(k, |d| d.get(&p).copied().unwrap_or(0));
        }
        t.push(vec!["1".into(), p.to_string(), dcell, k.to_string(), lw.join(" ")]);
    }
    r.field("H1+ dim", positive);
    r.table(t);
    let verdict = if mismatch.is_empty() {
        Ok(())
    } else {
        Err(Failure::Oracle(mismatch.join("; ")))
    };
    Ok((r, verdict))
}

fn degree_table(s: &GradedSubspace) -> Table {
    let mut t = Table::new(&["p", "dim"]);
    for (p, d) in s.degree_dims() {
        t.push(vec![p.to_string(), d.to_string()]);
    }
    t.push(vec!["total".into(), s.dim().to_string()]);
    t
}

fn prolong(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let (s, mut r) = build(cfg, true)?;
    r.table(degree_table(&s.prolongation));
    Ok((r, Ok(())))
}

fn decompose(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let (s, mut r) = build(cfg, true)?;
    let rs = s.root_system();
    let mut t = Table::new(&["space", "highest weight", "mult", "dim"]);
    let mut oracle = Vec::new();
    for (name, sub) in [
        (format!("{}(V)", cfg.ambient), &s.ambient),
        ("prolongation".into(), &s.prolongation),
        ("complement".into(), &s.complement),
    ] {
        let parts = decompose_character(rs, &s.character_of(sub))?;
        let mut total = 0;
        for (hw, m) in parts {
            let d = weyl_dim_raw(rs, &hw);
            total += d * m;
            t.push(vec![name.clone(), format!("({})", fmt_list(&hw)), m.to_string(), d.to_string()]);
        }
        if total != sub.dim() as u64 {
            oracle.push(format!("{name}: components sum to {total}, subspace has dim {}", sub.dim()));
        }
    }
    r.table(t);
    let verdict = if oracle.is_empty() {
        Ok(())
    } else {
        Err(Failure::Oracle(oracle.join("; ")))
    };
    Ok((r, verdict))
}

fn load_fixture(name: &str) -> Result<Fixture, Failure> {
    match fixture(name) {
        Ok(f) => Ok(f),
        Err(extrinsic::Error::UnknownFixture(_)) if Path::new(name).exists() => {
            let text = std::fs::read_to_string(name).map_err(|e| Failure::Compute(format!("cannot read {name}: {e}")))?;
            let stem = Path::new(name).file_stem().and_then(|s| s.to_str()).unwrap_or(name);
            parse_fixture(stem, &text).map_err(|e| Failure::Compute(format!("{name}: {e}")))
        }
        Err(e) => Err(e.into()),
    }
}

/// Checks a basis symbolically; residuals that vanish once the bound
/// parameter values are substituted are accepted.
fn check_basis(f: &Fixture, sys: &OperatorSystem, basis: &[Poly]) -> Result<(), String> {
    let report = verify_basis(&f.system, basis);
    let sub = sys.substitution();
    let bad: Vec<String> = report
        .residuals
        .iter()
        .filter(|r| !r.residual.substitute(&sub).is_zero())
        .map(|r| format!("equation {} on element {}", r.equation + 1, r.element + 1))
        .collect();
    if !bad.is_empty() {
        return Err(format!("not annihilated: {}", bad.join(", ")));
    }
    if !report.independent {
        return Err("elements are linearly dependent".into());
    }
    Ok(())
}

fn pde(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let name = cfg.fixture.as_deref().expect("validated");
    let f = load_fixture(name)?;
    let mut sys = f.system.clone();
    for (k, v) in &cfg.params {
        sys.set_param(k, v.clone()).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let n = cfg.n.or(f.truncate).unwrap_or(8);
    let sol = formal_solutions(&sys, n).map_err(|e| match e {
        extrinsic::Error::UnboundParameter(p) => Failure::Usage(format!("parameter `{p}` needs a value, pass --param {p}=VALUE")),
        e => e.into(),
    })?;
    let names = sys.space.var_names();
    let mut r = Report::default();
    r.field("config", cfg);
    r.field("system", format!("{} ({} equations, order {})", f.name, sys.equations.len(), sys.max_order()));
    r.field("truncation", n);
    r.field("dim", sol.dim());
    r.field("stable", if sol.stable { "yes" } else { "no (inconclusive)" });
    let mut oracle = Vec::new();
    if !f.basis.is_empty() {
        let status = match check_basis(&f, &sys, &f.basis) {
            Ok(()) if f.basis.len() == sol.dim() => "verified".to_string(),
            Ok(()) if !sol.stable => "annihilated, size not yet comparable".into(),
            Ok(()) => {
                oracle.push(format!("shipped basis has {} elements, solution space {}", f.basis.len(), sol.dim()));
                "size mismatch".into()
            }
            Err(e) => {
                oracle.push(format!("shipped basis: {e}"));
                "failed".into()
            }
        };
        r.field("shipped basis", status);
    }
    if let Some(path) = &cfg.expect {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Compute(format!("cannot read {}: {e}", path.display())))?;
        let mut expected = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let p = parse_poly(&sys.space, line).map_err(|e| Failure::Compute(format!("{} line {}: {e}", path.display(), i + 1)))?;
            expected.push(p);
        }
        let status = match check_basis(&f, &sys, &expected) {
            Ok(()) if expected.len() == sol.dim() => "verified".to_string(),
            Ok(()) if !sol.stable => "annihilated, size not yet comparable".into(),
            Ok(()) => {
                oracle.push(format!("expected basis has {} elements, solution space {}", expected.len(), sol.dim()));
                "size mismatch".into()
            }
            Err(e) => {
                oracle.push(format!("expected basis: {e}"));
                "failed".into()
            }
        };
        r.field("expected basis", status);
    }
    if f.name == "ea" {
        match sys.values.first().cloned().flatten() {
            Some(a) => {
                let sp4 = Sp4Setup::new()?;
                let chi = sp4.chi1(&a)?;
                let (p, gamma) = sp4.gamma()?;
                let line = if chi.is_zero() {
                    "0".to_string()
                } else {
                    let (pc, c) = sp4.cochain(&chi.values)?;
                    let scaled: Vec<Rat> = gamma.iter().map(|g| g * &a).collect();
                    if pc != p || c != scaled {
                        oracle.push("chi1 is not a multiple of the E74 class".into());
                    }
                    let harmonic = !sp4.complex.is_coboundary(1, &pc, &c)?;
                    format!(
                        "nonzero in degree {pc}: {a} * gamma, gamma = pi(E74) (x) B8* {}",
                        if harmonic { "is not a coboundary" } else { "is a coboundary" }
                    )
                };
                r.field("chi1", line);
            }
            None => r.field("chi1", "needs --param a=VALUE"),
        }
    }
    let mut t = Table::new(&["#", "basis element"]);
    for (i, p) in sol.basis.iter().enumerate() {
        t.push(vec![(i + 1).to_string(), p.display(&names).to_string()]);
    }
    r.table(t);
    let verdict = if !oracle.is_empty() {
        Err(Failure::Oracle(oracle.join("; ")))
    } else if !sol.stable {
        Err(Failure::Compute(format!("solution space not stable at truncation {n}; raise -N")))
    } else {
        Ok(())
    };
    Ok((r, verdict))
}
