//! Shipped operator systems.

use crate::error::{Error, Result};

use super::parse::{parse_fixture, Fixture};

const SOURCES: &[(&str, &str)] = &[
    ("case_i_model", include_str!("../../fixtures/case_i_model.wpde")),
    ("case_i_deformed", include_str!("../../fixtures/case_i_deformed.wpde")),
    ("ea", include_str!("../../fixtures/ea.wpde")),
    ("g2_model", include_str!("../../fixtures/g2_model.wpde")),
    ("segre", include_str!("../../fixtures/segre.wpde")),
    ("veronese_n2", include_str!("../../fixtures/veronese_n2.wpde")),
    ("veronese_n3", include_str!("../../fixtures/veronese_n3.wpde")),
];

/// Names of the static fixtures. `ode_K` is also accepted for any `K ≥ 1`.
pub fn fixture_names() -> Vec<&'static str> {
    SOURCES.iter().map(|(n, _)| *n).collect()
}

pub fn fixture_source(name: &str) -> Result<String> {
    if let Some(k) = name.strip_prefix("ode_") {
        let k: usize = k
            .parse()
            .ok()
            .filter(|k| *k >= 1)
            .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
        return Ok(ode_source(k));
    }
    SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| s.to_string())
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

pub fn fixture(name: &str) -> Result<Fixture> {
    parse_fixture(name, &fixture_source(name)?)
}

/// `y^(k+1) = 0` on the line, with the Veronese fundamental system
/// `((-x)^k, …, -x, 1)` as reference basis.
fn ode_source(k: usize) -> String {
    let mut s = format!("# y^({}) = 0\ncoord x 1\nfield Dx = D(x)\neq Dx^{}\n", k + 1, k + 1);
    for j in (0..=k).rev() {
        s.push_str(&format!("basis (-x)^{j}\n"));
    }
    s.push_str(&format!("truncate {}\n", k + 2));
    s
}
