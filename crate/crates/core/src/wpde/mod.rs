//! Weighted linear differential operator systems on model spaces.

pub mod filtration;
pub mod fixtures;
pub mod frame;
pub mod parse;
pub mod poly;
pub mod relations;
pub mod space;
pub mod sp4;
pub mod system;

pub use filtration::{dualize_filtration, Filtration};
pub use fixtures::{fixture, fixture_names};
pub use frame::{extract_chi1, wilczynski_frame, FrameData};
pub use parse::{parse_fixture, parse_operator, parse_poly, Fixture};
pub use poly::Poly;
pub use relations::{prolong_relations, RelationSet, Rule};
pub use space::{Coordinate, FrameField, ModelSpace, Operator, Word};
pub use system::{formal_solutions, stable_solutions, verify_basis, BasisReport, Equation, OperatorSystem, SolutionSpace};
