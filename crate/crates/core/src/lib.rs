//! Good quotients of toric varieties by subtorus actions, computed exactly.
//!
//! A toric variety is a [`Fan`]; its torus-invariant open subsets are
//! face-closed sets of cones ([`SubfanSelection`]). A [`SubtorusAction`]
//! names a subtorus by its cocharacter lattice, and [`good_quotient`]
//! either returns the [`QuotientFan`] of an open subset or an
//! [`Obstruction`]. On top of this sit enumeration of maximal subsets, the
//! Cox presentation ([`cox_presentation`]) and translate intersections under
//! finite fan symmetries ([`w_set`]).
//!
//! All arithmetic is over `BigInt`; nothing is approximated.

pub mod cone;
pub mod corpus;
pub mod cox;
pub mod error;
pub mod fan;
pub mod lattice;
pub mod oracle;
pub mod quotient;
pub mod report;
pub mod sweep;
pub mod symmetry;

pub use cone::Cone;
pub use cox::{
    cox_presentation, verify_globally_defined, ClassDegree, CoxPresentation, MonomialSection, PolynomialSection,
    RoundTrip, Section, Verdict, WitnessReport,
};
pub use error::{ConeError, CoxError, FanError, LatticeError, OracleError, QuotientError, SymmetryError};
pub use fan::{ConeSet, Fan, FanAutomorphism, RaySet, SubfanSelection};
pub use lattice::{smith_normal_form, CokernelShape, IntMatrix, SmithDecomposition, Sublattice};
pub use quotient::{
    enumerate_good_subsets, good_quotient, is_saturated, max_saturated_inside, staged_quotient, t_maximal_subsets,
    AffineProperty, Obstruction, QuotientContext, QuotientFan, StagedOutcome, StagedReport, SubtorusAction,
};
pub use report::{Report, Status};
pub use symmetry::{
    eq1_crosscheck, translate, verify_corollary, verify_theorem_conclusions, w_set, CorollaryReport, Eq1Report,
    GroupActionData, SymmetryGroup, TheoremReport,
};
