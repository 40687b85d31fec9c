//! Workbench for Rees quotient monoids `M(W)` and small presented monoids:
//! word combinatorics (letter depth, the `w_n` family, structural
//! predicates), finite monoid construction, identity checking, and a
//! reproducible claim suite.

pub mod exec;
pub mod identities;
pub mod monoid;
pub mod rees;
pub mod verify;
pub mod words;

pub use exec::Strategy;
pub use identities::{
    basis, check_rees, check_table, evaluate, match_pattern, parse_identity, separation_identity, CheckOutcome,
    Identity, IdentityError, Image, Status, Substitution, Witness,
};
pub use monoid::{from_presentation, preset, FiniteMonoid, Label, MonoidError, Preset, Presentation};
pub use rees::{ReesError, ReesQuotient};
pub use words::{generate_wn, Depth, DepthMap, Letter, Word, WordError, WordSet};

/// `M(W)` for a finite word set.
pub fn rees_quotient(source: &WordSet) -> ReesQuotient {
    ReesQuotient::new(source)
}
