//! Finite set-representable orthomodular posets.
//!
//! - [`somp`]: canonical families, axiom validation, closure, structural
//!   predicates and standard constructors.
//! - [`quotient`]: indistinguishability classes and the natural
//!   point-distinguishing representation.
//! - [`states`]: two-valued states, Dirac states and symmetric-difference
//!   states, with an all-solutions enumerator.
//! - [`stone`]: representations whose points are states.
//! - [`morphism`]: morphism verification and isomorphism search.
//! - [`json`]: interchange formats.

pub mod error;
pub mod event;
pub mod fixtures;
pub mod json;
pub mod morphism;
pub mod quotient;
pub mod somp;
pub mod states;
pub mod stone;

pub use error::{Error, Result};
pub use event::Event;
pub use morphism::{find_isomorphism, MorphismTable, MorphismViolation};
pub use quotient::{
    copy_on_transversal, indistinguishability_partition, induced_morphism,
    natural_pd_representation, partition_boolean, Partition, QuotientResult, TransversalCopy,
};
pub use somp::{
    closure, make_bigsets, make_even, make_powerset, make_product, validate, Somp, Validation,
    ValidationReport, Violation,
};
pub use states::{
    dirac_state, enumerate_delta_states, enumerate_states, is_delta_state, is_dirac, is_separating,
    is_state, StateSet, TwoValuedState,
};
pub use stone::{all_states_dirac, delta_stone, stone_representation, DiracCensus, StoneResult};
