//! Exact computational group-ring toolkit.
//!
//! Given a finite group `G` this crate computes the Wedderburn decomposition
//! of the rational group algebra `QG` through strong Shoda pairs, cross-checks
//! it against a modular character table, classifies every simple component
//! (field, totally definite quaternion algebra, matrix algebra, ...) and
//! decides whether the unit group of `ZG` is subgroup separable, is not, or
//! falls in one of the two known open cases.
//!
//! The pieces are layered bottom-up:
//!
//! * [`group`]: Cayley-table groups, constructors, subgroup lattice, isomorphism.
//! * [`presentation`]: the group-spec DSL, presentation files and coset enumeration.
//! * [`numbers`]: cyclotomic numbers, abelian field descriptors, quaternion symbols.
//! * [`wedderburn`]: group algebra elements, strong Shoda pairs, the character oracle.
//! * [`classify`]: VC classification, division/split tiers and the verdict.
//! * [`analysis`], [`catalog`], [`claims`]: the end-to-end pipeline and reproduction suite.

pub mod analysis;
pub mod catalog;
pub mod claims;
pub mod classify;
pub mod error;
pub mod group;
pub mod numbers;
pub mod presentation;
pub mod wedderburn;

pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup};
