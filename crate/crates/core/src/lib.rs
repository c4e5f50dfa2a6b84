//! Lie-theoretic data for basic equivariant bundle gerbes on compact simple Lie
//! groups: lattices and levels, alcove and center combinatorics, Tits cocycles,
//! character cocycles and descent phases, and a numerical check of the
//! equivariant Cartan 3-form.

pub mod center_action;
pub mod centers;
pub mod cohomology;
pub mod error;
pub mod exact;
pub mod forms_numeric;
pub mod gerbe_data;
pub mod intmat;
pub mod lattice;
pub mod obstruction;
pub mod phase;
pub mod rootsys;
pub mod tits;
pub mod weyl;

pub use centers::{CenterSubgroup, GroupData};
pub use error::{GerbeError, Result};
pub use phase::PhaseExponent;
pub use rootsys::{build_root_system, Family, LieType, RootSystem};
