//! Finite groups as Cayley tables, mutual actions and their compatibility,
//! and the non-abelian tensor product computed by coset enumeration.
//!
//! Elements of a [`FiniteGroup`] are plain indices `0..order`. The crate
//! needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod abelian;
pub mod action;
pub mod automorphism;
pub mod catalog;
mod error;
pub mod fp;
pub mod group;
pub mod hom;
pub mod subgroup;
pub mod tensor;

pub use abelian::{abelian_invariants, abelian_tensor, AbelianInvariants};
pub use action::{ActionPair, CompatibilityReport, CompatibilityWitness, HomPair, MutualAction, RawActions};
pub use automorphism::{automorphism_group, AutGroup};
pub use catalog::{make_catalog_group, CatalogKey};
pub use error::{Error, NotAGroupReason};
pub use fp::{coset_enumerate, CosetTable, EnumLimits, Presentation};
pub use group::FiniteGroup;
pub use hom::{Budget, GroupHom};
pub use subgroup::Subgroup;
pub use tensor::{compute_tensor, TensorReport};

pub type Result<T> = core::result::Result<T, Error>;
