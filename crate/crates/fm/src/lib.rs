//! Finite-scale permutation models of set theory with atoms.
//!
//! Atoms are [`finlab_core::Atom`]s; sets built over them are [`HSet`]s. A
//! [`Model`] fixes the atom structure and the group acting on it. The
//! [`verify`] module replays the classical symmetry arguments on concrete
//! witnesses and produces reports that can be re-checked from JSON.

pub mod aut;
pub mod error;
pub mod hset;
pub mod model;
pub mod rado;
pub mod support;
pub mod verify;

pub use aut::{apply_aut, check_aut, complete_aut, PartialAut, Status};
pub use error::{FmError, Result};
pub use hset::HSet;
pub use model::{chain_atom, Model, ModelSpec, StructureSpec};
pub use support::{is_support, moving_aut, orbit, Symmetric};
