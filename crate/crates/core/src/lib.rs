//! Finite combinatorics over the Boolean group of finite sets.
//!
//! The crate is organised bottom-up:
//!
//! - [`finset`]: atoms, canonical finite sets, families, and the finite-sum /
//!   finite-union calculus under symmetric difference.
//! - [`colouring`]: two-valued colourings (named builtins, tables, derived
//!   colourings) and the pair-graph machinery used to analyse them.
//! - [`ramsey`]: small Ramsey numbers, complete monochromatic-subset search,
//!   the `F(n, k)` recursion, Schur triples and finite-unions family search.
//! - [`hindman`]: executable checks for the finite kernels of the
//!   finite-sums arguments (cardinality injectivity, the `FS_{<=4}` count
//!   bound, pushforward colourings, star families, the grid Schur pipeline).
//!
//! Everything here is pure and deterministic. Searches report the
//! lexicographically least witness so results do not depend on scheduling.

pub mod colouring;
pub mod error;
pub mod finset;
pub mod hindman;
pub mod ramsey;

pub use colouring::{Arity, Colour, Colouring, Domain, GridShape, Partition};
pub use error::{Error, Result};
pub use finset::{Atom, FinSet, SetFamily};
