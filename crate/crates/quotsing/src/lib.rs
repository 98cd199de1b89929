//! Exact computations for abelian quotient singularities `C^n / G` with
//! `G` a finite abelian diagonal subgroup of SL(n): McKay and contraction
//! quivers, invariant-monomial ideals of the contraction algebra, the
//! reduced center degree by degree, and the reduced singular locus by two
//! independent routes, plus the machinery to cross-check them on arbitrary
//! input groups.

pub mod center;
pub mod error;
pub mod group;
pub mod monomial;
pub mod quiver;
pub mod report;
pub mod singular;
mod snf;

pub use error::{Bounds, Error, Result};
pub use group::{build_group, parse_group_spec, AbelianGroup, Character, GroupSpec, Subgroup};
