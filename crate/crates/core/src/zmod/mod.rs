//! Exact linear algebra over the integers: matrices, Smith normal form, lattices and
//! finitely presented abelian groups.

mod group;
mod lattice;
mod matrix;
mod snf;

pub use group::{group_string, GroupElement, Hom, PresentedAbGroup};
pub(crate) use group::{quotient_with_section, sublattice_presentation};
pub use lattice::Lattice;
pub use matrix::{vector, IntMatrix};
pub use snf::{integer_kernel, membership, snf, solve, Membership, Snf};
