//! Equivariant degree computations for `O(2) × D_N × Z₂`-symmetric
//! second-order systems.

pub mod cyclotomic;
pub mod finite_group;
pub mod gamma;
pub mod characters;
pub mod o2_lattice;
pub mod fixtures;
pub mod representations;
pub mod burnside;
pub mod degrees;
pub mod pendula;
