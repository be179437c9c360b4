//! Permutations, exhaustively enumerated permutation groups, and stabilizer
//! chains for groups too large to enumerate.

mod group;
mod hom;
mod perm;
mod stabchain;

pub use group::{Coset, PermGroup, DEFAULT_ORDER_BOUND};
pub use hom::GroupHom;
pub use perm::{Parity, Permutation};
pub use stabchain::StabChain;
