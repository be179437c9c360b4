pub mod abelian;
pub mod error;
pub mod group;
pub mod inner;
pub mod io;
pub mod permgroup;
pub mod quandle;
pub mod suite;
pub mod tower;

pub use abelian::{FGAbelianGroup, Matrix};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use permgroup::{GroupHom, PermGroup, Permutation};
pub use quandle::{FiniteQuandle, QuandleHom, Subquandle};
pub use tower::{GroupTower, QuandleTower, SlimBasicOpen, TruncatedElement};

/// Integer matrices over arbitrary-precision integers.
pub type IntMatrix = Matrix<num_bigint::BigInt>;
/// Integer matrices over machine integers, for small inputs.
pub type SmallIntMatrix = Matrix<i64>;
