//! Partitions, reverse standard Young tableaux and the irreducible
//! representations of the symmetric group in Young's seminormal basis.

mod irrep;
mod partition;
mod perm;
mod qmatrix;
mod stembridge;
mod tableau;

pub use irrep::{build_irrep, form_weight, InvariantResiduals, IrrepData, IrrepSummary};
pub use partition::Partition;
pub use perm::Perm;
pub use qmatrix::{q, to_f64, QMatrix, Rational};
pub use stembridge::{fake_degree_mod, stembridge_profile, upsilon_multiplicities, StembridgeProfile};
pub use tableau::{enumerate_rsyt, Rsyt};
