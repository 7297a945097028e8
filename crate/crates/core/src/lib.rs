//! Exact computations in the Connes-Kreimer Hopf algebra of rooted forests.
//!
//! Forests and their linear combinations live in [`forest`] and [`lincomb`];
//! [`hopf`] carries the product, coproduct and antipodes, [`prelie`] the
//! grafting product. The antipode of the Connes-Moscovici generators is
//! computed three ways in [`cm`] and [`dominant`].

pub mod cm;
pub mod dominant;
pub mod error;
pub mod forest;
pub mod hopf;
pub mod linalg;
pub mod lincomb;
pub mod poly;
pub mod prelie;
pub mod sequences;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use forest::{Forest, Tree, VertexId};
pub use lincomb::{LinComb, Tensor};
pub use poly::MultiPoly;
