//! Finite topological spaces and their separation reflections.
//!
//! A finite topology is stored as its specialization preorder: `x <= y` means
//! that the minimal open set `U_x` is contained in `U_y`. Open sets are exactly
//! the down-sets of the preorder, so nothing is lost by never materializing
//! the open-set lattice.
//!
//! On top of that representation the crate provides
//!
//! * [`finspace`]: construction, quotients, products, components and
//!   homeomorphism search;
//! * [`reflection`]: the neighbourhood-intersection relation tower and the
//!   Hausdorff reflection with its universal property;
//! * [`homology`]: order complexes and simplicial homology over `Z`, `Q`
//!   and `F_p`, plus induced maps;
//! * [`invsys`]: inverse sequences of finite T0 spaces and Čech-style limit
//!   invariants;
//! * [`nerve`]: towers of face posets of cover nerves approximating a circle,
//!   an interval and a wedge of two circles;
//! * [`doubled`]: symbolic non-Hausdorff gluings (punctured circle, line with
//!   two origins).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

mod bits;
mod error;
mod linalg;
mod unionfind;

pub mod doubled;
pub mod finspace;
pub mod homology;
pub mod invsys;
pub mod nerve;
pub mod reflection;

pub use error::{Error, Result};
pub use finspace::{ContinuousMap, FiniteSpace, Partition};
pub use homology::{Coefficients, FieldCoeff, HomologyResult, LinearMapOnHomology, SimplicialComplex};
pub use invsys::{CechReport, InverseSequence, LimitDim};
pub use reflection::{R3Mode, Reflection, RelationMatrix};
