//! Geometric types of Markov partitions for building blocks of Anosov
//! flows: symbolic dynamics, boundary surfaces of the model block,
//! combinatorial types of torus foliations and the block gluing calculus.

pub mod folia;
pub mod geomtype;
pub mod gluing;
pub mod surface;
pub mod symdyn;

pub use geomtype::{GeomTypeError, GeometricType, Sign, SignedTarget, Symbol};
