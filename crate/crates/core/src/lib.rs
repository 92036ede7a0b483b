//! Cluster combinatorics of finite acyclic quivers.
//!
//! The crate computes real roots and real Schur roots, the E-invariant,
//! preclusters and clusters with their partial order, and checks the
//! combinatorics against explicit representations over the rationals:
//! clusters against support tilting modules, and counts of order-preserving
//! maps from finite posets into the cluster poset.
//!
//! The representation side is generic over the scalar [`Field`]; the
//! aliases below fix the exact rational instantiation used by the
//! verification paths, and a floating point one for quick approximate
//! rank computations.

pub mod cluster;
pub mod einv;
pub mod error;
pub mod io;
pub mod linalg;
pub mod monotone;
pub mod poset;
pub mod quiver;
pub mod rep;
pub mod roots;
pub mod schur;
pub mod stilt;

pub use cluster::{
    Cluster, ClusterEngine, ClusterPoset, ClusterVariable, EngineOptions, Precluster,
};
pub use einv::EInvariant;
pub use error::{Error, ErrorKind, Result};
pub use linalg::{Field, Matrix};
pub use poset::FinitePoset;
pub use quiver::{DimVec, Quiver};
pub use rep::Representation;
pub use roots::RootSet;

/// Exact rationals.
pub type Rational = num_rational::BigRational;
pub type RationalMatrix = Matrix<Rational>;
pub type RationalRep = Representation<Rational>;

pub type FloatMatrix = Matrix<f64>;
pub type FloatRep = Representation<f64>;
