//! Newton polyhedra, Sargos constants, Euler products and exact lattice
//! counting for mixed zeta functions `Z(f;P;s) = Σ f(m) P(m)^{−s/d}`.

pub mod arith;
pub mod constants;
pub mod counting;
pub mod dirichlet;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod newton;
pub mod numeric;
pub mod polyring;
pub mod rat;

pub use arith::{ArithmeticFunction, FiniteTypeDescriptor, Kind};
pub use constants::{ConstantEstimate, PolarType};
pub use counting::{AsymptoticPrediction, Count, CountOptions, CountReport, Counter};
pub use dirichlet::{PoleFit, ZSeries};
pub use error::{Error, Result};
pub use newton::PolyhedronAtInfinity;
pub use numeric::Estimate;
pub use polyring::{ExponentVector, GenPoly};
pub use rat::Rat;
