//! Floating-point building blocks shared by the analytic modules.

pub mod quad;
pub mod richardson;
pub mod special;
pub mod sum;

use serde::Serialize;

/// A numerical value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn new(value: f64, error: f64) -> Self {
        Self { value, error }
    }
}
