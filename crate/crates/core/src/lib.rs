//! Tropicalization of rational curves, tropical moduli of marked curves, and
//! enumeration of rational tropical curves through point and line conditions.

pub mod enumerate;
pub mod error;
pub mod moduli;
pub mod puiseux;
pub mod random;
pub mod rational;
pub mod trees;
pub mod tropicalize;

pub use error::{Error, Result};
pub use puiseux::{PuiseuxSeries, Valuation};
pub use rational::Q;
