//! Log-concave random variables on the real line and on the integers.
//!
//! The crate provides the continuous and discrete asymmetric Laplace
//! families, generic piecewise log-linear densities and log-concave
//! probability sequences, Orlicz norms, density-crossing certificates for
//! stochastic orders, the extremal asymmetric Laplace majorants, and a set
//! of verification suites that check the sharp anti-concentration
//! inequalities satisfied by these variables.

pub mod continuous;
pub mod discrete;
pub mod error;
pub mod extremal;
pub mod law;
pub mod logconcave;
pub mod orders;
pub mod orlicz;
pub mod quad;
pub mod verify;

pub use continuous::{interval_overlap, AsymLaplaceC, Interval};
pub use discrete::AsymLaplaceD;
pub use error::{Error, Result};
pub use extremal::{majorant_c, majorant_c_bisection, majorant_d};
pub use law::{Law, LogLinearPiece, PiecewiseLogLinear};
pub use logconcave::{ContinuousGenConfig, DiscreteGenConfig, DiscretePMF, GridDensity, Moments};
pub use orders::{CrossingPattern, OrderCertificate, OrderClass, Sign, Verdict};
pub use orlicz::{acm_bounds, orlicz_norm, orlicz_norm_centered, subfactorial, YoungFunction};
