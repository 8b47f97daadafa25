pub mod calculus;
pub mod calculus_checks;
pub mod cocycle;
pub mod dual;
pub mod error;
pub mod functional_checks;
pub mod functionals;
pub mod galg;
pub mod hopf_checks;
pub mod hopftools;
pub mod ideal;
pub mod ideal_checks;
pub mod linalg;
pub mod lorentz;
pub mod param;
pub mod printed;
pub mod report;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
