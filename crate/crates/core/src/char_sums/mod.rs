//! Additive and multiplicative characters, Gauss sums, and the exponential
//! sums that determine codeword weights.

mod characters;
mod complex;
mod distribution;
pub mod expsum;
pub mod gauss;

pub use characters::CharacterContext;
pub use complex::{Complex64, RootTable, Tolerance};
pub use distribution::ValueDistribution;
pub use expsum::{
    closed_distribution, delta_closed_distribution, delta_direct, direct_distribution,
    omega_closed_distribution, omega_direct, ExpSumKind, ExpSumTable, GaussExpansion, Strategy,
};
pub use gauss::{gauss_quadratic, gauss_sum_semiprimitive, semiprimitive_parameters};
