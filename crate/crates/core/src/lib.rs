//! Cubic and quartic residue symbols over `Z[ω]` and `Z[i]`, the associated
//! families of Dirichlet characters, their Gauss sums, and the double
//! character sums `S₃(X, Y)`, `S₄(X, Y)`.

pub mod arith;
pub mod characters;
pub mod cli;
pub mod error;
pub mod gauss_sums;
pub mod mean_values;
pub mod ring;
pub mod verify;

pub use characters::{character_family, enumerate_q, CharacterTable, ExactSum, Order};
pub use error::{Error, Result};
pub use gauss_sums::{g_symbol, poisson_discrepancy, residues_mod, tau_char, ComplexVal};
pub use mean_values::{compute_constant, main_term_predict, s_total, EulerProductResult, Method, SumReport};
pub use ring::{EisInt, GaussInt};
