//! Scalar quadratic-Gaussian soft-watermarking game.
//!
//! A watermark `X ~ N(0, σx²)` is embedded into a host `S ~ N(0, σs²)` by a
//! linear encoder `U = αX + βS` under the budget `E(U - S)² ≤ P_E`. An
//! attacker maps `U` to `Y` under `E(Y - U)² ≤ P_A`, and the receiver forms
//! the LMMSE estimate of `X` from `Y`. The encoder/decoder team minimizes the
//! mean-squared error that the attacker maximizes.
//!
//! * [`game`] holds the closed-form algebra shared by everything else.
//! * [`solver`] computes the minimax solution (regime, cubic root, optimal
//!   parameters, bounds, large-signal asymptotics).
//! * [`verify`] checks the closed forms with seeded Monte Carlo and
//!   brute-force grid oracles.
//! * [`sweep`] and [`suite`] back the `softmark` command-line tool.

pub mod error;
pub mod format;
pub mod game;
pub mod solver;
pub mod suite;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use game::{AttackerParams, EncoderParams, GameConfig, Regime};
pub use solver::{solve, AsymptoticSolution, SolveDiagnostics, Solution};
