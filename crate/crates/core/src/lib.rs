//! Exact constructive real arithmetic.
//!
//! Reals are rational Cauchy sequences carrying an explicit convergence
//! regulator ([`Duplex`]). Every partial operation asks for evidence:
//! inversion takes an [`ApartnessWitness`], searches report
//! [`Apartness::Unknown`] rather than guessing, and comparison is offered
//! only in its decidable form, [`Duplex::locate`].
//!
//! Alongside the reals live a propositional kernel contrasting classical
//! and intuitionistic validity ([`logic`]), fugacious sequences and an
//! equidistribution demo ([`sequences`]), and continued-fraction and
//! irrationality-measure checks ([`numtheory`]).

pub mod constants;
pub mod duplex;
pub mod error;
pub mod logic;
pub mod numtheory;
pub mod rational;
pub mod sequences;

pub use constants::{const_e, const_pi, const_sqrt, const_zeta3, const_zeta3_direct};
pub use duplex::{Apartness, ApartnessWitness, ContractingIntervals, DecimalApprox, Duplex, Located};
pub use error::{DuplexError, LogicError, NumTheoryError, RationalError, SequenceError};
pub use rational::Rational;
