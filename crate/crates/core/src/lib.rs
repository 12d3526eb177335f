//! Algorithms for free groups and right-angled Artin groups aimed at the
//! Anshel–Anshel–Goldfeld commutator key exchange: Stallings foldings,
//! conjugacy solvers, normal forms, the length-based and quotient attacks,
//! and a Monte-Carlo harness for generic-case behaviour.

pub mod aag;
pub mod attacks;
pub mod cli;
pub mod conjugacy;
pub mod error;
pub mod lab;
pub mod matching;
pub mod raag;
pub mod rng;
pub mod stallings;
pub mod word;

pub use error::{Error, Result};
pub use rng::Rng;
pub use word::{Alphabet, Letter, Word, WordTuple};
