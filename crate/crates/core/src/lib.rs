//! Executable laboratory for the Chomsky-Turing test.
//!
//! A session pits an [`Interrogator`](dialogue::Interrogator) against a
//! [`Contestant`](dialogue::Contestant) drawn from some level of the Chomsky
//! hierarchy. The [`adversary`] module builds clones that fool any
//! deterministic interrogator, [`identify`] decides the bounded-state case,
//! and [`tape`] runs Turing machines on flat and cascaded tapes.

pub mod adversary;
pub mod catalog;
pub mod dialogue;
pub mod human;
pub mod identify;
pub mod interrogators;
pub mod machines;
pub mod tape;
