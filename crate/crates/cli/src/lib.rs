//! Command-line driver and HTTP session service for the ctt laboratory.

pub mod commands;
pub mod protocol;
pub mod service;
pub mod store;
