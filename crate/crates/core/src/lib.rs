//! Finite groups admitting a fixed-point-free four-group of automorphisms,
//! their Jennings–Zassenhaus Lie algebras over F_p, and exhaustive checks
//! of the structure theory on small fixtures.
//!
//! Everything here is `no_std` with `alloc`; file formats, reports on disk
//! and the command line live in the `fpfgroups` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod actions;
pub mod criterion;
pub mod fixtures;
pub mod fplinalg;
pub mod group;
pub mod jennings;
pub mod lie;
pub mod pc;
pub mod report;
pub mod suite;
pub mod vtheory;
