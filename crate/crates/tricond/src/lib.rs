//! Condorcet-consistent voting rules for three candidates, with exhaustive
//! checkers for their axiomatic properties.

pub mod profile;
pub mod rules;
pub mod enumeration;
pub mod axioms;
pub mod satgen;
