//! Exact Clifford theory for index-2 subgroups, invariant and twisted bilinear
//! forms, and finite-level local epsilon factors.

pub mod arith;
pub mod group;
pub mod rep;
pub mod forms;
pub mod local;
