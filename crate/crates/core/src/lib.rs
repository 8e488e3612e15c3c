// index loops mirror the matrix formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod exactnum;
pub mod zlattice;
pub mod torus;
pub mod rootsys;
pub mod linalg;
pub mod lietorus;
pub mod invariants;
pub mod classify;
pub mod io;
