//! Embedded graphs, the reducible configurations and discharging rules for
//! toroidal graphs without adjacent triangles or 6-cycles, and list colorings
//! with impropriety 1 from lists of size 3.

pub mod cli;
pub mod coloring;
pub mod discharging;
pub mod graph;
pub mod io;
pub mod structures;
