//! Command-line front end for the approach planner: scenario files,
//! plan/run/bench/render commands and their file outputs.

pub mod astar;
pub mod bench;
pub mod plan;
pub mod render;
pub mod run;
pub mod scenario;
