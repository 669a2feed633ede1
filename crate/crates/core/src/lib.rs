pub mod alphabet;
pub mod approx;
pub mod arith;
pub mod cli;
pub mod complex;
pub mod error;
pub mod homology;
pub mod index;
pub mod sequence_maps;
pub mod symbolic;
pub mod verify;
