pub mod logic;
pub mod qelim;
pub mod games;
pub mod reductions;
pub mod verify;
pub mod cli;
