pub mod cli;
pub mod golden;
pub mod invariants;
pub mod liealg;
pub mod oppenheim;
pub mod polyexact;
pub mod reptheory;
pub mod trivector;
