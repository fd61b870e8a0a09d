pub mod algebraic;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod invariants;
pub mod join;
pub mod oracle;
pub mod poly;
