pub mod bound;
pub mod figure2;
pub mod montecarlo;
pub mod percolation;
pub mod sweep;
