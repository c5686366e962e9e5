//! Cover-free families, nested families of cover-free families, and the
//! fault-tolerant aggregate signature schemes built on top of them.

pub mod agg;
pub mod binmat;
pub mod combinatorics;
pub mod costs;
pub mod nested;
pub mod sim;
