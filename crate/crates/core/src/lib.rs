//! Alexander polynomials of C-groups and constructive realization of
//! polynomials as Hurwitz C-groups, in exact arithmetic.

pub mod alexmod;
mod arith;
pub mod cgroup;
pub mod checks;
pub mod corpus;
pub mod involution;
pub mod linalg;
pub mod poly;
pub mod realize;
