//! Exact arithmetic on finite dynamical systems up to isomorphism:
//! sums, direct products, canonical codes, unrolling into periodic trees,
//! polynomial-time division, cancellativity witnesses, k-th roots, and
//! unique factorisation in the monoids generated by linear dendrons.

pub mod cycles;
pub mod division;
pub mod fds;
pub mod forest;
pub mod ldk;
pub mod oracle;
pub mod roots;
pub mod unrolling;
