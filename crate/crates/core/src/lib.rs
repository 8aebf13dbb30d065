//! Hyperelliptic Mumford curves over Q_p with tame p-torsion: exact
//! p-adic arithmetic, Whittaker groups, period matrices, and the number
//! theory used to globalise the construction.

pub mod fp;
pub mod padic;
pub mod poly;
pub mod primes;
pub mod geometry;
pub mod whittaker;
pub mod period;
pub mod tame;
pub mod galois;
pub mod frobenius;
pub mod pipeline;
