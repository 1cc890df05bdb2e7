pub mod amidakuji;
pub mod cayley;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod factorize;
pub mod perm;
pub mod rank;
