//! Countable ultrahomogeneous partial orders, their copies, and maximal
//! chains of copies, all in exact arithmetic.

pub mod catalogue;
pub mod chains;
pub mod cli;
pub mod generic;
pub mod order;
pub mod par;
pub mod qset;
pub mod rational;
pub mod sample;
pub mod verdict;
