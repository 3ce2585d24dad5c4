//! Exact piecewise-linear normed planes over ordered fields.
//!
//! The crate builds a normed plane whose unit circle is an infinite
//! inscribed polygon with rational vertices, decides which of its points
//! are extreme and which extreme points are adjacent, reads natural-number
//! multiplication off the edge lengths of short inscribed paths, and
//! compiles sentences of Robinson arithmetic into the additive first-order
//! language of normed spaces.
//!
//! Everything is exact: scalars are rationals or rational functions in a
//! positive infinitesimal. The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod field;
pub mod constants;
pub mod geometry;
pub mod predicates;
pub mod interp;
