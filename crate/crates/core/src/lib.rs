#![no_std]
//! Combinatorics and algebra behind genus-1 rational surgery triangles.
//!
//! Everything here works over `F₂[[U]]` truncated at a caller-chosen order.

extern crate alloc;

pub mod useries;
pub mod diagram;
pub mod localsys;
pub mod cycles;
pub mod homalg;
pub mod knotfloer;
