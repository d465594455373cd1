//! Exact computation of sum-to-difference (SD) maps of finite fields.
//!
//! An SD-map is a function `f` between fields with
//! `f((x+y)/(x-y)) = (f(x)+f(y))/(f(x)-f(y))` for all `x != y`. This crate
//! provides finite-field arithmetic, direct and brute-force verification of
//! SD-maps, the exponent-scan computation of the SD-group of `F_q`, exact
//! polynomial identities behind the classification, and truncated p-adic
//! arithmetic with Hensel lifting.

pub mod arith;
pub mod classify;
pub mod field;
pub mod padic;
pub mod sd_maps;
pub mod symbolic;
pub mod tables;

pub use field::{field_of_order, make_field, FieldElement, FieldError, FieldSpec};
pub use sd_maps::{brute_force_sd_maps, is_sd_map, structural_report, MapTable, SearchMode};
