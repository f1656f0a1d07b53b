//! Matrices over a cyclotomic field and finite matrix groups: closure of a
//! generating set, conjugacy classes, centralizers, determinants and
//! reflection detection.

mod group;
mod matrix;

pub use group::{
    close_group, element_order, element_order_bounded, FiniteMatrixGroup, GroupError,
    DEFAULT_CLOSURE_CAP, DEFAULT_ORDER_BOUND,
};
pub use matrix::CycMatrix;
