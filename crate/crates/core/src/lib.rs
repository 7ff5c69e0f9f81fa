// NaN-rejecting checks are written as negated comparisons on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod cli;
pub mod experiment;
pub mod hierarchy;
pub mod metrics;
pub mod sampler;
pub mod stats;
