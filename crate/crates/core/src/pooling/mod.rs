//! Adaptive pooling windows, the smooth pooling matrix, and plan application.

pub mod matrix;
pub mod plan;
pub mod windows;

pub use matrix::{
    gamma_gradient, pooling_matrix, pooling_matrix_on_grid, row_normalized, uniform_matrix, window_weight,
    window_weight_gamma_derivative,
};
pub use plan::{
    analyze, apply, plan_frame_wise, plan_joint_wise, pool, Analysis, PooledSequence, PoolingCurve, PoolingPlan,
};
pub use windows::{linear_curve, uniform_boundaries, window_boundaries, CurveWindows, WindowGrid};
