//! Continuation of the matrix systems for `L`, `L*` and `K` on the regular
//! torus, its extension across chambers, and closed-form checks.

mod bounds;
mod cache;
mod checks;
mod det;
mod extend;
mod integrator;
mod path;
mod point;
mod systems;

pub use bounds::{
    distance_product, face_approach, global_bound_check, gronwall_closed_form, gronwall_integral,
    gronwall_integrand, loglog_slope, BoundSample, GlobalBoundReport,
};
pub use cache::{global_cache, CacheKey, FlowCache};
pub use checks::{flow_invariants, local_l, mixed_partial_residual, CheckLine};
pub use det::{det_closed_form, det_ode};
pub use extend::{extend_l, l_in_c0, monodromy_exponent, monodromy_factor, nu};
pub use integrator::{integrate, FlowResult, StepOptions};
pub use path::{AnglePath, LinePath, LogPath, Path};
pub use point::{base_angles, margin, principal_angle, TorusPoint};
pub use systems::{
    integrate_l, integrate_lstar, kdieq_residual, l_form, lstar_form, rhs_l, FlowConfig,
};

#[cfg(test)]
mod tests;
