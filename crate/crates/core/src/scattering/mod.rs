//! Direct scattering for the 3×3 x-equation μ_x + ik[σ, μ] = Uμ with
//! σ = diag(1, 1, −1) and U = [[0, 0, u], [0, 0, ū], [−ū, −u, 0]].

mod delta;
mod jump;
mod matrix;
mod profile;
mod reflection;

pub use delta::{chi_of, det_delta, DeltaOptions, Endpoint};
pub use jump::{build_jump, min_eigenvalue, phase};
pub use matrix::{gamma_perm, scattering_matrix, CMatrix3, ScatteringMatrix};
pub use profile::{InitialProfile, DEFAULT_DECAY_TOL};
pub use reflection::{
    norm_sq, nu_of, reflection, reflection_guarded, swap_conj, KGrid, ReflectionTable, Row2,
    S33_ZERO_GUARD,
};
