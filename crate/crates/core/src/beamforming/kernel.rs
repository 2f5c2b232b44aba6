use crate::geometry::index_offsets;

const SINGULAR_THRESHOLD: f64 = 1e-9;

/// Dirichlet kernel `f(θ; N) = Σ_{l∈I_N} e^{-jθl} = sin(Nθ/2) / sin(θ/2)`.
///
/// Near the removable singularities (`|sin(θ/2)| < 1e-9`) the series is
/// summed directly.
pub fn dirichlet_kernel(theta: f64, n: usize) -> f64 {
    let s = (theta / 2.0).sin();
    if s.abs() < SINGULAR_THRESHOLD {
        return index_offsets(n).map(|l| (theta * l).cos()).sum();
    }
    (n as f64 * theta / 2.0).sin() / s
}

/// Second-order expansion of the kernel around its peak,
/// `N - (N³ - N)·θ²/24`.
pub fn main_lobe_approx(theta: f64, n: usize) -> f64 {
    let n = n as f64;
    n - (n * n * n - n) / 24.0 * theta * theta
}
