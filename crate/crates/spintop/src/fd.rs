//! Central-difference differentiation helpers shared by every module that
//! measures derivatives numerically.

use crate::error::Result;

/// Step sizes for finite differencing.
///
/// `step` is used when the differentiated quantity is evaluated exactly
/// (expressions, closed-form coefficients). `outer_step` is used when the
/// quantity is itself the output of an inner finite difference (structure
/// functions, connection coefficients): a wider step keeps the inner noise,
/// roughly eps/step per evaluation, from being amplified by the quotient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    pub step: f64,
    pub outer_step: f64,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig { step: 1e-5, outer_step: 1e-3 }
    }
}

impl FdConfig {
    /// Noise floor of a single second-order central difference with exact
    /// endpoint values: rounding eps/h plus truncation h^2/6.
    pub fn noise_floor(&self) -> f64 {
        f64::EPSILON / self.step + self.step * self.step / 6.0
    }
}

/// Directional derivative of `f` at `x` along `v` by second-order central
/// differences. `project` is applied to the displaced points before
/// evaluation so that constrained charts stay on their constraint set.
pub fn directional_derivative<F, P>(
    mut f: F,
    x: &[f64],
    v: &[f64],
    h: f64,
    mut project: P,
) -> Result<f64>
where
    F: FnMut(&[f64]) -> Result<f64>,
    P: FnMut(&mut [f64]),
{
    debug_assert!(h > 0.0);
    let mut plus = x.to_vec();
    let mut minus = x.to_vec();
    for i in 0..x.len() {
        plus[i] += h * v[i];
        minus[i] -= h * v[i];
    }
    project(&mut plus);
    project(&mut minus);
    Ok((f(&plus)? - f(&minus)?) / (2.0 * h))
}

/// Jacobian of a map R^n -> R^m by central differences along the coordinate
/// axes. Returns row-major `out[r][c] = d map_r / d x_c`.
pub fn jacobian_fd<F, P>(
    mut map: F,
    x: &[f64],
    dim_out: usize,
    h: f64,
    mut project: P,
) -> Result<Vec<Vec<f64>>>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
    P: FnMut(&mut [f64]),
{
    let n = x.len();
    let mut jac = vec![vec![0.0; n]; dim_out];
    let mut plus = x.to_vec();
    let mut minus = x.to_vec();
    for c in 0..n {
        plus.copy_from_slice(x);
        minus.copy_from_slice(x);
        plus[c] += h;
        minus[c] -= h;
        project(&mut plus);
        project(&mut minus);
        let fp = map(&plus)?;
        let fm = map(&minus)?;
        for r in 0..dim_out {
            jac[r][c] = (fp[r] - fm[r]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// Composite Simpson quadrature of `f` over [0, 1] with `n` subintervals
/// (rounded up to even). Fourth-order accurate for smooth integrands.
pub fn simpson01<F>(mut f: F, n: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let n = if n % 2 == 0 { n.max(2) } else { n + 1 };
    let h = 1.0 / n as f64;
    let mut acc = f(0.0)? + f(1.0)?;
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h)?;
    }
    Ok(acc * h / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_project(_: &mut [f64]) {}

    #[test]
    fn central_difference_is_exact_on_quadratics() {
        // truncation term vanishes: only rounding noise remains
        let f = |p: &[f64]| Ok(3.0 * p[0] * p[0] - 2.0 * p[0] * p[1] + p[1]);
        let d = directional_derivative(f, &[1.0, 2.0], &[1.0, 0.0], 1e-5, no_project).unwrap();
        assert!((d - (6.0 - 4.0)).abs() < 1e-9, "got {d}");
        let d = directional_derivative(f, &[1.0, 2.0], &[0.0, 1.0], 1e-5, no_project).unwrap();
        assert!((d - (-2.0 + 1.0)).abs() < 1e-9, "got {d}");
    }

    #[test]
    fn derivative_of_sine_at_zero() {
        let d = directional_derivative(|p| Ok(p[0].sin()), &[0.0], &[1.0], 1e-5, no_project)
            .unwrap();
        assert!((d - 1.0).abs() < 1e-10, "got {d}");
    }

    #[test]
    fn constant_maps_have_zero_derivative() {
        let d = directional_derivative(|_| Ok(7.25), &[0.3, 0.4, 0.5], &[1.0, 1.0, 1.0], 1e-5,
            no_project)
            .unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn jacobian_of_linear_map_is_its_matrix() {
        // mirror map used by the sphere isometry checks
        let map = |p: &[f64]| Ok(vec![p[0], p[1], -p[2], -p[3]]);
        let j = jacobian_fd(map, &[0.3, -0.1, 0.7, 0.2], 4, 1e-5, no_project).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let want = if r == c {
                    if r < 2 { 1.0 } else { -1.0 }
                } else {
                    0.0
                };
                assert!((j[r][c] - want).abs() < 1e-10, "({r},{c}) got {}", j[r][c]);
            }
        }
    }

    #[test]
    fn directional_derivative_is_linear_in_direction() {
        let f = |p: &[f64]| Ok((p[0] * p[1]).sin() + p[2].exp());
        let x = [0.4, -0.3, 0.2];
        let u = [1.0, 0.5, -0.2];
        let v = [-0.3, 0.8, 0.6];
        let uv: Vec<f64> = (0..3).map(|i| u[i] + v[i]).collect();
        let du = directional_derivative(f, &x, &u, 1e-5, no_project).unwrap();
        let dv = directional_derivative(f, &x, &v, 1e-5, no_project).unwrap();
        let duv = directional_derivative(f, &x, &uv, 1e-5, no_project).unwrap();
        assert!((duv - du - dv).abs() < 1e-8);
    }

    #[test]
    fn simpson_integrates_smooth_functions() {
        let v = simpson01(|t| Ok((std::f64::consts::PI * t).sin()), 64).unwrap();
        assert!((v - 2.0 / std::f64::consts::PI).abs() < 1e-9);
    }
}
