//! Deterministic low-discrepancy sampling. All sampled quantities are pure
//! functions of (count, seed), so reports quoting the seed are reproducible.

/// Radical-inverse (van der Corput) value of `index` in `base`.
fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let mut inv = 0.0;
    let mut denom = 1.0;
    let b = base as f64;
    while index > 0 {
        denom *= b;
        inv += (index % base) as f64 / denom;
        index /= base;
    }
    inv
}

const BASES: [u64; 4] = [2, 3, 5, 7];

/// `i`-th point of the seeded Halton sequence in (0,1)^dim.
pub fn halton(i: usize, dim: usize, seed: u64) -> Vec<f64> {
    // Seed shifts the start index by a large co-prime stride so different
    // seeds give unrelated prefixes of the same global sequence.
    let index = 1 + i as u64 + seed.wrapping_mul(7919);
    (0..dim).map(|d| radical_inverse(index, BASES[d])).collect()
}

/// `n` points in the box given by `min`/`max` (componentwise).
pub fn box_points(min: &[f64], max: &[f64], n: usize, seed: u64) -> Vec<Vec<f64>> {
    let dim = min.len();
    (0..n)
        .map(|i| {
            let u = halton(i, dim, seed);
            (0..dim).map(|d| min[d] + u[d] * (max[d] - min[d])).collect()
        })
        .collect()
}

/// `n` points on the unit sphere in R^4, via Box-Muller over Halton pairs.
pub fn sphere4_points(n: usize, seed: u64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| {
            let u = halton(i, 4, seed);
            let r1 = (-2.0 * u[0].ln()).sqrt();
            let r2 = (-2.0 * u[2].ln()).sqrt();
            let q = [
                r1 * (2.0 * std::f64::consts::PI * u[1]).cos(),
                r1 * (2.0 * std::f64::consts::PI * u[1]).sin(),
                r2 * (2.0 * std::f64::consts::PI * u[3]).cos(),
                r2 * (2.0 * std::f64::consts::PI * u[3]).sin(),
            ];
            let norm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
            q.iter().map(|v| v / norm).collect()
        })
        .collect()
}

/// `n` unit vectors in R^3, area-uniform. When `plant_pairs` is true the
/// first ten entries are five pairs sharing the third component exactly but
/// pointing at different azimuths; top condition (iv) compares rotation
/// speeds across such pairs.
pub fn unit_velocities(n: usize, seed: u64, plant_pairs: bool) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(n);
    if plant_pairs && n >= 10 {
        for p in 0..5 {
            let u = halton(p, 2, seed.wrapping_add(101));
            // keep planted velocities transverse: a3 in (-0.85, 0.85)
            let a3 = 1.7 * u[0] - 0.85;
            let s = (1.0 - a3 * a3).sqrt();
            let az1 = 2.0 * std::f64::consts::PI * u[1];
            let az2 = az1 + 2.0; // distinct azimuth, same a3
            out.push([s * az1.cos(), s * az1.sin(), a3]);
            out.push([s * az2.cos(), s * az2.sin(), a3]);
        }
    }
    let mut i = 0;
    while out.len() < n {
        let u = halton(i, 2, seed);
        let a3 = 2.0 * u[0] - 1.0;
        let s = (1.0 - a3 * a3).max(0.0).sqrt();
        let az = 2.0 * std::f64::consts::PI * u[1];
        out.push([s * az.cos(), s * az.sin(), a3]);
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_is_deterministic_and_in_unit_cube() {
        let a = halton(17, 4, 42);
        let b = halton(17, 4, 42);
        assert_eq!(a, b);
        for v in a {
            assert!(v > 0.0 && v < 1.0);
        }
    }

    #[test]
    fn different_seeds_differ() {
        assert_ne!(halton(3, 3, 1), halton(3, 3, 2));
    }

    #[test]
    fn sphere_points_are_unit() {
        for q in sphere4_points(50, 42) {
            let n: f64 = q.iter().map(|v| v * v).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn velocities_are_unit_and_pairs_share_a3() {
        let vs = unit_velocities(20, 42, true);
        assert_eq!(vs.len(), 20);
        for v in &vs {
            let n: f64 = v.iter().map(|x| x * x).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
        for p in 0..5 {
            assert_eq!(vs[2 * p][2], vs[2 * p + 1][2]);
            let d: f64 = (0..2).map(|i| (vs[2 * p][i] - vs[2 * p + 1][i]).abs()).sum();
            assert!(d > 1e-3, "planted pair {p} should differ in azimuth");
        }
    }
}
