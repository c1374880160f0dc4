use serde::Serialize;

use crate::systems::{level, SystemKind, SystemSpec};

use super::NumericError;

/// Lowest finite-difference eigenvalues of `G₃` next to the closed-form levels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub kind: SystemKind,
    #[serde(rename = "N")]
    pub dim: u32,
    pub ell: u32,
    pub xmax: f64,
    pub points: usize,
    pub spacing: f64,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `λ_n/2` (oscillator-type) or `K_n` (hydrogen-type).
    pub predicted: Vec<f64>,
    pub relative_error: Vec<f64>,
}

impl SpectrumReport {
    pub fn max_relative_error(&self) -> f64 {
        self.relative_error.iter().copied().fold(0.0, f64::max)
    }
}

/// Smallest grid accepted by [`fd_spectrum`].
pub const MIN_POINTS: usize = 200;

/// Symmetric tridiagonal matrix: diagonal and the off-diagonal below it.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `sigma`, by the signs of the
    /// pivots of `T − σI = LDLᵀ`.
    pub fn count_below(&self, sigma: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let e2 = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] };
            q = self.diag[i] - sigma - if i == 0 { 0.0 } else { e2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (self.diag[i].abs() + sigma.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 } + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k` smallest eigenvalues, ascending, by Sturm-sequence bisection.
    pub fn lowest_eigenvalues(&self, k: usize) -> Vec<f64> {
        let (lo0, hi0) = self.gershgorin();
        (0..k)
            .map(|j| {
                let (mut lo, mut hi) = (lo0, hi0);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.count_below(mid) > j {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }
}

/// Second-order finite-difference matrix of `G₃` on `h, 2h, …, points·h`
/// with `h = xmax/(points + 1)` and Dirichlet ends.
///
/// Oscillator-type systems discretize `¼(−D² + x² + (I²−¼)/x²)` directly.
/// Hydrogen-type systems pose `B u = K M u` with
/// `B = (1/2c)(−D² + c² + (I²−¼)/x²)` and `M = diag(1/x)`, and return the
/// symmetric `M^(−½) B M^(−½)`, which has the same eigenvalues.
pub fn fd_matrix(spec: &SystemSpec, xmax: f64, points: usize) -> Tridiagonal {
    let h = xmax / (points as f64 + 1.0);
    let index = crate::systems::angular_index(spec).value;
    let a = num_traits::ToPrimitive::to_f64(&spec.index_squared_exact()).unwrap_or(index * index) - 0.25;
    let xs: Vec<f64> = (1..=points).map(|i| i as f64 * h).collect();
    let lap_d = 2.0 / (h * h);
    let lap_o = -1.0 / (h * h);
    if spec.kind().is_oscillator_type() {
        Tridiagonal {
            diag: xs.iter().map(|&x| 0.25 * (lap_d + x * x + a / (x * x))).collect(),
            off: vec![0.25 * lap_o; points - 1],
        }
    } else {
        let c = spec.coupling().expect("hydrogen-type coupling");
        let s = 0.5 / c;
        Tridiagonal {
            diag: xs.iter().map(|&x| x * s * (lap_d + c * c + a / (x * x))).collect(),
            off: xs.windows(2).map(|w| (w[0] * w[1]).sqrt() * s * lap_o).collect(),
        }
    }
}

pub fn fd_spectrum(spec: &SystemSpec, xmax: f64, points: usize, k: usize) -> Result<SpectrumReport, NumericError> {
    if points < MIN_POINTS {
        return Err(NumericError::Grid(format!("{points} grid points, at least {MIN_POINTS} required")));
    }
    if k == 0 || k > points {
        return Err(NumericError::Grid(format!("{k} levels requested from a {points}-point grid")));
    }
    if !(xmax > 0.0 && xmax.is_finite()) {
        return Err(NumericError::Grid(format!("xmax = {xmax}")));
    }
    let matrix = fd_matrix(spec, xmax, points);
    let eigenvalues = matrix.lowest_eigenvalues(k);
    if eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(NumericError::Grid("eigenvalue bisection produced a non-finite value".into()));
    }
    let scale = if spec.kind().is_oscillator_type() { 0.5 } else { 1.0 };
    let predicted: Vec<f64> = (0..k as u32).map(|n| scale * level(spec, n).value).collect();
    let relative_error = eigenvalues
        .iter()
        .zip(&predicted)
        .map(|(e, p)| (e - p).abs() / p.abs())
        .collect();
    Ok(SpectrumReport {
        kind: spec.kind(),
        dim: spec.dim(),
        ell: spec.ell(),
        xmax,
        points,
        spacing: xmax / (points as f64 + 1.0),
        eigenvalues,
        predicted,
        relative_error,
    })
}

/// Per-level error ratio `err(h)/err(h/2)`; the refined grid has
/// `2·points + 1` nodes so its spacing is exactly half.
pub fn refinement_ratios(spec: &SystemSpec, xmax: f64, points: usize, k: usize) -> Result<Vec<f64>, NumericError> {
    let coarse = fd_spectrum(spec, xmax, points, k)?;
    let fine = fd_spectrum(spec, xmax, 2 * points + 1, k)?;
    Ok(coarse
        .eigenvalues
        .iter()
        .zip(&fine.eigenvalues)
        .zip(&coarse.predicted)
        .map(|((c, f), p)| (c - p).abs() / (f - p).abs())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_count_on_known_matrix() {
        // Second difference on 3 nodes: eigenvalues 2 − √2, 2, 2 + √2.
        let t = Tridiagonal { diag: vec![2.0; 3], off: vec![-1.0; 2] };
        assert_eq!(t.count_below(0.5), 0);
        assert_eq!(t.count_below(1.0), 1);
        assert_eq!(t.count_below(2.5), 2);
        let ev = t.lowest_eigenvalues(3);
        let r2 = 2f64.sqrt();
        for (e, x) in ev.iter().zip([2.0 - r2, 2.0, 2.0 + r2]) {
            assert!((e - x).abs() < 1e-14);
        }
    }

    #[test]
    fn oscillator_and_hydrogen_levels() {
        let osc = fd_spectrum(&SystemSpec::oscillator(3, 0).unwrap(), 12.0, 2000, 3).unwrap();
        for (e, x) in osc.eigenvalues.iter().zip([0.75, 1.75, 2.75]) {
            assert!((e - x).abs() / x < 1e-3, "{e} vs {x}");
        }
        let hyd = fd_spectrum(&SystemSpec::hydrogen(3, 0).unwrap(), 60.0, 2000, 3).unwrap();
        for (e, x) in hyd.eigenvalues.iter().zip([1.0, 2.0, 3.0]) {
            assert!((e - x).abs() / x < 1e-3, "{e} vs {x}");
        }
        assert!(osc.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn grid_preconditions() {
        let spec = SystemSpec::oscillator(3, 0).unwrap();
        assert!(fd_spectrum(&spec, 12.0, 100, 3).is_err());
        assert!(fd_spectrum(&spec, 12.0, 300, 301).is_err());
        assert!(fd_spectrum(&spec, 12.0, 300, 0).is_err());
    }

    #[test]
    fn pseudo_harmonic_without_inverse_square_matches_oscillator() {
        let osc = fd_spectrum(&SystemSpec::oscillator(5, 1).unwrap(), 12.0, 500, 4).unwrap();
        let ph = fd_spectrum(&SystemSpec::pseudo_harmonic(5, 1, 0.5, 0.0, 0.0).unwrap(), 12.0, 500, 4).unwrap();
        assert_eq!(osc.eigenvalues, ph.eigenvalues);
    }
}
