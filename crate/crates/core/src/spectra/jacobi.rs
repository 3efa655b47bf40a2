use super::{SpectraError, SymMatrix};

/// Sweep budget for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a symmetric matrix, sorted by non-increasing value.
#[derive(Clone, Debug)]
pub struct Spectrum {
    values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    max_residual: f64,
    sweeps: usize,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Unit eigenvector paired with `values()[k]`.
    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k]
    }

    /// Distance spectral radius when the matrix is a distance matrix.
    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    pub fn least(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn largest_vector(&self) -> &[f64] {
        &self.vectors[0]
    }

    pub fn least_vector(&self) -> &[f64] {
        &self.vectors[self.vectors.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest `max_i |λx_i − (Mx)_i|` over all returned pairs.
    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// `tol`, or below the rounding floor `8·ε·‖M‖_F` when that is larger.
pub fn sym_eigenvalues(m: &SymMatrix, tol: f64) -> Result<Spectrum, SpectraError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(SpectraError::BadTolerance(tol));
    }
    let n = m.dim();
    let mut a = m.data().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = tol.max(8.0 * f64::EPSILON * m.frobenius_sq().sqrt());

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(SpectraError::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let nkp = c * akp - s * akq;
                    let nkq = s * akp + c * akq;
                    a[k * n + p] = nkp;
                    a[p * n + k] = nkp;
                    a[k * n + q] = nkq;
                    a[q * n + k] = nkq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| {
            let mut x: Vec<f64> = (0..n).map(|k| v[k * n + col]).collect();
            orient(&mut x);
            x
        })
        .collect();
    let max_residual = values
        .iter()
        .zip(&vectors)
        .map(|(&l, x)| verify_eigenpair(m, l, x).expect("dimensions agree"))
        .fold(0.0, f64::max);
    Ok(Spectrum {
        values,
        vectors,
        max_residual,
        sweeps,
    })
}

/// Fixes the arbitrary sign of an eigenvector: positive entry sum, or
/// positive first significant entry when the sum vanishes.
fn orient(x: &mut [f64]) {
    let sum: f64 = x.iter().sum();
    let flip = if sum.abs() > 1e-9 {
        sum < 0.0
    } else {
        x.iter().find(|v| v.abs() > 1e-9).is_some_and(|&v| v < 0.0)
    };
    if flip {
        x.iter_mut().for_each(|v| *v = -*v);
    }
}

/// Eigen-equation residual `max_i |λx_i − Σ_j m_ij x_j|`.
pub fn verify_eigenpair(m: &SymMatrix, lambda: f64, x: &[f64]) -> Result<f64, SpectraError> {
    if x.len() != m.dim() {
        return Err(SpectraError::DimensionMismatch {
            expected: m.dim(),
            found: x.len(),
        });
    }
    Ok(m.mul_vec(x)
        .iter()
        .zip(x)
        .map(|(mx, xi)| (lambda * xi - mx).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::tol;

    #[test]
    fn two_by_two() {
        let m = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let s = sym_eigenvalues(&m, tol::SOLVER).unwrap();
        assert!((s.largest() - 1.0).abs() < 1e-15);
        assert!((s.least() + 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(verify_eigenpair(&m, 1.0, &[h, h]).unwrap() < 1e-15);
        assert_eq!(verify_eigenpair(&m, 1.0, &[1.0, 0.0]).unwrap(), 1.0);
        assert!(matches!(
            verify_eigenpair(&m, 1.0, &[1.0]),
            Err(SpectraError::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn path_three_distance_matrix() {
        // det(λI − D(P3)) = λ³ − 6λ − 4 = (λ + 2)(λ² − 2λ − 2)
        let m = SymMatrix::from_rows(&[
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 1.0],
            vec![2.0, 1.0, 0.0],
        ])
        .unwrap();
        let s = sym_eigenvalues(&m, tol::SOLVER).unwrap();
        let r3 = 3f64.sqrt();
        let expect = [1.0 + r3, 1.0 - r3, -2.0];
        for (a, b) in s.values().iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        assert!(s.largest_vector().iter().all(|&x| x > 0.0));
    }

    #[test]
    fn diagonal_and_empty_inputs() {
        let m = SymMatrix::from_rows(&[vec![3.0, 0.0], vec![0.0, -1.0]]).unwrap();
        let s = sym_eigenvalues(&m, tol::SOLVER).unwrap();
        assert_eq!(s.values(), &[3.0, -1.0]);
        assert_eq!(s.sweeps(), 0);
        assert!(matches!(
            sym_eigenvalues(&m, 0.0),
            Err(SpectraError::BadTolerance(_))
        ));
    }
}
