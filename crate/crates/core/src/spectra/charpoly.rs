use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{IntMatrix, IntPolynomial};

/// `det(λI − m)` by the Faddeev–LeVerrier recurrence in arbitrary precision.
///
/// With `M_0 = 0` and `c_n = 1`:
/// `M_k = m·M_{k−1} + c_{n−k+1}·I`, `c_{n−k} = −tr(m·M_k) / k`.
/// For integer `m` each division is exact.
pub fn char_poly_exact(m: &IntMatrix) -> IntPolynomial {
    let n = m.dim();
    let a: Vec<BigInt> = (0..n * n)
        .map(|k| BigInt::from(m.get(k / n, k % n)))
        .collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1} I
        let mut next = mat_mul(&a, &mk, n);
        for i in 0..n {
            next[i * n + i] += &coeffs[n - k + 1];
        }
        let am = mat_mul(&a, &next, n);
        let tr: BigInt = (0..n).map(|i| &am[i * n + i]).sum();
        let (q, r) = (-tr).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "Faddeev–LeVerrier division must be exact");
        coeffs[n - k] = q;
        mk = next;
    }
    IntPolynomial::new(coeffs)
}

fn mat_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for l in 0..n {
            let ail = &a[i * n + l];
            if ail.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += ail * &b[l * n + j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: Laplace expansion of det(λI − m) along the first row,
    /// with polynomial entries.
    fn laplace(m: &[Vec<IntPolynomial>]) -> IntPolynomial {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = IntPolynomial::zero();
        for j in 0..n {
            let minor: Vec<Vec<IntPolynomial>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * &laplace(&minor);
            acc = if j % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    fn oracle(m: &IntMatrix) -> IntPolynomial {
        let n = m.dim();
        let rows: Vec<Vec<IntPolynomial>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = IntPolynomial::constant(-m.get(i, j));
                        if i == j {
                            &c + &IntPolynomial::monomial(1, 1)
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        laplace(&rows)
    }

    #[test]
    fn small_cases() {
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(char_poly_exact(&swap), IntPolynomial::from_i64(&[-1, 0, 1]));
        assert_eq!(
            char_poly_exact(&IntMatrix::identity(3)),
            IntPolynomial::from_i64(&[-1, 3, -3, 1])
        );
        let p3 = IntMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]).unwrap();
        assert_eq!(
            char_poly_exact(&p3),
            IntPolynomial::from_i64(&[-4, -6, 0, 1])
        );
    }

    #[test]
    fn agrees_with_laplace_on_nonsymmetric_matrices() {
        let mut seed = 0x2545_f491_4f6c_dd1du64;
        for n in 1..=6 {
            for _ in 0..5 {
                let mut m = IntMatrix::zeros(n);
                for i in 0..n {
                    for j in 0..n {
                        seed ^= seed << 13;
                        seed ^= seed >> 7;
                        seed ^= seed << 17;
                        m.set(i, j, (seed % 19) as i64 - 9);
                    }
                }
                assert_eq!(char_poly_exact(&m), oracle(&m), "{m:?}");
            }
        }
    }

    #[test]
    fn wide_coefficients_do_not_overflow() {
        // J − I of order 16 scaled by 10^6: det(λI − cA) has constant term beyond i64
        let n = 16;
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m.set(i, j, 1_000_000);
                }
            }
        }
        let p = char_poly_exact(&m);
        assert!(p.to_i64_vec().is_none());
        // eigenvalues 15c (once) and −c (15 times): constant term is −(15c)·c^15
        let c = BigInt::from(1_000_000);
        let expect = -(BigInt::from(15) * &c) * num_traits::pow(c.clone(), 15);
        assert_eq!(p.coeff(0), expect);
    }
}
