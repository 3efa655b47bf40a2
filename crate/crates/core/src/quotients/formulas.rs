//! Closed-form quotient matrices and published characteristic polynomials.
//!
//! Everything here is a polynomial in the family parameters and accepts any
//! integers, which lets identity checks interpolate outside the valid ranges.

use crate::spectra::{IntMatrix, IntPolynomial};

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
        .expect("square by construction")
}

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

/// H(s,t), classes (u, N(u), N(v), v).
pub fn matrix_h(s: i64, t: i64) -> IntMatrix {
    m(&[
        &[0, 2 * s, t, 1],
        &[2, 2 * (s - 1), 3 * t, 1],
        &[1, 3 * s, 2 * (t - 1), 2],
        &[1, s, 2 * t, 0],
    ])
}

/// B1(p,q), classes (u, v, U∖{u}, V∖{v}). No matrix is published for this
/// family; this one is read off the graph.
pub fn matrix_b1(p: i64, q: i64) -> IntMatrix {
    m(&[
        &[0, 1, p - 1, 2 * (q - 1)],
        &[1, 0, 2 * (p - 1), q - 1],
        &[1, 2, p - 2, 3 * (q - 1)],
        &[2, 1, 3 * (p - 1), q - 2],
    ])
}

/// B2(p,q), classes (u, v, w, U∖{u,w}, V∖{v}).
pub fn matrix_b2(p: i64, q: i64) -> IntMatrix {
    m(&[
        &[0, 1, 1, p - 2, 2 * (q - 1)],
        &[1, 0, 2, 2 * (p - 2), q - 1],
        &[1, 2, 0, p - 2, q - 1],
        &[1, 2, 1, p - 3, 2 * (q - 1)],
        &[2, 1, 1, 2 * (p - 2), q - 2],
    ])
}

/// T(n−3,1), classes (u, v, pendants of u, w).
pub fn matrix_t(n: i64) -> IntMatrix {
    m(&[
        &[0, 3, 2 * (n - 3), 1],
        &[3, 0, n - 3, 2],
        &[2, 1, n - 4, 1],
        &[1, 2, n - 3, 0],
    ])
}

/// L(p,q), classes (u, v, w, K_p rest, K_q rest).
pub fn matrix_l(p: i64, q: i64) -> IntMatrix {
    m(&[
        &[0, 2, 1, 2 * (p - 2), q - 1],
        &[2, 0, 1, p - 2, 2 * (q - 1)],
        &[1, 1, 0, 2 * (p - 2), q - 1],
        &[2, 1, 2, 2 * (p - 3), q - 1],
        &[1, 2, 1, p - 2, 2 * (q - 2)],
    ])
}

/// L′ on `n` vertices, classes (u, v, w, w′, clique rest). The published
/// matrix is written in a parameter `p`; it describes L′ exactly when `p = n`.
pub fn matrix_lprime(n: i64) -> IntMatrix {
    let p = n;
    m(&[
        &[0, 2, 1, 1, 2 * (p - 4)],
        &[2, 0, 1, 1, p - 4],
        &[1, 1, 0, 2, 2 * (p - 4)],
        &[1, 1, 2, 0, p - 4],
        &[2, 1, 2, 1, 2 * (p - 5)],
    ])
}

/// L″ on `n` vertices, classes (u′, w′, a, b, clique rest) where u′–a–b is
/// the hanging path. Read off the graph; no matrix is published.
pub fn matrix_ldprime(n: i64) -> IntMatrix {
    m(&[
        &[0, 1, 2, 1, 2 * (n - 4)],
        &[1, 0, 1, 1, 2 * (n - 4)],
        &[2, 1, 0, 2, n - 4],
        &[1, 1, 2, 0, n - 4],
        &[2, 2, 1, 1, 2 * (n - 5)],
    ])
}

/// φ_{s,t} for H(s,t).
pub fn phi_h(s: i64, t: i64) -> IntPolynomial {
    poly(&[
        -4 * s - 4 * t - 4,
        -12 * s - 12 * t - 4 * s * t - 4,
        -9 * s - 9 * t - 5 * s * t + 3,
        -2 * s - 2 * t + 4,
        1,
    ])
}

/// Published φ_{p,q} for B1(p,q).
pub fn phi_b1(p: i64, q: i64) -> IntPolynomial {
    poly(&[
        -5 * p * q + 2 * p + 2 * q,
        -14 * p * q + 6 * p + 6 * q,
        -8 * p * q + 2 * p + 2 * q + 4,
        -q + 4 - p,
        1,
    ])
}

/// Published quintic for B2(p,q).
pub fn phi_b2(p: i64, q: i64) -> IntPolynomial {
    poly(&[
        3 * p * q - 6 * p - 2 * q + 4,
        -(p * q + 10 * p - 8),
        -(8 * p * q + 6 * p - 4 * q - 8),
        -(3 * p * q + 4 * p + q - 10),
        -(q - 5 + p),
        1,
    ])
}

/// ψ for T(n−3,1).
pub fn psi_t(n: i64) -> IntPolynomial {
    poly(&[-12, -6 * n - 8, 4 - 6 * n, -n + 4, 1])
}

/// Ψ for L′ on `n` vertices.
pub fn psi_lprime(n: i64) -> IntPolynomial {
    poly(&[
        0,
        -(-4 * n + 48),
        -10 * n,
        -(-28 + 10 * n),
        -(2 * n - 10),
        1,
    ])
}

/// Ψ′ for L″ on `n` vertices.
pub fn psi_ldprime(n: i64) -> IntPolynomial {
    poly(&[
        14 * n - 70,
        -(103 - 15 * n),
        -(10 + 8 * n),
        -(-28 + 10 * n),
        -(2 * n - 10),
        1,
    ])
}

/// Φ_{p,q} for L(p,q).
pub fn phi_l(p: i64, q: i64) -> IntPolynomial {
    poly(&[
        12 * p * q - 10 * p - 22 * q + 2,
        -(-30 * p * q + 45 * p + 63 * q - 53),
        -(-18 * p * q + 44 * p + 50 * q - 74),
        -(-3 * p * q + 16 * p + 16 * q - 40),
        -(2 * q - 10 + 2 * p),
        1,
    ])
}
