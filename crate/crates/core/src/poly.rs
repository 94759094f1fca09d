//! Dense complex polynomials as coefficient vectors in ascending order.
//!
//! Small helper layer shared by the rational-part bookkeeping, the series
//! manipulations in the operator module and the companion-matrix oracles in
//! the test suites.

use num_complex::Complex64;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Drop trailing coefficients below `tol` in modulus.
pub fn trim(mut p: Vec<Complex64>, tol: f64) -> Vec<Complex64> {
    while let Some(last) = p.last() {
        if last.norm() <= tol && p.len() > 1 {
            p.pop();
        } else {
            break;
        }
    }
    if p.is_empty() {
        p.push(ZERO);
    }
    p
}

/// Degree after exact trailing-zero trimming; the zero polynomial reports 0.
pub fn degree(p: &[Complex64]) -> usize {
    let mut d = p.len().saturating_sub(1);
    while d > 0 && p[d] == ZERO {
        d -= 1;
    }
    d
}

pub fn eval(p: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = ZERO;
    for &c in p.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Horner evaluation of the polynomial and its derivative.
pub fn eval_with_derivative(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = ZERO;
    let mut d = ZERO;
    for &c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

pub fn add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().max(b.len());
    let mut out = vec![ZERO; n];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

pub fn scale(a: &[Complex64], s: Complex64) -> Vec<Complex64> {
    a.iter().map(|&c| c * s).collect()
}

pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == ZERO {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// `(c0 + c1 z)^k` by repeated multiplication.
pub fn linear_pow(c0: Complex64, c1: Complex64, k: usize) -> Vec<Complex64> {
    let mut out = vec![ONE];
    for _ in 0..k {
        out = mul(&out, &[c0, c1]);
    }
    out
}

/// Monic polynomial with the given roots.
pub fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ONE];
    for &r in roots {
        out = mul(&out, &[-r, ONE]);
    }
    out
}

pub fn derivative(p: &[Complex64]) -> Vec<Complex64> {
    if p.len() <= 1 {
        return vec![ZERO];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

/// `z^k * p`.
pub fn shift_up(p: &[Complex64], k: usize) -> Vec<Complex64> {
    let mut out = vec![ZERO; k];
    out.extend_from_slice(p);
    out
}

/// Binomial coefficient as f64 (exact for the small orders used here).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn mul_and_eval_agree() {
        let a = vec![c(1.0, 0.0), c(2.0, -1.0), c(0.0, 3.0)];
        let b = vec![c(-1.0, 1.0), c(4.0, 0.0)];
        let p = mul(&a, &b);
        let z = c(0.3, -0.7);
        let lhs = eval(&p, z);
        let rhs = eval(&a, z) * eval(&b, z);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0), c(2.0, 0.0)];
        let z = c(0.4, 0.2);
        let (v, d) = eval_with_derivative(&p, z);
        assert!((v - eval(&p, z)).norm() < 1e-14);
        let h = 1e-6;
        let fd = (eval(&p, z + c(h, 0.0)) - eval(&p, z - c(h, 0.0))) / c(2.0 * h, 0.0);
        assert!((d - fd).norm() < 1e-6);
        assert!((d - eval(&derivative(&p), z)).norm() < 1e-13);
    }

    #[test]
    fn roots_build_monic_polynomial() {
        let roots = [c(1.0, 0.0), c(-0.5, 0.5)];
        let p = from_roots(&roots);
        for r in roots {
            assert!(eval(&p, r).norm() < 1e-14);
        }
        assert_eq!(degree(&p), 2);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(6, 0), 1.0);
        assert_eq!(binomial(3, 5), 0.0);
    }
}
