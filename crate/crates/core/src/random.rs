//! Seeded random inputs for property checks.

use num_traits::Zero;
use rand::Rng;

use crate::exactalg::{Matrix, Scalar};

/// A random partition of `n` into positive parts.
pub fn partition<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    parts
}

/// Nilpotent Jordan matrix with the given block sizes.
pub fn jordan(parts: &[usize]) -> Matrix {
    let n = parts.iter().sum();
    let mut m = Matrix::zeros(n, n);
    let mut start = 0;
    for &p in parts {
        for i in start..start + p - 1 {
            m[(i, i + 1)] = Scalar::from_int(1);
        }
        start += p;
    }
    m
}

fn small<R: Rng>(rng: &mut R, gaussian: bool) -> Scalar {
    let re: i64 = rng.gen_range(-2..=2);
    let im: i64 = if gaussian { rng.gen_range(-1..=1) } else { 0 };
    Scalar::new(crate::exactalg::int(re), crate::exactalg::int(im))
}

/// Product of random elementary matrices: invertible with small entries.
pub fn invertible<R: Rng>(rng: &mut R, n: usize, gaussian: bool) -> Matrix {
    let mut p = Matrix::identity(n);
    if n < 2 {
        return p;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = small(rng, gaussian);
        if c.is_zero() {
            continue;
        }
        let mut e = Matrix::identity(n);
        e[(i, j)] = c;
        p = p.mul(&e);
    }
    p
}

/// `P J P^{-1}` for a random Jordan type `J` and random invertible `P`.
pub fn conjugated_nilpotent<R: Rng>(rng: &mut R, n: usize, gaussian: bool) -> Matrix {
    let j = jordan(&partition(rng, n));
    let p = invertible(rng, n, gaussian);
    p.mul(&j).mul(&p.inverse().expect("invertible"))
}

/// Sparse strictly upper triangular matrix, conjugated.
pub fn triangular_nilpotent<R: Rng>(rng: &mut R, n: usize, gaussian: bool) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                m[(i, j)] = small(rng, gaussian);
            }
        }
    }
    let p = invertible(rng, n, gaussian);
    p.mul(&m).mul(&p.inverse().expect("invertible"))
}

/// Either construction, with size in `1..=max_n`.
pub fn nilpotent<R: Rng>(rng: &mut R, max_n: usize, gaussian: bool) -> Matrix {
    let n = rng.gen_range(1..=max_n);
    if rng.gen_bool(0.5) {
        conjugated_nilpotent(rng, n, gaussian)
    } else {
        triangular_nilpotent(rng, n, gaussian)
    }
}
