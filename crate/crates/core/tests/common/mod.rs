//! Shared helpers for integration tests: seeded random differential
//! polynomials and fields at desk scale.
#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;

use diffpuiseux::diffpoly::{DiffMonomial, DiffPoly};
use diffpuiseux::numfield::{AlgNum, NumberField};
use diffpuiseux::qpoly::QPoly;
use diffpuiseux::rat::{rat, Rat};

pub fn q_field() -> Arc<NumberField> {
    NumberField::rationals()
}

pub fn qr(field: &Arc<NumberField>, num: i64, den: i64) -> AlgNum {
    AlgNum::from_rat(field.clone(), rat(num, den))
}

/// Nonzero small rational.
pub fn random_rat(rng: &mut impl Rng) -> Rat {
    loop {
        let num = rng.random_range(-5..=5i64);
        if num == 0 {
            continue;
        }
        let den = rng.random_range(1..=3i64);
        return rat(num, den);
    }
}

/// Random exponent vector with |alpha| <= d over n+1 variables.
fn random_alpha(rng: &mut impl Rng, n: usize, d: u32) -> Vec<u32> {
    let mut alpha = vec![0u32; n + 1];
    let total = rng.random_range(0..=d);
    for _ in 0..total {
        let j = rng.random_range(0..=n);
        alpha[j] += 1;
    }
    alpha
}

/// Random differential polynomial over Q: order <= n_max, total y-degree
/// <= d_max, at most max_terms terms, small rational exponents of x.
pub fn random_diffpoly(
    rng: &mut impl Rng,
    n_max: usize,
    d_max: u32,
    max_terms: usize,
) -> DiffPoly {
    let field = q_field();
    loop {
        let n = rng.random_range(0..=n_max);
        let count = rng.random_range(1..=max_terms);
        let mut terms = Vec::with_capacity(count);
        for _ in 0..count {
            let num = rng.random_range(-3..=6i64);
            let den = rng.random_range(1..=3i64);
            terms.push(DiffMonomial {
                coeff: AlgNum::from_rat(field.clone(), random_rat(rng)),
                xexp: rat(num, den),
                alpha: random_alpha(rng, n, d_max),
            });
        }
        let f = DiffPoly::from_terms(field.clone(), terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Like `random_diffpoly` but every term satisfies alpha[j] >= k, so the
/// marked points of the k-th yj-derivative are an exact translation.
pub fn random_diffpoly_with_condition(
    rng: &mut impl Rng,
    n_max: usize,
    d_max: u32,
    max_terms: usize,
    j: usize,
    k: u32,
) -> DiffPoly {
    let field = q_field();
    loop {
        let n = rng.random_range(j..=n_max.max(j));
        let count = rng.random_range(1..=max_terms);
        let mut terms = Vec::with_capacity(count);
        for _ in 0..count {
            let mut alpha = random_alpha(rng, n, d_max.saturating_sub(k));
            alpha[j] += k;
            let num = rng.random_range(-3..=6i64);
            let den = rng.random_range(1..=3i64);
            terms.push(DiffMonomial {
                coeff: AlgNum::from_rat(field.clone(), random_rat(rng)),
                xexp: rat(num, den),
                alpha,
            });
        }
        let f = DiffPoly::from_terms(field.clone(), terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Test fields of degree 1, 2, 3 and 4 over Q.
pub fn sample_fields() -> Vec<Arc<NumberField>> {
    vec![
        NumberField::rationals(),
        NumberField::new(QPoly::from_ints(&[-2, 0, 1]), "t").unwrap(), // sqrt 2
        NumberField::new(QPoly::from_ints(&[1, 0, 1]), "t").unwrap(),  // i
        NumberField::new(QPoly::from_ints(&[-1, -1, 1]), "t").unwrap(), // golden
        NumberField::new(QPoly::from_ints(&[-2, 0, 0, 1]), "t").unwrap(), // cbrt 2
        NumberField::new(QPoly::from_ints(&[-1, -1, 0, 1]), "t").unwrap(),
        NumberField::new(QPoly::from_ints(&[-2, 0, 0, 0, 1]), "t").unwrap(), // 4th root of 2
        NumberField::new(QPoly::from_ints(&[1, 0, -10, 0, 1]), "t").unwrap(), // sqrt2 + sqrt3
    ]
}

/// Random element with small coordinates.
pub fn random_algnum(rng: &mut impl Rng, field: &Arc<NumberField>) -> AlgNum {
    let coords = (0..field.degree())
        .map(|_| rat(rng.random_range(-4..=4i64), rng.random_range(1..=2i64)))
        .collect();
    AlgNum::new(field.clone(), coords)
}
