#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use poincare_core::{Monomial, Poly};
use proptest::prelude::*;

/// Random polynomial in `n` pairs with total degree at most `max_degree`.
pub fn poly(n: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let term = (
        prop::collection::vec(0..=max_degree, 2 * n),
        -9i64..=9,
        1i64..=6,
    );
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let mut p = Poly::zero(n);
        for (mut exps, num, den) in terms {
            // trim to the degree bound from the last slot backwards
            let mut total: u32 = exps.iter().sum();
            for e in exps.iter_mut().rev() {
                while total > max_degree && *e > 0 {
                    *e -= 1;
                    total -= 1;
                }
            }
            p.add_term(
                Monomial::from_dense(&exps),
                BigRational::new(BigInt::from(num), BigInt::from(den)),
            );
        }
        p
    })
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=7).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(rational(), 2 * n)
}
