//! Property tests for the algebraic invariants that hold on all inputs.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::q_field;
use diffpuiseux::diffpoly::{DiffMonomial, DiffPoly};
use diffpuiseux::numfield::{rational_roots, AlgNum, KPoly, NumberField};
use diffpuiseux::parse::parse_diffpoly;
use diffpuiseux::qpoly::QPoly;
use diffpuiseux::rat::{rat, rint, Rat};
use diffpuiseux::series::{PuiseuxSeries, PuiseuxTerm};
use diffpuiseux::zassenhaus::factor_over_q;

/// All core values are immutable and shareable across threads.
#[test]
fn core_types_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<diffpuiseux::DiffPoly>();
    assert_send_sync::<diffpuiseux::PuiseuxSeries>();
    assert_send_sync::<diffpuiseux::AlgNum>();
    assert_send_sync::<diffpuiseux::KPoly>();
    assert_send_sync::<diffpuiseux::QPoly>();
    assert_send_sync::<diffpuiseux::PolygonView>();
    assert_send_sync::<diffpuiseux::TreeNode>();
    assert_send_sync::<diffpuiseux::PuiseuxSolution>();
}

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn arb_nonzero_rat() -> impl Strategy<Value = Rat> {
    ((1i64..=6), prop::bool::ANY, 1i64..=3)
        .prop_map(|(n, neg, d)| if neg { rat(-n, d) } else { rat(n, d) })
}

fn arb_alpha() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=2, 1..=3)
}

fn arb_diffpoly() -> impl Strategy<Value = DiffPoly> {
    prop::collection::vec((arb_nonzero_rat(), arb_rat(), arb_alpha()), 1..=5).prop_map(|terms| {
        let field = q_field();
        let _n = terms.iter().map(|(_, _, a)| a.len() - 1).max().unwrap_or(0);
        DiffPoly::from_terms(
            field.clone(),
            terms
                .into_iter()
                .map(|(c, x, alpha)| DiffMonomial {
                    coeff: AlgNum::from_rat(field.clone(), c),
                    xexp: x,
                    alpha,
                })
                .collect::<Vec<_>>(),
        )
    })
}

fn arb_series(field: Arc<NumberField>) -> impl Strategy<Value = PuiseuxSeries> {
    prop::collection::vec((arb_nonzero_rat(), arb_rat()), 0..=3).prop_map(move |terms| {
        PuiseuxSeries::new(
            field.clone(),
            terms
                .into_iter()
                .map(|(c, e)| PuiseuxTerm {
                    coeff: AlgNum::from_rat(field.clone(), c),
                    exp: e,
                })
                .collect::<Vec<_>>(),
            None,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// parse(serialize(F)) = F for random differential polynomials over Q.
    #[test]
    fn parse_round_trip(f in arb_diffpoly()) {
        if f.is_zero() {
            return Ok(());
        }
        let text = f.to_input_string();
        let back = parse_diffpoly(&text).unwrap();
        prop_assert_eq!(f, back);
    }

    /// The homogeneous parts sum back to the polynomial.
    #[test]
    fn homogeneous_parts_sum(f in arb_diffpoly()) {
        let mut acc = DiffPoly::zero(f.field().clone());
        for s in 0..=f.ydeg() {
            acc = acc.add(&f.homogeneous_part(s)).unwrap();
        }
        prop_assert_eq!(acc, f);
    }

    /// Mixed partial derivatives commute.
    #[test]
    fn partial_derivatives_commute(f in arb_diffpoly(), j in 0usize..3, k in 0usize..3) {
        let n = f.order_n();
        let (j, k) = (j.min(n), k.min(n));
        let a = f.partial_derivative(j, 1).partial_derivative(k, 1);
        let b = f.partial_derivative(k, 1).partial_derivative(j, 1);
        prop_assert_eq!(a, b);
    }

    /// The defining property of the shift: evaluating the shifted polynomial
    /// at phi equals evaluating the original at c x^mu + phi.
    #[test]
    fn shift_matches_evaluation(
        f in arb_diffpoly(),
        c in arb_nonzero_rat(),
        mu in arb_rat(),
        phi in arb_series(q_field()),
    ) {
        let c = AlgNum::from_rat(f.field().clone(), c);
        let g = f.substitute_shift(&c, &mu);
        let shifted_phi = phi.add(&PuiseuxSeries::monomial(c, mu));
        let lhs = g.evaluate_exact(&phi).unwrap();
        let rhs = f.evaluate_exact(&shifted_phi).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Shifts at distinct exponents commute.
    #[test]
    fn shift_composition(
        f in arb_diffpoly(),
        c1 in arb_nonzero_rat(),
        c2 in arb_nonzero_rat(),
    ) {
        let c1 = AlgNum::from_rat(f.field().clone(), c1);
        let c2 = AlgNum::from_rat(f.field().clone(), c2);
        let (mu1, mu2) = (rint(1), rat(5, 2));
        let a = f.substitute_shift(&c1, &mu1).substitute_shift(&c2, &mu2);
        let b = f.substitute_shift(&c2, &mu2).substitute_shift(&c1, &mu1);
        prop_assert_eq!(a, b);
    }

    /// d/dx is a derivation on series products.
    #[test]
    fn series_product_rule(
        f in arb_series(q_field()),
        g in arb_series(q_field()),
    ) {
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
        prop_assert_eq!(lhs, rhs);
    }

    /// Factorization over Q always reconstructs its input.
    #[test]
    fn q_factorization_reconstructs(coeffs in prop::collection::vec(arb_rat(), 1..=7)) {
        let p = QPoly::from_coeffs(coeffs);
        if p.is_zero() {
            return Ok(());
        }
        let f = factor_over_q(&p).unwrap();
        prop_assert_eq!(f.expand(), p);
    }

    /// Rational roots agree with the linear factors found by factorization.
    #[test]
    fn rational_roots_match_linear_factors(coeffs in prop::collection::vec(arb_rat(), 2..=6)) {
        let p = QPoly::from_coeffs(coeffs);
        if p.is_zero() {
            return Ok(());
        }
        let kp = KPoly::lift_qpoly(q_field(), &p);
        let got = rational_roots(&kp).unwrap();
        let mut expected: Vec<Rat> = factor_over_q(&p)
            .unwrap()
            .factors
            .iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, _)| -g.coeff(0))
            .collect();
        expected.sort();
        expected.dedup();
        prop_assert_eq!(got, expected);
    }
}
