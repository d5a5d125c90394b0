//! Cross-module identity checks at full desk-scale ranges: the rewriting
//! engine against the polynomial-expansion Stirling families, both against
//! the classical recurrence oracles in the λ→1 limit, the generating
//! functions against direct expansion, and the operator representation.

use lamshift::exactnum::{factorial, BigRational, MultiPoly, Var};
use lamshift::lamstirling::{
    classical_stirling1_unsigned, classical_stirling2, lambda_factorial, lambda_r_stirling1,
    signed_lambda_stirling1, unsigned_lambda_stirling1, verify_remark8_symmetry, verify_theorem4,
    verify_theorem5, verify_theorem7,
};
use lamshift::ncalgebra::{power_normal, CommutationRule, Letter, NcExpression, Word};
use lamshift::oprep::{verify_commutator, verify_rep_consistency, verify_theorem6};
use lamshift::series::{
    egf_lambda_r_stirling, egf_unsigned_lambda_stirling, neglog_over_lambda, verify_eq29,
    TruncatedSeries,
};
use lamshift::shifted_power_normal;
use num_traits::One;
use std::collections::BTreeMap;

fn number_word() -> NcExpression {
    NcExpression::from_word(Word::new(vec![Letter::ADag, Letter::A]))
}

fn at_lambda_one(p: &MultiPoly) -> MultiPoly {
    p.eval(&BTreeMap::from([(Var::Lambda, BigRational::one())]))
}

#[test]
fn rewriter_coefficients_are_the_unsigned_family() {
    let rule = CommutationRule::lambda_shift();
    for n in 0..=12u32 {
        let nf = power_normal(&number_word(), n, &rule);
        for k in 0..=n {
            assert_eq!(
                nf.coeff(k, n),
                unsigned_lambda_stirling1(n, k),
                "n={n} k={k}"
            );
        }
        // Nothing outside the column a^n and the triangle.
        for (&(dag_pow, a_pow), _) in nf.terms() {
            assert_eq!(a_pow, n);
            assert!(dag_pow <= n);
        }
    }
}

#[test]
fn shifted_rewriter_coefficients_are_the_r_family() {
    for n in 0..=10u32 {
        let nf = shifted_power_normal(n);
        for k in 0..=n {
            assert_eq!(nf.coeff(k, n), lambda_r_stirling1(n, k), "n={n} k={k}");
        }
    }
}

#[test]
fn shift_rule_reproduces_classical_unsigned_numbers() {
    let rule = CommutationRule::shift();
    for n in 0..=14u32 {
        let nf = power_normal(&number_word(), n, &rule);
        for k in 0..=n {
            assert_eq!(
                nf.coeff(k, n),
                MultiPoly::constant(classical_stirling1_unsigned(n, k)),
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn lambda_one_limit_matches_classical_oracle() {
    for n in 0..=14u32 {
        for k in 0..=n {
            assert_eq!(
                at_lambda_one(&unsigned_lambda_stirling1(n, k)),
                MultiPoly::constant(classical_stirling1_unsigned(n, k)),
                "n={n} k={k}"
            );
        }
        assert_eq!(
            at_lambda_one(&lambda_factorial(n)),
            MultiPoly::constant(factorial(n as u64)),
            "n={n}"
        );
    }
}

#[test]
fn homogeneity_bridge_to_the_classical_oracle() {
    let lam = MultiPoly::var(Var::Lambda);
    for n in 0..=14u32 {
        for k in 0..=n {
            let want = lam.pow(n - k).scale(&classical_stirling1_unsigned(n, k));
            assert_eq!(unsigned_lambda_stirling1(n, k), want, "n={n} k={k}");
        }
    }
}

#[test]
fn signed_and_unsigned_differ_by_parity() {
    for n in 0..=14u32 {
        for k in 0..=n {
            let unsigned = unsigned_lambda_stirling1(n, k);
            let want = if (n - k) % 2 == 0 {
                unsigned
            } else {
                -&unsigned
            };
            assert_eq!(signed_lambda_stirling1(n, k), want, "n={n} k={k}");
        }
    }
}

#[test]
fn unsigned_rows_sum_to_the_lambda_factorial() {
    for n in 0..=14u32 {
        let mut sum = MultiPoly::zero();
        for k in 0..=n {
            sum = &sum + &unsigned_lambda_stirling1(n, k);
        }
        assert_eq!(sum, lambda_factorial(n), "n={n}");
    }
}

#[test]
fn weyl_rule_reproduces_stirling2_numbers() {
    let rule = CommutationRule::weyl();
    for n in 0..=10u32 {
        let nf = power_normal(&number_word(), n, &rule);
        for k in 0..=n {
            assert_eq!(
                nf.coeff(k, k),
                MultiPoly::constant(classical_stirling2(n, k)),
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn recurrence_verifier_over_the_grid() {
    for n in 0..=12u32 {
        for j in 1..=n + 1 {
            let report = verify_theorem4(n, j).expect("j in range");
            assert!(report.passed(), "{report}");
        }
    }
}

#[test]
fn rising_factorial_decomposition_over_the_grid() {
    for n in 0..=12u32 {
        let report = verify_theorem5(n);
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn factorial_decompositions_and_symmetry_over_the_grid() {
    for m in 0..=10u32 {
        for n in 0..=10u32 {
            let seven = verify_theorem7(m, n);
            assert!(seven.passed(), "{seven}");
            let symmetry = verify_remark8_symmetry(m, n);
            assert!(symmetry.passed(), "{symmetry}");
        }
    }
}

#[test]
fn egf_coefficients_match_direct_expansion() {
    for k in 0..=12u32 {
        let entries = egf_unsigned_lambda_stirling(k, 12);
        for n in 0..=12usize {
            assert_eq!(
                entries[n],
                unsigned_lambda_stirling1(n as u32, k),
                "unsigned k={k} n={n}"
            );
        }
    }
    for k in 0..=10u32 {
        let entries = egf_lambda_r_stirling(k, 10);
        for n in 0..=10usize {
            assert_eq!(
                entries[n],
                lambda_r_stirling1(n as u32, k),
                "r-shifted k={k} n={n}"
            );
        }
    }
}

#[test]
fn exponential_inverts_the_logarithm() {
    let lam = MultiPoly::var(Var::Lambda);
    for order in 0..=16usize {
        let log_series = neglog_over_lambda(order).scale(&lam);
        let inverse = log_series.exp().expect("zero constant term");
        let mut geometric_factor = vec![MultiPoly::zero(); order + 1];
        geometric_factor[0] = MultiPoly::one();
        if order >= 1 {
            geometric_factor[1] = -&lam;
        }
        let one_minus_lambda_t = TruncatedSeries::from_coeffs(geometric_factor);
        assert_eq!(
            inverse.mul(&one_minus_lambda_t),
            TruncatedSeries::one(order),
            "order={order}"
        );
    }
}

#[test]
fn convolution_identity_over_the_grid() {
    for n in 0..=10u32 {
        for k in 0..=n {
            let report = verify_eq29(n, k);
            assert!(report.passed(), "{report}");
        }
    }
}

#[test]
fn operator_representation_identities() {
    for n in 1..=12u32 {
        let report = verify_theorem6(n);
        assert!(report.passed(), "{report}");
    }
    let commutator = verify_commutator(10);
    assert!(commutator.passed(), "{commutator}");
    for n in 0..=6u32 {
        let report = verify_rep_consistency(n);
        assert!(report.passed(), "{report}");
    }
}
