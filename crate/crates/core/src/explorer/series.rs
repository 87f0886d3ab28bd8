//! Real-valued probes: the summatory fluctuation residual and the growth of
//! the weighted first difference when the weight exponent exceeds 1.

use num_bigint::BigUint;
use num_traits::{Float, NumCast, One};

use crate::digits::digit_sum_u64;
use crate::error::{Error, Result};
use crate::natural::Base;
use crate::report::{DefectReport, DefectValue, InequalityId, Relation};
use crate::summatory::{weighted_digit_sum, WeightSequence};

fn cast<F: Float, T: num_traits::ToPrimitive>(x: T) -> F {
    <F as NumCast>::from(x).expect("representable as float")
}

/// `(n, S_b(n)/n - (b-1)/2 · log_b n)` for `1 <= n <= max`.
///
/// The residual is periodic in `log_b n` and vanishes at powers of `b`.
pub fn fluctuation_series<F: Float>(b: Base, max: u64) -> Result<Vec<(u64, F)>> {
    if max < 2 {
        return Err(Error::Domain("series needs N >= 2".into()));
    }
    let half_slope = cast::<F, _>(b.get() - 1) / cast::<F, _>(2);
    let ln_b = cast::<F, _>(b.get()).ln();
    let mut out = Vec::with_capacity(max as usize);
    // running S_b(n), advanced by s_b(n) each step
    let mut s = 0u128;
    for n in 1..=max {
        let nf = cast::<F, _>(n);
        out.push((n, cast::<F, _>(s) / nf - half_slope * nf.ln() / ln_b));
        s += digit_sum_u64(n, b.get()) as u128;
    }
    Ok(out)
}

/// For `p > 1`: `Δ = w_p(2^k) - w_p(2^k - 1)`, which exceeds the bound 1
/// that the weighted second-difference inequality would force at `ℓ = 1`,
/// `m = 2^k`.
///
/// `lhs` is `Δ` evaluated from the binary digits, `rhs` is that bound, and
/// the extra `closed_form` is `(2^(pk)(2^p - 1) - 2^(pk) + 1) / (2^p - 1)`.
pub fn p_gt_one_divergence<F: Float + DefectValue>(p: F, k: u32) -> Result<DefectReport<F>> {
    if p <= F::one() || !p.is_finite() {
        return Err(Error::Domain(
            "divergence probe needs a finite p > 1".into(),
        ));
    }
    if k == 0 {
        return Err(Error::Domain("divergence probe needs k >= 1".into()));
    }
    let weights = WeightSequence::power(p)?;
    let m = BigUint::one() << k as usize;
    let delta = weighted_digit_sum(&m, &weights) - weighted_digit_sum(&(m - 1u32), &weights);

    let two_p = p.exp2();
    let two_pk = (p * cast::<F, _>(k)).exp2();
    let closed = (two_pk * (two_p - F::one()) - two_pk + F::one()) / (two_p - F::one());

    let mut report = DefectReport::new(
        InequalityId::Divergence,
        Some(2),
        vec![("p".into(), p), ("k".into(), cast(k))],
        delta,
        F::one(),
        Relation::Violation,
    );
    report.guaranteed = false;
    report.extras.push(("closed_form".into(), closed));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summatory::summatory_digit_sum;

    #[test]
    fn fluctuation_examples() {
        let s = fluctuation_series::<f64>(Base::BINARY, 64).unwrap();
        assert_eq!(s.len(), 64);
        assert_eq!(s[0], (1, 0.0));
        assert_eq!(s[3].0, 4);
        assert!(s[3].1.abs() <= 1e-12);
        for (n, v) in &s {
            let direct =
                summatory_digit_sum(n, Base::BINARY) as f64 / *n as f64 - 0.5 * (*n as f64).log2();
            assert!((v - direct).abs() <= 1e-12);
        }
        assert!(fluctuation_series::<f64>(Base::BINARY, 1).is_err());
    }

    #[test]
    fn fluctuation_vanishes_at_powers() {
        for b in 2..=7u32 {
            let base = Base::new(b).unwrap();
            let max = (b as u64).pow(7);
            let s = fluctuation_series::<f64>(base, max).unwrap();
            let mut bx = 1u64;
            for _ in 0..=7 {
                assert!(s[bx as usize - 1].1.abs() <= 1e-9, "b={b} n={bx}");
                bx *= b as u64;
            }
        }
    }

    #[test]
    fn divergence_examples() {
        let r = p_gt_one_divergence(2.0f64, 3).unwrap();
        assert_eq!(r.lhs, 43.0);
        assert_eq!(r.extra("closed_form"), Some(&43.0));
        assert!(r.holds);
        let r = p_gt_one_divergence(2.0f64, 1).unwrap();
        assert_eq!(r.lhs, 3.0);
        let r = p_gt_one_divergence(1.5f64, 4).unwrap();
        let closed = *r.extra("closed_form").unwrap();
        assert!((r.lhs - closed).abs() <= 1e-9 * closed);
        assert!(p_gt_one_divergence(1.0f64, 3).is_err());
        assert!(p_gt_one_divergence(2.0f64, 0).is_err());
    }

    #[test]
    fn divergence_grows() {
        for p in [1.5f64, 2.0] {
            let mut prev = f64::NEG_INFINITY;
            for k in 1..=12 {
                let r = p_gt_one_divergence(p, k).unwrap();
                assert!(r.lhs > prev);
                prev = r.lhs;
            }
        }
        assert!(p_gt_one_divergence(2.0f64, 1).unwrap().holds);
    }
}
