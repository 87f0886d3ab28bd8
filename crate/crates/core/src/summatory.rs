//! Summatory functions of digit sums.
//!
//! `S_b(n)` sums `s_b(j)` over `1 <= j <= n - 1`, so `S_b(0) = S_b(1) = 0`.
//! The fast kernel sweeps the digits of `n` once from the top, carrying the
//! prefix value `P`, its digit sum `σ` and `S_b(P)`. Appending a digit `d`
//! to the prefix maps these to
//!
//! ```text
//! S_b(bP + d) = b·S_b(P) + b(b-1)/2·P + d·σ + d(d-1)/2
//! ```
//!
//! (the block `[0, bP)` contributes `b` copies of every prefix below `P`
//! plus a full column of low digits for each, and `bP, .., bP + d - 1`
//! contribute `σ + c` for `c < d`). One pass, no recursion, linear in the
//! number of digits.
//!
//! The weighted sums `w_λ`, `W_λ` are binary only and real valued.

use num_traits::{Float, NumCast};

use crate::digits::{digit_sum, digit_sum_u64};
use crate::error::{Error, Result};
use crate::natural::{power, Base, Natural};
use crate::report::{DefectReport, InequalityId, Relation};

/// Largest `n` the brute-force oracle accepts unless configured otherwise.
pub const DEFAULT_ORACLE_CAP: u64 = 10_000_000;

/// `S_b(n) = Σ_{1 <= j < n} s_b(j)` in time linear in the digit count of `n`.
pub fn summatory_digit_sum<N: Natural>(n: &N, b: Base) -> N {
    let radix = b.as_natural::<N>();
    let column = N::from_small(b.get()) * N::from_small(b.get() - 1) / N::from_small(2);
    let digits = n.radix_digits_le(b.get());

    let mut total = N::zero();
    let mut prefix = N::zero();
    let mut prefix_digit_sum = N::zero();
    for &d in digits.iter().rev() {
        let dn = N::from_small(d);
        total *= radix.clone();
        total += column.clone() * prefix.clone();
        total += dn.clone() * prefix_digit_sum.clone();
        if d >= 2 {
            total += N::from_small(d) * N::from_small(d - 1) / N::from_small(2);
        }
        prefix *= radix.clone();
        prefix += dn.clone();
        prefix_digit_sum += dn;
    }
    total
}

/// The literal loop `Σ_{j=1}^{n-1} s_b(j)`, refused above `cap`.
pub fn summatory_digit_sum_oracle<N: Natural>(n: &N, b: Base, cap: u64) -> Result<N> {
    let cap_n = N::from_u64(cap).unwrap_or_else(|| n.clone());
    if *n > cap_n {
        return Err(Error::OracleRange {
            n: n.to_string(),
            cap,
        });
    }
    let mut total = N::zero();
    let mut j = N::one();
    while j < *n {
        total += digit_sum(&j, b);
        j += N::one();
    }
    Ok(total)
}

/// Anything that can answer `S_b(n)` for a fixed base.
pub trait Summatory<N> {
    fn base(&self) -> Base;
    fn summatory(&self, n: &N) -> N;
}

impl<N: Natural> Summatory<N> for Base {
    fn base(&self) -> Base {
        *self
    }

    fn summatory(&self, n: &N) -> N {
        summatory_digit_sum(n, *self)
    }
}

/// Tabulated `S_b(n)` for `0 <= n <= max`, filled from the fast kernel.
///
/// Grid sweeps evaluate `S_b` at the same small arguments millions of times;
/// lookups keep them memory-bound.
#[derive(Debug, Clone)]
pub struct SummatoryTable {
    base: Base,
    values: Vec<u64>,
}

impl SummatoryTable {
    pub fn new(base: Base, max: u64) -> Self {
        let values = (0..=max).map(|n| summatory_digit_sum(&n, base)).collect();
        SummatoryTable { base, values }
    }

    pub fn max(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    #[inline]
    pub fn get(&self, n: u64) -> u64 {
        self.values[n as usize]
    }
}

impl Summatory<u64> for SummatoryTable {
    fn base(&self) -> Base {
        self.base
    }

    #[inline]
    fn summatory(&self, n: &u64) -> u64 {
        self.values[*n as usize]
    }
}

/// Brute-force prefix table `[S_b(0), .., S_b(max)]` for machine words.
pub fn summatory_oracle_table(max: u64, b: Base) -> Vec<u64> {
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut acc = 0u64;
    out.push(0);
    for j in 0..max {
        acc += digit_sum_u64(j, b.get());
        out.push(acc);
    }
    out
}

/// Number of `m` in `[0, n)` whose binary digit `i` is 1.
pub fn bit_count_below<N: Natural>(n: &N, i: u32) -> N {
    let two = N::from_small(2);
    let low: N = num_traits::pow::pow(two.clone(), i as usize);
    let period = low.clone() * two;
    let (q, r) = n.div_rem(&period);
    let tail = if r > low { r - low.clone() } else { N::zero() };
    q * low + tail
}

/// The weight sequence `λ = (λ_i)` of a binary weighted digit sum.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSequence<F> {
    /// `λ_i = 2^(p·i)`.
    Power(F),
    /// `λ_i = values[i]`, zero past the end.
    Explicit(Vec<F>),
}

impl<F: Float> WeightSequence<F> {
    pub fn power(p: F) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::Domain("exponent p must be finite".into()));
        }
        Ok(WeightSequence::Power(p))
    }

    pub fn explicit(values: Vec<F>) -> Result<Self> {
        if values.iter().any(|w| !w.is_finite() || *w < F::zero()) {
            return Err(Error::Domain(
                "weights must be finite and nonnegative".into(),
            ));
        }
        Ok(WeightSequence::Explicit(values))
    }

    pub fn weight(&self, i: u32) -> F {
        match self {
            WeightSequence::Power(p) => (*p * cast::<F, _>(i)).exp2(),
            WeightSequence::Explicit(v) => v.get(i as usize).copied().unwrap_or_else(F::zero),
        }
    }
}

fn cast<F: Float, T: num_traits::ToPrimitive>(x: T) -> F {
    <F as NumCast>::from(x).expect("representable as float")
}

/// `w_λ(n) = Σ λ_i d_i` over the binary digits of `n`.
pub fn weighted_digit_sum<N: Natural, F: Float>(n: &N, weights: &WeightSequence<F>) -> F {
    n.radix_digits_le(2)
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == 1)
        .fold(F::zero(), |acc, (i, _)| acc + weights.weight(i as u32))
}

/// `W_λ(n) = Σ_{m < n} w_λ(m)`, assembled column by column as
/// `Σ_i λ_i · #{m < n : d_i(m) = 1}`.
pub fn weighted_summatory<N: Natural, F: Float>(n: &N, weights: &WeightSequence<F>) -> F {
    let bits = n.radix_digits_le(2).len() as u32;
    (0..bits).fold(F::zero(), |acc, i| {
        let count = bit_count_below(n, i);
        acc + weights.weight(i) * cast::<F, _>(count)
    })
}

/// Tabulated `W_λ(n)` for `0 <= n <= max`.
#[derive(Debug, Clone)]
pub struct WeightedTable<F> {
    values: Vec<F>,
}

impl<F: Float> WeightedTable<F> {
    pub fn new(weights: &WeightSequence<F>, max: u64) -> Self {
        let values = (0..=max).map(|n| weighted_summatory(&n, weights)).collect();
        WeightedTable { values }
    }

    #[inline]
    pub fn get(&self, n: u64) -> F {
        self.values[n as usize]
    }
}

/// Checks `S_b(b^x n) = b^x S_b(n) + (b-1)/2 · x · b^x · n`, and alongside it
/// `S_b(b^x) = (b-1)/2 · x · b^x` (reported as extras `power_lhs`/`power_rhs`).
/// With `x = 1` this is `S_b(bn) = b S_b(n) + b(b-1)/2 · n`.
pub fn scaling_identity_check<N: Natural>(
    n: &N,
    x: u32,
    b: Base,
) -> Result<DefectReport<N::Signed>> {
    if n.is_zero() {
        return Err(Error::Input("n must be at least 1".into()));
    }
    let bx: N = power(b, x);
    let spread = |m: &N| {
        N::from_small(b.get() - 1) * N::from_small(x) * bx.clone() * m.clone() / N::from_small(2)
    };
    let lhs = summatory_digit_sum(&(bx.clone() * n.clone()), b);
    let rhs = bx.clone() * summatory_digit_sum(n, b) + spread(n);
    let power_lhs = summatory_digit_sum(&bx, b);
    let power_rhs = spread(&N::one());

    let mut report = DefectReport::new(
        InequalityId::Scaling,
        Some(b.get()),
        vec![
            ("n".into(), n.to_signed()),
            ("x".into(), N::from_small(x).to_signed()),
        ],
        lhs.to_signed(),
        rhs.to_signed(),
        Relation::Identity,
    );
    report.holds &= power_lhs == power_rhs;
    report.extras = vec![
        ("power_lhs".into(), power_lhs.to_signed()),
        ("power_rhs".into(), power_rhs.to_signed()),
    ];
    Ok(report)
}

/// `ν_b(n!) = (n - s_b(n)) / (b - 1)` for prime `b`.
pub fn factorial_valuation<N: Natural>(n: &N, b: Base) -> Result<N> {
    if !b.is_prime() {
        return Err(Error::NonPrimeBase(b.get()));
    }
    let (q, r) = (n.clone() - digit_sum(n, b)).div_rem(&N::from_small(b.get() - 1));
    debug_assert!(r.is_zero());
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn base(b: u32) -> Base {
        Base::new(b).unwrap()
    }

    fn literal_weighted_summatory(n: u64, weights: &WeightSequence<f64>) -> f64 {
        (0..n)
            .map(|m| {
                (0..64)
                    .filter(|i| (m >> i) & 1 == 1)
                    .map(|i| weights.weight(i))
                    .sum::<f64>()
            })
            .sum()
    }

    #[test]
    fn summatory_examples() {
        for b in 2..8 {
            assert_eq!(summatory_digit_sum(&0u64, base(b)), 0);
            assert_eq!(summatory_digit_sum(&1u64, base(b)), 0);
        }
        assert_eq!(summatory_digit_sum(&4u64, base(2)), 4);
        assert_eq!(summatory_digit_sum(&9u64, base(3)), 18);
        assert_eq!(summatory_digit_sum(&6u64, base(2)), 7);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            summatory_digit_sum_oracle(&1u64, base(3), DEFAULT_ORACLE_CAP),
            Ok(0)
        );
        assert_eq!(
            summatory_digit_sum_oracle(&4u64, base(2), DEFAULT_ORACLE_CAP),
            Ok(4)
        );
        assert_eq!(
            summatory_digit_sum_oracle(&10u64, base(10), DEFAULT_ORACLE_CAP),
            Ok(45)
        );
        assert!(matches!(
            summatory_digit_sum_oracle(&11u64, base(10), 10),
            Err(Error::OracleRange { cap: 10, .. })
        ));
        assert_eq!(summatory_digit_sum_oracle(&10u64, base(10), 10), Ok(45));
    }

    #[test]
    fn powers_of_base_closed_form() {
        for b in 2u32..=10 {
            for x in 0u32..=12 {
                let bx: BigUint = power(base(b), x);
                let expected = BigUint::from(b - 1) * BigUint::from(x) * bx.clone() / 2u32;
                assert_eq!(summatory_digit_sum(&bx, base(b)), expected, "b={b} x={x}");
            }
        }
    }

    #[test]
    fn fast_matches_oracle_table() {
        for b in [2u32, 3, 5, 10, 16] {
            let table = summatory_oracle_table(20_000, base(b));
            for (n, want) in table.iter().enumerate() {
                assert_eq!(summatory_digit_sum(&(n as u64), base(b)), *want);
            }
            assert_eq!(
                summatory_digit_sum_oracle(&20_000u64, base(b), DEFAULT_ORACLE_CAP).unwrap(),
                table[20_000]
            );
        }
    }

    #[test]
    fn telescoping() {
        for b in [2u32, 3, 7, 10] {
            for n in 0u64..=10_000 {
                let diff =
                    summatory_digit_sum(&(n + 1), base(b)) - summatory_digit_sum(&n, base(b));
                assert_eq!(diff, digit_sum(&n, base(b)));
            }
        }
    }

    #[test]
    fn table_matches_kernel() {
        let t = SummatoryTable::new(base(3), 500);
        assert_eq!(t.max(), 500);
        for n in 0..=500u64 {
            assert_eq!(t.get(n), summatory_digit_sum(&n, base(3)));
            assert_eq!(
                Summatory::<u64>::summatory(&t, &n),
                Summatory::<u64>::summatory(&base(3), &n)
            );
        }
    }

    #[test]
    fn bit_count_examples() {
        assert_eq!(bit_count_below(&0u64, 3), 0);
        assert_eq!(bit_count_below(&8u64, 1), 4);
        assert_eq!(bit_count_below(&5u64, 0), 2);
        for n in 0u64..300 {
            for i in 0..10 {
                let brute = (0..n).filter(|m| (m >> i) & 1 == 1).count() as u64;
                assert_eq!(bit_count_below(&n, i), brute, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn weighted_endpoints_are_exact() {
        let p0 = WeightSequence::power(0.0).unwrap();
        let p1 = WeightSequence::power(1.0).unwrap();
        let p2 = WeightSequence::power(2.0).unwrap();
        for n in 0u64..2000 {
            assert_eq!(weighted_digit_sum(&n, &p0), digit_sum(&n, base(2)) as f64);
            assert_eq!(weighted_digit_sum(&n, &p1), n as f64);
            assert_eq!(
                weighted_summatory(&n, &p0),
                summatory_digit_sum(&n, base(2)) as f64
            );
            assert_eq!(
                weighted_summatory(&n, &p1),
                (n * n.saturating_sub(1) / 2) as f64
            );
        }
        assert_eq!(weighted_digit_sum(&7u64, &p2), 21.0);
        assert_eq!(weighted_summatory(&4u64, &p2), 10.0);
    }

    #[test]
    fn weighted_on_big_inputs() {
        let p1 = WeightSequence::power(1.0f64).unwrap();
        let n = BigUint::from(1u64 << 40);
        assert_eq!(weighted_digit_sum(&n, &p1), (1u64 << 40) as f64);
        let p0 = WeightSequence::power(0.0f32).unwrap();
        assert_eq!(weighted_summatory(&BigUint::from(4u32), &p0), 4.0f32);
    }

    #[test]
    fn weight_sequences() {
        let e = WeightSequence::explicit(vec![1.0, 0.5]).unwrap();
        assert_eq!(e.weight(1), 0.5);
        assert_eq!(e.weight(7), 0.0);
        assert!(WeightSequence::explicit(vec![-1.0]).is_err());
        assert!(WeightSequence::power(f64::NAN).is_err());
        assert_eq!(WeightSequence::power(0.5).unwrap().weight(2), 2.0);
    }

    #[test]
    fn weighted_matches_literal_double_sum() {
        let mut rng = rand_chacha_like();
        for _ in 0..100 {
            let len = rng.gen_range(1..=13);
            let weights: Vec<f64> = (0..len).map(|_| rng.gen_range(0.0..4.0)).collect();
            let w = WeightSequence::explicit(weights).unwrap();
            for n in (0..=4096u64).step_by(37).chain([4096]) {
                let fast = weighted_summatory(&n, &w);
                let slow = literal_weighted_summatory(n, &w);
                assert!((fast - slow).abs() <= 1e-9 * slow.max(1.0), "n={n}");
            }
        }
    }

    #[test]
    fn weighted_matches_literal_on_full_range() {
        let w = WeightSequence::power(0.37).unwrap();
        let mut acc = 0.0;
        for n in 0..=4096u64 {
            let fast = weighted_summatory(&n, &w);
            assert!((fast - acc).abs() <= 1e-12 * acc.max(1.0), "n={n}");
            acc += weighted_digit_sum(&n, &w);
        }
        let slow = literal_weighted_summatory(4097, &w);
        assert!((slow - acc).abs() <= 1e-12 * slow);
    }

    fn rand_chacha_like() -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(0x5eed)
    }

    #[test]
    fn scaling_examples() {
        let r = scaling_identity_check(&1u64, 0, base(3)).unwrap();
        assert_eq!((r.lhs, r.rhs, r.defect), (0, 0, 0));
        assert!(r.holds);

        let r = scaling_identity_check(&3u64, 1, base(2)).unwrap();
        assert_eq!((r.lhs, r.rhs), (7, 7));

        let r = scaling_identity_check(&5u64, 2, base(3)).unwrap();
        let lhs = summatory_digit_sum_oracle(&45u64, base(3), DEFAULT_ORACLE_CAP).unwrap();
        let rhs = 9 * summatory_digit_sum_oracle(&5u64, base(3), DEFAULT_ORACLE_CAP).unwrap()
            + 2 * 2 * 9 * 5 / 2;
        assert_eq!(lhs, rhs);
        assert_eq!(r.lhs, lhs as i128);
        assert!(r.holds);

        assert!(scaling_identity_check(&0u64, 1, base(3)).is_err());
    }

    #[test]
    fn scaling_first_identity_random() {
        let mut rng = rand_chacha_like();
        for _ in 0..1000 {
            let n: u64 = rng.gen_range(1..=1_000_000);
            let b = base(rng.gen_range(2..=10));
            let r = scaling_identity_check(&n, 1, b).unwrap();
            assert!(r.holds, "n={n} b={b}");
        }
    }

    #[test]
    fn scaling_second_identity_grid() {
        for b in 2..=6 {
            for x in 0..=10 {
                for n in 1u128..=1000 {
                    let r = scaling_identity_check(&n, x, base(b)).unwrap();
                    assert!(r.holds && r.extra("power_lhs") == r.extra("power_rhs"));
                }
            }
        }
    }

    #[test]
    fn factorial_valuation_examples() {
        assert_eq!(factorial_valuation(&4u64, base(2)), Ok(3));
        assert_eq!(factorial_valuation(&0u64, base(5)), Ok(0));
        assert_eq!(factorial_valuation(&10u64, base(3)), Ok(4));
        assert_eq!(
            factorial_valuation(&10u64, base(4)),
            Err(Error::NonPrimeBase(4))
        );
    }

    #[test]
    fn factorial_valuation_matches_floor_sum() {
        for b in [2u64, 3, 5, 7, 11] {
            for n in 0u64..=10_000 {
                let mut floor_sum = 0;
                let mut q = n / b;
                while q > 0 {
                    floor_sum += q;
                    q /= b;
                }
                assert_eq!(factorial_valuation(&n, base(b as u32)), Ok(floor_sum));
            }
        }
    }

    proptest! {
        #[test]
        fn big_kernel_matches_word_kernel(n in any::<u64>(), b in 2u32..=36) {
            let small = summatory_digit_sum(&(n as u128), base(b));
            let big = summatory_digit_sum(&BigUint::from(n), base(b));
            prop_assert_eq!(BigUint::from(small), big);
        }

        #[test]
        fn scaling_scaling(n in 1u64..1_000_000_000, b in 2u32..=16, x in 0u32..6) {
            prop_assert!(scaling_identity_check(&BigUint::from(n), x, base(b)).unwrap().holds);
        }
    }
}
