//! Defect evaluators for the summatory inequalities.
//!
//! Each evaluator checks its hypotheses, evaluates both sides exactly (or in
//! floating point for the weighted family) and returns the signed defect
//! `rhs - lhs`. Every function comes in two flavours: one taking a [`Base`]
//! and computing `S_b` on the fly, and a `*_with` variant taking any
//! [`Summatory`] source so grid sweeps can substitute a lookup table.

use std::borrow::Cow;

use num_traits::{Float, NumCast};

use crate::digits::digit_sum;
use crate::error::{Error, Result};
use crate::natural::{Base, Natural};
use crate::report::{DefectReport, InequalityId, Label, Relation};
use crate::summatory::{factorial_valuation, weighted_summatory, Summatory, WeightSequence};

const N_LABELS: [&str; 16] = [
    "n1", "n2", "n3", "n4", "n5", "n6", "n7", "n8", "n9", "n10", "n11", "n12", "n13", "n14", "n15",
    "n16",
];
const K_LABELS: [&str; 16] = [
    "k1", "k2", "k3", "k4", "k5", "k6", "k7", "k8", "k9", "k10", "k11", "k12", "k13", "k14", "k15",
    "k16",
];
const M_LABELS: [&str; 16] = [
    "m1", "m2", "m3", "m4", "m5", "m6", "m7", "m8", "m9", "m10", "m11", "m12", "m13", "m14", "m15",
    "m16",
];

fn indexed(table: &[&'static str; 16], prefix: char, i: usize) -> Label {
    match table.get(i) {
        Some(s) => Cow::Borrowed(*s),
        None => Cow::Owned(format!("{prefix}{}", i + 1)),
    }
}

fn named<V>(table: &[&'static str; 16], prefix: char, xs: Vec<V>) -> Vec<(Label, V)> {
    xs.into_iter()
        .enumerate()
        .map(|(i, v)| (indexed(table, prefix, i), v))
        .collect()
}

fn is_sorted<N: Ord>(xs: &[N]) -> bool {
    xs.windows(2).all(|w| w[0] <= w[1])
}

fn dominated_by_last<N: Ord>(xs: &[N]) -> bool {
    match xs.split_last() {
        Some((last, rest)) => rest.iter().all(|x| x <= last),
        None => true,
    }
}

fn small<N: Natural>(v: usize) -> N {
    N::from_usize(v).expect("small constant")
}

fn signed_inputs<N: Natural>(xs: &[N]) -> Vec<N::Signed> {
    xs.iter().map(Natural::to_signed).collect()
}

/// `S_2(n1) + S_2(n2) + n1 <= S_2(n1 + n2)` for `n1 <= n2`.
pub fn graham_defect<N: Natural>(n1: &N, n2: &N) -> Result<DefectReport<N::Signed>> {
    graham_defect_with(&Base::BINARY, n1, n2)
}

pub fn graham_defect_with<N: Natural, S: Summatory<N>>(
    s: &S,
    n1: &N,
    n2: &N,
) -> Result<DefectReport<N::Signed>> {
    if n1 > n2 {
        return Err(Error::Ordering(format!("n1 = {n1} exceeds n2 = {n2}")));
    }
    let lhs = s.summatory(n1) + s.summatory(n2) + n1.clone();
    let rhs = s.summatory(&(n1.clone() + n2.clone()));
    Ok(DefectReport::new(
        InequalityId::Graham,
        Some(2),
        vec![("n1".into(), n1.to_signed()), ("n2".into(), n2.to_signed())],
        lhs.to_signed(),
        rhs.to_signed(),
        Relation::AtMost,
    ))
}

/// Shared body of the sorted-tuple inequality
/// `Σ S_b(n_i) + Σ_{i<r} (r-i) n_i <= S_b(Σ n_i)`.
fn tuple_report<N: Natural, S: Summatory<N>>(
    s: &S,
    id: InequalityId,
    ns: &[N],
) -> DefectReport<N::Signed> {
    let r = ns.len();
    let mut lhs = N::zero();
    let mut total = N::zero();
    for (i, n) in ns.iter().enumerate() {
        lhs += s.summatory(n);
        lhs += small::<N>(r - 1 - i) * n.clone();
        total += n.clone();
    }
    let rhs = s.summatory(&total);
    DefectReport::new(
        id,
        Some(s.base().get()),
        named(&N_LABELS, 'n', signed_inputs(ns)),
        lhs.to_signed(),
        rhs.to_signed(),
        Relation::AtMost,
    )
}

/// The `b`-tuple inequality: `ns` sorted, of length exactly `b`.
pub fn bio_defect<N: Natural>(b: Base, ns: &[N]) -> Result<DefectReport<N::Signed>> {
    bio_defect_with(&b, ns)
}

pub fn bio_defect_with<N: Natural, S: Summatory<N>>(
    s: &S,
    ns: &[N],
) -> Result<DefectReport<N::Signed>> {
    let b = s.base().get();
    if ns.len() != b as usize {
        return Err(Error::Input(format!(
            "expected exactly {b} entries, got {}",
            ns.len()
        )));
    }
    if !is_sorted(ns) {
        return Err(Error::Input("entries must be nondecreasing".into()));
    }
    Ok(tuple_report(s, InequalityId::Bio, ns))
}

/// The same inequality for `r = len(ns)` summands with `1 <= r <= b`.
pub fn partial_tuple_defect<N: Natural>(b: Base, ns: &[N]) -> Result<DefectReport<N::Signed>> {
    partial_tuple_defect_with(&b, ns)
}

pub fn partial_tuple_defect_with<N: Natural, S: Summatory<N>>(
    s: &S,
    ns: &[N],
) -> Result<DefectReport<N::Signed>> {
    let base = s.base();
    if ns.is_empty() || ns.len() > base.get() as usize {
        return Err(Error::Range {
            r: ns.len(),
            base: base.get(),
        });
    }
    if !is_sorted(ns) {
        return Err(Error::Input("entries must be nondecreasing".into()));
    }
    Ok(tuple_report(s, InequalityId::PartialTuple, ns))
}

/// Shared body of
/// `S_b(Σ m) + Σ_{j<r} S_b(m_r - m_j) - r S_b(m_r) <= Σ_{j<r} c_j m_j`
/// where the coefficient of `m_j` (1-based) is `offset + j`.
fn variation_report<N: Natural, S: Summatory<N>>(
    s: &S,
    id: InequalityId,
    ms: &[N],
    offset: usize,
) -> DefectReport<N::Signed> {
    let (last, rest) = ms.split_last().expect("nonempty tuple");
    let r = ms.len();
    let mut positive = N::zero();
    let mut total = last.clone();
    let mut rhs = N::zero();
    for (j, m) in rest.iter().enumerate() {
        positive += s.summatory(&(last.clone() - m.clone()));
        rhs += small::<N>(offset + j + 1) * m.clone();
        total += m.clone();
    }
    positive += s.summatory(&total);
    let negative = small::<N>(r) * s.summatory(last);
    let lhs = positive.to_signed() - negative.to_signed();
    let mut report = DefectReport::new(
        id,
        Some(s.base().get()),
        named(&K_LABELS, 'k', signed_inputs(ms)),
        lhs,
        rhs.to_signed(),
        Relation::AtMost,
    );
    // domination alone admits counterexamples such as (4, 0, 4) in base 3
    report.guaranteed = ms.windows(2).all(|w| w[0] <= w[1]);
    report
}

/// Defect of `S_b(Σ k) + Σ_{j<b} S_b(k_b - k_j) - b S_b(k_b) <= Σ_{i<b} i k_i`.
///
/// Accepts any tuple whose last entry dominates. The bound is guaranteed only
/// for nondecreasing tuples; `guaranteed` records which case applies.
pub fn variation_defect<N: Natural>(b: Base, ks: &[N]) -> Result<DefectReport<N::Signed>> {
    variation_defect_with(&b, ks)
}

pub fn variation_defect_with<N: Natural, S: Summatory<N>>(
    s: &S,
    ks: &[N],
) -> Result<DefectReport<N::Signed>> {
    let b = s.base().get();
    if ks.len() != b as usize {
        return Err(Error::Input(format!(
            "expected exactly {b} entries, got {}",
            ks.len()
        )));
    }
    if !dominated_by_last(ks) {
        return Err(Error::Input(
            "the last entry must dominate all others".into(),
        ));
    }
    Ok(variation_report(s, InequalityId::Variation, ks, 0))
}

/// The `r <= b` form: the coefficient of `m_j` becomes `b - r + j`.
pub fn variation_partial_defect<N: Natural>(b: Base, ms: &[N]) -> Result<DefectReport<N::Signed>> {
    variation_partial_defect_with(&b, ms)
}

pub fn variation_partial_defect_with<N: Natural, S: Summatory<N>>(
    s: &S,
    ms: &[N],
) -> Result<DefectReport<N::Signed>> {
    let b = s.base().get() as usize;
    if ms.is_empty() || ms.len() > b {
        return Err(Error::Range {
            r: ms.len(),
            base: b as u32,
        });
    }
    if !dominated_by_last(ms) {
        return Err(Error::Input(
            "the last entry must dominate all others".into(),
        ));
    }
    let mut report = variation_report(s, InequalityId::VariationPartial, ms, b - ms.len());
    report.inputs = named(&M_LABELS, 'm', signed_inputs(ms));
    Ok(report)
}

/// `S_3(m+k+l) + S_3(m-k) + S_3(m-l) - 3 S_3(m) <= 2k + l` for `l <= k <= m`,
/// evaluated as the base-3 variation inequality on `(l, k, m)`.
pub fn base3_defect<N: Natural>(m: &N, k: &N, l: &N) -> Result<DefectReport<N::Signed>> {
    base3_defect_with(&Base::TERNARY, m, k, l)
}

pub fn base3_defect_with<N: Natural, S: Summatory<N>>(
    s: &S,
    m: &N,
    k: &N,
    l: &N,
) -> Result<DefectReport<N::Signed>> {
    if !(l <= k && k <= m) {
        return Err(Error::Ordering(format!(
            "need l <= k <= m, got l={l} k={k} m={m}"
        )));
    }
    let mut report = variation_defect_with(s, &[l.clone(), k.clone(), m.clone()])?;
    report.id = InequalityId::Base3;
    report.inputs = vec![
        ("m".into(), m.to_signed()),
        ("k".into(), k.to_signed()),
        ("l".into(), l.to_signed()),
    ];
    Ok(report)
}

/// The constant in the symmetric second-difference bound: `⌊(b+1)/2⌋` when
/// `sharp`, else `b - 1`.
pub fn symmetric_constant(b: Base, sharp: bool) -> u32 {
    if sharp {
        b.get().div_ceil(2)
    } else {
        b.get() - 1
    }
}

/// `S_b(m+k) + S_b(m-k) - 2 S_b(m) <= C k` for `k <= m`.
pub fn symmetric_defect<N: Natural>(
    b: Base,
    m: &N,
    k: &N,
    sharp: bool,
) -> Result<DefectReport<N::Signed>> {
    symmetric_defect_with(&b, m, k, sharp)
}

pub fn symmetric_defect_with<N: Natural, S: Summatory<N>>(
    s: &S,
    m: &N,
    k: &N,
    sharp: bool,
) -> Result<DefectReport<N::Signed>> {
    if k > m {
        return Err(Error::Ordering(format!("k = {k} exceeds m = {m}")));
    }
    let b = s.base();
    let positive = s.summatory(&(m.clone() + k.clone())) + s.summatory(&(m.clone() - k.clone()));
    let negative = small::<N>(2) * s.summatory(m);
    let lhs = positive.to_signed() - negative.to_signed();
    let rhs = N::from_small(symmetric_constant(b, sharp)) * k.clone();
    Ok(DefectReport::new(
        InequalityId::Symmetric,
        Some(b.get()),
        vec![("m".into(), m.to_signed()), ("k".into(), k.to_signed())],
        lhs,
        rhs.to_signed(),
        Relation::AtMost,
    ))
}

fn to_float<F: Float, N: Natural>(n: &N) -> F {
    <F as NumCast>::from(n.clone()).expect("representable as float")
}

/// `W_p(m+l) + W_p(m-l) - 2 W_p(m) <= l^(p+1)` for `l <= m`.
///
/// Any finite `p` is evaluated; `guaranteed` is set only for `0 <= p <= 1`.
pub fn allaart_p_defect<N: Natural, F: Float + crate::report::DefectValue>(
    p: F,
    m: &N,
    l: &N,
) -> Result<DefectReport<F>> {
    let weights = WeightSequence::power(p)?;
    allaart_p_defect_with(p, |n: &N| weighted_summatory(n, &weights), m, l)
}

/// As [`allaart_p_defect`], with `W_p` supplied by the caller.
pub fn allaart_p_defect_with<N, F, W>(p: F, w: W, m: &N, l: &N) -> Result<DefectReport<F>>
where
    N: Natural,
    F: Float + crate::report::DefectValue,
    W: Fn(&N) -> F,
{
    if l > m {
        return Err(Error::Ordering(format!("l = {l} exceeds m = {m}")));
    }
    let wm = w(m);
    let lhs = w(&(m.clone() + l.clone())) + w(&(m.clone() - l.clone())) - (wm + wm);
    let rhs = to_float::<F, N>(l).powf(p + F::one());
    let mut report = DefectReport::new(
        InequalityId::Allaart,
        Some(2),
        vec![
            ("p".into(), p),
            ("m".into(), to_float(m)),
            ("l".into(), to_float(l)),
        ],
        lhs,
        rhs,
        Relation::AtMost,
    );
    report.guaranteed = p >= F::zero() && p <= F::one();
    Ok(report)
}

/// `s_b(n + m) <= s_b(n) + s_b(m)`.
///
/// When `m` is a power of `b` the extra `power_bound_defect` records the
/// sharper `s_b(n + b^k) <= s_b(n) + 1`.
pub fn subadditivity_defect<N: Natural>(b: Base, n: &N, m: &N) -> DefectReport<N::Signed> {
    let sn = digit_sum(n, b);
    let sm = digit_sum(m, b);
    let lhs = digit_sum(&(n.clone() + m.clone()), b);
    let mut report = DefectReport::new(
        InequalityId::Subadditivity,
        Some(b.get()),
        vec![("n".into(), n.to_signed()), ("m".into(), m.to_signed())],
        lhs.to_signed(),
        (sn.clone() + sm.clone()).to_signed(),
        Relation::AtMost,
    );
    if sm.is_one() {
        let bound = (sn + N::one()).to_signed() - lhs.to_signed();
        report.extras.push(("power_bound_defect".into(), bound));
    }
    report
}

/// For prime `b`: `Δ = s_b(n) + s_b(m) - s_b(n+m)` against
/// `V = ν_b((n+m)!) - ν_b(n!) - ν_b(m!)`, the valuation of `C(n+m, n)`.
///
/// The relation checked is `Δ = (b-1)·V`; both raw quantities are kept as
/// extras `delta` and `valuation` (they coincide only in base 2).
pub fn carry_identity_check<N: Natural>(b: Base, n: &N, m: &N) -> Result<DefectReport<N::Signed>> {
    let sum = n.clone() + m.clone();
    let v_sum = factorial_valuation(&sum, b)?;
    let valuation = v_sum - factorial_valuation(n, b)? - factorial_valuation(m, b)?;
    let delta = digit_sum(n, b) + digit_sum(m, b) - digit_sum(&sum, b);
    let scaled = N::from_small(b.get() - 1) * valuation.clone();
    let mut report = DefectReport::new(
        InequalityId::CarryIdentity,
        Some(b.get()),
        vec![("n".into(), n.to_signed()), ("m".into(), m.to_signed())],
        delta.to_signed(),
        scaled.to_signed(),
        Relation::Identity,
    );
    report.extras = vec![
        ("delta".into(), delta.to_signed()),
        ("valuation".into(), valuation.to_signed()),
    ];
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summatory::{summatory_oracle_table, SummatoryTable};
    use num_bigint::BigUint;

    fn base(b: u32) -> Base {
        Base::new(b).unwrap()
    }

    /// Brute-force `S_b` straight from the definition.
    fn oracle_s(n: u64, b: u32) -> i128 {
        summatory_oracle_table(n, base(b))[n as usize] as i128
    }

    #[test]
    fn graham_examples() {
        for n2 in 0u64..40 {
            assert_eq!(graham_defect(&0, &n2).unwrap().defect, 0);
        }
        let r = graham_defect(&1u64, &1).unwrap();
        assert_eq!((r.lhs, r.rhs, r.defect), (1, 1, 0));
        let r = graham_defect(&3u64, &5).unwrap();
        assert_eq!(oracle_s(8, 2) - oracle_s(3, 2) - oracle_s(5, 2) - 3, 2);
        assert_eq!(r.defect, 2);
        assert!(matches!(graham_defect(&5u64, &3), Err(Error::Ordering(_))));
    }

    #[test]
    fn bio_examples() {
        assert_eq!(bio_defect(base(3), &[0u64, 0, 0]).unwrap().defect, 0);
        let r = bio_defect(base(3), &[1u64, 1, 1]).unwrap();
        assert_eq!((r.lhs, r.rhs, r.defect), (3, 3, 0));
        for n1 in 0u64..30 {
            for n2 in n1..30 {
                let g = graham_defect(&n1, &n2).unwrap();
                let b = bio_defect(base(2), &[n1, n2]).unwrap();
                assert_eq!(
                    (g.lhs, g.rhs, g.defect, &g.inputs),
                    (b.lhs, b.rhs, b.defect, &b.inputs)
                );
            }
        }
        assert!(matches!(
            bio_defect(base(3), &[1u64, 2]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            bio_defect(base(3), &[2u64, 1, 3]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn partial_tuple_examples() {
        for n in 0u64..50 {
            assert_eq!(partial_tuple_defect(base(5), &[n]).unwrap().defect, 0);
        }
        // S_3(4) = 1 + 2 + 1 = 4 and S_3(2) = 1, so lhs = 1 + 1 + 2 = 4.
        let r = partial_tuple_defect(base(3), &[2u64, 2]).unwrap();
        assert_eq!(oracle_s(4, 3), 4);
        assert_eq!((r.lhs, r.rhs, r.defect), (4, 4, 0));

        let r = partial_tuple_defect(base(4), &[1u64, 1, 2]).unwrap();
        let lhs = 2 * oracle_s(1, 4) + oracle_s(2, 4) + 2 + 1;
        assert_eq!((r.lhs, r.rhs), (lhs, oracle_s(4, 4)));
        assert!(r.defect >= 0);

        assert_eq!(
            partial_tuple_defect(base(3), &[1u64, 1, 1, 1]).unwrap_err(),
            Error::Range { r: 4, base: 3 }
        );
        assert!(matches!(
            partial_tuple_defect::<u64>(base(3), &[]),
            Err(Error::Range { .. })
        ));
        assert!(matches!(
            partial_tuple_defect(base(3), &[3u64, 1]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn variation_examples() {
        // b = 2: defect = k - [S_2(2k) - 2 S_2(k)] = k - k = 0.
        for k in 0u64..200 {
            let r = variation_defect(base(2), &[k, k]).unwrap();
            assert_eq!(r.defect, 0, "k={k}");
            assert_eq!(r.rhs, k as i128);
        }
        assert_eq!(variation_defect(base(3), &[0u64, 0, 2]).unwrap().defect, 0);

        let r = variation_defect(base(3), &[1u64, 1, 2]).unwrap();
        let lhs = oracle_s(4, 3) + 2 * oracle_s(1, 3) - 3 * oracle_s(2, 3);
        assert_eq!((r.lhs, r.rhs), (lhs, 1 + 2));
        assert!(r.defect >= 0);

        // domination, not sortedness
        assert!(variation_defect(base(3), &[2u64, 1, 2]).is_ok());
        assert!(matches!(
            variation_defect(base(3), &[3u64, 1, 2]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            variation_defect(base(3), &[1u64, 2]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn variation_partial_examples() {
        for m in 0u64..50 {
            let r = variation_partial_defect(base(4), &[m]).unwrap();
            assert_eq!((r.lhs, r.rhs, r.defect), (0, 0, 0));
        }
        let r = variation_partial_defect(base(3), &[1u64, 2]).unwrap();
        let lhs = oracle_s(3, 3) + oracle_s(1, 3) - 2 * oracle_s(2, 3);
        assert_eq!((r.lhs, r.rhs), (lhs, 2));
        assert!(r.defect >= 0);

        let r = variation_partial_defect(base(4), &[1u64, 1]).unwrap();
        assert_eq!((r.lhs, r.rhs, r.defect), (1, 3, 2));

        // r = b reproduces the full variation inequality
        for ks in [[0u64, 3, 5, 5], [5, 0, 1, 5], [2, 2, 2, 2]] {
            let a = variation_partial_defect(base(4), &ks).unwrap();
            let b = variation_defect(base(4), &ks).unwrap();
            assert_eq!((a.lhs, a.rhs), (b.lhs, b.rhs));
        }
        assert!(matches!(
            variation_partial_defect(base(2), &[1u64, 1, 1]),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn base3_examples() {
        for m in 0u64..100 {
            assert_eq!(base3_defect(&m, &0, &0).unwrap().defect, 0);
        }
        let r = base3_defect(&2u64, &1, &0).unwrap();
        assert_eq!((r.lhs, r.rhs, r.defect), (1, 2, 1));
        let r = base3_defect(&5u64, &3, &2).unwrap();
        let lhs = oracle_s(10, 3) + oracle_s(2, 3) + oracle_s(3, 3) - 3 * oracle_s(5, 3);
        assert_eq!((r.lhs, r.rhs), (lhs, 2 * 3 + 2));
        assert!(r.defect >= 0);
        assert!(matches!(
            base3_defect(&2u64, &1, &2),
            Err(Error::Ordering(_))
        ));
        assert!(matches!(
            base3_defect(&2u64, &3, &0),
            Err(Error::Ordering(_))
        ));
    }

    #[test]
    fn symmetric_examples() {
        for b in 2..7 {
            for m in 0u64..40 {
                assert_eq!(symmetric_defect(base(b), &m, &0, true).unwrap().defect, 0);
            }
        }
        let r = symmetric_defect(base(4), &1u64, &1, true).unwrap();
        assert_eq!((r.lhs, r.rhs, r.defect), (1, 2, 1));
        for k in 0u64..300 {
            assert_eq!(symmetric_defect(base(2), &k, &k, true).unwrap().defect, 0);
        }
        assert_eq!(symmetric_constant(base(3), false), 2);
        assert_eq!(symmetric_constant(base(6), true), 3);
        assert!(matches!(
            symmetric_defect(base(3), &1u64, &2, true),
            Err(Error::Ordering(_))
        ));
    }

    #[test]
    fn allaart_examples() {
        for p in [0.0, 0.3, 1.0, 2.5] {
            for m in 0u64..30 {
                let r = allaart_p_defect(p, &m, &0).unwrap();
                assert_eq!(r.defect, 0.0);
            }
        }
        let r = allaart_p_defect(0.0, &2u64, &2).unwrap();
        assert_eq!((r.lhs, r.rhs, r.defect), (2.0, 2.0, 0.0));
        for m in 0u64..60 {
            for l in 0..=m {
                let r = allaart_p_defect(1.0, &m, &l).unwrap();
                assert_eq!(r.lhs, (l * l) as f64);
                assert_eq!(r.defect, 0.0);
            }
        }
        assert!(allaart_p_defect(0.5f64, &3u64, &2).unwrap().guaranteed);
        assert!(!allaart_p_defect(1.5f64, &3u64, &2).unwrap().guaranteed);
        assert!(matches!(
            allaart_p_defect(0.5f64, &1u64, &2),
            Err(Error::Ordering(_))
        ));
        let r = allaart_p_defect(0.5f32, &9u64, &4).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn subadditivity_examples() {
        for n in 0u64..50 {
            assert_eq!(subadditivity_defect(base(7), &n, &0).defect, 0);
        }
        assert_eq!(subadditivity_defect(base(2), &1u64, &1).defect, 1);
        assert_eq!(subadditivity_defect(base(10), &5u64, &5).defect, 9);
        let r = subadditivity_defect(base(10), &95u64, &10);
        assert_eq!(r.extra("power_bound_defect"), Some(&9));
        assert_eq!(
            subadditivity_defect(base(10), &95u64, &11).extra("power_bound_defect"),
            None
        );
    }

    #[test]
    fn carry_identity_examples() {
        let r = carry_identity_check(base(2), &1u64, &1).unwrap();
        assert_eq!(
            (r.extra("delta"), r.extra("valuation")),
            (Some(&1), Some(&1))
        );
        let r = carry_identity_check(base(3), &1u64, &2).unwrap();
        assert_eq!(
            (r.extra("delta"), r.extra("valuation")),
            (Some(&2), Some(&1))
        );
        assert!(r.holds);
        let r = carry_identity_check(base(5), &17u64, &0).unwrap();
        assert_eq!(
            (r.extra("delta"), r.extra("valuation")),
            (Some(&0), Some(&0))
        );
        assert_eq!(
            carry_identity_check(base(6), &1u64, &1).unwrap_err(),
            Error::NonPrimeBase(6)
        );
    }

    #[test]
    fn carry_valuation_matches_binomial() {
        fn binomial(n: u64, k: u64) -> BigUint {
            (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
        }
        for b in [2u32, 3, 5, 7] {
            for n in 0u64..40 {
                for m in 0u64..40 {
                    let r = carry_identity_check(base(b), &n, &m).unwrap();
                    let direct = crate::digits::valuation(&binomial(n + m, n), base(b)).unwrap();
                    assert_eq!(r.extra("valuation"), Some(&(direct as i128)));
                    assert!(r.holds);
                }
            }
        }
    }

    #[test]
    fn table_and_kernel_agree() {
        let t = SummatoryTable::new(base(4), 200);
        for n1 in 0u64..50 {
            for n2 in n1..50 {
                let a = partial_tuple_defect_with(&t, &[n1, n2]).unwrap();
                let b = partial_tuple_defect(base(4), &[n1, n2]).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn big_inputs() {
        let n1 = BigUint::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        let n2 = BigUint::parse_bytes(b"987654321098765432109876543210", 10).unwrap();
        assert!(graham_defect(&n1, &n2).unwrap().holds);
        assert!(symmetric_defect(base(7), &n2, &n1, true).unwrap().holds);
        assert!(base3_defect(&n2, &n1, &n1).unwrap().holds);
    }
}
