//! Explicit tuples showing the tuple inequality cannot extend past `r = b`.

use crate::error::{Error, Result};
use crate::natural::{power, Base, Natural};
use crate::report::{DefectReport, InequalityId, Relation};
use crate::summatory::summatory_digit_sum;

/// A tuple `0 <= n_1 <= .. <= n_r` with
/// `Σ S_b(n_i) + Σ n_i > S_b(Σ n_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleWitness<N: Natural> {
    pub base: Base,
    pub r: usize,
    pub x: u32,
    pub ns: Vec<N>,
    /// `Σ S_b(n_i) + Σ n_i`.
    pub lhs: N,
    /// `S_b(Σ n_i)`.
    pub rhs: N,
    /// `lhs - rhs`, strictly positive.
    pub margin: N::Signed,
}

impl<N: Natural> CounterexampleWitness<N> {
    pub fn is_violation(&self) -> bool {
        self.lhs > self.rhs
    }

    pub fn to_report(&self) -> DefectReport<N::Signed> {
        let inputs = vec![
            ("b".into(), N::from_small(self.base.get()).to_signed()),
            (
                "r".into(),
                N::from_usize(self.r).expect("small r").to_signed(),
            ),
            ("x".into(), N::from_small(self.x).to_signed()),
        ];
        let mut report = DefectReport::new(
            InequalityId::Optimality,
            Some(self.base.get()),
            inputs,
            self.lhs.to_signed(),
            self.rhs.to_signed(),
            Relation::Violation,
        );
        report.guaranteed = false;
        report
    }
}

/// Builds `r - b - 1` zeros, then `b` ones, then `b^x`.
///
/// Both sides are evaluated from the tuple and checked against their closed
/// forms `S_b(b^x) + b + b^x` and `S_b(b^x) + b(b+1)/2`.
pub fn optimality_counterexample<N: Natural>(
    b: Base,
    r: usize,
    x: u32,
) -> Result<CounterexampleWitness<N>> {
    let bv = b.get() as usize;
    if r <= bv || x < 2 {
        return Err(Error::ConstructionDomain { b: b.get(), r, x });
    }
    let bx: N = power(b, x);
    let mut ns = vec![N::zero(); r - bv - 1];
    ns.extend(std::iter::repeat_n(N::one(), bv));
    ns.push(bx.clone());

    let total = ns.iter().fold(N::zero(), |acc, n| acc + n.clone());
    let lhs = ns
        .iter()
        .fold(N::zero(), |acc, n| acc + summatory_digit_sum(n, b))
        + total.clone();
    let rhs = summatory_digit_sum(&total, b);

    let s_bx = summatory_digit_sum(&bx, b);
    let bn = b.as_natural::<N>();
    let closed_lhs = s_bx.clone() + bn.clone() + bx;
    let closed_rhs = s_bx + bn.clone() * (bn + N::one()) / N::from_small(2);
    assert_eq!(lhs, closed_lhs, "left side departs from its closed form");
    assert_eq!(rhs, closed_rhs, "right side departs from its closed form");

    let margin = lhs.to_signed() - rhs.to_signed();
    Ok(CounterexampleWitness {
        base: b,
        r,
        x,
        ns,
        lhs,
        rhs,
        margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summatory::{summatory_digit_sum_oracle, DEFAULT_ORACLE_CAP};
    use num_bigint::BigUint;

    fn base(b: u32) -> Base {
        Base::new(b).unwrap()
    }

    #[test]
    fn examples() {
        let w = optimality_counterexample::<u64>(base(2), 3, 2).unwrap();
        assert_eq!(w.ns, vec![1, 1, 4]);
        assert_eq!((w.lhs, w.rhs, w.margin), (10, 7, 3));

        let w = optimality_counterexample::<u64>(base(3), 4, 2).unwrap();
        assert_eq!(w.ns, vec![1, 1, 1, 9]);
        assert_eq!((w.lhs, w.rhs, w.margin), (30, 24, 6));

        let w = optimality_counterexample::<u64>(base(2), 4, 2).unwrap();
        assert_eq!(w.ns, vec![0, 1, 1, 4]);
        assert_eq!((w.lhs, w.rhs, w.margin), (10, 7, 3));
        assert!(w.is_violation());
        assert!(w.to_report().holds);
    }

    #[test]
    fn oracle_agrees_on_small_witnesses() {
        for b in 2..=4 {
            for r in b as usize + 1..=b as usize + 2 {
                for x in 2..=4 {
                    let w = optimality_counterexample::<u64>(base(b), r, x).unwrap();
                    let s = |n: &u64| {
                        summatory_digit_sum_oracle(n, base(b), DEFAULT_ORACLE_CAP).unwrap()
                    };
                    let lhs: u64 = w.ns.iter().map(s).sum::<u64>() + w.ns.iter().sum::<u64>();
                    assert_eq!(lhs, w.lhs);
                    assert_eq!(s(&w.ns.iter().sum()), w.rhs);
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert_eq!(
            optimality_counterexample::<u64>(base(3), 3, 2).unwrap_err(),
            Error::ConstructionDomain { b: 3, r: 3, x: 2 }
        );
        assert!(optimality_counterexample::<u64>(base(3), 4, 1).is_err());
    }

    #[test]
    fn huge_exponent() {
        let w = optimality_counterexample::<BigUint>(base(7), 12, 200).unwrap();
        assert!(w.is_violation());
        assert_eq!(w.ns.len(), 12);
    }
}
