//! Grid definitions for every scannable relation and the request dispatcher.

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::digits::{count_factor, DigitWord};
use crate::error::{Error, Result};
use crate::inequalities::{
    allaart_p_defect_with, base3_defect_with, bio_defect_with, carry_identity_check,
    graham_defect_with, partial_tuple_defect_with, subadditivity_defect, symmetric_defect_with,
    variation_defect_with, variation_partial_defect_with,
};
use crate::natural::{Base, Natural};
use crate::report::{DefectReport, InequalityId, Relation, Value};
use crate::summatory::{scaling_identity_check, SummatoryTable, WeightSequence, WeightedTable};

use super::scan::{GridSpec, ScanOptions, ScanReport, Sweep};

/// Calls `f` on every nondecreasing tuple of `len` entries in `0..=max`.
pub fn for_each_sorted_tuple(len: usize, max: u64, f: &mut impl FnMut(&[u64])) {
    fn go(buf: &mut Vec<u64>, len: usize, lo: u64, max: u64, f: &mut impl FnMut(&[u64])) {
        if buf.len() == len {
            f(buf);
            return;
        }
        for v in lo..=max {
            buf.push(v);
            go(buf, len, v, max, f);
            buf.pop();
        }
    }
    go(&mut Vec::with_capacity(len), len, 0, max, f);
}

/// Calls `f` on every tuple of `len` entries in `0..=max`.
pub fn for_each_tuple(len: usize, max: u64, f: &mut impl FnMut(&[u64])) {
    fn go(buf: &mut Vec<u64>, len: usize, max: u64, f: &mut impl FnMut(&[u64])) {
        if buf.len() == len {
            f(buf);
            return;
        }
        for v in 0..=max {
            buf.push(v);
            go(buf, len, max, f);
            buf.pop();
        }
    }
    go(&mut Vec::with_capacity(len), len, max, f);
}

pub type Exact<'a> = Sweep<'a, i128>;

/// All pairs `0 <= n1 <= n2 <= bound`.
pub fn graham_sweep(bound: u64) -> Exact<'static> {
    let table = SummatoryTable::new(Base::BINARY, 2 * bound);
    let grid = GridSpec {
        bound,
        base: Some(2),
        ..Default::default()
    };
    Sweep::new(InequalityId::Graham, grid, bound + 1, move |n2, emit| {
        for n1 in 0..=n2 {
            emit(graham_defect_with(&table, &n1, &n2).expect("grid respects ordering"));
        }
    })
}

/// Nondecreasing `r`-tuples with entries `<= bound`, blocked by the last entry.
/// Tuples of length `r` with entries in `0..=bound`, grouped by the last
/// entry. `dominated` widens the family from nondecreasing tuples to those
/// whose last entry is maximal.
fn tuple_sweep(
    id: InequalityId,
    b: Base,
    r: usize,
    bound: u64,
    dominated: bool,
    eval: fn(&SummatoryTable, &[u64]) -> Result<DefectReport<i128>>,
) -> Exact<'static> {
    let table = SummatoryTable::new(b, r as u64 * bound);
    let grid = GridSpec {
        bound,
        base: Some(b.get()),
        r: Some(r),
        dominated: dominated.then_some(true),
        ..Default::default()
    };
    Sweep::new(id, grid, bound + 1, move |last, emit| {
        let mut buf = Vec::with_capacity(r);
        let mut visit = |head: &[u64]| {
            buf.clear();
            buf.extend_from_slice(head);
            buf.push(last);
            emit(eval(&table, &buf).expect("grid respects hypotheses"));
        };
        if dominated {
            for_each_tuple(r - 1, last, &mut visit);
        } else {
            for_each_sorted_tuple(r - 1, last, &mut visit);
        }
    })
}

pub fn bio_sweep(b: Base, bound: u64) -> Exact<'static> {
    tuple_sweep(
        InequalityId::Bio,
        b,
        b.get() as usize,
        bound,
        false,
        bio_defect_with,
    )
}

pub fn partial_tuple_sweep(b: Base, r: usize, bound: u64) -> Result<Exact<'static>> {
    check_r(b, r)?;
    Ok(tuple_sweep(
        InequalityId::PartialTuple,
        b,
        r,
        bound,
        false,
        partial_tuple_defect_with,
    ))
}

/// Nondecreasing tuples by default. The dominated family also admits
/// unsorted heads, where the inequality can fail.
pub fn variation_sweep(b: Base, bound: u64, dominated: bool) -> Exact<'static> {
    let r = b.get() as usize;
    tuple_sweep(
        InequalityId::Variation,
        b,
        r,
        bound,
        dominated,
        variation_defect_with,
    )
}

pub fn variation_partial_sweep(
    b: Base,
    r: usize,
    bound: u64,
    dominated: bool,
) -> Result<Exact<'static>> {
    check_r(b, r)?;
    Ok(tuple_sweep(
        InequalityId::VariationPartial,
        b,
        r,
        bound,
        dominated,
        variation_partial_defect_with,
    ))
}

fn check_r(b: Base, r: usize) -> Result<()> {
    if r == 0 || r > b.get() as usize {
        return Err(Error::Range { r, base: b.get() });
    }
    Ok(())
}

/// All `0 <= l <= k <= m <= bound`.
pub fn base3_sweep(bound: u64) -> Exact<'static> {
    let table = SummatoryTable::new(Base::TERNARY, 3 * bound);
    let grid = GridSpec {
        bound,
        base: Some(3),
        ..Default::default()
    };
    Sweep::new(InequalityId::Base3, grid, bound + 1, move |m, emit| {
        for k in 0..=m {
            for l in 0..=k {
                emit(base3_defect_with(&table, &m, &k, &l).expect("grid respects ordering"));
            }
        }
    })
}

/// All `0 <= k <= m <= bound`.
pub fn symmetric_sweep(b: Base, bound: u64, sharp: bool) -> Exact<'static> {
    let table = SummatoryTable::new(b, 2 * bound);
    let grid = GridSpec {
        bound,
        base: Some(b.get()),
        sharp: Some(sharp),
        ..Default::default()
    };
    Sweep::new(InequalityId::Symmetric, grid, bound + 1, move |m, emit| {
        for k in 0..=m {
            emit(symmetric_defect_with(&table, &m, &k, sharp).expect("grid respects ordering"));
        }
    })
}

/// All `0 <= l <= m <= bound` at a fixed exponent `p`.
pub fn allaart_sweep(p: f64, bound: u64) -> Result<Sweep<'static, f64>> {
    let table = WeightedTable::new(&WeightSequence::power(p)?, 2 * bound);
    let grid = GridSpec {
        bound,
        base: Some(2),
        p: Some(p),
        ..Default::default()
    };
    Ok(Sweep::new(
        InequalityId::Allaart,
        grid,
        bound + 1,
        move |m, emit| {
            for l in 0..=m {
                let w = |n: &u64| table.get(*n);
                emit(allaart_p_defect_with(p, w, &m, &l).expect("grid respects ordering"));
            }
        },
    ))
}

/// All ordered pairs `n, m <= bound`.
pub fn subadditivity_sweep(b: Base, bound: u64) -> Exact<'static> {
    let grid = GridSpec {
        bound,
        base: Some(b.get()),
        ..Default::default()
    };
    Sweep::new(
        InequalityId::Subadditivity,
        grid,
        bound + 1,
        move |n, emit| {
            for m in 0..=bound {
                emit(subadditivity_defect(b, &n, &m));
            }
        },
    )
}

/// All ordered pairs `n, m <= bound`, prime `b` only.
pub fn carry_identity_sweep(b: Base, bound: u64) -> Result<Exact<'static>> {
    if !b.is_prime() {
        return Err(Error::NonPrimeBase(b.get()));
    }
    let grid = GridSpec {
        bound,
        base: Some(b.get()),
        ..Default::default()
    };
    Ok(Sweep::new(
        InequalityId::CarryIdentity,
        grid,
        bound + 1,
        move |n, emit| {
            for m in 0..=bound {
                emit(carry_identity_check(b, &n, &m).expect("prime base"));
            }
        },
    ))
}

/// `1 <= n <= bound`, `0 <= x <= x_max`, in 128-bit arithmetic.
pub fn scaling_sweep(b: Base, bound: u64, x_max: u32) -> Sweep<'static, BigInt> {
    let grid = GridSpec {
        bound,
        base: Some(b.get()),
        x_max: Some(x_max),
        ..Default::default()
    };
    Sweep::new(InequalityId::Scaling, grid, bound, move |i, emit| {
        let n = i as u128 + 1;
        for x in 0..=x_max {
            emit(scaling_identity_check(&n, x, b).expect("n >= 1"));
        }
    })
}

/// `T(n) = Σ_{j < n} pattern_count(j)` for `0 <= n <= max`.
pub fn pattern_summatory_table(pattern: &DigitWord, max: u64) -> Vec<u64> {
    let b = pattern.base().get();
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut acc = 0u64;
    out.push(0);
    for j in 0..max {
        let mut word = j.radix_digits_le(b);
        word.reverse();
        acc += count_factor(&word, pattern.letters());
        out.push(acc);
    }
    out
}

/// Probes `T(n1) + T(n2) + c·n1 <= T(n1 + n2)` over `0 <= n1 <= n2 <= bound`
/// for the summatory block count `T`. Nothing is claimed; negative defects
/// are simply reported.
pub fn block_sweep(
    pattern: &DigitWord,
    bound: u64,
    coefficient: Ratio<i128>,
) -> Sweep<'static, Ratio<i128>> {
    let table = pattern_summatory_table(pattern, 2 * bound);
    let b = pattern.base().get();
    let grid = GridSpec {
        bound,
        base: Some(pattern.base().get()),
        pattern: Some(pattern.to_string()),
        coefficient: Some(coefficient.to_string()),
        ..Default::default()
    };
    Sweep::new(InequalityId::Block, grid, bound + 1, move |n2, emit| {
        let t = |n: u64| Ratio::from_integer(table[n as usize] as i128);
        for n1 in 0..=n2 {
            let lhs = t(n1) + t(n2) + coefficient * Ratio::from_integer(n1 as i128);
            let mut r = DefectReport::new(
                InequalityId::Block,
                Some(b),
                vec![
                    ("n1".into(), Ratio::from_integer(n1 as i128)),
                    ("n2".into(), Ratio::from_integer(n2 as i128)),
                ],
                lhs,
                t(n1 + n2),
                Relation::AtMost,
            );
            r.guaranteed = false;
            emit(r);
        }
    })
}

/// A sweep whose scalar type has not been erased yet.
pub enum AnySweep {
    Exact(Sweep<'static, i128>),
    Big(Sweep<'static, BigInt>),
    Real(Sweep<'static, f64>),
    Ratio(Sweep<'static, Ratio<i128>>),
}

impl AnySweep {
    pub fn run(&self, opts: &ScanOptions) -> ScanReport<Value> {
        match self {
            AnySweep::Exact(s) => s.run(opts).into_values(),
            AnySweep::Big(s) => s.run(opts).into_values(),
            AnySweep::Real(s) => s.run(opts).into_values(),
            AnySweep::Ratio(s) => s.run(opts).into_values(),
        }
    }

    pub fn visit(&self, mut f: impl FnMut(DefectReport<Value>)) {
        match self {
            AnySweep::Exact(s) => s.visit(|r| f(r.into_values())),
            AnySweep::Big(s) => s.visit(|r| f(r.into_values())),
            AnySweep::Real(s) => s.visit(|r| f(r.into_values())),
            AnySweep::Ratio(s) => s.visit(|r| f(r.into_values())),
        }
    }

    pub fn id(&self) -> InequalityId {
        match self {
            AnySweep::Exact(s) => s.id,
            AnySweep::Big(s) => s.id,
            AnySweep::Real(s) => s.id,
            AnySweep::Ratio(s) => s.id,
        }
    }

    pub fn grid(&self) -> &GridSpec {
        match self {
            AnySweep::Exact(s) => &s.grid,
            AnySweep::Big(s) => &s.grid,
            AnySweep::Real(s) => &s.grid,
            AnySweep::Ratio(s) => &s.grid,
        }
    }
}

/// Everything needed to name one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRequest {
    pub id: InequalityId,
    pub bound: u64,
    pub base: Option<u32>,
    pub r: Option<usize>,
    pub p: Option<f64>,
    pub sharp: bool,
    /// Variation grids: admit unsorted heads under the last entry.
    pub dominated: bool,
    pub x_max: u32,
    pub pattern: Option<String>,
    pub coefficient: Ratio<i128>,
}

/// Exponent range of the scaling identity grid.
pub const DEFAULT_X_MAX: u32 = 10;

impl ScanRequest {
    pub fn new(id: InequalityId, bound: u64) -> Self {
        ScanRequest {
            id,
            bound,
            base: None,
            r: None,
            p: None,
            sharp: true,
            dominated: false,
            x_max: DEFAULT_X_MAX,
            pattern: None,
            coefficient: Ratio::from_integer(1),
        }
    }

    pub fn base(mut self, b: u32) -> Self {
        self.base = Some(b);
        self
    }

    pub fn r(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }

    pub fn p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    fn need_base(&self) -> Result<Base> {
        let b = self
            .base
            .ok_or_else(|| Error::Input(format!("`{}` needs a base", self.id)))?;
        Base::new(b)
    }

    fn fixed_base(&self, b: u32) -> Result<()> {
        match self.base {
            Some(given) if given != b => Err(Error::Input(format!(
                "`{}` is defined in base {b} only (got {given})",
                self.id
            ))),
            _ => Ok(()),
        }
    }
}

/// Builds the grid a request names.
pub fn sweep(req: &ScanRequest) -> Result<AnySweep> {
    use InequalityId as I;
    let bound = req.bound;
    Ok(match req.id {
        I::Graham => {
            req.fixed_base(2)?;
            AnySweep::Exact(graham_sweep(bound))
        }
        I::Bio => AnySweep::Exact(bio_sweep(req.need_base()?, bound)),
        I::PartialTuple => {
            let b = req.need_base()?;
            AnySweep::Exact(partial_tuple_sweep(
                b,
                req.r.unwrap_or(b.get() as usize),
                bound,
            )?)
        }
        I::Variation => AnySweep::Exact(variation_sweep(req.need_base()?, bound, req.dominated)),
        I::VariationPartial => {
            let b = req.need_base()?;
            let r = req.r.unwrap_or(b.get() as usize);
            AnySweep::Exact(variation_partial_sweep(b, r, bound, req.dominated)?)
        }
        I::Base3 => {
            req.fixed_base(3)?;
            AnySweep::Exact(base3_sweep(bound))
        }
        I::Symmetric => AnySweep::Exact(symmetric_sweep(req.need_base()?, bound, req.sharp)),
        I::Allaart => {
            req.fixed_base(2)?;
            let p = req
                .p
                .ok_or_else(|| Error::Input("`allaart` needs an exponent p".into()))?;
            AnySweep::Real(allaart_sweep(p, bound)?)
        }
        I::Subadditivity => AnySweep::Exact(subadditivity_sweep(req.need_base()?, bound)),
        I::CarryIdentity => AnySweep::Exact(carry_identity_sweep(req.need_base()?, bound)?),
        I::Scaling => AnySweep::Big(scaling_sweep(req.need_base()?, bound, req.x_max)),
        I::Block => {
            let b = Base::new(req.base.unwrap_or(2))?;
            let text = req
                .pattern
                .as_deref()
                .ok_or_else(|| Error::Input("`block` needs a pattern".into()))?;
            let pattern = DigitWord::parse(text, b)?;
            AnySweep::Ratio(block_sweep(&pattern, bound, req.coefficient))
        }
        I::Optimality | I::Divergence => {
            return Err(Error::Input(format!(
                "`{}` is a construction, not a grid; use search",
                req.id
            )))
        }
    })
}

/// Sweeps the grid a request names.
pub fn scan(req: &ScanRequest, opts: &ScanOptions) -> Result<ScanReport<Value>> {
    Ok(sweep(req)?.run(opts))
}

/// Relations that `verify` covers, in reporting order.
pub const VERIFIED: [InequalityId; 11] = [
    InequalityId::Graham,
    InequalityId::Bio,
    InequalityId::PartialTuple,
    InequalityId::Variation,
    InequalityId::VariationPartial,
    InequalityId::Base3,
    InequalityId::Symmetric,
    InequalityId::Allaart,
    InequalityId::Subadditivity,
    InequalityId::CarryIdentity,
    InequalityId::Scaling,
];

/// The default grids for one relation at entry bound `bound`.
pub fn verification_suite(id: InequalityId, bound: u64) -> Result<Vec<ScanRequest>> {
    use InequalityId as I;
    let at = |b: u32| ScanRequest::new(id, bound).base(b);
    let with_r = |bases: &[u32]| {
        bases
            .iter()
            .flat_map(|&b| (1..=b as usize).map(move |r| at(b).r(r)))
            .collect::<Vec<_>>()
    };
    Ok(match id {
        I::Graham | I::Base3 => vec![ScanRequest::new(id, bound)],
        I::Bio | I::Variation => [2, 3, 4].map(at).to_vec(),
        I::PartialTuple => with_r(&[3, 4, 5]),
        I::VariationPartial => with_r(&[2, 3, 4]),
        I::Symmetric => (2..=6).map(at).collect(),
        I::Allaart => [0.0, 0.25, 0.5, 0.75, 1.0]
            .map(|p| ScanRequest::new(id, bound).p(p))
            .to_vec(),
        I::Subadditivity => [2, 3, 10].map(at).to_vec(),
        I::CarryIdentity => [2, 3, 5, 7].map(at).to_vec(),
        I::Scaling => (2..=6).map(at).collect(),
        I::Optimality | I::Divergence | I::Block => {
            return Err(Error::Input(format!("`{id}` has no verification suite")))
        }
    })
}
