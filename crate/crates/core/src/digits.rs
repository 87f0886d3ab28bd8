//! Radix conversion and pointwise digit functions.

use std::fmt;

use crate::error::{Error, Result};
use crate::natural::{Base, Natural};

/// Canonical base-`b` expansion, least significant digit first.
///
/// Zero is the empty vector; otherwise the last stored digit is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVector {
    digits: Vec<u32>,
    base: Base,
}

impl DigitVector {
    /// Validates range and canonical form.
    pub fn new(digits: Vec<u32>, base: Base) -> Result<Self> {
        check_range(&digits, base)?;
        if digits.last() == Some(&0) {
            return Err(Error::NonCanonical);
        }
        Ok(DigitVector { digits, base })
    }

    /// Like [`DigitVector::new`] but strips high-order zeros instead of rejecting them.
    pub fn normalized(mut digits: Vec<u32>, base: Base) -> Result<Self> {
        check_range(&digits, base)?;
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Ok(DigitVector { digits, base })
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

impl fmt::Display for DigitVector {
    /// Most significant digit first, the usual reading order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return f.write_str("0");
        }
        let sep = if self.base.get() > 10 { "," } else { "" };
        let mut first = true;
        for d in self.digits.iter().rev() {
            if !first {
                f.write_str(sep)?;
            }
            write!(f, "{d}")?;
            first = false;
        }
        Ok(())
    }
}

fn check_range(digits: &[u32], base: Base) -> Result<()> {
    match digits.iter().position(|&d| d >= base.get()) {
        Some(position) => Err(Error::InvalidDigit {
            digit: digits[position],
            position,
            base: base.get(),
        }),
        None => Ok(()),
    }
}

/// A word over the digit alphabet `{0, .., b-1}`, most significant first.
///
/// Unlike [`DigitVector`] it may start with zeros: it is a block to search
/// for, not a number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitWord {
    letters: Vec<u32>,
    base: Base,
}

impl DigitWord {
    pub fn new(letters: Vec<u32>, base: Base) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidPattern("pattern is empty".into()));
        }
        if let Some(&d) = letters.iter().find(|&&d| d >= base.get()) {
            return Err(Error::InvalidPattern(format!(
                "letter {d} is not a base-{base} digit"
            )));
        }
        Ok(DigitWord { letters, base })
    }

    /// Parses `"011"` (one character per letter, bases up to 36) or
    /// `"1,0,12"` (comma separated, any base).
    pub fn parse(s: &str, base: Base) -> Result<Self> {
        let s = s.trim();
        let letters = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidPattern(format!("bad letter `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(36)
                        .ok_or_else(|| Error::InvalidPattern(format!("bad letter `{c}`")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        DigitWord::new(letters, base)
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn base(&self) -> Base {
        self.base
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.base.get() > 10 { "," } else { "" };
        let parts: Vec<String> = self.letters.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

pub fn to_digits<N: Natural>(n: &N, b: Base) -> DigitVector {
    DigitVector {
        digits: n.radix_digits_le(b.get()),
        base: b,
    }
}

/// `Σ d_i b^i`, evaluated by Horner's rule from the top digit.
pub fn from_digits<N: Natural>(d: &DigitVector) -> N {
    let radix = d.base.as_natural::<N>();
    let mut acc = N::zero();
    for &digit in d.digits.iter().rev() {
        acc *= radix.clone();
        acc += N::from_small(digit);
    }
    acc
}

/// `s_b(n)`, the sum of the base-`b` digits of `n`.
pub fn digit_sum<N: Natural>(n: &N, b: Base) -> N {
    let radix = b.as_natural::<N>();
    let mut n = n.clone();
    let mut sum = N::zero();
    while !n.is_zero() {
        let (q, r) = n.div_rem(&radix);
        sum += r;
        n = q;
    }
    sum
}

/// `s_b(n)` for machine words, with no generic overhead.
#[inline]
pub fn digit_sum_u64(mut n: u64, b: u32) -> u64 {
    let b = b as u64;
    let mut sum = 0;
    while n != 0 {
        sum += n % b;
        n /= b;
    }
    sum
}

/// Largest `e` with `b^e | n`.
pub fn valuation<N: Natural>(n: &N, b: Base) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::UndefinedValuation);
    }
    let radix = b.as_natural::<N>();
    let mut n = n.clone();
    let mut e = 0u64;
    loop {
        let (q, r) = n.div_rem(&radix);
        if !r.is_zero() {
            return Ok(e);
        }
        e += 1;
        n = q;
    }
}

/// Overlapping occurrences of `pattern` in the digit word of `n`.
///
/// The word is read most significant digit first (the reverse of
/// [`DigitVector`] storage). Zero has the empty word and contains nothing.
pub fn pattern_count<N: Natural>(n: &N, b: Base, pattern: &DigitWord) -> Result<u64> {
    if pattern.base != b {
        return Err(Error::InvalidPattern(format!(
            "pattern is over base {}, number over base {b}",
            pattern.base
        )));
    }
    let mut word = n.radix_digits_le(b.get());
    word.reverse();
    Ok(count_factor(&word, &pattern.letters))
}

pub(crate) fn count_factor(word: &[u32], pattern: &[u32]) -> u64 {
    if pattern.len() > word.len() {
        return 0;
    }
    word.windows(pattern.len())
        .filter(|w| *w == pattern)
        .count() as u64
}

/// Number of digits of `n` in base `b` (zero has none).
pub fn digit_len<N: Natural>(n: &N, b: Base) -> usize {
    let radix = b.as_natural::<N>();
    let mut n = n.clone();
    let mut len = 0;
    while !n.is_zero() {
        n /= radix.clone();
        len += 1;
    }
    len
}
