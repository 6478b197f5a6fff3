//! Hirzebruch-Jung continued fractions `[a_1,...,a_n] = a_1 - 1/(a_2 - 1/(... - 1/a_n))`.
//!
//! Evaluation is exact. [`cf_eval`] walks the partial values right to left as
//! rationals; [`continuants`] computes the same thing with machine integers and
//! is what the hot enumeration loops use.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A finite integer sequence read as a Hirzebruch-Jung continued fraction.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CfString(Vec<i64>);

impl CfString {
    pub fn new(entries: Vec<i64>) -> Self {
        CfString(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every entry is at least 2 (and the string is nonempty).
    pub fn is_expansion(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|&a| a >= 2)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn reversed(&self) -> CfString {
        CfString(self.0.iter().rev().copied().collect())
    }

    /// Fails with the first offending position when some entry is below 2.
    pub fn check_expansion(&self) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::EmptyString);
        }
        match self.0.iter().position(|&a| a < 2) {
            Some(i) => Err(Error::NotExpansion {
                position: i + 1,
                value: self.0[i],
            }),
            None => Ok(()),
        }
    }

    /// Entries joined by `sep`, e.g. `2-4-4-2`.
    pub fn join(&self, sep: &str) -> String {
        self.0
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl From<Vec<i64>> for CfString {
    fn from(v: Vec<i64>) -> Self {
        CfString(v)
    }
}

impl From<&[i64]> for CfString {
    fn from(v: &[i64]) -> Self {
        CfString(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for CfString {
    fn from(v: [i64; N]) -> Self {
        CfString(v.to_vec())
    }
}

impl fmt::Display for CfString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.join(","))
    }
}

/// Parses `2,4,4,2`, `[2,4,4,2]`, `2 4 4 2` or `2-4-4-2` (all entries nonnegative
/// in the dash form).
impl FromStr for CfString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        if body.trim().is_empty() {
            return Ok(CfString(Vec::new()));
        }
        if let Ok(single) = body.trim().parse::<i64>() {
            return Ok(CfString(vec![single]));
        }
        let sep: &[char] = if body.contains(',') || body.contains(' ') {
            &[',', ' ']
        } else {
            &['-']
        };
        body.split(sep)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Malformed(format!("not an integer: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(CfString)
    }
}

/// Evaluates the continued fraction exactly, right to left:
/// `r_n = a_n`, `r_i = a_i - 1/r_{i+1}`.
///
/// Any integer sequence is accepted; the result is `NotAdmissible` as soon as
/// some `r_{i+1}` with `i >= 1` is zero.
pub fn cf_eval(s: &CfString) -> Result<Rational> {
    let (&last, rest) = s.0.split_last().ok_or(Error::EmptyString)?;
    let mut r = Rational::from(last);
    for (i, &a) in rest.iter().enumerate().rev() {
        // r currently holds r_{i+2} in 1-based terms
        let inv = r.recip().ok_or(Error::NotAdmissible { index: i + 2 })?;
        r = &Rational::from(a) - &inv;
    }
    Ok(r)
}

/// Suffix continuants `K_1, ..., K_{n+1}` with `K_{n+1} = 1`, `K_{n+2} = 0` and
/// `K_i = a_i K_{i+1} - K_{i+2}`. The partial value `r_i` equals `K_i / K_{i+1}`.
pub fn continuants(entries: &[i64]) -> Result<Vec<i128>> {
    let n = entries.len();
    let mut k = vec![0i128; n + 2];
    k[n] = 1;
    for i in (0..n).rev() {
        k[i] = (entries[i] as i128)
            .checked_mul(k[i + 1])
            .and_then(|x| x.checked_sub(k[i + 2]))
            .ok_or_else(|| Error::Overflow(format!("continuant of {entries:?}")))?;
    }
    k.truncate(n + 1);
    Ok(k)
}

/// Machine-integer evaluation: `(numerator, denominator)` in lowest terms with a
/// positive denominator. Agrees with [`cf_eval`] whenever nothing overflows.
pub fn eval_i128(entries: &[i64]) -> Result<(i128, i128)> {
    if entries.is_empty() {
        return Err(Error::EmptyString);
    }
    let k = continuants(entries)?;
    if let Some(j) = (1..entries.len()).find(|&j| k[j] == 0) {
        return Err(Error::NotAdmissible { index: j + 1 });
    }
    // consecutive continuants are coprime, so only the sign needs fixing
    let (num, den) = (k[0], k[1]);
    Ok(if den < 0 { (-num, -den) } else { (num, den) })
}

/// The unique expansion with all entries `>= 2` of a rational `p/q > 1`.
///
/// Uses the ceiling recursion `a = ceil(p/q)`, continuing on `q/(aq - p)`.
pub fn cf_expand(r: &Rational) -> Result<CfString> {
    let mut p = r.numer().clone();
    let mut q = r.denom().clone();
    if p <= q {
        return Err(Error::ValueNotAboveOne(r.to_string()));
    }
    let mut out = Vec::new();
    loop {
        let a = p.div_ceil(&q);
        let rem = &a * &q - &p;
        out.push(
            a.to_i64()
                .ok_or_else(|| Error::Overflow(format!("expansion of {r}")))?,
        );
        if rem.is_positive() {
            p = std::mem::replace(&mut q, rem);
        } else {
            break;
        }
    }
    Ok(CfString(out))
}

/// [`cf_expand`] for machine-size fractions; `p > q >= 1`, coprime.
pub fn expand_fraction(p: i64, q: i64) -> Result<CfString> {
    if q < 1 || p <= q {
        return Err(Error::ValueNotAboveOne(format!("{p}/{q}")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { q, p });
    }
    let (mut p, mut q) = (p, q);
    let mut out = Vec::new();
    loop {
        let a = Integer::div_ceil(&p, &q);
        out.push(a);
        let rem = a * q - p;
        if rem == 0 {
            break;
        }
        p = q;
        q = rem;
    }
    Ok(CfString(out))
}

/// The dual expansion: if `s` expands `p/q`, the result expands `p/(p-q)`.
///
/// Direct string rewriting, no evaluation:
/// 1. a leading entry `a != 2` emits `a - 2` twos and becomes 2;
/// 2. a leading run of `k` twos emits `k + 2`, is removed, and the next entry
///    drops by one; a string made only of `n` twos emits `n + 1` and stops;
/// 3. repeat on what is left.
pub fn cf_dual(s: &CfString) -> Result<CfString> {
    s.check_expansion()?;
    let mut seq = s.0.clone();
    let mut out = Vec::new();
    loop {
        if seq[0] != 2 {
            out.extend(std::iter::repeat_n(2, (seq[0] - 2) as usize));
            seq[0] = 2;
        }
        let run = seq.iter().take_while(|&&a| a == 2).count();
        if run == seq.len() {
            out.push(run as i64 + 1);
            break;
        }
        out.push(run as i64 + 2);
        seq.drain(..run);
        seq[0] -= 1;
    }
    Ok(CfString(out))
}

/// Reverses the sequence. If `s` evaluates to `p/q` the result evaluates to
/// `p/q'` with `q q' = 1 (mod p)`.
pub fn cf_reverse(s: &CfString) -> CfString {
    s.reversed()
}

/// The inverse of `q` modulo `p`, normalized to `1 <= q' < p`.
pub fn mod_inverse(q: i64, p: i64) -> Result<i64> {
    if p < 2 || q <= 0 || q >= p {
        return Err(Error::Precondition(format!(
            "need 0 < q < p, got q={q}, p={p}"
        )));
    }
    let e = (q as i128).extended_gcd(&(p as i128));
    if e.gcd != 1 {
        return Err(Error::NotCoprime { q, p });
    }
    Ok(e.x.rem_euclid(p as i128) as i64)
}

/// The expansions of `p/q` and `p/(p-q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualPair {
    pub left: CfString,
    pub right: CfString,
    pub p: i64,
    pub q: i64,
}

impl DualPair {
    pub fn from_fraction(p: i64, q: i64) -> Result<Self> {
        let left = expand_fraction(p, q)?;
        let right = cf_dual(&left)?;
        Ok(DualPair { left, right, p, q })
    }

    pub fn from_expansion(left: CfString) -> Result<Self> {
        left.check_expansion()?;
        let value = cf_eval(&left)?;
        let (p, q) = value
            .to_i64_pair()
            .ok_or_else(|| Error::Overflow(format!("value of [{left}]")))?;
        let right = cf_dual(&left)?;
        Ok(DualPair { left, right, p, q })
    }
}

/// Point diagram: row `i` holds `a_i - 1` dots and starts in
/// the column where row `i-1` ended. Column heights plus one read off the dual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointDiagram {
    /// `(row, column)` of every dot, rows in input order.
    pub dots: Vec<(usize, usize)>,
    pub rows: usize,
    pub columns: usize,
}

impl PointDiagram {
    pub fn new(s: &CfString) -> Result<Self> {
        s.check_expansion()?;
        let mut dots = Vec::new();
        let mut col = 0usize;
        for (row, &a) in s.0.iter().enumerate() {
            for j in 0..(a - 1) as usize {
                dots.push((row, col + j));
            }
            col += (a - 2) as usize;
        }
        Ok(PointDiagram {
            dots,
            rows: s.len(),
            columns: col + 1,
        })
    }

    /// Reads the diagram by columns.
    pub fn dual(&self) -> CfString {
        let mut heights = vec![0i64; self.columns];
        for &(_, c) in &self.dots {
            heights[c] += 1;
        }
        CfString(heights.into_iter().map(|h| h + 1).collect())
    }
}

/// All sequences of length `1..=max_len` with entries in `2..=max_entry`.
pub fn expansion_strings(max_len: usize, max_entry: i64) -> impl Iterator<Item = Vec<i64>> {
    (1..=max_len).flat_map(move |len| {
        let radix = (max_entry - 1).max(0) as u64;
        let total = radix.checked_pow(len as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut idx| {
            let mut v = vec![2i64; len];
            for slot in v.iter_mut().rev() {
                *slot = 2 + (idx % radix) as i64;
                idx /= radix;
            }
            v
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(v: &[i64]) -> CfString {
        CfString::from(v)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(cf_eval(&cf(&[2, 4, 4, 2])).unwrap(), q(45, 26));
        assert_eq!(cf_eval(&cf(&[2, 1, 3])).unwrap(), q(1, 2));
        assert_eq!(cf_eval(&cf(&[2, 1, 2])).unwrap(), q(0, 1));
        assert_eq!(cf_eval(&cf(&[1, 1])).unwrap(), q(0, 1));
        for m in -5..=5 {
            assert_eq!(cf_eval(&cf(&[m])).unwrap(), Rational::from(m));
        }
    }

    #[test]
    fn eval_rejects_vanishing_denominators() {
        // [2,1,1]: r_3 = 1, r_2 = 0
        assert_eq!(
            cf_eval(&cf(&[2, 1, 1])),
            Err(Error::NotAdmissible { index: 2 })
        );
        assert_eq!(
            cf_eval(&cf(&[5, 0])),
            Err(Error::NotAdmissible { index: 2 })
        );
        assert_eq!(cf_eval(&cf(&[])), Err(Error::EmptyString));
    }

    #[test]
    fn eval_handles_negative_entries() {
        // -1 - 1/(-1) = 0
        assert_eq!(cf_eval(&cf(&[-1, -1])).unwrap(), q(0, 1));
        assert_eq!(cf_eval(&cf(&[3, -2])).unwrap(), q(7, 2));
    }

    #[test]
    fn integer_path_agrees_with_rational_path() {
        for s in [
            vec![2, 4, 4, 2],
            vec![3, 2, 5, 2, 2, 6],
            vec![2, 1, 3],
            vec![1, 1],
            vec![3, 1, 3, 1, 3],
            vec![-3, 7, 1, 2],
        ] {
            let r = cf_eval(&cf(&s)).unwrap();
            let (n, d) = eval_i128(&s).unwrap();
            assert_eq!(r, q(n as i64, d as i64), "{s:?}");
        }
        assert_eq!(
            eval_i128(&[2, 1, 1]),
            Err(Error::NotAdmissible { index: 2 })
        );
    }

    #[test]
    fn expand_examples() {
        assert_eq!(cf_expand(&q(45, 26)).unwrap(), cf(&[2, 4, 4, 2]));
        assert_eq!(cf_expand(&q(297, 122)).unwrap(), cf(&[3, 2, 5, 2, 2, 6]));
        assert_eq!(cf_expand(&q(2, 1)).unwrap(), cf(&[2]));
        assert!(matches!(
            cf_expand(&q(1, 1)),
            Err(Error::ValueNotAboveOne(_))
        ));
        assert!(matches!(
            cf_expand(&q(3, 4)),
            Err(Error::ValueNotAboveOne(_))
        ));
        assert_eq!(expand_fraction(45, 26).unwrap(), cf(&[2, 4, 4, 2]));
        assert!(matches!(
            expand_fraction(6, 4),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(
            cf_dual(&cf(&[3, 2, 5, 2, 2, 6])).unwrap(),
            cf(&[2, 4, 2, 2, 5, 2, 2, 2, 2])
        );
        assert_eq!(cf_dual(&cf(&[3, 2, 3, 2, 3])).unwrap(), cf(&[2, 4, 4, 2]));
        assert_eq!(cf_dual(&cf(&[2, 3, 2])).unwrap(), cf(&[3, 3]));
        for m in 2..12 {
            assert_eq!(
                cf_dual(&cf(&[m])).unwrap(),
                CfString::new(vec![2; m as usize - 1])
            );
        }
        assert!(matches!(
            cf_dual(&cf(&[3, 1])),
            Err(Error::NotExpansion {
                position: 2,
                value: 1
            })
        ));
        assert_eq!(cf_dual(&cf(&[])), Err(Error::EmptyString));
    }

    #[test]
    fn dual_value_is_p_over_p_minus_q() {
        let d = cf_dual(&cf(&[3, 2, 5, 2, 2, 6])).unwrap();
        assert_eq!(cf_eval(&d).unwrap(), q(297, 175));
    }

    #[test]
    fn point_diagram_reads_the_dual() {
        let s = cf(&[3, 2, 5, 2, 2, 6]);
        let d = PointDiagram::new(&s).unwrap();
        assert_eq!(d.rows, 6);
        assert_eq!(d.dots.len() as i64, s.sum() - s.len() as i64);
        assert_eq!(d.dual(), cf_dual(&s).unwrap());
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(cf_reverse(&cf(&[2, 4, 4, 2])), cf(&[2, 4, 4, 2]));
        assert_eq!(
            cf_reverse(&cf(&[3, 2, 5, 2, 2, 6])),
            cf(&[6, 2, 2, 5, 2, 3])
        );
        assert_eq!(cf_reverse(&cf(&[7])), cf(&[7]));
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(26, 45).unwrap(), 26);
        assert_eq!(mod_inverse(1, 17).unwrap(), 1);
        assert!(matches!(mod_inverse(6, 45), Err(Error::NotCoprime { .. })));
        assert!(mod_inverse(0, 5).is_err());
        assert!(mod_inverse(5, 5).is_err());
    }

    #[test]
    fn mod_inverse_matches_brute_scan() {
        for p in 2..=200i64 {
            for q in 1..p {
                let brute = (1..p).find(|x| (q * x) % p == 1);
                match brute {
                    Some(x) => assert_eq!(mod_inverse(q, p).unwrap(), x, "q={q} p={p}"),
                    None => assert!(mod_inverse(q, p).is_err()),
                }
            }
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!("2,4,4,2".parse::<CfString>().unwrap(), cf(&[2, 4, 4, 2]));
        assert_eq!("[3, 1, 3]".parse::<CfString>().unwrap(), cf(&[3, 1, 3]));
        assert_eq!("2-4-4-2".parse::<CfString>().unwrap(), cf(&[2, 4, 4, 2]));
        assert_eq!("-3,2".parse::<CfString>().unwrap(), cf(&[-3, 2]));
        assert_eq!("-3".parse::<CfString>().unwrap(), cf(&[-3]));
        assert!("2,x".parse::<CfString>().is_err());
    }
}
