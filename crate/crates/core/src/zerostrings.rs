//! Admissible continued fractions equal to zero, and the blowup calculus on them.
//!
//! Positions are 1-based throughout, matching how the strings are written.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cfrac::{cf_eval, continuants, CfString};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// An admissible string evaluating to 0. `[0]` is the only one with an entry
/// below 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "CfString", into = "CfString")]
pub struct ZeroString(CfString);

impl ZeroString {
    pub fn new(s: CfString) -> Result<Self> {
        if is_zero_string(s.entries()) {
            Ok(ZeroString(s))
        } else {
            Err(Error::NotZeroString(s.to_string()))
        }
    }

    /// The blowup base `[0]`.
    pub fn base() -> Self {
        ZeroString(CfString::from([0]))
    }

    pub fn as_cf(&self) -> &CfString {
        &self.0
    }

    pub fn entries(&self) -> &[i64] {
        self.0.entries()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ones_count(&self) -> usize {
        ones_count(self.entries())
    }

    pub fn ones_positions(&self) -> Vec<usize> {
        ones_positions(self.entries())
    }

    pub fn reversed(&self) -> ZeroString {
        ZeroString(self.0.reversed())
    }
}

impl TryFrom<CfString> for ZeroString {
    type Error = Error;
    fn try_from(s: CfString) -> Result<Self> {
        ZeroString::new(s)
    }
}

impl From<ZeroString> for CfString {
    fn from(z: ZeroString) -> Self {
        z.0
    }
}

impl fmt::Display for ZeroString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// True when `entries` is `[0]`, or has every entry `>= 1`, is admissible, and
/// evaluates to 0.
pub fn is_zero_string(entries: &[i64]) -> bool {
    match entries {
        [] => false,
        [a] => *a == 0,
        _ if entries.iter().any(|&a| a < 1) => false,
        // every proper suffix must evaluate to a positive value
        _ => match continuants(entries) {
            Ok(k) => k[0] == 0 && k[1..entries.len()].iter().all(|&x| x > 0),
            Err(_) => {
                cf_eval(&CfString::from(entries)).is_ok_and(|r| r.is_zero())
                    && (1..entries.len()).all(|j| {
                        cf_eval(&CfString::from(&entries[j..])).is_ok_and(|r| r.is_positive())
                    })
            }
        },
    }
}

pub fn ones_count(entries: &[i64]) -> usize {
    entries.iter().filter(|&&a| a == 1).count()
}

/// 1-based positions of the entries equal to 1.
pub fn ones_positions(entries: &[i64]) -> Vec<usize> {
    entries
        .iter()
        .enumerate()
        .filter(|(_, &a)| a == 1)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Inserts a 1 into gap `g` (0 = before the first entry, `n` = after the last)
/// and increments whichever neighbors exist.
fn blowup_gap(entries: &[i64], g: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(entries.len() + 1);
    out.extend_from_slice(&entries[..g]);
    if g > 0 {
        out[g - 1] += 1;
    }
    out.push(1);
    out.extend_from_slice(&entries[g..]);
    if g < entries.len() {
        out[g + 1] += 1;
    }
    out
}

fn check_position(s: &ZeroString, i: usize) -> Result<()> {
    if i == 0 || i > s.len() {
        Err(Error::PositionOutOfRange {
            position: i,
            len: s.len(),
        })
    } else {
        Ok(())
    }
}

/// `[a_1,...,a_{i-1}+1, 1, a_i+1,...,a_n]`; at `i = 1` only `a_1` grows.
pub fn blowup_before(s: &ZeroString, i: usize) -> Result<ZeroString> {
    check_position(s, i)?;
    Ok(ZeroString(CfString::new(blowup_gap(s.entries(), i - 1))))
}

/// `[a_1,...,a_i+1, 1, a_{i+1}+1,...,a_n]`; at `i = n` only `a_n` grows.
pub fn blowup_after(s: &ZeroString, i: usize) -> Result<ZeroString> {
    check_position(s, i)?;
    Ok(ZeroString(CfString::new(blowup_gap(s.entries(), i))))
}

/// Every distinct one-step blowup, in lexicographic order.
pub fn blowups(s: &ZeroString) -> Vec<ZeroString> {
    let set: BTreeSet<Vec<i64>> = (0..=s.len()).map(|g| blowup_gap(s.entries(), g)).collect();
    set.into_iter()
        .map(|v| ZeroString(CfString::new(v)))
        .collect()
}

/// Deletes the 1 at position `i` and decrements its neighbors.
pub fn blowdown_at(s: &ZeroString, i: usize) -> Result<ZeroString> {
    check_position(s, i)?;
    let a = s.entries();
    if a[i - 1] != 1 {
        return Err(Error::NotAOne {
            position: i,
            value: a[i - 1],
        });
    }
    let mut out = a.to_vec();
    out.remove(i - 1);
    if i >= 2 {
        out[i - 2] -= 1;
    }
    if i - 1 < out.len() {
        out[i - 1] -= 1;
    }
    ZeroString::new(CfString::new(out))
}

/// All zero strings of length `n`: the blowup closure of `[0]` at depth `n - 1`,
/// deduplicated and sorted lexicographically.
pub fn enumerate_zero_strings(n: usize) -> Vec<ZeroString> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0]]);
    for _ in 1..n {
        level = level
            .iter()
            .flat_map(|s| (0..=s.len()).map(move |g| blowup_gap(s, g)))
            .collect();
    }
    level
        .into_iter()
        .map(|v| ZeroString(CfString::new(v)))
        .collect()
}

/// Which length-at-most-3 zero string a zero string blows down to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BaseType {
    /// `[0]` itself.
    SingleZero,
    /// `[1,1]` itself.
    OneOne,
    /// A blowup of `[1,2,1]` (possibly also of `[2,1,2]`).
    BlowupOf121,
    /// A blowup of `[2,1,2]` that is not a blowup of `[1,2,1]`.
    BlowupOf212Only,
}

/// Classifies by exhaustive blowdown search (every entry equal to 1 is tried).
pub fn base_type(s: &ZeroString) -> BaseType {
    match s.len() {
        1 => BaseType::SingleZero,
        2 => BaseType::OneOne,
        _ => {
            let mut memo = HashMap::new();
            if blows_down_to_121(s.entries(), &mut memo) {
                BaseType::BlowupOf121
            } else {
                BaseType::BlowupOf212Only
            }
        }
    }
}

fn blows_down_to_121(a: &[i64], memo: &mut HashMap<Vec<i64>, bool>) -> bool {
    if a.len() == 3 {
        return a == [1, 2, 1];
    }
    if let Some(&hit) = memo.get(a) {
        return hit;
    }
    let n = a.len();
    let hit = (0..n).filter(|&i| a[i] == 1).any(|i| {
        let mut b = a.to_vec();
        b.remove(i);
        if i > 0 {
            b[i - 1] -= 1;
        }
        if i < b.len() {
            b[i] -= 1;
        }
        blows_down_to_121(&b, memo)
    });
    memo.insert(a.to_vec(), hit);
    hit
}

/// The value of `s` with its last entry incremented. Defined for blowups of
/// `[2,1,2]` that are not blowups of `[1,2,1]`, where it is always 1/2.
pub fn plus_one_tail_value(s: &ZeroString) -> Result<Rational> {
    let ty = base_type(s);
    if ty != BaseType::BlowupOf212Only {
        return Err(Error::Precondition(format!(
            "[{s}] has base type {ty:?}, expected BlowupOf212Only"
        )));
    }
    let mut v = s.entries().to_vec();
    *v.last_mut().expect("zero strings are nonempty") += 1;
    cf_eval(&CfString::new(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZeroString {
        ZeroString::new(CfString::from(v)).unwrap()
    }

    #[test]
    fn negative_partial_value_is_not_a_zero_string() {
        let v = [2, 1, 1, 1, 1, 2];
        assert!(cf_eval(&CfString::from(v)).unwrap().is_zero());
        assert!(!is_zero_string(&v));
    }

    #[test]
    fn constructor_validates() {
        assert!(ZeroString::new(CfString::from([2, 1, 2])).is_ok());
        assert!(ZeroString::new(CfString::from([0])).is_ok());
        assert!(ZeroString::new(CfString::from([2, 1, 1])).is_err());
        assert!(ZeroString::new(CfString::from([2, 1, 3])).is_err());
        assert!(ZeroString::new(CfString::from([0, 0])).is_err());
        assert!(ZeroString::new(CfString::from([])).is_err());
    }

    #[test]
    fn blowup_examples() {
        assert_eq!(blowup_before(&ZeroString::base(), 1).unwrap(), z(&[1, 1]));
        assert_eq!(blowup_after(&ZeroString::base(), 1).unwrap(), z(&[1, 1]));
        assert_eq!(blowup_before(&z(&[1, 1]), 2).unwrap(), z(&[2, 1, 2]));
        assert_eq!(blowup_before(&z(&[1, 1]), 1).unwrap(), z(&[1, 2, 1]));
        assert_eq!(blowup_after(&z(&[2, 1, 2]), 2).unwrap(), z(&[2, 2, 1, 3]));
        assert_eq!(blowup_before(&z(&[2, 1, 2]), 2).unwrap(), z(&[3, 1, 2, 2]));
        assert_eq!(blowup_after(&z(&[1, 1]), 1).unwrap(), z(&[2, 1, 2]));
        assert!(matches!(
            blowup_after(&z(&[1, 1]), 3),
            Err(Error::PositionOutOfRange {
                position: 3,
                len: 2
            })
        ));
        assert!(blowup_before(&z(&[1, 1]), 0).is_err());
    }

    #[test]
    fn blowups_of_212_are_the_two_buddings() {
        let got: Vec<_> = blowups(&z(&[2, 1, 2]))
            .into_iter()
            .filter(|s| s.ones_count() == 1)
            .collect();
        assert_eq!(got, vec![z(&[2, 2, 1, 3]), z(&[3, 1, 2, 2])]);
    }

    #[test]
    fn blowdown_examples() {
        assert_eq!(blowdown_at(&z(&[2, 2, 1, 3]), 3).unwrap(), z(&[2, 1, 2]));
        assert_eq!(blowdown_at(&z(&[1, 3, 1, 2]), 3).unwrap(), z(&[1, 2, 1]));
        assert_eq!(blowdown_at(&z(&[1, 1]), 1).unwrap(), ZeroString::base());
        assert_eq!(blowdown_at(&z(&[1, 1]), 2).unwrap(), ZeroString::base());
        assert!(matches!(
            blowdown_at(&z(&[2, 2, 1, 3]), 1),
            Err(Error::NotAOne {
                position: 1,
                value: 2
            })
        ));
        assert!(blowdown_at(&ZeroString::base(), 1).is_err());
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_zero_strings(1), vec![ZeroString::base()]);
        assert_eq!(enumerate_zero_strings(2), vec![z(&[1, 1])]);
        assert_eq!(
            enumerate_zero_strings(3),
            vec![z(&[1, 2, 1]), z(&[2, 1, 2])]
        );
        assert!(enumerate_zero_strings(0).is_empty());
    }

    #[test]
    fn ones() {
        assert_eq!(z(&[3, 1, 3, 1, 3]).ones_count(), 2);
        assert_eq!(z(&[3, 1, 3, 1, 3]).ones_positions(), vec![2, 4]);
        assert_eq!(z(&[2, 1, 2]).ones_count(), 1);
        assert_eq!(z(&[1, 2, 2, 2, 1]).ones_count(), 2);
    }

    #[test]
    fn base_type_examples() {
        assert_eq!(base_type(&ZeroString::base()), BaseType::SingleZero);
        assert_eq!(base_type(&z(&[1, 1])), BaseType::OneOne);
        assert_eq!(base_type(&z(&[1, 2, 1])), BaseType::BlowupOf121);
        assert_eq!(base_type(&z(&[2, 1, 2])), BaseType::BlowupOf212Only);
        assert_eq!(base_type(&z(&[1, 3, 1, 2])), BaseType::BlowupOf121);
        assert_eq!(base_type(&z(&[3, 1, 3, 1, 3])), BaseType::BlowupOf212Only);
        assert_eq!(base_type(&z(&[2, 2, 1, 3])), BaseType::BlowupOf212Only);
    }

    #[test]
    fn plus_one_tail_examples() {
        let half = Rational::new(1, 2).unwrap();
        assert_eq!(plus_one_tail_value(&z(&[2, 1, 2])).unwrap(), half);
        assert_eq!(plus_one_tail_value(&z(&[3, 1, 3, 1, 3])).unwrap(), half);
        assert_eq!(plus_one_tail_value(&z(&[2, 2, 1, 3])).unwrap(), half);
        assert!(matches!(
            plus_one_tail_value(&z(&[1, 2, 1])),
            Err(Error::Precondition(_))
        ));
    }
}
