//! Budding and debudding.
//!
//! The same rule acts on framing sequences `(m_1,...,m_k)` (the plumbing has
//! framings `-m_i`) and on continued fraction strings:
//! `[a_1,...,a_n] -> [2,a_1,...,a_n+1]` and `[a_1+1,...,a_n,2]`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cfrac::CfString;
use crate::error::{Error, Result};

/// Framings `(-m_1,...,-m_k)` of a minimal linear plumbing, stored as the
/// positive `m_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "CfString", into = "CfString")]
pub struct FramingSequence(CfString);

impl FramingSequence {
    pub fn new(s: CfString) -> Result<Self> {
        s.check_expansion()?;
        Ok(FramingSequence(s))
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

    pub fn reversed(&self) -> Self {
        FramingSequence(self.0.reversed())
    }
}

impl TryFrom<CfString> for FramingSequence {
    type Error = Error;
    fn try_from(s: CfString) -> Result<Self> {
        FramingSequence::new(s)
    }
}

impl From<FramingSequence> for CfString {
    fn from(f: FramingSequence) -> Self {
        f.0
    }
}

impl FromStr for FramingSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FramingSequence::new(s.parse()?)
    }
}

impl fmt::Display for FramingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Prepends 2 and increments the last entry.
pub fn bud_left(s: &CfString) -> Result<CfString> {
    if s.is_empty() {
        return Err(Error::EmptyString);
    }
    let mut v = Vec::with_capacity(s.len() + 1);
    v.push(2);
    v.extend_from_slice(s.entries());
    *v.last_mut().unwrap() += 1;
    Ok(CfString::new(v))
}

/// Increments the first entry and appends 2.
pub fn bud_right(s: &CfString) -> Result<CfString> {
    if s.is_empty() {
        return Err(Error::EmptyString);
    }
    let mut v = s.entries().to_vec();
    v[0] += 1;
    v.push(2);
    Ok(CfString::new(v))
}

/// Every legal debudding: undoing [`bud_left`] needs `a_1 = 2, a_n > 1`, undoing
/// [`bud_right`] needs `a_1 > 1, a_n = 2`. Empty when neither applies or the
/// string is shorter than 2.
pub fn debud(s: &CfString) -> Vec<CfString> {
    let a = s.entries();
    let n = a.len();
    if n < 2 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(2);
    if a[0] == 2 && a[n - 1] > 1 {
        let mut v = a[1..].to_vec();
        *v.last_mut().unwrap() -= 1;
        out.push(CfString::new(v));
    }
    if a[0] > 1 && a[n - 1] == 2 {
        let mut v = a[..n - 1].to_vec();
        v[0] -= 1;
        if !out.contains(&CfString::new(v.clone())) {
            out.push(CfString::new(v));
        }
    }
    out
}

/// Whether `s` is reachable from `base` by zero or more buddings.
pub fn is_budding_of(s: &CfString, base: &CfString) -> bool {
    debudding_path(s, base).is_some()
}

/// A chain `s, ..., base` of successive debuddings, when one exists.
pub fn debudding_path(s: &CfString, base: &CfString) -> Option<Vec<CfString>> {
    if s.len() < base.len() {
        return None;
    }
    let mut parent: HashMap<CfString, Option<CfString>> = HashMap::new();
    parent.insert(s.clone(), None);
    let mut queue = VecDeque::from([s.clone()]);
    while let Some(cur) = queue.pop_front() {
        if &cur == base {
            let mut path = vec![cur.clone()];
            let mut at = cur;
            while let Some(Some(prev)) = parent.get(&at) {
                path.push(prev.clone());
                at = prev.clone();
            }
            path.reverse();
            return Some(path);
        }
        if cur.len() <= base.len() {
            continue;
        }
        for next in debud(&cur) {
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some(cur.clone()));
                queue.push_back(next);
            }
        }
    }
    None
}

/// All buddings of `base` (including `base`) of length at most `max_len`,
/// sorted by length and then lexicographically.
pub fn budding_closure(base: &CfString, max_len: usize) -> Vec<CfString> {
    budding_closure_bounded(base, max_len, i64::MAX)
}

/// [`budding_closure`] restricted to strings whose entries are all at most
/// `max_entry`. Budding never lowers an entry, so the pruning loses nothing.
pub fn budding_closure_bounded(base: &CfString, max_len: usize, max_entry: i64) -> Vec<CfString> {
    let fits = |s: &CfString| s.len() <= max_len && s.entries().iter().all(|&a| a <= max_entry);
    if base.is_empty() || !fits(base) {
        return Vec::new();
    }
    let mut seen: HashSet<CfString> = HashSet::from([base.clone()]);
    let mut frontier = vec![base.clone()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            if s.len() >= max_len {
                continue;
            }
            for b in [bud_left(s), bud_right(s)].into_iter().flatten() {
                if fits(&b) && seen.insert(b.clone()) {
                    next.push(b);
                }
            }
        }
        frontier = next;
    }
    let sorted: BTreeSet<(usize, CfString)> = seen.into_iter().map(|s| (s.len(), s)).collect();
    sorted.into_iter().map(|(_, s)| s).collect()
}

/// Buddings of `(4)`: exactly the linear plumbings that bound rational balls.
pub fn is_one_replaceable(f: &FramingSequence) -> bool {
    is_budding_of(f.as_cf(), &CfString::from([4]))
}
