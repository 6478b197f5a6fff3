//! Minimal symplectic fillings of lens spaces, k-replaceability of linear
//! plumbings, and the classification of 2-replaceable ones.
//!
//! For `L(p,q)` let `a' = [a'_1,...,a'_n]` expand `p/(p-q)`. Fillings are indexed
//! by zero strings `a` with `a_i <= a'_i`, and the filling for `a` has Euler
//! characteristic `sum(a'_i - a_i)`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::budding::{budding_closure_bounded, FramingSequence};
use crate::cfrac::{cf_dual, eval_i128, expand_fraction, expansion_strings, CfString};
use crate::error::{Error, Result};
use crate::zerostrings::ZeroString;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LensSpace {
    p: i64,
    q: i64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q <= 0 || q >= p || p.gcd(&q) != 1 {
            return Err(Error::InvalidLensSpace { p, q });
        }
        Ok(LensSpace { p, q })
    }

    /// Boundary of the linear plumbing with framings `-m_i`.
    pub fn from_plumbing(f: &FramingSequence) -> Result<Self> {
        let (p, q) = eval_i128(f.entries())?;
        let p = i64::try_from(p).map_err(|_| Error::Overflow(f.to_string()))?;
        let q = i64::try_from(q).map_err(|_| Error::Overflow(f.to_string()))?;
        LensSpace::new(p, q)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Expansion of `p/q`: the framings of the linear plumbing it bounds.
    pub fn plumbing_string(&self) -> CfString {
        expand_fraction(self.p, self.q).expect("validated lens space")
    }

    /// Expansion of `p/(p-q)`.
    pub fn dual_string(&self) -> CfString {
        expand_fraction(self.p, self.p - self.q).expect("validated lens space")
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Filling {
    pub lens: LensSpace,
    pub dual_string: CfString,
    pub zero_string: ZeroString,
    pub euler: i64,
}

impl Filling {
    /// Entrywise `a'_i - a_i`.
    pub fn deficits(&self) -> Vec<i64> {
        self.dual_string
            .entries()
            .iter()
            .zip(self.zero_string.entries())
            .map(|(d, z)| d - z)
            .collect()
    }
}

/// Depth-first search for zero strings under `dual`, right to left over the
/// suffix continuants `k_j = a_j k_{j+1} - k_{j+2}`.
///
/// For a zero string of length `n >= 2`, `k_1 = 0` and `k_j > 0` otherwise. Moreover
/// `k_j` is the continuant of the first `j-2` entries, which caps it by the
/// product of the corresponding dual entries.
struct DominatedSearch<'a> {
    dual: &'a [i64],
    prefix_product: Vec<i128>,
    prefix_room: Vec<i64>,
    exact: bool,
    first_only: bool,
    dead: HashSet<(usize, i128, i128, i64)>,
    current: Vec<i64>,
    found: Vec<Vec<i64>>,
}

impl<'a> DominatedSearch<'a> {
    fn new(dual: &'a [i64], exact: bool, first_only: bool) -> Self {
        let mut prefix_product = vec![1i128];
        let mut prefix_room = vec![0i64];
        for &a in dual {
            let last = *prefix_product.last().unwrap();
            prefix_product.push(last.saturating_mul(a as i128));
            prefix_room.push(prefix_room.last().unwrap() + (a - 1));
        }
        DominatedSearch {
            dual,
            prefix_product,
            prefix_room,
            exact,
            first_only,
            dead: HashSet::new(),
            current: vec![0; dual.len()],
            found: Vec::new(),
        }
    }

    fn run(&mut self, budget: i64) {
        let n = self.dual.len();
        self.visit(n - 1, 1, 0, budget);
    }

    fn done(&self) -> bool {
        self.first_only && !self.found.is_empty()
    }

    // `j` is the 0-based position about to be fixed; `k1 = k_{j+1}`, `k2 = k_{j+2}`.
    fn visit(&mut self, j: usize, k1: i128, k2: i128, budget: i64) -> bool {
        if j == 0 {
            if k2 % k1 != 0 {
                return false;
            }
            let a = k2 / k1;
            let d = self.dual[0] as i128 - a;
            let ok = a >= 1
                && d >= 0
                && if self.exact {
                    d == budget as i128
                } else {
                    d <= budget as i128
                };
            if ok {
                self.current[0] = a as i64;
                self.found.push(self.current.clone());
            }
            return ok;
        }
        let key = (j, k1, k2, budget);
        if self.dead.contains(&key) {
            return false;
        }
        let top = self.dual[j];
        let mut any = false;
        for d in 0..=budget.min(top - 1) {
            if self.exact && budget - d > self.prefix_room[j] {
                continue;
            }
            let a = (top - d) as i128;
            let Some(k0) = a.checked_mul(k1).and_then(|x| x.checked_sub(k2)) else {
                continue;
            };
            if k0 <= 0 || k0 > self.prefix_product[j - 1] || k1 > self.dual[j - 1] as i128 * k0 {
                continue;
            }
            self.current[j] = a as i64;
            if self.visit(j - 1, k0, k1, budget - d) {
                any = true;
            }
            if self.done() {
                return true;
            }
        }
        if !any {
            self.dead.insert(key);
        }
        any
    }
}

/// Zero strings dominated by `dual` with total deficit at most `budget`
/// (exactly `budget` when `exact`). The length-1 case is the string `[0]`.
pub fn dominated_zero_strings(dual: &CfString, budget: i64, exact: bool) -> Vec<ZeroString> {
    search(dual, budget, exact, false)
}

fn search(dual: &CfString, budget: i64, exact: bool, first_only: bool) -> Vec<ZeroString> {
    let a = dual.entries();
    if a.is_empty() || budget < 0 {
        return Vec::new();
    }
    if a.len() == 1 {
        let d = a[0];
        let ok = if exact { d == budget } else { d <= budget };
        return if ok {
            vec![ZeroString::base()]
        } else {
            Vec::new()
        };
    }
    let mut s = DominatedSearch::new(a, exact, first_only);
    s.run(budget);
    let mut out: Vec<ZeroString> = s
        .found
        .into_iter()
        .map(|v| ZeroString::new(CfString::new(v)).expect("search yields zero strings"))
        .collect();
    out.sort();
    out
}

/// Whether some dominated zero string has total deficit exactly `k`.
fn has_filling_with_euler(dual: &CfString, k: i64) -> bool {
    !search(dual, k, true, true).is_empty()
}

/// Every minimal filling, sorted by Euler characteristic then zero string.
pub fn fillings(lens: &LensSpace) -> Vec<Filling> {
    let dual = lens.dual_string();
    let n = dual.len() as i64;
    // a zero string of length n >= 2 has entry sum at least 2n - 2
    let budget = if n == 1 {
        dual.sum()
    } else {
        dual.sum() - (2 * n - 2)
    };
    let mut out: Vec<Filling> = dominated_zero_strings(&dual, budget, false)
        .into_iter()
        .map(|z| {
            let euler = dual.sum() - z.entries().iter().sum::<i64>();
            Filling {
                lens: *lens,
                dual_string: dual.clone(),
                zero_string: z,
                euler,
            }
        })
        .collect();
    out.sort_by(|x, y| (x.euler, &x.zero_string).cmp(&(y.euler, &y.zero_string)));
    out
}

/// The fillings of Euler characteristic exactly `k`, sorted by zero string.
pub fn fillings_with_euler(lens: &LensSpace, k: i64) -> Vec<Filling> {
    let dual = lens.dual_string();
    dominated_zero_strings(&dual, k, true)
        .into_iter()
        .map(|z| Filling {
            lens: *lens,
            dual_string: dual.clone(),
            zero_string: z,
            euler: k,
        })
        .collect()
}

/// Smallest Euler characteristic of a minimal filling.
pub fn min_filling_euler(lens: &LensSpace) -> i64 {
    let dual = lens.dual_string();
    let n = dual.len() as i64;
    if n == 1 {
        return dual.sum();
    }
    // entry sums of zero strings of length n >= 2 lie in [2n-2, 3n-4]
    let lower = (dual.sum() - (3 * n - 4)).max(1);
    let upper = dual.sum() - (2 * n - 2);
    (lower..=upper)
        .find(|&k| has_filling_with_euler(&dual, k))
        .expect("the plumbing itself is a filling")
}

/// Whether the boundary of the plumbing `f` has a minimal filling with Euler
/// characteristic `k`.
pub fn is_k_replaceable(f: &FramingSequence, k: i64) -> bool {
    let dual = cf_dual(f.as_cf()).expect("framing sequences are expansions");
    has_filling_with_euler(&dual, k)
}

/// Whether `L(p,q)` has `p = n^2`, `q = nm - 1` for coprime `n, m`.
pub fn casson_harer_predicate(lens: &LensSpace) -> bool {
    let n = lens.p.isqrt();
    if n * n != lens.p || (lens.q + 1) % n != 0 {
        return false;
    }
    let m = (lens.q + 1) / n;
    m.gcd(&n) == 1
}

/// How an Euler characteristic 2 filling sits under the dual string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum WitnessForm {
    /// One bump on a 1-entry, one on another entry.
    OneAndOther = 1,
    /// Both bumps on the only 1-entry.
    Double = 2,
    /// One bump on each of two 1-entries.
    TwoOnes = 3,
}

impl WitnessForm {
    pub fn number(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoWitness {
    pub zero_string: ZeroString,
    /// 1-based positions receiving a bump; a double bump is listed twice.
    pub bumps: Vec<usize>,
    pub form: WitnessForm,
}

fn classify(z: &ZeroString, deficits: &[i64]) -> Result<TwoWitness> {
    let mut bumps = Vec::new();
    for (i, &d) in deficits.iter().enumerate() {
        for _ in 0..d {
            bumps.push(i + 1);
        }
    }
    let is_one = |pos: usize| z.entries()[pos - 1] == 1;
    let form = match bumps.as_slice() {
        // [0] with a single entry bumped twice
        [i, j] if i == j && z.len() == 1 => WitnessForm::Double,
        [i, j] if i == j && is_one(*i) && z.ones_count() == 1 => WitnessForm::Double,
        [i, j] if i != j && is_one(*i) && is_one(*j) => WitnessForm::TwoOnes,
        [i, j] if i != j && (is_one(*i) ^ is_one(*j)) => WitnessForm::OneAndOther,
        _ => {
            return Err(Error::PatternMismatch(format!(
                "euler 2 filling {z} with bumps {bumps:?} fits no form"
            )))
        }
    };
    Ok(TwoWitness {
        zero_string: z.clone(),
        bumps,
        form,
    })
}

/// Every Euler characteristic 2 filling together with its form.
pub fn two_replaceable_witnesses(lens: &LensSpace) -> Result<Vec<TwoWitness>> {
    let dual = lens.dual_string();
    dominated_zero_strings(&dual, 2, true)
        .into_iter()
        .map(|z| {
            let deficits: Vec<i64> = dual
                .entries()
                .iter()
                .zip(z.entries())
                .map(|(d, a)| d - a)
                .collect();
            classify(&z, &deficits)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyTag {
    Trivial,
    A,
    B,
    C,
    D,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyTag::Trivial => "trivial",
            FamilyTag::A => "a",
            FamilyTag::B => "b",
            FamilyTag::C => "c",
            FamilyTag::D => "d",
        };
        f.write_str(s)
    }
}

/// One generator of the classification: a base plumbing and everything the
/// bounds allow to bud from it (type (a) and trivial members do not bud).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Family {
    pub tag: FamilyTag,
    pub left_arm: Option<CfString>,
    pub right_arm: Option<CfString>,
    pub z: Option<i64>,
    pub base: CfString,
    pub members: Vec<FramingSequence>,
}

fn to_framings(v: Vec<CfString>) -> Vec<FramingSequence> {
    v.into_iter()
        .map(|s| FramingSequence::new(s).expect("family members have entries >= 2"))
        .collect()
}

/// Generators of every family, truncated to `max_len` and `max_entry`.
pub fn theorem1_family_list(max_len: usize, max_entry: i64) -> Vec<Theorem1Family> {
    let mut out = Vec::new();
    if max_len == 0 || max_entry < 2 {
        return out;
    }
    let arms = budding_closure_bounded(&CfString::from([4]), max_len, max_entry);
    let fits = |s: &CfString| s.len() <= max_len && s.entries().iter().all(|&a| a <= max_entry);
    let single = |tag, left_arm, right_arm, z, base: CfString| Theorem1Family {
        tag,
        left_arm,
        right_arm,
        z,
        members: to_framings(vec![base.clone()]),
        base,
    };

    for z in 2..=max_entry {
        out.push(single(
            FamilyTag::Trivial,
            None,
            None,
            Some(z),
            CfString::from([z]),
        ));
    }

    let optional_arms: Vec<Option<&CfString>> =
        std::iter::once(None).chain(arms.iter().map(Some)).collect();
    for left in &optional_arms {
        for right in &optional_arms {
            if left.is_none() && right.is_none() {
                continue;
            }
            for z in 2..=max_entry {
                let mut v = Vec::new();
                v.extend(left.map(|s| s.entries().to_vec()).unwrap_or_default());
                v.push(z);
                v.extend(right.map(|s| s.entries().to_vec()).unwrap_or_default());
                let base = CfString::new(v);
                if fits(&base) {
                    out.push(single(
                        FamilyTag::A,
                        left.cloned(),
                        right.cloned(),
                        Some(z),
                        base,
                    ));
                }
            }
        }
    }

    let closure_family =
        |tag, left_arm: Option<CfString>, right_arm: Option<CfString>, base: CfString| {
            Theorem1Family {
                tag,
                left_arm,
                right_arm,
                z: None,
                members: to_framings(budding_closure_bounded(&base, max_len, max_entry)),
                base,
            }
        };

    for b in &arms {
        let mut with_tail = b.entries().to_vec();
        with_tail.push(2);
        let mut with_head = vec![2];
        with_head.extend_from_slice(b.entries());
        for base in [with_tail, with_head] {
            let base = CfString::new(base);
            if fits(&base) {
                out.push(closure_family(FamilyTag::B, Some(b.clone()), None, base));
            }
        }
    }

    let c = CfString::from([3, 3]);
    if fits(&c) {
        out.push(closure_family(FamilyTag::C, None, None, c));
    }

    for b in &arms {
        for cc in &arms {
            let mut v = vec![2];
            v.extend_from_slice(b.entries());
            v.extend_from_slice(cc.entries());
            v.push(2);
            let base = CfString::new(v);
            if fits(&base) {
                out.push(closure_family(
                    FamilyTag::D,
                    Some(b.clone()),
                    Some(cc.clone()),
                    base,
                ));
            }
        }
    }
    out
}

/// Union of every family member within the bounds.
pub fn theorem1_families(max_len: usize, max_entry: i64) -> BTreeSet<FramingSequence> {
    theorem1_family_list(max_len, max_entry)
        .into_iter()
        .flat_map(|f| f.members)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum VerifyStatus {
    Complete,
    /// Stopped after this many candidates because of the cap.
    Partial {
        examined: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub max_len: usize,
    pub max_entry: i64,
    pub status: VerifyStatus,
    pub examined: usize,
    pub replaceable_count: usize,
    pub family_count: usize,
    /// 2-replaceable but not generated, with an Euler characteristic 2 witness.
    pub missing_from_families: Vec<(FramingSequence, ZeroString)>,
    /// Generated but not 2-replaceable, with the family tag.
    pub not_replaceable: Vec<(FramingSequence, FamilyTag)>,
}

impl Theorem1Report {
    pub fn success(&self) -> bool {
        self.status == VerifyStatus::Complete
            && self.missing_from_families.is_empty()
            && self.not_replaceable.is_empty()
    }
}

pub const DEFAULT_VERIFY_CAP: usize = 5_000_000;

pub fn verify_theorem1(max_len: usize, max_entry: i64) -> Theorem1Report {
    verify_theorem1_capped(max_len, max_entry, DEFAULT_VERIFY_CAP)
}

/// Compares the oracle's 2-replaceable set with the generated families.
pub fn verify_theorem1_capped(max_len: usize, max_entry: i64, cap: usize) -> Theorem1Report {
    let mut tags: BTreeMap<FramingSequence, FamilyTag> = BTreeMap::new();
    for fam in theorem1_family_list(max_len, max_entry) {
        for m in fam.members {
            tags.entry(m).or_insert(fam.tag);
        }
    }
    let mut examined = 0;
    let mut status = VerifyStatus::Complete;
    let mut replaceable = BTreeSet::new();
    let mut missing = Vec::new();
    for v in expansion_strings(max_len, max_entry) {
        if examined == cap {
            status = VerifyStatus::Partial { examined };
            break;
        }
        examined += 1;
        let f = FramingSequence::new(CfString::new(v)).expect("entries >= 2");
        let dual = cf_dual(f.as_cf()).expect("expansion");
        let witness = search(&dual, 2, true, true);
        if let Some(z) = witness.into_iter().next() {
            if !tags.contains_key(&f) {
                missing.push((f.clone(), z));
            }
            replaceable.insert(f);
        }
    }
    let not_replaceable = if status == VerifyStatus::Complete {
        tags.iter()
            .filter(|(f, _)| !replaceable.contains(*f))
            .map(|(f, t)| (f.clone(), *t))
            .collect()
    } else {
        Vec::new()
    };
    Theorem1Report {
        max_len,
        max_entry,
        status,
        examined,
        replaceable_count: replaceable.len(),
        family_count: tags.len(),
        missing_from_families: missing,
        not_replaceable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zerostrings::enumerate_zero_strings;

    fn cf(v: &[i64]) -> CfString {
        CfString::from(v)
    }

    fn fs(v: &[i64]) -> FramingSequence {
        FramingSequence::new(cf(v)).unwrap()
    }

    fn lens(p: i64, q: i64) -> LensSpace {
        LensSpace::new(p, q).unwrap()
    }

    #[test]
    fn lens_space_validation() {
        assert!(LensSpace::new(4, 2).is_err());
        assert!(LensSpace::new(4, 4).is_err());
        assert!(LensSpace::new(4, 0).is_err());
        assert_eq!(
            LensSpace::from_plumbing(&fs(&[2, 4, 4, 2])).unwrap(),
            lens(45, 26)
        );
        assert_eq!(lens(45, 26).dual_string(), cf(&[3, 2, 3, 2, 3]));
        assert_eq!(lens(45, 26).plumbing_string(), cf(&[2, 4, 4, 2]));
    }

    #[test]
    fn fillings_of_seed_lens_space() {
        let all = fillings(&lens(45, 26));
        let has = |z: &[i64], e: i64| {
            all.iter()
                .any(|f| f.zero_string.entries() == z && f.euler == e)
        };
        assert!(has(&[3, 1, 3, 1, 3], 2));
        assert!(has(&[1, 2, 2, 2, 1], 5));
        assert!(all
            .windows(2)
            .all(|w| (w[0].euler, &w[0].zero_string) <= (w[1].euler, &w[1].zero_string)));
        assert_eq!(min_filling_euler(&lens(45, 26)), 2);
    }

    #[test]
    fn small_lens_spaces() {
        assert!(fillings(&lens(4, 1))
            .iter()
            .any(|f| f.zero_string.entries() == [2, 1, 2] && f.euler == 1));
        assert_eq!(min_filling_euler(&lens(4, 1)), 1);
        let two = fillings(&lens(2, 1));
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].zero_string, ZeroString::base());
        assert_eq!(two[0].euler, 2);
        assert_eq!(min_filling_euler(&lens(2, 1)), 2);
    }

    #[test]
    fn search_matches_enumerate_then_filter() {
        for n in 2..=8usize {
            let zs = enumerate_zero_strings(n);
            // every expansion of length n with entries <= 4, sampled
            for dual in expansion_strings(n, 4).filter(|v| v.len() == n).step_by(7) {
                let mut want: Vec<ZeroString> = zs
                    .iter()
                    .filter(|z| z.entries().iter().zip(&dual).all(|(a, b)| a <= b))
                    .cloned()
                    .collect();
                want.sort();
                let got = dominated_zero_strings(&CfString::new(dual.clone()), i64::MAX / 4, false);
                assert_eq!(got, want, "dual {dual:?}");
            }
        }
    }

    #[test]
    fn replaceability_examples() {
        assert!(is_k_replaceable(&fs(&[2, 4, 4, 2]), 2));
        assert!(is_k_replaceable(&fs(&[4]), 1));
        for z in 2..=9 {
            assert!(is_k_replaceable(&fs(&[z]), 2));
        }
        assert!(!is_k_replaceable(&fs(&[3, 2]), 2));
        assert!(is_k_replaceable(&fs(&[4, 2]), 2));
    }

    #[test]
    fn casson_harer_examples() {
        assert!(casson_harer_predicate(&lens(4, 1)));
        assert!(casson_harer_predicate(&lens(9, 5)));
        assert!(casson_harer_predicate(&lens(9, 2)));
        assert!(!casson_harer_predicate(&lens(9, 4)));
        assert!(!casson_harer_predicate(&lens(45, 26)));
    }

    #[test]
    fn witness_forms() {
        let w = two_replaceable_witnesses(&lens(45, 26)).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].zero_string.entries(), [3, 1, 3, 1, 3]);
        assert_eq!(w[0].bumps, vec![2, 4]);
        assert_eq!(w[0].form, WitnessForm::TwoOnes);

        let w = two_replaceable_witnesses(&lens(8, 3)).unwrap();
        assert!(w.iter().any(|x| x.zero_string.entries() == [2, 1, 2]
            && x.bumps == vec![2, 2]
            && x.form == WitnessForm::Double));

        let w = two_replaceable_witnesses(&lens(2, 1)).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].zero_string, ZeroString::base());
        assert_eq!(w[0].bumps, vec![1, 1]);
        assert_eq!(w[0].form, WitnessForm::Double);
    }

    #[test]
    fn families_contain_known_members() {
        let fam = theorem1_families(4, 6);
        for v in [
            &[2, 4, 4, 2][..],
            &[3, 3],
            &[4, 2],
            &[2, 4],
            &[5],
            &[4, 3, 4],
        ] {
            assert!(fam.contains(&fs(v)), "{v:?}");
        }
    }

    #[test]
    fn small_verification() {
        let r = verify_theorem1(4, 6);
        assert!(r.success(), "{r:?}");
        let r = verify_theorem1_capped(4, 6, 10);
        assert_eq!(r.status, VerifyStatus::Partial { examined: 10 });
        assert!(!r.success());
    }
}
