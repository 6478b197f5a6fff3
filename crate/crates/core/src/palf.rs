//! Planar positive factorizations recorded as hole subsets.
//!
//! The fiber is a disk with `h` holes. A convex curve is determined by the
//! holes it encloses, so a right-handed twist is stored as a nonempty subset of
//! `{1..h}` and a factorization as an ordered list of such subsets.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plumbing::{AbelianGroup, IntMatrix};

/// Sorted, duplicate-free, nonempty set of holes.
pub type Twist = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFactorization", into = "RawFactorization")]
pub struct Factorization {
    holes: usize,
    twists: Vec<Twist>,
}

#[derive(Serialize, Deserialize)]
struct RawFactorization {
    holes: usize,
    twists: Vec<Vec<usize>>,
}

impl TryFrom<RawFactorization> for Factorization {
    type Error = Error;
    fn try_from(raw: RawFactorization) -> Result<Self> {
        Factorization::new(raw.holes, raw.twists)
    }
}

impl From<Factorization> for RawFactorization {
    fn from(f: Factorization) -> Self {
        RawFactorization {
            holes: f.holes,
            twists: f.twists,
        }
    }
}

fn normalize(holes: usize, t: Vec<usize>) -> Result<Twist> {
    let set: BTreeSet<usize> = t.into_iter().collect();
    if set.is_empty() {
        return Err(Error::Malformed("empty twist".into()));
    }
    if let Some(&bad) = set.iter().find(|&&x| x == 0 || x > holes) {
        return Err(Error::Malformed(format!(
            "hole {bad} out of range 1..={holes}"
        )));
    }
    Ok(set.into_iter().collect())
}

impl Factorization {
    pub fn new(holes: usize, twists: Vec<Vec<usize>>) -> Result<Self> {
        let twists = twists
            .into_iter()
            .map(|t| normalize(holes, t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Factorization { holes, twists })
    }

    pub fn holes(&self) -> usize {
        self.holes
    }

    pub fn twists(&self) -> &[Twist] {
        &self.twists
    }

    /// Hole-by-twist incidence matrix.
    pub fn incidence(&self) -> IntMatrix {
        let mut b = IntMatrix::zeros(self.holes, self.twists.len());
        for (j, t) in self.twists.iter().enumerate() {
            for &i in t {
                b[(i - 1, j)] = BigInt::from(1);
            }
        }
        b
    }

    /// Linking matrix of the handle diagram: 1-handles as 0-framed unknots, each
    /// vanishing cycle a (-1)-framed knot passing once through the holes it
    /// encloses. Distinct vanishing cycles sit on distinct pages and do not link.
    pub fn linking_matrix(&self) -> IntMatrix {
        let (h, t) = (self.holes, self.twists.len());
        let b = self.incidence();
        let mut m = IntMatrix::zeros(h + t, h + t);
        for i in 0..h {
            for j in 0..t {
                m[(i, h + j)] = b[(i, j)].clone();
                m[(h + j, i)] = b[(i, j)].clone();
            }
        }
        for j in 0..t {
            m[(h + j, h + j)] = BigInt::from(-1);
        }
        m
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .twists
            .iter()
            .map(|t| {
                format!(
                    "{{{}}}",
                    t.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        write!(f, "h={} [{}]", self.holes, parts.join(" "))
    }
}

/// `1 - h + #twists`.
pub fn euler_char_palf(f: &Factorization) -> i64 {
    1 - f.holes as i64 + f.twists.len() as i64
}

/// `H_1` of the total space: holes generate, each twist kills the sum of the
/// holes it encloses.
pub fn h1_total(f: &Factorization) -> AbelianGroup {
    AbelianGroup::cokernel(&f.incidence())
}

/// `H_1` of the boundary 3-manifold.
pub fn boundary_h1_palf(f: &Factorization) -> AbelianGroup {
    AbelianGroup::cokernel(&f.linking_matrix())
}

/// Replace one multiset of twists by another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteRule {
    pub name: String,
    pub lhs: Vec<Twist>,
    pub rhs: Vec<Twist>,
}

fn union(sets: &[&Twist]) -> Twist {
    let u: BTreeSet<usize> = sets.iter().flat_map(|s| s.iter().copied()).collect();
    u.into_iter().collect()
}

fn pairwise_disjoint(sets: &[&Twist]) -> bool {
    let total: usize = sets.iter().map(|s| s.len()).sum();
    union(sets).len() == total
}

impl RewriteRule {
    /// `A, B, C, A∪B∪C -> A∪B, A∪C, B∪C` for disjoint nonempty `A, B, C`.
    pub fn lantern(a: &Twist, b: &Twist, c: &Twist) -> Result<Self> {
        if [a, b, c].iter().any(|s| s.is_empty()) || !pairwise_disjoint(&[a, b, c]) {
            return Err(Error::PatternMismatch(
                "lantern needs three disjoint nonempty subsets".into(),
            ));
        }
        Ok(RewriteRule {
            name: "lantern".into(),
            lhs: vec![a.clone(), b.clone(), c.clone(), union(&[a, b, c])],
            rhs: vec![union(&[a, b]), union(&[a, c]), union(&[b, c])],
        })
    }

    /// `A^(k-1), P_1, ..., P_k, A∪P_1∪...∪P_k -> P_1∪...∪P_k, A∪P_1, ..., A∪P_k`.
    /// For `k = 2` this is the lantern.
    pub fn daisy(center: &Twist, petals: &[Twist]) -> Result<Self> {
        let k = petals.len();
        if k < 2 {
            return Err(Error::PatternMismatch(
                "daisy needs at least two petals".into(),
            ));
        }
        let mut all: Vec<&Twist> = vec![center];
        all.extend(petals.iter());
        if all.iter().any(|s| s.is_empty()) || !pairwise_disjoint(&all) {
            return Err(Error::PatternMismatch(
                "daisy center and petals must be disjoint and nonempty".into(),
            ));
        }
        let mut lhs = vec![center.clone(); k - 1];
        lhs.extend(petals.iter().cloned());
        lhs.push(union(&all));
        let petal_refs: Vec<&Twist> = petals.iter().collect();
        let mut rhs = vec![union(&petal_refs)];
        rhs.extend(petals.iter().map(|p| union(&[center, p])));
        Ok(RewriteRule {
            name: format!("daisy{k}"),
            lhs,
            rhs,
        })
    }
}

/// Matches each pattern to the earliest unused twist equal to it.
pub fn find_twists(f: &Factorization, pattern: &[Twist]) -> Result<Vec<usize>> {
    let mut used = vec![false; f.twists.len()];
    let mut out = Vec::with_capacity(pattern.len());
    for p in pattern {
        let pos = (0..f.twists.len())
            .find(|&i| !used[i] && &f.twists[i] == p)
            .ok_or_else(|| Error::PatternMismatch(format!("no unused twist {p:?}")))?;
        used[pos] = true;
        out.push(pos);
    }
    Ok(out)
}

/// Removes the twists at `positions` (which must hold `rule.lhs` in order) and
/// inserts `rule.rhs` where the earliest of them stood. Fails if the boundary
/// homology changes.
pub fn apply_rule_at(
    f: &Factorization,
    rule: &RewriteRule,
    positions: &[usize],
) -> Result<Factorization> {
    if positions.len() != rule.lhs.len() {
        return Err(Error::PatternMismatch(format!(
            "{} positions for a {}-twist pattern",
            positions.len(),
            rule.lhs.len()
        )));
    }
    let distinct: BTreeSet<usize> = positions.iter().copied().collect();
    if distinct.len() != positions.len() {
        return Err(Error::PatternMismatch("repeated position".into()));
    }
    for (&p, want) in positions.iter().zip(&rule.lhs) {
        let got = f.twists.get(p).ok_or(Error::PositionOutOfRange {
            position: p,
            len: f.twists.len(),
        })?;
        if got != want {
            return Err(Error::PatternMismatch(format!(
                "twist {p} is {got:?}, {} expects {want:?}",
                rule.name
            )));
        }
    }
    let first = *distinct.iter().next().expect("nonempty pattern");
    let mut twists = Vec::with_capacity(f.twists.len() - positions.len() + rule.rhs.len());
    for (i, t) in f.twists.iter().enumerate() {
        if i == first {
            twists.extend(rule.rhs.iter().cloned());
        }
        if !distinct.contains(&i) {
            twists.push(t.clone());
        }
    }
    let out = Factorization::new(f.holes, twists)?;
    let before = boundary_h1_palf(f);
    let after = boundary_h1_palf(&out);
    if before != after {
        return Err(Error::InvariantViolation {
            rule: rule.name.clone(),
            before: before.to_string(),
            after: after.to_string(),
        });
    }
    Ok(out)
}

/// [`apply_rule_at`] on the earliest matching twists.
pub fn apply_rule(f: &Factorization, rule: &RewriteRule) -> Result<Factorization> {
    let positions = find_twists(f, &rule.lhs)?;
    apply_rule_at(f, rule, &positions)
}

/// Lantern substitution on twists at the given positions, holding `A`, `B`,
/// `C` and `A∪B∪C`.
pub fn lantern_substitute(f: &Factorization, positions: [usize; 4]) -> Result<Factorization> {
    let get = |i: usize| {
        f.twists.get(i).ok_or(Error::PositionOutOfRange {
            position: i,
            len: f.twists.len(),
        })
    };
    let rule = RewriteRule::lantern(get(positions[0])?, get(positions[1])?, get(positions[2])?)?;
    apply_rule_at(f, &rule, &positions)
}

/// Daisy substitution: `center` occurs `k-1` times, each petal once, and the
/// union of everything once.
pub fn daisy_substitute(
    f: &Factorization,
    center: &Twist,
    petals: &[Twist],
) -> Result<Factorization> {
    let rule = RewriteRule::daisy(center, petals)?;
    apply_rule(f, &rule)
}

/// Where the twists through a split hole go.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Both,
}

/// Splits hole `j` into `j` (left) and `j+1` (right), shifting later holes up.
/// `sides` gives, in order, the fate of every twist containing `j`; the
/// `appended` twists use the new numbering and go at the end.
pub fn split_hole(
    f: &Factorization,
    j: usize,
    sides: &[Side],
    appended: Vec<Vec<usize>>,
) -> Result<Factorization> {
    if j == 0 || j > f.holes {
        return Err(Error::PositionOutOfRange {
            position: j,
            len: f.holes,
        });
    }
    let through = f.twists.iter().filter(|t| t.contains(&j)).count();
    if through != sides.len() {
        return Err(Error::Malformed(format!(
            "{} sides for {through} twists through hole {j}",
            sides.len()
        )));
    }
    let mut sides = sides.iter();
    let mut twists: Vec<Vec<usize>> = Vec::with_capacity(f.twists.len() + appended.len());
    for t in &f.twists {
        let mut out: Vec<usize> = t
            .iter()
            .filter(|&&x| x != j)
            .map(|&x| if x > j { x + 1 } else { x })
            .collect();
        if t.contains(&j) {
            match sides.next().expect("counted above") {
                Side::Left => out.push(j),
                Side::Right => out.push(j + 1),
                Side::Both => out.extend([j, j + 1]),
            }
        }
        twists.push(out);
    }
    twists.extend(appended);
    Factorization::new(f.holes + 1, twists)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyPairReport {
    pub c_euler: i64,
    pub b_euler: i64,
    pub c_boundary: AbelianGroup,
    pub b_boundary: AbelianGroup,
    pub boundaries_agree: bool,
    pub b_total: AbelianGroup,
}

pub fn key_pair_check(c_side: &Factorization, b_side: &Factorization) -> Result<KeyPairReport> {
    if c_side.holes != b_side.holes {
        return Err(Error::Precondition(format!(
            "hole counts differ: {} vs {}",
            c_side.holes, b_side.holes
        )));
    }
    let c_boundary = boundary_h1_palf(c_side);
    let b_boundary = boundary_h1_palf(b_side);
    Ok(KeyPairReport {
        c_euler: euler_char_palf(c_side),
        b_euler: euler_char_palf(b_side),
        boundaries_agree: c_boundary == b_boundary,
        c_boundary,
        b_boundary,
        b_total: h1_total(b_side),
    })
}

fn build(holes: usize, twists: &[&[usize]]) -> Factorization {
    Factorization::new(holes, twists.iter().map(|t| t.to_vec()).collect()).expect("built-in system")
}

/// Nine twists on five holes, bounding the same space as the `(-2,-4,-4,-2)` chain.
pub fn seed_x_system() -> Factorization {
    let full: &[usize] = &[1, 2, 3, 4, 5];
    build(
        5,
        &[&[1], &[1], &[2], &[3], &[4], &[1, 2, 3], &[5], full, full],
    )
}

/// The seed system after the lantern substitution.
pub fn seed_middle_system() -> Factorization {
    build(
        5,
        &[
            &[1],
            &[1],
            &[2],
            &[3],
            &[4, 5],
            &[1, 2, 3, 4],
            &[1, 2, 3, 5],
            &[1, 2, 3, 4, 5],
        ],
    )
}

/// The six-twist system with Euler characteristic 2.
pub fn seed_abcdef_system() -> Factorization {
    build(
        5,
        &[
            &[2, 3, 4, 5],
            &[1, 2],
            &[1, 3],
            &[1, 4, 5],
            &[1, 2, 3, 4],
            &[1, 2, 3, 5],
        ],
    )
}

/// Positions of the lantern block in [`seed_x_system`]: `{4}`, `{5}`, `{1,2,3}`
/// and the first full twist.
pub const SEED_LANTERN_POSITIONS: [usize; 4] = [4, 6, 5, 7];

/// Runs lantern then daisy from the nine-twist system, checking the boundary
/// homology at each step. Returns every intermediate system.
pub fn seed_substitution_chain() -> Result<Vec<Factorization>> {
    let x = seed_x_system();
    let middle = lantern_substitute(&x, SEED_LANTERN_POSITIONS)?;
    let last = daisy_substitute(&middle, &vec![1], &[vec![2], vec![3], vec![4, 5]])?;
    Ok(vec![x, middle, last])
}

/// B-side of the `m = 3` family on `n + 3` holes; `n = 9` is the twelve-hole
/// system whose total space has `H_1 = Z17`.
pub fn bside_family(n: usize) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "b-side family needs n >= 2, got {n}"
        )));
    }
    let run = |k: usize| (1..=k).collect::<Vec<usize>>();
    let mut twists = Vec::new();
    for i in 1..n {
        twists.push(vec![i, n + 2, n + 3]);
    }
    twists.push(vec![n, n + 1, n + 2, n + 3]);
    twists.push(run(n));
    twists.push(run(n + 2));
    let mut t = run(n - 1);
    t.push(n + 1);
    twists.push(t);
    let mut t = run(n + 1);
    t.push(n + 3);
    twists.push(t);
    Factorization::new(n + 3, twists)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> AbelianGroup {
        AbelianGroup::cyclic(n)
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_char_palf(&seed_x_system()), 5);
        assert_eq!(euler_char_palf(&seed_abcdef_system()), 2);
        assert_eq!(euler_char_palf(&Factorization::new(0, vec![]).unwrap()), 1);
    }

    #[test]
    fn seed_boundaries() {
        assert_eq!(boundary_h1_palf(&seed_x_system()), z(45));
        assert_eq!(boundary_h1_palf(&seed_middle_system()), z(45));
        assert_eq!(boundary_h1_palf(&seed_abcdef_system()), z(45));
        let one = Factorization::new(1, vec![vec![1]]).unwrap();
        assert!(boundary_h1_palf(&one).is_trivial());
    }

    #[test]
    fn totals() {
        assert_eq!(h1_total(&bside_family(9).unwrap()), z(17));
        let t = Factorization::new(3, vec![vec![1], vec![2], vec![3]]).unwrap();
        assert!(h1_total(&t).is_trivial());
        for n in 2..=12u64 {
            assert_eq!(h1_total(&bside_family(n as usize).unwrap()), z(2 * n - 1));
        }
    }

    #[test]
    fn seed_chain() {
        let chain = seed_substitution_chain().unwrap();
        assert_eq!(chain[1], seed_middle_system());
        assert_eq!(chain[2], seed_abcdef_system());
        let eulers: Vec<i64> = chain.iter().map(euler_char_palf).collect();
        assert_eq!(eulers, vec![5, 4, 2]);
    }

    #[test]
    fn canonical_lantern() {
        let f = Factorization::new(3, vec![vec![1], vec![2], vec![3], vec![1, 2, 3]]).unwrap();
        let g = lantern_substitute(&f, [0, 1, 2, 3]).unwrap();
        assert_eq!(g.twists(), &[vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(euler_char_palf(&g), euler_char_palf(&f) - 1);
    }

    #[test]
    fn lantern_rejects_overlap() {
        let f = Factorization::new(3, vec![vec![1, 2], vec![2], vec![3], vec![1, 2, 3]]).unwrap();
        assert!(matches!(
            lantern_substitute(&f, [0, 1, 2, 3]),
            Err(Error::PatternMismatch(_))
        ));
        let f = Factorization::new(3, vec![vec![1], vec![2], vec![3], vec![1, 2]]).unwrap();
        assert!(matches!(
            lantern_substitute(&f, [0, 1, 2, 3]),
            Err(Error::PatternMismatch(_))
        ));
    }

    #[test]
    fn daisy_two_is_lantern() {
        let a = RewriteRule::daisy(&vec![1], &[vec![2], vec![3]]).unwrap();
        let b = RewriteRule::lantern(&vec![1], &vec![2], &vec![3]).unwrap();
        let sorted = |mut v: Vec<Twist>| {
            v.sort();
            v
        };
        assert_eq!(sorted(a.lhs), sorted(b.lhs));
        assert_eq!(sorted(a.rhs), sorted(b.rhs));
        assert!(RewriteRule::daisy(&vec![1, 2], &[vec![2], vec![3]]).is_err());
    }

    #[test]
    fn splitting() {
        let f = Factorization::new(2, vec![vec![1], vec![1, 2]]).unwrap();
        let g = split_hole(&f, 1, &[Side::Left, Side::Both], vec![vec![2]]).unwrap();
        assert_eq!(g.holes(), 3);
        assert_eq!(g.twists(), &[vec![1], vec![1, 2, 3], vec![2]]);
        assert!(split_hole(&f, 1, &[Side::Left], vec![]).is_err());
        let h = Factorization::new(2, vec![vec![1]]).unwrap();
        let g = split_hole(&h, 2, &[], vec![]).unwrap();
        assert_eq!(g.twists(), h.twists());
        assert_eq!(g.holes(), 3);
    }

    #[test]
    fn key_pair() {
        let r = key_pair_check(&seed_x_system(), &seed_abcdef_system()).unwrap();
        assert!(r.boundaries_agree);
        assert_eq!((r.c_euler, r.b_euler), (5, 2));
        assert_eq!(r.c_boundary, z(45));
        assert!(key_pair_check(&seed_x_system(), &bside_family(9).unwrap()).is_err());
    }

    #[test]
    fn json_format() {
        let f: Factorization = serde_json::from_str(r#"{"holes":2,"twists":[[2,1],[1]]}"#).unwrap();
        assert_eq!(f.twists(), &[vec![1, 2], vec![1]]);
        assert!(serde_json::from_str::<Factorization>(r#"{"holes":2,"twists":[[]]}"#).is_err());
        assert!(serde_json::from_str::<Factorization>(r#"{"holes":2,"twists":[[3]]}"#).is_err());
    }
}
