//! Exhaustive checks of the continued fraction identities the classification
//! rests on, over all small expansion strings and zero strings.

use serde::Serialize;

use crate::budding::{bud_left, bud_right, debud, is_budding_of};
use crate::cfrac::{cf_dual, cf_eval, cf_reverse, expansion_strings, CfString};
use crate::zerostrings::{base_type, enumerate_zero_strings, is_zero_string, BaseType, ZeroString};

const MAX_REPORTED: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// The first few counterexamples.
    pub examples: Vec<String>,
}

impl PropertyCheck {
    fn new(name: &'static str) -> Self {
        PropertyCheck {
            name,
            cases: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_REPORTED {
                self.examples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

fn dual(v: &[i64]) -> Vec<i64> {
    cf_dual(&CfString::from(v))
        .expect("expansion strings have duals")
        .into_entries()
}

fn twos(k: i64) -> Vec<i64> {
    vec![2; k.max(0) as usize]
}

fn evaluates_to_zero(v: &[i64]) -> bool {
    cf_eval(&CfString::from(v)).is_ok_and(|r| r.is_zero())
}

fn admissible(v: &[i64]) -> bool {
    cf_eval(&CfString::from(v)).is_ok()
}

fn expansion_checks(strings: &[Vec<i64>], out: &mut Vec<PropertyCheck>) {
    let mut involution = PropertyCheck::new("dual is an involution");
    let mut reversal = PropertyCheck::new("reversal commutes with dual");
    let mut leading = PropertyCheck::new("leading 2 in a string iff no leading 2 in its dual");
    let mut bump = PropertyCheck::new("raising the first entry prepends 2 to the dual");
    let mut leading_twos = PropertyCheck::new("dual opens with exactly a_1 - 2 twos");
    let mut drop_first = PropertyCheck::new("dropping the first entry trims the dual");
    let mut prepend = PropertyCheck::new("prepending an entry extends the dual");
    let mut budding = PropertyCheck::new("left budding maps to right budding of the dual");
    let mut bud_admissible = PropertyCheck::new("buddings and debuddings stay admissible");
    let mut sums = PropertyCheck::new("dual pair entry sums total 3(n+k) - 2");

    for a in strings {
        let m = dual(a);
        let n = a.len();
        involution.record(dual(&m) == *a, || format!("{a:?}"));

        let rev = cf_reverse(&CfString::from(a.as_slice()));
        let want = cf_reverse(&CfString::from(m.as_slice()));
        reversal.record(dual(rev.entries()) == want.entries(), || format!("{a:?}"));

        if n >= 2 {
            leading.record((a[0] == 2) == (m[0] != 2), || format!("{a:?} -> {m:?}"));
        }

        let mut raised = a.clone();
        raised[0] += 1;
        let mut want = vec![2];
        want.extend(&m);
        bump.record(dual(&raised) == want, || format!("{a:?}"));

        let k = (a[0] - 2) as usize;
        let ok = if n == 1 {
            m == twos(a[0] - 1)
        } else {
            m.len() > k && m[..k].iter().all(|&x| x == 2) && m[k] != 2
        };
        leading_twos.record(ok, || format!("{a:?} -> {m:?}"));

        if n >= 2 {
            let i = (a[0] - 2) as usize;
            let mut want = vec![m[i] - 1];
            want.extend(&m[i + 1..]);
            drop_first.record(dual(&a[1..]) == want, || format!("{a:?}"));
        }

        for a0 in 2..=4 {
            let mut ext = vec![a0];
            ext.extend(a);
            let mut want = twos(a0 - 2);
            want.push(m[0] + 1);
            want.extend(&m[1..]);
            prepend.record(dual(&ext) == want, || format!("{a0} ++ {a:?}"));
        }

        let s = CfString::from(a.as_slice());
        let left = bud_left(&s).expect("nonempty");
        let right_of_dual = bud_right(&CfString::from(m.as_slice())).expect("nonempty");
        budding.record(dual(left.entries()) == right_of_dual.entries(), || {
            format!("{a:?}")
        });

        let mut neighbours = vec![left, bud_right(&s).expect("nonempty")];
        neighbours.extend(debud(&s));
        for b in neighbours {
            bud_admissible.record(admissible(b.entries()), || format!("{a:?} -> {b}"));
        }

        let total: i64 = a.iter().sum::<i64>() + m.iter().sum::<i64>();
        sums.record(total == 3 * (n + m.len()) as i64 - 2, || format!("{a:?}"));
    }
    out.extend([
        involution,
        reversal,
        leading,
        bump,
        leading_twos,
        drop_first,
        prepend,
        budding,
        bud_admissible,
        sums,
    ]);
}

fn splice_checks(strings: &[Vec<i64>], max_len: usize, out: &mut Vec<PropertyCheck>) {
    let mut concat = PropertyCheck::new("dual of a concatenation splices the duals");
    let mut split = PropertyCheck::new("splitting a string splits its dual");
    for m in strings {
        for s in strings {
            if m.len() + s.len() > max_len {
                continue;
            }
            let a = dual(m);
            let b = dual(s);
            let mut joined = m.clone();
            joined.extend(s);
            let whole = dual(&joined);

            let mut want = a[..a.len() - 1].to_vec();
            want.push(a[a.len() - 1] + b[0] - 1);
            want.extend(&b[1..]);
            concat.record(whole == want, || format!("{m:?} ++ {s:?}"));

            let found = (0..whole.len()).any(|i| {
                a.len() == i + 1
                    && b.len() == whole.len() - i
                    && a[..i] == whole[..i]
                    && b[1..] == whole[i + 1..]
                    && a[i] + b[0] - 1 == whole[i]
            });
            split.record(found, || format!("{m:?} | {s:?}"));
        }
    }
    out.extend([concat, split]);
}

fn zero_string_checks(zeros: &[ZeroString], out: &mut Vec<PropertyCheck>) {
    let two_one_two = CfString::from([2, 1, 2]);
    let mut reversal = PropertyCheck::new("zero strings are closed under reversal");
    let mut has_one = PropertyCheck::new("zero strings of length >= 2 contain a 1");
    let mut end_one = PropertyCheck::new("a 1 at either end means a blowup of [1,2,1]");
    let mut buds_zero =
        PropertyCheck::new("single-1 blowups of [2,1,2] debud uniquely to 0 and bud to 0");
    let mut budding_iff =
        PropertyCheck::new("buddings of [2,1,2] are exactly its single-1 blowups");
    let mut not_121 = PropertyCheck::new("blowups of [2,1,2] avoiding [1,2,1] bud to 0");
    let mut bud_admissible = PropertyCheck::new(
        "buddings and debuddings of zero strings with a single 1 stay admissible",
    );

    for z in zeros {
        let a = z.entries();
        let s = z.as_cf();
        let bt = base_type(z);
        let rev: Vec<i64> = a.iter().rev().copied().collect();
        reversal.record(is_zero_string(&rev), || format!("{z}"));
        if a.len() >= 2 {
            has_one.record(a.contains(&1), || format!("{z}"));
        }
        if a.len() >= 3 && (a[0] == 1 || a[a.len() - 1] == 1) {
            end_one.record(bt == BaseType::BlowupOf121, || format!("{z}: {bt:?}"));
        }
        let single = bt == BaseType::BlowupOf212Only && z.ones_count() == 1;
        let left = bud_left(s).expect("nonempty");
        let right = bud_right(s).expect("nonempty");
        if single {
            let d = debud(s);
            let ok = d.len() <= 1
                && d.iter().all(|x| evaluates_to_zero(x.entries()))
                && evaluates_to_zero(left.entries())
                && evaluates_to_zero(right.entries());
            buds_zero.record(ok, || format!("{z}: debuds {d:?}"));
        }
        if bt == BaseType::BlowupOf212Only {
            let ok = evaluates_to_zero(left.entries()) && evaluates_to_zero(right.entries());
            not_121.record(ok, || format!("{z}"));
        }
        let is_bud = is_budding_of(s, &two_one_two);
        budding_iff.record(is_bud == single, || {
            format!("{z}: budding {is_bud}, single-1 {single}")
        });
        if z.ones_count() == 1 {
            let mut neighbours = vec![left, right];
            neighbours.extend(debud(s));
            for b in neighbours {
                bud_admissible.record(admissible(b.entries()), || format!("{z} -> {b}"));
            }
        }
    }
    out.extend([
        reversal,
        has_one,
        end_one,
        buds_zero,
        budding_iff,
        not_121,
        bud_admissible,
    ]);
}

/// Runs every property over expansion strings up to `max_len` entries of size
/// at most `max_entry`, and zero strings up to length `max_zero_len`.
pub fn run_property_suite(
    max_len: usize,
    max_entry: i64,
    max_zero_len: usize,
) -> Vec<PropertyCheck> {
    let strings: Vec<Vec<i64>> = expansion_strings(max_len, max_entry).collect();
    let zeros: Vec<ZeroString> = (1..=max_zero_len)
        .flat_map(enumerate_zero_strings)
        .collect();
    let mut out = Vec::new();
    expansion_checks(&strings, &mut out);
    splice_checks(&strings, max_len, &mut out);
    zero_string_checks(&zeros, &mut out);
    out
}
