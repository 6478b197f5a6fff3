use proptest::prelude::*;

use hjplumb::budding::{bud_left, bud_right, debud, FramingSequence};
use hjplumb::cfrac::{cf_dual, cf_eval, cf_expand, CfString};
use hjplumb::plumbing::{smith_normal_form, IntMatrix, PlumbingTree};
use hjplumb::zerostrings::{blowdown_at, blowups, is_zero_string, ZeroString};
use num_bigint::BigInt;
use num_traits::{One, Signed};

fn expansion() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(2i64..=9, 1..=10)
}

proptest! {
    #[test]
    fn expand_inverts_eval(v in expansion()) {
        let s = CfString::from(v.as_slice());
        let r = cf_eval(&s).unwrap();
        prop_assert_eq!(cf_expand(&r).unwrap(), s);
    }

    #[test]
    fn dual_is_involutive(v in expansion()) {
        let s = CfString::from(v.as_slice());
        prop_assert_eq!(cf_dual(&cf_dual(&s).unwrap()).unwrap(), s);
    }

    #[test]
    fn chain_determinant_is_numerator(v in expansion()) {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        let det = PlumbingTree::chain(&neg).unwrap().intersection_matrix().determinant().unwrap();
        let r = cf_eval(&CfString::from(v.as_slice())).unwrap();
        prop_assert_eq!(det.abs(), r.numer().clone());
    }

    #[test]
    fn budding_then_debudding_returns(v in expansion()) {
        let s = CfString::from(v.as_slice());
        let f = FramingSequence::new(s.clone()).unwrap();
        for b in [bud_left(&s).unwrap(), bud_right(&s).unwrap()] {
            prop_assert!(debud(&b).contains(&s), "{} from {}", b, f);
        }
    }

    #[test]
    fn smith_form_is_unimodular(rows in prop::collection::vec(prop::collection::vec(-20i64..=20, 4), 1..=4)) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let s = smith_normal_form(&m);
        prop_assert!(s.u.determinant().unwrap().abs().is_one());
        prop_assert!(s.v.determinant().unwrap().abs().is_one());
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        let f = s.invariant_factors();
        let zero = BigInt::from(0);
        for w in f.windows(2) {
            if w[0] == zero {
                prop_assert_eq!(&w[1], &zero);
            } else {
                prop_assert_eq!(&w[1] % &w[0], zero.clone());
            }
        }
    }
}

#[test]
fn blowups_and_blowdowns_stay_zero() {
    let mut layer = vec![ZeroString::base()];
    for _ in 0..6 {
        let next: Vec<ZeroString> = layer.iter().flat_map(blowups).collect();
        for z in &next {
            assert!(is_zero_string(z.entries()));
            for i in z.ones_positions() {
                assert!(is_zero_string(blowdown_at(z, i).unwrap().entries()));
            }
        }
        layer = next;
    }
}
