use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^free + Z/t_1 + ... + Z/t_k`
/// with `t_1 | t_2 | ...` and every `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    torsion: Vec<BigInt>,
    free_rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => AbelianGroup {
                torsion: Vec::new(),
                free_rank: 1,
            },
            1 => AbelianGroup::trivial(),
            n => AbelianGroup {
                torsion: vec![BigInt::from(n)],
                free_rank: 0,
            },
        }
    }

    /// `Z^rows / im(m)` for `m` acting on column vectors.
    pub fn cokernel(m: &IntMatrix) -> Self {
        let s = smith_normal_form(m);
        let factors = s.invariant_factors();
        let rank = factors.iter().filter(|x| !x.is_zero()).count();
        AbelianGroup {
            torsion: factors
                .into_iter()
                .filter(|x| !x.is_zero() && !x.is_one())
                .collect(),
            free_rank: m.rows() - rank,
        }
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_cyclic(&self) -> bool {
        self.torsion.len() + self.free_rank <= 1
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z{t}")).collect();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.free_rank));
        f.write_str(&parts.join("+"))
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Order of the image of `v` in `Z^n / im(m)` for a nonsingular square `m`.
pub fn boundary_class_order(m: &IntMatrix, v: &[BigInt]) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Precondition(
            "class order needs a square matrix".into(),
        ));
    }
    let s = smith_normal_form(m);
    let d = s.invariant_factors();
    if d.iter().any(|x| x.is_zero()) {
        return Err(Error::Singular);
    }
    let w = s.u.apply(v)?;
    Ok(d.iter()
        .zip(&w)
        .map(|(di, wi)| di / di.gcd(wi))
        .fold(BigInt::one(), |acc, x| acc.lcm(&x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::cyclic(45).to_string(), "Z45");
        assert_eq!(AbelianGroup::cyclic(0).to_string(), "Z");
        let m = IntMatrix::from_rows(&[[2, 0, 0], [0, 4, 0]]).unwrap();
        let g = AbelianGroup::cokernel(&m.transpose());
        assert_eq!(g.to_string(), "Z2+Z4+Z");
        assert_eq!(g.order(), None);
        assert!(!g.is_cyclic());
    }

    #[test]
    fn class_orders() {
        let m = IntMatrix::from_rows(&[[45]]).unwrap();
        for k in [0i64, 1, 3, 5, 9, 15, 44, 90] {
            let want = BigInt::from(45 / num_integer::gcd(k, 45));
            assert_eq!(boundary_class_order(&m, &[BigInt::from(k)]).unwrap(), want);
        }
        let chain =
            IntMatrix::from_rows(&[[-2, 1, 0, 0], [1, -4, 1, 0], [0, 1, -4, 1], [0, 0, 1, -2]])
                .unwrap();
        let e = |i: usize| {
            (0..4)
                .map(|j| BigInt::from((i == j) as i64))
                .collect::<Vec<_>>()
        };
        assert_eq!(
            boundary_class_order(&chain, &e(0)).unwrap(),
            BigInt::from(45)
        );
        assert_eq!(
            boundary_class_order(&IntMatrix::zeros(1, 1), &[BigInt::one()]),
            Err(Error::Singular)
        );
        assert!(BigInt::from(782).is_multiple_of(&BigInt::from(17)));
        assert_eq!(
            BigInt::from(1445) / BigInt::from(1445).gcd(&BigInt::from(782)),
            BigInt::from(85)
        );
    }

    #[test]
    fn cokernel_of_chain() {
        let m = IntMatrix::from_rows(&[[-2, 1, 0, 0], [1, -4, 1, 0], [0, 1, -4, 1], [0, 0, 1, -2]])
            .unwrap();
        let g = AbelianGroup::cokernel(&m);
        assert_eq!(g, AbelianGroup::cyclic(45));
        assert_eq!(g.order(), Some(BigInt::from(45)));
    }
}
