use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Counts of positive, negative and zero squares of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn is_negative_definite(&self) -> bool {
        self.positive == 0 && self.zero == 0
    }
}

/// Inertia by symmetric Gaussian elimination over the rationals. When every
/// remaining diagonal entry vanishes, a congruence `x_i -> x_i + x_j` makes one
/// nonzero.
pub fn signature_exact(m: &IntMatrix) -> Result<Inertia> {
    if !m.is_symmetric() {
        return Err(Error::NonSymmetric);
    }
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut live: Vec<usize> = (0..n).collect();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !live.is_empty() {
        let pivot = match live.iter().copied().find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = live
                    .iter()
                    .flat_map(|&i| live.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else {
                    out.zero += live.len();
                    break;
                };
                // row and column i += row and column j
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let p = a[pivot][pivot].clone();
        if p.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        live.retain(|&i| i != pivot);
        for &i in &live {
            if a[i][pivot].is_zero() {
                continue;
            }
            let f = &a[i][pivot] / &p;
            for &j in &live {
                let v = &f * &a[pivot][j];
                a[i][j] -= v;
            }
        }
        for &i in &live {
            a[i][pivot] = BigRational::zero();
            a[pivot][i] = BigRational::zero();
        }
    }
    Ok(out)
}

/// Signs of the leading principal minors; all nonzero for a usable test.
pub fn leading_minors(m: &IntMatrix) -> Result<Vec<BigInt>> {
    if !m.is_square() {
        return Err(Error::Precondition(
            "leading minors of a non-square matrix".into(),
        ));
    }
    (1..=m.rows())
        .map(|k| {
            let mut sub = IntMatrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    sub[(i, j)] = m[(i, j)].clone();
                }
            }
            sub.determinant()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inertia(p: usize, n: usize, z: usize) -> Inertia {
        Inertia {
            positive: p,
            negative: n,
            zero: z,
        }
    }

    #[test]
    fn examples() {
        let mut d = vec![1];
        d.extend(std::iter::repeat_n(-1, 16));
        let s = signature_exact(&IntMatrix::diagonal(&d)).unwrap();
        assert_eq!(s, inertia(1, 16, 0));
        assert_eq!(s.signature(), -15);
        let chain =
            IntMatrix::from_rows(&[[-2, 1, 0, 0], [1, -4, 1, 0], [0, 1, -4, 1], [0, 0, 1, -2]])
                .unwrap();
        assert_eq!(signature_exact(&chain).unwrap(), inertia(0, 4, 0));
        let hyp = IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(signature_exact(&hyp).unwrap(), inertia(1, 1, 0));
        let degenerate = IntMatrix::from_rows(&[[1, 1], [1, 1]]).unwrap();
        assert_eq!(signature_exact(&degenerate).unwrap(), inertia(1, 0, 1));
        let nonsym = IntMatrix::from_rows(&[[1, 2], [0, 1]]).unwrap();
        assert_eq!(signature_exact(&nonsym), Err(Error::NonSymmetric));
    }

    #[test]
    fn zero_diagonal_blocks() {
        let m = IntMatrix::from_rows(&[[0, 0, 1], [0, 0, 2], [1, 2, 0]]).unwrap();
        assert_eq!(signature_exact(&m).unwrap(), inertia(1, 1, 1));
    }
}
