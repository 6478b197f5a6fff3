use std::fmt;

use serde::Serialize;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A class `a h + b_1 e_1 + ... + b_N e_N` in `H_2` of `CP^2 # N (-CP^2)`,
/// where `h^2 = 1`, `e_i^2 = -1` and the basis is orthogonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AmbientClass {
    pub h: i64,
    pub e: Vec<i64>,
}

impl AmbientClass {
    pub fn new(h: i64, e: Vec<i64>) -> Self {
        AmbientClass { h, e }
    }

    /// `h` coefficient plus sparse `(index, coefficient)` terms, 1-based.
    pub fn from_terms(n: usize, h: i64, terms: &[(usize, i64)]) -> Result<Self> {
        let mut e = vec![0; n];
        for &(i, c) in terms {
            if i == 0 || i > n {
                return Err(Error::PositionOutOfRange {
                    position: i,
                    len: n,
                });
            }
            e[i - 1] += c;
        }
        Ok(AmbientClass { h, e })
    }

    pub fn ambient_rank(&self) -> usize {
        self.e.len()
    }

    pub fn pairing(&self, other: &AmbientClass) -> Result<i64> {
        if self.e.len() != other.e.len() {
            return Err(Error::AmbientMismatch {
                left: self.e.len(),
                right: other.e.len(),
            });
        }
        Ok(self.h * other.h - self.e.iter().zip(&other.e).map(|(a, b)| a * b).sum::<i64>())
    }

    /// `3h - e_1 - ... - e_N`.
    pub fn canonical(n: usize) -> Self {
        AmbientClass {
            h: 3,
            e: vec![-1; n],
        }
    }

    pub fn hyperplane(n: usize) -> Self {
        AmbientClass {
            h: 1,
            e: vec![0; n],
        }
    }
}

impl fmt::Display for AmbientClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = vec![(self.h, "h".into())];
        terms.extend(
            self.e
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, format!("e{}", i + 1))),
        );
        let mut out = String::new();
        for (c, name) in terms.into_iter().filter(|(c, _)| *c != 0) {
            let sign = if c < 0 { "-" } else { "+" };
            let mag = if c.abs() == 1 {
                String::new()
            } else {
                c.abs().to_string()
            };
            if out.is_empty() {
                out = format!("{}{mag}{name}", if c < 0 { "-" } else { "" });
            } else {
                out.push_str(&format!(" {sign} {mag}{name}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

pub fn pairing(x: &AmbientClass, y: &AmbientClass) -> Result<i64> {
    x.pairing(y)
}

pub fn gram_matrix(classes: &[AmbientClass]) -> Result<IntMatrix> {
    let n = classes.len();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[i][j] = classes[i].pairing(&classes[j])?;
        }
    }
    IntMatrix::from_rows(&rows)
}

/// Euler characteristic and signature after cutting out one piece and gluing in
/// another along a rational homology sphere.
pub fn glue_invariants(ambient: (i64, i64), removed: (i64, i64), glued: (i64, i64)) -> (i64, i64) {
    (
        ambient.0 - removed.0 + glued.0,
        ambient.1 - removed.1 + glued.1,
    )
}

/// An even unimodular form has signature divisible by 8, and for a smooth
/// closed spin 4-manifold by 16. A signature not divisible by 16 therefore
/// forces an odd form in the settings where it is used.
pub fn odd_form_forced(sigma: i64) -> bool {
    sigma % 16 != 0
}
