use serde::{Deserialize, Serialize};

use super::group::AbelianGroup;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Group presentation; a relator is a word of signed 1-based generator indices
/// (`-3` is the inverse of generator 3).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct Presentation {
    generators: usize,
    relators: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct RawPresentation {
    generators: usize,
    relators: Vec<Vec<i64>>,
}

impl TryFrom<RawPresentation> for Presentation {
    type Error = Error;
    fn try_from(raw: RawPresentation) -> Result<Self> {
        Presentation::new(raw.generators, raw.relators)
    }
}

impl From<Presentation> for RawPresentation {
    fn from(p: Presentation) -> Self {
        RawPresentation {
            generators: p.generators,
            relators: p.relators,
        }
    }
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Vec<i64>>) -> Result<Self> {
        for r in &relators {
            for &x in r {
                if x == 0 || x.unsigned_abs() as usize > generators {
                    return Err(Error::Malformed(format!(
                        "generator index {x} out of range 1..={generators}"
                    )));
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Vec<i64>] {
        &self.relators
    }

    /// Exponent sums: one row per relator, one column per generator.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators);
        for (i, r) in self.relators.iter().enumerate() {
            for &x in r {
                let j = x.unsigned_abs() as usize - 1;
                m[(i, j)] += x.signum();
            }
        }
        m
    }

    pub fn abelianization(&self) -> AbelianGroup {
        AbelianGroup::cokernel(&self.exponent_matrix().transpose())
    }
}

/// The meridian presentation with `n + 3` generators whose `n = 9` member has
/// twelve generators and abelianizes to `Z17`.
pub fn meridian_presentation(n: usize) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "pattern needs n >= 2, got {n}"
        )));
    }
    let n = n as i64;
    let run = |k: i64| (1..=k).collect::<Vec<i64>>();
    let mut rel = Vec::new();
    for i in 1..n {
        rel.push(vec![i, n + 2, n + 3]);
    }
    rel.push(vec![n, n + 1, n + 2, n + 3]);
    rel.push(run(n));
    rel.push(run(n + 2));
    let mut r = run(n - 1);
    r.push(n + 1);
    rel.push(r);
    let mut r = run(n + 1);
    r.push(n + 3);
    rel.push(r);
    Presentation::new(n as usize + 3, rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_generators_give_z17() {
        let p = meridian_presentation(9).unwrap();
        assert_eq!(p.generators(), 12);
        assert_eq!(p.relators().len(), 13);
        assert_eq!(p.relators()[0], vec![1, 11, 12]);
        assert_eq!(p.relators()[8], vec![9, 10, 11, 12]);
        assert_eq!(p.abelianization(), AbelianGroup::cyclic(17));
    }

    #[test]
    fn trivial_and_free() {
        let p = Presentation::new(1, vec![vec![1]]).unwrap();
        assert!(p.abelianization().is_trivial());
        let p = Presentation::new(2, vec![vec![1, 2, -1, -2]]).unwrap();
        assert_eq!(p.abelianization().to_string(), "Z+Z");
        assert!(Presentation::new(2, vec![vec![3]]).is_err());
        assert!(Presentation::new(2, vec![vec![0]]).is_err());
    }

    #[test]
    fn json_format() {
        let p: Presentation =
            serde_json::from_str(r#"{"generators":2,"relators":[[1,1,1],[2]]}"#).unwrap();
        assert_eq!(p.abelianization(), AbelianGroup::cyclic(3));
    }
}
