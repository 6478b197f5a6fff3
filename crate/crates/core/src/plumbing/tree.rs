use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::group::AbelianGroup;
use super::matrix::IntMatrix;
use super::signature::signature_exact;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: i64,
    pub framing: i64,
}

/// Disk bundles over spheres plumbed along a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTree", into = "RawTree")]
pub struct PlumbingTree {
    vertices: Vec<Vertex>,
    edges: Vec<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct RawTree {
    vertices: Vec<Vertex>,
    edges: Vec<[i64; 2]>,
}

impl TryFrom<RawTree> for PlumbingTree {
    type Error = Error;
    fn try_from(raw: RawTree) -> Result<Self> {
        PlumbingTree::new(
            raw.vertices,
            raw.edges.into_iter().map(|[a, b]| (a, b)).collect(),
        )
    }
}

impl From<PlumbingTree> for RawTree {
    fn from(t: PlumbingTree) -> Self {
        RawTree {
            vertices: t.vertices,
            edges: t.edges.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeInvariants {
    pub chi: i64,
    pub sigma: i64,
    #[serde(serialize_with = "crate::as_decimal")]
    pub det: BigInt,
    pub h1: AbelianGroup,
}

impl std::fmt::Display for TreeInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "chi={} sigma={} det={} H1={}",
            self.chi, self.sigma, self.det, self.h1
        )
    }
}

impl PlumbingTree {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(i64, i64)>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Malformed("plumbing tree has no vertices".into()));
        }
        let ids: BTreeSet<i64> = vertices.iter().map(|v| v.id).collect();
        if ids.len() != vertices.len() {
            return Err(Error::Malformed("duplicate vertex id".into()));
        }
        if edges.len() + 1 != vertices.len() {
            return Err(Error::Malformed(format!(
                "{} edges on {} vertices is not a tree",
                edges.len(),
                vertices.len()
            )));
        }
        let mut adj: BTreeMap<i64, Vec<i64>> = ids.iter().map(|&i| (i, Vec::new())).collect();
        for &(a, b) in &edges {
            if a == b || !ids.contains(&a) || !ids.contains(&b) {
                return Err(Error::Malformed(format!("bad edge [{a},{b}]")));
            }
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
        let start = vertices[0].id;
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adj[&v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != vertices.len() {
            return Err(Error::Malformed("plumbing graph is disconnected".into()));
        }
        Ok(PlumbingTree { vertices, edges })
    }

    /// Linear plumbing with the given framings, ids `0..n`.
    pub fn chain(framings: &[i64]) -> Result<Self> {
        let vertices = framings
            .iter()
            .enumerate()
            .map(|(i, &framing)| Vertex {
                id: i as i64,
                framing,
            })
            .collect();
        let edges = (1..framings.len() as i64).map(|i| (i - 1, i)).collect();
        PlumbingTree::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(i64, i64)] {
        &self.edges
    }

    /// Framings on the diagonal, 1 for each edge, in vertex order.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let index: BTreeMap<i64, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id, i))
            .collect();
        let mut m = IntMatrix::zeros(self.vertices.len(), self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            m[(i, i)] = BigInt::from(v.framing);
        }
        for (a, b) in &self.edges {
            let (i, j) = (index[a], index[b]);
            m[(i, j)] = BigInt::from(1);
            m[(j, i)] = BigInt::from(1);
        }
        m
    }

    pub fn boundary_h1(&self) -> AbelianGroup {
        AbelianGroup::cokernel(&self.intersection_matrix())
    }

    pub fn invariants(&self) -> TreeInvariants {
        let m = self.intersection_matrix();
        TreeInvariants {
            chi: self.vertices.len() as i64 + 1,
            sigma: signature_exact(&m)
                .expect("intersection forms are symmetric")
                .signature(),
            det: m.determinant().expect("square"),
            h1: AbelianGroup::cokernel(&m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_invariants() {
        let t = PlumbingTree::chain(&[-2, -4, -4, -2]).unwrap();
        assert_eq!(t.invariants().to_string(), "chi=5 sigma=-4 det=45 H1=Z45");
        let t = PlumbingTree::chain(&[-7]).unwrap();
        assert_eq!(
            t.intersection_matrix(),
            IntMatrix::from_rows(&[[-7]]).unwrap()
        );
        assert_eq!(t.boundary_h1(), AbelianGroup::cyclic(7));
    }

    #[test]
    fn star() {
        let v = |id, framing| Vertex { id, framing };
        let t = PlumbingTree::new(
            vec![v(0, -2), v(1, -2), v(2, -2), v(3, -2)],
            vec![(0, 1), (0, 2), (0, 3)],
        )
        .unwrap();
        let m = t.intersection_matrix();
        assert_eq!(
            m.row(0)
                .iter()
                .skip(1)
                .filter(|x| **x == BigInt::from(1))
                .count(),
            3
        );
        // D4 lattice
        assert_eq!(t.boundary_h1().to_string(), "Z2+Z2");
    }

    #[test]
    fn malformed_trees() {
        let v = |id, framing| Vertex { id, framing };
        assert!(PlumbingTree::new(vec![v(0, -2), v(0, -3)], vec![(0, 0)]).is_err());
        assert!(PlumbingTree::new(vec![v(0, -2), v(1, -3)], vec![]).is_err());
        assert!(
            PlumbingTree::new(vec![v(0, -2), v(1, -3), v(2, -2)], vec![(0, 1), (1, 0)]).is_err()
        );
        assert!(PlumbingTree::new(vec![v(0, -2), v(1, -3)], vec![(0, 5)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let json = r#"{"vertices":[{"id":1,"framing":-2},{"id":2,"framing":-4}],"edges":[[1,2]]}"#;
        let t: PlumbingTree = serde_json::from_str(json).unwrap();
        assert_eq!(t.boundary_h1(), AbelianGroup::cyclic(7));
        let back = serde_json::to_string(&t).unwrap();
        assert_eq!(back, json);
        let cyclic = r#"{"vertices":[{"id":1,"framing":-2}],"edges":[[1,1]]}"#;
        assert!(serde_json::from_str::<PlumbingTree>(cyclic).is_err());
    }
}
