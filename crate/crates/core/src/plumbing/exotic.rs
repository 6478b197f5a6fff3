//! Homology classes of the eleven-sphere configuration in `CP^2 # 16(-CP^2)`,
//! with the checks performed on them.
//!
//! The classes ship as data. A correction to any class is a change to
//! [`dataset`] only.

use num_bigint::BigInt;
use serde::Serialize;

use super::ambient::gram_matrix;
use super::ambient::{glue_invariants, odd_form_forced, AmbientClass};
use super::group::{boundary_class_order, AbelianGroup};
use super::matrix::IntMatrix;
use super::signature::signature_exact;

pub const DATASET_VERSION: u32 = 1;
pub const AMBIENT_RANK: usize = 16;

#[derive(Clone, Debug, Serialize)]
pub struct Dataset {
    pub version: u32,
    /// `u_1 .. u_11`
    pub spheres: Vec<AmbientClass>,
    pub alpha: AmbientClass,
    pub canonical: AmbientClass,
    pub hyperplane: AmbientClass,
}

fn class(h: i64, terms: &[(usize, i64)]) -> AmbientClass {
    AmbientClass::from_terms(AMBIENT_RANK, h, terms).expect("indices within 1..=16")
}

fn run(from: usize, to: usize, c: i64) -> Vec<(usize, i64)> {
    (from..=to).map(|i| (i, c)).collect()
}

pub fn dataset() -> Dataset {
    let u1 = {
        let mut t = vec![(1, -1)];
        t.extend(run(2, 9, -2));
        t.extend([(11, -2), (12, -2)]);
        t.extend(run(13, 16, -1));
        class(6, &t)
    };
    let u2 = {
        let mut t = run(1, 9, -1);
        t.push((10, -2));
        class(3, &t)
    };
    let u3 = class(0, &[(9, 1), (14, -1), (15, -1), (16, -1)]);
    let u4 = class(0, &[(15, 1), (16, -1)]);
    let chain: Vec<AmbientClass> = (3..=8)
        .rev()
        .map(|i| class(0, &[(i, 1), (i + 1, -1)]))
        .collect();
    let u11 = class(1, &[(1, -1), (2, -1), (3, -1), (13, -1)]);
    let alpha = {
        let mut t = vec![(1, -3), (2, -2)];
        t.extend(run(3, 9, -3));
        t.extend([(10, -2), (11, -1), (12, -2), (13, -2), (14, -3)]);
        class(10, &t)
    };
    let mut spheres = vec![u1, u2, u3, u4];
    spheres.extend(chain);
    spheres.push(u11);
    Dataset {
        version: DATASET_VERSION,
        spheres,
        alpha,
        canonical: AmbientClass::canonical(AMBIENT_RANK),
        hyperplane: AmbientClass::hyperplane(AMBIENT_RANK),
    }
}

/// Checks that must hold exactly.
#[derive(Clone, Debug, Serialize)]
pub struct AssertReport {
    pub dataset_version: u32,
    pub alpha_squared: i64,
    pub canonical_alpha: i64,
    pub hyperplane_alpha: i64,
    pub alpha_spheres: Vec<i64>,
    pub glued: (i64, i64),
    pub odd_form: bool,
    pub failures: Vec<String>,
}

impl AssertReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn assert_report(d: &Dataset) -> AssertReport {
    let p = |x: &AmbientClass, y: &AmbientClass| x.pairing(y).expect("one ambient");
    let alpha_squared = p(&d.alpha, &d.alpha);
    let canonical_alpha = p(&d.canonical, &d.alpha);
    let hyperplane_alpha = p(&d.hyperplane, &d.alpha);
    let alpha_spheres: Vec<i64> = d.spheres.iter().map(|u| p(&d.alpha, u)).collect();
    let glued = glue_invariants((19, -15), (12, -11), (2, -1));
    let mut failures = Vec::new();
    let mut expect = |what: &str, got: i64, want: i64| {
        if got != want {
            failures.push(format!("{what}: got {got}, expected {want}"));
        }
    };
    expect("alpha.alpha", alpha_squared, 2);
    expect("K.alpha", canonical_alpha, -6);
    expect("h.alpha", hyperplane_alpha, 10);
    for (i, &x) in alpha_spheres.iter().enumerate() {
        expect(&format!("alpha.u{}", i + 1), x, 0);
    }
    expect("chi(X)", glued.0, 9);
    expect("sigma(X)", glued.1, -5);
    let odd_form = odd_form_forced(glued.1);
    if !odd_form {
        failures.push("signature divisible by 16".into());
    }
    AssertReport {
        dataset_version: d.version,
        alpha_squared,
        canonical_alpha,
        hyperplane_alpha,
        alpha_spheres,
        glued,
        odd_form,
        failures,
    }
}

/// Gram matrix checks against the expected plumbing data. Mismatches are
/// recorded, not raised.
#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub dataset_version: u32,
    pub diagonal: Vec<i64>,
    pub expected_diagonal: Vec<i64>,
    pub determinant: String,
    pub expected_determinant_abs: i64,
    pub cokernel: AbelianGroup,
    pub signature: i64,
    pub expected_signature: i64,
    pub canonical_on_spheres: Vec<i64>,
    pub canonical_class_order: Option<String>,
    pub expected_class_order: i64,
    /// `(i, j, u_i.u_j)` for off-diagonal pairings outside `{0, 1}`.
    pub offending_pairs: Vec<(usize, usize, i64)>,
    /// Spheres meeting no other sphere.
    pub isolated: Vec<usize>,
    pub mismatches: Vec<String>,
}

pub fn gram_report(d: &Dataset) -> GramReport {
    let g = gram_matrix(&d.spheres).expect("one ambient");
    let n = g.rows();
    let at = |i: usize, j: usize| -> i64 { i64::try_from(&g[(i, j)]).expect("small entries") };
    let diagonal: Vec<i64> = (0..n).map(|i| at(i, i)).collect();
    let expected_diagonal = vec![-9, -4, -4, -2, -2, -2, -2, -2, -2, -2, -3];
    let det = g.determinant().expect("square");
    let signature = signature_exact(&g).expect("symmetric").signature();
    let canonical_on_spheres: Vec<i64> = d
        .spheres
        .iter()
        .map(|u| d.canonical.pairing(u).expect("one ambient"))
        .collect();
    let kv: Vec<BigInt> = canonical_on_spheres
        .iter()
        .map(|&x| BigInt::from(x))
        .collect();
    let canonical_class_order = boundary_class_order(&g, &kv).ok().map(|o| o.to_string());

    let mut offending_pairs = Vec::new();
    let mut isolated = Vec::new();
    for i in 0..n {
        let mut touches = false;
        for j in 0..n {
            if i == j {
                continue;
            }
            let x = at(i, j);
            touches |= x != 0;
            if j > i && x != 0 && x != 1 {
                offending_pairs.push((i + 1, j + 1, x));
            }
        }
        if !touches {
            isolated.push(i + 1);
        }
    }

    let mut mismatches = Vec::new();
    for (i, (a, b)) in diagonal.iter().zip(&expected_diagonal).enumerate() {
        if a != b {
            mismatches.push(format!("u{}.u{} = {a}, expected {b}", i + 1, i + 1));
        }
    }
    if det.magnitude() != &num_bigint::BigUint::from(1445u32) {
        mismatches.push(format!("det = {det}, expected +-1445"));
    }
    if signature != -11 {
        mismatches.push(format!("signature = {signature}, expected -11"));
    }
    match &canonical_class_order {
        Some(o) if o == "85" => {}
        Some(o) => mismatches.push(format!("order of K restriction = {o}, expected 85")),
        None => mismatches.push("Gram matrix singular; no class order".into()),
    }
    for &(i, j, x) in &offending_pairs {
        mismatches.push(format!("u{i}.u{j} = {x}, not a plumbing intersection"));
    }
    for &i in &isolated {
        mismatches.push(format!("u{i} meets no other sphere"));
    }
    GramReport {
        dataset_version: d.version,
        diagonal,
        expected_diagonal,
        determinant: det.to_string(),
        expected_determinant_abs: 1445,
        cokernel: AbelianGroup::cokernel(&g),
        signature,
        expected_signature: -11,
        canonical_on_spheres,
        canonical_class_order,
        expected_class_order: 85,
        offending_pairs,
        isolated,
        mismatches,
    }
}

impl std::fmt::Display for GramReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "dataset v{}", self.dataset_version)?;
        writeln!(
            f,
            "diagonal {:?} (expected {:?})",
            self.diagonal, self.expected_diagonal
        )?;
        writeln!(
            f,
            "det {} (expected +-{})",
            self.determinant, self.expected_determinant_abs
        )?;
        writeln!(f, "cokernel {}", self.cokernel)?;
        writeln!(
            f,
            "signature {} (expected {})",
            self.signature, self.expected_signature
        )?;
        writeln!(f, "K.u {:?}", self.canonical_on_spheres)?;
        writeln!(
            f,
            "order of K restriction {} (expected {})",
            self.canonical_class_order.as_deref().unwrap_or("undefined"),
            self.expected_class_order
        )?;
        for m in &self.mismatches {
            writeln!(f, "mismatch: {m}")?;
        }
        Ok(())
    }
}

/// The Gram matrix of the dataset, for callers that want the raw form.
pub fn sphere_gram(d: &Dataset) -> IntMatrix {
    gram_matrix(&d.spheres).expect("one ambient")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairings_hold() {
        let r = assert_report(&dataset());
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.alpha_spheres, vec![0; 11]);
        assert!(r.odd_form);
    }

    #[test]
    fn gram_report_is_deterministic() {
        let d = dataset();
        let a = gram_report(&d);
        let b = gram_report(&d);
        assert_eq!(a.to_string(), b.to_string());
        assert_eq!(a.diagonal, a.expected_diagonal);
        assert_eq!(a.signature, -11);
        assert_eq!(
            a.canonical_on_spheres,
            vec![-7, -2, -2, 0, 0, 0, 0, 0, 0, 0, -1]
        );
    }
}
