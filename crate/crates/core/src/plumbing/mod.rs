//! Integer lattices behind plumbings: intersection forms, Smith normal form,
//! boundary homology, group presentations and ambient pairings.

pub mod ambient;
pub mod exotic;
pub mod group;
pub mod matrix;
pub mod presentation;
pub mod signature;
pub mod snf;
pub mod tree;

pub use ambient::{glue_invariants, gram_matrix, odd_form_forced, pairing, AmbientClass};
pub use group::{boundary_class_order, AbelianGroup};
pub use matrix::IntMatrix;
pub use presentation::{meridian_presentation, Presentation};
pub use signature::{leading_minors, signature_exact, Inertia};
pub use snf::{smith_normal_form, SmithForm};
pub use tree::{PlumbingTree, TreeInvariants, Vertex};
