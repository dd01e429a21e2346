//! Braid groups and finitely presented groups: Garside normal forms,
//! Tietze moves, abelianization, coset enumeration and braid extraction
//! from moving points.

pub mod braid;
pub mod fpgroup;
pub mod garside;
pub mod perm;
pub mod presentations;
pub mod trajectory;

pub use braid::{BraidError, BraidWord, DeltaVariant, FullTwistVariant, PureGenerator};
pub use garside::{braids_equal, normal_form, NormalForm, SimpleElement};
pub use perm::Permutation;
