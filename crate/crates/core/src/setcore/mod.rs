//! Sets, uniform families, and isomorphism canonicalization.

mod canon;
mod element;
mod family;

pub use canon::{
    canonical_code, canonicalize, canonicalize_with_cap, is_canonical, is_isomorphic,
    CanonicalForm, DEFAULT_PERMUTATION_CAP,
};
pub use element::{union_all, ElementSet, Elements, Subsets, MAX_LABEL};
pub use family::Family;
