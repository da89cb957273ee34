//! Weyl group elements and cofinite quotient-closed subcategories of
//! representations of an acyclic quiver.
//!
//! An element `w` of the Weyl group corresponds to the subcategory obtained
//! by removing the preprojective modules that sit under the leftmost reduced
//! subword of `w` in `c^inf = (s_1 ... s_n)(s_1 ... s_n)...`. The crate
//! computes that dictionary and checks it against independent brute-force
//! models: explicit representations over a prime field ([`repkit`]) and the
//! ideals `I_w` of the preprojective algebra ([`preproj`]).

pub mod antimatroid;
pub mod arquiver;
pub mod fp;
pub mod grassmann;
pub mod intmat;
pub mod leftmost;
pub mod preproj;
pub mod quiver;
pub mod repkit;
pub mod sortable;
pub mod verify;
pub mod weyl;
pub mod word;

pub use intmat::IntMatrix;
pub use leftmost::{PositionList, PreprojIndex, SubcategorySpec};
pub use quiver::Quiver;
pub use weyl::{WeylElement, WeylGroup};
pub use word::Word;
