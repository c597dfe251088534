//! Exact arithmetic in a monogenic number field.

pub mod element;
pub mod enumerate;
pub mod field;
pub mod prime;
pub mod roots;

pub use element::FieldElement;
pub use enumerate::{enumerate_box, BoxSlice, HeightBox};
pub use field::{Irreducibility, NumberField};
pub use prime::PrimePlace;
