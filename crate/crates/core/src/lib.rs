pub mod chainp;
pub mod error;
pub mod fields;
pub mod fpgroup;
pub mod quadform;
pub mod residues;
pub mod suite;
pub mod symbolic;
pub mod wittring;

pub use error::{Error, Result};
pub use fields::{square_class, FieldDesc, FieldElem, Place, SquareClass};
