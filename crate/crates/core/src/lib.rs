pub mod chartab;
pub mod cyclotomic;
pub mod error;
pub mod groups;
pub mod lefschetz;
pub mod verify;

pub use cyclotomic::{CyclotomicNumber, Rational};
pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    mod cyclotomic {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/lefschetz.md")]
    mod lefschetz {}
    #[doc = include_str!("../../../book/src/split.md")]
    mod split {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
