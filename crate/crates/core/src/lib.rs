//! Exact character tables of finite permutation groups and the average character degree
//! family of invariants.

pub mod chartab;
pub mod classes;
pub mod constructions;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod export;
pub mod group;
pub mod invariants;
pub mod matrix;
pub mod modp;
pub mod perm;
pub mod structure;
pub mod verify;

pub use chartab::{Character, CharacterTable, ClassFunction};
pub use classes::ClassData;
pub use cyclotomic::CyclotomicValue;
pub use error::{Error, Result};
pub use group::{Group, DEFAULT_ELEMENT_BOUND};
pub use perm::Perm;
