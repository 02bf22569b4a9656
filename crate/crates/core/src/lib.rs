//! Abstract, bipolar and tripolar argumentation with epistemic probabilities,
//! constellation distributions and dialogue survey analysis.

pub mod bipolar;
pub mod constellation;
pub mod dung;
pub mod epistemic;
pub mod error;
pub mod format;
pub mod rational;
pub mod survey;
pub mod tripolar;

pub use dung::{ArgumentFramework, Extension, IndirectRelation, Label, Labeling, Semantics};
pub use error::{Error, Result};
pub use rational::Rational;
