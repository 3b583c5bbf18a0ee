//! Neologism mining: corpus ingestion and statistics, lemma frequency
//! counting, OOV candidate extraction, derivation and loan-type
//! classification, and an event-sourced expert review stage.

pub mod candidates;
pub mod classify;
pub mod corpus;
pub mod derivation;
pub mod error;
pub mod freqcount;
pub mod labels;
pub mod lexicon;
pub mod loan;
pub mod morphodict;
pub mod resources;
pub mod review;
mod table;

pub use error::{Error, Result};
