//! Text-analysis core for mining user-perceived human-values violations
//! from app-review corpora.
//!
//! The crate is organised as a small pipeline of pure building blocks:
//!
//! * [`corpus`]: review and app-metadata domain types plus the
//!   informativeness filter.
//! * [`textprep`]: tokenization, Levenshtein spell correction against a
//!   word-frequency list, stopword removal, and Snowball English stemming.
//! * [`sentiment`]: rule-augmented lexicon scoring producing a compound
//!   score in `[-1, 1]` and a tri-class polarity.
//! * [`values`]: the Schwartz values dictionary (10 categories, 50 items)
//!   and keyword matching with per-item probabilities.
//! * [`features`]: POS-pattern app-feature extraction from descriptions
//!   and windowed feature lookup inside reviews.
//! * [`detector`]: the per-review violation decision rule.
//! * [`analytics`]: corpus-level aggregation and truthset evaluation.
//!
//! Everything here is deterministic and side-effect free; file ingestion,
//! report emission, and the CLI live in the companion `revalues` crate.
//! The crate builds without `std` (an allocator is required).
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analytics;
pub mod corpus;
pub mod detector;
pub mod features;
pub mod sentiment;
pub mod textprep;
pub mod values;
