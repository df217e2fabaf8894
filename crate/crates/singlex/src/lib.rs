//! Pronunciation analysis and lexicon adaptation for sung utterances.
//!
//! Singing alters how words are pronounced: word-final consonants get
//! dropped, vowels stretch across notes, and recognizers built on speech
//! dictionaries misread both. This crate provides the pieces for measuring
//! and modelling those effects:
//!
//! - [`phoneset`]: the closed phoneme inventory and its phonetic categories.
//! - [`lexicon`]: CMU-format pronunciation dictionaries, phonemization, and
//!   word queries.
//! - [`align`]: Levenshtein alignment with a deterministic traceback,
//!   generic over phonemes, words, or characters.
//! - [`confusion`]: per-phoneme confidence scores, confusion sets, and the
//!   category confusion matrix accumulated over aligned utterances.
//! - [`adapt`]: singing-adapted lexicon generation (final-consonant drop,
//!   vowel extension, and their combination).
//! - [`score`]: word/character error rates with substitution, insertion,
//!   and deletion breakdowns, plus word-subset and vowel error analyses.
//! - [`cli`]: the `singlex` command-line tool binding it all together.
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod adapt;
pub mod align;
pub mod cli;
pub mod confusion;
pub mod error;
pub mod lexicon;
pub mod phoneset;
pub mod score;

pub use error::{Error, Result};
pub use phoneset::{PhoneSet, Phoneme, PhonemeCategory, PhonemeKind};
