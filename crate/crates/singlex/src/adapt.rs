//! Singing-adapted lexicon generation.
//!
//! Two rules extend a speech dictionary with alternative pronunciations for
//! singing, each applied to Base pronunciations only:
//!
//! - final-consonant drop: a word whose pronunciation ends in one of the
//!   configured consonants (default D, T, DH, Z) gains a copy with that
//!   final phoneme removed;
//! - vowel extension: for every vowel position, the word gains a copy with
//!   that single vowel repeated in place, modelling vowels stretched across
//!   notes.
//!
//! The three variant modes produce the L1 (drop only), L2 (extension only),
//! and L3 (both, plus extensions of the dropped forms) lexicons. Because
//! variants are generated from Base pronunciations and tagged with their
//! origin, adapting an already-adapted lexicon is a no-op.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lexicon::{Lexicon, LexiconEntry, Pronunciation, VariantOrigin};
use crate::phoneset::{PhoneSet, Phoneme};

/// Which extension rules to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantMode {
    /// L1: final-consonant drop only.
    ConsonantDrop,
    /// L2: vowel extension only.
    VowelExtend,
    /// L3: both rules, plus vowel extension of the dropped variants.
    Combined,
}

/// Validated adaptation settings.
#[derive(Debug, Clone)]
pub struct AdaptationConfig {
    phone_set: Arc<PhoneSet>,
    drop_finals: BTreeSet<Phoneme>,
    max_vowel_repeat: usize,
    variant_mode: VariantMode,
    cross_compose: bool,
}

impl AdaptationConfig {
    /// Builds a config, rejecting vowels in `drop_finals` and a repeat count
    /// of zero. `max_vowel_repeat` is the total number of copies a vowel is
    /// expanded to; 1 means no extension.
    pub fn new(
        phone_set: Arc<PhoneSet>,
        drop_finals: BTreeSet<Phoneme>,
        max_vowel_repeat: usize,
        variant_mode: VariantMode,
    ) -> Result<Self> {
        if max_vowel_repeat < 1 {
            return Err(Error::InvalidConfig(
                "max_vowel_repeat must be at least 1".to_string(),
            ));
        }
        for p in &drop_finals {
            if phone_set.is_vowel(p)? {
                return Err(Error::InvalidConfig(format!(
                    "drop-final phoneme '{p}' is a vowel"
                )));
            }
        }
        Ok(AdaptationConfig {
            phone_set,
            drop_finals,
            max_vowel_repeat,
            variant_mode,
            cross_compose: true,
        })
    }

    /// The defaults: drop finals {D, T, DH, Z}, vowels extended to two
    /// copies, combined mode.
    pub fn standard(phone_set: Arc<PhoneSet>) -> Result<Self> {
        let finals = ["D", "T", "DH", "Z"]
            .iter()
            .map(|s| phone_set.phoneme(s))
            .collect::<Result<BTreeSet<_>>>()?;
        Self::new(phone_set, finals, 2, VariantMode::Combined)
    }

    /// Enables or disables vowel-extending the consonant-dropped variants in
    /// combined mode (on by default).
    pub fn with_cross_compose(mut self, enabled: bool) -> Self {
        self.cross_compose = enabled;
        self
    }

    pub fn with_mode(mut self, mode: VariantMode) -> Self {
        self.variant_mode = mode;
        self
    }

    pub fn phone_set(&self) -> &Arc<PhoneSet> {
        &self.phone_set
    }

    pub fn drop_finals(&self) -> &BTreeSet<Phoneme> {
        &self.drop_finals
    }

    pub fn max_vowel_repeat(&self) -> usize {
        self.max_vowel_repeat
    }

    pub fn variant_mode(&self) -> VariantMode {
        self.variant_mode
    }

    pub fn cross_compose(&self) -> bool {
        self.cross_compose
    }

    fn is_vowel(&self, p: &Phoneme) -> bool {
        // Phonemes outside this config's set cannot be classified; treat
        // them as non-vowels so they are simply never extended.
        self.phone_set.is_vowel(p).unwrap_or(false)
    }
}

/// Applies the final-consonant-drop rule to every Base pronunciation of the
/// entry. A variant is produced only when the last phoneme is in the drop
/// set and at least one phoneme would remain.
pub fn drop_final_consonant(
    entry: &LexiconEntry,
    cfg: &AdaptationConfig,
) -> Vec<Pronunciation> {
    entry
        .base_prons()
        .filter_map(|pron| drop_final(pron.phones(), cfg))
        .map(|phones| Pronunciation::new(phones, VariantOrigin::ConsonantDrop))
        .collect()
}

fn drop_final(phones: &[Phoneme], cfg: &AdaptationConfig) -> Option<Vec<Phoneme>> {
    if phones.len() < 2 {
        return None;
    }
    let last = phones.last()?;
    if !cfg.drop_finals.contains(last) {
        return None;
    }
    Some(phones[..phones.len() - 1].to_vec())
}

/// Applies the vowel-extension rule to every Base pronunciation of the
/// entry: one variant per vowel position, with that vowel repeated
/// `max_vowel_repeat` times in place. Duplicate results (from adjacent
/// identical vowels) are dropped.
pub fn extend_vowels(entry: &LexiconEntry, cfg: &AdaptationConfig) -> Vec<Pronunciation> {
    let mut seen: Vec<Vec<Phoneme>> = Vec::new();
    for pron in entry.base_prons() {
        for phones in vowel_extensions(pron.phones(), cfg) {
            if !seen.contains(&phones) {
                seen.push(phones);
            }
        }
    }
    seen.into_iter()
        .map(|phones| Pronunciation::new(phones, VariantOrigin::VowelExtend))
        .collect()
}

fn vowel_extensions(phones: &[Phoneme], cfg: &AdaptationConfig) -> Vec<Vec<Phoneme>> {
    if cfg.max_vowel_repeat < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, p) in phones.iter().enumerate() {
        if !cfg.is_vowel(p) {
            continue;
        }
        let mut extended = Vec::with_capacity(phones.len() + cfg.max_vowel_repeat - 1);
        extended.extend_from_slice(&phones[..i]);
        extended.extend(std::iter::repeat_n(p.clone(), cfg.max_vowel_repeat));
        extended.extend_from_slice(&phones[i + 1..]);
        if !out.contains(&extended) {
            out.push(extended);
        }
    }
    out
}

/// Builds the adapted lexicon for the configured mode. Every original
/// pronunciation is preserved; generated variants follow in a fixed order
/// (consonant drops, then vowel extensions, then extensions of the drops),
/// de-duplicated by phone sequence.
pub fn adapt_lexicon(lexicon: &Lexicon, cfg: &AdaptationConfig) -> Lexicon {
    let mut out = Lexicon::new(lexicon.phone_set().clone());
    for entry in lexicon.entries() {
        let mut prons: Vec<Pronunciation> = entry.prons().to_vec();

        let drops = drop_final_consonant(entry, cfg);
        let extensions = extend_vowels(entry, cfg);
        let mut generated: Vec<Pronunciation> = Vec::new();
        match cfg.variant_mode {
            VariantMode::ConsonantDrop => generated.extend(drops),
            VariantMode::VowelExtend => generated.extend(extensions),
            VariantMode::Combined => {
                generated.extend(drops.iter().cloned());
                generated.extend(extensions);
                if cfg.cross_compose {
                    for dropped in &drops {
                        generated.extend(
                            vowel_extensions(dropped.phones(), cfg)
                                .into_iter()
                                .map(|ph| Pronunciation::new(ph, VariantOrigin::VowelExtend)),
                        );
                    }
                }
            }
        }
        for variant in generated {
            if !prons.iter().any(|p| p.phones() == variant.phones()) {
                prons.push(variant);
            }
        }

        for pron in prons {
            let added = out
                .insert_pron(entry.word(), pron.phones().to_vec(), pron.origin())
                .expect("adapted pronunciations are valid by construction");
            debug_assert!(added);
        }
    }
    out
}
