//! Pronunciation dictionaries: parsing, querying, phonemization, and
//! serialization in the CMU text format.
//!
//! A [`Lexicon`] is an ordered word-to-pronunciations map validated against a
//! [`PhoneSet`]. Phonemization looks up the first listed pronunciation of
//! each word, which stands in for extracting the decoder's chosen path
//! through a lexicon transducer.

use std::collections::BTreeSet;
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::phoneset::{PhoneSet, Phoneme};

/// How a pronunciation entered the lexicon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum VariantOrigin {
    /// Listed in the source dictionary.
    #[default]
    Base,
    /// Generated by dropping a word-final consonant.
    ConsonantDrop,
    /// Generated by extending a vowel occurrence.
    VowelExtend,
}

impl VariantOrigin {
    pub fn name(self) -> &'static str {
        match self {
            VariantOrigin::Base => "Base",
            VariantOrigin::ConsonantDrop => "ConsonantDrop",
            VariantOrigin::VowelExtend => "VowelExtend",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        match name {
            "Base" => Some(VariantOrigin::Base),
            "ConsonantDrop" => Some(VariantOrigin::ConsonantDrop),
            "VowelExtend" => Some(VariantOrigin::VowelExtend),
            _ => None,
        }
    }
}

/// A non-empty phoneme sequence tagged with its origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pronunciation {
    phones: Vec<Phoneme>,
    origin: VariantOrigin,
}

impl Pronunciation {
    pub(crate) fn new(phones: Vec<Phoneme>, origin: VariantOrigin) -> Self {
        debug_assert!(!phones.is_empty());
        Pronunciation { phones, origin }
    }

    pub fn phones(&self) -> &[Phoneme] {
        &self.phones
    }

    pub fn origin(&self) -> VariantOrigin {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.phones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phones.is_empty()
    }

    /// Space-joined symbols, e.g. `"AE N D"`.
    pub fn to_text(&self) -> String {
        self.phones
            .iter()
            .map(Phoneme::as_str)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// One word with its ordered pronunciations. The first is always Base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    word: String,
    prons: Vec<Pronunciation>,
}

impl LexiconEntry {
    pub fn word(&self) -> &str {
        &self.word
    }

    pub fn prons(&self) -> &[Pronunciation] {
        &self.prons
    }

    /// Pronunciations carrying the Base tag.
    pub fn base_prons(&self) -> impl Iterator<Item = &Pronunciation> {
        self.prons
            .iter()
            .filter(|p| p.origin() == VariantOrigin::Base)
    }

    fn has_phones(&self, phones: &[Phoneme]) -> bool {
        self.prons.iter().any(|p| p.phones() == phones)
    }
}

/// Policy for words missing from the lexicon during phonemization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OovPolicy {
    /// Fail on the first out-of-vocabulary word.
    Strict,
    /// Skip out-of-vocabulary words and report them in the result.
    Skip,
}

/// Result of phonemizing a word sequence: the concatenated phones, a map
/// from each phone position back to its source word index, and any words
/// skipped under [`OovPolicy::Skip`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phonemization {
    pub phones: Vec<Phoneme>,
    pub word_of: Vec<usize>,
    pub skipped: Vec<(usize, String)>,
}

/// Normalizes a word for dictionary keys and scoring: uppercase, punctuation
/// stripped except internal apostrophes.
pub fn normalize_word(raw: &str) -> String {
    let kept: String = raw
        .chars()
        .filter(|c| c.is_alphanumeric() || *c == '\'')
        .flat_map(char::to_uppercase)
        .collect();
    kept.trim_matches('\'').to_string()
}

/// An ordered pronunciation dictionary validated against a phone set.
#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: IndexMap<String, LexiconEntry>,
    phone_set: Arc<PhoneSet>,
}

impl Lexicon {
    pub fn new(phone_set: Arc<PhoneSet>) -> Self {
        Lexicon {
            entries: IndexMap::new(),
            phone_set,
        }
    }

    /// Parses CMU-dictionary text: `WORD  PH1 PH2 ...`, alternates as
    /// `WORD(2)`, full-line comments starting with `;;;`, stress digits
    /// stripped. A trailing `;; variant=<tag>` comment restores a variant
    /// tag written by [`Lexicon::to_cmu_text`]; other trailing `;;` comments
    /// are ignored.
    pub fn parse(text: &str, phone_set: Arc<PhoneSet>) -> Result<Self> {
        let mut lex = Lexicon::new(phone_set);
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let mut line = raw.trim();
            if line.is_empty() || line.starts_with(";;;") {
                continue;
            }
            let mut origin = VariantOrigin::Base;
            if let Some(pos) = line.find(";;") {
                let comment = line[pos + 2..].trim();
                line = line[..pos].trim();
                if let Some(tag) = comment.strip_prefix("variant=") {
                    origin = VariantOrigin::from_name(tag.trim()).ok_or_else(|| Error::Parse {
                        line: lineno,
                        message: format!("unknown variant tag '{}'", tag.trim()),
                    })?;
                }
                if line.is_empty() {
                    continue;
                }
            }
            let mut fields = line.split_whitespace();
            let word_field = fields.next().unwrap();
            let word = normalize_word(strip_alternate_marker(word_field));
            if word.is_empty() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("word field '{word_field}' is empty after normalization"),
                });
            }
            let mut phones = Vec::new();
            for token in fields {
                phones.push(lex.phone_set.phoneme_at(token, Some(lineno))?);
            }
            if phones.is_empty() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("no pronunciation given for '{word}'"),
                });
            }
            lex.push_pron(word, phones, origin);
        }
        Ok(lex)
    }

    pub fn from_reader(mut reader: impl BufRead, phone_set: Arc<PhoneSet>) -> Result<Self> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        Self::parse(&text, phone_set)
    }

    pub fn open(path: impl AsRef<Path>, phone_set: Arc<PhoneSet>) -> Result<Self> {
        Self::from_reader(BufReader::new(fs::File::open(path)?), phone_set)
    }

    /// Adds a pronunciation, normalizing the word and validating every
    /// phoneme against the phone set. Duplicate phone sequences for the same
    /// word are dropped; returns whether the pronunciation was added.
    pub fn insert_pron(
        &mut self,
        word: &str,
        phones: Vec<Phoneme>,
        origin: VariantOrigin,
    ) -> Result<bool> {
        let word = normalize_word(word);
        if word.is_empty() {
            return Err(Error::InvalidConfig(format!(
                "word '{word}' is empty after normalization"
            )));
        }
        if phones.is_empty() {
            return Err(Error::InvalidConfig(format!(
                "empty pronunciation for '{word}'"
            )));
        }
        for p in &phones {
            if !self.phone_set.contains(p.as_str()) {
                return Err(Error::UnknownPhoneme {
                    symbol: p.as_str().to_string(),
                    line: None,
                });
            }
        }
        Ok(self.push_pron(word, phones, origin))
    }

    /// Adds a Base pronunciation. See [`Lexicon::insert_pron`].
    pub fn insert(&mut self, word: &str, phones: Vec<Phoneme>) -> Result<bool> {
        self.insert_pron(word, phones, VariantOrigin::Base)
    }

    fn push_pron(&mut self, word: String, phones: Vec<Phoneme>, origin: VariantOrigin) -> bool {
        let entry = self
            .entries
            .entry(word.clone())
            .or_insert_with(|| LexiconEntry {
                word,
                prons: Vec::new(),
            });
        if entry.has_phones(&phones) {
            return false;
        }
        entry.prons.push(Pronunciation::new(phones, origin));
        true
    }

    /// Serializes back to CMU text. Entry and pronunciation order are
    /// preserved; alternates are written as `WORD(2)`, `WORD(3)`, ... When
    /// `emit_variant_tags` is set, non-Base pronunciations carry a trailing
    /// `;; variant=<tag>` comment.
    pub fn to_cmu_text(&self, emit_variant_tags: bool) -> String {
        let mut out = String::new();
        for entry in self.entries.values() {
            for (k, pron) in entry.prons().iter().enumerate() {
                if k == 0 {
                    out.push_str(entry.word());
                } else {
                    out.push_str(&format!("{}({})", entry.word(), k + 1));
                }
                out.push_str("  ");
                out.push_str(&pron.to_text());
                if emit_variant_tags && pron.origin() != VariantOrigin::Base {
                    out.push_str(&format!(" ;; variant={}", pron.origin().name()));
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn get(&self, word: &str) -> Option<&LexiconEntry> {
        self.entries.get(&normalize_word(word))
    }

    pub fn contains_word(&self, word: &str) -> bool {
        self.get(word).is_some()
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn phone_set(&self) -> &Arc<PhoneSet> {
        &self.phone_set
    }

    /// Total pronunciation count across all entries.
    pub fn pron_count(&self) -> usize {
        self.entries.values().map(|e| e.prons().len()).sum()
    }

    /// Concatenates the first listed pronunciation of each word, tracking
    /// which word index each phone came from.
    pub fn phonemize<S: AsRef<str>>(
        &self,
        words: &[S],
        policy: OovPolicy,
    ) -> Result<Phonemization> {
        let mut phones = Vec::new();
        let mut word_of = Vec::new();
        let mut skipped = Vec::new();
        for (idx, raw) in words.iter().enumerate() {
            let word = normalize_word(raw.as_ref());
            match self.entries.get(&word) {
                Some(entry) => {
                    let pron = &entry.prons()[0];
                    phones.extend(pron.phones().iter().cloned());
                    word_of.extend(std::iter::repeat_n(idx, pron.len()));
                }
                None => match policy {
                    OovPolicy::Strict => return Err(Error::OovWord { word }),
                    OovPolicy::Skip => skipped.push((idx, word)),
                },
            }
        }
        Ok(Phonemization {
            phones,
            word_of,
            skipped,
        })
    }

    /// Words whose first listed pronunciation ends in one of `finals`.
    pub fn words_ending_with(&self, finals: &BTreeSet<Phoneme>) -> BTreeSet<String> {
        self.entries
            .values()
            .filter(|e| {
                e.prons()[0]
                    .phones()
                    .last()
                    .is_some_and(|p| finals.contains(p))
            })
            .map(|e| e.word().to_string())
            .collect()
    }
}

/// Strips a trailing alternate-pronunciation marker such as `(2)`.
fn strip_alternate_marker(word_field: &str) -> &str {
    if let Some(open) = word_field.rfind('(') {
        let inner = &word_field[open + 1..];
        if let Some(digits) = inner.strip_suffix(')') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                return &word_field[..open];
            }
        }
    }
    word_field
}
