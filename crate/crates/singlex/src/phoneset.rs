//! The closed phoneme inventory and its phonetic categories.
//!
//! A [`PhoneSet`] is the single source of truth for which symbols are valid
//! phonemes and which phonetic category each one belongs to. [`Phoneme`]
//! values can only be obtained through a `PhoneSet`, so every phoneme
//! floating around the rest of the pipeline is guaranteed to be a member of
//! some inventory. The default inventory is the 39-symbol stress-free CMU
//! set; alternative inventories load from a plain-text file.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A validated phoneme symbol, e.g. `AE`, `Z`, `NG`.
///
/// Construction goes through [`PhoneSet::phoneme`], which normalizes case,
/// strips lexical-stress digits, and rejects symbols outside the inventory.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phoneme(Box<str>);

impl Phoneme {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Phoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Phoneme {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Whether a category groups vowel or consonant phonemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhonemeKind {
    Vowel,
    Consonant,
}

/// The eight phonetic categories partitioning the inventory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhonemeCategory {
    ShortVowel,
    LongVowel,
    Diphthong,
    Plosive,
    Affricate,
    Nasal,
    Fricative,
    Approximant,
}

impl PhonemeCategory {
    /// All categories, in the fixed order used for matrix axes and reports.
    pub const ALL: [PhonemeCategory; 8] = [
        PhonemeCategory::ShortVowel,
        PhonemeCategory::LongVowel,
        PhonemeCategory::Diphthong,
        PhonemeCategory::Plosive,
        PhonemeCategory::Affricate,
        PhonemeCategory::Nasal,
        PhonemeCategory::Fricative,
        PhonemeCategory::Approximant,
    ];

    pub fn kind(self) -> PhonemeKind {
        match self {
            PhonemeCategory::ShortVowel
            | PhonemeCategory::LongVowel
            | PhonemeCategory::Diphthong => PhonemeKind::Vowel,
            _ => PhonemeKind::Consonant,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PhonemeCategory::ShortVowel => "ShortVowel",
            PhonemeCategory::LongVowel => "LongVowel",
            PhonemeCategory::Diphthong => "Diphthong",
            PhonemeCategory::Plosive => "Plosive",
            PhonemeCategory::Affricate => "Affricate",
            PhonemeCategory::Nasal => "Nasal",
            PhonemeCategory::Fricative => "Fricative",
            PhonemeCategory::Approximant => "Approximant",
        }
    }

    /// Index of this category within [`PhonemeCategory::ALL`].
    pub fn index(self) -> usize {
        Self::ALL.iter().position(|c| *c == self).unwrap()
    }
}

impl fmt::Display for PhonemeCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PhonemeCategory {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        PhonemeCategory::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or(())
    }
}

use PhonemeCategory::*;

/// The standard 39-symbol CMU inventory, grouped by category.
const CMU_MEMBERS: &[(&str, PhonemeCategory)] = &[
    ("AE", ShortVowel),
    ("AH", ShortVowel),
    ("EH", ShortVowel),
    ("IH", ShortVowel),
    ("UH", ShortVowel),
    ("AA", LongVowel),
    ("AO", LongVowel),
    ("ER", LongVowel),
    ("IY", LongVowel),
    ("UW", LongVowel),
    ("AY", Diphthong),
    ("AW", Diphthong),
    ("EY", Diphthong),
    ("OW", Diphthong),
    ("OY", Diphthong),
    ("B", Plosive),
    ("D", Plosive),
    ("G", Plosive),
    ("K", Plosive),
    ("P", Plosive),
    ("T", Plosive),
    ("CH", Affricate),
    ("JH", Affricate),
    ("M", Nasal),
    ("N", Nasal),
    ("NG", Nasal),
    ("DH", Fricative),
    ("F", Fricative),
    ("HH", Fricative),
    ("S", Fricative),
    ("SH", Fricative),
    ("TH", Fricative),
    ("V", Fricative),
    ("Z", Fricative),
    ("ZH", Fricative),
    ("L", Approximant),
    ("R", Approximant),
    ("W", Approximant),
    ("Y", Approximant),
];

/// An immutable phoneme inventory with per-symbol category assignments.
#[derive(Debug, Clone)]
pub struct PhoneSet {
    members: Vec<(Phoneme, PhonemeCategory)>,
    index: HashMap<Box<str>, usize>,
}

impl PhoneSet {
    /// The built-in default: the 39-phoneme stress-free CMU set.
    pub fn cmu() -> Self {
        let mut members = Vec::with_capacity(CMU_MEMBERS.len());
        let mut index = HashMap::with_capacity(CMU_MEMBERS.len());
        for (i, (sym, cat)) in CMU_MEMBERS.iter().enumerate() {
            members.push((Phoneme((*sym).into()), *cat));
            index.insert((*sym).into(), i);
        }
        PhoneSet { members, index }
    }

    /// Loads an inventory from the plain-text format: one `SYMBOL<TAB>CATEGORY`
    /// entry per line, `#` starting a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut members = Vec::new();
        let mut index = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let symbol = fields.next().unwrap().to_uppercase();
            let cat_name = fields.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("expected 'SYMBOL<TAB>CATEGORY', got '{line}'"),
            })?;
            if let Some(extra) = fields.next() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("unexpected trailing field '{extra}'"),
                });
            }
            let category = PhonemeCategory::from_str(cat_name).map_err(|_| Error::UnknownCategory {
                name: cat_name.to_string(),
                line: lineno,
            })?;
            if index.contains_key(symbol.as_str()) {
                return Err(Error::DuplicatePhoneme {
                    symbol,
                    line: lineno,
                });
            }
            index.insert(symbol.clone().into_boxed_str(), members.len());
            members.push((Phoneme(symbol.into_boxed_str()), category));
        }
        if members.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "phone set file contains no entries".to_string(),
            });
        }
        Ok(PhoneSet { members, index })
    }

    pub fn from_reader(reader: impl BufRead) -> Result<Self> {
        let mut text = String::new();
        let mut reader = reader;
        reader.read_to_string(&mut text)?;
        Self::parse(&text)
    }

    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_reader(BufReader::new(fs::File::open(path)?))
    }

    /// Validates a token as a member of this set and returns it as a
    /// [`Phoneme`]. Tokens are uppercased and lexical-stress digits 0-2 on
    /// vowel symbols (`AH0`) are stripped.
    pub fn phoneme(&self, token: &str) -> Result<Phoneme> {
        self.phoneme_at(token, None)
    }

    pub(crate) fn phoneme_at(&self, token: &str, line: Option<usize>) -> Result<Phoneme> {
        let upper = token.to_uppercase();
        if let Some(&i) = self.index.get(upper.as_str()) {
            return Ok(self.members[i].0.clone());
        }
        // Stress digit: valid only when the remaining base symbol is a vowel.
        if let Some(base) = upper.strip_suffix(['0', '1', '2']) {
            if let Some(&i) = self.index.get(base) {
                if self.members[i].1.kind() == PhonemeKind::Vowel {
                    return Ok(self.members[i].0.clone());
                }
            }
        }
        Err(Error::UnknownPhoneme {
            symbol: token.to_string(),
            line,
        })
    }

    /// Convenience: validates a whitespace-separated token string as a
    /// phoneme sequence, e.g. `"AE N D"`.
    pub fn sequence(&self, tokens: &str) -> Result<Vec<Phoneme>> {
        tokens.split_whitespace().map(|t| self.phoneme(t)).collect()
    }

    pub fn category_of(&self, p: &Phoneme) -> Result<PhonemeCategory> {
        self.index
            .get(p.as_str())
            .map(|&i| self.members[i].1)
            .ok_or_else(|| Error::UnknownPhoneme {
                symbol: p.as_str().to_string(),
                line: None,
            })
    }

    pub fn is_vowel(&self, p: &Phoneme) -> Result<bool> {
        Ok(self.category_of(p)?.kind() == PhonemeKind::Vowel)
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.index.contains_key(symbol)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in inventory order.
    pub fn iter(&self) -> impl Iterator<Item = (&Phoneme, PhonemeCategory)> {
        self.members.iter().map(|(p, c)| (p, *c))
    }
}
