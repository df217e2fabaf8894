//! Word and character error rates with substitution/insertion/deletion
//! breakdowns, plus the word-subset and vowel error analyses.
//!
//! Counts are pooled over utterances before any rate is computed
//! (micro-averaging): each hypothesis utterance is aligned against the
//! reference utterance with the same id, the C/S/I/D counts are summed, and
//! rates come from the totals. The error rate is stored as the exact sum of
//! the substitution, insertion, and deletion rates, so the decomposition
//! holds bit-for-bit. A subset with no reference tokens reports undefined
//! rates rather than zero.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::align::{align, EditCounts, EditOp};
use crate::error::{Error, Result};
use crate::lexicon::{normalize_word, Lexicon};
use crate::phoneset::{PhoneSet, Phoneme};

/// One utterance: a unique id and its token sequence. Tokens may be empty;
/// such utterances score as pure deletions or insertions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Utterance<T> {
    pub id: String,
    pub tokens: Vec<T>,
}

/// Parses transcript text: one utterance per line, `<id> <token> ...`.
/// Tokens are kept verbatim; scoring functions normalize them.
pub fn parse_transcripts(text: &str) -> Result<Vec<Utterance<String>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let id = fields.next().unwrap().to_string();
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateUtteranceId { id });
        }
        out.push(Utterance {
            id,
            tokens: fields.map(str::to_string).collect(),
        });
    }
    Ok(out)
}

/// Parses phoneme transcript text of the same shape, validating every token
/// against the phone set.
pub fn parse_phoneme_transcripts(
    text: &str,
    phone_set: &PhoneSet,
) -> Result<Vec<Utterance<Phoneme>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let id = fields.next().unwrap().to_string();
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateUtteranceId { id });
        }
        let tokens = fields
            .map(|t| phone_set.phoneme_at(t, Some(lineno + 1)))
            .collect::<Result<Vec<_>>>()?;
        out.push(Utterance { id, tokens });
    }
    Ok(out)
}

/// Token-level error report: reference size, pooled counts, and rates as
/// percentages. Rates are `None` when there are no reference tokens.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub n_ref: usize,
    #[serde(flatten)]
    pub counts: EditCounts,
    pub error_rate: Option<f64>,
    pub substitution_rate: Option<f64>,
    pub insertion_rate: Option<f64>,
    pub deletion_rate: Option<f64>,
}

impl ErrorReport {
    /// Builds a report from pooled counts. The error rate is the exact sum
    /// of the three component rates.
    pub fn from_counts(n_ref: usize, counts: EditCounts) -> Self {
        let rate = |x: usize| {
            if n_ref == 0 {
                None
            } else {
                Some(100.0 * x as f64 / n_ref as f64)
            }
        };
        let substitution_rate = rate(counts.substitutions);
        let insertion_rate = rate(counts.insertions);
        let deletion_rate = rate(counts.deletions);
        let error_rate = match (substitution_rate, insertion_rate, deletion_rate) {
            (Some(s), Some(i), Some(d)) => Some(s + i + d),
            _ => None,
        };
        ErrorReport {
            n_ref,
            counts,
            error_rate,
            substitution_rate,
            insertion_rate,
            deletion_rate,
        }
    }

    /// Error rate counting only substitutions and deletions.
    pub fn error_rate_excluding_insertions(&self) -> Option<f64> {
        match (self.substitution_rate, self.deletion_rate) {
            (Some(s), Some(d)) => Some(s + d),
            _ => None,
        }
    }
}

/// Subset error report plus the words that could not be classified because
/// they are missing from the lexicon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetReport {
    #[serde(flatten)]
    pub report: ErrorReport,
    pub oov_words: BTreeSet<String>,
}

fn pair_by_id<'a, T>(
    hyps: &'a [Utterance<T>],
    refs: &'a [Utterance<T>],
) -> Result<Vec<(&'a Utterance<T>, &'a Utterance<T>)>> {
    let mut ref_map: BTreeMap<&str, &Utterance<T>> = BTreeMap::new();
    for r in refs {
        if ref_map.insert(&r.id, r).is_some() {
            return Err(Error::DuplicateUtteranceId { id: r.id.clone() });
        }
    }
    let mut hyp_ids = BTreeSet::new();
    for h in hyps {
        if !hyp_ids.insert(h.id.as_str()) {
            return Err(Error::DuplicateUtteranceId { id: h.id.clone() });
        }
    }
    let missing_from_ref: Vec<String> = hyps
        .iter()
        .filter(|h| !ref_map.contains_key(h.id.as_str()))
        .map(|h| h.id.clone())
        .collect();
    let missing_from_hyp: Vec<String> = refs
        .iter()
        .filter(|r| !hyp_ids.contains(r.id.as_str()))
        .map(|r| r.id.clone())
        .collect();
    if !missing_from_ref.is_empty() || !missing_from_hyp.is_empty() {
        return Err(Error::UtteranceIdMismatch {
            missing_from_ref,
            missing_from_hyp,
        });
    }
    Ok(hyps.iter().map(|h| (h, ref_map[h.id.as_str()])).collect())
}

/// Normalized word tokens of an utterance; tokens that normalize to nothing
/// are dropped.
fn normalized_words(u: &Utterance<String>) -> Vec<String> {
    u.tokens
        .iter()
        .map(|t| normalize_word(t))
        .filter(|t| !t.is_empty())
        .collect()
}

/// Word-level error report pooled over all utterances.
pub fn word_error_report(
    hyps: &[Utterance<String>],
    refs: &[Utterance<String>],
) -> Result<ErrorReport> {
    let mut counts = EditCounts::default();
    let mut n_ref = 0;
    for (hyp, reference) in pair_by_id(hyps, refs)? {
        let h = normalized_words(hyp);
        let r = normalized_words(reference);
        n_ref += r.len();
        counts.merge(align(&h, &r).counts());
    }
    Ok(ErrorReport::from_counts(n_ref, counts))
}

/// Character-level error report: tokens are the characters of the utterance
/// with single spaces between words.
pub fn char_error_report(
    hyps: &[Utterance<String>],
    refs: &[Utterance<String>],
) -> Result<ErrorReport> {
    let mut counts = EditCounts::default();
    let mut n_ref = 0;
    for (hyp, reference) in pair_by_id(hyps, refs)? {
        let h: Vec<char> = normalized_words(hyp).join(" ").chars().collect();
        let r: Vec<char> = normalized_words(reference).join(" ").chars().collect();
        n_ref += r.len();
        counts.merge(align(&h, &r).counts());
    }
    Ok(ErrorReport::from_counts(n_ref, counts))
}

/// Word-level report restricted to words whose first lexicon pronunciation
/// ends in one of `finals`. Alignment runs over the full utterances first;
/// operations are then kept when their reference word (hypothesis word for
/// insertions) is in the subset. Words missing from the lexicon are
/// reported, not scored.
pub fn subset_word_report(
    hyps: &[Utterance<String>],
    refs: &[Utterance<String>],
    lexicon: &Lexicon,
    finals: &BTreeSet<Phoneme>,
) -> Result<SubsetReport> {
    let subset = lexicon.words_ending_with(finals);
    let mut counts = EditCounts::default();
    let mut n_ref = 0;
    let mut oov_words = BTreeSet::new();
    let classify = |word: &str, oov: &mut BTreeSet<String>| {
        if !lexicon.contains_word(word) {
            oov.insert(word.to_string());
            return false;
        }
        subset.contains(word)
    };
    for (hyp, reference) in pair_by_id(hyps, refs)? {
        let h = normalized_words(hyp);
        let r = normalized_words(reference);
        for op in align(&h, &r).into_ops() {
            match &op {
                EditOp::Insert { hypothesis } => {
                    if classify(hypothesis, &mut oov_words) {
                        counts.insertions += 1;
                    }
                }
                _ => {
                    let word = op.reference().expect("non-insert ops have a reference");
                    if classify(word, &mut oov_words) {
                        n_ref += 1;
                        match &op {
                            EditOp::Match(_) => counts.matches += 1,
                            EditOp::Substitute { .. } => counts.substitutions += 1,
                            EditOp::Delete { .. } => counts.deletions += 1,
                            EditOp::Insert { .. } => unreachable!(),
                        }
                    }
                }
            }
        }
    }
    Ok(SubsetReport {
        report: ErrorReport::from_counts(n_ref, counts),
        oov_words,
    })
}

/// Phoneme-level report restricted to vowels: operations are kept when the
/// reference phoneme (hypothesis phoneme for insertions) is a vowel.
pub fn vowel_error_report(
    hyps: &[Utterance<Phoneme>],
    refs: &[Utterance<Phoneme>],
    phone_set: &PhoneSet,
) -> Result<ErrorReport> {
    let mut counts = EditCounts::default();
    let mut n_ref = 0;
    for (hyp, reference) in pair_by_id(hyps, refs)? {
        for op in align(&hyp.tokens, &reference.tokens).into_ops() {
            match &op {
                EditOp::Insert { hypothesis } => {
                    if phone_set.is_vowel(hypothesis)? {
                        counts.insertions += 1;
                    }
                }
                _ => {
                    let q = op.reference().expect("non-insert ops have a reference");
                    if phone_set.is_vowel(q)? {
                        n_ref += 1;
                        match &op {
                            EditOp::Match(_) => counts.matches += 1,
                            EditOp::Substitute { .. } => counts.substitutions += 1,
                            EditOp::Delete { .. } => counts.deletions += 1,
                            EditOp::Insert { .. } => unreachable!(),
                        }
                    }
                }
            }
        }
    }
    Ok(ErrorReport::from_counts(n_ref, counts))
}

/// The combined scoring output: word and character reports, optional
/// word-subset and vowel reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub word: ErrorReport,
    pub character: ErrorReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subset: Option<SubsetReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vowel: Option<ErrorReport>,
    /// When set, displayed error rates count only substitutions and
    /// deletions; the insertion column is still reported.
    pub exclude_insertions: bool,
}

impl ScoreReport {
    fn shown_er(&self, report: &ErrorReport) -> Option<f64> {
        if self.exclude_insertions {
            report.error_rate_excluding_insertions()
        } else {
            report.error_rate
        }
    }

    fn blocks(&self) -> Vec<(&'static str, &ErrorReport, Option<&BTreeSet<String>>)> {
        let mut blocks = vec![
            ("word", &self.word, None),
            ("character", &self.character, None),
        ];
        if let Some(subset) = &self.subset {
            blocks.push(("word-subset", &subset.report, Some(&subset.oov_words)));
        }
        if let Some(vowel) = &self.vowel {
            blocks.push(("vowel", vowel, None));
        }
        blocks
    }

    /// One CSV row per block: `block,n_ref,c,s,i,d,er,s_rate,i_rate,d_rate`.
    pub fn to_csv(&self) -> String {
        let fmt = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |x| x.to_string());
        let mut out = String::from("block,n_ref,c,s,i,d,er,s_rate,i_rate,d_rate\n");
        for (name, report, _) in self.blocks() {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                name,
                report.n_ref,
                report.counts.matches,
                report.counts.substitutions,
                report.counts.insertions,
                report.counts.deletions,
                fmt(self.shown_er(report)),
                fmt(report.substitution_rate),
                fmt(report.insertion_rate),
                fmt(report.deletion_rate),
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned plain-text table with one row per block.
    pub fn to_text(&self) -> String {
        let fmt = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |x| format!("{x:.2}"));
        let mut out = format!(
            "{:<12} {:>7} {:>8} {:>8} {:>8} {:>8}\n",
            "block", "n_ref", "ER", "S", "I", "D"
        );
        let mut oov_notes = Vec::new();
        for (name, report, oov) in self.blocks() {
            out.push_str(&format!(
                "{:<12} {:>7} {:>8} {:>8} {:>8} {:>8}\n",
                name,
                report.n_ref,
                fmt(self.shown_er(report)),
                fmt(report.substitution_rate),
                fmt(report.insertion_rate),
                fmt(report.deletion_rate),
            ));
            if let Some(oov) = oov {
                if !oov.is_empty() {
                    oov_notes.push(format!(
                        "{name}: {} word(s) not in lexicon: {}",
                        oov.len(),
                        oov.iter().cloned().collect::<Vec<_>>().join(", ")
                    ));
                }
            }
        }
        if self.exclude_insertions {
            out.push_str("(ER excludes insertions)\n");
        }
        for note in oov_notes {
            out.push_str(&note);
            out.push('\n');
        }
        out
    }
}
