//! Phoneme confusion statistics over aligned utterances.
//!
//! [`PhonemeStats`] accumulates per-phoneme match/substitute/insert/delete
//! counts from alignment paths. Attribution rule: matches, substitutions,
//! and deletions attach to the reference (ground-truth) phoneme;
//! insertions attach to the hypothesis phoneme, since their reference side
//! is the epsilon gap. This is the only assignment in which every operation
//! has a well-defined owner, and it shapes every number downstream.
//!
//! From the accumulated counts this module derives:
//!
//! - the per-phoneme confidence score `(C - (S+I+D)) / (C + S+I+D)`,
//!   bounded in [-1, 1] and undefined for unobserved phonemes;
//! - a ranked confidence table with per-phoneme confusion sets (the
//!   most frequent substituting phonemes);
//! - a category-level confusion matrix over the eight phonetic categories
//!   plus an epsilon row/column for insertions and deletions, with each
//!   ground-truth row normalized to unit sum.
//!
//! Accumulation is a commutative monoid: utterances can be processed in
//! shards and merged in any order without changing the result.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::align::{AlignmentPath, EditCounts, EditOp};
use crate::error::{Error, Result};
use crate::phoneset::{PhoneSet, Phoneme, PhonemeCategory};

/// Per-phoneme C/S/I/D counters and substitution pair counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PhonemeStats {
    counts: BTreeMap<Phoneme, EditCounts>,
    pairs: BTreeMap<(Phoneme, Phoneme), usize>,
}

impl PhonemeStats {
    pub fn new() -> Self {
        Self::default()
    }

    /// Folds one alignment path into the counters.
    pub fn accumulate(&mut self, path: &AlignmentPath<Phoneme>) {
        for op in path.ops() {
            match op {
                EditOp::Match(q) => self.entry(q).matches += 1,
                EditOp::Substitute {
                    reference,
                    hypothesis,
                } => {
                    self.entry(reference).substitutions += 1;
                    *self
                        .pairs
                        .entry((reference.clone(), hypothesis.clone()))
                        .or_default() += 1;
                }
                EditOp::Delete { reference } => self.entry(reference).deletions += 1,
                EditOp::Insert { hypothesis } => self.entry(hypothesis).insertions += 1,
            }
        }
    }

    fn entry(&mut self, q: &Phoneme) -> &mut EditCounts {
        self.counts.entry(q.clone()).or_default()
    }

    /// Pointwise addition; commutative and associative.
    pub fn merge(&mut self, other: &PhonemeStats) {
        for (q, c) in &other.counts {
            self.counts.entry(q.clone()).or_default().merge(*c);
        }
        for (pair, n) in &other.pairs {
            *self.pairs.entry(pair.clone()).or_default() += n;
        }
    }

    /// C/S/I/D for one phoneme; zeros if never seen.
    pub fn counts_for(&self, q: &Phoneme) -> EditCounts {
        self.counts.get(q).copied().unwrap_or_default()
    }

    /// Phonemes with at least one operation attributed to them.
    pub fn observed(&self) -> impl Iterator<Item = &Phoneme> {
        self.counts
            .iter()
            .filter(|(_, c)| c.total() > 0)
            .map(|(q, _)| q)
    }

    /// (reference, hypothesis) substitution counts.
    pub fn substitution_pairs(&self) -> impl Iterator<Item = (&Phoneme, &Phoneme, usize)> {
        self.pairs.iter().map(|((r, h), n)| (r, h, *n))
    }

    /// Confidence score for one phoneme: `(C - (S+I+D)) / (C + S+I+D)`.
    /// `None` when the phoneme was never observed (zero denominator).
    pub fn confidence(&self, q: &Phoneme) -> Option<f64> {
        let c = self.counts_for(q);
        let total = c.total();
        if total == 0 {
            return None;
        }
        Some((c.matches as f64 - c.distance() as f64) / total as f64)
    }
}

/// One row of the confidence table: score, rank, and confusion set.
/// `confidence` and `rank` are `None` for phonemes never observed.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceRow {
    pub phoneme: Phoneme,
    pub confidence: Option<f64>,
    pub rank: Option<usize>,
    pub confusion_set: Vec<Phoneme>,
}

/// Builds the ranked confidence table over a phone set.
///
/// Observed phonemes come first, ordered by rank (descending confidence,
/// ties broken by ascending symbol); unobserved inventory members follow in
/// symbol order with no rank. Each confusion set lists the up-to-`top_n`
/// phonemes most frequently substituted for the row's phoneme, by
/// descending count then ascending symbol.
pub fn confidence_table(
    stats: &PhonemeStats,
    phone_set: &PhoneSet,
    top_n: usize,
) -> Result<Vec<ConfidenceRow>> {
    for q in stats.counts.keys() {
        if !phone_set.contains(q.as_str()) {
            return Err(Error::UnknownPhoneme {
                symbol: q.as_str().to_string(),
                line: None,
            });
        }
    }

    let mut observed: Vec<(Phoneme, f64)> = Vec::new();
    let mut unobserved: Vec<Phoneme> = Vec::new();
    for (q, _) in phone_set.iter() {
        match stats.confidence(q) {
            Some(c) => observed.push((q.clone(), c)),
            None => unobserved.push(q.clone()),
        }
    }
    observed.sort_by(|(qa, ca), (qb, cb)| cb.total_cmp(ca).then_with(|| qa.cmp(qb)));
    unobserved.sort();

    let mut rows = Vec::with_capacity(phone_set.len());
    for (rank0, (q, c)) in observed.into_iter().enumerate() {
        rows.push(ConfidenceRow {
            confusion_set: confusion_set(stats, &q, top_n),
            phoneme: q,
            confidence: Some(c),
            rank: Some(rank0 + 1),
        });
    }
    for q in unobserved {
        rows.push(ConfidenceRow {
            confusion_set: confusion_set(stats, &q, top_n),
            phoneme: q,
            confidence: None,
            rank: None,
        });
    }
    Ok(rows)
}

fn confusion_set(stats: &PhonemeStats, q: &Phoneme, top_n: usize) -> Vec<Phoneme> {
    let mut subs: Vec<(&Phoneme, usize)> = stats
        .pairs
        .iter()
        .filter(|((r, _), _)| r == q)
        .map(|((_, h), n)| (h, *n))
        .collect();
    subs.sort_by(|(ha, na), (hb, nb)| nb.cmp(na).then_with(|| ha.cmp(hb)));
    subs.into_iter().take(top_n).map(|(h, _)| h.clone()).collect()
}

/// Number of category axes plus the epsilon index.
pub const MATRIX_SIZE: usize = PhonemeCategory::ALL.len() + 1;

/// Index of the epsilon row/column.
pub const EPSILON_INDEX: usize = PhonemeCategory::ALL.len();

/// Category-level confusion matrix. Rows are ground-truth categories,
/// columns are predicted categories; the last index on each axis is the
/// epsilon gap (deletions end in the epsilon column, insertions come from
/// the epsilon row). Match counts are discarded, so the diagonal shows
/// within-category confusions, not self-agreement. Every non-zero
/// ground-truth row is normalized to unit sum.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryConfusionMatrix {
    cells: [[f64; MATRIX_SIZE]; MATRIX_SIZE],
}

impl CategoryConfusionMatrix {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.cells[row][col]
    }

    /// Typed accessor; `None` selects the epsilon axis.
    pub fn value(&self, row: Option<PhonemeCategory>, col: Option<PhonemeCategory>) -> f64 {
        self.cells[axis_index(row)][axis_index(col)]
    }

    /// Axis labels in index order, ending with `"eps"`.
    pub fn labels() -> [&'static str; MATRIX_SIZE] {
        let mut labels = [""; MATRIX_SIZE];
        for (i, c) in PhonemeCategory::ALL.iter().enumerate() {
            labels[i] = c.name();
        }
        labels[EPSILON_INDEX] = "eps";
        labels
    }

    pub fn row_sum(&self, row: usize) -> f64 {
        self.cells[row].iter().sum()
    }
}

fn axis_index(c: Option<PhonemeCategory>) -> usize {
    match c {
        Some(c) => c.index(),
        None => EPSILON_INDEX,
    }
}

/// Aggregates substitutions, insertions, and deletions by phonetic category
/// and normalizes each non-zero ground-truth row to unit sum.
pub fn category_matrix(
    stats: &PhonemeStats,
    phone_set: &PhoneSet,
) -> Result<CategoryConfusionMatrix> {
    let mut raw = [[0.0f64; MATRIX_SIZE]; MATRIX_SIZE];
    for (q, c) in &stats.counts {
        let cat = phone_set.category_of(q)?.index();
        raw[cat][EPSILON_INDEX] += c.deletions as f64;
        raw[EPSILON_INDEX][cat] += c.insertions as f64;
    }
    for ((r, h), n) in &stats.pairs {
        let row = phone_set.category_of(r)?.index();
        let col = phone_set.category_of(h)?.index();
        raw[row][col] += *n as f64;
    }
    for row in raw.iter_mut() {
        let sum: f64 = row.iter().sum();
        if sum > 0.0 {
            for cell in row.iter_mut() {
                *cell /= sum;
            }
        }
    }
    Ok(CategoryConfusionMatrix { cells: raw })
}

/// The full analysis output: confidence table plus category matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub table: Vec<ConfidenceRow>,
    pub matrix: CategoryConfusionMatrix,
}

/// JSON form of the analysis report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReportJson {
    pub confidence_table: Vec<ConfidenceRowJson>,
    pub category_matrix: CategoryMatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceRowJson {
    pub phoneme: String,
    pub c_q: Option<f64>,
    pub rank: Option<usize>,
    pub confusion_set: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryMatrixJson {
    pub labels: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl AnalysisReport {
    pub fn new(stats: &PhonemeStats, phone_set: &PhoneSet, top_n: usize) -> Result<Self> {
        Ok(AnalysisReport {
            table: confidence_table(stats, phone_set, top_n)?,
            matrix: category_matrix(stats, phone_set)?,
        })
    }

    /// Two CSV sections separated by a blank line: the confidence table
    /// (`phoneme,c_q,rank,confusions`, confusion symbols space-joined,
    /// `NA` for unobserved phonemes) and the category matrix with `eps`
    /// row/column headers.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("phoneme,c_q,rank,confusions\n");
        for row in &self.table {
            let c_q = row
                .confidence
                .map_or_else(|| "NA".to_string(), |c| c.to_string());
            let rank = row
                .rank
                .map_or_else(|| "NA".to_string(), |r| r.to_string());
            let confusions = row
                .confusion_set
                .iter()
                .map(Phoneme::as_str)
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&format!("{},{},{},{}\n", row.phoneme, c_q, rank, confusions));
        }
        out.push('\n');
        let labels = CategoryConfusionMatrix::labels();
        out.push_str(&format!("category,{}\n", labels.join(",")));
        for (i, label) in labels.iter().enumerate() {
            let cells: Vec<String> = (0..MATRIX_SIZE)
                .map(|j| self.matrix.get(i, j).to_string())
                .collect();
            out.push_str(&format!("{},{}\n", label, cells.join(",")));
        }
        out
    }

    pub fn to_json_value(&self) -> AnalysisReportJson {
        AnalysisReportJson {
            confidence_table: self
                .table
                .iter()
                .map(|r| ConfidenceRowJson {
                    phoneme: r.phoneme.to_string(),
                    c_q: r.confidence,
                    rank: r.rank,
                    confusion_set: r.confusion_set.iter().map(|p| p.to_string()).collect(),
                })
                .collect(),
            category_matrix: CategoryMatrixJson {
                labels: CategoryConfusionMatrix::labels()
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                rows: (0..MATRIX_SIZE)
                    .map(|i| (0..MATRIX_SIZE).map(|j| self.matrix.get(i, j)).collect())
                    .collect(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes")
    }

    /// Human-readable tables.
    pub fn to_text(&self) -> String {
        let mut out = String::from("Phoneme confidence\n");
        out.push_str(&format!(
            "{:<8} {:>8} {:>6}  {}\n",
            "phoneme", "c_q", "rank", "confusions"
        ));
        for row in &self.table {
            let c_q = row
                .confidence
                .map_or_else(|| "NA".to_string(), |c| format!("{c:.2}"));
            let rank = row
                .rank
                .map_or_else(|| "NA".to_string(), |r| r.to_string());
            let confusions = row
                .confusion_set
                .iter()
                .map(Phoneme::as_str)
                .collect::<Vec<_>>()
                .join(", ");
            out.push_str(&format!(
                "{:<8} {:>8} {:>6}  {}\n",
                row.phoneme.as_str(),
                c_q,
                rank,
                confusions
            ));
        }
        out.push_str("\nCategory confusion matrix (rows: ground truth, cols: prediction)\n");
        let labels = CategoryConfusionMatrix::labels();
        out.push_str(&format!("{:<12}", ""));
        for label in &labels {
            out.push_str(&format!(" {label:>11}"));
        }
        out.push('\n');
        for (i, label) in labels.iter().enumerate() {
            out.push_str(&format!("{label:<12}"));
            for j in 0..MATRIX_SIZE {
                out.push_str(&format!(" {:>11.4}", self.matrix.get(i, j)));
            }
            out.push('\n');
        }
        out
    }
}
