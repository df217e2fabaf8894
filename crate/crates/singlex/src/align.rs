//! Levenshtein alignment between a hypothesis and a reference sequence.
//!
//! The engine is generic over the token type so the same code aligns
//! phonemes, words, and characters. It computes the full dynamic-programming
//! score matrix with unit edit costs and recovers one optimal path by
//! reverse tracing. When several predecessors tie, the trace prefers the
//! diagonal (match/substitute), then deletion, then insertion, so paths --
//! and every count derived from them -- are reproducible.

use crate::error::{Error, Result};

/// A single aligned pair. The absent side of an insertion or deletion is the
/// epsilon gap.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EditOp<T> {
    /// Both sides present and equal.
    Match(T),
    /// Both sides present and different.
    Substitute { reference: T, hypothesis: T },
    /// Reference token present, hypothesis side epsilon.
    Delete { reference: T },
    /// Hypothesis token present, reference side epsilon.
    Insert { hypothesis: T },
}

/// The operation kind, detached from its tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EditKind {
    Match,
    Substitute,
    Insert,
    Delete,
}

impl EditKind {
    /// Single-letter code used in text dumps: C, S, I, D.
    pub fn code(self) -> char {
        match self {
            EditKind::Match => 'C',
            EditKind::Substitute => 'S',
            EditKind::Insert => 'I',
            EditKind::Delete => 'D',
        }
    }
}

impl<T> EditOp<T> {
    pub fn kind(&self) -> EditKind {
        match self {
            EditOp::Match(_) => EditKind::Match,
            EditOp::Substitute { .. } => EditKind::Substitute,
            EditOp::Insert { .. } => EditKind::Insert,
            EditOp::Delete { .. } => EditKind::Delete,
        }
    }

    /// The reference-side token, if not epsilon.
    pub fn reference(&self) -> Option<&T> {
        match self {
            EditOp::Match(t) => Some(t),
            EditOp::Substitute { reference, .. } => Some(reference),
            EditOp::Delete { reference } => Some(reference),
            EditOp::Insert { .. } => None,
        }
    }

    /// The hypothesis-side token, if not epsilon.
    pub fn hypothesis(&self) -> Option<&T> {
        match self {
            EditOp::Match(t) => Some(t),
            EditOp::Substitute { hypothesis, .. } => Some(hypothesis),
            EditOp::Insert { hypothesis } => Some(hypothesis),
            EditOp::Delete { .. } => None,
        }
    }
}

/// Totals of match/substitute/insert/delete operations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct EditCounts {
    pub matches: usize,
    pub substitutions: usize,
    pub insertions: usize,
    pub deletions: usize,
}

impl EditCounts {
    /// Levenshtein distance: S + I + D.
    pub fn distance(&self) -> usize {
        self.substitutions + self.insertions + self.deletions
    }

    /// Total operations: C + S + I + D.
    pub fn total(&self) -> usize {
        self.matches + self.distance()
    }

    pub fn merge(&mut self, other: EditCounts) {
        self.matches += other.matches;
        self.substitutions += other.substitutions;
        self.insertions += other.insertions;
        self.deletions += other.deletions;
    }
}

/// One optimal alignment path with its operation totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentPath<T> {
    ops: Vec<EditOp<T>>,
    counts: EditCounts,
}

impl<T> AlignmentPath<T> {
    /// Builds a path from an op sequence; counts are tallied here so they can
    /// never disagree with the ops.
    pub fn from_ops(ops: Vec<EditOp<T>>) -> Self {
        let mut counts = EditCounts::default();
        for op in &ops {
            match op.kind() {
                EditKind::Match => counts.matches += 1,
                EditKind::Substitute => counts.substitutions += 1,
                EditKind::Insert => counts.insertions += 1,
                EditKind::Delete => counts.deletions += 1,
            }
        }
        AlignmentPath { ops, counts }
    }

    pub fn ops(&self) -> &[EditOp<T>] {
        &self.ops
    }

    pub fn counts(&self) -> EditCounts {
        self.counts
    }

    pub fn distance(&self) -> usize {
        self.counts.distance()
    }

    pub fn into_ops(self) -> Vec<EditOp<T>> {
        self.ops
    }
}

/// The full (M+1) x (N+1) Levenshtein cost grid for an M-token hypothesis
/// against an N-token reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreMatrix {
    hyp_len: usize,
    ref_len: usize,
    cells: Vec<usize>,
}

impl ScoreMatrix {
    /// Cost at row `i` (hypothesis prefix length) and column `j` (reference
    /// prefix length).
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * (self.ref_len + 1) + j]
    }

    fn set(&mut self, i: usize, j: usize, v: usize) {
        self.cells[i * (self.ref_len + 1) + j] = v;
    }

    /// (rows, cols) = (M+1, N+1).
    pub fn dims(&self) -> (usize, usize) {
        (self.hyp_len + 1, self.ref_len + 1)
    }

    /// The edit distance: the bottom-right cell.
    pub fn distance(&self) -> usize {
        self.get(self.hyp_len, self.ref_len)
    }
}

/// Fills the alignment score matrix with unit insertion/deletion/substitution
/// costs and zero match cost.
pub fn levenshtein_matrix<T: Eq>(hyp: &[T], reference: &[T]) -> ScoreMatrix {
    let m = hyp.len();
    let n = reference.len();
    let mut mat = ScoreMatrix {
        hyp_len: m,
        ref_len: n,
        cells: vec![0; (m + 1) * (n + 1)],
    };
    for i in 0..=m {
        mat.set(i, 0, i);
    }
    for j in 0..=n {
        mat.set(0, j, j);
    }
    for i in 1..=m {
        for j in 1..=n {
            let cost = usize::from(hyp[i - 1] != reference[j - 1]);
            let best = (mat.get(i - 1, j - 1) + cost)
                .min(mat.get(i, j - 1) + 1)
                .min(mat.get(i - 1, j) + 1);
            mat.set(i, j, best);
        }
    }
    mat
}

/// Recovers one optimal path by reverse tracing from the bottom-right cell.
///
/// Tie-break order when predecessors cost the same: diagonal
/// (match/substitute), then delete, then insert. Fails if the matrix
/// dimensions do not fit the sequences.
pub fn traceback<T: Eq + Clone>(
    mat: &ScoreMatrix,
    hyp: &[T],
    reference: &[T],
) -> Result<AlignmentPath<T>> {
    let (rows, cols) = mat.dims();
    if rows != hyp.len() + 1 || cols != reference.len() + 1 {
        return Err(Error::DimensionMismatch {
            got_rows: rows,
            got_cols: cols,
            want_rows: hyp.len() + 1,
            want_cols: reference.len() + 1,
        });
    }
    let mut ops = Vec::with_capacity(hyp.len().max(reference.len()));
    let (mut i, mut j) = (hyp.len(), reference.len());
    while i > 0 || j > 0 {
        let here = mat.get(i, j);
        if i > 0 && j > 0 {
            let cost = usize::from(hyp[i - 1] != reference[j - 1]);
            if here == mat.get(i - 1, j - 1) + cost {
                ops.push(if cost == 0 {
                    EditOp::Match(reference[j - 1].clone())
                } else {
                    EditOp::Substitute {
                        reference: reference[j - 1].clone(),
                        hypothesis: hyp[i - 1].clone(),
                    }
                });
                i -= 1;
                j -= 1;
                continue;
            }
        }
        if j > 0 && here == mat.get(i, j - 1) + 1 {
            ops.push(EditOp::Delete {
                reference: reference[j - 1].clone(),
            });
            j -= 1;
        } else {
            ops.push(EditOp::Insert {
                hypothesis: hyp[i - 1].clone(),
            });
            i -= 1;
        }
    }
    ops.reverse();
    Ok(AlignmentPath::from_ops(ops))
}

/// Computes the matrix and traces the best path in one step.
pub fn align<T: Eq + Clone>(hyp: &[T], reference: &[T]) -> AlignmentPath<T> {
    let mat = levenshtein_matrix(hyp, reference);
    // Dimensions match by construction.
    traceback(&mat, hyp, reference).expect("matrix built from the same sequences")
}
