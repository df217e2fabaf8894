// Align a hypothesis phoneme sequence against a reference and walk the
// resulting edit operations.
//
// Run with:
// ```bash
// cargo run --example align_sequences
// ```

use singlex::align::{align, levenshtein_matrix, EditOp};
use singlex::phoneset::PhoneSet;

fn main() -> singlex::Result<()> {
    let ps = PhoneSet::cmu();

    // "AND I" read as speech vs. sung: the word-final D disappears and the
    // first vowel shifts.
    let reference = ps.sequence("AE N D AY")?;
    let hypothesis = ps.sequence("EH N AY")?;

    let matrix = levenshtein_matrix(&hypothesis, &reference);
    println!(
        "edit distance between hyp ({}) and ref ({}): {}",
        hypothesis.len(),
        reference.len(),
        matrix.distance()
    );

    let path = align(&hypothesis, &reference);
    println!("\n{:<4} {:<6} hyp", "op", "ref");
    for op in path.ops() {
        let reference = op.reference().map_or("eps", |p| p.as_str());
        let hypothesis = op.hypothesis().map_or("eps", |p| p.as_str());
        println!("{:<4} {:<6} {}", op.kind().code(), reference, hypothesis);
    }

    let counts = path.counts();
    println!(
        "\nC={} S={} I={} D={}",
        counts.matches, counts.substitutions, counts.insertions, counts.deletions
    );

    // The engine is generic: the same call aligns words.
    let hyp_words: Vec<&str> = "and love you".split(' ').collect();
    let ref_words: Vec<&str> = "and i love you".split(' ').collect();
    let word_path = align(&hyp_words, &ref_words);
    let dropped: Vec<&str> = word_path
        .ops()
        .iter()
        .filter_map(|op| match op {
            EditOp::Delete { reference } => Some(*reference),
            _ => None,
        })
        .collect();
    println!("\nword-level deletions in 'and love you': {dropped:?}");

    Ok(())
}
