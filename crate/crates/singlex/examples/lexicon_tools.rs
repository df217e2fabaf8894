// Parse a CMU-format dictionary, phonemize a transcript with its
// word-boundary map, and query words by their final phoneme.
//
// Run with:
// ```bash
// cargo run --example lexicon_tools
// ```

use std::sync::Arc;

use singlex::lexicon::{Lexicon, OovPolicy};
use singlex::phoneset::PhoneSet;

// Stress digits and alternate markers follow the CMU dictionary
// conventions; both are handled during parsing.
const DICT: &str = "\
;;; toy dictionary
A  AH0
A(2)  EY1
AND  AE1 N D
DREAM  D R IY1 M
MAKER  M EY1 K ER0
";

fn main() -> singlex::Result<()> {
    let ps = Arc::new(PhoneSet::cmu());
    let lexicon = Lexicon::parse(DICT, ps.clone())?;

    println!("{} words, {} prons", lexicon.len(), lexicon.pron_count());
    for entry in lexicon.entries() {
        let prons: Vec<String> = entry.prons().iter().map(|p| p.to_text()).collect();
        println!("  {} -> {}", entry.word(), prons.join(" | "));
    }

    // Serialization is canonical: parsing its own output reproduces it.
    let text = lexicon.to_cmu_text(false);
    let reparsed = Lexicon::parse(&text, ps.clone())?;
    println!("\nround-trip stable: {}", reparsed.to_cmu_text(false) == text);

    // Phonemize a word sequence; word_of maps each phone back to its word.
    let words = ["DREAM", "MAKER"];
    let phonemized = lexicon.phonemize(&words, OovPolicy::Strict)?;
    println!("\nDREAM MAKER phonemizes to:");
    for (phone, word_idx) in phonemized.phones.iter().zip(&phonemized.word_of) {
        println!("  {phone} <- {}", words[*word_idx]);
    }

    // OOV handling is a policy choice: Skip collects, Strict fails.
    let result = lexicon.phonemize(&["AND", "XYLOPHONE"], OovPolicy::Skip)?;
    println!("\nskipped under Skip policy: {:?}", result.skipped);
    let err = lexicon.phonemize(&["XYLOPHONE"], OovPolicy::Strict).unwrap_err();
    println!("strict policy error: {err}");

    // Which words end in one of the drop-prone consonants?
    let finals = ps.sequence("D T DH Z")?.into_iter().collect();
    println!("\nwords ending in D/T/DH/Z: {:?}", lexicon.words_ending_with(&finals));

    Ok(())
}
