// Generate the L1/L2/L3 singing-adapted lexicons from a small dictionary.
//
// Run with:
// ```bash
// cargo run --example adapt_lexicon
// ```

use std::sync::Arc;

use singlex::adapt::{adapt_lexicon, AdaptationConfig, VariantMode};
use singlex::lexicon::Lexicon;
use singlex::phoneset::PhoneSet;

const DICT: &str = "\
AND  AE N D
OCEANS  OW SH AH N Z
SUN  S AH N
NIGHT  N AY T
";

fn main() -> singlex::Result<()> {
    let ps = Arc::new(PhoneSet::cmu());
    let lexicon = Lexicon::parse(DICT, ps.clone())?;

    // Defaults: drop word-final D/T/DH/Z, extend each vowel to two copies.
    let cfg = AdaptationConfig::standard(ps)?;

    for (label, mode) in [
        ("L1 (final-consonant drop)", VariantMode::ConsonantDrop),
        ("L2 (vowel extension)", VariantMode::VowelExtend),
        ("L3 (combined)", VariantMode::Combined),
    ] {
        let adapted = adapt_lexicon(&lexicon, &cfg.clone().with_mode(mode));
        println!("--- {label}: {} prons", adapted.pron_count());
        print!("{}", adapted.to_cmu_text(true));
        println!();
    }

    // Adaptation only reads Base pronunciations, so re-adapting the output
    // changes nothing.
    let l3 = adapt_lexicon(&lexicon, &cfg);
    let l3_again = adapt_lexicon(&l3, &cfg);
    println!(
        "re-adapting L3 is a no-op: {}",
        l3.to_cmu_text(true) == l3_again.to_cmu_text(true)
    );

    Ok(())
}
