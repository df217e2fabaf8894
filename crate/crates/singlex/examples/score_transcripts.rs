// Score hypothesis transcripts against references: WER and CER with
// substitution/insertion/deletion breakdowns, the drop-final word subset,
// and the vowel recognition view.
//
// Run with:
// ```bash
// cargo run --example score_transcripts
// ```

use std::sync::Arc;

use singlex::lexicon::Lexicon;
use singlex::phoneset::PhoneSet;
use singlex::score::{
    char_error_report, parse_phoneme_transcripts, parse_transcripts, subset_word_report,
    vowel_error_report, word_error_report, ScoreReport,
};

const REF_WORDS: &str = "\
u1 and i love you
u2 hold my hand
u3 the night is young
";

const HYP_WORDS: &str = "\
u1 an i love you
u2 hold my han
u3 the night is young young
";

const REF_PHONES: &str = "\
u1 AE N D AY
u2 HH OW L D
";

const HYP_PHONES: &str = "\
u1 EH N AY
u2 HH OW OW L D
";

const DICT: &str = "\
AND  AE N D
AN  AE N
I  AY
LOVE  L AH V
YOU  Y UW
HOLD  HH OW L D
MY  M AY
HAND  HH AE N D
HAN  HH AE N
THE  DH AH
NIGHT  N AY T
IS  IH Z
YOUNG  Y AH NG
";

fn main() -> singlex::Result<()> {
    let ps = Arc::new(PhoneSet::cmu());
    let lexicon = Lexicon::parse(DICT, ps.clone())?;

    let refs = parse_transcripts(REF_WORDS)?;
    let hyps = parse_transcripts(HYP_WORDS)?;

    let word = word_error_report(&hyps, &refs)?;
    println!(
        "WER {:.2}% over {} reference words (S={} I={} D={})",
        word.error_rate.unwrap(),
        word.n_ref,
        word.counts.substitutions,
        word.counts.insertions,
        word.counts.deletions
    );

    // Words ending in D/T/DH/Z are where sung final consonants go missing.
    let finals = ps.sequence("D T DH Z")?.into_iter().collect();
    let subset = subset_word_report(&hyps, &refs, &lexicon, &finals)?;
    println!(
        "drop-final subset: {} of {} words, ER {:.2}%",
        subset.report.n_ref,
        word.n_ref,
        subset.report.error_rate.unwrap()
    );

    let report = ScoreReport {
        word,
        character: char_error_report(&hyps, &refs)?,
        subset: Some(subset),
        vowel: Some(vowel_error_report(
            &parse_phoneme_transcripts(HYP_PHONES, &ps)?,
            &parse_phoneme_transcripts(REF_PHONES, &ps)?,
            &ps,
        )?),
        exclude_insertions: false,
    };
    println!("\n{}", report.to_text());
    println!("CSV:\n{}", report.to_csv());

    Ok(())
}
