// Accumulate phoneme confusion statistics over a small aligned corpus and
// print the confidence table and category confusion matrix.
//
// Run with:
// ```bash
// cargo run --example confusion_analysis
// ```

use singlex::align::align;
use singlex::confusion::{AnalysisReport, PhonemeStats};
use singlex::phoneset::PhoneSet;

fn main() -> singlex::Result<()> {
    let ps = PhoneSet::cmu();

    // (hypothesis, reference) phoneme transcripts of the same utterances.
    // The planted pattern: AE keeps drifting to AH/EH, final plosives drop.
    let corpus = [
        ("AH N D AY", "AE N D AY"),
        ("EH N AY", "AE N D AY"),
        ("AH T", "AE T"),
        ("S AH N", "S AH N"),
        ("M UW N L AY", "M UW N L AY T"),
        ("HH AE AH T", "HH AA R T"),
    ];

    let mut stats = PhonemeStats::new();
    for (hyp, reference) in corpus {
        let path = align(&ps.sequence(hyp)?, &ps.sequence(reference)?);
        stats.accumulate(&path);
    }

    // Per-phoneme scores are available directly...
    let ae = ps.phoneme("AE")?;
    println!(
        "c_q(AE) = {:?} from counts {:?}",
        stats.confidence(&ae),
        stats.counts_for(&ae)
    );

    // ...or as the full ranked report with confusion sets of size 3.
    let report = AnalysisReport::new(&stats, &ps, 3)?;
    println!("\n{}", report.to_text());

    // The same report exports as CSV or JSON for plotting.
    let csv = report.to_csv();
    println!("first CSV lines:");
    for line in csv.lines().take(4) {
        println!("  {line}");
    }

    Ok(())
}
