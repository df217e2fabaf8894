//! The `singlex` command-line tool.
//!
//! Subcommands:
//!
//! - `analyze`: align hypothesis phoneme transcripts (or word transcripts
//!   phonemized through a lexicon) against reference phoneme transcripts and
//!   write the confidence table, confusion sets, and category confusion
//!   matrix.
//! - `adapt`: generate the L1/L2/L3 singing-adapted lexicons from a CMU
//!   dictionary.
//! - `score`: word and character error rates with S/I/D breakdowns, plus
//!   optional word-subset and vowel reports.
//! - `align`: dump the alignment path for a single token pair (debugging).
//!
//! Exit codes: 0 on success, 1 on data errors (unreadable or malformed
//! input, OOV words under strict policy, unmatched utterance ids), 2 on
//! usage errors. Outputs are deterministic: identical inputs give
//! byte-identical results.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::adapt::{adapt_lexicon, AdaptationConfig, VariantMode};
use crate::align::{align, AlignmentPath, EditCounts};
use crate::confusion::{AnalysisReport, PhonemeStats};
use crate::error::{Error, Result};
use crate::lexicon::{Lexicon, OovPolicy};
use crate::phoneset::PhoneSet;
use crate::score::{
    char_error_report, parse_phoneme_transcripts, parse_transcripts, subset_word_report,
    vowel_error_report, word_error_report, ScoreReport, Utterance,
};

#[derive(Debug, Parser)]
#[command(name = "singlex", version, about = "Pronunciation analysis and lexicon adaptation for sung utterances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Phoneme confusion analysis over aligned transcripts
    Analyze(AnalyzeArgs),
    /// Generate a singing-adapted lexicon
    Adapt(AdaptArgs),
    /// Word/character error rates with S/I/D breakdowns
    Score(ScoreArgs),
    /// Dump the alignment path for one token-sequence pair
    Align(AlignArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OovArg {
    Strict,
    Skip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    L1,
    L2,
    L3,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Hypothesis transcripts (phonemes, or words when --lexicon is given)
    #[arg(long)]
    hyp: PathBuf,
    /// Reference phoneme transcripts
    #[arg(long = "ref")]
    reference: PathBuf,
    /// Phone set file (defaults to the built-in 39-phoneme CMU set)
    #[arg(long)]
    phoneset: Option<PathBuf>,
    /// Lexicon for phonemizing word-level hypothesis transcripts
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Confusion set size
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    topn: u64,
    /// Policy for out-of-vocabulary words during phonemization
    #[arg(long, value_enum, default_value_t = OovArg::Skip)]
    oov: OovArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AdaptArgs {
    /// Input lexicon in CMU format
    #[arg(long)]
    lexicon: PathBuf,
    /// Phone set file (defaults to the built-in 39-phoneme CMU set)
    #[arg(long)]
    phoneset: Option<PathBuf>,
    /// Which lexicon to build: l1 = consonant drop, l2 = vowel extension,
    /// l3 = both
    #[arg(long, value_enum, default_value_t = ModeArg::L3)]
    mode: ModeArg,
    /// Comma-separated final consonants whose drop generates variants
    #[arg(long, default_value = "D,T,DH,Z")]
    drop_finals: String,
    /// Total copies a vowel is extended to (1 disables extension)
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    max_vowel_repeat: u64,
    /// Do not vowel-extend the consonant-dropped variants in l3 mode
    #[arg(long)]
    no_cross_compose: bool,
    /// Append ;; variant=<tag> comments to generated pronunciations
    #[arg(long)]
    emit_variant_tags: bool,
    /// Summary format (the lexicon itself is always CMU text)
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Lexicon output path (stdout when omitted; the summary then goes to
    /// stderr)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    /// Hypothesis word transcripts
    #[arg(long)]
    hyp: PathBuf,
    /// Reference word transcripts
    #[arg(long = "ref")]
    reference: PathBuf,
    /// Lexicon enabling the word-subset report
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Phone set file (defaults to the built-in 39-phoneme CMU set)
    #[arg(long)]
    phoneset: Option<PathBuf>,
    /// Word-final phonemes defining the subset report
    #[arg(long, default_value = "D,T,DH,Z")]
    drop_finals: String,
    /// Hypothesis phoneme transcripts enabling the vowel report
    #[arg(long, requires = "ref_phones")]
    hyp_phones: Option<PathBuf>,
    /// Reference phoneme transcripts enabling the vowel report
    #[arg(long, requires = "hyp_phones")]
    ref_phones: Option<PathBuf>,
    /// Report error rates without the insertion component
    #[arg(long)]
    exclude_insertions: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AlignArgs {
    /// Hypothesis tokens, whitespace-separated
    #[arg(long)]
    hyp: String,
    /// Reference tokens, whitespace-separated
    #[arg(long = "ref")]
    reference: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses the argument list and runs the selected subcommand, returning the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Adapt(args) => cmd_adapt(&args),
        Command::Score(args) => cmd_score(&args),
        Command::Align(args) => cmd_align(&args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("singlex: error: {e}");
            1
        }
    }
}

fn load_phone_set(path: &Option<PathBuf>) -> Result<Arc<PhoneSet>> {
    Ok(Arc::new(match path {
        Some(p) => PhoneSet::open(p)?,
        None => PhoneSet::cmu(),
    }))
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn parse_finals(ps: &PhoneSet, spec: &str) -> Result<BTreeSet<crate::phoneset::Phoneme>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| ps.phoneme(s))
        .collect()
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<()> {
    let ps = load_phone_set(&args.phoneset)?;
    let refs = parse_phoneme_transcripts(&read_to_string(&args.reference)?, &ps)?;
    let hyp_text = read_to_string(&args.hyp)?;

    let hyps: Vec<Utterance<crate::phoneset::Phoneme>> = match &args.lexicon {
        Some(lex_path) => {
            let lexicon = Lexicon::parse(&read_to_string(lex_path)?, ps.clone())?;
            let policy = match args.oov {
                OovArg::Strict => OovPolicy::Strict,
                OovArg::Skip => OovPolicy::Skip,
            };
            let mut utts = Vec::new();
            for wu in parse_transcripts(&hyp_text)? {
                let phonemized = lexicon.phonemize(&wu.tokens, policy)?;
                for (_, word) in &phonemized.skipped {
                    eprintln!("singlex: warning: skipping OOV word '{word}' in {}", wu.id);
                }
                utts.push(Utterance {
                    id: wu.id,
                    tokens: phonemized.phones,
                });
            }
            utts
        }
        None => parse_phoneme_transcripts(&hyp_text, &ps)?,
    };

    let mut stats = PhonemeStats::new();
    for (hyp, reference) in pair_utterances(&hyps, &refs)? {
        stats.accumulate(&align(&hyp.tokens, &reference.tokens));
    }
    let report = AnalysisReport::new(&stats, &ps, args.topn as usize)?;
    let rendered = match args.format {
        FormatArg::Text => report.to_text(),
        FormatArg::Csv => report.to_csv(),
        FormatArg::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    };
    write_output(&args.out, &rendered)
}

fn pair_utterances<'a, T>(
    hyps: &'a [Utterance<T>],
    refs: &'a [Utterance<T>],
) -> Result<Vec<(&'a Utterance<T>, &'a Utterance<T>)>> {
    let ref_ids: BTreeSet<&str> = refs.iter().map(|u| u.id.as_str()).collect();
    let hyp_ids: BTreeSet<&str> = hyps.iter().map(|u| u.id.as_str()).collect();
    if ref_ids.len() != refs.len() {
        let dup = refs
            .iter()
            .enumerate()
            .find(|(i, u)| refs[..*i].iter().any(|v| v.id == u.id))
            .map(|(_, u)| u.id.clone())
            .unwrap_or_default();
        return Err(Error::DuplicateUtteranceId { id: dup });
    }
    if hyp_ids.len() != hyps.len() {
        let dup = hyps
            .iter()
            .enumerate()
            .find(|(i, u)| hyps[..*i].iter().any(|v| v.id == u.id))
            .map(|(_, u)| u.id.clone())
            .unwrap_or_default();
        return Err(Error::DuplicateUtteranceId { id: dup });
    }
    let missing_from_ref: Vec<String> = hyp_ids
        .difference(&ref_ids)
        .map(|s| s.to_string())
        .collect();
    let missing_from_hyp: Vec<String> = ref_ids
        .difference(&hyp_ids)
        .map(|s| s.to_string())
        .collect();
    if !missing_from_ref.is_empty() || !missing_from_hyp.is_empty() {
        return Err(Error::UtteranceIdMismatch {
            missing_from_ref,
            missing_from_hyp,
        });
    }
    let by_id: std::collections::BTreeMap<&str, &Utterance<T>> =
        refs.iter().map(|u| (u.id.as_str(), u)).collect();
    Ok(hyps.iter().map(|h| (h, by_id[h.id.as_str()])).collect())
}

/// Summary printed by `adapt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaptSummary {
    pub mode: String,
    pub words: usize,
    pub words_touched: usize,
    pub prons_added: usize,
}

impl AdaptSummary {
    fn to_text(&self) -> String {
        format!(
            "mode: {}\nwords: {}\nwords touched: {}\nprons added: {}\n",
            self.mode, self.words, self.words_touched, self.prons_added
        )
    }

    fn to_csv(&self) -> String {
        format!(
            "mode,words,words_touched,prons_added\n{},{},{},{}\n",
            self.mode, self.words, self.words_touched, self.prons_added
        )
    }
}

fn cmd_adapt(args: &AdaptArgs) -> Result<()> {
    let ps = load_phone_set(&args.phoneset)?;
    let lexicon = Lexicon::parse(&read_to_string(&args.lexicon)?, ps.clone())?;
    let mode = match args.mode {
        ModeArg::L1 => VariantMode::ConsonantDrop,
        ModeArg::L2 => VariantMode::VowelExtend,
        ModeArg::L3 => VariantMode::Combined,
    };
    let cfg = AdaptationConfig::new(
        ps.clone(),
        parse_finals(&ps, &args.drop_finals)?,
        args.max_vowel_repeat as usize,
        mode,
    )?
    .with_cross_compose(!args.no_cross_compose);

    let adapted = adapt_lexicon(&lexicon, &cfg);
    let words_touched = lexicon
        .entries()
        .filter(|e| adapted.get(e.word()).map(|a| a.prons().len()) != Some(e.prons().len()))
        .count();
    let summary = AdaptSummary {
        mode: format!("{:?}", args.mode).to_lowercase(),
        words: adapted.len(),
        words_touched,
        prons_added: adapted.pron_count() - lexicon.pron_count(),
    };

    write_output(&args.out, &adapted.to_cmu_text(args.emit_variant_tags))?;
    let rendered = match args.format {
        FormatArg::Text => summary.to_text(),
        FormatArg::Csv => summary.to_csv(),
        FormatArg::Json => {
            let mut s = serde_json::to_string_pretty(&summary).expect("summary serializes");
            s.push('\n');
            s
        }
    };
    // Keep stdout clean for the lexicon when it goes there.
    if args.out.is_some() {
        print!("{rendered}");
    } else {
        eprint!("{rendered}");
    }
    Ok(())
}

fn cmd_score(args: &ScoreArgs) -> Result<()> {
    let hyps = parse_transcripts(&read_to_string(&args.hyp)?)?;
    let refs = parse_transcripts(&read_to_string(&args.reference)?)?;
    let word = word_error_report(&hyps, &refs)?;
    let character = char_error_report(&hyps, &refs)?;

    let subset = match &args.lexicon {
        Some(lex_path) => {
            let ps = load_phone_set(&args.phoneset)?;
            let lexicon = Lexicon::parse(&read_to_string(lex_path)?, ps.clone())?;
            let finals = parse_finals(&ps, &args.drop_finals)?;
            Some(subset_word_report(&hyps, &refs, &lexicon, &finals)?)
        }
        None => None,
    };
    let vowel = match (&args.hyp_phones, &args.ref_phones) {
        (Some(hp), Some(rp)) => {
            let ps = load_phone_set(&args.phoneset)?;
            let hyp_phones = parse_phoneme_transcripts(&read_to_string(hp)?, &ps)?;
            let ref_phones = parse_phoneme_transcripts(&read_to_string(rp)?, &ps)?;
            Some(vowel_error_report(&hyp_phones, &ref_phones, &ps)?)
        }
        _ => None,
    };

    let report = ScoreReport {
        word,
        character,
        subset,
        vowel,
        exclude_insertions: args.exclude_insertions,
    };
    let rendered = match args.format {
        FormatArg::Text => report.to_text(),
        FormatArg::Csv => report.to_csv(),
        FormatArg::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    };
    write_output(&args.out, &rendered)
}

/// JSON form of a dumped alignment path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentDump {
    pub ops: Vec<AlignmentOpJson>,
    pub counts: EditCounts,
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentOpJson {
    pub op: String,
    #[serde(rename = "ref")]
    pub reference: Option<String>,
    pub hyp: Option<String>,
}

impl AlignmentDump {
    fn from_path(path: &AlignmentPath<String>) -> Self {
        AlignmentDump {
            ops: path
                .ops()
                .iter()
                .map(|op| AlignmentOpJson {
                    op: op.kind().code().to_string(),
                    reference: op.reference().cloned(),
                    hyp: op.hypothesis().cloned(),
                })
                .collect(),
            counts: path.counts(),
            distance: path.distance(),
        }
    }

    fn to_text(&self) -> String {
        let mut out = format!("{:<4} {:<12} {}\n", "op", "ref", "hyp");
        for op in &self.ops {
            out.push_str(&format!(
                "{:<4} {:<12} {}\n",
                op.op,
                op.reference.as_deref().unwrap_or("eps"),
                op.hyp.as_deref().unwrap_or("eps"),
            ));
        }
        out.push_str(&format!(
            "C={} S={} I={} D={} distance={}\n",
            self.counts.matches,
            self.counts.substitutions,
            self.counts.insertions,
            self.counts.deletions,
            self.distance
        ));
        out
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("op,ref,hyp\n");
        for op in &self.ops {
            out.push_str(&format!(
                "{},{},{}\n",
                op.op,
                op.reference.as_deref().unwrap_or(""),
                op.hyp.as_deref().unwrap_or(""),
            ));
        }
        out
    }
}

fn cmd_align(args: &AlignArgs) -> Result<()> {
    let hyp: Vec<String> = args.hyp.split_whitespace().map(str::to_string).collect();
    let reference: Vec<String> = args
        .reference
        .split_whitespace()
        .map(str::to_string)
        .collect();
    let dump = AlignmentDump::from_path(&align(&hyp, &reference));
    let rendered = match args.format {
        FormatArg::Text => dump.to_text(),
        FormatArg::Csv => dump.to_csv(),
        FormatArg::Json => {
            let mut s = serde_json::to_string_pretty(&dump).expect("dump serializes");
            s.push('\n');
            s
        }
    };
    write_output(&args.out, &rendered)
}
