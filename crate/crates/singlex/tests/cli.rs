//! End-to-end tests of the `singlex` binary: subcommands, file formats, and
//! the exit-code contract (0 success, 1 data error, 2 usage error).

use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_singlex"))
}

fn write(dir: &TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().unwrap();
    assert!(
        out.status.success(),
        "command failed: {}\n{}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn align_dumps_the_worked_example() {
    let out = run_ok(bin().args([
        "align",
        "--hyp",
        "EH N AY",
        "--ref",
        "AE N D AY",
    ]));
    let text = stdout(&out);
    assert!(text.contains("S    AE           EH"), "got:\n{text}");
    assert!(text.contains("D    D            eps"), "got:\n{text}");
    assert!(text.contains("C=2 S=1 I=0 D=1 distance=2"), "got:\n{text}");
}

#[test]
fn align_supports_csv_and_json() {
    let out = run_ok(bin().args(["align", "--hyp", "a", "--ref", "b", "--format", "csv"]));
    assert_eq!(stdout(&out), "op,ref,hyp\nS,b,a\n");

    let out = run_ok(bin().args(["align", "--hyp", "a", "--ref", "b", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["distance"], 1);
    assert_eq!(v["ops"][0]["op"], "S");
}

#[test]
fn analyze_reports_the_planted_confusion() {
    let dir = TempDir::new().unwrap();
    let hyp = write(&dir, "hyp.txt", "u1 EH N AY\n");
    let reference = write(&dir, "ref.txt", "u1 AE N D AY\n");
    let out_path = dir.path().join("report.csv");
    run_ok(bin().args([
        "analyze",
        "--hyp",
        hyp.to_str().unwrap(),
        "--ref",
        reference.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        out_path.to_str().unwrap(),
    ]));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    // Observed: AY and N match (rank 1, 2 by symbol), then AE and D at -1.
    let ae_row = csv
        .lines()
        .find(|l| l.starts_with("AE,"))
        .expect("AE row present");
    assert_eq!(ae_row, "AE,-1,3,EH");
}

#[test]
fn analyze_on_identical_corpora_gives_full_confidence() {
    let dir = TempDir::new().unwrap();
    let hyp = write(&dir, "hyp.txt", "u1 AE N D\nu2 S AH N\n");
    let reference = write(&dir, "ref.txt", "u1 AE N D\nu2 S AH N\n");
    let out = run_ok(bin().args([
        "analyze",
        "--hyp",
        hyp.to_str().unwrap(),
        "--ref",
        reference.to_str().unwrap(),
        "--format",
        "csv",
    ]));
    let csv = stdout(&out);
    for line in csv.lines().skip(1).take_while(|l| !l.is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields[1] != "NA" {
            assert_eq!(fields[1], "1", "observed phoneme should score 1.0: {line}");
            assert_eq!(fields[3], "", "confusion set should be empty: {line}");
        }
    }
}

#[test]
fn analyze_phonemizes_word_hypotheses_through_a_lexicon() {
    let dir = TempDir::new().unwrap();
    let hyp = write(&dir, "hyp.txt", "u1 and i\n");
    let reference = write(&dir, "ref.txt", "u1 EH N AY\n");
    let lexicon = write(&dir, "lex.txt", "AND  AE N D\nI  AY\n");
    let out = run_ok(bin().args([
        "analyze",
        "--hyp",
        hyp.to_str().unwrap(),
        "--ref",
        reference.to_str().unwrap(),
        "--lexicon",
        lexicon.to_str().unwrap(),
        "--format",
        "csv",
    ]));
    // Hypothesis becomes AE N D AY; against EH N AY the EH reference gets
    // substituted by AE and the hypothesis D is an insertion.
    let csv = stdout(&out);
    let eh_row = csv.lines().find(|l| l.starts_with("EH,")).unwrap();
    assert_eq!(eh_row, "EH,-1,4,AE");
    let d_row = csv.lines().find(|l| l.starts_with("D,")).unwrap();
    assert!(d_row.starts_with("D,-1,"), "D row counts an insertion: {d_row}");
}

#[test]
fn analyze_strict_oov_exits_1_naming_the_word() {
    let dir = TempDir::new().unwrap();
    let hyp = write(&dir, "hyp.txt", "u1 zzzxq\n");
    let reference = write(&dir, "ref.txt", "u1 AE\n");
    let lexicon = write(&dir, "lex.txt", "AND  AE N D\n");
    let out = bin()
        .args([
            "analyze",
            "--hyp",
            hyp.to_str().unwrap(),
            "--ref",
            reference.to_str().unwrap(),
            "--lexicon",
            lexicon.to_str().unwrap(),
            "--oov",
            "strict",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ZZZXQ"));
}

#[test]
fn adapt_vowel_extension_writes_numbered_alternates() {
    let dir = TempDir::new().unwrap();
    let lexicon = write(&dir, "lex.txt", "OCEANS  OW SH AH N Z\n");
    let out_path = dir.path().join("l2.txt");
    let out = run_ok(bin().args([
        "adapt",
        "--lexicon",
        lexicon.to_str().unwrap(),
        "--mode",
        "l2",
        "--out",
        out_path.to_str().unwrap(),
    ]));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(
        text,
        "OCEANS  OW SH AH N Z\nOCEANS(2)  OW OW SH AH N Z\nOCEANS(3)  OW SH AH AH N Z\n"
    );
    assert!(stdout(&out).contains("prons added: 2"));
}

#[test]
fn adapt_reports_untouched_lexicons() {
    let dir = TempDir::new().unwrap();
    let lexicon = write(&dir, "lex.txt", "SUN  S AH N\n");
    let out_path = dir.path().join("l1.txt");
    let out = run_ok(bin().args([
        "adapt",
        "--lexicon",
        lexicon.to_str().unwrap(),
        "--mode",
        "l1",
        "--out",
        out_path.to_str().unwrap(),
    ]));
    assert_eq!(
        std::fs::read_to_string(&out_path).unwrap(),
        "SUN  S AH N\n"
    );
    let summary = stdout(&out);
    assert!(summary.contains("words touched: 0"), "{summary}");
    assert!(summary.contains("prons added: 0"), "{summary}");
}

#[test]
fn adapt_identity_config_reserializes_byte_identically() {
    let dir = TempDir::new().unwrap();
    let input = "A  AH\nA(2)  EY\nAND  AE N D\n";
    let lexicon = write(&dir, "lex.txt", input);
    let out_path = dir.path().join("same.txt");
    run_ok(bin().args([
        "adapt",
        "--lexicon",
        lexicon.to_str().unwrap(),
        "--mode",
        "l1",
        "--drop-finals",
        "",
        "--out",
        out_path.to_str().unwrap(),
    ]));
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), input);
}

#[test]
fn adapt_json_summary_round_trips() {
    let dir = TempDir::new().unwrap();
    let lexicon = write(&dir, "lex.txt", "AND  AE N D\n");
    let out_path = dir.path().join("l3.txt");
    let out = run_ok(bin().args([
        "adapt",
        "--lexicon",
        lexicon.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        out_path.to_str().unwrap(),
    ]));
    let summary: singlex::cli::AdaptSummary = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary.mode, "l3");
    assert_eq!(summary.words, 1);
    assert_eq!(summary.words_touched, 1);
    assert_eq!(summary.prons_added, 3);
}

#[test]
fn score_identical_corpora_is_all_zero() {
    let dir = TempDir::new().unwrap();
    let text = "u1 and i love you\nu2 sun\n";
    let hyp = write(&dir, "hyp.txt", text);
    let reference = write(&dir, "ref.txt", text);
    let out = run_ok(bin().args([
        "score",
        "--hyp",
        hyp.to_str().unwrap(),
        "--ref",
        reference.to_str().unwrap(),
        "--format",
        "csv",
    ]));
    let csv = stdout(&out);
    assert!(csv.contains("word,5,5,0,0,0,0,0,0,0\n"), "{csv}");
    assert!(csv.lines().any(|l| l.starts_with("character,") && l.contains(",0,0,0,0,0,0,0")));
}

#[test]
fn score_matches_the_hand_derived_example() {
    let dir = TempDir::new().unwrap();
    let hyp = write(&dir, "hyp.txt", "u1 and love you\n");
    let reference = write(&dir, "ref.txt", "u1 and i love you\n");
    let out = run_ok(bin().args([
        "score",
        "--hyp",
        hyp.to_str().unwrap(),
        "--ref",
        reference.to_str().unwrap(),
    ]));
    let text = stdout(&out);
    let word_line = text.lines().find(|l| l.starts_with("word")).unwrap();
    assert!(word_line.contains("25.00"), "{word_line}");
}

#[test]
fn score_json_includes_optional_reports() {
    let dir = TempDir::new().unwrap();
    let hyp = write(&dir, "hyp.txt", "u1 an i\n");
    let reference = write(&dir, "ref.txt", "u1 and i\n");
    let lexicon = write(&dir, "lex.txt", "AND  AE N D\nAN  AE N\nI  AY\n");
    let hyp_phones = write(&dir, "hp.txt", "u1 EH N AY\n");
    let ref_phones = write(&dir, "rp.txt", "u1 AE N D AY\n");
    let out = run_ok(bin().args([
        "score",
        "--hyp",
        hyp.to_str().unwrap(),
        "--ref",
        reference.to_str().unwrap(),
        "--lexicon",
        lexicon.to_str().unwrap(),
        "--hyp-phones",
        hyp_phones.to_str().unwrap(),
        "--ref-phones",
        ref_phones.to_str().unwrap(),
        "--format",
        "json",
    ]));
    let report: singlex::score::ScoreReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.word.n_ref, 2);
    assert_eq!(report.word.counts.substitutions, 1);
    let subset = report.subset.as_ref().unwrap();
    assert_eq!(subset.report.n_ref, 1);
    assert_eq!(subset.report.error_rate, Some(100.0));
    let vowel = report.vowel.as_ref().unwrap();
    assert_eq!(vowel.n_ref, 2);
    assert_eq!(vowel.error_rate, Some(50.0));
}

#[test]
fn score_missing_id_exits_1_naming_it() {
    let dir = TempDir::new().unwrap();
    let hyp = write(&dir, "hyp.txt", "u1 a\n");
    let reference = write(&dir, "ref.txt", "u1 a\nu9 b\n");
    let out = bin()
        .args([
            "score",
            "--hyp",
            hyp.to_str().unwrap(),
            "--ref",
            reference.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("u9"));
}

#[test]
fn unreadable_input_exits_1() {
    let out = bin()
        .args(["score", "--hyp", "/nonexistent/h.txt", "--ref", "/nonexistent/r.txt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    let out = bin().args(["score", "--hyp", "only-half"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn outputs_are_bit_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let hyp = write(&dir, "hyp.txt", "u1 EH N AY\nu2 S AH N\n");
    let reference = write(&dir, "ref.txt", "u1 AE N D AY\nu2 S AH N Z\n");
    let run = |fmt: &str| {
        stdout(&run_ok(bin().args([
            "analyze",
            "--hyp",
            hyp.to_str().unwrap(),
            "--ref",
            reference.to_str().unwrap(),
            "--format",
            fmt,
        ])))
    };
    for fmt in ["text", "csv", "json"] {
        assert_eq!(run(fmt), run(fmt), "format {fmt} not deterministic");
    }
}

#[test]
fn custom_phone_set_flows_through_analyze() {
    let dir = TempDir::new().unwrap();
    let phoneset = write(
        &dir,
        "phones.txt",
        "# two-phoneme inventory\nXA\tShortVowel\nXK\tPlosive\n",
    );
    let hyp = write(&dir, "hyp.txt", "u1 XA XK\n");
    let reference = write(&dir, "ref.txt", "u1 XA XA\n");
    let out = run_ok(bin().args([
        "analyze",
        "--hyp",
        hyp.to_str().unwrap(),
        "--ref",
        reference.to_str().unwrap(),
        "--phoneset",
        phoneset.to_str().unwrap(),
        "--format",
        "csv",
    ]));
    let csv = stdout(&out);
    assert!(csv.lines().any(|l| l.starts_with("XA,")), "{csv}");
    // The matrix keeps its fixed category axes regardless of inventory.
    assert!(csv.contains("category,ShortVowel,"));
}

#[test]
fn help_lists_all_subcommands() {
    let out = run_ok(bin().arg("--help"));
    let text = stdout(&out);
    for sub in ["analyze", "adapt", "score", "align"] {
        assert!(text.contains(sub), "missing {sub} in help");
    }
}
