//! End-to-end checks of the `ldisj` binary: output formats, determinism and
//! exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn ldisj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldisj"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("ldisj-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn gen_emits_the_forced_all_ones_word() {
    // four collisions over four indices admit only the all-ones pair
    let out = ldisj(&["gen", "--k", "1", "--t", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1#1111#1111#1111#1111#1111#1111#\n");
}

#[test]
fn gen_writes_word_files_that_run_accepts() {
    let path = temp_path("member.word");
    let out = ldisj(&[
        "gen",
        "--k",
        "1",
        "--seed",
        "9",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let contents = fs::read_to_string(&path).unwrap();
    assert!(contents.ends_with('\n'));
    assert!(contents.trim_end().chars().all(|c| "01#".contains(c)));

    let run = ldisj(&[
        "run",
        "--input",
        path.to_str().unwrap(),
        "--trials",
        "50",
        "--recognizer",
        "quantum",
    ]);
    assert!(run.status.success());
    let text = stdout(&run);
    assert!(text.contains("accept 50 (100.0%)"), "{text}");
    fs::remove_file(&path).ok();
}

#[test]
fn exact_on_a_member_prints_certain_acceptance() {
    let out = ldisj(&["exact", "--k", "1", "--seed", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("quantum: acceptance 1.0"), "{text}");
    assert!(text.contains("blockwise: acceptance 1.0"), "{text}");
}

#[test]
fn run_on_a_malformed_file_rejects_everything_via_format() {
    let path = temp_path("malformed.word");
    fs::write(&path, "1#01#\n").unwrap();
    let out = ldisj(&[
        "run",
        "--input",
        path.to_str().unwrap(),
        "--trials",
        "100",
        "--recognizer",
        "both",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("reject format 100 (100.0%)"), "{text}");
    assert!(text.contains("acceptance estimate 0.0"), "{text}");
    fs::remove_file(&path).ok();
}

#[test]
fn sweep_prints_exact_next_to_closed_form() {
    let out = ldisj(&["sweep", "--k", "1", "--t", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("k,t,n,exact_reject,closed_form,abs_diff\n"));
    assert!(text.contains("1,1,32,0.625,0.625,"), "{text}");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = ldisj(&["sweep", "--k", "1,2", "--seed", "5"]);
    let b = ldisj(&["sweep", "--k", "1,2", "--seed", "5"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);

    let pa = temp_path("rows-a.json");
    let pb = temp_path("rows-b.json");
    for p in [&pa, &pb] {
        let out = ldisj(&[
            "exact",
            "--k",
            "1",
            "--t",
            "2",
            "--format",
            "json",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&pa).unwrap(), fs::read(&pb).unwrap());
    let json = fs::read_to_string(&pa).unwrap();
    assert!(json.trim_start().starts_with('['));
    assert!(json.contains("\"recognizer\": \"quantum\""));
    fs::remove_file(&pa).ok();
    fs::remove_file(&pb).ok();
}

#[test]
fn space_table_lists_both_recognizers_per_k() {
    let out = ldisj(&["space", "--k", "1,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5); // header + 2 recognizers x 2 ks
    assert!(lines[0].starts_with("k,n,recognizer,frontend_cells_peak"));
    assert!(text.contains("blockwise"));
    assert!(text.contains("quantum"));
}

#[test]
fn usage_errors_exit_with_one() {
    // conflicting instance sources
    let path = temp_path("conflict.word");
    fs::write(&path, "1#0000#0000#0000#0000#0000#0000#\n").unwrap();
    let out = ldisj(&["exact", "--input", path.to_str().unwrap(), "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    fs::remove_file(&path).ok();

    // no instance source at all
    let out = ldisj(&["exact"]);
    assert_eq!(out.status.code(), Some(1));

    // unknown flag (clap usage error)
    let out = ldisj(&["exact", "--nonsense"]);
    assert_eq!(out.status.code(), Some(1));

    // collisions beyond the index space
    let out = ldisj(&["gen", "--k", "1", "--t", "5"]);
    assert_eq!(out.status.code(), Some(1));

    // trial mode needs at least one trial
    let out = ldisj(&["run", "--k", "1", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn capacity_errors_exit_with_two() {
    // exact enumeration is capped at k = 3
    let out = ldisj(&["exact", "--k", "4"]);
    assert_eq!(out.status.code(), Some(2));

    // sweeps share the cap
    let out = ldisj(&["sweep", "--k", "4"]);
    assert_eq!(out.status.code(), Some(2));

    // instance generation itself is capped at k = 7
    let out = ldisj(&["gen", "--k", "8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_cleanly() {
    let out = ldisj(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Usage"));
}
