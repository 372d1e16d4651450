//! Black-box checks of the command-line interface: output text, exit
//! codes, and diagnostics, driven through `cli::run` with captured streams.

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("openbook").chain(args.iter().copied());
    let code = openbook::cli::run(argv, &mut stdout, &mut stderr);
    (
        code,
        String::from_utf8(stdout).expect("utf-8 stdout"),
        String::from_utf8(stderr).expect("utf-8 stderr"),
    )
}

fn fixture(name: &str, contents: &str) -> PathBuf {
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!("openbook-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join(format!(
        "{name}-{}.book",
        COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::write(&path, contents).expect("write fixture");
    path
}

const PANTS: &str = "page 0 3\ntwist 1 1\ntwist -2 2\ntwist -3 outer\n";

#[test]
fn norm_and_h1_of_the_pants_book() {
    let file = fixture("pants", PANTS);
    let path = file.to_str().unwrap();

    let (code, out, err) = run(&["norm", path]);
    assert_eq!((code, out.as_str(), err.as_str()), (0, "2\n", ""));

    let (code, out, err) = run(&["h1", path]);
    assert_eq!((code, out.as_str(), err.as_str()), (0, "0\n", ""));
}

#[test]
fn h1_of_an_annulus_power() {
    let file = fixture("annulus", "page 0 2\ntwist 5 1\n");
    let (code, out, _) = run(&["h1", file.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "Z/5\n"));
}

#[test]
fn positive_genus_pages_parse_but_refuse_homology() {
    let file = fixture("genus-two", "page 2 1\n");
    let path = file.to_str().unwrap();

    // The norm is blind to planarity.
    let (code, out, _) = run(&["norm", path]);
    assert_eq!((code, out.as_str()), (0, "4\n"));

    // The surgery presentation is not.
    let (code, out, err) = run(&["h1", path]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("genus 2"), "stderr was: {err}");
}

#[test]
fn parse_errors_carry_line_numbers() {
    let file = fixture("zero-exponent", "page 0 2\ntwist 0 1\n");
    let (code, _, err) = run(&["h1", file.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "stderr was: {err}");

    let file = fixture("headerless", "twist 1 1\n");
    let (code, _, err) = run(&["norm", file.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 1"), "stderr was: {err}");
}

#[test]
fn missing_input_file_is_a_validation_error() {
    let (code, out, err) = run(&["norm", "/nonexistent/book.txt"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("invalid input file"), "stderr was: {err}");
}

#[test]
fn plumb_merges_pages_and_shifts_the_second_word() {
    let a = fixture("plumb-a", "page 0 2\ntwist 3 1\n");
    let b = fixture("plumb-b", "page 0 2\ntwist -2 1\n");
    let (code, out, _) = run(&["plumb", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "page 0 3\ntwist 3 1\ntwist -2 2\n");
}

#[test]
fn stabilize_appends_a_band_over_the_new_hole() {
    let disk = fixture("disk", "page 0 1\n");
    let (code, out, _) = run(&["stabilize", disk.to_str().unwrap(), "--sign", "+1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "page 0 2\ntwist 1 1\n");

    let pants = fixture("pants", PANTS);
    let (code, out, _) = run(&[
        "stabilize",
        pants.to_str().unwrap(),
        "--sign",
        "-1",
        "--holes",
        "1,2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "page 0 4\ntwist 1 1\ntwist -2 2\ntwist -3 1,2\ntwist -1 1,2,3\n"
    );
}

#[test]
fn stabilize_rejects_bad_signs_and_holes() {
    let disk = fixture("disk", "page 0 1\n");
    let path = disk.to_str().unwrap();

    let (code, _, err) = run(&["stabilize", path, "--sign", "up"]);
    assert_eq!(code, 1);
    assert!(err.contains("invalid sign"), "stderr was: {err}");

    let (code, _, err) = run(&["stabilize", path, "--sign", "+1", "--holes", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("hole 1"), "stderr was: {err}");
}

#[test]
fn seifert_handles_negative_multiplicities() {
    let (code, out, _) = run(&["seifert", "2", "3", "5"]);
    assert_eq!((code, out.as_str()), (0, "Z/31\n"));

    let (code, out, _) = run(&["seifert", "-2", "-3", "-5"]);
    assert_eq!((code, out.as_str()), (0, "Z/31\n"));

    let (code, out, _) = run(&["seifert", "2", "2", "-1"]);
    assert_eq!((code, out.as_str()), (0, "Z\n"));
}

#[test]
fn d3_sums_half_integers() {
    let (code, out, _) = run(&["d3", "-1/2", "-1/2"]);
    assert_eq!((code, out.as_str()), (0, "-1/2\n"));

    let (code, out, _) = run(&["d3", "3/2", "-1/2"]);
    assert_eq!((code, out.as_str()), (0, "3/2\n"));

    let (code, _, err) = run(&["d3", "2/2", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains("half-integer"), "stderr was: {err}");
}

#[test]
fn search_prints_the_bucketed_csv() {
    let (code, out, _) = run(&["search", "--max-boundary", "2", "--max-total-exponent", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("group,count,min_norm,witness"), "{out}");
    assert!(out.contains("# total_classes=6"), "{out}");

    let (code, out, _) = run(&[
        "search",
        "--max-boundary",
        "2",
        "--max-total-exponent",
        "3",
        "--target",
        "Z/2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("twist -2 1"), "{out}");
    assert!(!out.contains("Z/3"), "{out}");
}

#[test]
fn search_rejects_zero_jobs_and_bad_targets() {
    let base = ["search", "--max-boundary", "2", "--max-total-exponent", "2"];
    let mut zero_jobs = base.to_vec();
    zero_jobs.extend(["--jobs", "0"]);
    let (code, _, err) = run(&zero_jobs);
    assert_eq!(code, 1);
    assert!(err.contains("worker count"), "stderr was: {err}");

    let mut bad_target = base.to_vec();
    bad_target.extend(["--target", "Q"]);
    let (code, _, err) = run(&bad_target);
    assert_eq!(code, 1);
    assert!(err.contains("abelian group"), "stderr was: {err}");
}

#[test]
fn repeated_parallel_searches_are_byte_identical() {
    let args = [
        "search",
        "--max-boundary",
        "3",
        "--max-total-exponent",
        "3",
        "--jobs",
        "4",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.0, 0);
    assert_eq!(first, second);
}

#[test]
fn catalog_identifies_the_stock_books() {
    let pants = fixture("pants", PANTS);
    let (code, out, _) = run(&["catalog", pants.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("manifold: S^3"), "{out}");
    assert!(out.contains("structure: xi_d(-1/2)"), "{out}");
    assert!(out.contains("tight: false"), "{out}");
    assert!(out.contains("d3: -1/2"), "{out}");
    assert!(out.contains("hg_upper_bound: 2"), "{out}");

    let disk = fixture("disk", "page 0 1\n");
    let (code, out, _) = run(&["catalog", disk.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("structure: xi_std"), "{out}");
    assert!(out.contains("tight: true"), "{out}");

    let unknown = fixture("unknown", "page 0 4\ntwist 2 1\ntwist 3 2,3\n");
    let (code, out, _) = run(&["catalog", unknown.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "no catalog entry\n"));
}

#[test]
fn verify_annulus_walks_the_lens_family() {
    let (code, out, err) = run(&["verify-annulus", "3"]);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(out.contains("0,Z,S^1 x S^2,tight"), "{out}");
    assert!(out.contains("3,Z/3,L(3,-1),tight"), "{out}");
    assert!(out.contains("-3,Z/3,L(3,1),overtwisted"), "{out}");
}

#[test]
fn help_and_usage_errors() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("openbook"), "{out}");

    let (code, _, err) = run(&["norm"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());

    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
}
