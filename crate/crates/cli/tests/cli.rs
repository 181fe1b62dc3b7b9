use std::fs;
use std::process::{Command, Output};

use fo_describe::logic::parse;
use fo_describe::oracle::{exact_c, EnumerationBudget};
use fo_describe::semantics::ProfileChecker;
use fo_describe::structures::{enumerate_profiles, ingest_csv_path, UnaryStructure, Vocabulary};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fo-describe")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn synthesizes_the_all_ones_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m1.csv");
    fs::write(&path, format!("P,Q\n{}", "1,1\n".repeat(10))).unwrap();
    let out = ok(&["synthesize", path.to_str().unwrap()]);
    assert_eq!(field(&out, "verdict"), "defines");
    let vocab = Vocabulary::new(["P", "Q"]).unwrap();
    let f = ProfileChecker::new(&parse(field(&out, "formula"), &vocab).unwrap()).unwrap();
    let g = ProfileChecker::new(&parse("Ax1. (P(x1) & Q(x1))", &vocab).unwrap()).unwrap();
    for p in enumerate_profiles(&vocab, 10) {
        assert_eq!(f.holds(&p), g.holds(&p));
    }
}

#[test]
fn synthesis_reports() {
    let out = ok(&["synthesize", "k=1 counts=2,4"]);
    assert!(field(&out, "size").parse::<usize>().unwrap() <= 42);
    assert_eq!(field(&out, "bound"), "42");
    let out = ok(&["synthesize", "k=1 counts=1,2", "--d", "2"]);
    assert!(field(&out, "qrank").parse::<usize>().unwrap() <= 2);
    assert_eq!(field(&out, "verdict"), "defines_class");
    let out = ok(&["synthesize", "k=2 counts=30,30,30,30", "--verify-profiles", "10"]);
    assert_eq!(field(&out, "verdict"), "unverified");
}

#[test]
fn complexity_modes() {
    assert_eq!(field(&ok(&["complexity", "k=1 counts=5,5"]), "bounds"), "[12, 45]");
    assert_eq!(field(&ok(&["complexity", "k=1 counts=2,4"]), "bounds"), "[3, 42]");
    let out = ok(&["complexity", "--exact", "k=1 counts=0,2"]);
    assert_eq!(field(&out, "C"), "2");
    assert_eq!(field(&out, "witness"), "Ax1. P(x1)");
    let out = ok(&["complexity", "--exact", "--d", "1", "k=1 counts=1,2"]);
    assert_eq!(field(&out, "C_d"), "5");

    let out = run(&["complexity", "--exact", "--budget-size", "4", "k=1 counts=1,1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(field(&String::from_utf8(out.stdout).unwrap(), "C"), "> 4");
}

#[test]
fn game_examples() {
    let out = ok(&["game", "--a", "counts=0,1", "--b", "counts=1,0", "--r", "2", "--q", "1"]);
    assert_eq!(field(&out, "winner"), "S");
    assert_eq!(field(&out, "strategy"), "Ex1. P(x1)");
    assert_eq!(field(&out, "verified"), "true");
    let out = ok(&["game", "--a", "counts=0,1", "--b", "counts=1,0", "--r", "1", "--q", "1"]);
    assert_eq!(field(&out, "winner"), "D");
    let out = ok(&["game", "--a", "counts=1,1", "--b", "counts=1,1", "--r", "6", "--q", "3"]);
    assert_eq!(field(&out, "winner"), "D");
    // sizes must agree
    assert_eq!(run(&["game", "--a", "counts=1,1", "--b", "counts=1,0", "--r", "3", "--q", "1"]).status.code(), Some(2));
}

#[test]
fn exact_expectation_matches_labelled_models() {
    let out = ok(&["expected", "--n", "3", "--k", "1", "--exact", "--oracle"]);
    let vocab = Vocabulary::standard(1).unwrap();
    let budget = EnumerationBudget::with_max_size(8);
    let mut total = 0;
    for bits in 0..8usize {
        let s = UnaryStructure::new(vocab.clone(), (0..3).map(|e| (bits >> e) & 1).collect()).unwrap();
        total += exact_c(&s, &budget).unwrap().unwrap().size;
    }
    let mean: f64 = field(&out, "mean_exact").parse().unwrap();
    assert!((mean - total as f64 / 8.0).abs() < 1e-6, "{mean} vs {total}/8");
}

#[test]
fn sampled_expectation() {
    let out = ok(&["expected", "--n", "100", "--k", "2", "--samples", "2000", "--seed", "5"]);
    let frac: f64 = field(&out, "balanced_fraction").parse().unwrap();
    assert!(frac >= 0.92, "{frac}");
    assert_eq!(out, ok(&["expected", "--n", "100", "--k", "2", "--samples", "2000", "--seed", "5"]));
    let csv = ok(&["expected", "--n", "10", "--samples", "10", "--format", "csv"]);
    assert!(csv.starts_with("key,value\n"));
}

#[test]
fn plots_are_written_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("fig");
    let prefix = prefix.to_str().unwrap();
    ok(&["bounds-plot", "--format", "svg", "--out", prefix]);
    let csv = fs::read_to_string(format!("{prefix}.csv")).unwrap();
    assert!(csv.starts_with("p,f,h,lower,upper,upper_low_entropy,ceiling\n"));
    assert_eq!(csv.lines().count(), 513);
    assert!(!csv.contains("-0.000000"));
    let svg = fs::read_to_string(format!("{prefix}.svg")).unwrap();
    for tick in ["3n/4", "3n/2", "2n+c_τ"] {
        assert!(svg.contains(tick), "{tick}");
    }
    ok(&["bounds-plot", "--format", "svg", "--out", prefix]);
    assert_eq!(csv, fs::read_to_string(format!("{prefix}.csv")).unwrap());

    ok(&["bounds-plot", "--d", "10", "--format", "svg", "--out", prefix]);
    let steps = fs::read_to_string(format!("{prefix}.csv")).unwrap();
    assert!(steps.starts_with("h,lower_entropy,upper_entropy,lower,upper\n1,19.887923,6.643856,0,126\n"));
    let svg = fs::read_to_string(format!("{prefix}.svg")).unwrap();
    for tick in [">30<", ">60<", ">100<", ">200<"] {
        assert!(svg.contains(tick), "{tick}");
    }

    ok(&["bounds-plot", "--n", "60", "--region", "--out", prefix]);
    let region = fs::read_to_string(format!("{prefix}-region.csv")).unwrap();
    assert_eq!(region.lines().count(), 1 + 39711);
    assert!(region.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn samples_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let p = path.to_str().unwrap();
    ok(&["sample", "--n", "50", "--k", "2", "--seed", "9", "--out", p]);
    let first = fs::read_to_string(&path).unwrap();
    let s = ingest_csv_path(&path).unwrap();
    assert_eq!((s.n(), s.vocab().k()), (50, 2));
    ok(&["sample", "--n", "50", "--k", "2", "--seed", "9", "--out", p]);
    assert_eq!(first, fs::read_to_string(&path).unwrap());
    let out = ok(&["entropy", p]);
    assert_eq!(field(&out, "gap_holds"), "true");
}

#[test]
fn entropy_report() {
    let out = ok(&["entropy", "counts=1,1"]);
    assert_eq!(field(&out, "gap"), "0.500000");
    assert_eq!(field(&out, "gap_bound"), "0.940526");
    let out = ok(&["entropy", "counts=2,2", "--d", "1"]);
    assert_eq!(field(&out, "boltzmann"), format!("{:.6}", 6f64.log2()));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["synthesize", "k=1 counts=1,2,3"]).status.code(), Some(2));
    assert_eq!(run(&["entropy", "/no/such/file.csv"]).status.code(), Some(2));
    assert_eq!(run(&["synthesize"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    fs::write(&path, "P\n1\n2\n").unwrap();
    let out = run(&["synthesize", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}
