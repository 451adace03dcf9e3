use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn dim(args: &[&str], files: &[&Path]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dim")).args(args).args(files).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const DIAMOND: &str = "p edge 4 5\ne 1 2\ne 1 3\ne 2 3\ne 2 4\ne 3 4\n";
const C4: &str = "p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";
const K4: &str = "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
const C6: &str = "p edge 6 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 1\n";
const P7: &str = "p edge 7 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\n";

#[test]
fn diamond_is_matched_by_its_mid_edge() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "diamond.txt", DIAMOND);
    let out = dim(&["solve"], &[&g]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("m 2 3"));
}

#[test]
fn c4_has_no_dim() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.txt", C4);
    assert_eq!(code(&dim(&["solve"], &[&g])), 1);
}

#[test]
fn k4_is_rejected_with_reason() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.txt", K4);
    let out = dim(&["solve", "--verify-class", "--json"], &[&g]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["reason"], "K4 found");
    assert_eq!(report["schema"], 1);
}

#[test]
fn spider_is_a_class_violation() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "s124.txt", "p edge 8 7\ne 1 2\ne 1 3\ne 3 4\ne 1 5\ne 5 6\ne 6 7\ne 7 8\n");
    let out = dim(&["solve", "--verify-class", "--json"], &[&g]);
    assert_eq!(code(&out), 3);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["class_check"], "violated");
    assert_eq!(report["witness"]["vertices"].as_array().unwrap().len(), 8);
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.txt", "p edge 2 1\ne 1 5\n");
    let out = dim(&["solve"], &[&g]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside"));
    assert_eq!(code(&dim(&["solve"], &[&dir.path().join("missing.txt")])), 2);
}

#[test]
fn check_c6_matchings() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c6.txt", C6);
    let good = write(&dir, "good.txt", "m 1 2\nm 4 5\n");
    let short = write(&dir, "short.txt", "m 1 2\n");
    let absent = write(&dir, "absent.txt", "m 1 4\n");
    assert_eq!(code(&dim(&["check"], &[&g, &good])), 0);
    assert_eq!(code(&dim(&["check"], &[&g, &short])), 1);
    assert_eq!(code(&dim(&["check"], &[&g, &absent])), 2);
    let p3 = write(&dir, "p3.txt", "p edge 3 2\ne 1 2\ne 2 3\n");
    let ab = write(&dir, "ab.txt", "m 1 2\n");
    assert_eq!(code(&dim(&["check"], &[&p3, &ab])), 0);
}

#[test]
fn solve_report_is_accepted_by_check() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("planted.txt");
    let gen = dim(&["generate", "--n", "60", "--seed", "7", "--weights", "1:5", "--output"], &[&g]);
    assert_eq!(code(&gen), 0);
    let out = dim(&["solve", "--json", "--min-weight"], &[&g]);
    assert_eq!(code(&out), 0);
    let report = write(&dir, "report.json", &stdout(&out));
    assert_eq!(code(&dim(&["check"], &[&g, &report])), 0);
}

#[test]
fn detect_spiders_and_diamonds() {
    let dir = TempDir::new().unwrap();
    let spider = dir.path().join("s.txt");
    assert_eq!(code(&dim(&["generate", "--mode", "gadget", "--gadget", "S_{1,2,4}", "--output"], &[&spider])), 0);
    let p7 = write(&dir, "p7.txt", P7);
    let diamond = write(&dir, "d.txt", DIAMOND);
    let found = |g: &Path, pattern: &[&str]| -> serde_json::Value {
        let out = Command::new(env!("CARGO_BIN_EXE_dim")).arg("detect").arg(g).args(pattern).output().unwrap();
        assert_eq!(code(&out), 0);
        serde_json::from_str::<serde_json::Value>(&stdout(&out)).unwrap()["witnesses"].clone()
    };
    assert_eq!(found(&spider, &["s 1 2 4"]).as_array().unwrap().len(), 1);
    assert!(found(&p7, &["s", "1", "2", "4"]).as_array().unwrap().is_empty());
    let w = found(&diamond, &["diamond"]);
    assert_eq!(w[0]["mid_edge"], serde_json::json!([2, 3]));
    assert_eq!(code(&dim(&["detect"], &[&diamond, Path::new("hexagon")])), 2);
}

#[test]
fn oracle_modes() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c6.txt", C6);
    let out = dim(&["oracle", "--mode", "enumerate", "--json"], &[&g]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["count"], 3);
    let c4 = write(&dir, "c4.txt", C4);
    assert_eq!(code(&dim(&["oracle"], &[&c4])), 1);
}

#[test]
fn generated_matching_is_a_dim() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.txt");
    let m = dir.path().join("m.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_dim"))
        .args(["generate", "--n", "80", "--seed", "2", "--output"])
        .arg(&g)
        .arg("--matching-output")
        .arg(&m)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(code(&dim(&["check"], &[&g, &m])), 0);
    let again = dir.path().join("g2.txt");
    dim(&["generate", "--n", "80", "--seed", "2", "--output"], &[&again]);
    assert_eq!(std::fs::read(&g).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn compare_corpora() {
    let dir = TempDir::new().unwrap();
    let repro = dir.path().join("repro");
    let repro = repro.to_str().unwrap();
    let out = dim(&["compare", "--exhaustive", "6", "--json", "--reproducers", repro], &[]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["disagreements"], 0);
    assert_eq!(report["instances"], report["agreements"]);

    let planted = dim(&["compare", "--planted", "5", "--n", "200", "--json", "--reproducers", repro], &[]);
    assert_eq!(code(&planted), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&planted)).unwrap();
    assert_eq!(report["matrix"]["found/feasible"], 5);

    let empty = dir.path().join("empty");
    std::fs::create_dir(&empty).unwrap();
    let out = dim(&["compare", "--dir"], &[&empty]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty corpus"));
}

#[test]
fn compare_reads_a_directory() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("corpus");
    std::fs::create_dir(&corpus).unwrap();
    write(&dir, "corpus/a.txt", C6);
    write(&dir, "corpus/b.txt", C4);
    let out = dim(&["compare", "--json", "--dir"], &[&corpus]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["instances"], 2);
    assert!(report["reproducers"].as_array().unwrap().is_empty());
}
