use std::io::Write;
use std::process::{Command, Output};

fn tlyndon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlyndon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = tlyndon(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn factorize_prints_prime_powers() {
    assert_eq!(stdout(&["factorize", "a"]), "a^[1]\n");
    assert_eq!(
        stdout(&["factorize", "(a^w b)^w a^w", "--engine", "both"]),
        "(a^wb)^[w] * a^[w]\n"
    );
    assert_eq!(
        stdout(&["factorize", "(a^ω b)^ω a^ω", "--engine", "structural"]),
        "(a^wb)^[w] * a^[w]\n"
    );
}

#[test]
fn marked_output() {
    assert_eq!(
        stdout(&["factorize", "(bba)^w", "--marked"]),
        "‖b|b‖a(bb|a)^w‖\nb^[2] * (abb)^[w]\n"
    );
    assert_eq!(
        stdout(&["factorize", "(bba)^w", "--marked", "--ascii"]),
        "||b|b||a(bb|a)^w||\nb^[2] * (abb)^[w]\n"
    );
}

#[test]
fn trace_lists_the_history_pairs() {
    let out = stdout(&["factorize", "(a^w b)^w a^w", "--trace"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 16);
    assert_eq!(lines[0], "⟨1,0⟩ case=init");
    assert_eq!(lines[6], "⟨7,3⟩ case=1b");
    assert_eq!(lines[14], "⟨12,10⟩ case=1c");
}

#[test]
fn json_report() {
    let out = stdout(&["factorize", "(bba)^w", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["input"], "(bba)^w");
    assert_eq!(v["tau"], "bba(bba)^w");
    assert_eq!(v["states"], 8);
    assert_eq!(v["q_main"], serde_json::json!([0, 2, 7]));
    assert_eq!(v["q_secondary"], serde_json::json!([1, 5]));
    assert_eq!(
        v["factors"],
        serde_json::json!([
            {"prime": "b", "exponent": "2"},
            {"prime": "abb", "exponent": "w"}
        ])
    );
    assert!(v["steps"].as_u64().unwrap() <= 7 * 7 * 7);
    assert!(out.starts_with("{\"input\""));
}

#[test]
fn compare_symbols() {
    assert_eq!(stdout(&["compare", "ab^w", "ba^w"]), "<\n");
    assert_eq!(stdout(&["compare", "ba^w", "ab^w"]), ">\n");
    assert_eq!(stdout(&["compare", "(ab)^w", "ab(ab)^w"]), "=\n");
    assert_eq!(stdout(&["compare", "a^w", "a^w b"]), "< (prefix)\n");
    assert_eq!(stdout(&["compare", "a^w b", "a^w"]), "> (prefix)\n");
}

#[test]
fn compile_listing() {
    let out = stdout(&["compile", "(a^w b)^w a^w"]);
    assert!(out.contains("word: (0a1w2b)3w4a5w6\n"), "{out}");
    assert!(out.starts_with("states: 7\n"));
    assert!(out.contains("  {1..3} => 4\n"));
    assert!(stdout(&["compile", "a"]).starts_with("states: 2\n"));
    assert!(stdout(&["compile", "bba(bba)^w"]).starts_with("states: 8\n"));
}

#[test]
fn compile_dot() {
    let out = stdout(&["compile", "a^wb", "--dot"]);
    assert!(out.starts_with("digraph automaton {"));
    assert!(out.contains("q1 -> q2 [style=dashed label=\"{1..1}\"];"));
    assert!(out.trim_end().ends_with('}'));
}

#[test]
fn tau_and_prime() {
    assert_eq!(stdout(&["tau", "(bba)^w"]), "bba(bba)^w\n");
    assert_eq!(stdout(&["prime", "a^wb"]), "prime\n");
    assert_eq!(
        stdout(&["prime", "aba"]),
        "not prime: suffix a from state 2 is smaller\n"
    );
    assert_eq!(
        stdout(&["prime", "(ab)^w"]),
        "not prime: power of ab with exponent w\n"
    );
}

#[test]
fn custom_alphabet_order() {
    assert_eq!(
        stdout(&["--alphabet", "ba", "factorize", "ab"]),
        "a^[1] * b^[1]\n"
    );
    assert_eq!(stdout(&["compare", "--alphabet", "ba", "a", "b"]), ">\n");
}

#[test]
fn exit_codes() {
    let out = tlyndon(&["factorize", "(("]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));
    assert_eq!(
        tlyndon(&["factorize", "x", "--alphabet", "ab"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(tlyndon(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(
        tlyndon(&["batch", "/nonexistent/file"]).status.code(),
        Some(1)
    );
    assert_eq!(
        tlyndon(&["factorize", "a", "--engine", "structural", "--marked"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(tlyndon(&["--help"]).status.code(), Some(0));
}

#[test]
fn batch_records() {
    let dir = std::env::temp_dir().join(format!("tlyndon-batch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("corpus.txt");
    let mut f = std::fs::File::create(&file).unwrap();
    writeln!(f, "# corpus\na\n((\n\n(bba)^w").unwrap();
    drop(f);
    let out = stdout(&["batch", file.to_str().unwrap()]);
    let records: Vec<serde_json::Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 3);
    assert_eq!(records[0]["line"], 2);
    assert_eq!(records[0]["result"]["factors"][0]["prime"], "a");
    assert_eq!(records[1]["ok"], false);
    assert!(records[1]["error"]
        .as_str()
        .unwrap()
        .contains("syntax error"));
    assert_eq!(records[2]["result"]["tau"], "bba(bba)^w");
    assert!(records.iter().all(|r| r["ms"].as_f64().unwrap() >= 0.0));

    std::fs::write(&file, "").unwrap();
    assert_eq!(stdout(&["batch", file.to_str().unwrap()]), "");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_passes() {
    let out = stdout(&["selftest", "--cases", "100", "--seed", "11"]);
    assert_eq!(out, "selftest: 100 cases, seed 11, no failures\n");
}
