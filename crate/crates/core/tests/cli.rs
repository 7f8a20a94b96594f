use std::process::{Command, Output};

fn ppc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ppc"))
        .args(args)
        .output()
        .expect("failed to run ppc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["enum", "1"], 0),
        (&["count", "4", "--method", "both"], 0),
        (&["classify", "1,2"], 1),
        (&["produce", "2,1"], 1),
        (&["classify", "1;2"], 2),
        (&["enum", "0"], 2),
        (&["count", "31", "--method", "brute"], 2),
        (&["forest", "even", "5"], 2),
        (&["verify", "--max", "3"], 2),
        (&["verify", "--max", "5"], 0),
        (&["bogus"], 2),
        (&[], 2),
    ];
    for (args, code) in cases {
        assert_eq!(ppc(args).status.code(), Some(*code), "{args:?}");
    }
}

#[test]
fn enum_outputs() {
    let out = ppc(&["enum", "1"]);
    assert_eq!(stdout(&out), "1\n");
    let out = ppc(&["enum", "6", "--ppc-only"]);
    assert_eq!(stdout(&out).lines().count(), 18);
    let out = ppc(&["enum", "4", "--ppc-only"]);
    let lines: std::collections::BTreeSet<String> =
        stdout(&out).lines().map(String::from).collect();
    let want: std::collections::BTreeSet<String> = ["1,1,1,1", "2,2", "1,3", "3,1", "1,2,1", "4"]
        .into_iter()
        .map(String::from)
        .collect();
    assert_eq!(lines, want);
}

#[test]
fn not_a_ppc_message() {
    let out = ppc(&["classify", "1,2"]);
    assert_eq!(String::from_utf8_lossy(&out.stderr).trim(), "not a ppc");
    assert!(out.stdout.is_empty());
}

#[test]
fn compact_and_canonical_input_agree() {
    for (a, b) in [("32141", "3,2,1,4,1"), ("113", "1,1,3"), ("212", "2,1,2")] {
        assert_eq!(
            stdout(&ppc(&["classify", a])),
            stdout(&ppc(&["classify", b]))
        );
        assert_eq!(stdout(&ppc(&["produce", a])), stdout(&ppc(&["produce", b])));
    }
}

#[test]
fn produce_compact_output() {
    let out = ppc(&["--compact", "produce", "1,1"]);
    assert_eq!(stdout(&out), "A 1111\nB 22\nC1 13\nC2 31\n");
}

#[test]
fn forest_dot_matches_figure() {
    let out = ppc(&["forest", "odd", "5", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    for edge in [
        "\"1,1,1\" -> \"1,1,1,1,1\" [label=\"A\"]",
        "\"1,1,1\" -> \"2,1,2\" [label=\"B\"]",
        "\"1,1,1\" -> \"1,1,3\" [label=\"C1\"]",
        "\"1,1,1\" -> \"3,1,1\" [label=\"C2\"]",
        "\"3\" -> \"1,3,1\" [label=\"A\"]",
        "\"3\" -> \"5\" [label=\"B\"]",
    ] {
        assert!(dot.contains(edge), "missing {edge}");
    }
    assert_eq!(dot.matches("->").count(), 6);
}

#[test]
fn verify_output_independent_of_jobs() {
    let serial = ppc(&["verify", "--max", "12", "--jobs", "1"]);
    let parallel = ppc(&["verify", "--max", "12", "--jobs", "3"]);
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn count_with_jobs_matches_serial() {
    let a = ppc(&["count", "18", "--method", "brute"]);
    let b = ppc(&["count", "18", "--method", "brute", "--jobs", "4"]);
    assert_eq!(stdout(&a), "13122\n");
    assert_eq!(a.stdout, b.stdout);
}
