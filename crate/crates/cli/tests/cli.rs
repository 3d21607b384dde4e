use intcover_cli::run;

struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

fn invoke(args: &[&str], stdin: &str) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("intcover").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn pipe(first: &[&str], second: &[&str]) -> Outcome {
    let gen = invoke(first, "");
    assert_eq!(gen.code, 0, "{}", gen.stderr);
    invoke(second, &gen.stdout)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/tests/golden/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

#[test]
fn tight_greedy_two_prefix() {
    let o = pipe(&["gen-tight", "--s", "10"], &["solve-greedy", "--k", "2"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.ends_with("value: 16\n"), "{}", o.stdout);
}

#[test]
fn counterexample_violation() {
    let o = pipe(
        &["gen-counterexample", "--preset", "u2"],
        &["verify-dr", "--k-max", "4"],
    );
    assert_eq!(o.code, 0);
    assert!(
        o.stdout.contains("violation at k=4: 12 < 16"),
        "{}",
        o.stdout
    );
}

#[test]
fn intervals_show_no_violation() {
    let o = pipe(
        &[
            "gen-random",
            "--n",
            "40",
            "--m",
            "12",
            "--seed",
            "5",
            "--chain",
        ],
        &["verify-dr"],
    );
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.ends_with("no violation\n"));
}

#[test]
fn negative_k_is_a_usage_error() {
    let o = invoke(&["solve-exact", "--k", "-1"], "points: 1\ninterval: 0 1\n");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("--k"), "{}", o.stderr);
    assert_eq!(o.stderr.lines().count(), 1);
}

#[test]
fn input_errors_exit_one() {
    let o = invoke(&["solve-exact", "--k", "1"], "points: 1\ninterval: 5 3\n");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);

    let o = invoke(&["solve-approx", "--k", "2", "--eps", "0"], "");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("--eps"), "{}", o.stderr);

    let o = invoke(&["solve-exact", "--k", "1", "--bogus"], "");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("--bogus"));

    let o = pipe(
        &["gen-tight", "--s", "10"],
        &["ratio-report", "--k-max", "4"],
    );
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("--k-max"));

    let o = invoke(&["gen-tight", "--s", "7"], "");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("--s"));

    let o = invoke(&["gen-counterexample", "--gamma", "4/5"], "");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("β − α < γ − β"), "{}", o.stderr);

    let o = pipe(&["gen-counterexample"], &["solve-exact", "--k", "2"]);
    assert_eq!(o.code, 1);
}

#[test]
fn help_exits_zero() {
    let o = invoke(&["--help"], "");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("solve-approx"));
}

#[test]
fn csv_goldens() {
    let cases: [(&[&str], &[&str], &str); 6] = [
        (
            &["gen-tight", "--s", "10"],
            &["ratio-report", "--format", "csv"],
            "ratio_report_tight10.csv",
        ),
        (
            &["gen-tight", "--s", "10"],
            &["solve-greedy", "--format", "csv"],
            "solve_greedy_tight10.csv",
        ),
        (
            &["gen-tight", "--s", "10"],
            &["solve-exact", "--k", "2", "--format", "csv"],
            "solve_exact_tight10_k2.csv",
        ),
        (
            &["gen-tight", "--s", "10"],
            &["solve-approx", "--k", "2", "--eps", "1", "--format", "csv"],
            "solve_approx_tight10_k2.csv",
        ),
        (
            &["gen-counterexample"],
            &["verify-dr", "--k-max", "4", "--format", "csv"],
            "verify_dr_u2.csv",
        ),
        (
            &["gen-counterexample"],
            &["brute", "--k", "4", "--format", "csv"],
            "brute_u2_k4.csv",
        ),
    ];
    for (gen, solve, file) in cases {
        let o = pipe(gen, solve);
        assert_eq!(o.code, 0, "{file}: {}", o.stderr);
        assert_eq!(o.stdout, golden(file), "{file}");
    }
}

#[test]
fn eps_accepts_decimal_and_fraction() {
    let a = pipe(
        &["gen-tight", "--s", "10"],
        &[
            "solve-approx",
            "--k",
            "2",
            "--eps",
            "0.5",
            "--format",
            "csv",
        ],
    );
    let b = pipe(
        &["gen-tight", "--s", "10"],
        &[
            "solve-approx",
            "--k",
            "2",
            "--eps",
            "1/2",
            "--format",
            "csv",
        ],
    );
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    // floor(1/10 * 3) = 0 falls back to the exact solver
    let c = pipe(
        &["gen-tight", "--s", "10"],
        &["solve-approx", "--k", "3", "--eps", "0.1"],
    );
    assert!(c.stdout.contains("fallback"), "{}", c.stdout);
    assert!(c.stdout.contains("value: 20"));
}

#[test]
fn generators_are_deterministic_and_round_trip() {
    let args = [
        "gen-random",
        "--n",
        "30",
        "--m",
        "10",
        "--seed",
        "9",
        "--lo",
        "-20",
        "--hi",
        "40",
    ];
    let a = invoke(&args, "");
    let b = invoke(&args, "");
    assert_eq!(a.stdout, b.stdout);
    let back = intcover::io::parse_instance(&a.stdout).unwrap();
    assert_eq!(intcover::io::format_instance(&back), a.stdout);
}

#[test]
fn files_in_and_out() {
    let dir = std::env::temp_dir().join(format!("intcover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let inst = dir.join("tight.txt");
    let report = dir.join("report.csv");
    let inst_s = inst.to_str().unwrap();
    assert_eq!(
        invoke(&["gen-tight", "--s", "10", "--output", inst_s], "").code,
        0
    );
    let o = invoke(
        &[
            "ratio-report",
            "--input",
            inst_s,
            "--output",
            report.to_str().unwrap(),
            "--format",
            "csv",
        ],
        "",
    );
    assert_eq!(o.code, 0);
    assert_eq!(
        std::fs::read_to_string(&report).unwrap(),
        golden("ratio_report_tight10.csv")
    );
    let missing = invoke(
        &["solve-exact", "--k", "1", "--input", "/nonexistent/x"],
        "",
    );
    assert_eq!(missing.code, 1);
    assert!(missing.stderr.contains("--input"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn brute_matches_exact_on_intervals() {
    let gen = invoke(
        &[
            "gen-random",
            "--n",
            "12",
            "--m",
            "8",
            "--seed",
            "3",
            "--chain",
            "--hi",
            "30",
        ],
        "",
    );
    for k in 0..=4 {
        let ks = k.to_string();
        let brute = invoke(&["brute", "--k", &ks, "--format", "csv"], &gen.stdout);
        let exact = invoke(&["solve-exact", "--k", &ks, "--format", "csv"], &gen.stdout);
        let value = |s: &str| {
            s.lines()
                .nth(1)
                .unwrap()
                .split(',')
                .nth(1)
                .unwrap()
                .to_string()
        };
        assert_eq!(value(&brute.stdout), value(&exact.stdout), "k={k}");
    }
}
