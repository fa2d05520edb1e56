use ord_cli::run_command;

fn run(args: &[&str]) -> ord_cli::Outcome {
    let mut argv = vec!["ord"];
    argv.extend_from_slice(args);
    run_command(argv)
}

#[test]
fn success_is_zero() {
    let out = run(&["braid", "sign", "--strands", "3", "--word", "1 2 -1"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "+\n");
    assert!(out.stderr.is_empty());
}

#[test]
fn identity_sign_is_zero_symbol() {
    let out = run(&["braid", "sign", "--strands", "3", "--word", "1 -1"]);
    assert_eq!(out.stdout, "0\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["nonsense"]).code, 2);
    assert_eq!(run(&["braid", "sign", "--word"]).code, 2);
    let out = run(&["braid", "sign", "--strands", "3", "--word", "1 x"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("parse-error"), "{}", out.stderr);
    let out = run(&["braid", "sign", "--strands", "3", "--word", "5"]);
    assert_eq!(out.code, 2);
    assert_eq!(run(&["verify", "no-such-suite"]).code, 2);
    assert_eq!(run(&["lospace", "enum", "--group", "q7"]).code, 2);
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("verify"));
}

#[test]
fn budget_exhaustion_exits_one_with_class() {
    let word = "1 2 3 -1 -2 -3 2 -1 3 1 -2 -3 -1 2 1 -3 2 1 -2 -1 3";
    let out = run(&["braid", "sign", "--strands", "4", "--word", word, "--budget", "0"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("budget-exceeded"), "{}", out.stderr);
}

#[test]
fn refused_extension_exits_one() {
    let out = run(&["ext", "build", "--flag", "(√2,1)"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("precondition-failed"));
}

#[test]
fn identity_input_is_computational() {
    let out = run(&["abelian", "sign", "--flag", "(√2,1)", "--vector", "(0,0)"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("identity-input"));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = std::env::temp_dir().join(format!("ord-config-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ord.toml");
    std::fs::write(&path, "format = \"structured\"\nstrands = 4\nordering = \"order-2\"\nradius = 3\n").unwrap();
    let p = path.to_str().unwrap();

    let out = run(&["braid", "least", "--config", p]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("strands: 4"));
    assert!(out.stdout.contains("ordering: order-2"));
    assert!(out.stdout.contains("least: 2\n"));

    let out = run(&["braid", "least", "--config", p, "--format", "text", "--strands", "3", "--ordering", "dehornoy", "--radius", "4"]);
    assert_eq!(out.stdout, "σ₂\n");

    std::fs::write(&path, "colour = 1\n").unwrap();
    assert_eq!(run(&["braid", "least", "--config", p]).code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_suite_exit_reflects_result() {
    let out = run(&["verify", "klein-kernel"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("klein-kernel PASSED"));
}

#[test]
fn node_limit_env_is_honoured() {
    // Runs in-process; no other test in this binary reads the variable.
    std::env::set_var("ORD_MAX_NODES", "4");
    let out = run(&["lospace", "enum", "--group", "z2", "--radius", "3"]);
    std::env::remove_var("ORD_MAX_NODES");
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("size-limit"));
}
