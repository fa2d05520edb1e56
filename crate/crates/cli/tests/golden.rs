use std::path::PathBuf;
use std::process::Command;

/// Runs `ord` and compares stdout with `tests/golden/<name>.txt`. Set
/// `ORD_UPDATE_GOLDEN=1` to rewrite the files.
fn assert_golden(name: &str, args: &[&str]) {
    let out = Command::new(env!("CARGO_BIN_EXE_ord"))
        .args(args)
        .env_remove("ORD_MAX_NODES")
        .output()
        .expect("spawn ord");
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{}.txt", name));
    if std::env::var_os("ORD_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
        return;
    }
    let expected = std::fs::read(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&expected),
        "output of {:?} differs from {}",
        args,
        path.display()
    );
}

#[test]
fn braid_sign() {
    assert_golden("braid_sign", &["braid", "sign", "--strands", "3", "--word", "1 2 -1"]);
}

#[test]
fn braid_sign_structured() {
    assert_golden(
        "braid_sign_structured",
        &["braid", "sign", "--strands", "3", "--word", "1 2 -1", "--format", "structured"],
    );
}

#[test]
fn braid_least_b4() {
    assert_golden("braid_least_b4", &["braid", "least", "--strands", "4"]);
}

#[test]
fn braid_reduce() {
    assert_golden("braid_reduce", &["braid", "reduce", "--strands", "3", "--word", "1 2 -1 -2"]);
}

#[test]
fn klein_kernel() {
    assert_golden("klein_kernel", &["klein", "kernel", "--m-bound", "3"]);
}

#[test]
fn klein_orderings() {
    assert_golden("klein_orderings", &["klein", "orderings"]);
}

#[test]
fn klein_witness_structured() {
    assert_golden(
        "klein_witness_structured",
        &["klein", "witness", "--aut", "(-1,1,0)", "--format", "structured"],
    );
}

#[test]
fn abelian_eigen() {
    assert_golden("abelian_eigen", &["abelian", "eigen", "--matrix", "[[1,2],[1,1]]"]);
}

#[test]
fn abelian_eigen_minus() {
    assert_golden("abelian_eigen_minus", &["abelian", "eigen", "--matrix", "[[-1,-2],[-1,-1]]"]);
}

#[test]
fn abelian_star_scalar() {
    assert_golden("abelian_star_scalar", &["abelian", "star", "--matrix", "[[3/2,0],[0,3/2]]"]);
}

#[test]
fn abelian_vlo_a() {
    assert_golden("abelian_vlo_a", &["abelian", "vlo", "--matrix", "[[1,2],[1,1]]"]);
}

#[test]
fn free_witness_inner_x() {
    assert_golden("free_witness_inner_x", &["free", "witness", "--aut", "inner-x"]);
}

#[test]
fn ext_verify() {
    assert_golden("ext_verify", &["ext", "verify"]);
}

#[test]
fn ext_least_structured() {
    assert_golden("ext_least_structured", &["ext", "least", "--format", "structured"]);
}

#[test]
fn lospace_enum_z() {
    assert_golden("lospace_enum_z", &["lospace", "enum", "--group", "z", "--radius", "3"]);
}

#[test]
fn lospace_separate_klein() {
    assert_golden(
        "lospace_separate_klein",
        &["lospace", "separate", "--group", "klein", "--first", "P(+,+)", "--second", "P(-,+)"],
    );
}

#[test]
fn verify_matrix_structured() {
    assert_golden("verify_matrix_structured", &["verify", "matrix", "--format", "structured"]);
}
