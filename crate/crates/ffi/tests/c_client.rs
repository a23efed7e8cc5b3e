use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <math.h>
#include "mermin.h"

int main(void) {
    MerminState *u = NULL;
    if (mermin_state_named("ghz4", NULL, NULL, 0, &u) != MERMIN_STATUS_OK) return 10;
    double x[12] = {1,0,0, 1,0,0, 1,0,0, 1,0,0};
    double y[12] = {0,1,0, 0,1,0, 0,1,0, 0,1,0};
    double mu = 0.0;
    if (mermin_expectation(u, x, y, &mu) != MERMIN_STATUS_OK) return 11;
    if (fabs(mu - 8.0) > 1e-12) return 12;

    bool explainable = true;
    uint64_t count = 1;
    if (mermin_device_verdict("u3", &explainable, &count) != MERMIN_STATUS_OK) return 13;
    if (explainable || count != 0) return 14;

    MerminPauliSum *p = NULL;
    if (mermin_pauli_parse("s(1,2", 0, &p) != MERMIN_STATUS_PARSE) return 15;
    if (mermin_last_error_message() == NULL) return 16;

    mermin_state_free(u);
    printf("ok %s\n", mermin_version());
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn compiler() -> Option<String> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
        .map(str::to_owned)
}

#[test]
fn c_program_links_against_static_library() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let lib = target_dir().join("libmermin_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let bin = dir.path().join("client");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "compile/link failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "client exit {:?}", out.status);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
