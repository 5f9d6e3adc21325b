//! Compiles a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(
        header_dir.join("orthoqkd.h").exists(),
        "header not generated"
    );

    // the test binary lives in target/<profile>/deps, next to the library
    // artifacts; `cargo build` additionally copies them up one level
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let lib = [deps, deps.parent().unwrap()]
        .iter()
        .map(|d| d.join("liborthoqkd_ffi.a"))
        .find(|p| p.exists())
        .expect("liborthoqkd_ffi.a next to the test binary");

    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("orthoqkd_smoke");
    let status = Command::new("cc")
        .arg("-std=c11")
        .arg("-D_DEFAULT_SOURCE")
        .arg("-Wall")
        .arg("-Werror")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("cc is available");
    assert!(status.success(), "C compile failed");

    let run = Command::new(&out).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(
        run.status.success(),
        "smoke binary failed: {:?} {}",
        run.status,
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(stdout.starts_with("ok "), "{stdout}");
}
