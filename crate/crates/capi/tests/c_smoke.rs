//! Compiles `tests/smoke.c` against the generated header and the static
//! library, then runs it — the one test that crosses a real language
//! boundary.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let source = manifest.join("tests").join("smoke.c");

    // target/<profile>/ holds libopenbook_capi.a; the test binary itself
    // runs from target/<profile>/deps/.
    let target_dir = std::env::current_exe()
        .expect("test binary path")
        .parent()
        .and_then(|deps| deps.parent())
        .expect("target profile dir")
        .to_path_buf();
    let archive = target_dir.join("libopenbook_capi.a");
    assert!(archive.exists(), "static library not found at {archive:?}");

    let binary = target_dir.join("capi-smoke-test");
    let compile = Command::new("cc")
        .arg(&source)
        .arg("-I")
        .arg(&include)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-o")
        .arg(&binary)
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm"])
        .output()
        .expect("cc is installed");
    assert!(
        compile.status.success(),
        "compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().expect("smoke binary runs");
    assert!(
        run.status.success(),
        "smoke test failed (code {:?}):\nstdout: {}\nstderr: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
