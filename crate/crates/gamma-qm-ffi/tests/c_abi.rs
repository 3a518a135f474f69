//! Compiles and runs a real C program against the generated header and the
//! static library, proving the ABI end to end.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include "gamma_qm.h"
#include <math.h>
#include <stdio.h>

static int check(int cond, const char *what) {
    if (!cond) {
        fprintf(stderr, "FAILED: %s\n", what);
        return 1;
    }
    return 0;
}

int main(void) {
    int failures = 0;
    GqFrame *frame = NULL;

    failures += check(gq_frame_new(0.5, 1.0, 1.0, 0.0, 1.0, &frame) == GQ_STATUS_OK,
                      "frame_new");

    double e1 = 0.0;
    failures += check(gq_well_energy(frame, 1.0, 1, &e1) == GQ_STATUS_OK, "well_energy");
    failures += check(fabs(e1 - 7.504172066822726) < 1e-12, "E_1 value");

    double u = 0.0;
    failures += check(gq_coord_to_u(frame, 1.0, &u) == GQ_STATUS_OK, "coord_to_u");
    failures += check(fabs(u - 0.8109302162163288) < 1e-14, "effective length");

    double moved = 0.0;
    failures += check(gq_translate_point(frame, 0.4, 0.1, &moved) == GQ_STATUS_OK,
                      "translate");
    failures += check(fabs(moved - 0.52) < 1e-14, "translate value");

    double bad = 0.0;
    failures += check(gq_qexp(1.0, -1.0, &bad) == GQ_STATUS_DOMAIN_ERROR,
                      "qexp domain error");
    gq_frame_free(frame);

    GqFrame *flat = NULL;
    failures += check(gq_frame_new(0.0, 1.0, 1.0, -0.5, 1.5, &flat) == GQ_STATUS_OK,
                      "flat frame");
    double t_closed = 0.0, t_matrix = 0.0;
    failures += check(gq_barrier_transmission(flat, 18.0, 1.0, 9.0, &t_closed) == GQ_STATUS_OK,
                      "barrier transmission");
    failures += check(fabs(t_closed - 8.256001834194439e-4) < 1e-12, "tunneling value");
    failures += check(gq_transfer_matrix_transmission(flat, 18.0, 1.0, 9.0, &t_matrix)
                          == GQ_STATUS_OK,
                      "transfer matrix");
    failures += check(fabs(t_closed - t_matrix) < 1e-10, "route agreement");

    double energies[3];
    failures += check(gq_solve_well_energies(flat, 1.0, 3, 400, energies, 3) == GQ_STATUS_OK,
                      "solve energies");
    failures += check(fabs(energies[0] - 4.934802200544679) < 1e-5, "numeric E_1");
    failures += check(energies[0] < energies[1] && energies[1] < energies[2],
                      "energy ordering");
    gq_frame_free(flat);

    if (failures == 0) {
        printf("c-abi ok\n");
    }
    return failures;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(
        header_dir.join("gamma_qm.h").exists(),
        "header not generated by build.rs"
    );

    // the staticlib lands in the workspace target dir next to this test's
    // own artifacts
    let mut lib_dir = PathBuf::from(std::env::current_exe().unwrap());
    lib_dir.pop(); // test binary
    if lib_dir.ends_with("deps") {
        lib_dir.pop();
    }
    let static_lib = lib_dir.join("libgamma_qm_ffi.a");
    assert!(static_lib.exists(), "missing {}", static_lib.display());

    let work = std::env::temp_dir().join("gamma_qm_c_abi");
    std::fs::create_dir_all(&work).unwrap();
    let c_path = work.join("abi_check.c");
    let bin_path = work.join("abi_check");
    std::fs::write(&c_path, C_PROGRAM).unwrap();

    let compile = Command::new("cc")
        .arg(&c_path)
        .arg("-I")
        .arg(&header_dir)
        .arg(&static_lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin_path)
        .output()
        .expect("cc not available");
    assert!(
        compile.status.success(),
        "compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&bin_path).output().unwrap();
    assert!(
        run.status.success(),
        "C program failed:\n{}\n{}",
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout), "c-abi ok\n");
    std::fs::remove_dir_all(&work).ok();
}
