use std::ffi::{c_char, CStr};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use sl2torus::generators::cyclic_generator;
use sl2torus_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    sl2_string_free(s);
    out
}

#[test]
fn generator_round_trip() {
    unsafe {
        let mut v = ptr::null_mut();
        assert_eq!(sl2_cyclic_generator(4, 2, 5, &mut v), Sl2Status::Ok);
        let mut n = 0usize;
        assert_eq!(sl2_vvmf_component_count(v, &mut n), Sl2Status::Ok);
        assert_eq!(n, 3);
        let mut mu = 0u32;
        assert_eq!(sl2_vvmf_component_label(v, 2, &mut mu), Sl2Status::Ok);
        assert_eq!(mu, 3);
        let mut js = ptr::null_mut();
        assert_eq!(sl2_vvmf_to_json(v, &mut js), Sl2Status::Ok);
        let parsed: sl2torus::generators::VvmfVector = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(parsed, cyclic_generator(4, 2, 5).unwrap());

        let mut s = ptr::null_mut();
        assert_eq!(sl2_vvmf_component(v, 0, &mut s), Sl2Status::Ok);
        let mut c = ptr::null_mut();
        assert_eq!(sl2_series_coeff(s, 1, &mut c), Sl2Status::Ok);
        assert_eq!(take(c), "11/9");
        let mut x = 0.0;
        assert_eq!(sl2_series_coeff_f64(s, 1, &mut x), Sl2Status::Ok);
        assert!((x - 11.0 / 9.0).abs() < 1e-15);
        assert_eq!(sl2_series_coeff(s, 5, &mut c), Sl2Status::InvalidArgument);
        sl2_series_free(s);
        assert_eq!(sl2_vvmf_component(v, 3, &mut s), Sl2Status::InvalidArgument);
        sl2_vvmf_free(v);
    }
}

#[test]
fn series_operations() {
    unsafe {
        let mut e4 = ptr::null_mut();
        let mut e6 = ptr::null_mut();
        assert_eq!(sl2_series_eisenstein(4, 10, &mut e4), Sl2Status::Ok);
        assert_eq!(sl2_series_eisenstein(6, 10, &mut e6), Sl2Status::Ok);
        let mut d = ptr::null_mut();
        assert_eq!(sl2_series_modular_derivative(e4, 4, 1, &mut d), Sl2Status::Ok);
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(sl2_series_to_json(d, &mut a), Sl2Status::Ok);
        assert_eq!(sl2_series_to_json(e6, &mut b), Sl2Status::Ok);
        let d_s: sl2torus::QExpansion = serde_json::from_str(&take(a)).unwrap();
        let e6_s: sl2torus::QExpansion = serde_json::from_str(&take(b)).unwrap();
        assert!(d_s.agrees_with(&e6_s.scale(&sl2torus::rational::int(14))));

        let mut eta = ptr::null_mut();
        assert_eq!(sl2_series_eta_power(1, 2, 8, &mut eta), Sl2Status::Ok);
        let mut sq = ptr::null_mut();
        assert_eq!(sl2_series_mul(eta, eta, &mut sq), Sl2Status::Ok);
        let mut lead = ptr::null_mut();
        assert_eq!(sl2_series_leading_exponent(sq, &mut lead), Sl2Status::Ok);
        assert_eq!(take(lead), "1/24");
        let mut order = 0usize;
        assert_eq!(sl2_series_order(sq, &mut order), Sl2Status::Ok);
        assert_eq!(order, 8);
        assert_eq!(sl2_series_eta_power(1, 0, 8, &mut eta), Sl2Status::InvalidArgument);
        let mut j = ptr::null_mut();
        assert_eq!(sl2_series_j_inverse(6, &mut j), Sl2Status::Ok);
        assert_eq!(sl2_series_eisenstein(3, 6, &mut j), Sl2Status::InvalidArgument);
        for h in [e4, e6, d, eta, sq, j] {
            sl2_series_free(h);
        }
    }
}

#[test]
fn modular_pair_access() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(sl2_gen_modular_pair(5, 2, 1e-9, &mut m), Sl2Status::Ok);
        let mut n = 0usize;
        assert_eq!(sl2_pair_dimension(m, &mut n), Sl2Status::Ok);
        assert_eq!(n, 4);
        let mut label = 0u32;
        assert_eq!(sl2_pair_basis_label(m, 3, &mut label), Sl2Status::Ok);
        assert_eq!(label, 4);
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(sl2_pair_s_entry(m, 1, 1, &mut re, &mut im), Sl2Status::Ok);
        assert!((re + 0.1573).abs() < 1e-3 && (im + 0.3267).abs() < 1e-3);
        assert_eq!(sl2_pair_t_entry(m, 0, &mut re, &mut im), Sl2Status::Ok);
        assert!(((re * re + im * im) - 1.0).abs() < 1e-12);
        let (mut r1, mut r2) = (1.0, 1.0);
        assert_eq!(sl2_pair_residuals(m, &mut r1, &mut r2), Sl2Status::Ok);
        assert!(r1 < 1e-9 && r2 < 1e-9);
        let mut js = ptr::null_mut();
        assert_eq!(sl2_pair_to_json(m, &mut js), Sl2Status::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(v["basis"], serde_json::json!([1, 2, 3, 4]));
        assert_eq!(sl2_pair_s_entry(m, 4, 0, &mut re, &mut im), Sl2Status::InvalidArgument);
        sl2_pair_free(m);

        assert_eq!(sl2_gen_modular_pair(4, 1, 1e-9, &mut m), Sl2Status::InvalidArgument);
        assert_eq!(sl2_gen_modular_pair(60, 0, 1e-9, &mut m), Sl2Status::Refused);
        assert_eq!(sl2_gen_modular_pair(4, 2, 0.0, &mut m), Sl2Status::RelationViolation);
    }
}

#[test]
fn json_reports_and_errors() {
    unsafe {
        let mut js = ptr::null_mut();
        assert_eq!(sl2_classify_json(4, 2, &mut js), Sl2Status::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(v["t_order"], 72);
        assert_eq!(sl2_mlde_json(3, 2, 6, &mut js), Sl2Status::Ok);
        assert!(take(js).contains("25/4"));
        assert_eq!(sl2_character_json(2, 2, 3, &mut js), Sl2Status::Ok);
        assert!(take(js).contains("qorder"));
        let mut f = 9u32;
        assert_eq!(sl2_fusion_coefficient(3, 1, 1, 2, &mut f), Sl2Status::Ok);
        assert_eq!(f, 1);

        assert!(sl2_last_error_message().is_null());
        assert_eq!(sl2_cyclic_generator(6, 2, 5, ptr::null_mut()), Sl2Status::UnsupportedDimension);
        assert!(take(sl2_last_error_message()).contains("dimension 5"));
        let mut v = ptr::null_mut();
        assert_eq!(sl2_cyclic_generator(4, 2, 5, ptr::null_mut()), Sl2Status::NullPointer);
        let mut n = 0usize;
        assert_eq!(sl2_vvmf_component_count(ptr::null(), &mut n), Sl2Status::NullPointer);
        assert_eq!(sl2_cyclic_generator(4, 2, 5, &mut v), Sl2Status::Ok);
        assert!(sl2_last_error_message().is_null());
        sl2_vvmf_free(v);
        sl2_vvmf_free(ptr::null_mut());
        sl2_string_free(ptr::null_mut());
        assert_eq!(take(sl2_version()), env!("CARGO_PKG_VERSION"));
    }
}

/// Builds and runs a small C program against the generated header and the
/// static library.
#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = target_dir.join("libsl2torus_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("sl2torus_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available as `cc`");
    assert!(status.success(), "C smoke program failed to build");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
