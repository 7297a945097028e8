use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use ckhopf_ffi::*;

fn parse(text: &str) -> *mut CkElement {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ck_element_parse(c.as_ptr(), &mut out) }, CkStatus::Ok);
    out
}

/// Takes ownership of a library string.
fn take(s: *mut c_char) -> String {
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { ck_string_free(s) };
    owned
}

fn render(x: *const CkElement) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ck_element_to_string(x, &mut s) }, CkStatus::Ok);
    take(s)
}

fn last_error() -> String {
    let p = ck_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn algebra_operations() {
    let a = parse("[[]] []");
    let b = parse("[]");
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(ck_prelie(a, b, &mut out), CkStatus::Ok);
        assert_eq!(render(out), "1*[[][]] [] + 1*[[[]]] [] + 1*[[]] [[]]");
        ck_element_free(out);

        assert_eq!(ck_product(a, b, &mut out), CkStatus::Ok);
        assert_eq!(render(out), "1*[[]] [] []");
        ck_element_free(out);

        let d2 = parse("[[]]");
        for method in [CkAntipodeMethod::Recursive, CkAntipodeMethod::Takeuchi] {
            assert_eq!(ck_antipode(d2, method, &mut out), CkStatus::Ok);
            assert_eq!(render(out), "-1*[[]] + 1*[] []");
            ck_element_free(out);
        }

        assert_eq!(ck_graft(a, &mut out), CkStatus::Ok);
        assert_eq!(render(out), "1*[[[]][]]");
        ck_element_free(out);

        assert_eq!(ck_grow(d2, &mut out), CkStatus::Ok);
        assert_eq!(render(out), "1*[[][]] + 1*[[[]]]");
        ck_element_free(out);

        let mut s = ptr::null_mut();
        assert_eq!(ck_counit(d2, &mut s), CkStatus::Ok);
        assert_eq!(take(s), "0");
        assert_eq!(ck_element_to_json(d2, &mut s), CkStatus::Ok);
        assert_eq!(take(s), r#"[{"coefficient":"1","forest":"[[]]"}]"#);

        let mut t = ptr::null_mut();
        assert_eq!(ck_coproduct(d2, &mut t), CkStatus::Ok);
        assert_eq!(ck_tensor_len(t), 3);
        assert_eq!(ck_tensor_to_string(t, &mut s), CkStatus::Ok);
        assert_eq!(take(s), "[[]]⊗1 + []⊗[] + 1⊗[[]]");
        assert_eq!(ck_tensor_to_json(t, &mut s), CkStatus::Ok);
        assert!(take(s).starts_with('['));
        ck_tensor_free(t);

        ck_element_free(d2);
        ck_element_free(a);
        ck_element_free(b);
    }
}

#[test]
fn coefficients_and_polynomials() {
    unsafe {
        let mut d4 = ptr::null_mut();
        assert_eq!(ck_delta(4, &mut d4), CkStatus::Ok);
        assert_eq!(render(d4), "1*[[][][]] + 3*[[[]][]] + 1*[[[][]]] + 1*[[[[]]]]");
        ck_element_free(d4);

        let mut table = ptr::null_mut();
        for method in [CkCoeffMethod::Extract, CkCoeffMethod::Recursion, CkCoeffMethod::ClosedForm] {
            assert_eq!(ck_coeff_table(3, method, &mut table), CkStatus::Ok);
            assert_eq!(ck_coeff_table_len(table), 3);
            let mut s = ptr::null_mut();
            assert_eq!(ck_coeff_table_to_csv(table, &mut s), CkStatus::Ok);
            assert_eq!(take(s), "index,a,b\n\"(0,0,1)\",-1,1/2\n\"(1,1,0)\",4,2\n\"(3,0,0)\",-2,1\n");
            assert_eq!(ck_coeff_table_to_json(table, &mut s), CkStatus::Ok);
            assert!(take(s).contains("\"entries\""));
            ck_coeff_table_free(table);
        }

        let mut s = ptr::null_mut();
        let idx = [1u32, 1, 0];
        assert_eq!(ck_coeff_recursion(idx.as_ptr(), idx.len(), &mut s), CkStatus::Ok);
        assert_eq!(take(s), "4");
        let tail = [1u32, 1];
        assert_eq!(ck_poly_p(tail.as_ptr(), tail.len(), &mut s), CkStatus::Ok);
        assert_eq!(take(s), "2*X1^2+X1*X2-9*X1-X2+7");
        assert_eq!(ck_poly_p(ptr::null(), 0, &mut s), CkStatus::Ok);
        assert_eq!(take(s), "1");
        assert_eq!(ck_harmonic(3, 1, &mut s), CkStatus::Ok);
        assert_eq!(take(s), "11/6");
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut out = ptr::null_mut();
        let bad = CString::new("[[]").unwrap();
        assert_eq!(ck_element_parse(bad.as_ptr(), &mut out), CkStatus::Parse);
        assert!(out.is_null());
        assert!(last_error().contains("position"), "{}", last_error());

        assert_eq!(ck_element_parse(ptr::null(), &mut out), CkStatus::NullPointer);
        assert_eq!(ck_delta(0, &mut out), CkStatus::InvalidArgument);
        let mut table = ptr::null_mut();
        assert_eq!(ck_coeff_table(0, CkCoeffMethod::Recursion, &mut table), CkStatus::InvalidArgument);

        let idx = [1u32, 1];
        let mut s = ptr::null_mut();
        assert_eq!(ck_coeff_recursion(idx.as_ptr(), idx.len(), &mut s), CkStatus::InvalidArgument);
        assert_eq!(ck_coeff_recursion(ptr::null(), 3, &mut s), CkStatus::NullPointer);

        let invalid = [0xffu8, 0];
        assert_eq!(ck_element_parse(invalid.as_ptr().cast(), &mut out), CkStatus::InvalidUtf8);

        let x = parse("[]");
        assert_eq!(ck_element_to_string(x, ptr::null_mut()), CkStatus::NullPointer);
        assert_eq!(ck_element_to_string(x, &mut s), CkStatus::Ok);
        assert!(ck_last_error().is_null());
        ck_string_free(s);
        ck_element_free(x);
        ck_element_free(ptr::null_mut());
        ck_string_free(ptr::null_mut());
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(ck_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// Directory holding the library artifacts for this test run.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_header() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = artifact_dir().join("libckhopf_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out_dir = std::env::temp_dir().join(format!("ckhopf-ffi-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let exe = out_dir.join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is needed to link Rust binaries");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    std::fs::remove_dir_all(&out_dir).ok();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let stdout = String::from_utf8(run.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "1*[[][]] [] + 1*[[[]]] [] + 1*[[]] [[]]");
    assert_eq!(lines[1], "6");
    assert_eq!(lines[2], "index,a,b");
    assert_eq!(lines[5], "\"(3,0,0)\",-2,1");
    assert!(lines[6].contains("position"));
}
