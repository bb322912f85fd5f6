use std::ffi::CStr;
use std::ptr;

use powerchar_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(pc_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn cubic_symbol_examples() {
    let mut out = 99;
    // 2 is inert: (ω/2)₃ = ω^((4 - 1)/3) = ω
    assert_eq!(unsafe { pc_cubic_symbol(0, 1, 2, 0, &mut out) }, PcStatus::Ok);
    assert_eq!(out, 1);
    assert_eq!(unsafe { pc_cubic_symbol(2, 0, 2, 0, &mut out) }, PcStatus::Ok);
    assert_eq!(out, -1);
}

#[test]
fn quartic_symbol_of_unit() {
    let mut out = 99;
    assert_eq!(unsafe { pc_quartic_symbol(1, 0, 3, 2, &mut out) }, PcStatus::Ok);
    assert_eq!(out, 0);
}

#[test]
fn null_out_pointer_reports() {
    assert_eq!(unsafe { pc_cubic_symbol(1, 0, 2, 0, ptr::null_mut()) }, PcStatus::NullPointer);
    assert!(last_error().contains("null"));
}

#[test]
fn bad_order_is_invalid_argument() {
    let mut out = PcComplex::default();
    assert_eq!(unsafe { pc_gauss_sum(5, 1, 0, 2, 0, &mut out) }, PcStatus::InvalidArgument);
    assert!(last_error().contains("order"));
}

#[test]
fn non_primary_modulus_is_domain() {
    let mut out = PcComplex::default();
    assert_eq!(unsafe { pc_gauss_sum(3, 1, 0, 2, 0, &mut out) }, PcStatus::Domain);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { pc_gauss_sum(3, 1, 0, -2, 0, &mut out) }, PcStatus::Ok);
    assert!(last_error().is_empty());
}

#[test]
fn gauss_sum_modulus_at_prime() {
    let mut out = PcComplex::default();
    // 1 + 3ω is primary of norm 7
    assert_eq!(unsafe { pc_gauss_sum(3, 1, 0, 1, 3, &mut out) }, PcStatus::Ok);
    let abs = out.re.hypot(out.im);
    assert!((abs - 7f64.sqrt()).abs() < 1e-9, "{abs}");
}

#[test]
fn character_table_roundtrip() {
    let mut len = 0usize;
    assert_eq!(unsafe { pc_family_size(3, 7, &mut len) }, PcStatus::Ok);
    assert_eq!(len, 2);
    for index in 0..len {
        let mut t = ptr::null_mut();
        assert_eq!(unsafe { pc_character_table_new(3, 7, index, &mut t) }, PcStatus::Ok);
        let mut q = 0;
        assert_eq!(unsafe { pc_character_table_modulus(t, &mut q) }, PcStatus::Ok);
        assert_eq!(q, 7);
        let mut v = 0;
        assert_eq!(unsafe { pc_character_table_value(t, 14, &mut v) }, PcStatus::Ok);
        assert_eq!(v, -1);
        assert_eq!(unsafe { pc_character_table_value(t, 1, &mut v) }, PcStatus::Ok);
        assert_eq!(v, 0);
        let mut tau = PcComplex::default();
        assert_eq!(unsafe { pc_tau(t, 1, &mut tau) }, PcStatus::Ok);
        assert!((tau.re.hypot(tau.im) - 7f64.sqrt()).abs() < 1e-9);
        unsafe { pc_character_table_free(t) };
    }
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { pc_character_table_new(3, 7, 2, &mut t) }, PcStatus::InvalidArgument);
    assert!(t.is_null());
    unsafe { pc_character_table_free(ptr::null_mut()) };
}

#[test]
fn null_table_reports() {
    let mut q = 0;
    assert_eq!(unsafe { pc_character_table_modulus(ptr::null(), &mut q) }, PcStatus::NullPointer);
}

#[test]
fn sum_total_matches_library() {
    let mut r = PcSumReport::default();
    assert_eq!(unsafe { pc_sum_total(3, 1000.0, 500.0, 1, 0, &mut r) }, PcStatus::Ok);
    assert_eq!(r.total_re, 2879.0);
    assert!(r.total_im.abs() < 1e-9);
    let mut d = PcSumReport::default();
    assert_eq!(unsafe { pc_sum_total(3, 1000.0, 500.0, 0, 0, &mut d) }, PcStatus::Ok);
    assert_eq!(d.total_re, r.total_re);
    assert_eq!(unsafe { pc_sum_total(3, 1000.0, 500.0, 7, 0, &mut d) }, PcStatus::InvalidArgument);
}

#[test]
fn sum_total_budget() {
    let mut r = PcSumReport::default();
    assert_eq!(unsafe { pc_sum_total(4, 1e6, 1e6, 0, 10, &mut r) }, PcStatus::Budget);
}

#[test]
fn constants() {
    let mut c = PcConstant::default();
    assert_eq!(unsafe { pc_compute_constant(3, 1_000_000, &mut c) }, PcStatus::Ok);
    assert!((c.value - 0.5045598620939672).abs() < 1e-9);
    assert_eq!(unsafe { pc_compute_constant(4, 10, &mut c) }, PcStatus::Domain);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(pc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
