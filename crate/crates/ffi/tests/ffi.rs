use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use modring_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { modring_string_free(p) };
    s
}

fn last_error() -> String {
    let p = modring_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn group(spec: &str) -> *mut ModringGroup {
    let spec = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { modring_group_parse(spec.as_ptr(), &mut g) }, ModringStatus::Ok);
    g
}

#[test]
fn group_invariants() {
    let g = group("g1:23");
    let mut inv = ModringLevelInvariants::default();
    assert_eq!(unsafe { modring_group_invariants(g, &mut inv) }, ModringStatus::Ok);
    assert_eq!((inv.index, inv.cusps, inv.genus), (528, 22, 12));
    assert_eq!((inv.omega_degree_num, inv.omega_degree_den), (22, 1));
    unsafe { modring_group_free(g) };

    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { modring_group_new(ModringGroupKind::Gamma, 3, &mut g) },
        ModringStatus::Ok
    );
    assert_eq!(unsafe { modring_group_invariants(g, &mut inv) }, ModringStatus::Ok);
    assert_eq!((inv.index, inv.cusps, inv.genus), (24, 4, 0));
    unsafe { modring_group_free(g) };
}

#[test]
fn error_reporting() {
    let spec = CString::new("g1:1").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { modring_group_parse(spec.as_ptr(), &mut g) },
        ModringStatus::InvalidInput
    );
    assert!(g.is_null());
    assert!(last_error().contains("level 1"));

    assert_eq!(
        unsafe { modring_group_parse(ptr::null(), &mut g) },
        ModringStatus::NullPointer
    );
    assert_eq!(
        unsafe { modring_group_invariants(ptr::null(), ptr::null_mut()) },
        ModringStatus::NullPointer
    );

    let g = group("g1:43");
    let mut d = 0;
    assert_eq!(
        unsafe { modring_dimension(g, 1, false, ptr::null(), &mut d) },
        ModringStatus::DataUnavailable
    );
    unsafe { modring_group_free(g) };

    let flavor = CString::new("omega").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { modring_table(flavor.as_ptr(), 43, 43, ModringTableFormat::Tsv, ptr::null(), &mut out) },
        ModringStatus::DataUnavailable
    );
    assert!(out.is_null());

    unsafe {
        modring_string_free(ptr::null_mut());
        modring_group_free(ptr::null_mut());
        modring_sequence_free(ptr::null_mut());
        modring_weight1_free(ptr::null_mut());
    }
}

#[test]
fn dimensions_and_decomposition() {
    let g = group("g1:23");
    let mut d = 0;
    assert_eq!(
        unsafe { modring_dimension(g, 1, true, ptr::null(), &mut d) },
        ModringStatus::Ok
    );
    assert_eq!(d, 1);

    let block = CString::new("omega").unwrap();
    let mut seq = ptr::null_mut();
    assert_eq!(
        unsafe { modring_decompose(g, block.as_ptr(), ptr::null(), &mut seq) },
        ModringStatus::Ok
    );
    let len = unsafe { modring_sequence_len(seq) };
    let mult: Vec<u64> = (0..len as i64)
        .map(|i| unsafe { modring_sequence_get(seq, i) })
        .collect();
    assert_eq!(mult, [1, 12, 33, 55, 76, 87, 87, 76, 55, 33, 12, 1]);
    assert_eq!(unsafe { modring_sequence_get(seq, 40) }, 0);
    unsafe { modring_sequence_free(seq) };

    let overrides = CString::new("g1 23 0\n").unwrap();
    let mut w1 = ptr::null_mut();
    assert_eq!(
        unsafe { modring_weight1_with_overrides(overrides.as_ptr(), &mut w1) },
        ModringStatus::Ok
    );
    assert_eq!(unsafe { modring_dimension(g, 1, true, w1, &mut d) }, ModringStatus::Ok);
    assert_eq!(d, 0);
    unsafe { modring_weight1_free(w1) };
    unsafe { modring_group_free(g) };
}

#[test]
fn tables_match_cli_formats() {
    let flavor = CString::new("level3").unwrap();
    let mut out = ptr::null_mut();
    let mut w1 = ptr::null_mut();
    assert_eq!(unsafe { modring_weight1_builtin(&mut w1) }, ModringStatus::Ok);
    assert_eq!(
        unsafe { modring_table(flavor.as_ptr(), 5, 23, ModringTableFormat::Tsv, w1, &mut out) },
        ModringStatus::Ok
    );
    assert_eq!(
        take_string(out),
        modring::decomp::golden_table(modring::decomp::TableFlavor::Level3)
    );
    unsafe { modring_weight1_free(w1) };
}

#[test]
fn wproj_and_hasse() {
    let mut v = 0;
    assert_eq!(unsafe { modring_wproj(4, 6, -10, true, &mut v) }, ModringStatus::Ok);
    assert_eq!(v, 1);
    assert_eq!(unsafe { modring_wproj(4, 6, 12, false, &mut v) }, ModringStatus::Ok);
    assert_eq!(v, 2);
    assert_eq!(
        unsafe { modring_wproj(0, 6, 12, false, &mut v) },
        ModringStatus::InvalidInput
    );

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { modring_hasse_lift(5, 60, &mut out) }, ModringStatus::Ok);
    let json = take_string(out);
    assert!(json.starts_with("{\"p\":5,\"m\":2,"), "{json}");
    assert!(json.contains("\"verdict\":\"pass\""));
    assert_eq!(
        unsafe { modring_hasse_lift(7, 60, &mut out) },
        ModringStatus::InvalidInput
    );
    assert!(last_error().contains("m >= 2"));
}

#[test]
fn verify_suites() {
    let suite = CString::new("wproj").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { modring_verify(suite.as_ptr(), ptr::null(), &mut out) },
        ModringStatus::Ok
    );
    assert!(take_string(out).lines().all(|l| l.starts_with("PASS ")));

    let suite = CString::new("decomp").unwrap();
    let overrides = CString::new("g1 23 7\n").unwrap();
    assert_eq!(
        unsafe { modring_verify(suite.as_ptr(), overrides.as_ptr(), &mut out) },
        ModringStatus::CheckFailed
    );
    assert!(take_string(out).contains("FAIL g1:23 level5or6 closed form"));
    assert!(last_error().starts_with("g1:23 level5or6 closed form"));

    let suite = CString::new("nonsense").unwrap();
    assert_eq!(
        unsafe { modring_verify(suite.as_ptr(), ptr::null(), &mut out) },
        ModringStatus::InvalidInput
    );
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(modring_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

const HEADER: &str = include_str!("../include/modring.h");

#[test]
fn header_declares_every_export() {
    let src = include_str!("../src/lib.rs");
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(HEADER.contains(&format!("{name}(")), "{name} missing from header");
    }
    for ty in ["ModringGroup", "ModringWeight1", "ModringSequence"] {
        assert!(
            HEADER.contains(&format!("typedef struct {ty} {ty};")),
            "{ty} is not opaque"
        );
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/modring.h");
    let status = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
}
