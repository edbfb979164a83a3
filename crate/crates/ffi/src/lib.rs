//! C interface to `modring`.
//!
//! Every fallible function returns a [`ModringStatus`]; on failure the
//! message is available from [`modring_last_error_message`]. Strings handed
//! out by the library are owned by the caller and released with
//! [`modring_string_free`]. Handles are released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use modring::decomp::{decomposition, table_generate, BlockKind, DecompositionSequence, TableFlavor};
use modring::eisenstein::hasse_lift;
use modring::hilbert::WeightedLine;
use modring::levels::{dim_cusp_forms, dim_modular_forms, CongruenceGroup, LevelInvariants, Weight1Data};
use modring::suite::{self, Suite};
use modring::Error;
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModringStatus {
    Ok = 0,
    /// A verification ran and at least one check failed.
    CheckFailed = 1,
    InvalidInput = 2,
    /// Weight-1 data needed for the request is missing.
    DataUnavailable = 3,
    NullPointer = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModringGroupKind {
    Gamma0 = 0,
    Gamma1 = 1,
    Gamma = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModringTableFormat {
    Tsv = 0,
    Json = 1,
    Markdown = 2,
}

/// Opaque congruence subgroup.
pub struct ModringGroup(CongruenceGroup);

/// Opaque table of weight-1 cusp form dimensions.
pub struct ModringWeight1(Weight1Data);

/// Opaque decomposition sequence.
pub struct ModringSequence(DecompositionSequence);

/// The degree of ω is omega_degree_num / omega_degree_den.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ModringLevelInvariants {
    pub index: u64,
    pub omega_degree_num: u64,
    pub omega_degree_den: u64,
    pub cusps: u64,
    pub elliptic2: u64,
    pub elliptic3: u64,
    pub genus: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("no interior NUL")));
}

fn status_of(e: &Error) -> ModringStatus {
    match e.exit_code() {
        1 => ModringStatus::CheckFailed,
        3 => ModringStatus::DataUnavailable,
        _ => ModringStatus::InvalidInput,
    }
}

enum Failure {
    Status(ModringStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(ModringStatus::NullPointer, format!("{what} is null"))
}

/// Run `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<ModringStatus, Failure>) -> ModringStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure::Status(status, msg))) => {
            set_last_error(msg);
            status
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal error");
            ModringStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(ModringStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn weight1_arg(w1: *const ModringWeight1, fallback: &Weight1Data) -> &Weight1Data {
    match w1.as_ref() {
        Some(w) => &w.0,
        None => fallback,
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior NUL").into_raw()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn modring_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn modring_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn modring_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn modring_group_new(
    kind: ModringGroupKind,
    level: u64,
    out: *mut *mut ModringGroup,
) -> ModringStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let g = match kind {
            ModringGroupKind::Gamma0 => CongruenceGroup::gamma0(level),
            ModringGroupKind::Gamma1 => CongruenceGroup::gamma1(level),
            ModringGroupKind::Gamma => CongruenceGroup::gamma(level),
        }?;
        *out = Box::into_raw(Box::new(ModringGroup(g)));
        Ok(ModringStatus::Ok)
    })
}

/// Parse `g0:N`, `g1:N` or `g:N`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn modring_group_parse(spec: *const c_char, out: *mut *mut ModringGroup) -> ModringStatus {
    guard(|| {
        let spec = str_arg(spec, "spec")?;
        let out = out_arg(out, "out")?;
        *out = Box::into_raw(Box::new(ModringGroup(spec.parse()?)));
        Ok(ModringStatus::Ok)
    })
}

/// # Safety
/// `group` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn modring_group_free(group: *mut ModringGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn modring_group_invariants(
    group: *const ModringGroup,
    out: *mut ModringLevelInvariants,
) -> ModringStatus {
    guard(|| {
        let g = group.as_ref().ok_or_else(|| null("group"))?;
        let out = out_arg(out, "out")?;
        let inv = LevelInvariants::of(&g.0);
        *out = ModringLevelInvariants {
            index: inv.index,
            omega_degree_num: inv.omega_degree.numer().to_u64().expect("fits in u64"),
            omega_degree_den: inv.omega_degree.denom().to_u64().expect("fits in u64"),
            cusps: inv.cusps,
            elliptic2: inv.elliptic2,
            elliptic3: inv.elliptic3,
            genus: inv.genus,
        };
        Ok(ModringStatus::Ok)
    })
}

/// The builtin weight-1 table.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn modring_weight1_builtin(out: *mut *mut ModringWeight1) -> ModringStatus {
    guard(|| {
        *out_arg(out, "out")? = Box::into_raw(Box::new(ModringWeight1(Weight1Data::builtin())));
        Ok(ModringStatus::Ok)
    })
}

/// Builtin table with entries from `text` (`kind level s1` per line) taking
/// precedence.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn modring_weight1_with_overrides(
    text: *const c_char,
    out: *mut *mut ModringWeight1,
) -> ModringStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let out = out_arg(out, "out")?;
        let data = Weight1Data::builtin().with_overrides(&Weight1Data::parse(text)?);
        *out = Box::into_raw(Box::new(ModringWeight1(data)));
        Ok(ModringStatus::Ok)
    })
}

/// # Safety
/// `w1` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn modring_weight1_free(w1: *mut ModringWeight1) {
    if !w1.is_null() {
        drop(Box::from_raw(w1));
    }
}

/// dim M_k, or dim S_k when `cusp` is true. A null `w1` means the builtin table.
///
/// # Safety
/// `group` must be a live handle, `w1` null or live, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn modring_dimension(
    group: *const ModringGroup,
    k: i64,
    cusp: bool,
    w1: *const ModringWeight1,
    out: *mut u64,
) -> ModringStatus {
    guard(|| {
        let g = group.as_ref().ok_or_else(|| null("group"))?;
        let out = out_arg(out, "out")?;
        let builtin = Weight1Data::builtin();
        let w1 = weight1_arg(w1, &builtin);
        *out = if cusp {
            dim_cusp_forms(&g.0, k, w1)?
        } else {
            dim_modular_forms(&g.0, k, w1)?
        };
        Ok(ModringStatus::Ok)
    })
}

/// Decompose into blocks named `omega`, `level2`, `level3`, `level4` or
/// `level5or6`. A null `w1` means the builtin table.
///
/// # Safety
/// `group` must be a live handle, `block` a NUL-terminated string, `w1`
/// null or live, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn modring_decompose(
    group: *const ModringGroup,
    block: *const c_char,
    w1: *const ModringWeight1,
    out: *mut *mut ModringSequence,
) -> ModringStatus {
    guard(|| {
        let g = group.as_ref().ok_or_else(|| null("group"))?;
        let block: BlockKind = str_arg(block, "block")?.parse()?;
        let out = out_arg(out, "out")?;
        let builtin = Weight1Data::builtin();
        let seq = decomposition(&g.0, block, weight1_arg(w1, &builtin))?;
        *out = Box::into_raw(Box::new(ModringSequence(seq)));
        Ok(ModringStatus::Ok)
    })
}

/// Number of shifts, i.e. the block's maximal shift plus one.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn modring_sequence_len(seq: *const ModringSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.0.to_vec().len())
}

/// Multiplicity at `shift`; zero outside the sequence.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn modring_sequence_get(seq: *const ModringSequence, shift: i64) -> u64 {
    seq.as_ref().map_or(0, |s| s.0.get(shift))
}

/// # Safety
/// `seq` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn modring_sequence_free(seq: *mut ModringSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Γ₁(n) decomposition table for `from <= n <= to`; flavor `omega`,
/// `level2` or `level3`.
///
/// # Safety
/// `flavor` must be a NUL-terminated string, `w1` null or live, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn modring_table(
    flavor: *const c_char,
    from: u64,
    to: u64,
    format: ModringTableFormat,
    w1: *const ModringWeight1,
    out: *mut *mut c_char,
) -> ModringStatus {
    guard(|| {
        let flavor: TableFlavor = str_arg(flavor, "flavor")?.parse()?;
        let out = out_arg(out, "out")?;
        if from > to {
            return Err(Failure::Status(
                ModringStatus::InvalidInput,
                format!("empty range {from}..{to}"),
            ));
        }
        let builtin = Weight1Data::builtin();
        let t = table_generate(from, to, flavor, weight1_arg(w1, &builtin))?;
        *out = into_c_string(match format {
            ModringTableFormat::Tsv => t.to_tsv(),
            ModringTableFormat::Json => t.to_json().to_string(),
            ModringTableFormat::Markdown => t.to_markdown(),
        });
        Ok(ModringStatus::Ok)
    })
}

/// h⁰(O(m)) on P(a, b), or h¹ when `h1` is true.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn modring_wproj(a: u64, b: u64, m: i64, h1: bool, out: *mut u64) -> ModringStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        if a == 0 || b == 0 {
            return Err(Failure::Status(
                ModringStatus::InvalidInput,
                "weights must be positive".into(),
            ));
        }
        let line = WeightedLine::new(a, b);
        *out = if h1 { line.h1_dim(m) } else { line.h0_dim(m) };
        Ok(ModringStatus::Ok)
    })
}

/// Hasse-lift report as JSON. Returns `CheckFailed` (with the report still
/// written) when the congruence fails.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn modring_hasse_lift(p: u64, precision: usize, out: *mut *mut c_char) -> ModringStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let r = hasse_lift(p, precision)?;
        *out = into_c_string(r.to_json().to_string());
        Ok(if r.passed() {
            ModringStatus::Ok
        } else {
            set_last_error(format!("Hasse lift fails for p = {p}"));
            ModringStatus::CheckFailed
        })
    })
}

/// Run the suite `all`, `decomp`, `wproj`, `ringalg` or `hasse`, writing a
/// one-line-per-check report. `overrides` may be null; otherwise it holds
/// weight-1 override records.
///
/// # Safety
/// `suite` must be a NUL-terminated string, `overrides` null or one, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn modring_verify(
    suite: *const c_char,
    overrides: *const c_char,
    out: *mut *mut c_char,
) -> ModringStatus {
    guard(|| {
        let s: Suite = str_arg(suite, "suite")?.parse()?;
        let out = out_arg(out, "out")?;
        let overrides = if overrides.is_null() {
            None
        } else {
            Some(Weight1Data::parse(str_arg(overrides, "overrides")?)?)
        };
        let report = suite::run(s, overrides.as_ref());
        *out = into_c_string(report.to_string());
        Ok(match report.first_failure() {
            None => ModringStatus::Ok,
            Some(f) => {
                set_last_error(format!("{}: {}", f.name, f.detail));
                ModringStatus::CheckFailed
            }
        })
    })
}
