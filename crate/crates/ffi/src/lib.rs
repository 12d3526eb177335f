//! C ABI for gtcrypt.
//!
//! Words cross the boundary as `int32_t` arrays of signed generator indices;
//! structured values (tuples, systems, expressions, keys) as UTF-8 JSON in
//! the same layouts as the command-line files. Every function returns a
//! [`GtStatus`]; on anything but `GT_STATUS_OK`, `gt_last_error()` describes
//! the problem. Strings returned through out-parameters are owned by the
//! caller and must be released with `gt_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gtcrypt::aag::{keygen, true_key, AagInstance, AagParams, Platform, PrivateKeys};
use gtcrypt::attacks::{lba_attack, quotient_attack, ObjectiveKind};
use gtcrypt::conjugacy::{conj_search, scsp_solve, scsp_star, ConjugacySystem};
use gtcrypt::stallings::{build_core, NielsenBasis, SubgroupGraph};
use gtcrypt::{Error, Word, WordTuple};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidJson = 3,
    InvalidInput = 4,
    NotMember = 5,
    NoSolution = 6,
    AttackFailed = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtObjective {
    Ambient = 0,
    Inner = 1,
    Projected = 2,
}

/// Folded subgroup graph with its Nielsen basis.
pub struct GtSubgroup {
    graph: SubgroupGraph,
    basis: NielsenBasis,
}

/// Public key-exchange instance.
pub struct GtInstance {
    inner: AagInstance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(GtStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotMember => GtStatus::NotMember,
            Error::NotConjugate => GtStatus::NoSolution,
            _ => GtStatus::InvalidInput,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GtStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            GtStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(GtStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(GtStatus::InvalidUtf8, e.to_string()))
}

unsafe fn read_json<T: serde::de::DeserializeOwned>(p: *const c_char) -> Result<T, Fail> {
    serde_json::from_str(read_str(p)?).map_err(|e| Fail(GtStatus::InvalidJson, e.to_string()))
}

unsafe fn read_word(p: *const i32, len: usize) -> Result<Word, Fail> {
    if len == 0 {
        return Ok(Word::identity());
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(Word::from_signed(std::slice::from_raw_parts(p, len))?)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json<T: serde::Serialize>(out: *mut *mut c_char, value: &T) -> Result<(), Fail> {
    let s = serde_json::to_string(value).map_err(|e| Fail(GtStatus::InvalidJson, e.to_string()))?;
    let c = CString::new(s).expect("json has no nul bytes");
    write_out(out, c.into_raw())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the subgroup generated by a JSON array of words.
///
/// # Safety
/// `gens_json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_subgroup_new(gens_json: *const c_char, out: *mut *mut GtSubgroup) -> GtStatus {
    guard(|| {
        let gens: WordTuple = read_json(gens_json)?;
        let graph = build_core(&gens);
        let basis = graph.nielsen_basis();
        write_out(out, Box::into_raw(Box::new(GtSubgroup { graph, basis })))
    })
}

/// # Safety
/// `s` must come from `gt_subgroup_new` and not have been freed. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn gt_subgroup_free(s: *mut GtSubgroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live subgroup handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_subgroup_rank(s: *const GtSubgroup, out: *mut usize) -> GtStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(null)?;
        write_out(out, s.graph.rank())
    })
}

/// # Safety
/// `s` must be a live subgroup handle; `word` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn gt_subgroup_contains(
    s: *const GtSubgroup,
    word: *const i32,
    len: usize,
    out: *mut bool,
) -> GtStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(null)?;
        let w = read_word(word, len)?;
        write_out(out, s.graph.contains(&w))
    })
}

/// Writes the expression of `word` over the defining generators as JSON
/// `[[index, sign], ...]`; `GT_STATUS_NOT_MEMBER` when absent.
///
/// # Safety
/// `s` must be a live subgroup handle; `word` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn gt_subgroup_express(
    s: *const GtSubgroup,
    word: *const i32,
    len: usize,
    out_json: *mut *mut c_char,
) -> GtStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(null)?;
        let w = read_word(word, len)?;
        let e = s.graph.express(&s.basis, &w)?;
        write_json(out_json, &e)
    })
}

/// Writes some `x` with `u^x = v` as a JSON word; `GT_STATUS_NO_SOLUTION`
/// when `u` and `v` are not conjugate.
///
/// # Safety
/// `u` and `v` must point to `u_len` and `v_len` values.
#[no_mangle]
pub unsafe extern "C" fn gt_conj_search(
    u: *const i32,
    u_len: usize,
    v: *const i32,
    v_len: usize,
    out_json: *mut *mut c_char,
) -> GtStatus {
    guard(|| {
        let x = conj_search(&read_word(u, u_len)?, &read_word(v, v_len)?)?;
        write_json(out_json, &x)
    })
}

/// Solves `{pairs: [[u, v], ...]}` and writes the solution set as JSON.
///
/// # Safety
/// `system_json` must be a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gt_scsp_solve(system_json: *const c_char, out_json: *mut *mut c_char) -> GtStatus {
    guard(|| {
        let sys: ConjugacySystem = read_json(system_json)?;
        write_json(out_json, &scsp_solve(&sys))
    })
}

/// Solves the system inside the subgroup generated by `gens_json` and
/// writes the expression; `GT_STATUS_NO_SOLUTION` when there is none.
///
/// # Safety
/// Both inputs must be nul-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn gt_scsp_star(
    system_json: *const c_char,
    gens_json: *const c_char,
    out_json: *mut *mut c_char,
) -> GtStatus {
    guard(|| {
        let sys: ConjugacySystem = read_json(system_json)?;
        let gens: WordTuple = read_json(gens_json)?;
        let e =
            scsp_star(&sys, &gens).ok_or_else(|| Fail(GtStatus::NoSolution, "no solution in the subgroup".into()))?;
        write_json(out_json, &e)
    })
}

/// Generates an instance. `params_json` may be null for defaults. The
/// private keys are written as JSON `{alice, bob}`.
///
/// # Safety
/// String inputs must be nul-terminated; out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_keygen(
    platform_json: *const c_char,
    params_json: *const c_char,
    seed: u64,
    out_instance: *mut *mut GtInstance,
    out_private_json: *mut *mut c_char,
) -> GtStatus {
    guard(|| {
        let platform: Platform = read_json(platform_json)?;
        let params: AagParams = if params_json.is_null() { AagParams::default() } else { read_json(params_json)? };
        if out_instance.is_null() || out_private_json.is_null() {
            return Err(null());
        }
        let (inner, alice, bob) = keygen(&platform, &params, seed)?;
        write_json(out_private_json, &PrivateKeys { alice, bob })?;
        write_out(out_instance, Box::into_raw(Box::new(GtInstance { inner })))
    })
}

/// Parses and validates an instance file.
///
/// # Safety
/// `json` must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gt_instance_from_json(json: *const c_char, out: *mut *mut GtInstance) -> GtStatus {
    guard(|| {
        let inner: AagInstance = read_json(json)?;
        inner.validate()?;
        write_out(out, Box::into_raw(Box::new(GtInstance { inner })))
    })
}

/// # Safety
/// `inst` must be a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn gt_instance_to_json(inst: *const GtInstance, out_json: *mut *mut c_char) -> GtStatus {
    guard(|| write_json(out_json, &inst.as_ref().ok_or_else(null)?.inner))
}

/// # Safety
/// `inst` must come from this library and not have been freed. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn gt_instance_free(inst: *mut GtInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// The shared key `[a, b]` from the private keys, as a JSON word.
///
/// # Safety
/// `inst` must be a live handle and `private_json` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn gt_true_key(
    inst: *const GtInstance,
    private_json: *const c_char,
    out_json: *mut *mut c_char,
) -> GtStatus {
    guard(|| {
        let inst = &inst.as_ref().ok_or_else(null)?.inner;
        let keys: PrivateKeys = read_json(private_json)?;
        write_json(out_json, &true_key(inst, &keys.alice, &keys.bob)?)
    })
}

fn no_key() -> Fail {
    Fail(GtStatus::AttackFailed, "attack did not recover a verified key".into())
}

/// Runs the quotient attack; writes the recovered key as a JSON word or
/// returns `GT_STATUS_ATTACK_FAILED`.
///
/// # Safety
/// `inst` must be a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn gt_quotient_attack(inst: *const GtInstance, out_key_json: *mut *mut c_char) -> GtStatus {
    guard(|| {
        let inst = &inst.as_ref().ok_or_else(null)?.inner;
        let key = quotient_attack(inst)?.ok_or_else(no_key)?;
        write_json(out_key_json, &key)
    })
}

/// Runs the length-based attack. `max_iters = 0` selects the default cap.
///
/// # Safety
/// `inst` must be a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn gt_lba_attack(
    inst: *const GtInstance,
    objective: GtObjective,
    max_iters: usize,
    out_key_json: *mut *mut c_char,
) -> GtStatus {
    guard(|| {
        let inst = &inst.as_ref().ok_or_else(null)?.inner;
        let objective = match objective {
            GtObjective::Ambient => ObjectiveKind::Ambient,
            GtObjective::Inner => ObjectiveKind::Inner,
            GtObjective::Projected => ObjectiveKind::Projected,
        };
        let r = lba_attack(inst, objective, (max_iters > 0).then_some(max_iters))?;
        write_json(out_key_json, &r.key.ok_or_else(no_key)?)
    })
}
