//! C ABI over `seqvote`.
//!
//! Profiles and agendas live behind opaque handles created by the
//! `*_parse` functions and released with the matching `*_free`. Every call
//! returns a status code; on failure `seqvote_last_error` describes the
//! problem until the next call on the same thread. Answers are written
//! through out-pointers.

use seqvote::uncertainty::weighted_necessary_winner;
use seqvote::{
    controllable_set_with, manipulate, min_coalition_size, necessary_winner, parse_agenda,
    parse_instance_json, parse_preflib, possible_winner, winner, Error, PartialAgenda, Procedure,
    Profile, SearchConfig, TiePolicy,
};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// A weighted, possibly partial, preference profile.
pub struct SeqvoteProfile(Profile);

/// A possibly partial agenda over a profile's alternatives.
pub struct SeqvoteAgenda(PartialAgenda);

pub const SEQVOTE_OK: i32 = 0;
pub const SEQVOTE_ERR_NULL: i32 = 1;
pub const SEQVOTE_ERR_UTF8: i32 = 2;
pub const SEQVOTE_ERR_PARSE: i32 = 3;
pub const SEQVOTE_ERR_INVALID: i32 = 4;
pub const SEQVOTE_ERR_EVEN_WEIGHT: i32 = 5;
pub const SEQVOTE_ERR_INCOMPLETE: i32 = 6;
pub const SEQVOTE_ERR_CAPACITY: i32 = 7;
pub const SEQVOTE_ERR_UNDECIDED: i32 = 8;
pub const SEQVOTE_ERR_BUFFER: i32 = 9;
pub const SEQVOTE_ERR_PANIC: i32 = 10;

pub const SEQVOTE_SUCCESSIVE: u32 = 0;
pub const SEQVOTE_AMENDMENT: u32 = 1;

pub const SEQVOTE_TIES_REJECT: u32 = 0;
pub const SEQVOTE_TIES_STATUS_QUO: u32 = 1;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } | Error::Cycle(_) => SEQVOTE_ERR_PARSE,
            Error::EvenTotalWeight(_) => SEQVOTE_ERR_EVEN_WEIGHT,
            Error::IncompleteProfile | Error::IncompleteAgenda => SEQVOTE_ERR_INCOMPLETE,
            Error::Capacity(_) => SEQVOTE_ERR_CAPACITY,
            Error::Undecided(_) => SEQVOTE_ERR_UNDECIDED,
            _ => SEQVOTE_ERR_INVALID,
        };
        Failure(code, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn guard(body: impl FnOnce() -> Outcome) -> i32 {
    let result = catch_unwind(AssertUnwindSafe(body))
        .unwrap_or_else(|_| Err(Failure(SEQVOTE_ERR_PANIC, "internal panic".into())));
    let (code, message) = match result {
        Ok(()) => (SEQVOTE_OK, None),
        Err(Failure(code, msg)) => (code, Some(CString::new(msg.replace('\0', " ")).unwrap())),
    };
    LAST_ERROR.with(|e| *e.borrow_mut() = message);
    code
}

fn null() -> Failure {
    Failure(SEQVOTE_ERR_NULL, "null pointer argument".into())
}

unsafe fn utf8<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(SEQVOTE_ERR_UTF8, "argument is not valid UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn procedure(code: u32) -> Result<Procedure, Failure> {
    match code {
        SEQVOTE_SUCCESSIVE => Ok(Procedure::Successive),
        SEQVOTE_AMENDMENT => Ok(Procedure::Amendment),
        _ => Err(Failure(
            SEQVOTE_ERR_INVALID,
            format!("unknown procedure code {code}"),
        )),
    }
}

fn tie_policy(code: u32) -> Result<TiePolicy, Failure> {
    match code {
        SEQVOTE_TIES_REJECT => Ok(TiePolicy::Reject),
        SEQVOTE_TIES_STATUS_QUO => Ok(TiePolicy::StatusQuo),
        _ => Err(Failure(
            SEQVOTE_ERR_INVALID,
            format!("unknown tie policy code {code}"),
        )),
    }
}

fn complete(agenda: &SeqvoteAgenda) -> Result<seqvote::Agenda, Failure> {
    agenda
        .0
        .as_agenda()
        .ok_or_else(|| Error::IncompleteAgenda.into())
}

/// Message for the last failed call on this thread, or NULL after a
/// success. Owned by the library.
#[no_mangle]
pub extern "C" fn seqvote_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Parses Preflib text (soc, soi, toc or toi).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seqvote_profile_parse_preflib(
    text: *const c_char,
    out: *mut *mut SeqvoteProfile,
) -> i32 {
    guard(|| {
        let profile = parse_preflib(utf8(text)?)?;
        write(out, Box::into_raw(Box::new(SeqvoteProfile(profile))))
    })
}

/// Parses a JSON instance. When `agenda_out` is non-NULL it receives the
/// instance's agenda, or NULL if the file has none.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable;
/// `agenda_out` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn seqvote_profile_parse_json(
    text: *const c_char,
    out: *mut *mut SeqvoteProfile,
    agenda_out: *mut *mut SeqvoteAgenda,
) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let inst = parse_instance_json(utf8(text)?)?;
        if !agenda_out.is_null() {
            let agenda = inst.agenda.map_or(std::ptr::null_mut(), |a| {
                Box::into_raw(Box::new(SeqvoteAgenda(a)))
            });
            agenda_out.write(agenda);
        }
        write(out, Box::into_raw(Box::new(SeqvoteProfile(inst.profile))))
    })
}

/// # Safety
/// `profile` must come from a parse function and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn seqvote_profile_free(profile: *mut SeqvoteProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// # Safety
/// `profile` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seqvote_profile_num_alternatives(
    profile: *const SeqvoteProfile,
    out: *mut usize,
) -> i32 {
    guard(|| write(out, deref(profile)?.0.num_alternatives()))
}

/// Total voter weight.
///
/// # Safety
/// `profile` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seqvote_profile_total_weight(
    profile: *const SeqvoteProfile,
    out: *mut u64,
) -> i32 {
    guard(|| write(out, deref(profile)?.0.total_weight()))
}

/// Id of the alternative labelled `label`.
///
/// # Safety
/// `profile` must be a live handle; `label` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn seqvote_profile_alternative_id(
    profile: *const SeqvoteProfile,
    label: *const c_char,
    out: *mut usize,
) -> i32 {
    guard(|| write(out, deref(profile)?.0.id_of(utf8(label)?)?))
}

/// Parses `a>b>c` agenda text against a profile's labels; `,` separates
/// independent fragments of a partial agenda.
///
/// # Safety
/// `profile` must be a live handle; `text` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn seqvote_agenda_parse(
    profile: *const SeqvoteProfile,
    text: *const c_char,
    out: *mut *mut SeqvoteAgenda,
) -> i32 {
    guard(|| {
        let agenda = parse_agenda(utf8(text)?, &deref(profile)?.0)?;
        write(out, Box::into_raw(Box::new(SeqvoteAgenda(agenda))))
    })
}

/// # Safety
/// `agenda` must come from a parse function and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn seqvote_agenda_free(agenda: *mut SeqvoteAgenda) {
    if !agenda.is_null() {
        drop(Box::from_raw(agenda));
    }
}

/// Winner under a complete agenda.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn seqvote_winner(
    profile: *const SeqvoteProfile,
    agenda: *const SeqvoteAgenda,
    procedure_code: u32,
    tie_policy_code: u32,
    out: *mut usize,
) -> i32 {
    guard(|| {
        let (proc_, policy) = (procedure(procedure_code)?, tie_policy(tie_policy_code)?);
        let agenda = complete(deref(agenda)?)?;
        let (w, _) = winner(&deref(profile)?.0, &agenda, proc_, policy)?;
        write(out, w)
    })
}

/// Writes the ids of every controllable alternative, ascending, into
/// `buffer` and their number into `len`. `capacity` must be at least the
/// number of alternatives.
///
/// # Safety
/// `profile` must be live; `buffer` must hold `capacity` entries; `len`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn seqvote_controllable_set(
    profile: *const SeqvoteProfile,
    procedure_code: u32,
    tie_policy_code: u32,
    buffer: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> i32 {
    guard(|| {
        let set = controllable_set_with(
            &deref(profile)?.0,
            procedure(procedure_code)?,
            tie_policy(tie_policy_code)?,
        )?;
        if buffer.is_null() {
            return Err(null());
        }
        if set.len() > capacity {
            return Err(Failure(
                SEQVOTE_ERR_BUFFER,
                format!("need room for {} ids", set.len()),
            ));
        }
        std::ptr::copy_nonoverlapping(set.as_ptr(), buffer, set.len());
        write(len, set.len())
    })
}

/// Whether `k` added unit voters can make `target` win under a complete
/// agenda.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn seqvote_manipulate(
    profile: *const SeqvoteProfile,
    agenda: *const SeqvoteAgenda,
    target: usize,
    k: u64,
    procedure_code: u32,
    out: *mut bool,
) -> i32 {
    guard(|| {
        let proc_ = procedure(procedure_code)?;
        let agenda = complete(deref(agenda)?)?;
        let w = manipulate(&deref(profile)?.0, k, target, &agenda, proc_)?;
        write(out, w.is_some())
    })
}

/// Least coalition weight that makes `target` win; total weight + 1 when
/// none up to that size does.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn seqvote_min_coalition_size(
    profile: *const SeqvoteProfile,
    agenda: *const SeqvoteAgenda,
    target: usize,
    procedure_code: u32,
    out: *mut u64,
) -> i32 {
    guard(|| {
        let proc_ = procedure(procedure_code)?;
        let agenda = complete(deref(agenda)?)?;
        write(
            out,
            min_coalition_size(&deref(profile)?.0, target, &agenda, proc_)?,
        )
    })
}

fn config(tie_policy_code: u32) -> Result<SearchConfig, Failure> {
    Ok(SearchConfig {
        tie_policy: tie_policy(tie_policy_code)?,
        ..SearchConfig::default()
    })
}

/// Whether `target` wins in some completion of the profile and agenda.
/// A NULL agenda leaves the order entirely open.
///
/// # Safety
/// `profile` must be live; `agenda` live or NULL; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn seqvote_possible_winner(
    profile: *const SeqvoteProfile,
    agenda: *const SeqvoteAgenda,
    target: usize,
    procedure_code: u32,
    tie_policy_code: u32,
    out: *mut bool,
) -> i32 {
    guard(|| {
        let p = &deref(profile)?.0;
        let partial = open_or(agenda, p);
        let w = possible_winner(
            p,
            target,
            &partial,
            procedure(procedure_code)?,
            &config(tie_policy_code)?,
        )?;
        write(out, w.is_some())
    })
}

/// Whether `target` wins in every completion of the profile and agenda.
/// A NULL agenda leaves the order entirely open.
///
/// # Safety
/// `profile` must be live; `agenda` live or NULL; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn seqvote_necessary_winner(
    profile: *const SeqvoteProfile,
    agenda: *const SeqvoteAgenda,
    target: usize,
    procedure_code: u32,
    tie_policy_code: u32,
    out: *mut bool,
) -> i32 {
    guard(|| {
        let p = &deref(profile)?.0;
        let partial = open_or(agenda, p);
        let (proc_, cfg) = (procedure(procedure_code)?, config(tie_policy_code)?);
        let yes = if p.is_unweighted() {
            necessary_winner(p, target, &partial, proc_, &cfg)?
        } else {
            weighted_necessary_winner(p, target, &partial, proc_, &cfg)?
        };
        write(out, yes)
    })
}

unsafe fn open_or(agenda: *const SeqvoteAgenda, profile: &Profile) -> PartialAgenda {
    agenda.as_ref().map_or_else(
        || PartialAgenda::unconstrained(profile.num_alternatives()),
        |a| a.0.clone(),
    )
}
