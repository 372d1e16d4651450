//! C ABI for the openbook toolkit.
//!
//! Conventions, in brief:
//!
//! - Fallible calls return an [`ObStatus`] and deliver results through out
//!   pointers, written only on `OB_OK`. Constructors with no failure modes
//!   return the new handle directly.
//! - [`ObBook`] and [`ObGroup`] are opaque; release them with
//!   [`ob_book_free`] / [`ob_group_free`]. Strings handed out through
//!   `char **` are NUL-terminated, owned by the caller, and released with
//!   [`ob_string_free`].
//! - After any failing call, [`ob_last_error`] describes the failure; the
//!   pointer stays valid until the next failing call on the same thread.
//!
//! The generated header lives at `include/openbook.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use openbook::{
    catalog_lookup, cg_upper_bound, d3_connected_sum, h1, parse_open_book, search_report,
    seifert_h1, serialize_open_book, verify_annulus_family, AbelianGroup, Error, HalfInteger,
    OpenBook, SearchConfig, Sign,
};

/// Opaque handle to a planar open book decomposition.
pub struct ObBook(OpenBook);

/// Opaque handle to a finitely generated abelian group in normal form.
pub struct ObGroup(AbelianGroup);

/// Outcome of a call. Anything other than `OB_OK` leaves the out
/// parameters untouched and records a message for `ob_last_error`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObStatus {
    /// Success.
    ObOk = 0,
    /// Invalid input: a bad document, argument, or failed validation.
    ObInvalid = 1,
    /// The operation needs a genus-0 page but the book has positive genus.
    ObUnsupportedPage = 2,
    /// A required pointer argument was NULL.
    ObNullPointer = 3,
    /// A string argument was not valid UTF-8.
    ObBadUtf8 = 4,
    /// Unexpected internal failure.
    ObInternal = 5,
}

/// Bounds and filters for `ob_search_csv`, mirroring the `search`
/// subcommand of the CLI.
#[repr(C)]
pub struct ObSearchOptions {
    /// Largest page boundary count to enumerate; at least 1.
    pub max_boundary: u32,
    /// Largest total absolute twist exponent per monodromy word.
    pub max_total_exponent: u64,
    /// When true, additionally cap each letter's absolute exponent.
    pub has_exponent_bound: bool,
    pub exponent_bound: u64,
    /// Optional first-homology filter such as `"Z/5"` or `"Z^2 + Z/2"`;
    /// NULL means no filter.
    pub target: *const c_char,
    /// When true, skip books whose norm exceeds `norm_cap`.
    pub has_norm_cap: bool,
    pub norm_cap: i64,
    /// Worker threads, at least 1. The report bytes do not depend on it.
    pub jobs: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: ObStatus, message: &str) -> ObStatus {
    let clean: String = message.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(clean).expect("NUL bytes removed");
    });
    status
}

fn fail_with(err: &Error) -> ObStatus {
    let status = if err.exit_code() == 2 {
        ObStatus::ObUnsupportedPage
    } else {
        ObStatus::ObInvalid
    };
    fail(status, &err.to_string())
}

/// Catches panics so they surface as `OB_INTERNAL` instead of crossing the
/// language boundary.
fn guarded(f: impl FnOnce() -> ObStatus) -> ObStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(ObStatus::ObInternal, "internal panic"),
    }
}

unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, ObStatus> {
    if ptr.is_null() {
        return Err(fail(
            ObStatus::ObNullPointer,
            &format!("{what} must not be NULL"),
        ));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| fail(ObStatus::ObBadUtf8, &format!("{what} must be valid UTF-8")))
}

unsafe fn deref<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, ObStatus> {
    if ptr.is_null() {
        Err(fail(
            ObStatus::ObNullPointer,
            &format!("{what} must not be NULL"),
        ))
    } else {
        Ok(unsafe { &*ptr })
    }
}

unsafe fn write_out<T>(out: *mut T, what: &str, value: T) -> ObStatus {
    if out.is_null() {
        return fail(ObStatus::ObNullPointer, &format!("{what} must not be NULL"));
    }
    unsafe { out.write(value) };
    ObStatus::ObOk
}

fn export_book(book: OpenBook) -> *mut ObBook {
    Box::into_raw(Box::new(ObBook(book)))
}

fn export_group(group: AbelianGroup) -> *mut ObGroup {
    Box::into_raw(Box::new(ObGroup(group)))
}

fn export_string(text: String) -> *mut c_char {
    CString::new(text)
        .expect("toolkit output carries no NUL bytes")
        .into_raw()
}

/// Returns the message recorded by the most recent failing call on this
/// thread; the empty string if nothing failed yet. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn ob_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string returned by this library. NULL is allowed.
///
/// # Safety
/// `s` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn ob_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a `page`/`twist` document into a new book handle.
///
/// # Safety
/// `text` must point to a NUL-terminated string and `out` must be valid
/// for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_book_parse(text: *const c_char, out: *mut *mut ObBook) -> ObStatus {
    guarded(|| {
        let text = match unsafe { read_str(text, "text") } {
            Ok(text) => text,
            Err(status) => return status,
        };
        match parse_open_book(text) {
            Ok(book) => unsafe { write_out(out, "out", export_book(book)) },
            Err(err) => fail_with(&err),
        }
    })
}

/// Writes the canonical `page`/`twist` document for `book`.
///
/// # Safety
/// `book` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_book_serialize(book: *const ObBook, out: *mut *mut c_char) -> ObStatus {
    guarded(|| {
        let book = match unsafe { deref(book, "book") } {
            Ok(book) => book,
            Err(status) => return status,
        };
        unsafe { write_out(out, "out", export_string(serialize_open_book(&book.0))) }
    })
}

/// The open book on the disk page (empty monodromy); underlying manifold
/// is the three-sphere.
#[no_mangle]
pub extern "C" fn ob_book_disk() -> *mut ObBook {
    export_book(OpenBook::disk())
}

/// The annulus open book with a single twist of the given power along the
/// core curve; `twist` equal to 0 gives the empty word.
#[no_mangle]
pub extern "C" fn ob_book_annulus(twist: i64) -> *mut ObBook {
    export_book(OpenBook::annulus(twist))
}

/// The trivial (empty-monodromy) book on `boundary_count` boundary
/// circles; fails when `boundary_count` is 0.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_book_trivial(boundary_count: u32, out: *mut *mut ObBook) -> ObStatus {
    guarded(|| match OpenBook::trivial(boundary_count) {
        Ok(book) => unsafe { write_out(out, "out", export_book(book)) },
        Err(err) => fail_with(&err),
    })
}

/// Releases a book handle. NULL is allowed.
///
/// # Safety
/// `book` must have come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ob_book_free(book: *mut ObBook) {
    if !book.is_null() {
        drop(unsafe { Box::from_raw(book) });
    }
}

/// # Safety
/// `book` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_book_genus(book: *const ObBook, out: *mut u32) -> ObStatus {
    guarded(|| match unsafe { deref(book, "book") } {
        Ok(book) => unsafe { write_out(out, "out", book.0.page().genus()) },
        Err(status) => status,
    })
}

/// # Safety
/// `book` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_book_boundary_count(book: *const ObBook, out: *mut u32) -> ObStatus {
    guarded(|| match unsafe { deref(book, "book") } {
        Ok(book) => unsafe { write_out(out, "out", book.0.page().boundary_count()) },
        Err(status) => status,
    })
}

/// The norm `2g + r - 1` of the book.
///
/// # Safety
/// `book` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_book_norm(book: *const ObBook, out: *mut i64) -> ObStatus {
    guarded(|| match unsafe { deref(book, "book") } {
        Ok(book) => unsafe { write_out(out, "out", book.0.norm()) },
        Err(status) => status,
    })
}

/// Euler characteristic `2 - 2g - r` of the page.
///
/// # Safety
/// `book` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_book_euler_char(book: *const ObBook, out: *mut i64) -> ObStatus {
    guarded(|| match unsafe { deref(book, "book") } {
        Ok(book) => unsafe { write_out(out, "out", book.0.page().euler_char()) },
        Err(status) => status,
    })
}

/// Structural equality of two books (same page, same word).
///
/// # Safety
/// `a` and `b` must be live handles and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_book_eq(
    a: *const ObBook,
    b: *const ObBook,
    out: *mut bool,
) -> ObStatus {
    guarded(|| {
        let (a, b) = match (unsafe { deref(a, "a") }, unsafe { deref(b, "b") }) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(status), _) | (_, Err(status)) => return status,
        };
        unsafe { write_out(out, "out", a.0 == b.0) }
    })
}

/// Murasugi sum along outer boundaries; norms add and first homologies
/// direct-sum.
///
/// # Safety
/// `a` and `b` must be live handles and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_book_plumb(
    a: *const ObBook,
    b: *const ObBook,
    out: *mut *mut ObBook,
) -> ObStatus {
    guarded(|| {
        let (a, b) = match (unsafe { deref(a, "a") }, unsafe { deref(b, "b") }) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(status), _) | (_, Err(status)) => return status,
        };
        match a.0.plumb(&b.0) {
            Ok(book) => unsafe { write_out(out, "out", export_book(book)) },
            Err(err) => fail_with(&err),
        }
    })
}

/// Hopf-band stabilization: adds one boundary circle and one `+1`/`-1`
/// twist running over `attach` (existing holes) and the new hole.
///
/// # Safety
/// `book` must be a live handle; `attach` must point to `attach_len`
/// readable values (NULL is fine when `attach_len` is 0); `out` must be
/// valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_book_stabilize(
    book: *const ObBook,
    positive: bool,
    attach: *const u32,
    attach_len: usize,
    out: *mut *mut ObBook,
) -> ObStatus {
    guarded(|| {
        let book = match unsafe { deref(book, "book") } {
            Ok(book) => book,
            Err(status) => return status,
        };
        let attach = if attach_len == 0 {
            &[][..]
        } else if attach.is_null() {
            return fail(ObStatus::ObNullPointer, "attach must not be NULL");
        } else {
            unsafe { std::slice::from_raw_parts(attach, attach_len) }
        };
        let sign = if positive {
            Sign::Positive
        } else {
            Sign::Negative
        };
        match book.0.stabilize(sign, attach) {
            Ok(stabilized) => unsafe { write_out(out, "out", export_book(stabilized)) },
            Err(err) => fail_with(&err),
        }
    })
}

/// The canonical representative of the book's equivalence class (cyclic
/// reduction plus hole relabeling).
///
/// # Safety
/// `book` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_book_canonical(book: *const ObBook, out: *mut *mut ObBook) -> ObStatus {
    guarded(|| match unsafe { deref(book, "book") } {
        Ok(book) => unsafe { write_out(out, "out", export_book(book.0.canonicalize())) },
        Err(status) => status,
    })
}

/// # Safety
/// `book` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_book_is_canonical(book: *const ObBook, out: *mut bool) -> ObStatus {
    guarded(|| match unsafe { deref(book, "book") } {
        Ok(book) => unsafe { write_out(out, "out", book.0.is_canonical()) },
        Err(status) => status,
    })
}

/// First homology of the 3-manifold underlying the book, via the integer
/// surgery presentation. Fails with `OB_UNSUPPORTED_PAGE` on positive
/// genus.
///
/// # Safety
/// `book` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_book_h1(book: *const ObBook, out: *mut *mut ObGroup) -> ObStatus {
    guarded(|| {
        let book = match unsafe { deref(book, "book") } {
            Ok(book) => book,
            Err(status) => return status,
        };
        match h1(&book.0) {
            Ok(group) => unsafe { write_out(out, "out", export_group(group)) },
            Err(err) => fail_with(&err),
        }
    })
}

/// First homology of the Seifert space `Y_{p,q,r}`.
#[no_mangle]
pub extern "C" fn ob_seifert_h1(p: i64, q: i64, r: i64) -> *mut ObGroup {
    export_group(seifert_h1(p, q, r))
}

/// Parses a rendered group such as `"0"`, `"Z^2 + Z/4"` back into normal
/// form.
///
/// # Safety
/// `text` must point to a NUL-terminated string and `out` must be valid
/// for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_group_parse(text: *const c_char, out: *mut *mut ObGroup) -> ObStatus {
    guarded(|| {
        let text = match unsafe { read_str(text, "text") } {
            Ok(text) => text,
            Err(status) => return status,
        };
        match text.parse::<AbelianGroup>() {
            Ok(group) => unsafe { write_out(out, "out", export_group(group)) },
            Err(err) => fail_with(&err),
        }
    })
}

/// Renders the group, e.g. `"0"`, `"Z"`, `"Z^2 + Z/2 + Z/6"`.
///
/// # Safety
/// `group` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_group_render(group: *const ObGroup, out: *mut *mut c_char) -> ObStatus {
    guarded(|| match unsafe { deref(group, "group") } {
        Ok(group) => unsafe { write_out(out, "out", export_string(group.0.to_string())) },
        Err(status) => status,
    })
}

/// # Safety
/// `group` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_group_rank(group: *const ObGroup, out: *mut u32) -> ObStatus {
    guarded(|| match unsafe { deref(group, "group") } {
        Ok(group) => unsafe { write_out(out, "out", group.0.rank()) },
        Err(status) => status,
    })
}

/// Number of torsion divisors in the normal form.
///
/// # Safety
/// `group` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_group_torsion_len(group: *const ObGroup, out: *mut usize) -> ObStatus {
    guarded(|| match unsafe { deref(group, "group") } {
        Ok(group) => unsafe { write_out(out, "out", group.0.torsion().len()) },
        Err(status) => status,
    })
}

/// The `index`-th torsion divisor as a decimal string (divisors can
/// exceed any machine integer).
///
/// # Safety
/// `group` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_group_torsion_at(
    group: *const ObGroup,
    index: usize,
    out: *mut *mut c_char,
) -> ObStatus {
    guarded(|| {
        let group = match unsafe { deref(group, "group") } {
            Ok(group) => group,
            Err(status) => return status,
        };
        match group.0.torsion().get(index) {
            Some(divisor) => unsafe { write_out(out, "out", export_string(divisor.to_string())) },
            None => fail(
                ObStatus::ObInvalid,
                &format!(
                    "torsion index {index} out of range: group has {} divisors",
                    group.0.torsion().len()
                ),
            ),
        }
    })
}

/// # Safety
/// `group` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_group_is_trivial(group: *const ObGroup, out: *mut bool) -> ObStatus {
    guarded(|| match unsafe { deref(group, "group") } {
        Ok(group) => unsafe { write_out(out, "out", group.0.is_trivial()) },
        Err(status) => status,
    })
}

/// # Safety
/// `a` and `b` must be live handles and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_group_eq(
    a: *const ObGroup,
    b: *const ObGroup,
    out: *mut bool,
) -> ObStatus {
    guarded(|| {
        let (a, b) = match (unsafe { deref(a, "a") }, unsafe { deref(b, "b") }) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(status), _) | (_, Err(status)) => return status,
        };
        unsafe { write_out(out, "out", a.0 == b.0) }
    })
}

/// Releases a group handle. NULL is allowed.
///
/// # Safety
/// `group` must have come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ob_group_free(group: *mut ObGroup) {
    if !group.is_null() {
        drop(unsafe { Box::from_raw(group) });
    }
}

/// d3 of a contact connected sum. Half-integers travel as twice their
/// value: passing `a_twice = -1` means `a = -1/2`. Requires torsion first
/// Chern class (`c1_torsion`), otherwise fails with `OB_INVALID`.
///
/// # Safety
/// `out_twice` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_d3_connected_sum(
    a_twice: i64,
    b_twice: i64,
    c1_torsion: bool,
    out_twice: *mut i64,
) -> ObStatus {
    guarded(|| {
        let a = HalfInteger::from_twice(a_twice);
        let b = HalfInteger::from_twice(b_twice);
        match d3_connected_sum(a, b, c1_torsion) {
            Ok(sum) => unsafe { write_out(out_twice, "out_twice", sum.twice()) },
            Err(err) => fail_with(&err),
        }
    })
}

/// Describes the catalog entry for the book's canonical class as a
/// multi-line text block, or writes NULL when the catalog has no entry
/// (absence is a normal result).
///
/// # Safety
/// `book` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_catalog_describe(
    book: *const ObBook,
    out: *mut *mut c_char,
) -> ObStatus {
    guarded(|| {
        let book = match unsafe { deref(book, "book") } {
            Ok(book) => book,
            Err(status) => return status,
        };
        let text = catalog_lookup(&book.0).map(|entry| entry.to_string());
        unsafe { write_out(out, "out", text.map_or(std::ptr::null_mut(), export_string)) }
    })
}

unsafe fn config_from(options: &ObSearchOptions) -> Result<SearchConfig, ObStatus> {
    let mut config = match SearchConfig::new(options.max_boundary, options.max_total_exponent) {
        Ok(config) => config,
        Err(err) => return Err(fail_with(&err)),
    };
    if options.has_exponent_bound {
        config = config.with_exponent_bound(options.exponent_bound);
    }
    if !options.target.is_null() {
        let text = unsafe { read_str(options.target, "target") }?;
        match text.parse::<AbelianGroup>() {
            Ok(group) => config = config.with_target(group),
            Err(err) => return Err(fail_with(&err)),
        }
    }
    if options.has_norm_cap {
        config = config.with_norm_cap(options.norm_cap);
    }
    Ok(config)
}

/// Runs the bounded enumeration and writes the CSV report (identical to
/// the CLI's `search` output).
///
/// # Safety
/// `options` must be a readable struct whose `target`, when non-NULL, is a
/// NUL-terminated string; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_search_csv(
    options: *const ObSearchOptions,
    out: *mut *mut c_char,
) -> ObStatus {
    guarded(|| {
        let options = match unsafe { deref(options, "options") } {
            Ok(options) => options,
            Err(status) => return status,
        };
        let config = match unsafe { config_from(options) } {
            Ok(config) => config,
            Err(status) => return status,
        };
        match search_report(&config, options.jobs) {
            Ok(report) => unsafe { write_out(out, "out", export_string(report.to_csv())) },
            Err(err) => fail_with(&err),
        }
    })
}

/// Minimal-norm enumerated book whose first homology equals `target`,
/// within the given bounds. Writes NULL to `out_book` (leaving `out_norm`
/// alone) when no witness exists in range — an upper bound only: matching
/// homology does not identify the manifold.
///
/// # Safety
/// `target` must be a NUL-terminated string; `out_book` and `out_norm`
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ob_cg_upper_bound(
    max_boundary: u32,
    max_total_exponent: u64,
    target: *const c_char,
    out_book: *mut *mut ObBook,
    out_norm: *mut i64,
) -> ObStatus {
    guarded(|| {
        let target = match unsafe { read_str(target, "target") } {
            Ok(text) => match text.parse::<AbelianGroup>() {
                Ok(group) => group,
                Err(err) => return fail_with(&err),
            },
            Err(status) => return status,
        };
        let config = match SearchConfig::new(max_boundary, max_total_exponent) {
            Ok(config) => config,
            Err(err) => return fail_with(&err),
        };
        if out_norm.is_null() {
            return fail(ObStatus::ObNullPointer, "out_norm must not be NULL");
        }
        match cg_upper_bound(&config, &target) {
            Some((book, norm)) => {
                let status = unsafe { write_out(out_book, "out_book", export_book(book)) };
                if status == ObStatus::ObOk {
                    unsafe { out_norm.write(norm) };
                }
                status
            }
            None => unsafe { write_out(out_book, "out_book", std::ptr::null_mut()) },
        }
    })
}

/// Writes the annulus-family verification table for twist powers up to
/// `m_max` in absolute value (identical to the CLI's `verify-annulus`).
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ob_verify_annulus(m_max: i64, out: *mut *mut c_char) -> ObStatus {
    guarded(|| match verify_annulus_family(m_max) {
        Ok(table) => unsafe { write_out(out, "out", export_string(table)) },
        Err(err) => fail_with(&err),
    })
}
