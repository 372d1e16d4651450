//! Exercises the C ABI from Rust: status codes, out-parameter handling,
//! ownership transfer, and the thread-local error message.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use openbook_capi::*;

fn cstring(text: &str) -> CString {
    CString::new(text).expect("test input has no NULs")
}

/// Takes ownership of a `char *` returned by the library.
unsafe fn claim_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let text = unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .expect("library strings are UTF-8")
        .to_owned();
    unsafe { ob_string_free(ptr) };
    text
}

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(ob_last_error())
            .to_str()
            .expect("error messages are UTF-8")
            .to_owned()
    }
}

#[test]
fn parse_serialize_round_trip() {
    let text = cstring("page 0 3\ntwist 1 1\ntwist -2 2\ntwist -3 outer\n");
    let mut book = ptr::null_mut();
    unsafe {
        assert_eq!(ob_book_parse(text.as_ptr(), &mut book), ObStatus::ObOk);
        let mut rendered = ptr::null_mut();
        assert_eq!(ob_book_serialize(book, &mut rendered), ObStatus::ObOk);
        assert_eq!(
            claim_string(rendered),
            "page 0 3\ntwist 1 1\ntwist -2 2\ntwist -3 1,2\n"
        );

        let mut norm = 0i64;
        assert_eq!(ob_book_norm(book, &mut norm), ObStatus::ObOk);
        assert_eq!(norm, 2);
        let mut euler = 0i64;
        assert_eq!(ob_book_euler_char(book, &mut euler), ObStatus::ObOk);
        assert_eq!(euler, -1);

        ob_book_free(book);
    }
}

#[test]
fn parse_failures_set_status_and_message() {
    let mut book = ptr::null_mut();
    unsafe {
        assert_eq!(
            ob_book_parse(ptr::null(), &mut book),
            ObStatus::ObNullPointer
        );
        assert_eq!(last_error(), "text must not be NULL");

        let bad = cstring("page 0 2\ntwist 0 1\n");
        assert_eq!(ob_book_parse(bad.as_ptr(), &mut book), ObStatus::ObInvalid);
        assert!(last_error().contains("line 2"), "{}", last_error());

        let not_utf8: &[u8] = b"page 0 1\n\xFF\0";
        assert_eq!(
            ob_book_parse(not_utf8.as_ptr().cast(), &mut book),
            ObStatus::ObBadUtf8
        );
    }
    // Out parameter untouched throughout.
    assert!(book.is_null());
}

#[test]
fn homology_of_annulus_and_positive_genus_refusal() {
    unsafe {
        let annulus = ob_book_annulus(-5);
        let mut group = ptr::null_mut();
        assert_eq!(ob_book_h1(annulus, &mut group), ObStatus::ObOk);
        let mut rendered = ptr::null_mut();
        assert_eq!(ob_group_render(group, &mut rendered), ObStatus::ObOk);
        assert_eq!(claim_string(rendered), "Z/5");
        ob_group_free(group);
        ob_book_free(annulus);

        let genus_two = cstring("page 2 1\n");
        let mut book = ptr::null_mut();
        assert_eq!(ob_book_parse(genus_two.as_ptr(), &mut book), ObStatus::ObOk);
        let mut group = ptr::null_mut();
        assert_eq!(ob_book_h1(book, &mut group), ObStatus::ObUnsupportedPage);
        assert!(group.is_null());
        assert!(last_error().contains("genus 2"), "{}", last_error());
        ob_book_free(book);
    }
}

#[test]
fn plumb_and_stabilize_compose() {
    unsafe {
        let a = ob_book_annulus(3);
        let b = ob_book_annulus(-2);
        let mut plumbed = ptr::null_mut();
        assert_eq!(ob_book_plumb(a, b, &mut plumbed), ObStatus::ObOk);
        let mut norm = 0i64;
        assert_eq!(ob_book_norm(plumbed, &mut norm), ObStatus::ObOk);
        assert_eq!(norm, 2);

        let attach = [1u32, 2];
        let mut stabilized = ptr::null_mut();
        assert_eq!(
            ob_book_stabilize(
                plumbed,
                true,
                attach.as_ptr(),
                attach.len(),
                &mut stabilized
            ),
            ObStatus::ObOk
        );
        let mut rendered = ptr::null_mut();
        assert_eq!(ob_book_serialize(stabilized, &mut rendered), ObStatus::ObOk);
        assert_eq!(
            claim_string(rendered),
            "page 0 4\ntwist 3 1\ntwist -2 2\ntwist 1 1,2,3\n"
        );

        // Homology is untouched by stabilization.
        let (mut before, mut after) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(ob_book_h1(plumbed, &mut before), ObStatus::ObOk);
        assert_eq!(ob_book_h1(stabilized, &mut after), ObStatus::ObOk);
        let mut equal = false;
        assert_eq!(ob_group_eq(before, after, &mut equal), ObStatus::ObOk);
        assert!(equal);

        // Attachment holes outside the page are rejected.
        let bad = [7u32];
        let mut rejected = ptr::null_mut();
        assert_eq!(
            ob_book_stabilize(plumbed, false, bad.as_ptr(), bad.len(), &mut rejected),
            ObStatus::ObInvalid
        );
        assert!(rejected.is_null());

        ob_group_free(before);
        ob_group_free(after);
        ob_book_free(stabilized);
        ob_book_free(plumbed);
        ob_book_free(b);
        ob_book_free(a);
    }
}

#[test]
fn canonicalization_through_the_abi() {
    let text = cstring("page 0 2\ntwist 2 1\ntwist 3 1\n");
    unsafe {
        let mut book = ptr::null_mut();
        assert_eq!(ob_book_parse(text.as_ptr(), &mut book), ObStatus::ObOk);
        let mut flat = false;
        assert_eq!(ob_book_is_canonical(book, &mut flat), ObStatus::ObOk);
        assert!(!flat);

        let mut canonical = ptr::null_mut();
        assert_eq!(ob_book_canonical(book, &mut canonical), ObStatus::ObOk);
        let mut expected = ob_book_annulus(5);
        let mut equal = false;
        assert_eq!(ob_book_eq(canonical, expected, &mut equal), ObStatus::ObOk);
        assert!(equal);

        ob_book_free(expected);
        expected = ptr::null_mut();
        ob_book_free(expected); // NULL is fine.
        ob_book_free(canonical);
        ob_book_free(book);
    }
}

#[test]
fn group_accessors_and_parsing() {
    unsafe {
        let group = ob_seifert_h1(-2, -2, -2);
        let mut rendered = ptr::null_mut();
        assert_eq!(ob_group_render(group, &mut rendered), ObStatus::ObOk);
        assert_eq!(claim_string(rendered), "Z/2 + Z/6");

        let mut rank = 7u32;
        assert_eq!(ob_group_rank(group, &mut rank), ObStatus::ObOk);
        assert_eq!(rank, 0);
        let mut len = 0usize;
        assert_eq!(ob_group_torsion_len(group, &mut len), ObStatus::ObOk);
        assert_eq!(len, 2);
        let mut divisor = ptr::null_mut();
        assert_eq!(ob_group_torsion_at(group, 1, &mut divisor), ObStatus::ObOk);
        assert_eq!(claim_string(divisor), "6");
        assert_eq!(
            ob_group_torsion_at(group, 2, &mut ptr::null_mut()),
            ObStatus::ObInvalid
        );
        assert!(last_error().contains("torsion index 2"), "{}", last_error());

        let text = cstring("Z/6 + Z/2");
        let mut parsed = ptr::null_mut();
        assert_eq!(ob_group_parse(text.as_ptr(), &mut parsed), ObStatus::ObOk);
        let mut equal = false;
        assert_eq!(ob_group_eq(group, parsed, &mut equal), ObStatus::ObOk);
        assert!(equal);
        let mut trivial = true;
        assert_eq!(ob_group_is_trivial(parsed, &mut trivial), ObStatus::ObOk);
        assert!(!trivial);

        let junk = cstring("Q");
        let mut rejected = ptr::null_mut();
        assert_eq!(
            ob_group_parse(junk.as_ptr(), &mut rejected),
            ObStatus::ObInvalid
        );
        assert!(rejected.is_null());

        ob_group_free(parsed);
        ob_group_free(group);
    }
}

#[test]
fn d3_arithmetic_and_licensing() {
    unsafe {
        let mut twice = 0i64;
        assert_eq!(
            ob_d3_connected_sum(-1, -1, true, &mut twice),
            ObStatus::ObOk
        );
        assert_eq!(twice, -1);
        assert_eq!(ob_d3_connected_sum(3, -1, true, &mut twice), ObStatus::ObOk);
        assert_eq!(twice, 3);
        assert_eq!(
            ob_d3_connected_sum(0, 0, false, &mut twice),
            ObStatus::ObInvalid
        );
        assert!(last_error().contains("torsion"), "{}", last_error());
    }
}

#[test]
fn catalog_descriptions() {
    unsafe {
        let disk = ob_book_disk();
        let mut text = ptr::null_mut();
        assert_eq!(ob_catalog_describe(disk, &mut text), ObStatus::ObOk);
        let description = claim_string(text);
        assert!(description.contains("manifold: S^3"), "{description}");
        assert!(description.contains("structure: xi_std"), "{description}");
        ob_book_free(disk);

        let stranger = cstring("page 0 4\ntwist 2 1\ntwist 3 2,3\n");
        let mut book = ptr::null_mut();
        assert_eq!(ob_book_parse(stranger.as_ptr(), &mut book), ObStatus::ObOk);
        let mut text = ptr::null_mut();
        assert_eq!(ob_catalog_describe(book, &mut text), ObStatus::ObOk);
        assert!(text.is_null());
        ob_book_free(book);
    }
}

#[test]
fn search_report_and_upper_bound() {
    unsafe {
        let options = ObSearchOptions {
            max_boundary: 2,
            max_total_exponent: 2,
            has_exponent_bound: false,
            exponent_bound: 0,
            target: ptr::null(),
            has_norm_cap: false,
            norm_cap: 0,
            jobs: 2,
        };
        let mut csv = ptr::null_mut();
        assert_eq!(ob_search_csv(&options, &mut csv), ObStatus::ObOk);
        let csv = claim_string(csv);
        assert!(csv.contains("group,count,min_norm,witness"), "{csv}");
        assert!(csv.contains("# total_classes=6"), "{csv}");

        let zero_jobs = ObSearchOptions { jobs: 0, ..options };
        let mut rejected = ptr::null_mut();
        assert_eq!(
            ob_search_csv(&zero_jobs, &mut rejected),
            ObStatus::ObInvalid
        );
        assert!(rejected.is_null());

        let target = cstring("Z/5");
        let (mut witness, mut norm) = (ptr::null_mut(), 0i64);
        assert_eq!(
            ob_cg_upper_bound(2, 5, target.as_ptr(), &mut witness, &mut norm),
            ObStatus::ObOk
        );
        assert!(!witness.is_null());
        assert_eq!(norm, 1);
        let mut expected = ob_book_annulus(-5);
        let mut equal = false;
        assert_eq!(ob_book_eq(witness, expected, &mut equal), ObStatus::ObOk);
        assert!(equal);
        ob_book_free(expected);
        ob_book_free(witness);

        // Out of reach: leaves the out book NULL without failing.
        expected = ptr::null_mut();
        let far = cstring("Z/40");
        assert_eq!(
            ob_cg_upper_bound(2, 5, far.as_ptr(), &mut expected, &mut norm),
            ObStatus::ObOk
        );
        assert!(expected.is_null());
    }
}

#[test]
fn annulus_verification_table() {
    unsafe {
        let mut table = ptr::null_mut();
        assert_eq!(ob_verify_annulus(2, &mut table), ObStatus::ObOk);
        let table = claim_string(table);
        assert!(table.contains("2,Z/2,L(2,-1),tight"), "{table}");
        assert!(table.contains("-2,Z/2,L(2,1),overtwisted"), "{table}");

        assert_eq!(
            ob_verify_annulus(0, &mut ptr::null_mut()),
            ObStatus::ObInvalid
        );
    }
}
