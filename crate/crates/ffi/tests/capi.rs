use std::ffi::CStr;
use std::process::Command;
use std::ptr;

use rm_rpa_ffi::*;

struct Handles {
    code: *mut RpaCode,
    decoder: *mut RpaDecoder,
}

impl Drop for Handles {
    fn drop(&mut self) {
        unsafe {
            rpa_code_free(self.code);
            rpa_decoder_free(self.decoder);
        }
    }
}

fn handles(m: u32, r: u32, variant: RpaVariant, rp: (u64, u64), rq: (u64, u64)) -> Handles {
    let mut code = ptr::null_mut();
    let mut decoder = ptr::null_mut();
    unsafe {
        assert_eq!(rpa_code_new(m, r, &mut code), RpaStatus::Ok);
        assert_eq!(rpa_decoder_new(variant as u32, rp.0, rp.1, rq.0, rq.1, &mut decoder), RpaStatus::Ok);
    }
    Handles { code, decoder }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(rpa_last_error()).to_string_lossy().into_owned() }
}

#[test]
fn code_dimensions_and_encoding() {
    let h = handles(4, 2, RpaVariant::Rpa, (1, 1), (0, 1));
    unsafe {
        assert_eq!(rpa_code_n(h.code), 16);
        assert_eq!(rpa_code_k(h.code), 11);
        assert_eq!(rpa_code_n(ptr::null()), 0);
        let mut msg = [0u8; 11];
        msg[0] = 1;
        let mut word = [7u8; 16];
        assert_eq!(rpa_code_encode(h.code, msg.as_ptr(), 11, word.as_mut_ptr(), 16), RpaStatus::Ok);
        assert_eq!(word, [1u8; 16]);
        msg[1] = 1;
        assert_eq!(rpa_code_encode(h.code, msg.as_ptr(), 11, word.as_mut_ptr(), 16), RpaStatus::Ok);
        assert_eq!(&word[..4], &[1, 0, 1, 0]);
    }
}

#[test]
fn noiseless_decode_round_trip() {
    for variant in [RpaVariant::Rpa, RpaVariant::Srpa, RpaVariant::Sdss] {
        let h = handles(5, 2, variant, (1, 4), (1, 2));
        let msg: Vec<u8> = (0..16).map(|i| (i * 7 % 3 == 0) as u8).collect();
        let mut word = [0u8; 32];
        let mut out_word = [0u8; 32];
        let mut out_msg = [0u8; 16];
        let mut fht = 0u64;
        unsafe {
            assert_eq!(rpa_code_encode(h.code, msg.as_ptr(), 16, word.as_mut_ptr(), 32), RpaStatus::Ok);
            let llr: Vec<f64> = word.iter().map(|&b| if b == 0 { 40.0 } else { -40.0 }).collect();
            let status = rpa_decode(
                h.decoder, h.code, llr.as_ptr(), 32, 1, 0,
                out_word.as_mut_ptr(), 32, out_msg.as_mut_ptr(), 16, &mut fht,
            );
            assert_eq!(status, RpaStatus::Ok);
            let mut bound = 0u64;
            assert_eq!(rpa_count_fht_bound(h.decoder, h.code, &mut bound), RpaStatus::Ok);
            assert!(fht > 0 && fht <= bound, "{variant:?}: {fht} > {bound}");
        }
        assert_eq!(out_word, word, "{variant:?}");
        assert_eq!(out_msg.as_slice(), msg.as_slice(), "{variant:?}");
    }
}

#[test]
fn decode_is_reproducible_from_seed_and_stream() {
    let h = handles(6, 2, RpaVariant::Sdss, (1, 8), (1, 2));
    let llr: Vec<f64> = (0..64).map(|i| ((i * 37 % 11) as f64 - 4.0) * 0.7).collect();
    let run = |stream| {
        let mut word = [0u8; 64];
        let st = unsafe {
            rpa_decode(
                h.decoder, h.code, llr.as_ptr(), 64, 9, stream,
                word.as_mut_ptr(), 64, ptr::null_mut(), 0, ptr::null_mut(),
            )
        };
        assert_eq!(st, RpaStatus::Ok);
        word
    };
    assert_eq!(run(3), run(3));
}

#[test]
fn fht_bound_matches_closed_form() {
    let h = handles(7, 3, RpaVariant::Srpa, (1, 16), (0, 1));
    let s = handles(7, 3, RpaVariant::Sdss, (1, 16), (1, 2));
    let mut full = 0;
    let mut top = 0;
    unsafe {
        assert_eq!(rpa_count_fht_bound(h.decoder, h.code, &mut full), RpaStatus::Ok);
        assert_eq!(rpa_count_fht_bound(s.decoder, s.code, &mut top), RpaStatus::Ok);
        assert_eq!(rpa_decoder_set_schedule(s.decoder, RpaSchedule::Full as u32), RpaStatus::Ok);
        let mut again = 0;
        assert_eq!(rpa_count_fht_bound(s.decoder, s.code, &mut again), RpaStatus::Ok);
        assert_eq!(again, full);
    }
    assert_eq!((full, top), (384, 128));
    assert!((rpa_complexity_gain(96.0, 384) - 0.75).abs() < 1e-15);
}

#[test]
fn errors_are_reported() {
    let h = handles(3, 2, RpaVariant::Srpa, (1, 2), (0, 1));
    let mut code = ptr::null_mut();
    let mut decoder = ptr::null_mut();
    unsafe {
        assert_eq!(rpa_code_new(3, 4, &mut code), RpaStatus::InvalidArgument);
        assert!(code.is_null());
        assert!(last_error().contains("exceeds"));
        assert_eq!(rpa_code_new(3, 1, ptr::null_mut()), RpaStatus::NullPointer);
        assert_eq!(rpa_decoder_new(9, 1, 2, 0, 1, &mut decoder), RpaStatus::InvalidArgument);
        assert_eq!(rpa_decoder_new(1, 3, 2, 0, 1, &mut decoder), RpaStatus::InvalidArgument);
        assert_eq!(rpa_decoder_new(1, 1, 0, 0, 1, &mut decoder), RpaStatus::InvalidArgument);
        assert!(decoder.is_null());
        assert_eq!(rpa_decoder_set_theta(h.decoder, -1.0), RpaStatus::InvalidArgument);
        assert_eq!(rpa_decoder_set_schedule(h.decoder, 5), RpaStatus::InvalidArgument);

        let llr = [1.0f64; 8];
        let mut word = [0u8; 8];
        let st = rpa_decode(
            h.decoder, h.code, llr.as_ptr(), 4, 0, 0,
            word.as_mut_ptr(), 8, ptr::null_mut(), 0, ptr::null_mut(),
        );
        assert_eq!(st, RpaStatus::LengthMismatch);
        let nan = [f64::NAN; 8];
        let st = rpa_decode(
            h.decoder, h.code, nan.as_ptr(), 8, 0, 0,
            word.as_mut_ptr(), 8, ptr::null_mut(), 0, ptr::null_mut(),
        );
        assert_eq!(st, RpaStatus::InvalidArgument);
        let st = rpa_decode(
            ptr::null(), h.code, llr.as_ptr(), 8, 0, 0,
            word.as_mut_ptr(), 8, ptr::null_mut(), 0, ptr::null_mut(),
        );
        assert_eq!(st, RpaStatus::NullPointer);
        let bad = [2u8; 7];
        assert_eq!(rpa_code_encode(h.code, bad.as_ptr(), 7, word.as_mut_ptr(), 8), RpaStatus::InvalidArgument);
    }
}

const HEADER: &str = include_str!("../include/rm_rpa.h");

#[test]
fn header_declares_every_export() {
    for name in [
        "rpa_last_error", "rpa_code_new", "rpa_code_free", "rpa_code_n", "rpa_code_k",
        "rpa_code_encode", "rpa_decoder_new", "rpa_decoder_free", "rpa_decoder_set_schedule",
        "rpa_decoder_set_theta", "rpa_decode", "rpa_count_fht_bound", "rpa_complexity_gain",
        "typedef struct RpaCode RpaCode", "typedef struct RpaDecoder RpaDecoder",
        "RPA_STATUS_LENGTH_MISMATCH = 3", "RPA_VARIANT_SDSS = 2", "RPA_SCHEDULE_TOP_ONLY = 1",
    ] {
        assert!(HEADER.contains(name), "header lacks {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler on PATH; header syntax not checked");
        return;
    };
    assert!(cc.status.success());
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/rm_rpa.h");
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c", header])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
