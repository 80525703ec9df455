mod common;

use srgf_core::codec::{
    decode, encode, read_stream, EncoderConfig, Mode, PluginCommands, Quantizer, ReferenceCodec, GROUP_COUNT,
};
use srgf_core::lightfield::psnr;
use srgf_core::segmentation::SlicParams;
use srgf_core::Error;

fn config(mode: Mode, quantizer: Quantizer, k: usize) -> EncoderConfig {
    EncoderConfig {
        mode,
        quantizer,
        slic: SlicParams {
            k_target: k,
            ..SlicParams::default()
        },
        ..EncoderConfig::default()
    }
}

#[test]
fn bypass_round_trip_is_exact_in_both_modes() {
    let (lf, disp) = common::synthetic_field(3, 4, 40, 21);
    for mode in [Mode::NonSeparable, Mode::Separable] {
        let enc = encode(&lf, &disp, &config(mode, Quantizer::Bypass, 120)).unwrap();
        let dec = decode(&enc.bytes, None).unwrap();
        assert_eq!(dec, lf, "{mode}");
        assert_eq!(psnr(&lf, &dec).unwrap(), f64::INFINITY);
    }
}

#[test]
fn half_step_beats_unit_step() {
    let (lf, disp) = common::synthetic_field(3, 3, 32, 2);
    for mode in [Mode::NonSeparable, Mode::Separable] {
        let coarse = encode(&lf, &disp, &config(mode, Quantizer::Step(1.0), 80)).unwrap();
        let fine = encode(&lf, &disp, &config(mode, Quantizer::Step(0.5), 80)).unwrap();
        let p1 = psnr(&lf, &decode(&coarse.bytes, None).unwrap()).unwrap();
        let p2 = psnr(&lf, &decode(&fine.bytes, None).unwrap()).unwrap();
        assert!(p1 > 50.0 && p2 >= p1, "{mode}: {p1} {p2}");
        assert!(fine.bytes.len() >= coarse.bytes.len());
    }
}

#[test]
fn separable_stream_has_no_segmentation() {
    let (lf, disp) = common::synthetic_field(2, 2, 24, 3);
    let sep = encode(&lf, &disp, &config(Mode::Separable, Quantizer::Step(1.0), 30)).unwrap();
    let (header, sections) = read_stream(&sep.bytes).unwrap();
    assert_eq!(header.mode, Mode::Separable);
    assert!(sections.segmentation.is_none());
    assert_eq!(sections.groups.len(), GROUP_COUNT);
    let non = encode(&lf, &disp, &config(Mode::NonSeparable, Quantizer::Step(1.0), 30)).unwrap();
    let (_, sections) = read_stream(&non.bytes).unwrap();
    assert!(sections.segmentation.is_some());
}

#[test]
fn truncated_and_damaged_streams_fail_cleanly() {
    let (lf, disp) = common::synthetic_field(2, 3, 24, 4);
    let enc = encode(&lf, &disp, &config(Mode::NonSeparable, Quantizer::Step(1.0), 30)).unwrap();
    for cut in [0, 3, 20, enc.bytes.len() / 2, enc.bytes.len() - 1] {
        let err = decode(&enc.bytes[..cut], None).unwrap_err();
        assert!(matches!(err, Error::Corrupt { .. }), "cut {cut}: {err}");
    }
    // flipping bits inside payloads must never panic
    for i in (60..enc.bytes.len()).step_by(37) {
        let mut bad = enc.bytes.clone();
        bad[i] ^= 0x5A;
        let _ = decode(&bad, None);
    }
}

#[test]
fn plugin_reference_codec_round_trip() {
    let (lf, disp) = common::synthetic_field(2, 2, 20, 5);
    let cmds = PluginCommands {
        encode: "cp {input} {output}".into(),
        decode: "cp {input} {output}".into(),
    };
    let mut cfg = config(Mode::Separable, Quantizer::Bypass, 25);
    cfg.reference = ReferenceCodec::Plugin(cmds.clone());
    let enc = encode(&lf, &disp, &cfg).unwrap();
    assert_eq!(decode(&enc.bytes, Some(&cmds)).unwrap(), lf);
    assert!(matches!(decode(&enc.bytes, None), Err(Error::Plugin(_))));
}

#[test]
fn disparity_of_wrong_size_is_rejected() {
    let (lf, _) = common::synthetic_field(2, 2, 20, 6);
    let disp = srgf_core::lightfield::DisparityMap::constant(10, 20, 0.0);
    assert!(matches!(
        encode(&lf, &disp, &EncoderConfig::default()),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn ten_bit_field_bypass() {
    let (lf8, disp) = common::synthetic_field(2, 2, 24, 8);
    let mut lf = srgf_core::lightfield::LightField::new(2, 2, 24, 24, 10).unwrap();
    for (d, s) in lf.rays_mut().iter_mut().zip(lf8.rays()) {
        *d = s * 4 + (s % 3);
    }
    for mode in [Mode::NonSeparable, Mode::Separable] {
        let enc = encode(&lf, &disp, &config(mode, Quantizer::Bypass, 40)).unwrap();
        assert_eq!(decode(&enc.bytes, None).unwrap(), lf, "{mode}");
    }
}
