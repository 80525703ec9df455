use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use srgf_core::lightfield::{save_light_field, LightField, ViewNaming, METADATA_FILE};
use srgf_core::synthetic::{render, textured_scene};

fn srgf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srgf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn value(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| {
            l.strip_prefix(key)?
                .trim()
                .strip_prefix('=')
                .map(|v| v.trim().to_string())
        })
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// 2x2 views of 32x32 with a disparity map next to the views.
fn scene(root: &Path) -> PathBuf {
    let dir = root.join("lf");
    let (lf, disp) = render(2, 2, 32, 32, 8, &textured_scene(32, 32, 5)).unwrap();
    save_light_field(&lf, &dir, &ViewNaming::default()).unwrap();
    disp.save(&dir.join("disparity.pfm")).unwrap();
    dir
}

#[test]
fn separable_encode_decode_reports_psnr() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = scene(tmp.path());
    let bits = tmp.path().join("out.srgf");
    let o = srgf(&[
        "encode",
        "--mode",
        "separable",
        "--q",
        "1",
        "--superrays",
        "40",
        s(&dir),
        s(&bits),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(bits.exists());
    let bpp: f64 = value(&stdout(&o), "bpp").parse().unwrap();
    assert!(bpp > 0.0 && bpp < 8.0);

    let out = tmp.path().join("dec");
    let o = srgf(&["decode", "--reference", s(&dir), s(&bits), s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let db: f64 = value(&stdout(&o), "psnr_db").parse().unwrap();
    assert!(db > 50.0, "{db}");
    assert!(out.join(METADATA_FILE).exists());
    assert!(out.join("view_01_01.pgm").exists());
}

#[test]
fn bypass_prints_infinite_psnr() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = scene(tmp.path());
    let bits = tmp.path().join("out.srgf");
    let o = srgf(&["encode", "--q", "bypass", "--superrays", "40", s(&dir), s(&bits)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = tmp.path().join("dec");
    let o = srgf(&["decode", "--reference", s(&dir), s(&bits), s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(value(&stdout(&o), "psnr_db"), "inf");
    for v in ["view_00_00.pgm", "view_01_00.pgm"] {
        assert_eq!(fs::read(dir.join(v)).unwrap(), fs::read(out.join(v)).unwrap());
    }
}

#[test]
fn missing_metadata_exits_2_naming_file() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = scene(tmp.path());
    fs::remove_file(dir.join(METADATA_FILE)).unwrap();
    let o = srgf(&["encode", s(&dir), s(&tmp.path().join("x.srgf"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(METADATA_FILE), "{}", stderr(&o));
}

#[test]
fn missing_view_exits_2_naming_file() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = scene(tmp.path());
    fs::remove_file(dir.join("view_01_00.pgm")).unwrap();
    let o = srgf(&["analyze", s(&dir)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("view_01_00"), "{}", stderr(&o));
}

#[test]
fn truncated_stream_exits_3_with_section() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = scene(tmp.path());
    let bits = tmp.path().join("out.srgf");
    assert!(srgf(&["encode", "--superrays", "40", s(&dir), s(&bits)])
        .status
        .success());
    let bytes = fs::read(&bits).unwrap();
    for keep in [3, 20, bytes.len() / 2, bytes.len() - 1] {
        fs::write(&bits, &bytes[..keep]).unwrap();
        let o = srgf(&["decode", s(&bits), s(&tmp.path().join("dec"))]);
        assert_eq!(o.status.code(), Some(3), "keep {keep}: {}", stderr(&o));
        assert!(stderr(&o).contains("section"), "{}", stderr(&o));
    }
}

#[test]
fn invalid_flags_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = scene(tmp.path());
    let out = tmp.path().join("x.srgf");
    for args in [
        vec!["encode", "--q", "-1", s(&dir), s(&out)],
        vec!["encode", "--mode", "diagonal", s(&dir), s(&out)],
        vec!["encode", "--superrays", "0", s(&dir), s(&out)],
        vec!["encode", "--ref-codec", "plugin", s(&dir), s(&out)],
        vec!["encode", "--disparity", "/nonexistent.pfm", s(&dir), s(&out)],
    ] {
        assert_eq!(srgf(&args).status.code(), Some(2), "{args:?}");
    }
    assert!(!out.exists());
}

#[test]
fn superrays_default_is_4000() {
    let help = stdout(&srgf(&["encode", "--help"]));
    assert!(help.contains("[default: 4000]"), "{help}");
    let tmp = tempfile::tempdir().unwrap();
    let dir = scene(tmp.path());
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    assert!(srgf(&["encode", s(&dir), s(&a)]).status.success());
    assert!(srgf(&["encode", "--superrays", "4000", s(&dir), s(&b)])
        .status
        .success());
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn output_independent_of_thread_count() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = scene(tmp.path());
    for mode in ["nonseparable", "separable"] {
        let mut streams = Vec::new();
        for threads in ["1", "3"] {
            let path = tmp.path().join(format!("{mode}{threads}"));
            let o = srgf(&[
                "--threads",
                threads,
                "encode",
                "--mode",
                mode,
                "--superrays",
                "40",
                s(&dir),
                s(&path),
            ]);
            assert!(o.status.success(), "{}", stderr(&o));
            streams.push(fs::read(path).unwrap());
        }
        assert_eq!(streams[0], streams[1]);
    }
}

#[test]
fn block_matching_fallback() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = scene(tmp.path());
    fs::remove_file(dir.join("disparity.pfm")).unwrap();
    let bits = tmp.path().join("out.srgf");
    let o = srgf(&["encode", "--q", "bypass", "--superrays", "40", s(&dir), s(&bits)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("block matching"));
    let o = srgf(&["decode", "--reference", s(&dir), s(&bits), s(&tmp.path().join("dec"))]);
    assert_eq!(value(&stdout(&o), "psnr_db"), "inf");
}

#[test]
fn plugin_reference_codec() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = scene(tmp.path());
    let bits = tmp.path().join("out.srgf");
    let o = srgf(&[
        "encode",
        "--superrays",
        "40",
        "--ref-codec",
        "plugin",
        "--plugin-encode",
        "cp {input} {output}",
        "--plugin-decode",
        "cp {input} {output}",
        s(&dir),
        s(&bits),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = tmp.path().join("dec");
    let o = srgf(&["decode", s(&bits), s(&out)]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let o = srgf(&[
        "decode",
        "--plugin-decode",
        "cp {input} {output}",
        "--reference",
        s(&dir),
        s(&bits),
        s(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let db: f64 = value(&stdout(&o), "psnr_db").parse().unwrap();
    assert!(db > 50.0);
}

#[test]
fn analyze_constant_field() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("lf");
    let mut lf = LightField::new(2, 2, 16, 16, 8).unwrap();
    lf.rays_mut().fill(50);
    save_light_field(&lf, &dir, &ViewNaming::default()).unwrap();
    let report = tmp.path().join("report.txt");
    let o = srgf(&["analyze", "--superrays", "8", "--report", s(&report), s(&dir)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&report).unwrap();
    assert_eq!(value(&text, "nonseparable.energy_total"), "1.000000");
    assert_eq!(value(&text, "separable.energy_total"), "1.000000");
    let n: usize = value(&text, "superrays").parse().unwrap();
    assert_eq!(value(&text, "nonseparable.classes"), format!("{n} 0 0 0"));
    assert_eq!(value(&text, "separable.classes"), format!("{n} 0 0 0"));
    assert_eq!(text.matches("[superray]").count(), n);
}

#[test]
fn analyze_reports_conditioning_and_coding() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = scene(tmp.path());
    let report = tmp.path().join("report.txt");
    let o = srgf(&[
        "analyze",
        "--code",
        "--q",
        "bypass",
        "--superrays",
        "40",
        "--report",
        s(&report),
        s(&dir),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&report).unwrap();
    let med_s: f64 = value(&text, "log10_cond_sampled_median").parse().unwrap();
    let med_n: f64 = value(&text, "log10_cond_naive_median").parse().unwrap();
    assert!(med_s < med_n);
    assert_eq!(value(&text, "coding.psnr_db"), "inf");
    assert!(text.contains("coding.bits.segmentation"));
}
