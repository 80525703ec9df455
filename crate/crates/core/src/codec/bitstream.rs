//! Container layout: fixed little-endian header, then `u32`-length-prefixed
//! sections in a fixed order.

use super::quant::Quantizer;
use crate::error::{Error, Result};
use crate::graph::EIGENSOLVER_ID;
use crate::segmentation::SlicParams;

pub const MAGIC: &[u8; 4] = b"SRGF";
pub const VERSION: u8 = 1;
pub const GROUP_COUNT: usize = 32;
/// Coefficient at position `v` of a super-ray of `N_k` coefficients goes to
/// group `floor(32 v / N_k)`.
pub const GROUP_SCHEME_UNIFORM: u8 = 1;

const FLAG_RESIDUAL: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    NonSeparable,
    Separable,
}

impl Mode {
    fn id(self) -> u8 {
        match self {
            Mode::NonSeparable => 0,
            Mode::Separable => 1,
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "nonseparable" => Ok(Mode::NonSeparable),
            "separable" => Ok(Mode::Separable),
            _ => Err(format!("unknown mode `{s}` (expected nonseparable or separable)")),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::NonSeparable => "nonseparable",
            Mode::Separable => "separable",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Header {
    pub mode: Mode,
    pub residual: bool,
    pub rows: u16,
    pub cols: u16,
    pub height: u32,
    pub width: u32,
    pub bitdepth: u8,
    pub superray_count: u32,
    pub eigensolver: u8,
    pub quantizer: Quantizer,
    pub group_scheme: u8,
    pub vertex_cap: u32,
    pub slic: SlicParams,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sections {
    pub disparity: Vec<u8>,
    /// Present in non-separable streams only.
    pub segmentation: Option<Vec<u8>>,
    pub reference: Vec<u8>,
    pub classes: Vec<u8>,
    pub groups: Vec<Vec<u8>>,
    /// Present when the header's residual flag is set.
    pub residual: Option<Vec<u8>>,
}

impl Sections {
    /// `(name, byte length)` of every present section, in stream order.
    pub fn sizes(&self) -> Vec<(&'static str, usize)> {
        let mut out = vec![("disparity", self.disparity.len())];
        if let Some(s) = &self.segmentation {
            out.push(("segmentation", s.len()));
        }
        out.push(("reference", self.reference.len()));
        out.push(("classes", self.classes.len()));
        out.push(("coefficients", self.groups.iter().map(Vec::len).sum()));
        if let Some(r) = &self.residual {
            out.push(("residual", r.len()));
        }
        out
    }
}

const HEADER_LEN: usize = 4 + 1 + 1 + 1 + 2 + 2 + 4 + 4 + 1 + 4 + 1 + 8 + 1 + 4 + 4 + 8 + 4;

pub fn write_stream(header: &Header, sections: &Sections) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + sections.sizes().iter().map(|s| s.1 + 4).sum::<usize>());
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.push(header.mode.id());
    out.push(if header.residual { FLAG_RESIDUAL } else { 0 });
    out.extend_from_slice(&header.rows.to_le_bytes());
    out.extend_from_slice(&header.cols.to_le_bytes());
    out.extend_from_slice(&header.height.to_le_bytes());
    out.extend_from_slice(&header.width.to_le_bytes());
    out.push(header.bitdepth);
    out.extend_from_slice(&header.superray_count.to_le_bytes());
    out.push(header.eigensolver);
    out.extend_from_slice(&header.quantizer.header_value().to_le_bytes());
    out.push(header.group_scheme);
    out.extend_from_slice(&header.vertex_cap.to_le_bytes());
    out.extend_from_slice(&(header.slic.k_target as u32).to_le_bytes());
    out.extend_from_slice(&header.slic.compactness.to_le_bytes());
    out.extend_from_slice(&(header.slic.iterations as u32).to_le_bytes());
    debug_assert_eq!(out.len(), HEADER_LEN);

    let mut put = |bytes: &[u8]| {
        out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
        out.extend_from_slice(bytes);
    };
    put(&sections.disparity);
    if let Some(s) = &sections.segmentation {
        put(s);
    }
    put(&sections.reference);
    put(&sections.classes);
    for g in &sections.groups {
        put(g);
    }
    if let Some(r) = &sections.residual {
        put(r);
    }
    out
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, section: &str) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.data.len())
            .ok_or_else(|| Error::corrupt(section, "truncated"))?;
        let s = &self.data[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1, "header")?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2, "header")?.try_into().expect("2 bytes")))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, "header")?.try_into().expect("4 bytes")))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8, "header")?.try_into().expect("8 bytes")))
    }

    fn section(&mut self, name: &str) -> Result<Vec<u8>> {
        let len = u32::from_le_bytes(self.take(4, name)?.try_into().expect("4 bytes")) as usize;
        Ok(self.take(len, name)?.to_vec())
    }
}

pub fn read_stream(data: &[u8]) -> Result<(Header, Sections)> {
    let mut r = Reader { data, pos: 0 };
    let bad = |reason: String| Error::corrupt("header", reason);
    if r.take(4, "header")? != MAGIC {
        return Err(bad("bad magic".into()));
    }
    let version = r.u8()?;
    if version != VERSION {
        return Err(bad(format!("unsupported version {version}")));
    }
    let mode = match r.u8()? {
        0 => Mode::NonSeparable,
        1 => Mode::Separable,
        m => return Err(bad(format!("unknown mode {m}"))),
    };
    let flags = r.u8()?;
    if flags & !FLAG_RESIDUAL != 0 {
        return Err(bad(format!("unknown flags {flags:#x}")));
    }
    let rows = r.u16()?;
    let cols = r.u16()?;
    let height = r.u32()?;
    let width = r.u32()?;
    let bitdepth = r.u8()?;
    let superray_count = r.u32()?;
    let eigensolver = r.u8()?;
    let q = r.f64()?;
    let group_scheme = r.u8()?;
    let vertex_cap = r.u32()?;
    let k_target = r.u32()? as usize;
    let compactness = r.f64()?;
    let iterations = r.u32()? as usize;

    if rows == 0 || cols == 0 || height == 0 || width == 0 {
        return Err(bad("empty light field".into()));
    }
    if (height as u64) * (width as u64) > 1 << 32 {
        return Err(bad(format!("view size {height}x{width} too large")));
    }
    if !(1..=16).contains(&bitdepth) {
        return Err(bad(format!("bit depth {bitdepth}")));
    }
    if superray_count == 0 || superray_count as u64 > height as u64 * width as u64 {
        return Err(bad(format!("super-ray count {superray_count}")));
    }
    if eigensolver != EIGENSOLVER_ID {
        return Err(bad(format!(
            "eigensolver id {eigensolver}, this build has {EIGENSOLVER_ID}"
        )));
    }
    let quantizer = Quantizer::from_header(q).ok_or_else(|| bad(format!("quantization step {q}")))?;
    if group_scheme != GROUP_SCHEME_UNIFORM {
        return Err(bad(format!("group scheme {group_scheme}")));
    }
    if !compactness.is_finite() || compactness <= 0.0 {
        return Err(bad(format!("compactness {compactness}")));
    }
    let header = Header {
        mode,
        residual: flags & FLAG_RESIDUAL != 0,
        rows,
        cols,
        height,
        width,
        bitdepth,
        superray_count,
        eigensolver,
        quantizer,
        group_scheme,
        vertex_cap,
        slic: SlicParams {
            k_target,
            compactness,
            iterations,
        },
    };

    let disparity = r.section("disparity")?;
    let segmentation = match mode {
        Mode::NonSeparable => Some(r.section("segmentation")?),
        Mode::Separable => None,
    };
    let reference = r.section("reference")?;
    let classes = r.section("classes")?;
    let groups = (0..GROUP_COUNT)
        .map(|g| r.section(&format!("coefficient group {g}")))
        .collect::<Result<Vec<_>>>()?;
    let residual = if header.residual {
        Some(r.section("residual")?)
    } else {
        None
    };
    if r.pos != data.len() {
        return Err(Error::corrupt(
            "trailer",
            format!("{} unexpected bytes", data.len() - r.pos),
        ));
    }
    Ok((
        header,
        Sections {
            disparity,
            segmentation,
            reference,
            classes,
            groups,
            residual,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (Header, Sections) {
        let header = Header {
            mode: Mode::NonSeparable,
            residual: true,
            rows: 2,
            cols: 3,
            height: 10,
            width: 12,
            bitdepth: 10,
            superray_count: 7,
            eigensolver: EIGENSOLVER_ID,
            quantizer: Quantizer::Step(0.5),
            group_scheme: GROUP_SCHEME_UNIFORM,
            vertex_cap: 1024,
            slic: SlicParams::default(),
        };
        let sections = Sections {
            disparity: vec![1, 2, 3],
            segmentation: Some(vec![4; 10]),
            reference: vec![0, 5, 6],
            classes: vec![7],
            groups: (0..GROUP_COUNT).map(|g| vec![g as u8; g % 3]).collect(),
            residual: Some(vec![9, 9]),
        };
        (header, sections)
    }

    #[test]
    fn round_trip() {
        let (h, s) = sample();
        let bytes = write_stream(&h, &s);
        assert_eq!(&bytes[..4], MAGIC);
        assert_eq!(read_stream(&bytes).unwrap(), (h, s));
    }

    #[test]
    fn separable_has_no_segmentation() {
        let (mut h, mut s) = sample();
        h.mode = Mode::Separable;
        h.residual = false;
        h.quantizer = Quantizer::Bypass;
        s.segmentation = None;
        s.residual = None;
        let bytes = write_stream(&h, &s);
        assert_eq!(read_stream(&bytes).unwrap(), (h, s));
    }

    #[test]
    fn every_truncation_is_rejected() {
        let (h, s) = sample();
        let bytes = write_stream(&h, &s);
        for len in 0..bytes.len() {
            assert!(
                matches!(read_stream(&bytes[..len]), Err(Error::Corrupt { .. })),
                "len {len}"
            );
        }
        let mut extra = bytes.clone();
        extra.push(0);
        assert!(read_stream(&extra).is_err());
    }

    #[test]
    fn header_validation() {
        let (h, s) = sample();
        let bytes = write_stream(&h, &s);
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(read_stream(&bad).is_err());
        let mut bad = bytes.clone();
        bad[4] = 2;
        assert!(read_stream(&bad).is_err());
        let mut bad = bytes;
        bad[5] = 7;
        assert!(read_stream(&bad).is_err());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("non-separable".parse::<Mode>().unwrap(), Mode::NonSeparable);
        assert_eq!("separable".parse::<Mode>().unwrap(), Mode::Separable);
        assert!("both".parse::<Mode>().is_err());
    }
}
