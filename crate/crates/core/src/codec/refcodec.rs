//! Reference image coding: the built-in intra codec or an external command
//! pair whose payload is stored opaquely.

use std::path::Path;
use std::process::Command;

use super::intra;
use crate::error::{Error, Result};
use crate::pnm;

const SECTION: &str = "reference";
const KIND_BUILTIN: u8 = 0;
const KIND_PLUGIN: u8 = 1;

/// Shell command templates; `{input}` and `{output}` are replaced by file
/// paths. Encode reads a PGM and writes a payload, decode the reverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluginCommands {
    pub encode: String,
    pub decode: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum ReferenceCodec {
    #[default]
    Builtin,
    Plugin(PluginCommands),
}

/// Image geometry shared by both ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ImageShape {
    pub height: usize,
    pub width: usize,
    pub bitdepth: u8,
}

impl ImageShape {
    fn peak(self) -> u16 {
        ((1u32 << self.bitdepth) - 1) as u16
    }
}

fn run(template: &str, input: &Path, output: &Path) -> Result<()> {
    let cmd = template
        .replace("{input}", &input.display().to_string())
        .replace("{output}", &output.display().to_string());
    let out = Command::new("sh")
        .arg("-c")
        .arg(&cmd)
        .output()
        .map_err(|e| Error::Plugin(format!("cannot run `{cmd}`: {e}")))?;
    if !out.status.success() {
        return Err(Error::Plugin(format!(
            "`{cmd}` exited with {}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr).trim()
        )));
    }
    Ok(())
}

fn tempdir() -> Result<tempfile::TempDir> {
    tempfile::tempdir().map_err(|e| Error::Plugin(format!("cannot create temporary directory: {e}")))
}

pub fn encode_reference(codec: &ReferenceCodec, pixels: &[u16], shape: ImageShape) -> Result<Vec<u8>> {
    match codec {
        ReferenceCodec::Builtin => {
            let mut out = vec![KIND_BUILTIN];
            out.extend(intra::encode_image(pixels, shape.height, shape.width, shape.bitdepth));
            Ok(out)
        }
        ReferenceCodec::Plugin(cmds) => {
            let dir = tempdir()?;
            let input = dir.path().join("reference.pgm");
            let output = dir.path().join("reference.bin");
            pnm::write_pgm(&input, shape.width, shape.height, shape.peak(), pixels)?;
            run(&cmds.encode, &input, &output)?;
            let payload = std::fs::read(&output).map_err(|e| Error::Plugin(format!("no payload from encoder: {e}")))?;
            let mut out = vec![KIND_PLUGIN];
            out.extend(payload);
            Ok(out)
        }
    }
}

/// `plugin` supplies the decode command for plug-in payloads.
pub fn decode_reference(bytes: &[u8], shape: ImageShape, plugin: Option<&PluginCommands>) -> Result<Vec<u16>> {
    let (&kind, payload) = bytes
        .split_first()
        .ok_or_else(|| Error::corrupt(SECTION, "empty section"))?;
    match kind {
        KIND_BUILTIN => intra::decode_image(payload, shape.height, shape.width, shape.bitdepth),
        KIND_PLUGIN => {
            let cmds = plugin.ok_or_else(|| Error::Plugin("stream needs a plug-in decode command".into()))?;
            let dir = tempdir()?;
            let input = dir.path().join("reference.bin");
            let output = dir.path().join("reference.pgm");
            std::fs::write(&input, payload).map_err(|e| Error::io(&input, e))?;
            run(&cmds.decode, &input, &output)?;
            let img = pnm::read_pnm(&output)?;
            if (img.height, img.width) != (shape.height, shape.width) {
                return Err(Error::Plugin(format!(
                    "decoder produced {}x{}, expected {}x{}",
                    img.height, img.width, shape.height, shape.width
                )));
            }
            let peak = shape.peak();
            Ok(img.luma().into_iter().map(|v| v.min(peak)).collect())
        }
        other => Err(Error::corrupt(SECTION, format!("unknown reference codec {other}"))),
    }
}
