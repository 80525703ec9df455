//! `srgf`: encode, decode and analyze light fields with super-ray graph
//! transforms.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 invalid input or
//! configuration, 3 corrupt bitstream.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use srgf_core::analysis::{analyze, fmt_db};
use srgf_core::codec::{decode, encode, EncoderConfig, Mode, PluginCommands, Quantizer, ReferenceCodec};
use srgf_core::disparity::{estimate_disparity, BlockMatchParams};
use srgf_core::lightfield::{load_light_field, psnr, save_light_field, DisparityMap, LightField, ViewNaming};
use srgf_core::segmentation::SlicParams;
use srgf_core::Error;

/// Disparity file picked up from the input directory when `--disparity` is
/// not given.
const DISPARITY_FILE: &str = "disparity.pfm";

#[derive(Parser)]
#[command(name = "srgf", version, about = "Light field coding with super-ray graph transforms")]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a light field directory into a bitstream
    Encode {
        #[command(flatten)]
        opts: CodingOpts,
        input: PathBuf,
        output: PathBuf,
    },
    /// Decode a bitstream into a light field directory
    Decode {
        /// Original light field directory; prints PSNR against it
        #[arg(long)]
        reference: Option<PathBuf>,
        /// Decode command template for plug-in reference payloads
        #[arg(long)]
        plugin_decode: Option<String>,
        input: PathBuf,
        output: PathBuf,
    },
    /// Report energy compaction, conditioning and payload sizes
    Analyze {
        #[command(flatten)]
        opts: CodingOpts,
        /// Also encode and decode with the given mode and Q
        #[arg(long)]
        code: bool,
        /// Machine-readable report file
        #[arg(long)]
        report: Option<PathBuf>,
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RefCodec {
    Builtin,
    Plugin,
}

#[derive(Args)]
struct CodingOpts {
    #[arg(long, default_value = "nonseparable")]
    mode: Mode,
    /// Quantization step, or `bypass` for exact coding
    #[arg(long, default_value = "1")]
    q: Quantizer,
    #[arg(long, default_value_t = 4000)]
    superrays: usize,
    #[arg(long, default_value_t = 10.0)]
    slic_compactness: f64,
    #[arg(long, value_enum, default_value = "builtin")]
    ref_codec: RefCodec,
    /// Command template reading `{input}` (PGM) and writing `{output}`
    #[arg(long)]
    plugin_encode: Option<String>,
    /// Command template reading `{input}` (payload) and writing `{output}` (PGM)
    #[arg(long)]
    plugin_decode: Option<String>,
    /// Disparity map of the top-left view (PFM); defaults to
    /// `<input>/disparity.pfm`, then to block matching
    #[arg(long)]
    disparity: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Corrupt { .. } => 3,
            Error::Io { .. }
            | Error::MissingFile(_)
            | Error::BadImage { .. }
            | Error::BadMetadata { .. }
            | Error::DimensionMismatch(_)
            | Error::InvalidArgument(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CliResult<T> = Result<T, Failure>;

impl CodingOpts {
    fn config(&self) -> CliResult<EncoderConfig> {
        if self.superrays == 0 {
            return Err(usage("--superrays must be positive"));
        }
        if !(self.slic_compactness > 0.0 && self.slic_compactness.is_finite()) {
            return Err(usage("--slic-compactness must be a positive number"));
        }
        let reference = match self.ref_codec {
            RefCodec::Builtin => ReferenceCodec::Builtin,
            RefCodec::Plugin => match (&self.plugin_encode, &self.plugin_decode) {
                (Some(e), Some(d)) => ReferenceCodec::Plugin(PluginCommands {
                    encode: e.clone(),
                    decode: d.clone(),
                }),
                _ => return Err(usage("--ref-codec plugin needs --plugin-encode and --plugin-decode")),
            },
        };
        Ok(EncoderConfig {
            mode: self.mode,
            quantizer: self.q,
            slic: SlicParams {
                k_target: self.superrays,
                compactness: self.slic_compactness,
                ..SlicParams::default()
            },
            reference,
            ..EncoderConfig::default()
        })
    }

    fn load(&self, dir: &Path) -> CliResult<(LightField, DisparityMap)> {
        let lf = load_light_field(dir, &ViewNaming::default())?;
        let implicit = dir.join(DISPARITY_FILE);
        let disp = match &self.disparity {
            Some(path) if !path.exists() => return Err(Error::MissingFile(path.clone()).into()),
            Some(path) => DisparityMap::load(path)?,
            None if implicit.exists() => DisparityMap::load(&implicit)?,
            None => {
                eprintln!("no disparity map, estimating by block matching");
                estimate_disparity(&lf, &BlockMatchParams::default())?
            }
        };
        Ok((lf, disp))
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| Failure {
        code: 1,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn cmd_encode(opts: &CodingOpts, input: &Path, output: &Path) -> CliResult<()> {
    let config = opts.config()?;
    let (lf, disp) = opts.load(input)?;
    let start = Instant::now();
    let enc = encode(&lf, &disp, &config)?;
    let secs = start.elapsed().as_secs_f64();
    write_file(output, &enc.bytes)?;
    let bits = enc.bytes.len() as f64 * 8.0;
    println!("wrote {} ({} bytes)", output.display(), enc.bytes.len());
    println!("superrays = {}", enc.superray_count);
    for (name, size) in &enc.section_sizes {
        println!("bits.{name} = {}", size * 8);
    }
    println!("bpp = {:.6}", bits / lf.num_rays() as f64);
    println!("time = {secs:.2}s");
    Ok(())
}

fn cmd_decode(input: &Path, output: &Path, reference: Option<&Path>, plugin_decode: Option<&str>) -> CliResult<()> {
    if !input.exists() {
        return Err(Error::MissingFile(input.to_path_buf()).into());
    }
    let bytes = fs::read(input).map_err(|e| {
        Failure::from(Error::Io {
            path: input.to_path_buf(),
            source: e,
        })
    })?;
    let plugin = plugin_decode.map(|d| PluginCommands {
        encode: String::new(),
        decode: d.to_string(),
    });
    let start = Instant::now();
    let lf = decode(&bytes, plugin.as_ref())?;
    let secs = start.elapsed().as_secs_f64();
    save_light_field(&lf, output, &ViewNaming::default())?;
    println!(
        "wrote {} ({}x{} views of {}x{})",
        output.display(),
        lf.rows(),
        lf.cols(),
        lf.height(),
        lf.width()
    );
    println!("bpp = {:.6}", bytes.len() as f64 * 8.0 / lf.num_rays() as f64);
    println!("time = {secs:.2}s");
    if let Some(dir) = reference {
        let original = load_light_field(dir, &ViewNaming::default())?;
        println!("psnr_db = {}", fmt_db(psnr(&original, &lf)?));
    }
    Ok(())
}

fn cmd_analyze(opts: &CodingOpts, input: &Path, code: bool, report: Option<&Path>) -> CliResult<()> {
    let config = opts.config()?;
    let (lf, disp) = opts.load(input)?;
    let r = analyze(&lf, &disp, &config, code)?;
    let (med_s, med_n) = r.median_log10_cond();
    let (max_s, max_n) = r.max_log10_cond();
    println!("superrays = {}", r.superrays.len());
    println!(
        "{:<14} {:>10} {:>10} {:>14} {:>14}",
        "mode", "energy %", "mean %", "ref bits", "DC bits"
    );
    for (name, t) in [("nonseparable", &r.nonseparable), ("separable", &r.separable)] {
        println!(
            "{:<14} {:>10.2} {:>10.2} {:>14} {:>14}",
            name,
            100.0 * t.energy_total,
            100.0 * t.energy_mean,
            t.reference_bits,
            t.dc_direct_bits
        );
    }
    println!("log10 cond sampled: median {med_s:.3}, max {max_s:.3}");
    println!("log10 cond naive:   median {med_n:.3}, max {max_n:.3}");
    if let Some(c) = &r.coding {
        println!("coded {}: {:.4} bpp, psnr_db = {}", c.mode, c.bpp, fmt_db(c.psnr_db));
    }
    if let Some(path) = report {
        write_file(path, r.to_text().as_bytes())?;
        println!("report written to {}", path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Encode { opts, input, output } => cmd_encode(opts, input, output),
        Command::Decode {
            reference,
            plugin_decode,
            input,
            output,
        } => cmd_decode(input, output, reference.as_deref(), plugin_decode.as_deref()),
        Command::Analyze {
            opts,
            code,
            report,
            input,
        } => cmd_analyze(opts, input, *code, report.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
