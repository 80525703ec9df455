//! Quantization, entropy coding, reference image coding and the bitstream
//! container, plus the end-to-end pipelines.

pub mod bitstream;
pub mod classes;
pub mod intra;
pub mod labels;
mod pipeline;
pub mod quant;
pub mod rangecoder;
pub mod refcodec;
pub mod symbols;

pub use bitstream::{read_stream, write_stream, Header, Mode, Sections, GROUP_COUNT};
pub use classes::{assign_class, cut_size};
pub use pipeline::{build_geometry, decode, encode, segment_view, Encoded, EncoderConfig, Geometry, DISPARITY_SCALE};
pub use quant::{dequantize, quantize, Quantizer, BYPASS_STEP};
pub use refcodec::{decode_reference, encode_reference, ImageShape, PluginCommands, ReferenceCodec};
