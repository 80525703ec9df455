use crate::segmentation::round_half_away;

/// Grid used for coefficients when quantization is bypassed.
pub const BYPASS_STEP: f64 = 1.0 / 1024.0;

/// Quantization step; the header stores `0.0` for [`Quantizer::Bypass`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Quantizer {
    Step(f64),
    Bypass,
}

impl Quantizer {
    pub fn from_header(q: f64) -> Option<Self> {
        if q == 0.0 {
            Some(Quantizer::Bypass)
        } else if q.is_finite() && q > 0.0 {
            Some(Quantizer::Step(q))
        } else {
            None
        }
    }

    pub fn header_value(self) -> f64 {
        match self {
            Quantizer::Step(q) => q,
            Quantizer::Bypass => 0.0,
        }
    }

    pub fn step(self) -> f64 {
        match self {
            Quantizer::Step(q) => q,
            Quantizer::Bypass => BYPASS_STEP,
        }
    }

    pub fn is_bypass(self) -> bool {
        self == Quantizer::Bypass
    }
}

impl std::str::FromStr for Quantizer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("bypass") {
            return Ok(Quantizer::Bypass);
        }
        let q: f64 = s.parse().map_err(|_| format!("invalid quantization step `{s}`"))?;
        if q.is_finite() && q > 0.0 {
            Ok(Quantizer::Step(q))
        } else {
            Err(format!("quantization step must be positive, got `{s}`"))
        }
    }
}

pub fn quantize(c: f64, step: f64) -> i64 {
    round_half_away(c / step)
}

pub fn dequantize(q: i64, step: f64) -> f64 {
    q as f64 * step
}
