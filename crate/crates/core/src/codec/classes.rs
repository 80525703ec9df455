//! Super-ray classes: class `i` drops the last `round(N_k (4 - i) / 4)`
//! transmitted coefficients.

pub const CLASS_COUNT: u8 = 4;

/// Number of trailing coefficients dropped by class `class` for a super-ray of
/// `n_k` coefficients, of which `transmitted` are sent.
pub fn cut_size(n_k: usize, transmitted: usize, class: u8) -> usize {
    let raw = (n_k as f64 * f64::from(CLASS_COUNT - class) / 4.0).round() as usize;
    raw.min(transmitted)
}

/// First class whose dropped tail has mean squared value below 1.
pub fn assign_class(transmitted: &[f64], n_k: usize) -> u8 {
    for class in 1..CLASS_COUNT {
        let cut = cut_size(n_k, transmitted.len(), class);
        let tail = &transmitted[transmitted.len() - cut..];
        let energy: f64 = tail.iter().map(|c| c * c).sum();
        if cut == 0 || energy / (cut as f64) < 1.0 {
            return class;
        }
    }
    CLASS_COUNT
}
