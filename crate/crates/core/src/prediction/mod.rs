mod nonseparable;
mod separable;

pub use nonseparable::{predict_low_frequencies, reconstruct_complement};
pub use separable::{
    angular_basis, angular_components, angular_transform_band, predict_dc_band, reconstruct_band, reference_weight,
    spatial_transform_view, BandGroup, BandVector, SeparableLayout, SeparableTransform, ViewSlice,
};
