pub mod heating;
pub mod snr;
pub mod synth;
pub mod trap;

/// 17-significant-digit float formatting shared by the CSV writers:
/// lossless for f64 round trips.
pub(crate) fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}
