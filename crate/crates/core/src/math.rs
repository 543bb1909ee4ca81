//! Thin wrappers over `libm` so the rest of the crate reads like ordinary float code.

pub use core::f64::consts::{PI, TAU};

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Wraps an angle into `[0, 2π)`.
#[inline]
pub fn wrap_angle(theta: f64) -> f64 {
    let t = theta - TAU * floor(theta / TAU);
    if !(0.0..TAU).contains(&t) {
        0.0
    } else {
        t
    }
}

/// Geodesic distance between two angles on the unit circle, in `[0, π]`.
#[inline]
pub fn angle_dist(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    if d > PI {
        TAU - d
    } else {
        d
    }
}
