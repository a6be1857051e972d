use crate::error::{Error, Result};

pub const HERMITE_CAP: usize = 200;
pub const STATE_CAP: u32 = 60;

/// Physicists' Hermite polynomial `Hₙ(u)` by the three-term recurrence.
pub fn hermite_eval(n: usize, u: f64) -> Result<f64> {
    if n > HERMITE_CAP {
        return Err(Error::Capacity { what: "Hermite degree", limit: HERMITE_CAP });
    }
    let (mut prev, mut cur) = (1.0, 2.0 * u);
    if n == 0 {
        return Ok(prev);
    }
    for k in 1..n {
        let next = 2.0 * u * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Normalized Hermite function `(2ⁿ n! √π)^{-1/2} Hₙ(u) e^{−u²/2}`.
///
/// Uses the orthonormal recurrence, which neither overflows nor needs factorials.
pub fn hermite_function(n: u32, u: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25) * (-0.5 * u * u).exp();
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * u * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}
