use crate::error::{domain, Result};

// Lanczos coefficients for g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Euler's Gamma function for positive arguments.
///
/// Small integer arguments return the exact factorial; everything else goes
/// through the Lanczos approximation, shifted upward for `x < 1/2`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("gamma_fn requires finite x > 0, got {x}"));
    }
    Ok(gamma_positive(x))
}

pub(crate) fn gamma_positive(x: f64) -> f64 {
    if x.fract() == 0.0 && x <= 21.0 {
        return (1..x as u64).map(|k| k as f64).product();
    }
    if x < 0.5 {
        return lanczos(x + 1.0) / x;
    }
    lanczos(x)
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut sum = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let w = z + LANCZOS_G + 0.5;
    // Split the power so w^(z+1/2) e^-w does not overflow before x ~ 171.
    let half = w.powf(0.5 * (z + 0.5));
    (2.0 * std::f64::consts::PI).sqrt() * half * (-w).exp() * half * sum
}
