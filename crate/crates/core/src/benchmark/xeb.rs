use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `pi^2/6 - 1`: variance of `-log p` for outputs sampled from a
/// Porter-Thomas distribution.
pub const PT_LOG_VARIANCE: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0 - 1.0;

/// `-(1/m) sum log p_j`.
pub fn cross_entropy(sample_probs: &[f64]) -> Result<f64> {
    if sample_probs.is_empty() {
        return Err(Error::Empty);
    }
    let mut sum = 0.0;
    for (index, &value) in sample_probs.iter().enumerate() {
        if value <= 0.0 || value.is_nan() {
            return Err(Error::NonPositiveProbability { index, value });
        }
        sum -= value.ln();
    }
    Ok(sum / sample_probs.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PtConstants {
    /// Cross-entropy of an uncorrelated distribution, `n log 2 + gamma`.
    pub h0: f64,
    /// Porter-Thomas entropy, `n log 2 - 1 + gamma`.
    pub h_pt: f64,
}

pub fn porter_thomas_constants(n: usize) -> PtConstants {
    let h0 = n as f64 * std::f64::consts::LN_2 + EULER_GAMMA;
    // a - 1 is exact for a >= 1, so h0 - h_pt == 1 exactly
    PtConstants { h0, h_pt: h0 - 1.0 }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityEstimate {
    pub alpha: f64,
    /// Sample cross-entropy `S`, nats.
    pub cross_entropy: f64,
    pub h0: f64,
    pub h_pu: f64,
    pub m: usize,
    /// Standard error of `alpha`.
    pub stderr: f64,
    pub cross_entropy_stderr: f64,
}

/// `alpha = (H0 - S) / (H0 - H(p_U))`, unclamped.
///
/// The error is the central-limit term of `S`, using the sample spread of
/// `-log p`; it falls back to the Porter-Thomas value `pi^2/6 - 1` when the
/// sample has no spread.
pub fn fidelity_estimate(sample_probs: &[f64], h0: f64, h_pu: f64) -> Result<FidelityEstimate> {
    let denom = h0 - h_pu;
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::Degenerate("H0 equals H(p_U)".into()));
    }
    let s = cross_entropy(sample_probs)?;
    let m = sample_probs.len();
    let var = if m > 1 {
        sample_probs.iter().map(|p| (-p.ln() - s).powi(2)).sum::<f64>() / (m - 1) as f64
    } else {
        0.0
    };
    let var = if var > 0.0 { var } else { PT_LOG_VARIANCE };
    let s_err = (var / m as f64).sqrt();
    Ok(FidelityEstimate {
        alpha: (h0 - s) / denom,
        cross_entropy: s,
        h0,
        h_pu,
        m,
        stderr: s_err / denom.abs(),
        cross_entropy_stderr: s_err,
    })
}

/// Predicted distribution of the sampled cross-entropy,
/// `H + a xi + b zeta + c xi zeta` with independent unit normals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XebErrorModel {
    pub mean: f64,
    /// `|a| = sqrt(2/t) H`; enters with a negative sign.
    pub xi_coeff: f64,
    /// `b = sqrt((pi^2/6 - 1)/m)`.
    pub zeta_coeff: f64,
    /// `c = n^2 / sqrt(2 t m (pi^2/6 - 1))`.
    pub cross_coeff: f64,
}

impl XebErrorModel {
    /// Standard deviation: the three terms are uncorrelated with unit variance.
    pub fn spread(&self) -> f64 {
        (self.xi_coeff.powi(2) + self.zeta_coeff.powi(2) + self.cross_coeff.powi(2)).sqrt()
    }

    /// Value for given draws of the two normals.
    pub fn realize(&self, xi: f64, zeta: f64) -> f64 {
        self.mean - self.xi_coeff * xi + self.zeta_coeff * zeta + self.cross_coeff * xi * zeta
    }
}

pub fn xeb_error_model(t: usize, m: usize, h: f64, n: usize) -> XebErrorModel {
    let (t, m) = (t as f64, m as f64);
    XebErrorModel {
        mean: h,
        xi_coeff: (2.0 / t).sqrt() * h.abs(),
        zeta_coeff: (PT_LOG_VARIANCE / m).sqrt(),
        cross_coeff: (n * n) as f64 / (2.0 * t * m * PT_LOG_VARIANCE).sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_distribution_cross_entropy() {
        let n = 7;
        let p = vec![2f64.powi(-n); 50];
        let s = cross_entropy(&p).unwrap();
        assert!((s - n as f64 * std::f64::consts::LN_2).abs() < 1e-12);
        assert_eq!(cross_entropy(&[1.0]).unwrap(), 0.0);
    }

    #[test]
    fn zero_probability_is_an_error() {
        assert!(matches!(
            cross_entropy(&[0.5, 0.0]),
            Err(Error::NonPositiveProbability { index: 1, .. })
        ));
        assert!(cross_entropy(&[]).is_err());
    }

    #[test]
    fn pt_constants() {
        let c = porter_thomas_constants(56);
        let offset = c.h_pt - 56.0 * std::f64::consts::LN_2;
        assert!((offset + 0.4228).abs() < 5e-5);
        for n in 1..80 {
            let c = porter_thomas_constants(n);
            assert_eq!(c.h0 - c.h_pt, 1.0);
        }
        let c1 = porter_thomas_constants(1);
        assert_eq!(c1.h0, std::f64::consts::LN_2 + EULER_GAMMA);
    }

    #[test]
    fn fidelity_is_affine_in_cross_entropy() {
        let h0 = 10.0;
        let f1 = fidelity_estimate(&[(-9.0f64).exp(), (-8.0f64).exp()], h0, 9.0).unwrap();
        // S = 8.5, alpha = 1.5
        assert!((f1.alpha - 1.5).abs() < 1e-12);
        let f2 = fidelity_estimate(&[(-9.5f64).exp(), (-9.0f64).exp()], h0, 9.0).unwrap();
        // H0 - S halves from 1.5 to 0.75
        assert!((f2.alpha - 0.75).abs() < 1e-12);
        assert!(f1.stderr > 0.0);
        assert!(fidelity_estimate(&[0.5], 1.0, 1.0).is_err());
    }

    #[test]
    fn error_model_limits_and_monotonicity() {
        let big = xeb_error_model(usize::MAX / 2, usize::MAX / 2, 11.0, 16);
        assert!(big.spread() < 1e-8);
        let a = xeb_error_model(100, 100, 11.0, 16);
        let b = xeb_error_model(400, 100, 11.0, 16);
        let c = xeb_error_model(100, 400, 11.0, 16);
        assert!(a.xi_coeff > 0.0 && a.zeta_coeff > 0.0 && a.cross_coeff > 0.0);
        assert!(b.xi_coeff < a.xi_coeff && b.cross_coeff < a.cross_coeff);
        assert!(c.zeta_coeff < a.zeta_coeff && c.cross_coeff < a.cross_coeff);
        assert_eq!(a.realize(0.0, 0.0), 11.0);
    }
}
