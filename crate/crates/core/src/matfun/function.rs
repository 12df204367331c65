use crate::error::{Error, Result};
use crate::Scalar;

/// Scalar functions `f` whose matrix counterparts `f(H)` the crate evaluates.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarFunction<T> {
    /// `e^{-h t}`
    ExpScaled { h: T },
    /// `cos(h t)`
    CosScaled { h: T },
    /// `t^degree`
    Monomial { degree: u32 },
    /// `c₀ + c₁ t + c₂ t² + …` (ascending coefficients)
    Polynomial { coeffs: Vec<T> },
}

impl<T: Scalar> ScalarFunction<T> {
    pub fn exp_scaled(h: T) -> Self {
        Self::ExpScaled { h }
    }

    pub fn cos_scaled(h: T) -> Self {
        Self::CosScaled { h }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::ExpScaled { h } | Self::CosScaled { h } => {
                if !(h.is_finite() && *h > T::zero()) {
                    return Err(Error::invalid(format!("scale h must be positive and finite, got {h}")));
                }
            }
            Self::Monomial { .. } => {}
            Self::Polynomial { coeffs } => {
                if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(Error::invalid("polynomial needs at least one finite coefficient"));
                }
            }
        }
        Ok(())
    }

    /// Scale parameter of the exponential/cosine kinds.
    pub fn scale(&self) -> Option<T> {
        match self {
            Self::ExpScaled { h } | Self::CosScaled { h } => Some(*h),
            _ => None,
        }
    }

    pub fn eval(&self, t: T) -> T {
        match self {
            Self::ExpScaled { h } => (-*h * t).exp(),
            Self::CosScaled { h } => (*h * t).cos(),
            Self::Monomial { degree } => t.powi(*degree as i32),
            Self::Polynomial { coeffs } => coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * t + c),
        }
    }

    /// `f⁽ʲ⁾(t0) / j!`, the `j`-th Taylor coefficient at `t0`. With a
    /// confluent point sequence this is the scalar value `φ_j(t0)`.
    pub fn taylor_coefficient(&self, j: usize, t0: T) -> T {
        match self {
            Self::ExpScaled { h } => {
                let mut c = (-*h * t0).exp();
                for k in 1..=j {
                    c = c * (-*h) / T::lit(k as f64);
                }
                c
            }
            Self::CosScaled { h } => {
                let mut c = T::one();
                for k in 1..=j {
                    c = c * *h / T::lit(k as f64);
                }
                // d^j/dt^j cos(ht) = h^j cos(ht + jπ/2)
                let phase = *h * t0;
                let trig = match j % 4 {
                    0 => phase.cos(),
                    1 => -phase.sin(),
                    2 => -phase.cos(),
                    _ => phase.sin(),
                };
                c * trig
            }
            Self::Monomial { degree } => {
                let d = *degree as usize;
                if j > d {
                    T::zero()
                } else {
                    T::lit(binomial(d, j)) * t0.powi((d - j) as i32)
                }
            }
            Self::Polynomial { coeffs } => coeffs
                .iter()
                .enumerate()
                .skip(j)
                .map(|(k, &c)| c * T::lit(binomial(k, j)) * t0.powi((k - j) as i32))
                .fold(T::zero(), |a, b| a + b),
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
