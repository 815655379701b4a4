//! Loss distributions: the parametric normal model and the empirical model
//! built from an ordered sample.
//!
//! Losses carry a positive sign throughout, so the upper tail is the bad tail.

mod empirical;
mod normal;
pub mod rng;

pub use empirical::EmpiricalLossModel;
pub use normal::{normal_cdf, normal_pdf, normal_quantile, NormalLossModel};

use crate::error::{Error, Result};
use rng::UniformStream;

/// Any loss distribution the risk measures can be evaluated against.
#[derive(Debug, Clone, PartialEq)]
pub enum LossModel {
    Normal(NormalLossModel),
    Empirical(EmpiricalLossModel),
}

impl LossModel {
    pub fn standard_normal() -> Self {
        LossModel::Normal(NormalLossModel::standard())
    }

    /// Loss quantile `q_p` for `p` in `(0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        match self {
            LossModel::Normal(m) => m.quantile(p),
            LossModel::Empirical(m) => m.quantile(p),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            LossModel::Normal(m) => m.cdf(x),
            LossModel::Empirical(m) => m.cdf(x),
        }
    }

    /// Density, where one exists.
    pub fn pdf(&self, x: f64) -> Option<f64> {
        match self {
            LossModel::Normal(m) => Some(m.pdf(x)),
            LossModel::Empirical(_) => None,
        }
    }

    /// `n` inverse-CDF draws from the stream seeded by `seed`.
    pub fn sample(&self, seed: u64, n: usize) -> Result<Vec<f64>> {
        match self {
            LossModel::Normal(m) => sample(m, seed, n),
            LossModel::Empirical(m) => {
                check_count(n)?;
                let mut stream = UniformStream::new(seed);
                (0..n).map(|_| m.quantile(stream.next_open01())).collect()
            }
        }
    }
}

impl From<NormalLossModel> for LossModel {
    fn from(m: NormalLossModel) -> Self {
        LossModel::Normal(m)
    }
}

impl From<EmpiricalLossModel> for LossModel {
    fn from(m: EmpiricalLossModel) -> Self {
        LossModel::Empirical(m)
    }
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Config("sample size must be at least 1".into()));
    }
    Ok(())
}

/// Draws `n` i.i.d. normal losses by pushing a ChaCha8 uniform stream through
/// the inverse CDF. The output depends only on `(model, seed, n)`.
pub fn sample(model: &NormalLossModel, seed: u64, n: usize) -> Result<Vec<f64>> {
    check_count(n)?;
    let mut out = Vec::with_capacity(n);
    sample_into(model, seed, n, &mut out);
    Ok(out)
}

/// Like [`sample`] but reuses `out`'s allocation.
pub(crate) fn sample_into(model: &NormalLossModel, seed: u64, n: usize, out: &mut Vec<f64>) {
    let mut stream = UniformStream::new(seed);
    let (mu, sigma) = (model.mu(), model.sigma());
    out.clear();
    out.extend((0..n).map(|_| mu + sigma * normal::quantile_unchecked(stream.next_open01())));
}
