use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::qmc;
use crate::error::{Error, Result};

/// The four supported rules for integrating over cumulative probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadratureRule {
    Trapezoid,
    Simpson,
    /// Equal-weight average over the base-2 van der Corput sequence.
    Niederreiter,
    /// Equal-weight average over `frac(j (sqrt(2) - 1))`.
    Weyl,
}

impl QuadratureRule {
    pub const ALL: [QuadratureRule; 4] = [
        QuadratureRule::Trapezoid,
        QuadratureRule::Simpson,
        QuadratureRule::Niederreiter,
        QuadratureRule::Weyl,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            QuadratureRule::Trapezoid => "trapezoid",
            QuadratureRule::Simpson => "simpson",
            QuadratureRule::Niederreiter => "niederreiter",
            QuadratureRule::Weyl => "weyl",
        }
    }

    pub fn is_newton_cotes(&self) -> bool {
        matches!(self, QuadratureRule::Trapezoid | QuadratureRule::Simpson)
    }
}

impl fmt::Display for QuadratureRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QuadratureRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QuadratureRule::ALL
            .into_iter()
            .find(|r| r.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown quadrature rule `{s}`")))
    }
}

/// How a closed Newton-Cotes grid keeps its end nodes away from `p = 0` and
/// `p = 1`, where an unbounded quantile function is infinite.
///
/// Both policies keep the composite weights untouched; they only move nodes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndpointPolicy {
    /// Lay the `n` nodes uniformly over `[h, 1 - h]` with `h = 1 / (n - 1)`,
    /// i.e. drop one slice at each end and spread the grid over the rest.
    /// The lost tail mass gives a downward bias of order `h`.
    #[default]
    Truncate,
    /// Keep the uniform grid `j h` and move only the two end nodes to `h / 2`
    /// and `1 - h / 2`. Far less biased, of order `h^2` in the tail.
    HalfSpacingClip,
}

impl EndpointPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            EndpointPolicy::Truncate => "truncate",
            EndpointPolicy::HalfSpacingClip => "half-clip",
        }
    }
}

impl fmt::Display for EndpointPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EndpointPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "truncate" => Ok(EndpointPolicy::Truncate),
            "half-clip" => Ok(EndpointPolicy::HalfSpacingClip),
            other => Err(Error::Config(format!("unknown endpoint policy `{other}`"))),
        }
    }
}

/// Composite Newton-Cotes coefficient of node `j` on an `n`-point closed grid
/// with unit spacing: `{1/2, 1, ..., 1, 1/2}` for the trapezoid rule and
/// `{1, 4, 2, ..., 2, 4, 1} / 3` for Simpson. QMC rules get 1.
#[inline]
pub fn newton_cotes_weight(rule: QuadratureRule, j: usize, n: usize) -> f64 {
    let end = j == 0 || j + 1 == n;
    match rule {
        QuadratureRule::Trapezoid => {
            if end {
                0.5
            } else {
                1.0
            }
        }
        QuadratureRule::Simpson => {
            if end {
                1.0 / 3.0
            } else if j % 2 == 1 {
                4.0 / 3.0
            } else {
                2.0 / 3.0
            }
        }
        QuadratureRule::Niederreiter | QuadratureRule::Weyl => 1.0,
    }
}

/// Quadrature nodes and weights on the unit interval.
///
/// Nodes and weights are computed on demand from `(rule, n, policy)` so that
/// a 10^7-node grid costs nothing to hold. Weights always sum to one and
/// every node lies strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    rule: QuadratureRule,
    n: usize,
    policy: EndpointPolicy,
    step: f64,
}

/// Grid for `rule` with `n` nodes under the default endpoint policy.
pub fn build_grid(rule: QuadratureRule, n: usize) -> Result<Grid> {
    Grid::new(rule, n, EndpointPolicy::default())
}

/// Grid with an explicit endpoint policy.
pub fn build_grid_with(rule: QuadratureRule, n: usize, policy: EndpointPolicy) -> Result<Grid> {
    Grid::new(rule, n, policy)
}

impl Grid {
    pub fn new(rule: QuadratureRule, n: usize, policy: EndpointPolicy) -> Result<Self> {
        if rule.is_newton_cotes() {
            if n < 3 {
                return Err(Error::InvalidGrid(format!(
                    "{rule} needs at least 3 nodes, got {n}"
                )));
            }
            if rule == QuadratureRule::Simpson && n.is_multiple_of(2) {
                return Err(Error::InvalidGrid(format!(
                    "simpson needs an odd node count, got {n}"
                )));
            }
        } else if n == 0 {
            return Err(Error::InvalidGrid(format!("{rule} needs at least 1 node")));
        } else if n as u64 >= 1u64 << 53 {
            return Err(Error::InvalidGrid(format!(
                "{n} nodes exceeds the sequence range"
            )));
        }
        let step = if rule.is_newton_cotes() {
            1.0 / (n - 1) as f64
        } else {
            1.0 / n as f64
        };
        Ok(Self {
            rule,
            n,
            policy,
            step,
        })
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn policy(&self) -> EndpointPolicy {
        self.policy
    }

    /// Probability at node `j`, `0 <= j < n`.
    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        debug_assert!(j < self.n);
        match self.rule {
            QuadratureRule::Niederreiter => qmc::van_der_corput_unchecked(j as u64 + 1),
            QuadratureRule::Weyl => qmc::weyl_unchecked(j as u64 + 1),
            QuadratureRule::Trapezoid | QuadratureRule::Simpson => self.newton_cotes_node(j),
        }
    }

    #[inline]
    fn newton_cotes_node(&self, j: usize) -> f64 {
        let h = self.step;
        let last = self.n - 1;
        match self.policy {
            EndpointPolicy::HalfSpacingClip => {
                if j == 0 {
                    0.5 * h
                } else if j == last {
                    1.0 - 0.5 * h
                } else {
                    j as f64 / last as f64
                }
            }
            EndpointPolicy::Truncate => {
                // mirror the upper half so the grid is exactly symmetric
                let k = j.min(last - j);
                let x = h + k as f64 * h * (1.0 - 2.0 * h);
                if j == k {
                    x
                } else {
                    1.0 - x
                }
            }
        }
    }

    /// Weight of node `j`.
    #[inline]
    pub fn weight(&self, j: usize) -> f64 {
        newton_cotes_weight(self.rule, j, self.n) * self.step
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.weight(j)).collect()
    }

    /// `(node, weight)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.n).map(|j| (self.node(j), self.weight(j)))
    }
}
