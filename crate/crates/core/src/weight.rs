//! Weight functionals on hyperedge sizes.
//!
//! A weight function maps a hyperedge size `m >= 1` to a non-negative
//! integer. The weighted sum over a hypergraph, together with its split
//! into small and large hyperedges at a threshold, is the quantity the
//! analysis here tracks. Weights stay in checked 64-bit arithmetic; all
//! the functionals of interest are integer-valued at this scale.

use crate::expr::{Expr, ExprError};
use crate::hypergraph::Hypergraph;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WeightError {
    #[error("weight undefined at size {0}")]
    UndefinedAt(usize),
    #[error("weight negative at size {0}")]
    NegativeAt(usize),
    #[error("weight arithmetic overflow")]
    Overflow,
    #[error("bad weight spec {0:?}")]
    BadSpec(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// w(m) for positive integer sizes m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightFunction {
    /// w(m) = m
    Size,
    /// w(m) = m^2
    SizeSquared,
    /// w(m) = max(m - c, 0); the clamp keeps the codomain non-negative
    SizeMinusC(u64),
    /// explicit table; sizes absent from the table are undefined
    Table(BTreeMap<usize, u64>),
    /// arbitrary integer expression in the variable `m`
    Custom(Expr),
}

impl WeightFunction {
    pub fn custom(text: &str) -> Result<Self, WeightError> {
        Ok(WeightFunction::Custom(Expr::parse(text, "m")?))
    }

    /// Parses a weight spec string: `size`, `size^2`, `size-<c>`,
    /// `table:<m>=<w>,...`, or a bare expression in `m`.
    pub fn parse(spec: &str) -> Result<Self, WeightError> {
        let s = spec.trim();
        match s {
            "size" => return Ok(WeightFunction::Size),
            "size^2" | "size2" | "size_squared" => return Ok(WeightFunction::SizeSquared),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("size-") {
            let c: u64 = rest
                .parse()
                .map_err(|_| WeightError::BadSpec(spec.to_string()))?;
            return Ok(WeightFunction::SizeMinusC(c));
        }
        if let Some(rest) = s.strip_prefix("table:") {
            let mut table = BTreeMap::new();
            for entry in rest.split(',') {
                let (m, w) = entry
                    .split_once('=')
                    .ok_or_else(|| WeightError::BadSpec(spec.to_string()))?;
                let m: usize = m
                    .trim()
                    .parse()
                    .map_err(|_| WeightError::BadSpec(spec.to_string()))?;
                let w: u64 = w
                    .trim()
                    .parse()
                    .map_err(|_| WeightError::BadSpec(spec.to_string()))?;
                table.insert(m, w);
            }
            return Ok(WeightFunction::Table(table));
        }
        Self::custom(s)
    }

    /// Evaluates w at size `m`.
    pub fn eval(&self, m: usize) -> Result<u64, WeightError> {
        match self {
            WeightFunction::Size => Ok(m as u64),
            WeightFunction::SizeSquared => (m as u64)
                .checked_mul(m as u64)
                .ok_or(WeightError::Overflow),
            WeightFunction::SizeMinusC(c) => Ok((m as u64).saturating_sub(*c)),
            WeightFunction::Table(t) => t.get(&m).copied().ok_or(WeightError::UndefinedAt(m)),
            WeightFunction::Custom(e) => {
                let v = e.eval(m as i128)?;
                if v < 0 {
                    return Err(WeightError::NegativeAt(m));
                }
                u64::try_from(v).map_err(|_| WeightError::Overflow)
            }
        }
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightFunction::Size => write!(f, "size"),
            WeightFunction::SizeSquared => write!(f, "size^2"),
            WeightFunction::SizeMinusC(c) => write!(f, "size-{}", c),
            WeightFunction::Table(t) => {
                write!(f, "table:")?;
                for (i, (m, w)) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}={}", m, w)?;
                }
                Ok(())
            }
            WeightFunction::Custom(e) => write!(f, "{}", e),
        }
    }
}

/// Weighted sum of a hypergraph, split at a size threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightReport {
    pub total: u64,
    /// contribution of hyperedges with |h| <= threshold
    pub below_threshold: u64,
    /// contribution of hyperedges with |h| > threshold
    pub above_threshold: u64,
    pub threshold: usize,
}

/// Sums w(|h|) over all hyperedges, partitioning by |h| <= threshold.
pub fn weigh(
    h: &Hypergraph,
    w: &WeightFunction,
    threshold: usize,
) -> Result<WeightReport, WeightError> {
    let mut below: u64 = 0;
    let mut above: u64 = 0;
    for size in h.edge_sizes() {
        let value = w.eval(size)?;
        let bucket = if size <= threshold {
            &mut below
        } else {
            &mut above
        };
        *bucket = bucket.checked_add(value).ok_or(WeightError::Overflow)?;
    }
    let total = below.checked_add(above).ok_or(WeightError::Overflow)?;
    Ok(WeightReport {
        total,
        below_threshold: below,
        above_threshold: above,
        threshold,
    })
}

/// Smallest integer `t` with `t * t >= n`.
pub fn ceil_sqrt(n: usize) -> usize {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}
