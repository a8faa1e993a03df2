//! Grid sweeps of the certifier over λ-space.

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asphericity::{certify_with_window, Certificate, Verdict};
use crate::error::{Error, ParseError, Result};
use crate::params::LambdaParam;
use crate::rational::Rational;
use crate::roots::{subsystem_period, SubsystemKind};

pub const DEFAULT_CAP: u128 = 1_000_000;

/// Arithmetic progression `start, start + step, …` with `count ≥ 1` terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridAxis {
    pub start: Rational,
    pub step: Rational,
    pub count: usize,
}

impl GridAxis {
    pub fn value(&self, i: usize) -> Rational {
        &self.start + &self.step * Rational::from(i as i64)
    }
}

impl FromStr for GridAxis {
    type Err = ParseError;

    /// `start:step:count`, or a bare value for a single point.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(GridAxis { start: v.parse()?, step: Rational::zero(), count: 1 }),
            [start, step, count] => {
                let count: usize = count.trim().parse().map_err(|_| ParseError::GridAxis(s.to_string()))?;
                if count == 0 {
                    return Err(ParseError::GridAxis(s.to_string()));
                }
                Ok(GridAxis { start: start.parse()?, step: step.parse()?, count })
            }
            _ => Err(ParseError::GridAxis(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub ell: usize,
    pub n: usize,
    /// One axis per λ-coordinate.
    pub axes: Vec<GridAxis>,
    pub cap: u128,
    /// δ-level window override; `None` means `2d′` per point.
    pub window: Option<u64>,
}

impl SweepSpec {
    pub fn new(ell: usize, n: usize, axes: Vec<GridAxis>) -> Self {
        SweepSpec { ell, n, axes, cap: DEFAULT_CAP, window: None }
    }

    pub fn size(&self) -> u128 {
        self.axes.iter().map(|a| a.count as u128).product()
    }

    /// Grid point with row-major index `idx` (last axis varies fastest).
    pub fn point(&self, mut idx: usize) -> Result<LambdaParam> {
        let mut values = vec![Rational::zero(); self.axes.len()];
        for (slot, axis) in values.iter_mut().zip(&self.axes).rev() {
            *slot = axis.value(idx % axis.count);
            idx /= axis.count;
        }
        LambdaParam::new(values)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub total: usize,
    pub certified: usize,
    pub not_certified: usize,
    pub empty: usize,
    pub finite: usize,
    pub affine: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub ell: usize,
    pub n: usize,
    pub records: Vec<Certificate>,
    pub summary: SweepSummary,
}

/// Certifies every grid point. Points run in parallel; records come back in
/// row-major order.
pub fn sweep(spec: &SweepSpec) -> Result<SweepReport> {
    if spec.axes.len() != spec.ell {
        return Err(Error::LengthMismatch { expected: spec.ell, found: spec.axes.len() });
    }
    let size = spec.size();
    if size > spec.cap {
        return Err(Error::CapExceeded { size, cap: spec.cap });
    }
    let records = (0..size as usize)
        .into_par_iter()
        .map(|i| {
            let lambda = spec.point(i)?;
            let window = match spec.window {
                Some(w) => w,
                None => subsystem_period(&lambda)?.checked_mul(2).ok_or(Error::Overflow)?,
            };
            certify_with_window(&lambda, spec.n, window)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut summary = SweepSummary { total: records.len(), ..Default::default() };
    for r in &records {
        match r.verdict {
            Verdict::Certified => summary.certified += 1,
            Verdict::NotCertified => summary.not_certified += 1,
        }
        match r.subsystem.kind {
            SubsystemKind::Empty => summary.empty += 1,
            SubsystemKind::Finite => summary.finite += 1,
            SubsystemKind::Affine => summary.affine += 1,
        }
    }
    Ok(SweepReport { ell: spec.ell, n: spec.n, records, summary })
}
