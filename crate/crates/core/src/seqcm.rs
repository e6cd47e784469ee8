//! Dimension filtrations of `R/J` and (partially) sequentially
//! Cohen–Macaulay tests.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::resolutions::depth_pair;

/// `M_k = U_k / J`, where `U_k` is the intersection of the primary
/// components of `J` of dimension `> k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionFiltration {
    pub base: MonomialIdeal,
    /// `levels[k + 1] = U_k` for `k = −1..=d`.
    pub levels: Vec<MonomialIdeal>,
}

impl DimensionFiltration {
    pub fn dim(&self) -> usize {
        self.levels.len() - 2
    }

    /// `U_k` for `k ≥ −1`; the unit ideal above `d`.
    pub fn level(&self, k: i32) -> &MonomialIdeal {
        let idx = ((k + 1).max(0) as usize).min(self.levels.len() - 1);
        &self.levels[idx]
    }

    /// `dim R/(U_{k−1} : U_k)`, or `None` when `M_k = M_{k−1}`.
    pub fn quotient_dimension(&self, k: i32) -> Result<Option<usize>> {
        let (lower, upper) = (self.level(k - 1), self.level(k));
        if lower == upper {
            return Ok(None);
        }
        Ok(Some(lower.colon(upper)?.dimension()?))
    }
}

pub fn dimension_filtration(j: &MonomialIdeal) -> Result<DimensionFiltration> {
    if j.is_unit() {
        return Err(Error::ImproperIdeal("ideal"));
    }
    let ring = j.ring();
    let d = j.dimension()?;
    let comps: Vec<(usize, MonomialIdeal)> = if j.is_zero() {
        vec![(d, j.clone())]
    } else {
        j.primary_decomposition()?
            .into_iter()
            .map(|c| (c.dimension, c.ideal))
            .collect()
    };
    let levels = (-1..=d as i32)
        .map(|k| {
            MonomialIdeal::intersect_all(
                ring,
                comps
                    .iter()
                    .filter(|(dim, _)| *dim as i32 > k)
                    .map(|(_, q)| q),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DimensionFiltration {
        base: j.clone(),
        levels,
    })
}

/// Every nonzero `M_k/M_{k−1}` with `i ≤ k ≤ d` is Cohen–Macaulay of dimension `k`.
pub fn is_partially_scm(j: &MonomialIdeal, i: usize) -> Result<bool> {
    let f = dimension_filtration(j)?;
    let d = f.dim();
    if i > d {
        return Err(Error::OutOfRange {
            what: "level",
            detail: format!("{i} exceeds dim = {d}"),
        });
    }
    let verdicts = (i..=d)
        .into_par_iter()
        .map(|k| {
            let k = k as i32;
            match f.quotient_dimension(k)? {
                None => Ok(true),
                Some(dim) => {
                    Ok(dim == k as usize && depth_pair(f.level(k), f.level(k - 1))? == k as usize)
                }
            }
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(verdicts.into_iter().all(|v| v))
}

pub fn is_sequentially_cm(j: &MonomialIdeal) -> Result<bool> {
    is_partially_scm(j, 0)
}

/// Duval's criterion: every pure skeleton of the complex is Cohen–Macaulay.
pub fn duval_cross_check(i: &MonomialIdeal) -> Result<bool> {
    let delta = i.to_complex()?;
    let dim = delta.dim().ok_or(Error::ImproperIdeal("ideal"))?;
    let field = i.ring().field();
    Ok((0..=dim).all(|k| {
        delta
            .pure_skeleton(k)
            .map(|s| s.is_cm(field))
            .unwrap_or(false)
    }))
}
