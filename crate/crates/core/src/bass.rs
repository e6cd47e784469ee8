//! Bass numbers `μ_p(m, N) = dim Ext^p(k, N)` of a windowed module over the
//! polynomial ring, from the Koszul resolution of `k`.
//!
//! In degree `α` the complex has term `p = ⊕_{|σ|=p} N_{α+σ}`. If some
//! coordinate has `clamp(α_j) = clamp(α_j + 1)` the complex is the cone of an
//! isomorphism, so only `α ∈ {−1, 0}^n` can contribute; the scan skips the
//! rest unless `exhaustive` is set.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cech::WindowedModule;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Field, VectorSpaceComplex};
use crate::simplicial::insertion_sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanBox {
    pub lo: i32,
    pub hi: i32,
}

impl Default for ScanBox {
    fn default() -> Self {
        ScanBox { lo: -2, hi: 1 }
    }
}

impl ScanBox {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo > hi {
            return Err(Error::OutOfRange {
                what: "scan box",
                detail: format!("{lo} > {hi}"),
            });
        }
        Ok(ScanBox { lo, hi })
    }

    fn on_boundary(&self, alpha: &[i32]) -> bool {
        alpha.iter().any(|&a| a == self.lo || a == self.hi)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BassOptions {
    pub scan_box: ScanBox,
    /// Compute every degree of the box, including the provably acyclic ones.
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub degree: Vec<i32>,
    pub p: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BassProfile {
    /// `μ_0, …, μ_n`.
    pub mu: Vec<usize>,
    pub contributions: Vec<Contribution>,
}

fn acyclic_by_stability(alpha: &[i32]) -> bool {
    alpha.iter().any(|&a| a <= -2 || a >= 1)
}

/// The Koszul cochain complex `Hom(K(x; R), N)` in degree `α`.
pub fn koszul_complex_at<F: Field>(m: &WindowedModule<F>, alpha: &[i32]) -> VectorSpaceComplex<F> {
    let n = m.nvars();
    let field = m.field();
    let shifted = |sigma: u32| -> Vec<i32> {
        alpha
            .iter()
            .enumerate()
            .map(|(j, &a)| a + (sigma >> j & 1) as i32)
            .collect()
    };
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for sigma in 0u32..1 << n {
        by_size[sigma.count_ones() as usize].push(sigma);
    }
    let dims_of =
        |terms: &[u32]| -> Vec<usize> { terms.iter().map(|&s| m.piece_dim(&shifted(s))).collect() };
    let block_dims: Vec<Vec<usize>> = by_size.iter().map(|t| dims_of(t)).collect();
    let term_dims: Vec<usize> = block_dims.iter().map(|b| b.iter().sum()).collect();
    let offsets: Vec<Vec<usize>> = block_dims
        .iter()
        .map(|b| {
            b.iter()
                .scan(0, |acc, &d| {
                    let o = *acc;
                    *acc += d;
                    Some(o)
                })
                .collect()
        })
        .collect();
    let diffs = (0..n)
        .map(|p| {
            let mut d = DenseMatrix::zeros(field, term_dims[p + 1], term_dims[p]);
            for (a, &sigma) in by_size[p].iter().enumerate() {
                if block_dims[p][a] == 0 {
                    continue;
                }
                let from = shifted(sigma);
                for i in (0..n).filter(|&i| sigma >> i & 1 == 0) {
                    let tau = sigma | 1 << i;
                    let b = by_size[p + 1]
                        .binary_search(&tau)
                        .expect("subsets are listed");
                    if block_dims[p + 1][b] == 0 {
                        continue;
                    }
                    let step = m.step_map(&from, i);
                    let sign = field.from_i64(insertion_sign(sigma, i));
                    for r in 0..step.rows() {
                        for c in 0..step.cols() {
                            let v = field.mul(&sign, step.get(r, c));
                            d.set(offsets[p + 1][b] + r, offsets[p][a] + c, v);
                        }
                    }
                }
            }
            d
        })
        .collect();
    VectorSpaceComplex::new_unchecked(field, term_dims, diffs).expect("block shapes")
}

pub fn bass_numbers<F: Field>(m: &WindowedModule<F>, opts: &BassOptions) -> Result<BassProfile> {
    if !m.ambient().is_polynomial() {
        return Err(Error::UnsupportedAmbient(format!(
            "Bass numbers need the polynomial ring, got relations {}",
            m.ambient().relations()
        )));
    }
    let n = m.nvars();
    let ScanBox { lo, hi } = opts.scan_box;
    let width = (hi - lo + 1) as usize;
    let degrees: Vec<Vec<i32>> = (0..width.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let a = lo + (k % width) as i32;
                    k /= width;
                    a
                })
                .collect()
        })
        .filter(|alpha: &Vec<i32>| opts.exhaustive || !acyclic_by_stability(alpha))
        .collect();
    let per_degree: Vec<(Vec<i32>, Vec<usize>)> = degrees
        .into_par_iter()
        .map(|alpha| {
            let h = koszul_complex_at(m, &alpha).cohomology_dims();
            (alpha, h)
        })
        .collect();
    let mut mu = vec![0; n + 1];
    let mut contributions = Vec::new();
    for (alpha, h) in per_degree {
        for (p, &dim) in h.iter().enumerate() {
            if dim == 0 {
                continue;
            }
            if opts.scan_box.on_boundary(&alpha) {
                return Err(Error::ScanBoxTooSmall(alpha));
            }
            mu[p] += dim;
            contributions.push(Contribution {
                degree: alpha.clone(),
                p,
                dim,
            });
        }
    }
    Ok(BassProfile { mu, contributions })
}
