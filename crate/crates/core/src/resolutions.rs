//! Betti numbers of monomial quotients from the Taylor complex, the Hochster
//! formula as a second route, and depth of monomial modules `J1/J2`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{Field, VectorSpaceComplex};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::simplicial::{bits, coboundary, submasks};
use crate::with_field;

pub const MAX_TAYLOR_GENERATORS: usize = 14;

/// `β_p(R/J) = dim Tor_p(k, R/J)` for `p = 0..=n`, from the Taylor complex
/// split by lcm degree.
pub fn betti_numbers(j: &MonomialIdeal) -> Result<Vec<usize>> {
    if j.is_unit() {
        return Err(Error::ImproperIdeal("ideal"));
    }
    let n = j.nvars();
    let gens = j.gens();
    let r = gens.len();
    if r > MAX_TAYLOR_GENERATORS {
        return Err(Error::TooLarge(format!(
            "Taylor complex on {r} generators (max {MAX_TAYLOR_GENERATORS})"
        )));
    }
    let mut by_lcm: HashMap<Monomial, Vec<u32>> = HashMap::new();
    for s in 0u32..1 << r {
        let l = bits(s).fold(Monomial::one(n), |acc, k| acc.lcm(&gens[k]));
        by_lcm.entry(l).or_default().push(s);
    }
    let mut groups: Vec<Vec<u32>> = by_lcm.into_values().collect();
    groups.sort();
    let totals: Vec<Vec<usize>> = with_field!(j.ring().field(), |f| {
        groups
            .par_iter()
            .map(|subsets| subset_complex(&f, subsets, r).cohomology_dims())
            .collect()
    });
    let mut betti = vec![0; r.max(n) + 1];
    for h in totals {
        for (p, d) in h.into_iter().enumerate() {
            betti[p] += d;
        }
    }
    if let Some(p) = (n + 1..betti.len()).find(|&p| betti[p] != 0) {
        return Err(Error::Invariant(format!("β_{p} ≠ 0 beyond n = {n}")));
    }
    betti.truncate(n + 1);
    Ok(betti)
}

/// Cochain complex on the given subsets, term `t` spanned by those of size `t`.
fn subset_complex<F: Field>(field: &F, subsets: &[u32], top: usize) -> VectorSpaceComplex<F> {
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    for &s in subsets {
        by_size[s.count_ones() as usize].push(s);
    }
    for t in &mut by_size {
        t.sort_unstable();
    }
    let dims = by_size.iter().map(Vec::len).collect();
    let diffs = by_size
        .windows(2)
        .map(|w| coboundary(field, &w[0], &w[1]))
        .collect();
    VectorSpaceComplex::new_unchecked(field, dims, diffs).expect("coboundary shapes")
}

/// Taylor route when it fits, the Koszul route otherwise.
pub fn betti_numbers_any(j: &MonomialIdeal) -> Result<Vec<usize>> {
    if j.gens().len() <= MAX_TAYLOR_GENERATORS {
        betti_numbers(j)
    } else {
        tor_pair(&MonomialIdeal::unit(j.ring()), j)
    }
}

pub fn pd(j: &MonomialIdeal) -> Result<usize> {
    let b = betti_numbers_any(j)?;
    Ok(b.iter().rposition(|&x| x != 0).unwrap_or(0))
}

pub fn depth_ring(j: &MonomialIdeal) -> Result<usize> {
    Ok(j.nvars() - pd(j)?)
}

pub fn is_cm_ring(j: &MonomialIdeal) -> Result<bool> {
    Ok(depth_ring(j)? == j.dimension()?)
}

/// `dim H̃^{|σ|−p−2}(Δ|_σ)`, the multidegree-`σ` Betti number `β_{p,σ}(I)`.
pub fn hochster_betti(i: &MonomialIdeal, p: usize, sigma: u32) -> Result<usize> {
    let delta = i.to_complex()?;
    let deg = sigma.count_ones() as i32 - p as i32 - 2;
    Ok(delta
        .induced(sigma)
        .reduced_cohomology_dim(deg, i.ring().field()))
}

/// `β_p(R/I)` for `p = 0..=n` summed from the Hochster formula.
pub fn hochster_betti_numbers(i: &MonomialIdeal) -> Result<Vec<usize>> {
    let delta = i.to_complex()?;
    let n = i.nvars();
    let field = i.ring().field();
    let sigmas: Vec<u32> = submasks(i.ring().all_variables()).collect();
    let per_sigma: Vec<Vec<usize>> = with_field!(field, |f| {
        sigmas
            .par_iter()
            .map(|&s| delta.induced(s).reduced_cohomology_dims(&f))
            .collect()
    });
    let mut betti = vec![0; n + 1];
    betti[0] = 1;
    for (&s, h) in sigmas.iter().zip(per_sigma) {
        let size = s.count_ones() as usize;
        // H̃^j sits at index j + 1 and contributes to β_{|σ| − j − 1}(R/I)
        for (idx, d) in h.into_iter().enumerate() {
            if d > 0 && idx < size {
                betti[size - idx] += d;
            }
        }
    }
    Ok(betti)
}

/// `dim Tor_p(k, J1/J2)` for `p = 0..=n`, from the Koszul complex on the
/// variables. The module has a basis of the monomials in `J1 ∖ J2`, so in
/// degree `a` the complex is spanned by the `σ` with `x^{a−σ} ∈ J1 ∖ J2`.
pub fn tor_pair(j1: &MonomialIdeal, j2: &MonomialIdeal) -> Result<Vec<usize>> {
    if j1.ring() != j2.ring() {
        return Err(Error::ContextMismatch);
    }
    if !j1.contains_ideal(j2) {
        return Err(Error::NotContained(j2.to_string(), j1.to_string()));
    }
    if j2.contains_ideal(j1) {
        return Err(Error::ZeroModule);
    }
    let n = j1.nvars();
    let bound = j1
        .gens()
        .iter()
        .chain(j2.gens())
        .fold(Monomial::one(n), |acc, g| acc.lcm(g));
    let degrees: Vec<Vec<u32>> =
        bound
            .exps()
            .iter()
            .fold(vec![vec![]], |acc: Vec<Vec<u32>>, &e| {
                acc.into_iter()
                    .flat_map(|v| {
                        (0..=e + 1).map(move |k| {
                            let mut w = v.clone();
                            w.push(k);
                            w
                        })
                    })
                    .collect()
            });
    let in_module = |m: &Monomial| j1.contains(m) && !j2.contains(m);
    let all = (1u32 << n) - 1;
    let per_degree: Vec<Vec<usize>> = with_field!(j1.ring().field(), |f| {
        degrees
            .par_iter()
            .map(|a| {
                let spots: Vec<u32> = submasks(all)
                    .filter(|&s| {
                        let shifted: Option<Vec<u32>> = a
                            .iter()
                            .enumerate()
                            .map(|(i, &e)| e.checked_sub(s >> i & 1))
                            .collect();
                        shifted.is_some_and(|v| in_module(&Monomial(v)))
                    })
                    .collect();
                subset_complex(&f, &spots, n).cohomology_dims()
            })
            .collect()
    });
    let mut tor = vec![0; n + 1];
    for h in per_degree {
        for (p, d) in h.into_iter().enumerate() {
            tor[p] += d;
        }
    }
    Ok(tor)
}

/// Depth of `J1/J2` via Auslander–Buchsbaum.
pub fn depth_pair(j1: &MonomialIdeal, j2: &MonomialIdeal) -> Result<usize> {
    let tor = tor_pair(j1, j2)?;
    let pd = tor
        .iter()
        .rposition(|&d| d != 0)
        .ok_or_else(|| Error::Invariant(format!("{j1}/{j2} has no Tor")))?;
    Ok(j1.nvars() - pd)
}
