//! Lyubeznik tables `λ_{p,j} = μ_p(H^{n−j}_I(R))` of squarefree monomial
//! ideals, and their shape predicates.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bass::{bass_numbers, BassOptions};
use crate::cech::{windowed_module, AmbientQuotient};
use crate::error::{Error, Result};
use crate::linalg::ScalarField;
use crate::monomial::MonomialIdeal;
use crate::with_field;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LyubeznikTable {
    pub d: usize,
    /// Row-major, `entries[p][j]`.
    pub entries: Vec<Vec<usize>>,
}

impl LyubeznikTable {
    pub fn new(entries: Vec<Vec<usize>>) -> Result<Self> {
        let d = entries
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::OutOfRange {
                what: "table",
                detail: "no rows".into(),
            })?;
        if entries.iter().any(|r| r.len() != d + 1) {
            return Err(Error::OutOfRange {
                what: "table",
                detail: "rows must have d + 1 entries".into(),
            });
        }
        Ok(LyubeznikTable { d, entries })
    }

    pub fn get(&self, p: usize, j: usize) -> usize {
        self.entries[p][j]
    }

    /// `Σ_{p ≤ j} (−1)^{p−j} λ_{p,j}`.
    pub fn euler_characteristic(&self) -> i64 {
        let mut s = 0i64;
        for p in 0..=self.d {
            for j in p..=self.d {
                let v = self.entries[p][j] as i64;
                s += if (j - p) % 2 == 0 { v } else { -v };
            }
        }
        s
    }

    pub fn is_trivial(&self) -> bool {
        (0..=self.d).all(|p| {
            (0..=self.d).all(|j| self.entries[p][j] == usize::from(p == self.d && j == self.d))
        })
    }

    /// `λ_{p,j} = 0` whenever `p ≠ j` and `i ≤ j ≤ d`.
    pub fn shape_matches_iscm(&self, i: usize) -> Result<bool> {
        if i > self.d {
            return Err(Error::OutOfRange {
                what: "level",
                detail: format!("{i} exceeds d = {}", self.d),
            });
        }
        Ok((i..=self.d).all(|j| (0..=self.d).all(|p| p == j || self.entries[p][j] == 0)))
    }

    /// `((0, a, 0), (0, 0, 0), (0, 0, a + 1))` for some `a`.
    pub fn pure_dim2_shape(&self) -> Result<bool> {
        if self.d != 2 {
            return Err(Error::OutOfRange {
                what: "table",
                detail: format!("pure_dim2_shape needs d = 2, got {}", self.d),
            });
        }
        let a = self.entries[0][1];
        let want = [[0, a, 0], [0, 0, 0], [0, 0, a + 1]];
        Ok((0..3).all(|p| (0..3).all(|j| self.entries[p][j] == want[p][j])))
    }

    fn check(&self) -> Result<()> {
        for p in 0..=self.d {
            for j in 0..p {
                if self.entries[p][j] != 0 {
                    return Err(Error::Invariant(format!(
                        "λ_{{{p},{j}}} = {} below the diagonal",
                        self.entries[p][j]
                    )));
                }
            }
        }
        if self.entries[self.d][self.d] == 0 {
            return Err(Error::Invariant("λ_{d,d} = 0".into()));
        }
        let e = self.euler_characteristic();
        if e != 1 {
            return Err(Error::Invariant(format!("Euler sum {e} ≠ 1")));
        }
        Ok(())
    }

    /// Upper triangle as aligned text, one row per `p`.
    pub fn render_text(&self) -> String {
        let w = self
            .entries
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(3);
        let mut out = format!("{:>5}", "");
        for j in 0..=self.d {
            out.push_str(&format!(" {:>w$}", format!("j={j}")));
        }
        out.push('\n');
        for p in 0..=self.d {
            out.push_str(&format!("{:>5}", format!("p={p}")));
            for j in 0..=self.d {
                if j < p {
                    out.push_str(&format!(" {:>w$}", ""));
                } else {
                    out.push_str(&format!(" {:>w$}", self.entries[p][j]));
                }
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for LyubeznikTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "({})", rows.join(";"))
    }
}

pub fn lyubeznik_table(ideal: &MonomialIdeal, field: ScalarField) -> Result<LyubeznikTable> {
    lyubeznik_table_with(ideal, field, &BassOptions::default())
}

pub fn lyubeznik_table_with(
    ideal: &MonomialIdeal,
    field: ScalarField,
    opts: &BassOptions,
) -> Result<LyubeznikTable> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree("ideal"));
    }
    if ideal.is_unit() {
        return Err(Error::ImproperIdeal("ideal"));
    }
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal("ideal"));
    }
    let n = ideal.nvars();
    let d = ideal.dimension()?;
    let ring = ideal.ring().with_field(field);
    let ideal = ideal.change_ring(&ring)?;
    let a = AmbientQuotient::polynomial(&ring);
    let columns: Vec<Vec<usize>> = with_field!(field, |f| {
        (0..=d)
            .into_par_iter()
            .map(|j| {
                let m = windowed_module(&f, &a, &ideal, n - j)?;
                Ok(bass_numbers(&m, opts)?.mu)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    for (j, mu) in columns.iter().enumerate() {
        if let Some(p) = (d + 1..mu.len()).find(|&p| mu[p] != 0) {
            return Err(Error::Invariant(format!(
                "μ_{p}(H^{}) ≠ 0 beyond d = {d}",
                n - j
            )));
        }
    }
    let entries = (0..=d)
        .map(|p| (0..=d).map(|j| columns[j][p]).collect())
        .collect();
    let t = LyubeznikTable { d, entries };
    t.check()?;
    Ok(t)
}
