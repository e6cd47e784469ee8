//! Seeded random instances for the theorem sweeps.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cech::AmbientQuotient;
use crate::error::{Error, Result};
use crate::linalg::ScalarField;
use crate::monomial::{sigma_set, Monomial, MonomialIdeal, PolyRing};
use crate::resolutions::{is_cm_ring, pd};
use crate::simplicial::{SimplicialComplex, VertexSet};

pub const DEFAULT_MAX_VARIABLES: usize = 8;
const MAX_GENERATORS: usize = 8;
const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    Squarefree,
    PureGraph,
    Dim1,
    GeneralMonomial,
    /// Squarefree ideal in a squarefree quotient ring.
    Quotient,
    /// Cohen–Macaulay squarefree ideal with the last variable a parameter.
    CmWithParameter,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 6] = [
        InstanceKind::Squarefree,
        InstanceKind::PureGraph,
        InstanceKind::Dim1,
        InstanceKind::GeneralMonomial,
        InstanceKind::Quotient,
        InstanceKind::CmWithParameter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::Squarefree => "squarefree",
            InstanceKind::PureGraph => "pure-graph",
            InstanceKind::Dim1 => "dim1",
            InstanceKind::GeneralMonomial => "general-monomial",
            InstanceKind::Quotient => "quotient",
            InstanceKind::CmWithParameter => "cm-with-parameter",
        }
    }

    pub fn min_variables(self) -> usize {
        match self {
            InstanceKind::PureGraph | InstanceKind::Quotient => 3,
            InstanceKind::CmWithParameter | InstanceKind::Dim1 => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InstanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InstanceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown instance kind {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub kind: InstanceKind,
    pub seed: u64,
    pub ambient: AmbientQuotient,
    pub ideal: MonomialIdeal,
}

impl Instance {
    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn field(&self) -> ScalarField {
        self.ambient.ring().field()
    }
}

fn random_support(rng: &mut ChaCha8Rng, n: usize, min: usize, max: usize) -> VertexSet {
    let size = rng.gen_range(min..=max.min(n));
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(rng);
    vs[..size].iter().fold(0, |m, &v| m | 1 << v)
}

fn squarefree_ideal(
    rng: &mut ChaCha8Rng,
    ring: &Arc<PolyRing>,
    n: usize,
    min_size: usize,
) -> Result<MonomialIdeal> {
    let count = rng.gen_range(1..=MAX_GENERATORS.min(n + 2));
    let gens = (0..count)
        .map(|_| Monomial::from_support(ring.nvars(), random_support(rng, n, min_size, n)))
        .collect();
    MonomialIdeal::new(ring, gens)
}

fn generate(
    kind: InstanceKind,
    ring: &Arc<PolyRing>,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(MonomialIdeal, MonomialIdeal)>> {
    let n = ring.nvars();
    let zero = MonomialIdeal::zero(ring);
    let ideal = match kind {
        InstanceKind::Squarefree => squarefree_ideal(rng, ring, n, 1)?,
        InstanceKind::GeneralMonomial => {
            let count = rng.gen_range(1..=MAX_GENERATORS.min(n + 2));
            let gens = (0..count)
                .map(|_| Monomial((0..n).map(|_| rng.gen_range(0..=2)).collect()))
                .collect();
            MonomialIdeal::new(ring, gens)?
        }
        InstanceKind::Dim1 => {
            let points = random_support(rng, n, 1, n);
            let delta =
                SimplicialComplex::new(n, (0..n).filter(|v| points >> v & 1 == 1).map(|v| 1 << v))?;
            MonomialIdeal::stanley_reisner(ring, &delta)?
        }
        InstanceKind::PureGraph => {
            let p = rng.gen_range(0.1..0.6);
            let edges: Vec<VertexSet> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .map(|(u, v)| 1 << u | 1 << v)
                .collect();
            if edges.is_empty() {
                return Ok(None);
            }
            MonomialIdeal::stanley_reisner(ring, &SimplicialComplex::new(n, edges)?)?
        }
        InstanceKind::CmWithParameter => {
            let i = squarefree_ideal(rng, ring, n - 1, 1)?;
            if !i.is_proper() || i.is_zero() || !is_cm_ring(&i)? || pd(&i)? != i.height()? {
                return Ok(None);
            }
            i
        }
        InstanceKind::Quotient => {
            let j = squarefree_ideal(rng, ring, n, 2)?;
            let j = MonomialIdeal::new(ring, j.gens().iter().take(3).cloned().collect())?;
            let i = squarefree_ideal(rng, ring, n, 1)?;
            let live: Vec<Monomial> = i
                .gens()
                .iter()
                .filter(|g| !j.contains(g))
                .cloned()
                .collect();
            let i = MonomialIdeal::new(ring, live)?;
            if i.is_zero() || !i.sum(&j)?.is_proper() {
                return Ok(None);
            }
            return Ok(Some((j, i)));
        }
    };
    if ideal.is_zero() || !ideal.is_proper() {
        return Ok(None);
    }
    Ok(Some((zero, ideal)))
}

/// A reproducible instance of the requested family on `n` variables.
pub fn random_instance(kind: InstanceKind, n: usize, seed: u64) -> Result<Instance> {
    random_instance_over(kind, n, seed, ScalarField::Rationals)
}

pub fn random_instance_over(
    kind: InstanceKind,
    n: usize,
    seed: u64,
    field: ScalarField,
) -> Result<Instance> {
    if n > DEFAULT_MAX_VARIABLES {
        return Err(Error::TooLarge(format!(
            "{n} variables (max {DEFAULT_MAX_VARIABLES})"
        )));
    }
    if n < kind.min_variables() {
        return Err(Error::OutOfRange {
            what: "variables",
            detail: format!("{kind} needs at least {} variables", kind.min_variables()),
        });
    }
    let ring = PolyRing::standard(n, field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (kind as u64) << 56);
    for _ in 0..MAX_ATTEMPTS {
        if let Some((j, ideal)) = generate(kind, &ring, &mut rng)? {
            let ambient = AmbientQuotient::new(j)?;
            return Ok(Instance {
                kind,
                seed,
                ambient,
                ideal,
            });
        }
    }
    Err(Error::Invariant(format!(
        "no {kind} instance on {n} variables after {MAX_ATTEMPTS} draws"
    )))
}

/// `count` instances with sizes drawn from `min_n..=max_n`.
pub fn corpus(
    kind: InstanceKind,
    count: usize,
    min_n: usize,
    max_n: usize,
    seed: u64,
) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(min_n.max(kind.min_variables())..=max_n);
            random_instance(kind, n, rng.gen())
        })
        .collect()
}

/// Whether the last variable lies outside every minimal prime.
pub fn last_variable_is_parameter(inst: &Instance) -> Result<bool> {
    let g = sigma_set(&inst.ideal, inst.ambient.relations())?;
    Ok(g.allowed >> (inst.nvars() - 1) & 1 == 1)
}
