//! Iterated quotients by annihilating parameters: while some variable `x_r`
//! lies in `Ann H^c_I(A)` and avoids every minimal prime of `I + J`, pass to
//! `(I + x_r, J + x_r)`, which keeps `H^c` unchanged.

use std::sync::Arc;

use crate::cech::{
    annihilator, cohomological_dimension, windowed_module, AmbientQuotient, PieceTable,
    WindowedModule,
};
use crate::error::{Error, Result};
use crate::linalg::{Field, ScalarField};
use crate::monomial::{q_ideal, sigma_set, Monomial, MonomialIdeal, PolyRing};
use crate::resolutions::is_cm_ring;
use crate::with_field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    /// Name of the variable quotiented out, and its index before the step.
    pub variable: String,
    pub index: usize,
    pub ambient_before: AmbientQuotient,
    pub ideal_before: MonomialIdeal,
    pub ambient_after: AmbientQuotient,
    pub ideal_after: MonomialIdeal,
    pub annihilator: MonomialIdeal,
    pub c: usize,
    pub snapshot_before: PieceTable,
    pub snapshot_after: PieceTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StopReason {
    /// No nonzero monomial of `Ann ∩ Σ`.
    EmptyCandidates,
    /// `Ann ∩ Σ` has monomials, but none is a variable.
    NonVariableOnly(Vec<Monomial>),
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StopReason::EmptyCandidates => write!(f, "S empty"),
            StopReason::NonVariableOnly(ms) => {
                write!(f, "non-variable candidates only ({})", ms.len())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub final_ambient: AmbientQuotient,
    pub final_ideal: MonomialIdeal,
    pub final_annihilator: MonomialIdeal,
    pub c: usize,
    pub stop: StopReason,
}

/// Nonzero monomial generators of `ann` supported outside the minimal primes
/// of `I + J`.
fn annihilating_parameters(
    a: &AmbientQuotient,
    ideal: &MonomialIdeal,
    ann: &MonomialIdeal,
) -> Result<Vec<Monomial>> {
    let g = sigma_set(ideal, a.relations())?;
    Ok(ann
        .gens()
        .iter()
        .filter(|m| g.contains(m) && !a.kills(m))
        .cloned()
        .collect())
}

struct Stage<F: Field> {
    c: usize,
    module: WindowedModule<F>,
    ann: MonomialIdeal,
}

fn stage<F: Field>(field: &F, a: &AmbientQuotient, ideal: &MonomialIdeal) -> Result<Stage<F>> {
    let c = cohomological_dimension(a, ideal, field.kind())?;
    let module = windowed_module(field, a, ideal, c)?;
    let ann = annihilator(&module)?;
    Ok(Stage { c, module, ann })
}

/// Pieces of the new module at `β_r = 0` equal the old ones, and old pieces
/// with `β_r = ±1` vanish.
fn check_invariance(before: &PieceTable, after: &PieceTable, r: usize) -> Result<()> {
    for (k, &d) in before.dims.iter().enumerate() {
        let beta = crate::cech::window_degree(before.nvars, k);
        if beta[r] != 0 {
            if d != 0 {
                return Err(Error::Invariant(format!(
                    "piece at {beta:?} survives multiplication by the parameter"
                )));
            }
            continue;
        }
        let mut reduced = beta.clone();
        reduced.remove(r);
        if after.get(&reduced) != d {
            return Err(Error::Invariant(format!(
                "piece at {beta:?}: {d} before, {} after",
                after.get(&reduced)
            )));
        }
    }
    Ok(())
}

pub fn reduce(
    a: &AmbientQuotient,
    ideal: &MonomialIdeal,
    field: ScalarField,
) -> Result<ReductionTrace> {
    with_field!(field, |f| reduce_over(&f, a, ideal))
}

fn reduce_over<F: Field>(
    field: &F,
    a: &AmbientQuotient,
    ideal: &MonomialIdeal,
) -> Result<ReductionTrace> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal("ideal"));
    }
    let mut a = a.clone();
    let mut ideal = ideal.clone();
    let mut cur = stage(field, &a, &ideal)?;
    let c = cur.c;
    let mut steps = Vec::new();
    loop {
        let params = annihilating_parameters(&a, &ideal, &cur.ann)?;
        let var = params
            .iter()
            .filter(|m| m.degree() == 1)
            .map(|m| m.support().trailing_zeros() as usize)
            .min();
        let Some(r) = var else {
            let stop = if params.is_empty() {
                StopReason::EmptyCandidates
            } else {
                StopReason::NonVariableOnly(params)
            };
            return Ok(ReductionTrace {
                steps,
                final_ambient: a,
                final_ideal: ideal,
                final_annihilator: cur.ann,
                c,
                stop,
            });
        };
        let next_a = a.quotient_by_variable(r)?;
        let next_ideal = ideal.eliminate_variable(r, next_a.ring())?;
        let next = stage(field, &next_a, &next_ideal)?;
        if next.c != c {
            return Err(Error::Invariant(format!(
                "c changed from {c} to {} after quotient",
                next.c
            )));
        }
        let before = cur.module.piece_table();
        let after = next.module.piece_table();
        check_invariance(&before, &after, r)?;
        steps.push(ReductionStep {
            variable: a.ring().names()[r].clone(),
            index: r,
            ambient_before: a.clone(),
            ideal_before: ideal.clone(),
            ambient_after: next_a.clone(),
            ideal_after: next_ideal.clone(),
            annihilator: cur.ann.clone(),
            c,
            snapshot_before: before,
            snapshot_after: after,
        });
        a = next_a;
        ideal = next_ideal;
        cur = next;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Main1Report {
    pub ambient_cm: bool,
    pub dim_quotient: usize,
    pub c: usize,
    pub expected_c: i64,
    pub parameters: Vec<Monomial>,
    pub annihilator: MonomialIdeal,
}

impl Main1Report {
    pub fn hypotheses_hold(&self) -> bool {
        self.ambient_cm
            && self.dim_quotient >= 2
            && self.c as i64 == self.expected_c
            && !self.parameters.is_empty()
    }

    /// Whether `Ann = rA` for one nonzero `r` in `Σ`, i.e. `Ann = (r) + J`.
    pub fn annihilator_is_principal(&self, a: &AmbientQuotient) -> bool {
        let live: Vec<&Monomial> = self
            .annihilator
            .gens()
            .iter()
            .filter(|g| !a.kills(g))
            .collect();
        if live.len() != 1 || !self.parameters.contains(live[0]) {
            return false;
        }
        let principal = MonomialIdeal::new(a.ring(), vec![live[0].clone()]).expect("same ring");
        principal
            .sum(a.relations())
            .map(|s| s == self.annihilator)
            .unwrap_or(false)
    }
}

pub fn main1_report(
    a: &AmbientQuotient,
    ideal: &MonomialIdeal,
    field: ScalarField,
) -> Result<Main1Report> {
    let ambient_cm = is_cm_ring(a.relations())?;
    let dim_quotient = ideal.sum(a.relations())?.dimension()?;
    let c = cohomological_dimension(a, ideal, field)?;
    let annihilator = with_field!(field, |f| annihilator(&windowed_module(&f, a, ideal, c)?))?;
    let parameters = annihilating_parameters(a, ideal, &annihilator)?;
    Ok(Main1Report {
        ambient_cm,
        dim_quotient,
        c,
        expected_c: a.dimension() as i64 - dim_quotient as i64 + 1,
        parameters,
        annihilator,
    })
}

pub fn main1_hypotheses(
    a: &AmbientQuotient,
    ideal: &MonomialIdeal,
    field: ScalarField,
) -> Result<bool> {
    Ok(main1_report(a, ideal, field)?.hypotheses_hold())
}

/// Vacuously true when the hypotheses fail.
pub fn ann_principal_check(
    a: &AmbientQuotient,
    ideal: &MonomialIdeal,
    field: ScalarField,
) -> Result<bool> {
    let r = main1_report(a, ideal, field)?;
    Ok(!r.hypotheses_hold() || r.annihilator_is_principal(a))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QContainment {
    /// Every variable lies in a minimal prime of `I + J`.
    NoParameter,
    Checked {
        variable: String,
        q: MonomialIdeal,
        ring: Arc<PolyRing>,
        contained: bool,
    },
}

impl QContainment {
    pub fn passes(&self) -> bool {
        match self {
            QContainment::NoParameter => true,
            QContainment::Checked { contained, .. } => *contained,
        }
    }
}

/// With `y` the first variable outside the minimal primes of `I + J` and
/// `A' = A/yA`: the image of `Ann H^c_I(A)` lies in `Q_{IA'}(A')`.
pub fn q_containment(
    a: &AmbientQuotient,
    ideal: &MonomialIdeal,
    field: ScalarField,
) -> Result<QContainment> {
    let g = sigma_set(ideal, a.relations())?;
    if g.allowed == 0 {
        return Ok(QContainment::NoParameter);
    }
    let y = g.allowed.trailing_zeros() as usize;
    let c = cohomological_dimension(a, ideal, field)?;
    let ann = with_field!(field, |f| annihilator(&windowed_module(&f, a, ideal, c)?))?;
    let reduced = a.quotient_by_variable(y)?;
    let ring = reduced.ring().clone();
    let q = q_ideal(&ideal.eliminate_variable(y, &ring)?, reduced.relations())?;
    let image = ann.eliminate_variable(y, &ring)?;
    Ok(QContainment::Checked {
        variable: a.ring().names()[y].clone(),
        contained: q.contains_ideal(&image),
        q,
        ring,
    })
}

pub fn q_containment_check(
    a: &AmbientQuotient,
    ideal: &MonomialIdeal,
    field: ScalarField,
) -> Result<bool> {
    Ok(q_containment(a, ideal, field)?.passes())
}
