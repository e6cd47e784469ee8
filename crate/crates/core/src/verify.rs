//! Named consistency checks run on a single instance.

use serde::{Deserialize, Serialize};

use crate::bass::{bass_numbers, BassOptions};
use crate::cech::{
    annihilator, cohomological_dimension, h0_h1_principal, supported_only_at_max, windowed_module,
    AmbientQuotient,
};
use crate::error::{Error, Result};
use crate::linalg::ScalarField;
use crate::lyubeznik::{lyubeznik_table, LyubeznikTable};
use crate::monomial::{sigma_set, MonomialIdeal};
use crate::reduction::{main1_report, q_containment, reduce};
use crate::resolutions::{
    betti_numbers, hochster_betti_numbers, is_cm_ring, pd, tor_pair, MAX_TAYLOR_GENERATORS,
};
use crate::seqcm::{duval_cross_check, is_partially_scm, is_sequentially_cm};
use crate::with_field;

pub const STRAIGHTNESS_SAMPLES: usize = 50;
/// Exhaustive Bass scans are run up to this many variables.
pub const EXHAUSTIVE_BASS_VARS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Fail(_)))
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&Outcome> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.outcome)
    }

    fn push(&mut self, name: &str, outcome: Result<Outcome>) {
        let outcome = outcome.unwrap_or_else(|e| match e {
            Error::TooLarge(m) => Outcome::Skipped(m),
            e => Outcome::Fail(e.to_string()),
        });
        self.checks.push(CheckResult {
            name: name.to_string(),
            outcome,
        });
    }
}

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

fn skip(why: &str) -> Result<Outcome> {
    Ok(Outcome::Skipped(why.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
    pub bass: BassOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            samples: STRAIGHTNESS_SAMPLES,
            bass: BassOptions::default(),
        }
    }
}

pub fn check_euler(t: &LyubeznikTable) -> Outcome {
    let e = t.euler_characteristic();
    verdict(e == 1, || format!("alternating sum {e}"))
}

pub fn check_trivial_table(i: &MonomialIdeal, t: &LyubeznikTable) -> Result<Outcome> {
    if i.dimension()? != 1 {
        return skip("dim R/I ≠ 1");
    }
    Ok(verdict(t.is_trivial(), || format!("table {t}")))
}

pub fn check_pure_dim2(i: &MonomialIdeal, t: &LyubeznikTable) -> Result<Outcome> {
    let delta = i.to_complex()?;
    if t.d != 2 || !delta.is_pure() {
        return skip("not pure of dimension 2");
    }
    let want = delta.components() - 1;
    Ok(verdict(t.pure_dim2_shape()? && t.get(0, 1) == want, || {
        format!("table {t}, {} components", delta.components())
    }))
}

pub fn check_iscm_shape(i: &MonomialIdeal, t: &LyubeznikTable) -> Result<Outcome> {
    for level in 0..=t.d {
        if is_partially_scm(i, level)? && !t.shape_matches_iscm(level)? {
            return Ok(Outcome::Fail(format!("{level}-sCM but table {t}")));
        }
    }
    Ok(Outcome::Pass)
}

pub fn check_cd_equals_pd(i: &MonomialIdeal) -> Result<Outcome> {
    let ring = i.ring();
    let c = cohomological_dimension(&AmbientQuotient::polynomial(ring), i, ring.field())?;
    let p = pd(i)?;
    Ok(verdict(c == p, || format!("cd {c}, pd {p}")))
}

/// Falls back to the Koszul route past the Taylor size limit.
pub fn check_betti_agreement(i: &MonomialIdeal) -> Result<Outcome> {
    let (route, direct) = if i.gens().len() <= MAX_TAYLOR_GENERATORS {
        ("Taylor", betti_numbers(i)?)
    } else {
        ("Koszul", tor_pair(&MonomialIdeal::unit(i.ring()), i)?)
    };
    let hochster = hochster_betti_numbers(i)?;
    Ok(verdict(direct == hochster, || {
        format!("{route} {direct:?}, Hochster {hochster:?}")
    }))
}

pub fn check_duval(i: &MonomialIdeal) -> Result<Outcome> {
    let a = is_sequentially_cm(i)?;
    let b = duval_cross_check(i)?;
    Ok(verdict(a == b, || {
        format!("filtration {a}, pure skeleta {b}")
    }))
}

fn nonzero_indices(
    a: &AmbientQuotient,
    i: &MonomialIdeal,
) -> Result<std::ops::RangeInclusive<usize>> {
    let c = cohomological_dimension(a, i, a.ring().field())?;
    let low = i
        .sum(a.relations())?
        .height()?
        .saturating_sub(a.relations().height()?);
    Ok(low.min(c)..=c)
}

pub fn check_straightness(
    a: &AmbientQuotient,
    i: &MonomialIdeal,
    samples: usize,
    seed: u64,
) -> Result<Outcome> {
    with_field!(a.ring().field(), |f| {
        for k in nonzero_indices(a, i)? {
            let m = windowed_module(&f, a, i, k)?;
            if let Err(e) = m.check_straightness(samples, seed ^ k as u64) {
                return Ok(Outcome::Fail(format!("H^{k}: {e}")));
            }
            if !m.commuting_squares_hold() {
                return Ok(Outcome::Fail(format!(
                    "H^{k}: multiplication maps do not commute"
                )));
            }
        }
        Ok(Outcome::Pass)
    })
}

/// Every nonzero Bass contribution lies strictly inside the scan box.
pub fn check_bass_boundary(i: &MonomialIdeal, opts: &BassOptions) -> Result<Outcome> {
    let n = i.nvars();
    if n > EXHAUSTIVE_BASS_VARS {
        return skip("too many variables for an exhaustive scan");
    }
    let ring = i.ring();
    let a = AmbientQuotient::polynomial(ring);
    let exhaustive = BassOptions {
        exhaustive: true,
        ..*opts
    };
    with_field!(ring.field(), |f| {
        for k in 0..=n {
            let m = windowed_module(&f, &a, i, k)?;
            match (bass_numbers(&m, &exhaustive), bass_numbers(&m, opts)) {
                (Err(Error::ScanBoxTooSmall(alpha)), _) => {
                    return Ok(Outcome::Fail(format!(
                        "H^{k} contributes at boundary degree {alpha:?}"
                    )))
                }
                (Ok(full), Ok(fast)) if full.mu != fast.mu => {
                    return Ok(Outcome::Fail(format!(
                        "H^{k}: exhaustive {:?}, shortcut {:?}",
                        full.mu, fast.mu
                    )))
                }
                (Err(e), _) | (_, Err(e)) => return Err(e),
                _ => {}
            }
        }
        Ok(Outcome::Pass)
    })
}

pub fn check_reduction(a: &AmbientQuotient, i: &MonomialIdeal) -> Result<Outcome> {
    match reduce(a, i, a.ring().field()) {
        Ok(t) => {
            let drops = t.steps.iter().all(|s| {
                s.ambient_after.nvars() + 1 == s.ambient_before.nvars()
                    && s.ambient_after.dimension() <= s.ambient_before.dimension()
            });
            Ok(verdict(drops && t.steps.len() <= a.nvars(), || {
                "a step does not remove exactly one variable".into()
            }))
        }
        Err(Error::Invariant(m)) => Ok(Outcome::Fail(m)),
        Err(e) => Err(e),
    }
}

/// A variable of `Ann ∩ Σ` kills every piece where its coordinate is `±1`.
pub fn check_parameter_vanishing(a: &AmbientQuotient, i: &MonomialIdeal) -> Result<Outcome> {
    let field = a.ring().field();
    let c = cohomological_dimension(a, i, field)?;
    let g = sigma_set(i, a.relations())?;
    with_field!(field, |f| {
        let m = windowed_module(&f, a, i, c)?;
        let ann = annihilator(&m)?;
        let table = m.piece_table();
        for g_ in ann
            .gens()
            .iter()
            .filter(|m| m.degree() == 1 && g.contains(m))
        {
            let v = g_.support().trailing_zeros() as usize;
            if let Some((beta, _)) = table.support().into_iter().find(|(b, _)| b[v] != 0) {
                return Ok(Outcome::Fail(format!(
                    "x{} annihilates but piece at {beta:?} is nonzero",
                    v + 1
                )));
            }
        }
        Ok(Outcome::Pass)
    })
}

/// For CM `R/I` of height `g` and a parameter `y`: `H^1_y(H^g_I) = H^{g+1}_{I+y}`.
pub fn check_grade(i: &MonomialIdeal) -> Result<Outcome> {
    let ring = i.ring();
    let a = AmbientQuotient::polynomial(ring);
    let allowed = sigma_set(i, a.relations())?.allowed;
    if allowed == 0 || !is_cm_ring(i)? || pd(i)? != i.height()? {
        return skip("needs Cohen–Macaulay R/I and a parameter variable");
    }
    let y = allowed.trailing_zeros() as usize;
    let g = i.height()?;
    with_field!(ring.field(), |f| {
        let m = windowed_module(&f, &a, i, g)?;
        let (ker, coker) = h0_h1_principal(&m, y)?;
        let target = windowed_module(&f, &a, &i.add_variable(y), g + 1)?.piece_table();
        Ok(verdict(ker.is_zero() && coker == target, || {
            format!("cokernel {:?} vs {:?}", coker.support(), target.support())
        }))
    })
}

/// `H^{n−1}_I` is supported only at the maximal ideal when `R/I` is pure of dimension 2.
pub fn check_support(i: &MonomialIdeal) -> Result<Outcome> {
    let n = i.nvars();
    if n < 3 || i.dimension()? != 2 || !i.to_complex()?.is_pure() {
        return skip("not pure of dimension 2");
    }
    let ring = i.ring();
    with_field!(ring.field(), |f| {
        let m = windowed_module(&f, &AmbientQuotient::polynomial(ring), i, n - 1)?;
        Ok(verdict(supported_only_at_max(&m), || {
            "a localization at a variable is nonzero".into()
        }))
    })
}

pub fn check_main1(a: &AmbientQuotient, i: &MonomialIdeal) -> Result<Outcome> {
    let r = main1_report(a, i, a.ring().field())?;
    if !r.hypotheses_hold() {
        return skip("hypotheses fail");
    }
    Ok(verdict(r.annihilator_is_principal(a), || {
        format!("annihilator {}", r.annihilator)
    }))
}

pub fn check_q_containment(a: &AmbientQuotient, i: &MonomialIdeal) -> Result<Outcome> {
    let q = q_containment(a, i, a.ring().field())?;
    if let crate::reduction::QContainment::NoParameter = q {
        return skip("no parameter variable");
    }
    Ok(verdict(q.passes(), || format!("{q:?}")))
}

fn table_checks(report: &mut VerifyReport, i: &MonomialIdeal, field: ScalarField) {
    let table = lyubeznik_table(i, field);
    let t = match table {
        Ok(t) => t,
        Err(e) => {
            report.push("euler", Err(e));
            return;
        }
    };
    report.push("euler", Ok(check_euler(&t)));
    report.push("trivial-table", check_trivial_table(i, &t));
    report.push("pure-dim2-shape", check_pure_dim2(i, &t));
    report.push("iscm-shape", check_iscm_shape(i, &t));
}

/// Every check applicable to the instance, in a fixed order.
pub fn verify_all(a: &AmbientQuotient, i: &MonomialIdeal, opts: &VerifyOptions) -> VerifyReport {
    let mut report = VerifyReport::default();
    let field = a.ring().field();
    let squarefree_poly = a.is_polynomial() && i.is_squarefree();
    if squarefree_poly {
        table_checks(&mut report, i, field);
        report.push("cd-equals-pd", check_cd_equals_pd(i));
        report.push("taylor-hochster", check_betti_agreement(i));
        report.push("duval", check_duval(i));
        report.push("bass-boundary", check_bass_boundary(i, &opts.bass));
        report.push("grade", check_grade(i));
        report.push("support", check_support(i));
    } else if a.is_polynomial() {
        report.push("duval", Ok(Outcome::Skipped("ideal not squarefree".into())));
    }
    report.push(
        "straightness",
        check_straightness(a, i, opts.samples, opts.seed),
    );
    report.push("reduction-invariance", check_reduction(a, i));
    report.push("parameter-vanishing", check_parameter_vanishing(a, i));
    report.push("annihilator-principal", check_main1(a, i));
    report.push("q-containment", check_q_containment(a, i));
    report
}
