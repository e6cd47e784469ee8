use std::time::Instant;

use loccoh::bass::{BassOptions, ScanBox};
use loccoh::cech::{annihilator, cohomological_dimension, windowed_module, PieceTable};
use loccoh::lyubeznik::{lyubeznik_table_with, LyubeznikTable};
use loccoh::monomial::{MonomialIdeal, PolyRing};
use loccoh::reduction::{reduce, ReductionTrace, StopReason};
use loccoh::seqcm::{dimension_filtration, is_partially_scm};
use loccoh::verify::{verify_all, Outcome, VerifyOptions, VerifyReport, STRAIGHTNESS_SAMPLES};
use loccoh::with_field;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::job::{field_name, Command, Job, JobSpec};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Command,
    pub job: JobSpec,
    pub field: String,
    pub engine_version: &'static str,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub verification_failed: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn polynomial_only(job: &Job) -> Result<(), CliError> {
    if job.ambient.is_polynomial() {
        Ok(())
    } else {
        Err(loccoh::Error::UnsupportedAmbient(format!(
            "`{}` runs over the polynomial ring, got relations {}",
            job.spec.cmd,
            job.ambient.relations()
        ))
        .into())
    }
}

fn bass_options(job: &Job) -> Result<BassOptions, CliError> {
    let scan_box = match job.spec.options.scan_box {
        Some([lo, hi]) => ScanBox::new(lo, hi)?,
        None => ScanBox::default(),
    };
    Ok(BassOptions {
        scan_box,
        exhaustive: false,
    })
}

fn table(job: &Job) -> Result<LyubeznikTable, CliError> {
    polynomial_only(job)?;
    Ok(lyubeznik_table_with(
        &job.ideal,
        job.field,
        &bass_options(job)?,
    )?)
}

fn table_json(t: &LyubeznikTable) -> Value {
    json!({ "d": t.d, "table": t.entries, "compact": t.to_string(), "euler": t.euler_characteristic() })
}

fn show(id: &MonomialIdeal) -> String {
    id.to_string()
}

fn pieces_json(p: &PieceTable) -> Value {
    p.support()
        .into_iter()
        .map(|(degree, dim)| json!({ "degree": degree, "dim": dim }))
        .collect()
}

fn vars(ring: &PolyRing) -> Value {
    json!(ring.names())
}

fn trace_json(t: &ReductionTrace) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            json!({
                "r": s.variable,
                "annihilator": show(&s.annihilator),
                "c": s.c,
                "before": {
                    "vars": vars(s.ambient_before.ring()),
                    "relations": show(s.ambient_before.relations()),
                    "ideal": show(&s.ideal_before),
                    "pieces": pieces_json(&s.snapshot_before),
                },
                "after": {
                    "vars": vars(s.ambient_after.ring()),
                    "relations": show(s.ambient_after.relations()),
                    "ideal": show(&s.ideal_after),
                    "pieces": pieces_json(&s.snapshot_after),
                },
            })
        })
        .collect();
    let stop = match &t.stop {
        StopReason::EmptyCandidates => json!({ "reason": "empty" }),
        StopReason::NonVariableOnly(ms) => json!({
            "reason": "non-variable-only",
            "candidates": ms.iter().map(|m| m.display(t.final_ambient.ring()).to_string()).collect::<Vec<_>>(),
        }),
    };
    json!({
        "c": t.c,
        "steps": steps,
        "final": {
            "vars": vars(t.final_ambient.ring()),
            "relations": show(t.final_ambient.relations()),
            "ideal": show(&t.final_ideal),
            "annihilator": show(&t.final_annihilator),
        },
        "stop": stop,
    })
}

fn trace_text(t: &ReductionTrace) -> String {
    let mut out = String::new();
    for (k, s) in t.steps.iter().enumerate() {
        out.push_str(&format!(
            "step {}: r = {}  Ann = {}  ideal {} -> {}  relations {} -> {}\n",
            k + 1,
            s.variable,
            s.annihilator,
            s.ideal_before,
            s.ideal_after,
            s.ambient_before.relations(),
            s.ambient_after.relations()
        ));
    }
    out.push_str(&format!(
        "final: vars {}  relations {}  ideal {}  c = {}  ({})\n",
        t.final_ambient.ring().names().join(","),
        t.final_ambient.relations(),
        t.final_ideal,
        t.c,
        t.stop
    ));
    out
}

fn verify_text(r: &VerifyReport) -> String {
    r.checks
        .iter()
        .map(|c| match &c.outcome {
            Outcome::Pass => format!("{:<24} pass\n", c.name),
            Outcome::Fail(m) => format!("{:<24} FAIL  {m}\n", c.name),
            Outcome::Skipped(m) => format!("{:<24} skip  {m}\n", c.name),
        })
        .collect()
}

fn shapes(job: &Job) -> Result<(Value, String), CliError> {
    let t = table(job)?;
    let levels = (0..=t.d)
        .map(|i| {
            let scm = is_partially_scm(&job.ideal, i)?;
            Ok(json!({ "level": i, "partially_scm": scm, "shape_matches": t.shape_matches_iscm(i)? }))
        })
        .collect::<Result<Vec<Value>, loccoh::Error>>()?;
    let pure_dim2 = if t.d == 2 {
        Some(t.pure_dim2_shape()?)
    } else {
        None
    };
    let text = format!(
        "{}trivial: {}\neuler: {}\n",
        t.render_text(),
        t.is_trivial(),
        t.euler_characteristic()
    );
    Ok((
        json!({
            "lyubeznik": table_json(&t),
            "trivial": t.is_trivial(),
            "pure_dim2_shape": pure_dim2,
            "levels": levels,
        }),
        text,
    ))
}

/// Runs a resolved job.
pub fn run(job: &Job) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut failed = false;
    let (result, text) = match job.spec.cmd {
        Command::Lyubeznik => {
            let t = table(job)?;
            (table_json(&t), t.render_text())
        }
        Command::Cd => {
            let c = cohomological_dimension(&job.ambient, &job.ideal, job.field)?;
            (json!({ "c": c }), format!("c = {c}\n"))
        }
        Command::Ann => {
            let c = cohomological_dimension(&job.ambient, &job.ideal, job.field)?;
            let ann = with_field!(job.field, |f| annihilator(&windowed_module(
                &f,
                &job.ambient,
                &job.ideal,
                c
            )?))?;
            let gens: Vec<String> = ann
                .gens()
                .iter()
                .map(|g| g.display(&job.ring).to_string())
                .collect();
            (
                json!({ "c": c, "annihilator": show(&ann), "generators": gens }),
                format!("Ann H^{c} = {ann}\n"),
            )
        }
        Command::Reduce => {
            let t = reduce(&job.ambient, &job.ideal, job.field)?;
            (trace_json(&t), trace_text(&t))
        }
        Command::Seqcm => {
            polynomial_only(job)?;
            let level = job.spec.options.level.unwrap_or(0);
            let v = is_partially_scm(&job.ideal, level)?;
            (
                json!({ "level": level, "partially_scm": v }),
                format!("{level}-sCM: {v}\n"),
            )
        }
        Command::Filtration => {
            polynomial_only(job)?;
            let f = dimension_filtration(&job.ideal)?;
            let levels = (-1..=f.dim() as i32)
                .map(|k| Ok(json!({ "k": k, "ideal": show(f.level(k)), "quotient_dim": f.quotient_dimension(k)? })))
                .collect::<Result<Vec<Value>, loccoh::Error>>()?;
            let text = (-1..=f.dim() as i32)
                .map(|k| format!("U_{k} = {}\n", f.level(k)))
                .collect();
            (json!({ "dim": f.dim(), "levels": levels }), text)
        }
        Command::Shapes => shapes(job)?,
        Command::VerifyAll => {
            let opts = VerifyOptions {
                seed: job.spec.options.seed.unwrap_or(0),
                samples: job.spec.options.samples.unwrap_or(STRAIGHTNESS_SAMPLES),
                bass: bass_options(job)?,
            };
            let r = verify_all(&job.ambient, &job.ideal, &opts);
            failed = !r.all_passed();
            (
                json!({ "all_passed": r.all_passed(), "checks": r.checks }),
                verify_text(&r),
            )
        }
    };
    Ok(Report {
        command: job.spec.cmd,
        job: job.spec.clone(),
        field: field_name(job.field),
        engine_version: loccoh::VERSION,
        result,
        timing_ms: Some(start.elapsed().as_secs_f64() * 1e3),
        text,
        verification_failed: failed,
    })
}
