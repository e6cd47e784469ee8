//! Acceptance suite: one line per criterion with its verdict and timing.
//! Runs as a plain binary so the lines are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use loccoh::bass::BassOptions;
use loccoh::cech::{annihilator, windowed_module, AmbientQuotient};
use loccoh::corpus::{corpus, Instance, InstanceKind};
use loccoh::linalg::{Rationals, ScalarField};
use loccoh::lyubeznik::lyubeznik_table;
use loccoh::monomial::{MonomialIdeal, PolyRing};
use loccoh::reduction::{main1_report, reduce, StopReason};
use loccoh::resolutions::MAX_TAYLOR_GENERATORS;
use loccoh::seqcm::{dimension_filtration, is_partially_scm};
use loccoh::verify::{self, Outcome, STRAIGHTNESS_SAMPLES};

const Q: ScalarField = ScalarField::Rationals;

type Check = fn() -> Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: Check,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring(names: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(names.iter().map(|s| s.to_string()).collect(), Q).unwrap()
}

fn ideal(r: &Arc<PolyRing>, g: &[&str]) -> MonomialIdeal {
    MonomialIdeal::parse(r, g).unwrap()
}

fn sweep(
    inst: &[Instance],
    mut f: impl FnMut(&Instance) -> Result<(), String>,
) -> Result<(), String> {
    for i in inst {
        f(i).map_err(|e| format!("{} seed {} ideal {}: {e}", i.kind, i.seed, i.ideal))?;
    }
    Ok(())
}

fn outcome_ok(o: Result<Outcome, loccoh::Error>) -> Result<Outcome, String> {
    match o {
        Ok(Outcome::Fail(m)) => Err(m),
        Ok(o) => Ok(o),
        Err(e) => Err(e.to_string()),
    }
}

fn squarefree_corpus() -> Vec<Instance> {
    corpus(InstanceKind::Squarefree, 100, 2, 6, 0x5eed_0007).unwrap()
}

fn dim1_corpus() -> Vec<Instance> {
    corpus(InstanceKind::Dim1, 100, 1, 6, 0x5eed_0004).unwrap()
}

fn graph_corpus() -> Vec<Instance> {
    corpus(InstanceKind::PureGraph, 50, 3, 7, 0x5eed_0005).unwrap()
}

fn skew_lines() -> Result<String, String> {
    let r = ring(&["x1", "x2", "x3", "x4"]);
    let i = ideal(&r, &["x1", "x3"])
        .intersect(&ideal(&r, &["x2", "x4"]))
        .unwrap();
    let t = lyubeznik_table(&i, Q).map_err(|e| e.to_string())?;
    ensure(
        t.entries == vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 2]],
        || format!("got {t}"),
    )?;
    Ok(format!("table {t}"))
}

fn singh_walther() -> Result<String, String> {
    let r = ring(&["x", "y", "z", "w"]);
    let a = AmbientQuotient::new(ideal(&r, &["x*y*z", "x*y*w"])).unwrap();
    let i = ideal(&r, &["x", "y"]);
    let ann = annihilator(&windowed_module(&Rationals, &a, &i, 2).unwrap()).unwrap();
    ensure(ann.to_string() == "(z, w)", || format!("Ann H^2 = {ann}"))?;
    let a1 = a.quotient_by_variable(2).unwrap();
    let i1 = i.eliminate_variable(2, a1.ring()).unwrap();
    let ann1 = annihilator(&windowed_module(&Rationals, &a1, &i1, 2).unwrap()).unwrap();
    ensure(ann1.to_string() == "(w)", || {
        format!("after z: Ann = {ann1}")
    })?;
    let t = reduce(&a, &i, Q).map_err(|e| e.to_string())?;
    let vars: Vec<&str> = t.steps.iter().map(|s| s.variable.as_str()).collect();
    ensure(vars == ["z", "w"], || format!("steps {vars:?}"))?;
    ensure(
        t.final_ambient.nvars() == 2 && t.final_ambient.is_polynomial(),
        || format!("final ambient {}", t.final_ambient.relations()),
    )?;
    ensure(t.final_ideal.to_string() == "(x, y)", || {
        format!("final ideal {}", t.final_ideal)
    })?;
    ensure(t.c == 2 && t.steps.iter().all(|s| s.c == 2), || {
        "c not constant 2".into()
    })?;
    ensure(t.stop == StopReason::EmptyCandidates, || {
        format!("stop {}", t.stop)
    })?;
    Ok("Ann (z, w) then (w); trace z, w; final (x, y) in k[x, y], c = 2".into())
}

fn three_scm() -> Result<String, String> {
    let r = ring(&["x1", "x2", "x3", "x4", "x5"]);
    let comps = [
        ideal(&r, &["x1"]),
        ideal(&r, &["x2", "x3"]),
        ideal(&r, &["x1^2", "x4", "x5"]),
    ];
    let j = MonomialIdeal::intersect_all(&r, comps.iter()).unwrap();
    let f = dimension_filtration(&j).map_err(|e| e.to_string())?;
    let want = [
        (-1, j.clone()),
        (0, j.clone()),
        (1, j.clone()),
        (2, comps[0].intersect(&comps[1]).unwrap()),
        (3, comps[0].clone()),
        (4, MonomialIdeal::unit(&r)),
    ];
    for (k, u) in &want {
        ensure(f.level(*k) == u, || {
            format!("U_{k} = {}, expected {u}", f.level(*k))
        })?;
    }
    let three = is_partially_scm(&j, 3).map_err(|e| e.to_string())?;
    let two = is_partially_scm(&j, 2).map_err(|e| e.to_string())?;
    ensure(three && !two, || format!("3-sCM {three}, 2-sCM {two}"))?;
    Ok("chain 0 = M_1 ⊂ M_2 ⊂ M_3 ⊂ M_4; 3-sCM, not 2-sCM".into())
}

fn trivial_tables() -> Result<String, String> {
    let inst = dim1_corpus();
    sweep(&inst, |i| {
        let t = lyubeznik_table(&i.ideal, Q).map_err(|e| e.to_string())?;
        ensure(t.is_trivial(), || format!("table {t}"))
    })?;
    Ok(format!("{} tables trivial", inst.len()))
}

fn pure_dim2() -> Result<String, String> {
    let inst = graph_corpus();
    let mut max_a = 0;
    sweep(&inst, |i| {
        let t = lyubeznik_table(&i.ideal, Q).map_err(|e| e.to_string())?;
        max_a = max_a.max(t.get(0, 1));
        outcome_ok(verify::check_pure_dim2(&i.ideal, &t))
            .and_then(|o| ensure(o == Outcome::Pass, || format!("{o:?}")))
    })?;
    Ok(format!("{} graph complexes, λ01 up to {max_a}", inst.len()))
}

fn euler() -> Result<String, String> {
    let mut count = 0;
    for inst in [squarefree_corpus(), dim1_corpus(), graph_corpus()] {
        sweep(&inst, |i| {
            let t = lyubeznik_table(&i.ideal, Q).map_err(|e| e.to_string())?;
            count += 1;
            ensure(t.euler_characteristic() == 1, || format!("table {t}"))
        })?;
    }
    Ok(format!("{count} tables, alternating sum 1"))
}

fn iscm_shape() -> Result<String, String> {
    let inst = squarefree_corpus();
    let mut holding = 0;
    sweep(&inst, |i| {
        let t = lyubeznik_table(&i.ideal, Q).map_err(|e| e.to_string())?;
        for level in 0..=t.d {
            if is_partially_scm(&i.ideal, level).map_err(|e| e.to_string())? {
                holding += 1;
                ensure(t.shape_matches_iscm(level).unwrap(), || {
                    format!("{level}-sCM but table {t}")
                })?;
            }
        }
        Ok(())
    })?;
    Ok(format!(
        "{} ideals, {holding} (ideal, level) pairs with i-sCM",
        inst.len()
    ))
}

fn oracles() -> Result<String, String> {
    let mut inst = squarefree_corpus();
    inst.extend(graph_corpus());
    inst.extend(dim1_corpus());
    let (mut exhaustive, mut koszul) = (0, 0);
    sweep(&inst, |i| {
        let id = &i.ideal;
        if id.gens().len() > MAX_TAYLOR_GENERATORS {
            koszul += 1;
        }
        for (tag, o) in [
            ("cd = pd", verify::check_cd_equals_pd(id)),
            ("Taylor = Hochster", verify::check_betti_agreement(id)),
            ("Duval", verify::check_duval(id)),
            (
                "straightness",
                verify::check_straightness(&i.ambient, id, STRAIGHTNESS_SAMPLES, i.seed),
            ),
        ] {
            let o = outcome_ok(o).map_err(|e| format!("{tag}: {e}"))?;
            ensure(o == Outcome::Pass, || format!("{tag}: {o:?}"))?;
        }
        let o = outcome_ok(verify::check_bass_boundary(id, &BassOptions::default()))
            .map_err(|e| format!("Bass: {e}"))?;
        if o == Outcome::Pass {
            exhaustive += 1;
        }
        Ok(())
    })?;
    Ok(format!(
        "{} instances ({koszul} past the Taylor limit, compared via Koszul); exhaustive Bass scan on {exhaustive} (n ≤ {})",
        inst.len(),
        verify::EXHAUSTIVE_BASS_VARS
    ))
}

fn grade() -> Result<String, String> {
    let inst = corpus(InstanceKind::CmWithParameter, 25, 3, 6, 0x5eed_0009).unwrap();
    sweep(&inst, |i| {
        let o = outcome_ok(verify::check_grade(&i.ideal))?;
        ensure(o == Outcome::Pass, || format!("{o:?}"))
    })?;
    Ok(format!(
        "{} CM ideals, cokernel of localization matches on the whole window",
        inst.len()
    ))
}

fn support() -> Result<String, String> {
    let inst = graph_corpus();
    sweep(&inst, |i| {
        let o = outcome_ok(verify::check_support(&i.ideal))?;
        ensure(o == Outcome::Pass, || format!("{o:?}"))
    })?;
    Ok(format!(
        "{} graph complexes, H^(n-1) supported at the maximal ideal",
        inst.len()
    ))
}

fn main1_and_q() -> Result<String, String> {
    let mut inst = corpus(InstanceKind::Quotient, 80, 3, 5, 0x5eed_0011).unwrap();
    inst.extend(squarefree_corpus());
    let (mut hyp, mut q_checked) = (0, 0);
    sweep(&inst, |i| {
        let rep = main1_report(&i.ambient, &i.ideal, Q).map_err(|e| e.to_string())?;
        if rep.hypotheses_hold() {
            hyp += 1;
            ensure(rep.annihilator_is_principal(&i.ambient), || {
                format!(
                    "relations {}, Ann {}",
                    i.ambient.relations(),
                    rep.annihilator
                )
            })?;
        }
        let o = outcome_ok(verify::check_q_containment(&i.ambient, &i.ideal))
            .map_err(|e| format!("relations {}: {e}", i.ambient.relations()))?;
        if o == Outcome::Pass {
            q_checked += 1;
        }
        Ok(())
    })?;
    ensure(hyp > 0, || "hypotheses never hold on the corpus".into())?;
    Ok(format!(
        "{} instances; principal Ann on all {hyp} meeting the hypotheses; Q-containment on {q_checked}",
        inst.len()
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "skew lines table",
            limit: Duration::from_secs(1),
            run: skew_lines,
        },
        Criterion {
            id: 2,
            name: "Singh-Walther reduction",
            limit: Duration::from_secs(1),
            run: singh_walther,
        },
        Criterion {
            id: 3,
            name: "3-sCM example",
            limit: Duration::from_secs(5),
            run: three_scm,
        },
        Criterion {
            id: 4,
            name: "dim 1 tables trivial",
            limit: Duration::from_secs(120),
            run: trivial_tables,
        },
        Criterion {
            id: 5,
            name: "pure dim 2 shape",
            limit: Duration::from_secs(300),
            run: pure_dim2,
        },
        Criterion {
            id: 6,
            name: "Euler identity",
            limit: Duration::from_secs(300),
            run: euler,
        },
        Criterion {
            id: 7,
            name: "i-sCM table shape",
            limit: Duration::from_secs(300),
            run: iscm_shape,
        },
        Criterion {
            id: 8,
            name: "oracle agreements",
            limit: Duration::from_secs(600),
            run: oracles,
        },
        Criterion {
            id: 9,
            name: "grade theorem",
            limit: Duration::from_secs(300),
            run: grade,
        },
        Criterion {
            id: 10,
            name: "support at maximal ideal",
            limit: Duration::from_secs(300),
            run: support,
        },
        Criterion {
            id: 11,
            name: "principal annihilator, Q-containment",
            limit: Duration::from_secs(300),
            run: main1_and_q,
        },
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for c in &criteria {
        if let Some(f) = &filter {
            if !c.name.contains(f.as_str()) && f != &c.id.to_string() {
                continue;
            }
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let (verdict, detail) = match result {
            Ok(d) if took <= c.limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("over time limit {:?}: {d}", c.limit)),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {verdict} {:>9.3}s (limit {:>4}s) {}: {detail}",
            c.id,
            took.as_secs_f64(),
            c.limit.as_secs(),
            c.name
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
