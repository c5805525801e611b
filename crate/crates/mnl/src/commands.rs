//! One function per subcommand. Each returns a finished report, or an input
//! error when the request cannot be run at all.

use mnl_core::algebra::{is_lie, is_maltsev};
use mnl_core::birep::check_glc;
use mnl_core::chart::{tangent_structure_constants, unit_octonion_chart};
use mnl_core::envelope::{
    build_envelope, check_jacobi, matrix_closure_dim, realize_check, EnvelopeError,
};
use mnl_core::etc::{
    bilinear_lemma_check, canonical_etc_check, charge_algebra_check, charge_densities, charges,
    etc_verify, locality_check, FieldSet, FERMIONIC,
};
use mnl_core::fock::build_fock;
use mnl_core::loops::{has_inverses, has_unit, is_associative, is_moufang, is_quasigroup};
use mnl_core::report::Witness;
use mnl_core::{catalog_algebra, CheckReport, Rational};
use serde_json::json;
use thiserror::Error;

use crate::formats::{load_generators, load_loop, load_tensor, InputError};
use crate::report::Report;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Usage(String),
}

fn ratio(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn loop_check(input: &str) -> Result<Report, CommandError> {
    let t = load_loop(input)?;
    let mut report = Report::new("loop-check", input);
    report.detail("order", t.order());
    report
        .check(&is_quasigroup(&t))
        .check(&has_unit(&t))
        .check(&has_inverses(&t));
    let moufang = is_moufang(&t)
        .unwrap_or_else(|e| CheckReport::fail("moufang", Witness::new(vec![], e.to_string())));
    report.check(&moufang).info(&is_associative(&t));
    Ok(report)
}

pub fn maltsev(input: &str) -> Result<Report, CommandError> {
    let c = load_tensor(input)?;
    let mut report = Report::new("maltsev", input);
    report.detail("dim", c.dim());
    report.info(&is_lie(&c)).check(&is_maltsev(&c));
    Ok(report)
}

pub fn envelope(input: &str, oracle: Option<&str>) -> Result<Report, CommandError> {
    let c = load_tensor(input)?;
    let mut report = Report::new("envelope", input);
    let r = c.dim();
    let bound = 2 * r + r * (r - 1) / 2;
    report.detail("r", r).detail("bound", bound);
    let maltsev = is_maltsev(&c);
    if !maltsev.passed {
        report.check(&maltsev);
        return Ok(report);
    }
    let env = match build_envelope(&c) {
        Ok(env) => env,
        Err(e) => {
            report.check(&CheckReport::fail(
                "envelope",
                Witness::new(vec![], e.to_string()),
            ));
            return Ok(report);
        }
    };
    let labels: Vec<String> = env.labels().iter().map(ToString::to_string).collect();
    let brackets: Vec<Vec<serde_json::Value>> = env
        .nonzero_brackets()
        .flat_map(|(a, b, v)| {
            v.iter()
                .enumerate()
                .filter(|(_, q)| *q.numer() != 0)
                .map(move |(k, q)| {
                    vec![
                        json!(a + 1),
                        json!(b + 1),
                        json!(k + 1),
                        json!(q.numer()),
                        json!(q.denom()),
                    ]
                })
                .collect::<Vec<_>>()
        })
        .collect();
    report
        .detail("dim", env.dim())
        .detail("free_dim", env.free_dim())
        .detail("relation_rank", env.relation_rank())
        .detail("basis", labels)
        .detail("brackets", brackets);
    report.check(env.compatibility()).check(&check_jacobi(&env));
    let within = if env.dim() <= bound {
        CheckReport::pass("bound")
    } else {
        CheckReport::fail(
            "bound",
            Witness::new(vec![env.dim()], format!("{} > {bound}", env.dim())),
        )
    };
    report.check(&within);

    if let Some(oracle) = oracle {
        let loaded = load_generators(oracle)?;
        let tensor = loaded.tensor.unwrap_or_else(|| c.clone());
        let closure = matrix_closure_dim(&loaded.gen);
        report
            .detail("oracle", oracle)
            .detail("closure_dim", closure)
            .detail("dims_equal", closure == env.dim());
        match realize_check(&env, &loaded.gen, &tensor) {
            Ok(real) => {
                report
                    .detail("rescale", ratio(&real.rescale))
                    .detail("image_dim", real.image_dim);
                report.check(&real.report);
                let image = if closure <= env.dim() {
                    CheckReport::pass("closure-bound")
                } else {
                    CheckReport::fail(
                        "closure-bound",
                        Witness::new(
                            vec![closure],
                            format!("closure {closure} > envelope {}", env.dim()),
                        ),
                    )
                };
                report.check(&image);
            }
            Err(EnvelopeError::DimensionMismatch(m)) => return Err(CommandError::Usage(m)),
            Err(e) => {
                report.check(&CheckReport::fail(
                    "realize",
                    Witness::new(vec![], e.to_string()),
                ));
            }
        }
    }
    Ok(report)
}

pub fn glc(input: &str, tensor: Option<&str>) -> Result<Report, CommandError> {
    let loaded = load_generators(input)?;
    let c = match tensor {
        Some(spec) => load_tensor(spec)?,
        None => loaded.tensor.ok_or_else(|| {
            CommandError::Usage("generators carry no tensor; pass --tensor".into())
        })?,
    };
    let glc = check_glc(&loaded.gen, &c).map_err(|e| CommandError::Usage(e.to_string()))?;
    let mut report = Report::new("glc", input);
    report
        .detail("r", loaded.gen.r())
        .detail("dim", loaded.gen.dim());
    for family in glc.families.all() {
        report.check(family);
    }
    Ok(report)
}

pub fn etc(input: &str, sites: usize, tensor: Option<&str>) -> Result<Report, CommandError> {
    let loaded = load_generators(input)?;
    let c = match tensor {
        Some(spec) => load_tensor(spec)?,
        None => loaded.tensor.ok_or_else(|| {
            CommandError::Usage("generators carry no tensor; pass --tensor".into())
        })?,
    };
    let n = loaded.gen.dim();
    let ops = build_fock(n, sites).map_err(|e| CommandError::Usage(e.to_string()))?;
    let f = FieldSet::canonical(&ops);
    let d =
        charge_densities(&f, &loaded.gen, &c).map_err(|e| CommandError::Usage(e.to_string()))?;
    let etc = etc_verify(&d, &c).map_err(|e| CommandError::Usage(e.to_string()))?;

    let mut report = Report::new("etc", input);
    report
        .detail("convention", FERMIONIC.header())
        .detail("modes_per_site", n)
        .detail("sites", sites)
        .detail("dim", ops.dim());
    report.check(&canonical_etc_check(&f));
    let mut equations = Vec::new();
    for e in &etc.equations {
        report.check(&e.report);
        equations.push(equation_json(&e.eq, &e.report));
    }
    if sites > 1 {
        report.check(&locality_check(&d));
    }
    let theorem = charge_algebra_check(&charges(&d), &c);
    report.check(&theorem);
    equations.push(equation_json("theorem", &theorem));
    report.info(&etc.eq3_as_printed).info(&etc.associative);
    report.detail("equations", equations);
    Ok(report)
}

fn equation_json(eq: &str, r: &CheckReport) -> serde_json::Value {
    json!({
        "eq": eq,
        "pass": r.passed,
        "witness": r.witness.as_ref().map(|w| json!({"indices": w.indices, "detail": w.detail})),
    })
}

pub fn tangent(step: f64) -> Result<Report, CommandError> {
    let chart = unit_octonion_chart();
    let m7 = catalog_algebra("m7").expect("catalog tensor");
    let coarse = tangent_structure_constants(&chart, step)
        .map_err(|e| CommandError::Usage(e.to_string()))?;
    let fine = tangent_structure_constants(&chart, step / 2.0)
        .map_err(|e| CommandError::Usage(e.to_string()))?;
    let (e1, e2) = (
        coarse.tensor.max_abs_diff(&m7),
        fine.tensor.max_abs_diff(&m7),
    );
    let reduction = e1 / e2;
    let mut report = Report::new("tangent", "builtin:octonion-chart");
    report
        .detail("step", step)
        .detail("max_error", e1)
        .detail("max_error_half_step", e2)
        .detail("error_ratio", reduction)
        .detail("raw_asymmetry", coarse.raw_asymmetry);
    let accuracy = if e1 <= 1e-5 {
        CheckReport::pass("accuracy")
    } else {
        CheckReport::fail(
            "accuracy",
            Witness::new(vec![], format!("max error {e1:e} > 1e-5")),
        )
    };
    let order = if (3.5..=4.5).contains(&reduction) {
        CheckReport::pass("second-order")
    } else {
        CheckReport::fail(
            "second-order",
            Witness::new(vec![], format!("error ratio {reduction}")),
        )
    };
    report.check(&accuracy).check(&order);
    Ok(report)
}

pub fn lemma(modes: usize, sites: usize, trials: usize, seed: u64) -> Result<Report, CommandError> {
    let ops = build_fock(modes, sites).map_err(|e| CommandError::Usage(e.to_string()))?;
    let f = FieldSet::canonical(&ops);
    let mut report = Report::new("lemma", &format!("modes={modes} sites={sites}"));
    report.detail("trials", trials).detail("seed", seed);
    report.check(&bilinear_lemma_check(&f, trials, seed));
    Ok(report)
}
