//! One function per subcommand. Each returns a [`ResultDocument`]; failures are
//! recorded in the document together with whatever was computed before them.

use std::sync::Arc;

use super::{CochainFile, FrontendError, ProblemFile, QuadraticsFile, ResultDocument};
use crate::cohomology::{h1_witness, is_cocycle, Cochain, CohomologyError};
use crate::oracles::{random_instance, verify_components, OracleError, QuadratureConfig, DEFAULT_POINTS};
use crate::poincare::{check_cocycle, kernel_rewrite, oracle_solve, solve, verify_decomposition, CocycleData};
use crate::poly::Poly;
use crate::williamson::{classify_family, ModelSystem, WilliamsonType};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitOptions {
    pub oracle: bool,
    /// The elimination oracle only runs on data of at most this degree.
    pub oracle_degree: u32,
}

impl Default for SplitOptions {
    fn default() -> Self {
        SplitOptions {
            oracle: true,
            oracle_degree: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub panels: usize,
    pub tolerance: f64,
    pub points: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        let q = QuadratureConfig::default();
        VerifyOptions {
            panels: q.panels(),
            tolerance: q.tolerance,
            points: DEFAULT_POINTS,
        }
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn system_for(wtype: WilliamsonType) -> Result<ModelSystem, FrontendError> {
    ModelSystem::standard(wtype).map_err(|e| FrontendError::Validation(e.to_string()))
}

pub fn cmd_split(text: &str, options: &SplitOptions) -> ResultDocument {
    let mut doc = ResultDocument::new("split");
    match split_into(&mut doc, text, options) {
        Ok(()) => doc,
        Err(e) => doc.fail(e),
    }
}

fn split_into(doc: &mut ResultDocument, text: &str, options: &SplitOptions) -> Result<(), FrontendError> {
    let problem = ProblemFile::parse(text)?;
    doc.push("type", problem.wtype);
    for (i, g) in problem.g.iter().enumerate() {
        doc.push(format!("g{}", i + 1), g.render());
    }
    let system = system_for(problem.wtype)?;
    let data = CocycleData::new(system.clone(), problem.g.clone()).map_err(|e| FrontendError::Validation(e.to_string()))?;

    let report = check_cocycle(&data);
    doc.push("cocycle", pass(report.passed()));
    if !report.passed() {
        let mut failing = 0;
        for p in report.failing() {
            failing += 1;
            doc.push(format!("residual{}{}", p.i + 1, p.j + 1), p.residual.render());
        }
        return Err(FrontendError::Cocycle { failing });
    }

    let dec = solve(&data).map_err(|e| FrontendError::Solver(e.to_string()))?;
    for (i, f) in dec.f.iter().enumerate() {
        doc.push(format!("f{}", i + 1), f.render());
        if let Ok(k) = kernel_rewrite(f, &system) {
            doc.push(format!("f{}.commutant", i + 1), k.render());
        }
    }
    doc.push("G", dec.potential.render());

    let check = verify_decomposition(&data, &dec);
    doc.push("reconstruction", pass(check.reconstruction.iter().all(Poly::is_zero)));
    doc.push("kernel", pass(check.kernel_violations.is_empty()));
    doc.push("canonical", pass(check.canonical()));
    if !check.sound() {
        return Err(FrontendError::Mismatch("decomposition does not verify".into()));
    }

    if options.oracle && data.max_degree() <= options.oracle_degree {
        let agrees = oracle_solve(&data, options.oracle_degree).is_ok_and(|o| o == dec);
        doc.push("oracle", if agrees { "agree" } else { "disagree" });
        if !agrees {
            return Err(FrontendError::Mismatch("elimination oracle disagrees".into()));
        }
    } else {
        doc.push("oracle", "skipped");
    }

    let mut expectations = Vec::new();
    for (i, f) in problem.expected_f.iter().enumerate() {
        if let Some(f) = f {
            expectations.push((format!("f{}", i + 1), f == &dec.f[i]));
        }
    }
    if let Some(g) = &problem.expected_potential {
        expectations.push(("G".to_string(), g == &dec.potential));
    }
    if !expectations.is_empty() {
        let bad: Vec<&str> = expectations.iter().filter(|(_, ok)| !ok).map(|(k, _)| k.as_str()).collect();
        doc.push("expected", pass(bad.is_empty()));
        if !bad.is_empty() {
            return Err(FrontendError::Mismatch(format!("expected values differ for {}", bad.join(", "))));
        }
    }
    Ok(())
}

pub fn cmd_classify(text: &str) -> ResultDocument {
    let mut doc = ResultDocument::new("classify");
    let result = QuadraticsFile::parse(text).and_then(|file| {
        for (i, q) in file.q.iter().enumerate() {
            doc.push(format!("q{}", i + 1), q.render());
        }
        classify_family(&file.q).map_err(|e| FrontendError::Classify(e.to_string()))
    });
    match result {
        Ok(t) => {
            doc.push("type", t);
            doc
        }
        Err(e) => doc.fail(e),
    }
}

pub fn cmd_cohomology(text: &str) -> ResultDocument {
    let mut doc = ResultDocument::new("cohomology");
    match cohomology_into(&mut doc, text) {
        Ok(()) => doc,
        Err(e) => doc.fail(e),
    }
}

fn cohomology_into(doc: &mut ResultDocument, text: &str) -> Result<(), FrontendError> {
    let file = CochainFile::parse(text)?;
    doc.push("type", file.wtype);
    for (i, a) in file.alpha.iter().enumerate() {
        doc.push(format!("alpha{}", i + 1), a.render());
    }
    let system = Arc::new(system_for(file.wtype)?);
    let alpha = Cochain::one_form(system.clone(), file.alpha).map_err(|e| FrontendError::Validation(e.to_string()))?;
    let check = is_cocycle(&alpha).map_err(|e| FrontendError::Validation(e.to_string()))?;
    doc.push("cocycle", pass(check.passed()));
    if !check.passed() {
        for (i, j, res) in &check.residuals {
            if !res.is_zero() {
                doc.push(format!("residual{}{}", i + 1, j + 1), res.render());
            }
        }
        return Err(FrontendError::Cocycle {
            failing: check.failing(),
        });
    }
    let witness = h1_witness(&alpha).map_err(|e| match e {
        CohomologyError::Reassembly => FrontendError::Mismatch(e.to_string()),
        e => FrontendError::Solver(e.to_string()),
    })?;
    doc.push("h", witness.h.render());
    for (i, f) in witness.f.iter().enumerate() {
        doc.push(format!("f{}", i + 1), f.render());
    }
    doc.push("reassembly", pass(true));
    Ok(())
}

pub fn cmd_verify(text: &str, options: &VerifyOptions) -> ResultDocument {
    let mut doc = ResultDocument::new("verify");
    match verify_into(&mut doc, text, options) {
        Ok(()) => doc,
        Err(e) => doc.fail(e),
    }
}

fn verify_into(doc: &mut ResultDocument, text: &str, options: &VerifyOptions) -> Result<(), FrontendError> {
    let problem = ProblemFile::parse(text)?;
    let config =
        QuadratureConfig::new(options.panels, options.tolerance).map_err(|e| FrontendError::Validation(e.to_string()))?;
    doc.push("type", problem.wtype);
    doc.push("panels", config.panels());
    doc.push("points", options.points);
    let system = system_for(problem.wtype)?;
    let reports = verify_components(&system, &problem.g, options.points, &config).map_err(|e| match e {
        OracleError::ToleranceExceeded { label, max, tolerance } => FrontendError::Tolerance { label, max, tolerance },
        e => FrontendError::Validation(e.to_string()),
    })?;
    let mut first_failure = None;
    for r in &reports {
        doc.push(r.label.clone(), r.render());
        if !r.passed() && first_failure.is_none() {
            first_failure = Some(FrontendError::Tolerance {
                label: r.label.clone(),
                max: r.max_residual(),
                tolerance: r.tolerance,
            });
        }
    }
    match first_failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Problem file for `random_instance(type, degree, seed)`, including the ground truth
/// as expectations.
pub fn cmd_gen(wtype: WilliamsonType, degree: u32, seed: u64) -> Result<String, FrontendError> {
    let system = system_for(wtype)?;
    let inst = random_instance(&system, degree, seed);
    let file = ProblemFile {
        wtype,
        degree: Some(degree),
        g: inst.data.g,
        expected_f: inst.truth.f.into_iter().map(Some).collect(),
        expected_potential: Some(inst.truth.potential),
    };
    Ok(format!("# seed {seed}\n{}", file.render()))
}
