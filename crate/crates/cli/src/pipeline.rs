use std::path::PathBuf;

use frobenius::{
    compute_frobenius, export_frobenius, functional_equation_sign, import_frobenius, stability_recheck,
    CohomologyKind, FrobeniusApprox, FrobeniusOptions,
};
use griffiths::{good_prime_check, HypersurfaceInput, Mode};
use num_traits::One;
use obstruction::{BoundMode, ObstructionReport, Workspace};
use padic_core::charpoly_mod_pn;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tensor::{tensor_square, wedge_square, Construction};
use zeta::{
    cyclotomic_split, format_poly, min_precision, tensor_square_charpoly, wedge_square_charpoly, weil_lift,
    CyclotomicSplit, ScaledCharpoly, WeilPolynomial,
};

use crate::prime::{next_good_prime, DEFAULT_PRIME_CEILING};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSource {
    /// Polynomial text.
    Poly(String),
    /// A file holding polynomial text; lines starting with '#' are ignored.
    File(PathBuf),
    /// A Frobenius matrix in the JSON exchange format.
    Frobenius(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum RunMode {
    /// Middle cohomology of an even-dimensional hypersurface.
    Surface,
    /// H^2 of the Jacobian of a curve, as Lambda^2 H^1.
    Jacobian,
    /// H^1 (x) H^1 of a curve.
    Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub source: InputSource,
    /// Inferred from the input when absent.
    pub mode: Option<RunMode>,
    pub p: Option<u64>,
    pub char_bound: u64,
    pub precision_bound: u32,
    pub vanilla: bool,
    pub emit_frobenius: Option<PathBuf>,
    pub recheck: bool,
    pub prime_ceiling: u64,
}

impl RunConfig {
    pub fn new(source: InputSource) -> Self {
        RunConfig {
            source,
            mode: None,
            p: None,
            char_bound: 3,
            precision_bound: 1,
            vanilla: false,
            emit_frobenius: None,
            recheck: false,
            prime_ceiling: DEFAULT_PRIME_CEILING,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    ControlledReduction,
    Kedlaya,
    Imported,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecheckStatus {
    NotRequested,
    Passed,
    /// Imported matrices have nothing to recompute.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunProvenance {
    pub backend: Backend,
    pub p: u64,
    /// Digits asked of the Frobenius computation (or found in the file).
    pub precision: u32,
    pub trusted_precision: u32,
    pub loss: u32,
    pub truncation: Option<u32>,
    pub construction: Option<Construction>,
    /// The induced charpoly from Newton identities agreed with the
    /// charpoly of the induced matrix.
    pub dual_route_checked: bool,
    pub recheck: RecheckStatus,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: ObstructionReport,
    /// det(1 - tF) on the group that was computed or imported.
    pub lifted: WeilPolynomial,
    /// The polynomial whose Tate classes are bounded: the primitive part
    /// for hypersurfaces, the induced weight-2 structure for curves.
    pub target: WeilPolynomial,
    pub scaled: ScaledCharpoly,
    pub split: CyclotomicSplit,
    pub frobenius: FrobeniusApprox,
    pub provenance: RunProvenance,
}

impl RunOutput {
    /// The report dictionary plus the polynomials and provenance. Keys are
    /// sorted, so equal runs serialize identically.
    pub fn to_json(&self) -> Value {
        let mut v = self.report.to_json();
        let obj = v.as_object_mut().expect("report is an object");
        obj.insert("P".into(), json!(self.lifted.to_string()));
        if self.target != self.lifted {
            obj.insert("P_target".into(), json!(self.target.to_string()));
        }
        obj.insert("chi".into(), json!(chi_display(&self.scaled, &self.split)));
        obj.insert("h".into(), json!(format_poly(&self.split.h, "t")));
        obj.insert("provenance".into(), serde_json::to_value(&self.provenance).expect("serializable"));
        v
    }
}

/// "(t - 1)^2 * (31t^4 + ...)/31" style rendering of scale * primitive.
pub fn chi_display(scaled: &ScaledCharpoly, split: &CyclotomicSplit) -> String {
    let mut parts: Vec<String> = split
        .factors
        .iter()
        .map(|f| match f.gamma {
            1 => format!("({})", f.label()),
            g => format!("({})^{g}", f.label()),
        })
        .collect();
    if split.h.len() > 1 || parts.is_empty() {
        parts.push(format!("({})", format_poly(&split.h, "t")));
    }
    let mut s = parts.join(" * ");
    let (num, den) = (scaled.scale.numer(), scaled.scale.denom());
    if !num.is_one() {
        s = format!("{num} * {s}");
    }
    if !den.is_one() {
        s = format!("{s}/{den}");
    }
    s
}

/// Dimension of H^n (polarization included) and the weight.
fn cohomology_size(input: &HypersurfaceInput) -> (usize, u32) {
    match input.mode {
        Mode::Hypersurface => {
            let (n, d) = (input.n as i64, input.d as i64);
            let prim = ((d - 1).pow(n as u32 + 2) + (-1i64).pow(n as u32) * (d - 1)) / d;
            (prim as usize + 1, 2 * input.twist())
        }
        _ => (2 * input.genus().unwrap_or(0), 1),
    }
}

fn read_polynomial(source: &InputSource) -> Result<Option<String>, CliError> {
    match source {
        InputSource::Poly(s) => Ok(Some(s.clone())),
        InputSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?;
            let body: Vec<&str> = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect();
            Ok(Some(body.join(" ")))
        }
        InputSource::Frobenius(_) => Ok(None),
    }
}

fn input_mode(text: &str, mode: Option<RunMode>) -> Result<Mode, CliError> {
    let nvars = polyring::parse_poly(text).map_err(|e| CliError::BadInput(e.to_string()))?.vars.len();
    Ok(match mode {
        Some(RunMode::Surface) => Mode::Hypersurface,
        Some(_) if nvars == 3 => Mode::JacobianPlaneCurve,
        Some(_) => Mode::JacobianHyperelliptic,
        None if nvars >= 4 => Mode::Hypersurface,
        None if nvars == 3 => Mode::JacobianPlaneCurve,
        None => Mode::JacobianHyperelliptic,
    })
}

/// The run mode an imported matrix supports, checked against the request.
fn imported_mode(kind: CohomologyKind, mode: Option<RunMode>) -> Result<RunMode, CliError> {
    let mismatch = |m: RunMode| CliError::BadInput(format!("mode {m:?} does not apply to a {kind:?} matrix"));
    match (kind, mode) {
        (CohomologyKind::Hypersurface, None | Some(RunMode::Surface)) => Ok(RunMode::Surface),
        (CohomologyKind::CurveH1, None | Some(RunMode::Jacobian)) => Ok(RunMode::Jacobian),
        (CohomologyKind::CurveH1, Some(RunMode::Tensor)) => Ok(RunMode::Tensor),
        (CohomologyKind::JacobianH2, None | Some(RunMode::Jacobian)) => Ok(RunMode::Jacobian),
        (CohomologyKind::TensorSquare, None | Some(RunMode::Tensor)) => Ok(RunMode::Tensor),
        (_, Some(m)) => Err(mismatch(m)),
    }
}

struct Acquired {
    approx: FrobeniusApprox,
    input: Option<HypersurfaceInput>,
    mode: RunMode,
    backend: Backend,
}

fn acquire(cfg: &RunConfig) -> Result<Acquired, CliError> {
    let Some(text) = read_polynomial(&cfg.source)? else {
        let InputSource::Frobenius(path) = &cfg.source else { unreachable!() };
        let approx = import_frobenius(path)?;
        let mode = imported_mode(approx.kind, cfg.mode)?;
        if cfg.p.is_some_and(|p| p != approx.p) {
            return Err(CliError::BadInput(format!("--p disagrees with p = {} in the file", approx.p)));
        }
        return Ok(Acquired { approx, input: None, mode, backend: Backend::Imported });
    };
    let input = HypersurfaceInput::parse(&text, input_mode(&text, cfg.mode)?)?;
    let mode = match (input.mode, cfg.mode) {
        (Mode::Hypersurface, _) => RunMode::Surface,
        (_, Some(m)) => m,
        (_, None) => RunMode::Jacobian,
    };
    let p = match cfg.p {
        Some(p) => {
            good_prime_check(&input, p, cfg.char_bound)?;
            p
        }
        None => next_good_prime(&input, 2, cfg.char_bound, cfg.prime_ceiling)?,
    };
    let (m, weight) = cohomology_size(&input);
    let n_digits = min_precision(m, p, weight, cfg.precision_bound);
    let approx = compute_frobenius(&input, p, n_digits, FrobeniusOptions::default())?;
    let backend = match input.mode {
        Mode::JacobianHyperelliptic => Backend::Kedlaya,
        _ => Backend::ControlledReduction,
    };
    Ok(Acquired { approx, input: Some(input), mode, backend })
}

/// The Newton-identity charpoly must agree with the charpoly of the induced
/// matrix at the matrix's trusted precision.
fn dual_route_check(induced: &FrobeniusApprox, newton: &WeilPolynomial) -> Result<(), CliError> {
    let direct = charpoly_mod_pn(&induced.matrix)?.reversed();
    let t = direct.trusted_prec();
    let modulus = (induced.p as u128).pow(t);
    let expected = newton.residues(modulus);
    let agree = direct.coeffs.len() == expected.len()
        && direct.coeffs.iter().zip(&expected).all(|(&a, &b)| a % modulus == b);
    if agree {
        Ok(())
    } else {
        Err(CliError::InconsistentLift(format!(
            "induced charpoly disagrees with the matrix charpoly mod {}^{t}",
            induced.p
        )))
    }
}

/// Runs the whole pipeline: Frobenius, Weil lift, cyclotomic split, Tate
/// spaces and the bound.
pub fn run(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    let Acquired { approx, input, mode, backend } = acquire(cfg)?;
    if let Some(path) = &cfg.emit_frobenius {
        std::fs::write(path, export_frobenius(&approx))
            .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?;
    }
    let recheck = match (&input, cfg.recheck) {
        (_, false) => RecheckStatus::NotRequested,
        (None, true) => RecheckStatus::Skipped,
        (Some(input), true) => {
            stability_recheck(input, &approx)?;
            RecheckStatus::Passed
        }
    };

    let det_sign = functional_equation_sign(&approx)?;
    let charpoly = charpoly_mod_pn(&approx.matrix)?.reversed();
    let lifted = weil_lift(&charpoly, approx.weight(), det_sign)?;

    let tensor = mode == RunMode::Tensor;
    let (work, target, construction) = match approx.kind {
        CohomologyKind::CurveH1 => {
            let (induced, newton) = if tensor {
                (tensor_square(&approx)?, tensor_square_charpoly(&lifted))
            } else {
                (wedge_square(&approx)?, wedge_square_charpoly(&lifted))
            };
            dual_route_check(&induced.approx, &newton)?;
            (induced.approx, newton, Some(induced.construction))
        }
        CohomologyKind::Hypersurface => (approx.clone(), lifted.without_polarization()?, None),
        CohomologyKind::JacobianH2 | CohomologyKind::TensorSquare => (approx.clone(), lifted.clone(), None),
    };
    let scaled = target.scaled_charpoly()?;
    let split = cyclotomic_split(&scaled.primitive);
    let ws = Workspace::new(&work)?;
    let bound_mode = if cfg.vanilla { BoundMode::Vanilla } else { BoundMode::Galois };
    let report = ObstructionReport::compute(&ws, &split, bound_mode, tensor)?;

    let provenance = RunProvenance {
        backend,
        p: approx.p,
        precision: approx.precision,
        trusted_precision: work.matrix.trusted_prec(),
        loss: work.matrix.loss(),
        truncation: approx.truncation,
        construction,
        dual_route_checked: construction.is_some(),
        recheck,
    };
    Ok(RunOutput { report, lifted, target, scaled, split, frobenius: approx, provenance })
}
