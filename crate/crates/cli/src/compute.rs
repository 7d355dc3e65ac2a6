//! Operator export for `compute`, `spectrum` and `tq`.

use hechain::json::ElementJson;
use hechain::rmatrep::{spectrum, MatrixChain, RepMatrix, SuperSpace};
use hechain::scalar::{Scalar, Var};
use hechain::tlblob::{q_operator, tq_residual_free};
use hechain::{AlgebraError, BlobAlgebra, BoundaryMode, Chain, HeckeAlgebra};
use serde_json::{json, Map, Value};

use crate::config::{Boundary, ComputeKind, SuiteConfig};
use crate::suites::tq_default_q;
use crate::CliError;

fn x() -> Scalar {
    Scalar::var(Var::X)
}

fn hecke(cfg: &SuiteConfig, rank: usize) -> Result<HeckeAlgebra, AlgebraError> {
    match &cfg.q {
        None => Ok(HeckeAlgebra::generic(rank)),
        Some(q) => HeckeAlgebra::new(rank, q.clone()),
    }
}

fn affine(cfg: &SuiteConfig, rank: usize, mode: &BoundaryMode) -> Result<hechain::AffineAlgebra, AlgebraError> {
    let h = hecke(cfg, rank)?;
    match mode {
        BoundaryMode::QuadraticBlob { .. } => hechain::AffineAlgebra::with_quadratic(
            h,
            Scalar::var(Var::trace_constant(1).expect("D1 variable")),
            Scalar::var(Var::DELTA),
        ),
        _ => hechain::AffineAlgebra::new(h, 4),
    }
}

fn element<T>(e: &T) -> Value
where
    for<'a> &'a T: Into<ElementJson>,
{
    serde_json::to_value(e.into()).expect("element json")
}

fn matrix(m: &RepMatrix) -> Value {
    serde_json::to_value(m).expect("matrix json")
}

/// A matrix chain for `--model`; the representation needs a rational `q`.
fn matrix_chain(cfg: &SuiteConfig, space: SuperSpace, sites: usize) -> Result<MatrixChain, CliError> {
    let q = cfg.q.clone().ok_or_else(|| CliError::Config("--model needs a rational --q".into()))?;
    Ok(MatrixChain::new(space, q, sites, None)?)
}

fn free_only(cfg: &SuiteConfig, what: &str) -> Result<(), CliError> {
    match cfg.boundary {
        None | Some(Boundary::Free) => Ok(()),
        Some(_) => Err(CliError::Config(format!("{what} supports the free boundary only"))),
    }
}

fn header(kind: &str, cfg: &SuiteConfig, n: usize) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("kind".into(), json!(kind));
    m.insert("n".into(), json!(n));
    m.insert("q".into(), json!(cfg.q_label()));
    m.insert("boundary".into(), json!(cfg.boundary.as_ref().map_or_else(|| "free".to_string(), Boundary::label)));
    if let Some(sp) = cfg.model {
        m.insert("model".into(), json!(sp.label()));
    }
    m
}

pub fn compute(kind: ComputeKind, cfg: &SuiteConfig) -> Result<Value, CliError> {
    let boundary = cfg.boundary.clone().unwrap_or(Boundary::Free);
    let mode = boundary.mode(&cfg.xi_value());
    match kind {
        ComputeKind::Tau => {
            let n = cfg.n.unwrap_or(2);
            let mut out = header("tau", cfg, n);
            let value = match (&boundary, cfg.model) {
                (Boundary::Free, None) => element(&hecke(cfg, n + 1)?.free_transfer(n, &x())?),
                (Boundary::Free, Some(sp)) => {
                    let h = hecke(cfg, n + 1)?;
                    let ch = matrix_chain(cfg, sp, n + 1)?;
                    matrix(&ch.rho_hecke(&h, &h.free_transfer(n, &x())?)?)
                }
                (_, Some(_)) => return Err(CliError::Config("--model supports the free boundary only".into())),
                (_, None) => element(&affine(cfg, n + 1, &mode)?.transfer(n, &x(), &mode)?),
            };
            out.insert("tau".into(), value);
            Ok(Value::Object(out))
        }
        ComputeKind::Charges => {
            free_only(cfg, "compute charges")?;
            let n = cfg.n.unwrap_or(3);
            if n < 2 {
                return Err(CliError::Config("charges need n ≥ 2".into()));
            }
            let h = hecke(cfg, n)?;
            let charges = h.charges(n)?;
            let list: Vec<Value> = match cfg.model {
                None => charges.iter().map(element).collect(),
                Some(sp) => {
                    let ch = matrix_chain(cfg, sp, n)?;
                    charges.iter().map(|j| ch.rho_hecke(&h, j).map(|m| matrix(&m))).collect::<Result<_, _>>()?
                }
            };
            let mut out = header("charges", cfg, n);
            out.insert("charges".into(), Value::Array(list));
            Ok(Value::Object(out))
        }
        ComputeKind::Hamiltonian => {
            let n = cfg.n.unwrap_or(3);
            let value = match cfg.model {
                Some(sp) => {
                    free_only(cfg, "--model")?;
                    matrix(&matrix_chain(cfg, sp, n)?.free_hamiltonian()?)
                }
                None => element(&affine(cfg, n, &mode)?.hamiltonian(n, &mode)?),
            };
            let mut out = header("hamiltonian", cfg, n);
            out.insert("hamiltonian".into(), value);
            Ok(Value::Object(out))
        }
        ComputeKind::Qop => {
            free_only(cfg, "compute qop")?;
            let n = cfg.n.unwrap_or(2);
            let k = cfg.k.unwrap_or(1);
            let q = cfg.q.clone().unwrap_or_else(tq_default_q);
            let chain = Chain::normalized(BlobAlgebra::temperley_lieb(n + k + 1, q.clone())?, n)?;
            let z = Scalar::var(Var::Z);
            let qop = q_operator(&chain, k, &z)?;
            let residual = tq_residual_free(&chain, k, &z)?;
            let mut out = header("qop", cfg, n);
            out.insert("N".into(), json!(n));
            out.insert("k".into(), json!(k));
            out.insert("q".into(), json!(q.to_string()));
            out.insert("qop".into(), element(&qop));
            out.insert("residual".into(), element(&residual));
            out.insert("pass".into(), json!(residual.is_zero()));
            Ok(Value::Object(out))
        }
    }
}

/// `{model, sites, q, boundary, eigenvalues: [{value, multiplicity, approx}]}`.
pub fn spectrum_report(cfg: &SuiteConfig) -> Result<Value, CliError> {
    free_only(cfg, "spectrum")?;
    let space = cfg.model.unwrap_or(SuperSpace::gl(2)?);
    let sites = cfg.n.unwrap_or(3);
    let q = cfg.q.clone().unwrap_or_else(|| Scalar::from_int(2));
    let ch = MatrixChain::new(space, q.clone(), sites, None)?;
    let spec = spectrum(&ch.free_hamiltonian()?)?;
    let eigenvalues: Vec<Value> = spec
        .iter()
        .map(|e| {
            let value = e.exact.as_ref().map_or_else(|| format!("{:.12}", e.value), ToString::to_string);
            json!({ "value": value, "multiplicity": e.multiplicity, "approx": format!("{:.15e}", e.value) })
        })
        .collect();
    Ok(json!({
        "model": space.label(),
        "sites": sites,
        "q": q.to_string(),
        "boundary": "free",
        "eigenvalues": eigenvalues,
    }))
}

/// `{N, k, q, system: [{k, qop, residual, pass}], pass}` for levels `1..=k`.
pub fn tq_report(cfg: &SuiteConfig) -> Result<(Value, bool), CliError> {
    free_only(cfg, "tq")?;
    let n = cfg.n.unwrap_or(2);
    let top = cfg.k.unwrap_or(2);
    let q = cfg.q.clone().unwrap_or_else(tq_default_q);
    let z = Scalar::var(Var::Z);
    let mut system = Vec::new();
    let mut pass = true;
    for k in 1..=top {
        let chain = Chain::normalized(BlobAlgebra::temperley_lieb(n + k + 1, q.clone())?, n)?;
        let residual = tq_residual_free(&chain, k, &z)?;
        pass &= residual.is_zero();
        system.push(json!({
            "k": k,
            "qop": element(&q_operator(&chain, k, &z)?),
            "residual": element(&residual),
            "pass": residual.is_zero(),
        }));
    }
    let value = json!({ "N": n, "k": top, "q": q.to_string(), "system": system, "pass": pass });
    Ok((value, pass))
}
