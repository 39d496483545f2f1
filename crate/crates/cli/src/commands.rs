//! Grid construction and per-cell evaluation for each subcommand.
//!
//! Every grid is validated when built, so a bad flag is reported before any
//! work starts. Cells run on the current rayon pool and are collected in
//! grid order.

use besselid::gig::{
    check_logconvexity, check_turan, mc_moment_check, mc_verify_extension, mc_verify_lemma2,
    mc_verify_stability, KsReport, LOGCONVEX_FLOOR, TURAN_RELATIVE_SLACK,
};
use besselid::identities::{verify, verify_prudnikov, Identity, VerificationReport};
use besselid::specialfun::{
    verify_brychkov_numeric, verify_fk_identity_numeric, verify_k_identity_numeric,
};
use besselid::Error;
use rayon::prelude::*;
use serde_json::json;

use crate::grid::{parse_int_range, parse_real_grid};
use crate::params;
use crate::report::{Row, RowStatus};
use crate::{Family, NumericIdentity, SampleTest};

/// Smallest sample size `sample` accepts.
pub const MIN_COUNT: usize = 1000;

#[derive(Debug)]
pub enum CliError {
    Config(String),
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn ints(flag: &str, s: &str) -> Result<Vec<u32>, CliError> {
    parse_int_range(s).map_err(|e| config(format!("--{flag}: {e}")))
}

fn reals(flag: &str, s: &str) -> Result<Vec<f64>, CliError> {
    parse_real_grid(s).map_err(|e| config(format!("--{flag}: {e}")))
}

fn positive_reals(flag: &str, s: &str) -> Result<Vec<f64>, CliError> {
    let v = reals(flag, s)?;
    if let Some(bad) = v.iter().find(|&&x| x <= 0.0) {
        return Err(config(format!(
            "--{flag}: values must be positive, got {bad}"
        )));
    }
    Ok(v)
}

/// Numerical breakdowns become failing rows; anything else is a bad
/// parameter and aborts the run.
fn cell<T>(
    r: besselid::Result<T>,
    on_ok: impl FnOnce(T) -> Row,
    on_numeric: impl FnOnce(&Error) -> Row,
) -> Result<Row, CliError> {
    match r {
        Ok(v) => Ok(on_ok(v)),
        Err(e @ (Error::QuadratureNotConverged { .. } | Error::NonFinite)) => Ok(on_numeric(&e)),
        Err(e) => Err(config(e.to_string())),
    }
}

fn status(passed: bool) -> RowStatus {
    if passed {
        RowStatus::Pass
    } else {
        RowStatus::Fail
    }
}

fn run_cells<C: Sync>(
    cells: &[C],
    f: impl Fn(&C) -> Result<Row, CliError> + Sync + Send,
) -> Result<Vec<Row>, CliError> {
    cells.par_iter().map(f).collect()
}

pub struct VerifyGrid {
    identity: Identity,
    /// `None` for the single-variable Prudnikov sum.
    cells: Vec<(Option<usize>, u32)>,
}

impl VerifyGrid {
    pub fn new(
        family: Family,
        m: Option<&str>,
        n: &str,
        max_m: u32,
        max_n: u32,
    ) -> Result<Self, CliError> {
        let identity = match family {
            Family::General => Identity::GeneralBessel,
            Family::Convolution => Identity::ConvolutionForm,
            Family::Theta => Identity::Theta,
            Family::F => Identity::FMultinomial,
            Family::Laguerre => Identity::Laguerre,
            Family::Prudnikov => Identity::Prudnikov,
        };
        let ns = ints("n", n)?;
        if !identity.takes_m() {
            if m.is_some() {
                return Err(config(format!("{identity} does not take --m")));
            }
            return Ok(VerifyGrid {
                identity,
                cells: ns.into_iter().map(|n| (None, n)).collect(),
            });
        }
        let ms = ints(
            "m",
            m.ok_or_else(|| config(format!("{identity} requires --m")))?,
        )?;
        if let Some(&bad) = ms.iter().find(|&&m| m < 2) {
            return Err(config(format!("m >= 2 required, got m = {bad}")));
        }
        if let Some(&bad) = ms.iter().find(|&&m| m > max_m) {
            return Err(config(format!(
                "m = {bad} exceeds the ceiling {max_m}; raise it with --max-m"
            )));
        }
        if let Some(&bad) = ns.iter().find(|&&n| n > max_n) {
            return Err(config(format!(
                "n = {bad} exceeds the ceiling {max_n}; raise it with --max-n"
            )));
        }
        let cells = ms
            .iter()
            .flat_map(|&m| ns.iter().map(move |&n| (Some(m as usize), n)))
            .collect();
        Ok(VerifyGrid { identity, cells })
    }

    pub fn run(&self) -> Result<Vec<Row>, CliError> {
        run_cells(&self.cells, |&(m, n)| {
            let r = match m {
                Some(m) => verify(self.identity, m, n),
                None => verify_prudnikov(n),
            };
            r.map(verification_row).map_err(|e| config(e.to_string()))
        })
    }
}

fn verification_row(r: VerificationReport) -> Row {
    let mut params = params! {"n" => r.n};
    if let Some(m) = r.m {
        params.insert("m".into(), json!(m));
    }
    Row {
        identity: r.identity.name().to_string(),
        params,
        status: status(r.passed()),
        metric: r.max_difference_f64(),
        tolerance: 0.0,
        seed: None,
        witness: serde_json::to_value(&r.witness).ok(),
    }
}

pub struct NumericGrid {
    identity: NumericIdentity,
    cells: Vec<(usize, u32, Vec<f64>)>,
    tol: f64,
}

impl NumericGrid {
    pub fn new(
        identity: NumericIdentity,
        m: Option<&str>,
        n: &str,
        z: &str,
        tol: f64,
    ) -> Result<Self, CliError> {
        if !tol.is_finite() || tol <= 0.0 {
            return Err(config(format!(
                "--tol must be positive and finite, got {tol}"
            )));
        }
        let ns = ints("n", n)?;
        let zs = positive_reals("z", z)?;
        let ms = match (identity, m) {
            (_, Some(m)) => ints("m", m)?,
            (NumericIdentity::Fk, None) => vec![zs.len() as u32],
            (_, None) => return Err(config("--m is required")),
        };
        if let Some(&bad) = ms.iter().find(|&&m| m < 2) {
            return Err(config(format!("m >= 2 required, got m = {bad}")));
        }
        let mut cells = Vec::new();
        for &m in &ms {
            let m = m as usize;
            match identity {
                NumericIdentity::Fk => {
                    let z_vec = if zs.len() == m {
                        zs.clone()
                    } else if zs.len() == 1 {
                        vec![zs[0]; m]
                    } else {
                        return Err(config(format!(
                            "fk needs one z or exactly m = {m} values, got {}",
                            zs.len()
                        )));
                    };
                    cells.extend(ns.iter().map(|&n| (m, n, z_vec.clone())));
                }
                _ => {
                    for &n in &ns {
                        cells.extend(zs.iter().map(|&z| (m, n, vec![z])));
                    }
                }
            }
        }
        Ok(NumericGrid {
            identity,
            cells,
            tol,
        })
    }

    pub fn run(&self) -> Result<Vec<Row>, CliError> {
        let name = match self.identity {
            NumericIdentity::Brychkov => "brychkov",
            NumericIdentity::K => "k_identity",
            NumericIdentity::Fk => "fk_identity",
        };
        run_cells(&self.cells, |(m, n, z)| {
            let (m, n) = (*m, *n);
            let (r, z_param) = match self.identity {
                NumericIdentity::Brychkov => (verify_brychkov_numeric(m, n, z[0]), json!(z[0])),
                NumericIdentity::K => (verify_k_identity_numeric(m, n, z[0]), json!(z[0])),
                NumericIdentity::Fk => (verify_fk_identity_numeric(n, z), json!(z)),
            };
            let row = |metric: f64, witness| Row {
                identity: name.to_string(),
                params: params! {"m" => m, "n" => n, "z" => z_param.clone()},
                status: status(metric <= self.tol),
                metric,
                tolerance: self.tol,
                seed: None,
                witness,
            };
            cell(
                r,
                |residual| row(residual, None),
                |e| row(f64::INFINITY, Some(json!({"error": e.to_string()}))),
            )
        })
    }
}

pub struct SampleGrid {
    test: SampleTest,
    zs: Vec<f64>,
    ns: Vec<u32>,
    count: usize,
    seed: u64,
}

impl SampleGrid {
    pub fn new(
        test: SampleTest,
        z: &str,
        n: Option<&str>,
        count: usize,
        seed: u64,
    ) -> Result<Self, CliError> {
        if count < MIN_COUNT {
            return Err(config(format!(
                "--count must be at least {MIN_COUNT}, got {count}"
            )));
        }
        let zs = positive_reals("z", z)?;
        let ns = match (test, n) {
            (SampleTest::Moments, Some(n)) => ints("n", n)?,
            (SampleTest::Moments, None) => return Err(config("moments requires --n")),
            (_, Some(_)) => return Err(config("--n only applies to the moments test")),
            (_, None) => Vec::new(),
        };
        match test {
            SampleTest::Stability | SampleTest::Lemma2 if zs.len() != 2 => {
                return Err(config(format!(
                    "--z needs exactly two values, got {}",
                    zs.len()
                )))
            }
            SampleTest::Extension if zs.len() < 2 => {
                return Err(config("--z needs at least two values"))
            }
            _ => {}
        }
        Ok(SampleGrid {
            test,
            zs,
            ns,
            count,
            seed,
        })
    }

    pub fn run(&self) -> Result<Vec<Row>, CliError> {
        let (count, seed) = (self.count, self.seed);
        let ks = |r: besselid::Result<KsReport>| {
            r.map(|r| ks_row(&r)).map_err(|e| config(e.to_string()))
        };
        match self.test {
            SampleTest::Stability => Ok(vec![ks(mc_verify_stability(
                self.zs[0], self.zs[1], count, seed,
            ))?]),
            SampleTest::Lemma2 => Ok(vec![ks(mc_verify_lemma2(
                self.zs[0], self.zs[1], count, seed,
            ))?]),
            SampleTest::Extension => Ok(vec![ks(mc_verify_extension(&self.zs, count, seed))?]),
            SampleTest::Moments => {
                let cells: Vec<(f64, u32)> = self
                    .zs
                    .iter()
                    .flat_map(|&z| self.ns.iter().map(move |&n| (z, n)))
                    .collect();
                run_cells(&cells, |&(z, n)| {
                    let r =
                        mc_moment_check(z, n, count, seed).map_err(|e| config(e.to_string()))?;
                    Ok(Row {
                        identity: "moments".into(),
                        params: params! {
                            "z" => r.z,
                            "n" => r.n,
                            "count" => r.count,
                            "empirical" => r.empirical,
                            "target" => r.target,
                            "standard_error" => r.standard_error,
                        },
                        status: status(r.passed),
                        metric: (r.empirical - r.target).abs(),
                        tolerance: 3.0 * r.standard_error,
                        seed: Some(r.seed),
                        witness: None,
                    })
                })
            }
        }
    }
}

fn ks_row(r: &KsReport) -> Row {
    Row {
        identity: r.test.to_string(),
        params: params! {
            "z" => r.z,
            "count" => r.count,
            "exact_mean" => r.exact_mean,
            "sum_mean" => r.sum_mean,
            "direct_mean" => r.direct_mean,
        },
        status: status(r.passed),
        metric: r.statistic,
        tolerance: r.threshold,
        seed: Some(r.seed),
        witness: None,
    }
}

pub enum InequalityGrid {
    Turan(Vec<[f64; 4]>),
    LogConvex { nu: Vec<f64>, zs: Vec<f64> },
}

impl InequalityGrid {
    pub fn turan(x: &str, y: &str, p: &str, z: &str) -> Result<Self, CliError> {
        let (xs, ys, ps, zs) = (
            reals("x", x)?,
            reals("y", y)?,
            reals("p", p)?,
            positive_reals("z", z)?,
        );
        let mut cells = Vec::new();
        for &x in &xs {
            for &y in &ys {
                for &p in &ps {
                    for &z in &zs {
                        cells.push([x, y, p, z]);
                    }
                }
            }
        }
        Ok(InequalityGrid::Turan(cells))
    }

    pub fn logconvex(nu: &str, z: &str) -> Result<Self, CliError> {
        let nu = reals("nu", nu)?;
        if nu.len() < 3 {
            return Err(config("--nu needs at least three orders"));
        }
        if nu.windows(2).any(|w| w[1] <= w[0]) {
            return Err(config("--nu must be strictly increasing"));
        }
        Ok(InequalityGrid::LogConvex {
            nu,
            zs: positive_reals("z", z)?,
        })
    }

    pub fn run(&self) -> Result<Vec<Row>, CliError> {
        match self {
            InequalityGrid::Turan(cells) => run_cells(cells, |&[x, y, p, z]| {
                let r = check_turan(x, y, p, z).map_err(|e| config(e.to_string()))?;
                Ok(Row {
                    identity: "turan".into(),
                    params: params! {
                        "x" => r.x, "y" => r.y, "p" => r.p, "q" => r.q, "z" => r.z,
                        "lhs" => r.lhs, "rhs" => r.rhs,
                    },
                    status: status(r.passed),
                    metric: r.lhs / r.rhs - 1.0,
                    tolerance: TURAN_RELATIVE_SLACK,
                    seed: None,
                    witness: None,
                })
            }),
            InequalityGrid::LogConvex { nu, zs } => run_cells(zs, |&z| {
                let r = check_logconvexity(nu, z).map_err(|e| config(e.to_string()))?;
                if r.triples_checked == 0 {
                    return Err(config("--nu has no equally spaced triples"));
                }
                Ok(Row {
                    identity: "logconvexity".into(),
                    params: params! {
                        "z" => r.z,
                        "nu_min" => nu[0],
                        "nu_max" => nu[nu.len() - 1],
                        "triples_checked" => r.triples_checked,
                        "worst_nu" => r.worst_nu,
                    },
                    status: status(r.passed),
                    metric: r.min_second_difference,
                    tolerance: -LOGCONVEX_FLOOR,
                    seed: None,
                    witness: None,
                })
            }),
        }
    }
}
