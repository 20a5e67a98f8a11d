//! Batch front-end: read a surface description from JSON, run one analysis,
//! emit a machine-readable JSON report.
//!
//! Exact rationals are rendered as `"num/den"` strings so reports survive
//! round-trips without precision loss. Exit codes: 0 success, 1 validation
//! failure, 2 falsified partition property, 3 resource limit.

use crate::counting::{self, DensityMode};
use crate::forms::{CheckStatus, SurfaceSpec};
use crate::picard;
use crate::quadfield::{self, FieldKind};
use crate::torsor;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// On-disk surface description.
///
/// ```json
/// {
///   "a": -1,
///   "factors": [[1, 0, 2], [1, 0, 3]],
///   "height_bound": 50,
///   "density_primes": [3, 5],
///   "truncation_levels": 3
/// }
/// ```
///
/// Factor coefficients are listed degree-descending in `u`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecFile {
    pub a: i64,
    pub factors: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density_primes: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation_levels: Option<u32>,
}

impl SpecFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn to_surface(&self) -> Result<SurfaceSpec> {
        let factors: Vec<&[i64]> = self.factors.iter().map(|f| f.as_slice()).collect();
        SurfaceSpec::from_i64(self.a, &factors)
    }
}

/// Which analysis to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Validate,
    Invariants,
    FieldInfo,
    TorsorClasses,
    PartitionCheck { bound: u64 },
    Count { bound: u64 },
    SumRa { x: u64 },
    Density { p: Option<u64>, levels: Option<u32> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Invariants => "invariants",
            Command::FieldInfo => "field-info",
            Command::TorsorClasses => "torsor-classes",
            Command::PartitionCheck { .. } => "partition-check",
            Command::Count { .. } => "count",
            Command::SumRa { .. } => "sum-ra",
            Command::Density { .. } => "density",
        }
    }
}

/// Runtime options shared by every command.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub seed: u64,
    pub jobs: Option<usize>,
    pub density_budget: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            jobs: None,
            density_budget: counting::default_density_budget(),
        }
    }
}

fn rat_str(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Top-level report written by every command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub spec: SpecFile,
    pub status: String,
    pub result: serde_json::Value,
}

/// Run a command against a parsed spec file. Returns the report and the
/// process exit code.
pub fn run(cmd: &Command, file: &SpecFile, opts: &RunOptions) -> (Report, i32) {
    let outcome = run_inner(cmd, file, opts);
    match outcome {
        Ok(value) => (
            Report {
                command: cmd.name().into(),
                spec: file.clone(),
                status: "ok".into(),
                result: value,
            },
            0,
        ),
        Err(e) => {
            let code = match &e {
                Error::ValidationFailed(_) | Error::InvalidSurface(_) | Error::InvalidForm(_) => 1,
                Error::PartitionFalsified(_) => 2,
                Error::FactorLimit { .. } | Error::ResourceLimit(_) => 3,
                _ => 1,
            };
            (
                Report {
                    command: cmd.name().into(),
                    spec: file.clone(),
                    status: format!("error: {}", e),
                    result: serde_json::Value::Null,
                },
                code,
            )
        }
    }
}

fn run_inner(cmd: &Command, file: &SpecFile, opts: &RunOptions) -> Result<serde_json::Value> {
    let spec = file.to_surface()?;
    if let Some(jobs) = opts.jobs {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Unsupported(e.to_string()))?;
        return pool.install(|| dispatch(cmd, file, &spec, opts));
    }
    dispatch(cmd, file, &spec, opts)
}

fn dispatch(
    cmd: &Command,
    file: &SpecFile,
    spec: &SurfaceSpec,
    opts: &RunOptions,
) -> Result<serde_json::Value> {
    // every command demands a valid surface; validate reports instead of failing
    if *cmd != Command::Validate {
        spec.ensure_valid()?;
    }
    match cmd {
        Command::Validate => {
            let report = crate::forms::validate_surface(spec);
            let checks: Vec<serde_json::Value> = report
                .checks
                .iter()
                .map(|c| {
                    let (status, detail) = match &c.status {
                        CheckStatus::Pass => ("pass", String::new()),
                        CheckStatus::Fail(m) => ("fail", m.clone()),
                        CheckStatus::Warn(m) => ("warn", m.clone()),
                    };
                    serde_json::json!({
                        "name": c.name,
                        "status": status,
                        "detail": detail,
                    })
                })
                .collect();
            if !report.passed() {
                // surface the failure through the exit code but keep the
                // detailed check list in the report
                let value = serde_json::json!({
                    "passed": false,
                    "checks": checks,
                    "summary": report.summary(),
                });
                return Err(Error::ValidationFailed(
                    serde_json::to_string(&value).unwrap_or_else(|_| report.summary()),
                ));
            }
            Ok(serde_json::json!({
                "passed": true,
                "checks": checks,
            }))
        }
        Command::Invariants => {
            let inv = picard::invariants(spec)?;
            let beta = inv.beta.agreed_value()?;
            Ok(serde_json::json!({
                "n": inv.n,
                "r": inv.r,
                "alpha": rat_str(&inv.alpha.alpha),
                "beta": beta.to_string(),
                "beta_breakdown": {
                    "closed_form": inv.beta.closed_form.to_string(),
                    "parity_quotient": inv.beta.parity_quotient.to_string(),
                    "tate_order": inv.beta.tate_order.to_string(),
                },
                "picard_ranks": {
                    "geometric": inv.rank_geometric,
                    "quadratic": inv.rank_quadratic,
                    "rational": inv.rank_rational,
                },
                "tate_h1_divisors": inv.tate.divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "anticanonical": inv.anticanonical.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "effective_cone_generators": inv.alpha.cone_generators.iter()
                    .map(|(x, y)| vec![rat_str(x), rat_str(y)])
                    .collect::<Vec<_>>(),
            }))
        }
        Command::FieldInfo => {
            let info = quadfield::field_info(spec.a())?;
            let mut value = serde_json::json!({
                "a": file.a,
                "fundamental_discriminant": info.fundamental_discriminant.to_string(),
                "class_number": info.h,
                "restricted_class_number": info.h_plus,
            });
            let obj = value.as_object_mut().unwrap();
            match &info.kind {
                FieldKind::Real {
                    unit,
                    unit_norm,
                    integral_unit,
                } => {
                    obj.insert(
                        "fundamental_unit".into(),
                        serde_json::json!({
                            "x": unit.x.to_string(),
                            "y": unit.y.to_string(),
                            "half": unit.half,
                            "norm": unit_norm,
                        }),
                    );
                    obj.insert(
                        "integral_unit".into(),
                        serde_json::json!([
                            integral_unit.0.to_string(),
                            integral_unit.1.to_string()
                        ]),
                    );
                    let pell = quadfield::negative_pell(spec.a())?;
                    obj.insert(
                        "negative_pell".into(),
                        serde_json::json!({
                            "solvable": pell.solvable,
                            "witness": pell.witness.map(|(x, y)| vec![x.to_string(), y.to_string()]),
                        }),
                    );
                }
                FieldKind::Imaginary { omega } => {
                    obj.insert("unit_count".into(), serde_json::json!(omega));
                }
            }
            Ok(value)
        }
        Command::TorsorClasses => {
            let sigma = torsor::sigma_set(spec);
            let ms = torsor::m_set(spec)?;
            let labels = torsor::label_set(spec)?;
            let effective = torsor::effective_label_set(spec)?;
            Ok(serde_json::json!({
                "sigma": sigma,
                "m": ms.iter().map(|m| m.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "classes": labels.iter().map(label_json).collect::<Vec<_>>(),
                "effective_classes": effective.iter().map(label_json).collect::<Vec<_>>(),
            }))
        }
        Command::PartitionCheck { bound } => {
            let report = torsor::partition_check(spec, *bound)?;
            let value = serde_json::json!({
                "bound": report.bound,
                "points": report.points,
                "per_class": per_label_json(&report.per_label),
                "zero_locus_points": report.zero_locus,
                "unknowns": report.unknowns,
                "violations": report.violations,
                "passed": report.passed(),
            });
            if !report.passed() {
                return Err(Error::PartitionFalsified(
                    serde_json::to_string(&value).unwrap_or_default(),
                ));
            }
            Ok(value)
        }
        Command::Count { bound } => {
            let report = counting::count_nb(spec, *bound)?;
            Ok(serde_json::json!({
                "bound": report.bound,
                "total": report.total,
                "raw_quintuples": report.raw_quintuples,
                "per_class": per_label_json(&report.per_label),
                "zero_locus_points": report.zero_locus,
                "unknowns": report.unknowns,
            }))
        }
        Command::SumRa { x } => {
            let bbox = file.height_bound.map(BigInt::from);
            let sum = counting::sum_r_a(spec, *x, bbox.as_ref())?;
            Ok(serde_json::json!({
                "x": x,
                "sum": sum.to_string(),
            }))
        }
        Command::Density { p, levels } => {
            // flags win; the spec file's density_primes / truncation_levels
            // provide the defaults
            let primes: Vec<u64> = match p {
                Some(p) => vec![*p],
                None => file.density_primes.clone().unwrap_or_else(|| vec![2, 3, 5]),
            };
            let levels = levels.or(file.truncation_levels).unwrap_or(2);
            // densities are per torsor class; report every effective class
            let labels = torsor::effective_label_set(spec)?;
            let mut runs = Vec::new();
            for p in &primes {
                let mut per_class = Vec::new();
                for label in &labels {
                    let lv = counting::local_density(
                        spec,
                        label,
                        *p,
                        levels,
                        opts.density_budget,
                        opts.seed,
                    )?;
                    per_class.push(serde_json::json!({
                        "class": label_json(label),
                        "levels": lv.iter().map(|d| {
                            let mode = match &d.mode {
                                DensityMode::Exhaustive => serde_json::json!("exhaustive"),
                                DensityMode::Sampled { samples, std_error } => serde_json::json!({
                                    "sampled": { "samples": samples, "std_error": std_error }
                                }),
                            };
                            serde_json::json!({
                                "level": d.level,
                                "value": rat_str(&d.value),
                                "ambiguous_tuples": d.ambiguous,
                                "mode": mode,
                            })
                        }).collect::<Vec<_>>(),
                    }));
                }
                runs.push(serde_json::json!({
                    "p": p,
                    "per_class": per_class,
                }));
            }
            Ok(serde_json::json!({
                "levels": levels,
                "primes": runs,
            }))
        }
    }
}

fn label_json(label: &torsor::TorsorLabel) -> serde_json::Value {
    serde_json::json!({
        "eps": label.eps,
        "m": label.m.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

fn per_label_json(map: &BTreeMap<torsor::TorsorLabel, u64>) -> Vec<serde_json::Value> {
    map.iter()
        .map(|(label, count)| {
            serde_json::json!({
                "class": label_json(label),
                "count": count,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desk_file() -> SpecFile {
        SpecFile {
            a: -1,
            factors: vec![vec![1, 0, 2], vec![1, 0, 3]],
            height_bound: None,
            density_primes: None,
            truncation_levels: None,
        }
    }

    #[test]
    fn invariants_report() {
        let (report, code) = run(&Command::Invariants, &desk_file(), &RunOptions::default());
        assert_eq!(code, 0, "{}", report.status);
        let r = &report.result;
        assert_eq!(r["alpha"], "1/2");
        assert_eq!(r["beta"], "2");
        assert_eq!(r["picard_ranks"]["geometric"], 6);
        assert_eq!(r["picard_ranks"]["quadratic"], 4);
        assert_eq!(r["picard_ranks"]["rational"], 2);
        assert_eq!(r["tate_h1_divisors"][0], "2");
    }

    #[test]
    fn validate_failure_exit_code() {
        let mut file = desk_file();
        file.a = 4;
        let (_, code) = run(&Command::Validate, &file, &RunOptions::default());
        assert_eq!(code, 1);
    }

    #[test]
    fn torsor_classes_report() {
        let (report, code) = run(
            &Command::TorsorClasses,
            &desk_file(),
            &RunOptions::default(),
        );
        assert_eq!(code, 0);
        let sigma = report.result["sigma"].as_array().unwrap();
        assert_eq!(sigma.len(), 2);
        let ms = report.result["m"].as_array().unwrap();
        assert_eq!(ms.len(), 1);
    }

    #[test]
    fn report_round_trip_and_determinism() {
        let (r1, _) = run(&Command::Invariants, &desk_file(), &RunOptions::default());
        let (r2, _) = run(&Command::Invariants, &desk_file(), &RunOptions::default());
        let s1 = serde_json::to_string_pretty(&r1).unwrap();
        let s2 = serde_json::to_string_pretty(&r2).unwrap();
        assert_eq!(s1, s2);
        let parsed: Report = serde_json::from_str(&s1).unwrap();
        assert_eq!(parsed.command, "invariants");
    }
}
