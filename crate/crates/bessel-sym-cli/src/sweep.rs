//! Grid expansion and the sweep executor.
//!
//! The grid is expanded up front in a fixed nesting order (identity, then
//! m, n, z, x, s, a, b, lambda — only the parameters the identity uses),
//! so record order is deterministic. Parallel execution partitions that
//! task list statically into `jobs` contiguous chunks and stitches results
//! back in chunk order: the report is byte-identical for any parallelism
//! degree. Domain errors (Gamma poles, divergent series) become skipped
//! records, never crashes.

use std::time::{Duration, Instant};

use bessel_sym_core::identities::{Identity, IdentityInstance, ParamKind, ParamValue, Residual};

use crate::config::{ConfigError, Scalar, SweepConfig};

/// What happened at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Evaluated(Residual),
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub identity: Identity,
    pub params: IdentityInstance,
    pub outcome: Outcome,
}

impl SweepRecord {
    pub fn has_warning(&self) -> bool {
        match &self.outcome {
            Outcome::Evaluated(r) => r
                .notes
                .as_deref()
                .is_some_and(|n| n.contains("cap hit") || n.contains("budget exhausted")),
            Outcome::Skipped { .. } => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[derive(serde::Serialize, serde::Deserialize)]
pub struct Summary {
    pub total: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped_poles: u64,
    pub warnings: u64,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub records: Vec<SweepRecord>,
    pub summary: Summary,
    pub duration: Duration,
}

/// One expanded grid point, ready to evaluate.
#[derive(Debug, Clone)]
struct Task {
    identity: Identity,
    params: IdentityInstance,
    tol: f64,
}

fn uses(identity: Identity, kind: ParamKind) -> bool {
    identity.required_params().contains(&kind)
}

/// Cartesian expansion in fixed parameter order.
fn expand_tasks(config: &SweepConfig) -> Vec<Task> {
    let unit_scalar = [None::<&Scalar>];
    let unit_int = [None::<u32>];

    let mut tasks = Vec::new();
    for &identity in &config.identities {
        let ints = |kind: ParamKind, range: &Option<crate::config::IntRange>| -> Vec<Option<u32>> {
            if uses(identity, kind) {
                range
                    .as_ref()
                    .expect("validated")
                    .values()
                    .map(Some)
                    .collect()
            } else {
                unit_int.to_vec()
            }
        };
        let scalars = |kind: ParamKind, grid: &Option<Vec<Scalar>>| -> Vec<Option<Scalar>> {
            if uses(identity, kind) {
                grid.as_ref()
                    .expect("validated")
                    .iter()
                    .cloned()
                    .map(Some)
                    .collect()
            } else {
                unit_scalar.iter().map(|_| None).collect()
            }
        };
        let ms = ints(ParamKind::M, &config.m);
        let ns = ints(ParamKind::N, &config.n);
        let zs = scalars(ParamKind::Z, &config.z);
        let xs = scalars(ParamKind::X, &config.x);
        let ss = scalars(ParamKind::S, &config.s);
        let as_ = scalars(ParamKind::A, &config.a);
        let bs = scalars(ParamKind::B, &config.b);
        let lambdas = scalars(ParamKind::Lambda, &config.lambda);
        let tol = config.tol_for(identity);

        for &m in &ms {
            for &n in &ns {
                for z in &zs {
                    for x in &xs {
                        for s in &ss {
                            for a in &as_ {
                                for b in &bs {
                                    for lambda in &lambdas {
                                        let a_value = a.as_ref().map(|sc| {
                                            if identity == Identity::Eq18 {
                                                ParamValue::Rational(sc.exact.clone())
                                            } else {
                                                ParamValue::Real(sc.value)
                                            }
                                        });
                                        tasks.push(Task {
                                            identity,
                                            params: IdentityInstance {
                                                m,
                                                n,
                                                z: z.as_ref().map(|sc| sc.value),
                                                x: x.as_ref().map(|sc| sc.value),
                                                s: s.as_ref().map(|sc| sc.value),
                                                a: a_value,
                                                b: b.as_ref().map(|sc| sc.value),
                                                lambda: lambda.as_ref().map(|sc| sc.value),
                                            },
                                            tol,
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    tasks
}

fn evaluate(task: &Task) -> SweepRecord {
    let outcome = match task.identity.evaluate(&task.params, task.tol) {
        Ok(residual) => Outcome::Evaluated(residual),
        Err(e) => Outcome::Skipped {
            reason: e.to_string(),
        },
    };
    SweepRecord {
        identity: task.identity,
        params: task.params.clone(),
        outcome,
    }
}

/// Run the sweep: every grid point exactly once, deterministic order.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport, ConfigError> {
    config.validate()?;
    let started = Instant::now();
    let tasks = expand_tasks(config);

    let records: Vec<SweepRecord> = if config.jobs <= 1 || tasks.len() < 2 {
        tasks.iter().map(evaluate).collect()
    } else {
        let workers = (config.jobs as usize).min(tasks.len());
        let chunk_len = tasks.len().div_ceil(workers);
        let chunks: Vec<&[Task]> = tasks.chunks(chunk_len).collect();
        let mut partials: Vec<Vec<SweepRecord>> = Vec::with_capacity(chunks.len());
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|chunk| scope.spawn(move || chunk.iter().map(evaluate).collect::<Vec<_>>()))
                .collect();
            for handle in handles {
                partials.push(handle.join().expect("worker panicked"));
            }
        });
        partials.into_iter().flatten().collect()
    };

    let mut summary = Summary {
        total: records.len() as u64,
        ..Default::default()
    };
    for record in &records {
        match &record.outcome {
            Outcome::Evaluated(r) if r.pass => summary.passed += 1,
            Outcome::Evaluated(_) => summary.failed += 1,
            Outcome::Skipped { .. } => summary.skipped_poles += 1,
        }
        if record.has_warning() {
            summary.warnings += 1;
        }
    }
    Ok(SweepReport {
        config: config.clone(),
        records,
        summary,
        duration: started.elapsed(),
    })
}
