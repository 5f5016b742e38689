//! The `verify` subcommand: seeded self-checks of the trace-maximization
//! claims, printed one pass/fail line per property.

use tracecut::engine::{
    build_bipartite_m, embed_bipartite_augmented, embed_bipartite_direct, normalize_bipartite,
    row_col_embeddings,
};
use tracecut::graph::{AffinityGraph, Objective, ObjectiveSpec};
use tracecut::linalg::eigh;
use tracecut::oracle::{
    kyfan_rect_check, kyfan_symmetric_check, random_connected_affinity, random_matrix,
    random_symmetric_matrix, relaxation_gap, ENUMERATION_CAP,
};
use tracecut::rng::{mix_seed, SplitMix64};
use tracecut::Error;

use crate::cli::{Suite, VerifyArgs};
use crate::error::CliError;

const TOL: f64 = 1e-9;

/// Pass/fail lines for every property that ran.
pub struct VerifyOutcome {
    pub all_pass: bool,
    pub lines: Vec<String>,
}

struct Recorder {
    lines: Vec<String>,
    all_pass: bool,
}

impl Recorder {
    fn new() -> Self {
        Self {
            lines: Vec::new(),
            all_pass: true,
        }
    }

    fn record(&mut self, name: &str, pass: bool, detail: String) {
        self.all_pass &= pass;
        let verdict = if pass { "PASS" } else { "FAIL" };
        self.lines.push(format!("{verdict} {name}: {detail}"));
    }
}

pub fn run_verify(args: &VerifyArgs) -> Result<VerifyOutcome, CliError> {
    if args.max_n > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            n: args.max_n,
            max: ENUMERATION_CAP,
        }
        .into());
    }
    let mut rec = Recorder::new();
    let run_all = args.suite == Suite::All;
    if run_all || args.suite == Suite::Kyfan {
        kyfan_suite(args, &mut rec)?;
    }
    if run_all || args.suite == Suite::BipartiteEquiv {
        bipartite_equiv_suite(args, &mut rec)?;
    }
    if run_all || args.suite == Suite::Rowcol {
        rowcol_suite(args, &mut rec)?;
    }
    if run_all || args.suite == Suite::RelaxationGap {
        relaxation_gap_suite(args, &mut rec)?;
    }
    Ok(VerifyOutcome {
        all_pass: rec.all_pass,
        lines: rec.lines,
    })
}

fn nassoc() -> ObjectiveSpec {
    ObjectiveSpec::new(Objective::NAssoc).expect("nassoc needs no weights")
}

/// Symmetric and rectangular trace maximization against random
/// orthonormal competitors, plus the dual-route agreement.
fn kyfan_suite(args: &VerifyArgs, rec: &mut Recorder) -> Result<(), CliError> {
    const INSTANCES: u64 = 20;

    let mut max_residual: f64 = 0.0;
    let mut max_excess = f64::NEG_INFINITY;
    for inst in 0..INSTANCES {
        let mut rng = SplitMix64::new(mix_seed(args.seed, 0x100 + inst));
        let h = random_symmetric_matrix(&mut rng, 8, -1.0, 1.0);
        for k in [1usize, 2, 4] {
            let trial_seed = mix_seed(args.seed, 0x200 + inst * 8 + k as u64);
            let report = kyfan_symmetric_check(&h, k, args.trials, trial_seed)?;
            max_residual = max_residual.max((report.eigen_trace - report.eigenvalue_sum).abs());
            max_excess = max_excess.max(report.max_random_trace - report.eigen_trace);
        }
    }
    rec.record(
        "kyfan-symmetric",
        max_residual <= TOL && max_excess <= TOL,
        format!(
            "{INSTANCES} instances 8x8, k in {{1,2,4}}, {} trials each: \
             max |trace - sum(lambda)| = {max_residual:.3e}, max competitor excess = {max_excess:.3e}",
            args.trials
        ),
    );

    let mut max_route_gap: f64 = 0.0;
    let mut max_sigma_gap: f64 = 0.0;
    let mut max_excess = f64::NEG_INFINITY;
    for inst in 0..INSTANCES {
        let mut rng = SplitMix64::new(mix_seed(args.seed, 0x300 + inst));
        let r = random_matrix(&mut rng, 5, 4, -1.0, 1.0);
        for k in [1usize, 2] {
            let trial_seed = mix_seed(args.seed, 0x400 + inst * 8 + k as u64);
            let report = kyfan_rect_check(&r, k, args.trials, trial_seed)?;
            max_route_gap = max_route_gap.max((report.svd_trace - report.psi_trace).abs());
            max_sigma_gap = max_sigma_gap.max((report.svd_trace - report.sigma_sum).abs());
            max_excess = max_excess.max(report.max_random_trace - report.svd_trace);
        }
    }
    rec.record(
        "kyfan-rectangular",
        max_route_gap <= TOL && max_sigma_gap <= TOL && max_excess <= TOL,
        format!(
            "{INSTANCES} instances 5x4, k in {{1,2}}, {} trials each: \
             max |svd - psi route| = {max_route_gap:.3e}, max |trace - sum(sigma)| = {max_sigma_gap:.3e}, \
             max competitor excess = {max_excess:.3e}",
            args.trials
        ),
    );
    Ok(())
}

/// Eigenvalues of the normalized block matrix match the singular values of
/// the normalized data matrix, and the stacked vectors are eigenvectors.
fn bipartite_equiv_suite(args: &VerifyArgs, rec: &mut Recorder) -> Result<(), CliError> {
    const INSTANCES: u64 = 30;
    let spec = nassoc();
    let mut max_value_gap: f64 = 0.0;
    let mut max_residual: f64 = 0.0;
    for inst in 0..INSTANCES {
        let mut rng = SplitMix64::new(mix_seed(args.seed, 0x500 + inst));
        let a = random_matrix(&mut rng, 6, 4, 0.1, 1.0);
        for k in 1..=4usize {
            let aug = embed_bipartite_augmented(&a, &spec, k)?;
            let dir = embed_bipartite_direct(&a, &spec, k)?;
            for i in 0..k {
                max_value_gap = max_value_gap.max((aug.values[i] - dir.values[i]).abs());
            }
            let mbar = build_bipartite_m(&normalize_bipartite(&a, &spec)?)?;
            for j in 0..k {
                let col = dir.vectors.col(j);
                let mv = mbar.matvec(&col);
                let resid: f64 = mv
                    .iter()
                    .zip(&col)
                    .map(|(m, c)| (m - dir.values[j] * c) * (m - dir.values[j] * c))
                    .sum::<f64>()
                    .sqrt();
                max_residual = max_residual.max(resid);
            }
        }
    }
    rec.record(
        "bipartite-equiv",
        max_value_gap <= TOL && max_residual <= TOL,
        format!(
            "{INSTANCES} instances 6x4 nassoc, k in 1..=4: \
             max |lambda - sigma| = {max_value_gap:.3e}, max stacked eigen-residual = {max_residual:.3e}"
        ),
    );
    Ok(())
}

/// Singular values squared match both Gram eigendecompositions, and the
/// column embedding derives from the row embedding up to sign.
fn rowcol_suite(args: &VerifyArgs, rec: &mut Recorder) -> Result<(), CliError> {
    const INSTANCES: u64 = 30;
    let spec = nassoc();
    let mut max_rel_gap: f64 = 0.0;
    let mut max_cross: f64 = 0.0;
    let mut simple_instances = 0usize;
    for inst in 0..INSTANCES {
        let mut rng = SplitMix64::new(mix_seed(args.seed, 0x600 + inst));
        let (rows, cols) = if inst % 2 == 0 { (5, 4) } else { (4, 6) };
        let a = random_matrix(&mut rng, rows, cols, 0.1, 1.0);
        let k = 3usize;
        let rc = row_col_embeddings(&a, &spec, k)?;
        let abar = normalize_bipartite(&a, &spec)?;
        let row_gram = abar.matmul(&abar.transpose());
        let col_gram = abar.transpose().matmul(&abar);
        let er = eigh(&row_gram, k)?;
        let ec = eigh(&col_gram, k)?;
        let scale = er.values[0].abs().max(1e-12);
        for i in 0..k {
            let sq = rc.values[i] * rc.values[i];
            max_rel_gap = max_rel_gap.max((sq - er.values[i]).abs() / scale);
            max_rel_gap = max_rel_gap.max((sq - ec.values[i]).abs() / scale);
        }
        let simple = rc.values.windows(2).all(|w| (w[0] - w[1]).abs() > 1e-6)
            && rc.values[k - 1] > 1e-6;
        if simple {
            simple_instances += 1;
            let cross = abar.transpose().matmul(&rc.x);
            for j in 0..k {
                let derived: Vec<f64> = cross.col(j).iter().map(|v| v / rc.values[j]).collect();
                let direct = rc.y.col(j);
                let plus: f64 = direct
                    .iter()
                    .zip(&derived)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                let minus: f64 = direct
                    .iter()
                    .zip(&derived)
                    .map(|(a, b)| (a + b) * (a + b))
                    .sum::<f64>()
                    .sqrt();
                max_cross = max_cross.max(plus.min(minus));
            }
        }
    }
    rec.record(
        "rowcol",
        max_rel_gap <= TOL && max_cross <= 1e-8 && simple_instances >= 20,
        format!(
            "{INSTANCES} instances (5x4 / 4x6) nassoc, k = 3: \
             max relative |sigma^2 - lambda| = {max_rel_gap:.3e}, \
             max cross-derivation mismatch = {max_cross:.3e} over {simple_instances} simple spectra"
        ),
    );
    Ok(())
}

/// The relaxed optimum dominates the exhaustive discrete optimum on seeded
/// connected graphs for every objective.
fn relaxation_gap_suite(args: &VerifyArgs, rec: &mut Recorder) -> Result<(), CliError> {
    const PER_SIZE: u64 = 10;
    let mut min_gap = f64::INFINITY;
    let mut checked = 0usize;
    let max_n = args.max_n.max(4);
    for n in 4..=max_n {
        for inst in 0..PER_SIZE {
            let mut rng = SplitMix64::new(mix_seed(args.seed, 0x700 + (n as u64) * 64 + inst));
            let w = random_connected_affinity(&mut rng, n);
            let g = AffinityGraph::unipartite(w)?;
            for name in Objective::ALL {
                let spec = if name.is_general_weighted() {
                    let phi: Vec<f64> = (0..n).map(|i| 1.0 + i as f64 / 2.0).collect();
                    ObjectiveSpec::with_weights(name, phi)?
                } else {
                    ObjectiveSpec::new(name)?
                };
                for k in [2usize, 3] {
                    if k > n {
                        continue;
                    }
                    let report = relaxation_gap(&g, &spec, k)?;
                    min_gap = min_gap.min(report.gap);
                    checked += 1;
                }
            }
        }
    }
    rec.record(
        "relaxation-gap",
        min_gap >= -TOL,
        format!(
            "{checked} (graph, objective, k) cases on 4..={max_n} vertices: min gap = {min_gap:.3e}"
        ),
    );
    Ok(())
}
