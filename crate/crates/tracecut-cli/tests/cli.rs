//! End-to-end checks of the command-line surface: file round-trips, flag
//! conflicts, exit codes, and the kernel path.

use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;

use tempfile::TempDir;
use tracecut_cli::cli::{ClusterArgs, KernelArg, ObjectiveArg, OutputFormat, PipelineKind};
use tracecut_cli::cluster::run_cluster;
use tracecut_cli::error::CliError;
use tracecut_cli::format::{emit_matrix, parse_matrix, parse_matrix_str, FileKind};
use tracecut::DenseMatrix;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tracecut"))
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    static DIR: OnceLock<TempDir> = OnceLock::new();
    let dir = DIR.get_or_init(|| TempDir::new().unwrap());
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn cluster_args(input: PathBuf, kind: PipelineKind, objective: ObjectiveArg, k: usize) -> ClusterArgs {
    ClusterArgs {
        input,
        kind,
        objective,
        k,
        seed: 0,
        phi: None,
        kernel: None,
        kernel_params: None,
        regularize_degrees: false,
        clamp_negative_kernel: false,
        symmetric_completion: false,
        output: None,
        format: OutputFormat::Json,
        timings: false,
    }
}

#[test]
fn matrix_file_round_trip_through_disk() {
    let mut w = DenseMatrix::zeros(3, 3);
    w[(0, 1)] = 1.0 / 3.0;
    w[(1, 0)] = 1.0 / 3.0;
    w[(1, 2)] = 0.1 + 0.2;
    w[(2, 1)] = 0.1 + 0.2;
    let path = write_temp("roundtrip.txt", &emit_matrix(FileKind::Unipartite, &w));
    let (file, back) = parse_matrix(&path, false).unwrap();
    assert_eq!(file.kind, FileKind::Unipartite);
    assert_eq!(back.data(), w.data());
}

#[test]
fn kernel_path_clusters_items() {
    // Items are columns: two tight groups in feature space.
    let text = "dense 2 4\n0.0 0.1 5.0 5.1\n0.0 0.1 5.0 4.9\n";
    let path = write_temp("kernel.txt", text);
    let mut args = cluster_args(path, PipelineKind::Bi, ObjectiveArg::Nassoc, 2);
    args.kernel = Some(KernelArg::Gauss);
    args.kernel_params = Some("1.0".into());
    let (report, _) = run_cluster(&args).unwrap();
    assert_eq!(report.kind, "bi-kernel");
    assert_eq!(report.assignments.len(), 4);
    assert_eq!(report.assignments[0], report.assignments[1]);
    assert_eq!(report.assignments[2], report.assignments[3]);
    assert_ne!(report.assignments[0], report.assignments[2]);
}

#[test]
fn augmented_and_direct_agree_on_values() {
    let text = "bipartite 3 2\n0 0 1.0\n0 1 0.5\n1 0 0.25\n1 1 1.0\n2 0 0.75\n2 1 0.1\n";
    let direct = {
        let path = write_temp("bi1.txt", text);
        run_cluster(&cluster_args(path, PipelineKind::Bi, ObjectiveArg::Nassoc, 2))
            .unwrap()
            .0
    };
    let augmented = {
        let path = write_temp("bi2.txt", text);
        run_cluster(&cluster_args(
            path,
            PipelineKind::BiAugmented,
            ObjectiveArg::Nassoc,
            2,
        ))
        .unwrap()
        .0
    };
    assert_eq!(direct.row_split, Some(3));
    assert_eq!(augmented.row_split, Some(3));
    for (a, b) in direct
        .eigen_or_singular_values
        .iter()
        .zip(&augmented.eigen_or_singular_values)
    {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn flag_conflicts_are_usage_errors() {
    let path = write_temp("conflict.txt", "dense 2 2\n1 0\n0 1\n");
    // phi without a generally-weighted objective
    let mut args = cluster_args(path.clone(), PipelineKind::Uni, ObjectiveArg::Nassoc, 2);
    args.phi = Some(path.clone());
    assert!(matches!(run_cluster(&args), Err(CliError::Usage(_))));
    // generally-weighted objective without phi
    let args = cluster_args(path.clone(), PipelineKind::Uni, ObjectiveArg::Gwassoc, 2);
    assert!(matches!(run_cluster(&args), Err(CliError::Usage(_))));
    // kernel on a directed pipeline
    let mut args = cluster_args(path.clone(), PipelineKind::Dir, ObjectiveArg::Rassoc, 2);
    args.kernel = Some(KernelArg::Gauss);
    args.kernel_params = Some("1.0".into());
    assert!(matches!(run_cluster(&args), Err(CliError::Usage(_))));
    // kernel without params
    let mut args = cluster_args(path, PipelineKind::Bi, ObjectiveArg::Rassoc, 2);
    args.kernel = Some(KernelArg::Gauss);
    assert!(matches!(run_cluster(&args), Err(CliError::Usage(_))));
}

#[test]
fn binary_exit_codes_are_distinct_per_category() {
    // usage conflict: kernel with --kind dir
    let input = write_temp("codes_dir.txt", "directed 2 2\n0 1 1.0\n1 0 1.0\n");
    let out = bin()
        .args(["cluster", "-i"])
        .arg(&input)
        .args([
            "--kind",
            "dir",
            "--objective",
            "rassoc",
            "-k",
            "1",
            "--kernel",
            "gauss",
            "--kernel-params",
            "1.0",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    // io: missing file
    let out = bin()
        .args([
            "cluster",
            "-i",
            "/nonexistent/matrix.txt",
            "--kind",
            "uni",
            "--objective",
            "nassoc",
            "-k",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // parse: bounds violation with a line number on stderr
    let input = write_temp("codes_bounds.txt", "bipartite 2 3\n0 5 1.0\n");
    let out = bin()
        .args(["cluster", "-i"])
        .arg(&input)
        .args(["--kind", "bi", "--objective", "nassoc", "-k", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 2"), "{stderr}");

    // validation: asymmetric unipartite file
    let input = write_temp("codes_asym.txt", "unipartite 2 2\n0 1 1.0\n1 0 0.5\n");
    let out = bin()
        .args(["cluster", "-i"])
        .arg(&input)
        .args(["--kind", "uni", "--objective", "nassoc", "-k", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));

    // domain: k larger than the vertex count
    let input = write_temp("codes_k.txt", "unipartite 2 2\n0 1 1.0\n1 0 1.0\n");
    let out = bin()
        .args(["cluster", "-i"])
        .arg(&input)
        .args(["--kind", "uni", "--objective", "nassoc", "-k", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(7));

    // domain: verify size cap
    let out = bin()
        .args(["verify", "--suite", "relaxation-gap", "--max-n", "13"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(7));
}

#[test]
fn output_file_matches_stdout_bytes() {
    let input = write_temp("outfile.txt", "unipartite 2 2\n0 1 1.0\n1 0 1.0\n");
    let outfile = write_temp("outfile.json", "");
    let run = |extra: &[&str]| {
        let mut cmd = bin();
        cmd.args(["cluster", "-i"]).arg(&input).args([
            "--kind",
            "uni",
            "--objective",
            "rassoc",
            "-k",
            "2",
            "--seed",
            "9",
        ]);
        cmd.args(extra);
        cmd.output().unwrap()
    };
    let stdout_run = run(&[]);
    assert_eq!(stdout_run.status.code(), Some(0));
    let to_file = run(&["-o", outfile.to_str().unwrap()]);
    assert_eq!(to_file.status.code(), Some(0));
    let file_bytes = std::fs::read(&outfile).unwrap();
    assert_eq!(stdout_run.stdout, file_bytes);
}

#[test]
fn verify_smoke_exits_zero() {
    let out = bin()
        .args([
            "verify",
            "--suite",
            "rowcol",
            "--trials",
            "10",
            "--seed",
            "11",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("PASS rowcol"), "{stdout}");
}

#[test]
fn verify_all_suites_pass_within_budget() {
    let start = std::time::Instant::now();
    let out = bin()
        .args([
            "verify",
            "--suite",
            "all",
            "--trials",
            "1000",
            "--seed",
            "7",
            "--max-n",
            "6",
        ])
        .output()
        .unwrap();
    let elapsed = start.elapsed();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.matches("PASS").count(), 5, "{stdout}");
    assert!(!stdout.contains("FAIL"), "{stdout}");
    assert!(
        elapsed < std::time::Duration::from_secs(60),
        "verify --suite all took {elapsed:?}"
    );
}

#[test]
fn dense_negative_data_rejected_for_graph_kinds() {
    // Negative entries are fine as kernel data but not as affinities.
    let input = write_temp("neg.txt", "dense 2 2\n0.0 -1.0\n-1.0 0.0\n");
    let args = cluster_args(input, PipelineKind::Uni, ObjectiveArg::Rassoc, 2);
    assert!(matches!(run_cluster(&args), Err(CliError::Validation(_))));
}

#[test]
fn regularize_degrees_flag_reaches_the_engine() {
    // Vertex 2 is isolated; nassoc fails without regularization.
    let text = "unipartite 3 3\n0 1 1.0\n1 0 1.0\n";
    let input = write_temp("isolated.txt", text);
    let args = cluster_args(input.clone(), PipelineKind::Uni, ObjectiveArg::Nassoc, 2);
    assert!(matches!(run_cluster(&args), Err(CliError::Domain(_))));
    let mut args = cluster_args(input, PipelineKind::Uni, ObjectiveArg::Nassoc, 2);
    args.regularize_degrees = true;
    let (report, _) = run_cluster(&args).unwrap();
    assert_eq!(report.assignments.len(), 3);
}

#[test]
fn tsv_and_json_render_the_same_report() {
    let input = write_temp("fmt.txt", "unipartite 2 2\n0 1 2.0\n1 0 2.0\n");
    let mut args = cluster_args(input, PipelineKind::Uni, ObjectiveArg::Ncuts, 2);
    args.format = OutputFormat::Tsv;
    let (report, tsv) = run_cluster(&args).unwrap();
    assert!(tsv.starts_with("objective_name\tncuts\n"));
    assert!((report.relaxed_value - report.discrete_value).abs() < 1e-9);
}

#[test]
fn two_components_match_enumeration_oracle() {
    // End-to-end against the exhaustive search: the report's discrete value
    // coincides with the brute-force optimum and with the relaxed value.
    let text = "unipartite 4 4\n0 1 1.0\n2 3 1.0\n";
    let input = write_temp("components.txt", text);
    let mut args = cluster_args(input, PipelineKind::Uni, ObjectiveArg::Nassoc, 2);
    args.symmetric_completion = true;
    args.seed = 3;
    let (report, _) = run_cluster(&args).unwrap();

    let mut w = DenseMatrix::zeros(4, 4);
    for (i, j) in [(0, 1), (2, 3)] {
        w[(i, j)] = 1.0;
        w[(j, i)] = 1.0;
    }
    let g = tracecut::AffinityGraph::unipartite(w).unwrap();
    let spec = tracecut::ObjectiveSpec::new(tracecut::Objective::NAssoc).unwrap();
    let best = tracecut::oracle::enumerate_best(&g, &spec, 2).unwrap();
    assert!((report.discrete_value - best.best_value).abs() < 1e-12);
    assert!((report.relaxed_value - 1.0).abs() < 1e-9);
    assert!((report.discrete_value - 1.0).abs() < 1e-12);
    let got = tracecut::Partition::new(report.assignments.clone(), 2).unwrap();
    assert!(got.same_blocks(&best.best_partition));
}

#[test]
fn identity_bipartite_coclusters_pairs() {
    let text = "bipartite 2 2\n0 0 1.0\n1 1 1.0\n";
    let input = write_temp("identity_bi.txt", text);
    let (report, _) = run_cluster(&cluster_args(
        input,
        PipelineKind::BiDirect,
        ObjectiveArg::Rassoc,
        2,
    ))
    .unwrap();
    // Feature i lands with item i: indices 0..2 are features, 2..4 items.
    assert_eq!(report.assignments[0], report.assignments[2]);
    assert_eq!(report.assignments[1], report.assignments[3]);
    assert_ne!(report.assignments[0], report.assignments[1]);
    assert!(report.discrete_value <= report.relaxed_value + 1e-6);
}

#[test]
fn report_bound_holds_across_kinds() {
    // discrete <= relaxed + 1e-6 on every pipeline kind.
    let cases: Vec<(String, PipelineKind, ObjectiveArg)> = vec![
        (
            "unipartite 3 3\n0 1 1.0\n1 0 1.0\n1 2 0.5\n2 1 0.5\n".into(),
            PipelineKind::Uni,
            ObjectiveArg::Rcuts,
        ),
        (
            "bipartite 3 2\n0 0 1.0\n1 0 0.5\n1 1 0.25\n2 1 1.0\n".into(),
            PipelineKind::BiAugmented,
            ObjectiveArg::Nassoc,
        ),
        (
            "directed 3 3\n0 1 1.0\n1 2 1.0\n2 0 1.0\n0 2 0.5\n".into(),
            PipelineKind::Dir,
            ObjectiveArg::Nassoc,
        ),
    ];
    for (idx, (text, kind, objective)) in cases.into_iter().enumerate() {
        let input = write_temp(&format!("bound_{idx}.txt"), &text);
        let (report, _) = run_cluster(&cluster_args(input, kind, objective, 2)).unwrap();
        assert!(
            report.discrete_value <= report.relaxed_value + 1e-6,
            "case {idx}: discrete {} > relaxed {}",
            report.discrete_value,
            report.relaxed_value
        );
    }
}

#[test]
fn parse_matrix_str_examples_from_docs() {
    let (_, m) = parse_matrix_str("unipartite 2 2\n0 1 1.0\n", true).unwrap();
    assert_eq!(m.data(), &[0.0, 1.0, 1.0, 0.0]);
    let (_, m) = parse_matrix_str("dense 1 1\n5.0\n", false).unwrap();
    assert_eq!(m.data(), &[5.0]);
}
