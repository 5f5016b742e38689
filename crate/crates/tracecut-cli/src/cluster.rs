//! The `cluster` subcommand: load matrix, build objective, embed, round,
//! report.

use std::path::Path;
use std::time::Instant;

use tracecut::engine::{
    embed_bipartite_augmented, embed_bipartite_direct, embed_directed, embed_unipartite,
    SpectralEmbedding,
};
use tracecut::graph::{discrete_objective, AffinityGraph, Objective, ObjectiveSpec};
use tracecut::kernels::{build_affinity, KernelSpec};
use tracecut::rounding::{kmeans_rows, RoundingConfig};
use tracecut::DenseMatrix;

use crate::cli::{ClusterArgs, KernelArg, OutputFormat, PipelineKind};
use crate::error::CliError;
use crate::format::{parse_matrix, FileKind};
use crate::report::{RunReport, TimingsMs};

/// Runs the pipeline and renders the report in the requested format.
pub fn run_cluster(args: &ClusterArgs) -> Result<(RunReport, String), CliError> {
    validate_flags(args)?;
    let start = Instant::now();

    let (file, matrix) = parse_matrix(&args.input, args.symmetric_completion)?;
    check_file_kind(file.kind, args)?;
    let t_parse = start.elapsed();

    let t_build_start = Instant::now();
    let objective = args.objective.to_core();
    let custom_phi = args
        .phi
        .as_deref()
        .map(load_weights)
        .transpose()?;

    // Resolve the pipeline: graph to embed, graph to score against, and
    // the reported kind label.
    let built = build_stage(args, matrix, objective, custom_phi)?;
    let t_build = t_build_start.elapsed();

    let t_embed_start = Instant::now();
    let embedding = embed_stage(&built, args.k)?;
    let t_embed = t_embed_start.elapsed();

    let t_round_start = Instant::now();
    let partition = kmeans_rows(&embedding, args.k, &RoundingConfig::with_seed(args.seed))?;
    let discrete_value = discrete_objective(&built.scoring_graph, &built.spec, &partition)?;
    let t_round = t_round_start.elapsed();

    let relaxed_value = embedding.values.iter().sum::<f64>() / args.k as f64;
    let timings_ms = if args.timings {
        TimingsMs {
            parse: t_parse.as_secs_f64() * 1e3,
            build: t_build.as_secs_f64() * 1e3,
            embed: t_embed.as_secs_f64() * 1e3,
            round: t_round.as_secs_f64() * 1e3,
            total: start.elapsed().as_secs_f64() * 1e3,
        }
    } else {
        TimingsMs::default()
    };

    let report = RunReport {
        objective_name: built.spec.name().as_str().to_string(),
        kind: built.kind_label.to_string(),
        k: args.k,
        seed: args.seed,
        row_split: embedding.row_split,
        eigen_or_singular_values: embedding.values.clone(),
        relaxed_value,
        discrete_value,
        assignments: partition.assignment().to_vec(),
        timings_ms,
    };
    let rendered = match args.format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Tsv => report.to_tsv(),
    };
    Ok((report, rendered))
}

/// Everything the embed and scoring stages need.
struct BuiltPipeline {
    kind_label: &'static str,
    spec: ObjectiveSpec,
    /// Graph whose discrete objective scores the partition.
    scoring_graph: AffinityGraph,
    path: EmbedPath,
}

enum EmbedPath {
    Unipartite,
    BipartiteDirect(DenseMatrix),
    BipartiteAugmented(DenseMatrix),
    Directed(DenseMatrix),
}

fn build_stage(
    args: &ClusterArgs,
    matrix: DenseMatrix,
    objective: Objective,
    custom_phi: Option<Vec<f64>>,
) -> Result<BuiltPipeline, CliError> {
    if let Some(kernel) = args.kernel {
        let spec_kernel = parse_kernel_params(kernel, args.kernel_params.as_deref())?;
        let affinity = build_affinity(&spec_kernel, &matrix, args.clamp_negative_kernel)?;
        if affinity.clamped > 0 {
            eprintln!(
                "warning: clamped {} negative kernel values to zero",
                affinity.clamped
            );
        }
        let n = affinity.graph.vertex_count();
        let spec = make_spec(objective, custom_phi, n, args.regularize_degrees)?;
        return Ok(BuiltPipeline {
            kind_label: "bi-kernel",
            spec,
            scoring_graph: affinity.graph,
            path: EmbedPath::Unipartite,
        });
    }
    match args.kind {
        PipelineKind::Uni => {
            let g = AffinityGraph::unipartite(matrix)?;
            let spec = make_spec(objective, custom_phi, g.vertex_count(), args.regularize_degrees)?;
            Ok(BuiltPipeline {
                kind_label: "uni",
                spec,
                scoring_graph: g,
                path: EmbedPath::Unipartite,
            })
        }
        PipelineKind::Bi | PipelineKind::BiDirect => {
            let g = AffinityGraph::bipartite(matrix.clone())?;
            let spec = make_spec(objective, custom_phi, g.vertex_count(), args.regularize_degrees)?;
            Ok(BuiltPipeline {
                kind_label: "bi-direct",
                spec,
                scoring_graph: g,
                path: EmbedPath::BipartiteDirect(matrix),
            })
        }
        PipelineKind::BiAugmented => {
            let g = AffinityGraph::bipartite(matrix.clone())?;
            let spec = make_spec(objective, custom_phi, g.vertex_count(), args.regularize_degrees)?;
            Ok(BuiltPipeline {
                kind_label: "bi-augmented",
                spec,
                scoring_graph: g,
                path: EmbedPath::BipartiteAugmented(matrix),
            })
        }
        PipelineKind::Dir => {
            let g = AffinityGraph::directed(matrix.clone())?;
            let spec = make_spec(objective, custom_phi, g.vertex_count(), args.regularize_degrees)?;
            Ok(BuiltPipeline {
                kind_label: "dir",
                spec,
                scoring_graph: g,
                path: EmbedPath::Directed(matrix),
            })
        }
    }
}

fn embed_stage(built: &BuiltPipeline, k: usize) -> Result<SpectralEmbedding, CliError> {
    let embedding = match &built.path {
        EmbedPath::Unipartite => embed_unipartite(&built.scoring_graph, &built.spec, k)?,
        EmbedPath::BipartiteDirect(a) => embed_bipartite_direct(a, &built.spec, k)?,
        EmbedPath::BipartiteAugmented(a) => embed_bipartite_augmented(a, &built.spec, k)?,
        EmbedPath::Directed(b) => embed_directed(b, &built.spec, k)?,
    };
    Ok(embedding)
}

fn make_spec(
    objective: Objective,
    custom_phi: Option<Vec<f64>>,
    _vertex_count: usize,
    regularize: bool,
) -> Result<ObjectiveSpec, CliError> {
    let spec = match custom_phi {
        Some(phi) => ObjectiveSpec::with_weights(objective, phi)?,
        None => ObjectiveSpec::new(objective)?,
    };
    Ok(if regularize {
        spec.with_degree_regularization()
    } else {
        spec
    })
}

fn validate_flags(args: &ClusterArgs) -> Result<(), CliError> {
    if args.k < 1 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let gw = args.objective.to_core().is_general_weighted();
    if gw && args.phi.is_none() {
        return Err(CliError::Usage(format!(
            "--objective {} requires --phi",
            args.objective.to_core()
        )));
    }
    if !gw && args.phi.is_some() {
        return Err(CliError::Usage(format!(
            "--phi is only valid with gwassoc/gwcuts, not {}",
            args.objective.to_core()
        )));
    }
    match (args.kernel.is_some(), args.kernel_params.is_some()) {
        (true, false) => return Err(CliError::Usage("--kernel requires --kernel-params".into())),
        (false, true) => return Err(CliError::Usage("--kernel-params requires --kernel".into())),
        _ => {}
    }
    if args.kernel.is_none() && args.clamp_negative_kernel {
        return Err(CliError::Usage(
            "--clamp-negative-kernel requires --kernel".into(),
        ));
    }
    if args.kernel.is_some() && args.kind != PipelineKind::Bi {
        return Err(CliError::Usage(
            "--kernel triggers the indirect bipartite path and needs --kind bi".into(),
        ));
    }
    Ok(())
}

fn check_file_kind(file_kind: FileKind, args: &ClusterArgs) -> Result<(), CliError> {
    let ok = match file_kind {
        FileKind::Dense => true,
        FileKind::Unipartite => args.kind == PipelineKind::Uni && args.kernel.is_none(),
        FileKind::Bipartite => matches!(
            args.kind,
            PipelineKind::Bi | PipelineKind::BiDirect | PipelineKind::BiAugmented
        ),
        FileKind::Directed => args.kind == PipelineKind::Dir,
    };
    if ok {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "file kind '{}' does not match --kind {:?}",
            file_kind.as_str(),
            args.kind
        )))
    }
}

fn load_weights(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        for token in content.split_whitespace() {
            let v: f64 = token.parse().map_err(|_| {
                CliError::Parse(format!("line {}: bad weight '{token}'", idx + 1))
            })?;
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err(CliError::Parse("weight file holds no values".into()));
    }
    Ok(out)
}

fn parse_kernel_params(kind: KernelArg, params: Option<&str>) -> Result<KernelSpec, CliError> {
    let params = params.expect("presence checked in validate_flags");
    let values: Result<Vec<f64>, _> = params.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let values =
        values.map_err(|_| CliError::Usage(format!("bad --kernel-params '{params}'")))?;
    match (kind, values.as_slice()) {
        (KernelArg::Gauss, [alpha]) => Ok(KernelSpec::Gaussian { alpha: *alpha }),
        (KernelArg::Poly, [c, d]) => {
            if *d < 1.0 || d.fract() != 0.0 {
                return Err(CliError::Usage(
                    "poly kernel degree must be a positive integer".into(),
                ));
            }
            Ok(KernelSpec::Polynomial {
                c: *c,
                degree: *d as u32,
            })
        }
        (KernelArg::Sigmoid, [c, theta]) => Ok(KernelSpec::Sigmoid {
            c: *c,
            theta: *theta,
        }),
        _ => Err(CliError::Usage(format!(
            "--kernel-params '{params}' does not match {kind:?} (gauss: alpha; poly: c,d; sigmoid: c,theta)"
        ))),
    }
}
