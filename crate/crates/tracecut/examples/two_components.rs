//! Minimal end-to-end run: embed a two-component graph and round it.

use tracecut::engine::embed_unipartite;
use tracecut::rounding::kmeans_rows;
use tracecut::{AffinityGraph, DenseMatrix, Objective, ObjectiveSpec, RoundingConfig};

fn main() -> Result<(), tracecut::Error> {
    let mut w = DenseMatrix::zeros(4, 4);
    for (i, j) in [(0usize, 1usize), (2, 3)] {
        w[(i, j)] = 1.0;
        w[(j, i)] = 1.0;
    }
    let graph = AffinityGraph::unipartite(w)?;
    let spec = ObjectiveSpec::new(Objective::NAssoc)?;
    let embedding = embed_unipartite(&graph, &spec, 2)?;
    let partition = kmeans_rows(&embedding, 2, &RoundingConfig::with_seed(7))?;
    assert_eq!(partition.assignment()[0], partition.assignment()[1]);
    println!("assignments: {:?}", partition.assignment());
    println!("relaxed value: {}", embedding.values.iter().sum::<f64>() / 2.0);
    Ok(())
}
