//! The run report: a schema-stable, key-ordered record of one clustering
//! run. JSON field order follows the struct declaration and floats print
//! in shortest round-trip form, so identical runs serialize to identical
//! bytes.

use serde::Serialize;

/// Wall-clock per stage, milliseconds. All zeros unless timing was
/// requested, which keeps default reports byte-deterministic.
#[derive(Debug, Clone, Default, Serialize)]
pub struct TimingsMs {
    pub parse: f64,
    pub build: f64,
    pub embed: f64,
    pub round: f64,
    pub total: f64,
}

/// Result record of `tracecut cluster`.
///
/// For bipartite runs `row_split = M`: assignment indices `0..M` are
/// feature vertices, `M..M+N` item vertices.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub objective_name: String,
    pub kind: String,
    pub k: usize,
    pub seed: u64,
    pub row_split: Option<usize>,
    pub eigen_or_singular_values: Vec<f64>,
    pub relaxed_value: f64,
    pub discrete_value: f64,
    pub assignments: Vec<usize>,
    pub timings_ms: TimingsMs,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let join = |values: &[f64]| {
            values
                .iter()
                .map(f64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        let assignments = self
            .assignments
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let row_split = self
            .row_split
            .map_or_else(|| "-".to_string(), |v| v.to_string());
        let t = &self.timings_ms;
        format!(
            "objective_name\t{}\nkind\t{}\nk\t{}\nseed\t{}\nrow_split\t{}\n\
             eigen_or_singular_values\t{}\nrelaxed_value\t{}\ndiscrete_value\t{}\n\
             assignments\t{}\ntimings_ms\tparse={};build={};embed={};round={};total={}\n",
            self.objective_name,
            self.kind,
            self.k,
            self.seed,
            row_split,
            join(&self.eigen_or_singular_values),
            self.relaxed_value,
            self.discrete_value,
            assignments,
            t.parse,
            t.build,
            t.embed,
            t.round,
            t.total,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        RunReport {
            objective_name: "nassoc".into(),
            kind: "uni".into(),
            k: 2,
            seed: 42,
            row_split: None,
            eigen_or_singular_values: vec![1.0, 0.5],
            relaxed_value: 0.75,
            discrete_value: 0.75,
            assignments: vec![0, 0, 1, 1],
            timings_ms: TimingsMs::default(),
        }
    }

    #[test]
    fn json_is_key_ordered_and_stable() {
        let a = sample().to_json();
        let b = sample().to_json();
        assert_eq!(a, b);
        let object_keys: Vec<&str> = a
            .lines()
            .filter_map(|l| l.trim().strip_prefix('"').and_then(|l| l.split('"').next()))
            .collect();
        assert_eq!(
            object_keys,
            vec![
                "objective_name",
                "kind",
                "k",
                "seed",
                "row_split",
                "eigen_or_singular_values",
                "relaxed_value",
                "discrete_value",
                "assignments",
                "timings_ms",
                "parse",
                "build",
                "embed",
                "round",
                "total",
            ]
        );
    }

    #[test]
    fn tsv_round_trips_the_discrete_value() {
        let tsv = sample().to_tsv();
        assert!(tsv.contains("discrete_value\t0.75"));
        assert!(tsv.contains("assignments\t0,0,1,1"));
        assert!(tsv.contains("row_split\t-"));
    }
}
