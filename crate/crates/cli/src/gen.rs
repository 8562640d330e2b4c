use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use coarse_core::graph::{FiniteGroup, Graph};
use coarse_core::io::{to_json, CoverFile, SpaceFile};
use coarse_core::measures::ProbabilityMeasure;
use coarse_core::metric::{Cover, FiniteMetricSpace};

use crate::commands::Context;
use crate::load::{CliResult, Failure};
use crate::report::{Certificate, Report};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    /// Graph: cycle Cₙ.
    Cycle,
    /// Graph: path on n vertices.
    Path,
    /// Graph: complete Kₙ.
    Complete,
    /// Graph: hypercube Q_d.
    Hypercube,
    /// Graph: Petersen.
    Petersen,
    /// Graph: seeded connected d-regular on n vertices.
    RandomRegular,
    /// Graph: d-regular tree truncated at --radius.
    Tree,
    /// Group: ℤ/n with generators ±1.
    CyclicGroup,
    /// Space: n equally spaced points on a line.
    Line,
    /// Measure: uniform on n points.
    UniformMeasure,
    /// Cover of the n-cycle by arcs of --len points every --stride.
    Arcs,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    radius: Option<usize>,
    #[arg(long)]
    len: Option<usize>,
    #[arg(long, default_value_t = 1)]
    stride: usize,
    /// Output file; the instance goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn need(v: Option<usize>, flag: &str) -> CliResult<usize> {
    v.ok_or_else(|| Failure::Usage(format!("this family needs --{flag}")))
}

impl GenArgs {
    fn instance(&self, ctx: &Context) -> CliResult<(String, &'static str)> {
        let graph = |g: Graph| (to_json(&g), "graph");
        Ok(match self.family {
            Family::Cycle => graph(Graph::cycle(need(self.n, "n")?)?),
            Family::Path => graph(Graph::path(need(self.n, "n")?)?),
            Family::Complete => graph(Graph::complete(need(self.n, "n")?)?),
            Family::Hypercube => graph(Graph::hypercube(need(self.d, "d")?)?),
            Family::Petersen => graph(Graph::petersen()),
            Family::RandomRegular => graph(Graph::random_regular(need(self.n, "n")?, need(self.d, "d")?, ctx.seed)?),
            Family::Tree => graph(Graph::regular_tree(need(self.d, "d")?, need(self.radius, "radius")?)?.0),
            Family::CyclicGroup => (to_json(&FiniteGroup::cyclic(need(self.n, "n")?)?), "group"),
            Family::Line => (to_json(&SpaceFile::from_space(&FiniteMetricSpace::unit_line(need(self.n, "n")?))), "space"),
            Family::UniformMeasure => (to_json(&ProbabilityMeasure::uniform(need(self.n, "n")?)?), "measure"),
            Family::Arcs => {
                let n = need(self.n, "n")?;
                let len = need(self.len, "len")?;
                if self.stride == 0 || len == 0 || len > n {
                    return Err(Failure::Usage(format!("need 0 < len ≤ n and stride > 0, got len = {len}, stride = {}", self.stride)));
                }
                let space = Graph::cycle(n)?.metric()?;
                let sets = (0..n)
                    .step_by(self.stride)
                    .map(|i| {
                        let mut arc: Vec<usize> = (0..len).map(|j| (i + j) % n).collect();
                        arc.sort_unstable();
                        arc
                    })
                    .collect();
                (to_json(&CoverFile::from_cover(&Cover::from_sets(&space, sets)?)), "cover")
            }
        })
    }

    pub fn run(&self, ctx: &Context) -> CliResult<Report> {
        let (text, kind) = self.instance(ctx)?;
        let inputs = json!({
            "family": format!("{:?}", self.family).to_lowercase(),
            "n": self.n, "d": self.d, "radius": self.radius, "len": self.len, "stride": self.stride,
            "seed": ctx.seed,
        });
        let report = Report::new("gen", inputs);
        match &self.out {
            Some(path) => {
                std::fs::write(path, &text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
                Ok(report
                    .results(json!({ "kind": kind, "path": path }))
                    .line(format!("wrote {kind} to {}", path.display()))
                    .certify(Certificate::none()))
            }
            None => {
                let value: Value = serde_json::from_str(&text).expect("generated JSON parses");
                Ok(report.results(json!({ "kind": kind, "instance": value })).line(text))
            }
        }
    }
}
