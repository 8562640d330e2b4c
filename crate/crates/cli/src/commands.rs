use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::{json, Value};

use coarse_core::constructions::{
    amenable_cover_to_pou, average_pou, horizon_ratio, point_horizon_ratio, round_to_barycentric,
    RoundingParams,
};
use coarse_core::graph::{
    cheeger_constant_with_cap, cheeger_sweep, double_counting_on_space, expander_light_check,
    folner_analysis, girth_halo_check, halo, halo_ratio_search, product_halo_claim_check,
    CHEEGER_EXACT_CAP,
};
use coarse_core::io::{PartitionFile, WitnessFile};
use coarse_core::measures::{msp_greedy, scan_boundary_set, CoverFinder};
use coarse_core::metric::FiniteMetricSpace;
use coarse_core::pou::{check_witness, levin_pou, pou_to_witness};

use crate::gen::GenArgs;
use crate::load::{self, CliResult, Failure};
use crate::report::{set_text, Certificate, Report};

/// Settings shared by every subcommand.
pub struct Context {
    pub tol: f64,
    pub seed: u64,
}

/// A metric given directly or as the path metric of a graph.
#[derive(Args, Debug)]
pub struct SpaceArgs {
    /// Metric space file.
    #[arg(long, conflicts_with = "graph")]
    space: Option<PathBuf>,
    /// Graph file; its shortest-path metric is used.
    #[arg(long)]
    graph: Option<PathBuf>,
}

impl SpaceArgs {
    fn load(&self, ctx: &Context) -> CliResult<(FiniteMetricSpace, Vec<String>)> {
        let space = match (&self.space, &self.graph) {
            (Some(p), None) => load::space(p, ctx.tol)?,
            (None, Some(p)) => {
                let mut s = load::graph(p)?.metric()?;
                s.set_tolerance(ctx.tol);
                s
            }
            _ => return Err(Failure::Usage("give exactly one of --space or --graph".into())),
        };
        let mut warnings = Vec::new();
        if space.is_pseudometric() {
            warnings.push("distinct points at distance 0: treating the input as a pseudometric".into());
        }
        Ok((space, warnings))
    }

    fn echo(&self) -> Value {
        json!({ "space": self.space, "graph": self.graph })
    }
}

fn with_warnings(mut report: Report, warnings: Vec<String>) -> Report {
    for w in warnings {
        report = report.warn(w);
    }
    report
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Some(a), Value::Object(b)) = (a.as_object_mut(), b) {
        a.extend(b);
    }
    a
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cheeger constant h(G) with a minimizing set.
    Cheeger {
        #[arg(long)]
        graph: PathBuf,
        /// Largest vertex count searched exactly.
        #[arg(long, default_value_t = CHEEGER_EXACT_CAP)]
        cap: usize,
        /// Use the BFS sweep upper bound instead of the exact search.
        #[arg(long)]
        sweep: bool,
        /// With --eps: certify an expander of degree at most k.
        #[arg(long, requires = "eps")]
        k: Option<usize>,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Length of a shortest cycle.
    Girth {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Halos {x ∉ A : d(x, A) < 2}: of one set, a ratio search, or the
    /// girth claim |halo(A)| ≥ |A| for |A| ≤ M.
    Halo {
        #[command(flatten)]
        source: SpaceArgs,
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["max_size", "claim"])]
        set: Option<Vec<usize>>,
        #[arg(long, conflicts_with = "claim")]
        max_size: Option<usize>,
        /// Girth claim with this M (graph input only).
        #[arg(long = "claim", value_name = "M")]
        claim: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        domain: Option<Vec<usize>>,
        /// With --max-size: certify |halo(A)| ≥ c·|A|.
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Horizon ratios |hor(B(x, r))| / |hor(B(x, s))| of a cover. Only the
    /// supplied (r, s) pair is checked; r = 0 uses the point horizon.
    Amenability {
        #[command(flatten)]
        source: SpaceArgs,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Σ_s |halo(U_s)| = Σ_x (|hor(B(x,2))| − |hor({x})|) and p_min ≤ 1/(1 + c_min).
    DoubleCount {
        #[command(flatten)]
        source: SpaceArgs,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Barycentric partition from an r-dense subset.
    Levin {
        #[command(flatten)]
        source: SpaceArgs,
        #[arg(long)]
        r: f64,
        /// Ordered r-dense points; defaults to a greedy r-net.
        #[arg(long, value_delimiter = ',')]
        dense: Option<Vec<usize>>,
    },
    /// Rounds a partition to weights over m and expands it barycentrically.
    Round {
        #[arg(long)]
        pou: PathBuf,
        #[arg(long)]
        eps: f64,
        /// Defaults to the smallest admissible multiplier.
        #[arg(long)]
        m: Option<u64>,
        /// Dimension; defaults to the largest carrier size minus one.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Averages a partition over basepoints of a cobounded cover.
    Average {
        #[command(flatten)]
        source: SpaceArgs,
        #[arg(long)]
        pou: PathBuf,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long = "M")]
        cobound: f64,
        #[arg(long, value_delimiter = ',')]
        basepoints: Option<Vec<usize>>,
    },
    /// Partition g(x) = χ_{A(x)}/|A(x)| from a cover with good (r, 2r) ratios.
    CoverToPou {
        #[command(flatten)]
        source: SpaceArgs,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        mu: f64,
        /// Also test strong Property A at this ε.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Checks a Property A witness, or builds one from a partition.
    PropertyA {
        #[command(flatten)]
        source: SpaceArgs,
        #[arg(long, conflicts_with = "pou")]
        witness: Option<PathBuf>,
        #[arg(long)]
        pou: Option<PathBuf>,
        #[arg(long = "R")]
        scale: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Generator translates of a finite set F and the Lipschitz number of φ_F.
    Folner {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        /// Certify max_σ |σF Δ F|/|F| < ε.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// |halo(A)| ≥ |A| near the identity of Gⁿ.
    ProductGroup {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long = "M")]
        m: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Greedy R-disjoint family of diameter-≤ S sets carrying mass above c.
    Msp {
        #[command(flatten)]
        source: SpaceArgs,
        #[arg(long)]
        measure: PathBuf,
        /// Cover scanned for small-boundary sets.
        #[arg(long)]
        cover: PathBuf,
        #[arg(long = "R")]
        r: f64,
        #[arg(long = "S")]
        s: f64,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// First cover element with μ(∂_R U) < ε·μ(U).
    UlaScan {
        #[command(flatten)]
        source: SpaceArgs,
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long = "R")]
        r: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Greedy maximal r-separated, r-dense subset.
    Net {
        #[command(flatten)]
        source: SpaceArgs,
        #[arg(long)]
        r: f64,
    },
    /// Halo growth inside each graph of a sequence, as a coarse disjoint union.
    ExpanderLight {
        #[arg(long = "graph", required = true)]
        graphs: Vec<PathBuf>,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Writes a built-in instance family.
    Gen(GenArgs),
}

impl Command {
    pub fn run(&self, ctx: &Context) -> CliResult<Report> {
        match self {
            Command::Cheeger { graph, cap, sweep, k, eps } => {
                let g = load::graph(graph)?;
                let res = if *sweep { cheeger_sweep(&g)? } else { cheeger_constant_with_cap(&g, *cap)? };
                let h = *res.h.numer() as f64 / *res.h.denom() as f64;
                let mut report = Report::new("cheeger", json!({ "graph": graph, "cap": cap, "sweep": sweep, "k": k, "eps": eps }))
                    .results(json!({ "h": res.h.to_string(), "h_value": h, "set": res.set, "exact": res.exact }))
                    .line(format!("h = {}, A = {}", res.h, set_text(&res.set)));
                if !res.exact {
                    report = report.line("(sweep upper bound, not exact)");
                }
                if let Some(eps) = eps {
                    let ok = k.is_none_or(|k| g.max_degree() <= k) && h >= eps - ctx.tol;
                    let clause = match k {
                        Some(k) => format!("max degree ≤ {k} and h ≥ {eps}"),
                        None => format!("h ≥ {eps}"),
                    };
                    report = report.certify(if res.exact || !ok {
                        Certificate::check(ok, clause)
                    } else {
                        // a sweep value only bounds h from above
                        Certificate { status: crate::report::Status::NotApplicable, clause: Some(format!("{clause}: sweep cannot certify a lower bound")) }
                    });
                }
                Ok(report)
            }
            Command::Girth { graph } => {
                let g = load::graph(graph)?;
                let girth = g.girth();
                Ok(Report::new("girth", json!({ "graph": graph }))
                    .results(json!({ "girth": girth }))
                    .line(format!("girth = {girth}")))
            }
            Command::Halo { source, set, max_size, claim, domain, c, samples } => {
                let (space, warnings) = source.load(ctx)?;
                let inputs = merge(source.echo(), json!({ "set": set, "max_size": max_size, "claim": claim, "domain": domain, "c": c, "samples": samples }));
                let report = Report::new("halo", inputs);
                let report = if let Some(set) = set {
                    space.check_points(set)?;
                    let h = halo(&space, set);
                    report
                        .results(json!({ "halo": h, "size": h.len(), "set_size": set.len() }))
                        .line(format!("|halo(A)| = {}, |A| = {}, halo = {}", h.len(), set.len(), set_text(&h)))
                } else if let Some(m) = claim {
                    let path = source.graph.as_ref().ok_or_else(|| Failure::Usage("--claim needs --graph".into()))?;
                    let g = load::graph(path)?;
                    let res = girth_halo_check(&g, *m, domain.as_deref())?;
                    report
                        .line(format!("checked {} sets with |A| ≤ {m}: {}", res.checked, if res.holds { "no counterexample" } else { "counterexample found" }))
                        .certify(Certificate::check(res.holds, format!("|halo(A)| ≥ |A| for |A| ≤ {m}")))
                        .results(serde_json::to_value(&res).expect("serializable"))
                } else if let Some(k) = max_size {
                    let res = halo_ratio_search(&space, *k, domain.as_deref(), ctx.seed, *samples)?;
                    let mut report = report
                        .line(format!(
                            "min |halo(A)|/|A| = {} at A = {} ({}, {} sets)",
                            res.min_ratio,
                            set_text(&res.set),
                            if res.exhaustive { "exhaustive" } else { "sampled" },
                            res.checked
                        ))
                        .results(serde_json::to_value(&res).expect("serializable"));
                    if let Some(c) = c {
                        let r = *res.min_ratio.numer() as f64 / *res.min_ratio.denom() as f64;
                        report = report.certify(Certificate::check(r >= c - ctx.tol, format!("|halo(A)| ≥ {c}·|A| for checked A")));
                    }
                    report
                } else {
                    return Err(Failure::Usage("halo needs one of --set, --max-size or --claim".into()));
                };
                Ok(with_warnings(report, warnings))
            }
            Command::Amenability { source, cover, r, s, eps } => {
                let (space, warnings) = source.load(ctx)?;
                let u = load::cover(cover, &space)?;
                let res = if *r == 0.0 { point_horizon_ratio(&space, &u, *s)? } else { horizon_ratio(&space, &u, *r, *s)? };
                let mut report = Report::new("amenability", merge(source.echo(), json!({ "cover": cover, "r": r, "s": s, "eps": eps })))
                    .line(format!("min ratio = {} at point {}", res.min_ratio, res.worst_point))
                    .results(serde_json::to_value(&res).expect("serializable"))
                    .warn(format!("finite check: only the pair (r, s) = ({r}, {s}) is certified"));
                if let Some(eps) = eps {
                    report = report.certify(Certificate::check(res.certifies(*eps), format!("every ratio > 1 − ε = {}", 1.0 - eps)));
                }
                Ok(with_warnings(report, warnings))
            }
            Command::DoubleCount { source, cover } => {
                let (space, warnings) = source.load(ctx)?;
                let u = load::cover(cover, &space)?;
                let res = double_counting_on_space(&space, &u)?;
                let (ok, clause) = if !res.identity_holds() {
                    (false, format!("Σ|halo(U_s)| = {} ≠ {} (identity failed; this is a bug)", res.lhs, res.rhs))
                } else if res.bound_ok == Some(false) {
                    (false, format!("p_min = {} > 1/(1 + c_min), c_min = {}", res.p_min, res.c_min))
                } else {
                    (true, "double-counting identity and p_min ≤ 1/(1 + c_min)".to_string())
                };
                let report = Report::new("double-count", merge(source.echo(), json!({ "cover": cover })))
                    .results(json!({ "lhs": res.lhs, "rhs": res.rhs, "p_min": res.p_min.to_string(), "c_min": res.c_min.to_string(), "bound_ok": res.bound_ok }))
                    .line(format!("lhs = {}, rhs = {}, p_min = {}, c_min = {}", res.lhs, res.rhs, res.p_min, res.c_min))
                    .certify(Certificate::check(ok, clause));
                Ok(with_warnings(report, warnings))
            }
            Command::Levin { source, r, dense } => {
                let (space, warnings) = source.load(ctx)?;
                let dense = match dense {
                    Some(d) => d.clone(),
                    None => space.separated_net(*r)?,
                };
                let out = levin_pou(&space, &dense, *r)?;
                let report = Report::new("levin", merge(source.echo(), json!({ "r": r, "dense": dense })))
                    .results(json!({
                        "partition": PartitionFile::from_partition(&out.partition),
                        "cover": out.cover.elements(),
                        "coboundedness": out.coboundedness,
                        "lebesgue": out.lebesgue,
                    }))
                    .line(format!("{} elements, coboundedness = {}, lebesgue = {}", out.cover.len(), out.coboundedness, out.lebesgue))
                    .certify(Certificate::check(true, format!("coboundedness ≤ 6r = {} and lebesgue ≥ r = {r}", 6.0 * r)));
                Ok(with_warnings(report, warnings))
            }
            Command::Round { pou, eps, m, n } => {
                let points = partition_points(pou)?;
                let f = load::partition(pou, &FiniteMetricSpace::unit_line(points))?;
                let n = n.unwrap_or(f.max_carrier().saturating_sub(1));
                let params = match m {
                    Some(m) => RoundingParams::new(n, *m, *eps)?,
                    None => RoundingParams::minimal(n, *eps)?,
                };
                let out = round_to_barycentric(&f, params)?;
                let bound = (2 * n + 2) as f64 / params.m as f64;
                Ok(Report::new("round", json!({ "pou": pou, "eps": eps, "m": params.m, "n": n }))
                    .results(json!({
                        "m": out.m,
                        "integer_part": out.integer_part,
                        "k_before": out.k_before,
                        "max_deviation": out.max_deviation,
                        "deviation_bound": bound,
                        "barycentric": PartitionFile::from_partition(&out.p.map_labels(|(l, i)| format!("{l}#{i}"))),
                    }))
                    .line(format!("m = {}, n = {n}, max ‖h − g‖ = {:.6} ≤ {:.6}", out.m, out.max_deviation, bound))
                    .certify(Certificate::check(true, "‖G₂(x)‖ = m, carriers preserved, ‖h − g‖ ≤ (2n+2)/m")))
            }
            Command::Average { source, pou, cover, eps, cobound, basepoints } => {
                let (space, warnings) = source.load(ctx)?;
                let f = load::partition(pou, &space)?;
                let u = load::cover(cover, &space)?;
                let (g, rep) = average_pou(&space, &f, &u, basepoints.as_deref(), *eps, *cobound)?;
                let report = Report::new("average", merge(source.echo(), json!({ "pou": pou, "cover": cover, "eps": eps, "M": cobound })))
                    .results(json!({ "partition": PartitionFile::from_partition(&g), "report": rep }))
                    .line(format!("δ = {:.6}, lebesgue = {}, (ε, ε)-Lipschitz: {}", rep.delta, rep.lebesgue, rep.eps_lipschitz))
                    .certify(Certificate::check(true, "lebesgue ≥ 1/ε and ‖g(x) − g(y)‖ ≤ δ(2(M + 1/ε) + d) + δ"));
                Ok(with_warnings(report, warnings))
            }
            Command::CoverToPou { source, cover, r, mu, eps } => {
                let (space, warnings) = source.load(ctx)?;
                let u = load::cover(cover, &space)?;
                let (g, rep) = amenable_cover_to_pou(&space, &u, *r, *mu, *eps)?;
                let cert = match rep.strong_property_a {
                    Some(ok) => Certificate::check(ok, format!("(ε, ε)-Lipschitz with lebesgue > 1/ε at ε = {}", eps.unwrap_or_default())),
                    None => Certificate::check(true, "lebesgue ≥ 2r and ‖g(x) − g(y)‖ < 4μ for d < r"),
                };
                let report = Report::new("cover-to-pou", merge(source.echo(), json!({ "cover": cover, "r": r, "mu": mu, "eps": eps })))
                    .line(format!("min ratio = {:.6}, lebesgue = {}, max local distance = {:.6}", rep.min_ratio, rep.lebesgue, rep.max_local_distance))
                    .results(json!({ "partition": PartitionFile::from_partition(&g), "report": rep }))
                    .certify(cert);
                Ok(with_warnings(report, warnings))
            }
            Command::PropertyA { source, witness, pou, scale, eps } => {
                let (space, warnings) = source.load(ctx)?;
                let inputs = merge(source.echo(), json!({ "witness": witness, "pou": pou, "R": scale, "eps": eps }));
                let report = match (witness, pou) {
                    (Some(path), None) => {
                        let w = load::witness(path, &space)?;
                        let check = check_witness(&space, &w, *scale, *eps)?;
                        let clause = match check.offending_pair {
                            Some((x, y)) => format!("overlap fails at pair ({x},{y})"),
                            None if !check.containment => "some A(x) is empty or leaves B(x, S)".into(),
                            None => format!("A(x) ⊆ B(x, S) and |A(x) Δ A(y)| < ε|A(x) ∩ A(y)| for d < {scale}"),
                        };
                        Report::new("property-a", inputs)
                            .line(format!("containment: {}, overlap: {}, worst ratio = {}", check.containment, check.overlap, check.worst_ratio))
                            .certify(Certificate::check(check.holds(), clause))
                            .results(serde_json::to_value(&check).expect("serializable"))
                    }
                    (None, Some(path)) => {
                        let f = load::partition(path, &space)?;
                        let w = pou_to_witness(&space, &f, *scale, *eps, None)?;
                        Report::new("property-a", inputs)
                            .line(format!("witness with S = {} built from the partition", w.s_bound))
                            .results(json!({ "witness": WitnessFile::from_witness(&w) }))
                            .certify(Certificate::check(true, format!("witness clauses at R = {scale}, ε = {eps}")))
                    }
                    _ => return Err(Failure::Usage("give exactly one of --witness or --pou".into())),
                };
                Ok(with_warnings(report, warnings))
            }
            Command::Folner { group, set, eps } => {
                let g = load::group(group)?;
                let rep = folner_analysis(&g, set)?;
                let ratio = *rep.max_gen_ratio.numer() as f64 / *rep.max_gen_ratio.denom() as f64;
                let cert = match eps {
                    Some(e) => Certificate::check(rep.sandwich_holds && ratio < *e, format!("max |σF Δ F|/|F| < {e}")),
                    None => Certificate::check(rep.sandwich_holds, "|σFΔF|/|F| ≤ ‖φ_F(x) − φ_F(xσ)‖ ≤ 2|σFΔF|/|F|"),
                };
                let mut report = Report::new("folner", json!({ "group": group, "set": set, "eps": eps }))
                    .results(json!({
                        "max_gen_ratio": rep.max_gen_ratio.to_string(),
                        "worst_generator": rep.worst_generator,
                        "phi_lipschitz": rep.phi_lipschitz,
                        "sandwich_holds": rep.sandwich_holds,
                    }))
                    .line(format!("max |σF Δ F|/|F| = {} (σ = {}), lip(φ_F) = {:.6}", rep.max_gen_ratio, rep.worst_generator, rep.phi_lipschitz))
                    .certify(cert);
                if let Some(n) = &g.notice {
                    report = report.warn(n.clone());
                }
                Ok(report)
            }
            Command::ProductGroup { group, n, m, samples } => {
                let g = load::group(group)?;
                let res = product_halo_claim_check(&g, *n, *m, ctx.seed, *samples)?;
                Ok(Report::new("product-group", json!({ "group": group, "n": n, "M": m, "samples": samples, "seed": ctx.seed }))
                    .line(format!(
                        "{} subsets of the closed {m}-ball checked ({}): {}",
                        res.checked,
                        if res.exhaustive { "exhaustive" } else { "sampled" },
                        if res.holds { "no counterexample" } else { "counterexample found" }
                    ))
                    .certify(Certificate::check(res.holds, format!("|halo(A)| ≥ |A| for A in the closed {m}-ball")))
                    .results(serde_json::to_value(&res).expect("serializable")))
            }
            Command::Msp { source, measure, cover, r, s, c, eps } => {
                let (space, warnings) = source.load(ctx)?;
                let mu = load::measure(measure, &space)?;
                let u = load::cover(cover, &space)?;
                let mut finder = CoverFinder { cover: u };
                let res = msp_greedy(&space, &mu, *r, *s, &mut finder, *c, *eps)?;
                let report = Report::new("msp", merge(source.echo(), json!({ "measure": measure, "cover": cover, "R": r, "S": s, "c": c, "eps": eps })))
                    .line(format!("{} sets, total mass = {:.6}", res.family.sets.len(), res.total_mass))
                    .results(serde_json::to_value(&res).expect("serializable"))
                    .certify(Certificate::check(true, format!("per-measure: {r}-disjoint sets of diameter ≤ {s} with mass > {c}")));
                Ok(with_warnings(report, warnings))
            }
            Command::UlaScan { source, measure, cover, r, eps } => {
                let (space, warnings) = source.load(ctx)?;
                let mu = load::measure(measure, &space)?;
                let u = load::cover(cover, &space)?;
                let hit = scan_boundary_set(&space, &mu, &u, *r, *eps)?;
                let report = Report::new("ula-scan", merge(source.echo(), json!({ "measure": measure, "cover": cover, "R": r, "eps": eps })))
                    .line(format!("element {:?}: μ(∂U) = {:.6} < ε·μ(U) = {:.6}", hit.label, hit.boundary_mass, eps * hit.mass))
                    .results(serde_json::to_value(&hit).expect("serializable"))
                    .certify(Certificate::check(true, format!("per-measure: μ(∂_R U) < ε·μ(U) at R = {r}")));
                Ok(with_warnings(report, warnings))
            }
            Command::Net { source, r } => {
                let (space, warnings) = source.load(ctx)?;
                let net = space.separated_net(*r)?;
                let separated = net.iter().enumerate().all(|(i, &a)| net[i + 1..].iter().all(|&b| !space.lt(space.d(a, b), *r)));
                let dense = (0..space.len()).all(|x| net.iter().any(|&a| space.lt(space.d(x, a), *r)));
                let report = Report::new("net", merge(source.echo(), json!({ "r": r })))
                    .results(json!({ "net": net }))
                    .line(format!("{} points: {}", net.len(), set_text(&net)))
                    .certify(Certificate::check(separated && dense, format!("{r}-separated and {r}-dense")));
                Ok(with_warnings(report, warnings))
            }
            Command::ExpanderLight { graphs, max_size, c, samples } => {
                let gs = graphs.iter().map(|p| load::graph(p)).collect::<CliResult<Vec<_>>>()?;
                let res = expander_light_check(&gs, *max_size, *c, ctx.seed, *samples)?;
                let mut report = Report::new("expander-light", json!({ "graphs": graphs, "max_size": max_size, "c": c, "samples": samples }))
                    .results(serde_json::to_value(&res).expect("serializable"))
                    .certify(Certificate::check(res.holds, format!("|halo(A)| ≥ {c}·|A| for |A| ≤ {max_size} in every listed graph")))
                    .warn("prefix certificate: only the listed graphs and set sizes are checked");
                for (i, m) in res.members.iter().enumerate() {
                    report = report.line(format!("graph {i}: min |halo(A)|/|A| = {} at A = {}", m.min_ratio, set_text(&m.set)));
                }
                Ok(report)
            }
            Command::Gen(args) => args.run(ctx),
        }
    }
}

fn partition_points(path: &std::path::Path) -> CliResult<usize> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file: PartitionFile = coarse_core::io::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(file.values.len())
}
