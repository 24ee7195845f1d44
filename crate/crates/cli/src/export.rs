//! DOT export of a ball in the building.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use btpgl::building::{bfs_ball, dist, Ball, EnumCap};
use btpgl::cycles::{build_f, family_keys};
use btpgl::schema::InstanceFile;
use btpgl::{LatticeBasis, Matrix, PAdicContext};
use clap::Args;
use serde_json::{json, Map, Value};

use crate::{read_json, to_json, write_file, CliResult, Failure};

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Dimension; taken from the instance when one is given.
    #[arg(long)]
    pub n: Option<usize>,
    /// Residue characteristic; taken from the instance when one is given.
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub radius: u32,
    /// DOT output path; the sidecar goes next to it with extension `json`.
    #[arg(long)]
    pub out: PathBuf,
    /// JSON file holding the center basis as an array of rows; the standard
    /// lattice when absent.
    #[arg(long, conflicts_with = "instance")]
    pub center: Option<PathBuf>,
    /// Instance file; its `lattice_M` is the center, and for two cycles on the
    /// projective line the geodesic to their family is annotated.
    #[arg(long)]
    pub instance: Option<PathBuf>,
}

fn checked_param<T: PartialEq + std::fmt::Display + Copy>(name: &str, flag: Option<T>, found: T) -> CliResult<T> {
    match flag {
        Some(v) if v != found => Err(Failure::new(1, format!("--{name} {v} conflicts with instance value {found}"))),
        _ => Ok(found),
    }
}

/// Center lattice and, when an instance is supplied, the instance itself.
fn resolve_center(args: &ExportArgs) -> CliResult<(LatticeBasis, Option<InstanceFile>)> {
    if let Some(path) = &args.instance {
        let instance: InstanceFile = read_json(path)?;
        checked_param("n", args.n, instance.n)?;
        checked_param("p", args.p, instance.p)?;
        let cfg = instance.to_config()?;
        return Ok((cfg.ambient().clone(), Some(instance)));
    }
    let n = args.n.ok_or_else(|| Failure::new(1, "--n is required without --instance"))?;
    let p = args.p.ok_or_else(|| Failure::new(1, "--p is required without --instance"))?;
    let ctx = PAdicContext::new(p)?;
    let center = match &args.center {
        Some(path) => {
            let m: Matrix = read_json(path)?;
            if m.rows() != n || m.cols() != n {
                return Err(Failure::new(1, format!("center: expected {n}x{n}, found {}x{}", m.rows(), m.cols())));
            }
            LatticeBasis::new(ctx, m).map_err(|e| Failure::new(1, format!("center: {e}")))?
        }
        None => LatticeBasis::standard(ctx, n),
    };
    Ok((center, None))
}

/// Family members inside the ball and a shortest path from the center to the
/// nearest of them, as node indices starting at the center.
fn annotate(ball: &Ball, center: &LatticeBasis, instance: &InstanceFile) -> CliResult<(HashSet<usize>, Vec<usize>)> {
    let cfg = instance.to_config()?;
    if cfg.dim() != 2 || cfg.cycles().len() != 2 {
        return Ok((HashSet::new(), Vec::new()));
    }
    let f = build_f(&cfg)?;
    let radius = ball.nodes.iter().map(|n| n.depth).max().unwrap_or(0);
    let origin = f.vertex(&vec![0; f.generators().len()])?;
    let keys = family_keys(center, &f, radius + dist(center, &origin)?)?;
    let members: HashSet<usize> = (0..ball.nodes.len()).filter(|&i| keys.contains(&ball.nodes[i].key)).collect();
    let Some(&nearest) = members.iter().min_by_key(|&&i| (ball.nodes[i].depth, i)) else {
        return Ok((members, Vec::new()));
    };
    let mut path = vec![nearest];
    let mut at = nearest;
    while ball.nodes[at].depth > 0 {
        let depth = ball.nodes[at].depth;
        at = ball
            .edges
            .iter()
            .filter_map(|&(i, j)| match (i == at, j == at) {
                (true, _) => Some(j),
                (_, true) => Some(i),
                _ => None,
            })
            .filter(|&k| ball.nodes[k].depth + 1 == depth)
            .min()
            .expect("every non-center node has a neighbor one step closer");
        path.push(at);
    }
    path.reverse();
    Ok((members, path))
}

fn render_dot(ball: &Ball, p: u64, n: usize, radius: u32, members: &HashSet<usize>, path: &[usize]) -> String {
    let on_path: HashSet<usize> = path.iter().copied().collect();
    let path_edges: HashSet<(usize, usize)> = path.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
    let mut out = String::new();
    writeln!(out, "graph ball {{").unwrap();
    writeln!(out, "  // p={p} n={n} radius={radius} nodes={} edges={}", ball.nodes.len(), ball.edges.len()).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for (i, node) in ball.nodes.iter().enumerate() {
        let mut attrs = vec![format!("label=\"{i}\""), format!("depth={}", node.depth)];
        if members.contains(&i) {
            attrs.push("shape=box".into());
        }
        if on_path.contains(&i) {
            attrs.push("color=red".into());
        }
        writeln!(out, "  \"{}\" [{}];", node.key.to_hex(), attrs.join(", ")).unwrap();
    }
    for &(i, j) in &ball.edges {
        let style = if path_edges.contains(&(i, j)) { " [color=red, penwidth=2]" } else { "" };
        writeln!(out, "  \"{}\" -- \"{}\"{style};", ball.nodes[i].key.to_hex(), ball.nodes[j].key.to_hex()).unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

pub fn cmd_export_dot(args: &ExportArgs) -> CliResult<()> {
    let (center, instance) = resolve_center(args)?;
    let (p, n) = (center.ctx().p(), center.dim());
    let ball = bfs_ball(&center, &center, args.radius, EnumCap::from_env())?;
    let (members, path) = match &instance {
        Some(inst) => annotate(&ball, &center, inst)?,
        None => (HashSet::new(), Vec::new()),
    };
    write_file(&args.out, &render_dot(&ball, p, n, args.radius, &members, &path))?;
    let lattices: Map<String, Value> = ball
        .nodes
        .iter()
        .map(|node| (node.key.to_hex(), serde_json::to_value(node.lattice.matrix()).expect("matrices serialize")))
        .collect();
    let mut sidecar = json!({ "p": p, "n": n, "radius": args.radius, "lattices": lattices });
    if instance.is_some() {
        let geodesic: Vec<String> = path.iter().map(|&i| ball.nodes[i].key.to_hex()).collect();
        sidecar["geodesic"] = json!(geodesic);
    }
    write_file(&args.out.with_extension("json"), &to_json(&sidecar))?;
    println!("{} nodes, {} edges", ball.nodes.len(), ball.edges.len());
    Ok(())
}
