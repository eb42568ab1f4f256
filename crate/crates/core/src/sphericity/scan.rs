//! Exhaustive cross-validation of the two deciders over small trees.

use std::collections::HashSet;

use serde::Serialize;

use super::{is_spherical_root_criterion, is_spherical_structural};
use crate::error::{Error, Result};
use crate::exec::{map_ordered, Strategy};
use crate::quiver::{DimVector, Quiver, QuiverSetting};

/// Prüfer enumeration grows like `n^(n-2)`; beyond this the scan is not a
/// desk-scale computation.
pub const MAX_SCAN_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub setting: QuiverSetting,
    pub structural: bool,
    pub root_criterion: bool,
}

/// A spherical setting sitting above a non-spherical one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityViolation {
    pub method: &'static str,
    pub spherical: QuiverSetting,
    pub non_spherical_below: DimVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub max_vertices: usize,
    pub max_dim: i64,
    pub quivers: usize,
    pub settings: usize,
    pub spherical: usize,
    pub non_spherical: usize,
    pub disagreement_count: usize,
    pub disagreements: Vec<Disagreement>,
    pub monotonicity_violations: Vec<MonotonicityViolation>,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty() && self.monotonicity_violations.is_empty()
    }
}

/// Rooted canonical string (AHU encoding).
fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(adj, w, v))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

fn tree_code(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    (0..n)
        .map(|r| rooted_code(&adj, r, usize::MAX))
        .min()
        .unwrap_or_default()
}

fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges.sort();
    edges
}

/// One edge list per isomorphism class of trees on `n` vertices, with
/// vertices `0..n`, ordered by canonical code.
pub fn trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    match n {
        0 => return Vec::new(),
        1 => return vec![Vec::new()],
        2 => return vec![vec![(0, 1)]],
        _ => {}
    }
    let mut seen = HashSet::new();
    let mut reps: Vec<(String, Vec<(usize, usize)>)> = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let edges = prufer_decode(n, &seq);
        let code = tree_code(n, &edges);
        if seen.insert(code.clone()) {
            reps.push((code, edges));
        }
        let mut k = seq.len();
        loop {
            if k == 0 {
                reps.sort();
                return reps.into_iter().map(|(_, e)| e).collect();
            }
            k -= 1;
            seq[k] += 1;
            if seq[k] < n {
                break;
            }
            seq[k] = 0;
        }
    }
}

/// Every tree up to isomorphism on `1..=max_vertices` vertices, in every
/// orientation. Vertices are named `"1"`, `"2"`, ...
pub fn scan_trees(max_vertices: usize) -> Vec<Quiver> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        for edges in trees(n) {
            for mask in 0..(1u32 << edges.len()) {
                let arrows = edges
                    .iter()
                    .enumerate()
                    .map(|(k, &(a, b))| if mask >> k & 1 == 0 { (a, b) } else { (b, a) })
                    .collect();
                out.push(Quiver::from_indices(names.clone(), arrows));
            }
        }
    }
    out
}

/// All vectors in `[1, max_dim]^n`, last coordinate fastest.
fn dim_box(n: usize, max_dim: i64) -> Vec<DimVector> {
    let total = (max_dim as usize).pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0i64; n];
            for k in (0..n).rev() {
                v[k] = (idx % max_dim as usize) as i64 + 1;
                idx /= max_dim as usize;
            }
            DimVector(v)
        })
        .collect()
}

/// Compare both deciders on every tree setting within the bounds, and check
/// that both verdict maps are downward closed. The report does not depend
/// on the strategy.
pub fn scan(max_vertices: usize, max_dim: i64, strategy: Strategy) -> Result<ScanReport> {
    if max_vertices == 0 || max_dim < 1 {
        return Err(Error::Precondition("scan bounds must be at least 1".into()));
    }
    if max_vertices > MAX_SCAN_VERTICES {
        return Err(Error::CostGuard(format!(
            "scan supports at most {MAX_SCAN_VERTICES} vertices"
        )));
    }
    let quivers = scan_trees(max_vertices);
    let boxes: Vec<Vec<DimVector>> = (0..=max_vertices).map(|n| dim_box(n, max_dim)).collect();

    let jobs: Vec<(usize, usize)> = quivers
        .iter()
        .enumerate()
        .flat_map(|(qi, q)| (0..boxes[q.vertex_count()].len()).map(move |di| (qi, di)))
        .collect();
    let verdicts: Vec<Result<(bool, bool)>> = map_ordered(strategy, &jobs, |&(qi, di)| {
        let q = &quivers[qi];
        let s = QuiverSetting::new(q.clone(), boxes[q.vertex_count()][di].clone())?;
        let structural = is_spherical_structural(&s)?.spherical;
        let root = is_spherical_root_criterion(&s)?.spherical;
        Ok((structural, root))
    });
    let verdicts: Vec<(bool, bool)> = verdicts.into_iter().collect::<Result<_>>()?;

    let mut report = ScanReport {
        max_vertices,
        max_dim,
        quivers: quivers.len(),
        settings: jobs.len(),
        spherical: 0,
        non_spherical: 0,
        disagreement_count: 0,
        disagreements: Vec::new(),
        monotonicity_violations: Vec::new(),
    };
    let mut offset = 0;
    for q in &quivers {
        let n = q.vertex_count();
        let dims = &boxes[n];
        let block = &verdicts[offset..offset + dims.len()];
        offset += dims.len();
        let setting = |di: usize| QuiverSetting {
            quiver: q.clone(),
            dims: dims[di].clone(),
        };
        for (di, &(structural, root)) in block.iter().enumerate() {
            if structural {
                report.spherical += 1;
            } else {
                report.non_spherical += 1;
            }
            if structural != root {
                report.disagreements.push(Disagreement {
                    setting: setting(di),
                    structural,
                    root_criterion: root,
                });
            }
            // covering relations d - e_v < d suffice for downward closure
            for v in 0..n {
                if dims[di].0[v] == 1 {
                    continue;
                }
                let below = di - (max_dim as usize).pow((n - 1 - v) as u32);
                for (method, up, down) in [
                    ("structural", structural, block[below].0),
                    ("root_criterion", root, block[below].1),
                ] {
                    if up && !down {
                        report.monotonicity_violations.push(MonotonicityViolation {
                            method,
                            spherical: setting(di),
                            non_spherical_below: dims[below].clone(),
                        });
                    }
                }
            }
        }
    }
    report.disagreement_count = report.disagreements.len();
    Ok(report)
}
