//! Brute-force orbit counting over small prime fields.
//!
//! Borel and full base change orbits on `R_d(Q)(F_p)` are counted exactly
//! with Burnside's lemma: the number of orbits is the average over group
//! elements `g` of `p^nullity(L_g)`, where `L_g(f)_a = g_j f_a - f_a g_i` for
//! `a: i -> j`. Independently, [`count_orbits_by_enumeration`] materializes
//! the point set and merges points along a generating set with union-find;
//! this is what counts orbits on flag-type points of the leg-extended
//! setting.

pub mod field;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{sum_range, Strategy};
use crate::leg::extend;
use crate::quiver::{DimVector, Quiver, QuiverSetting};
use crate::unionfind::DisjointSets;
use field::{group_elements, group_generators, group_order, is_prime, rank_mod, SquareMatrix};

pub use field::GroupKind;

pub const COST_ENV: &str = "QSPHERE_MAX_COST";

/// Hard limits for the oracle. Exceeding one is an error, never a
/// truncated count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostGuard {
    /// Bound on `sum_a d_source * d_target` for Burnside counts.
    pub max_space_dim: usize,
    /// Bound on the order of the group actually enumerated.
    pub max_group_order: u128,
    /// Bound on the number of points materialized for union-find counts.
    pub max_points: u128,
}

impl Default for CostGuard {
    fn default() -> Self {
        CostGuard {
            max_space_dim: 10,
            max_group_order: 10_000_000,
            max_points: 1 << 22,
        }
    }
}

impl CostGuard {
    /// Defaults, with `QSPHERE_MAX_COST` (if set) replacing both the group
    /// order and the point count limits.
    pub fn from_env() -> Result<Self> {
        let mut guard = CostGuard::default();
        if let Ok(raw) = std::env::var(COST_ENV) {
            let limit: u128 = raw.trim().parse().map_err(|_| {
                Error::Precondition(format!("{COST_ENV} must be a nonnegative integer, got `{raw}`"))
            })?;
            guard.max_group_order = limit;
            guard.max_points = limit;
        }
        Ok(guard)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub setting: QuiverSetting,
    pub prime: u64,
    pub kind: GroupKind,
    pub orbit_count: u128,
    /// Order of the whole group `prod_i G_i`, including vertices without
    /// arrows (which act trivially and are not enumerated).
    pub group_order: u128,
    pub space_size: u128,
}

/// Where each arrow's matrix lives in the flattened coordinate vector.
#[derive(Debug, Clone)]
struct SpaceLayout {
    /// `(source, target, offset)`; the block is `d_target x d_source`.
    blocks: Vec<(usize, usize, usize)>,
    dims: Vec<usize>,
    len: usize,
}

impl SpaceLayout {
    fn new(s: &QuiverSetting) -> Self {
        let dims: Vec<usize> = s.dims.0.iter().map(|&d| d as usize).collect();
        let mut blocks = Vec::new();
        let mut len = 0;
        for &(a, b) in s.quiver.arrows() {
            blocks.push((a, b, len));
            len += dims[a] * dims[b];
        }
        SpaceLayout { blocks, dims, len }
    }
}

fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn space_size(p: u64, n: usize) -> Result<u128> {
    u32::try_from(n)
        .ok()
        .and_then(|n| (p as u128).checked_pow(n))
        .ok_or_else(|| Error::CostGuard(format!("{p}^{n} points overflow")))
}

fn total_group_order(s: &QuiverSetting, p: u64, kind: GroupKind) -> Result<u128> {
    s.dims.0.iter().try_fold(1u128, |acc, &d| {
        group_order(d as usize, p, kind)
            .and_then(|g| acc.checked_mul(g))
            .ok_or_else(|| Error::CostGuard("group order overflows u128".into()))
    })
}

/// Vertices touched by at least one arrow, in canonical order.
fn acting_vertices(q: &Quiver) -> Vec<usize> {
    let mut used = vec![false; q.vertex_count()];
    for &(a, b) in q.arrows() {
        used[a] = true;
        used[b] = true;
    }
    (0..q.vertex_count()).filter(|&v| used[v]).collect()
}

/// `dim ker (f -> g_t f - f g_s)` on `d_t x d_s` matrices.
fn commutation_nullity(gs: &SquareMatrix, gt: &SquareMatrix, p: u64, buf: &mut Vec<u64>) -> usize {
    let (ds, dt) = (gs.n, gt.n);
    let m = ds * dt;
    buf.clear();
    buf.resize(m * m, 0);
    // row (r, c), column (a, b): g_t[r][a] [c == b] - [r == a] g_s[b][c]
    for r in 0..dt {
        for c in 0..ds {
            let row = (r * ds + c) * m;
            for a in 0..dt {
                buf[row + a * ds + c] += gt.get(r, a);
            }
            for b in 0..ds {
                let col = r * ds + b;
                buf[row + col] = (buf[row + col] + p - gs.get(b, c)) % p;
            }
        }
    }
    m - rank_mod(buf, m, m, p)
}

/// Exact orbit count by Burnside's lemma, with an explicit guard and
/// strategy.
pub fn count_orbits_with(
    s: &QuiverSetting,
    p: u64,
    kind: GroupKind,
    guard: &CostGuard,
    strategy: Strategy,
) -> Result<OrbitReport> {
    ensure_prime(p)?;
    let layout = SpaceLayout::new(s);
    if layout.len > guard.max_space_dim {
        return Err(Error::CostGuard(format!(
            "representation space has dimension {} (limit {})",
            layout.len, guard.max_space_dim
        )));
    }
    let acting = acting_vertices(&s.quiver);
    let mut enumerated: u128 = 1;
    for &v in &acting {
        enumerated = group_order(layout.dims[v], p, kind)
            .and_then(|g| enumerated.checked_mul(g))
            .filter(|&g| g <= guard.max_group_order)
            .ok_or_else(|| {
                Error::CostGuard(format!(
                    "acting group order exceeds {}",
                    guard.max_group_order
                ))
            })?;
    }
    let group_order = total_group_order(s, p, kind)?;
    let size = space_size(p, layout.len)?;

    let elements: Vec<Vec<SquareMatrix>> = acting
        .iter()
        .map(|&v| group_elements(layout.dims[v], p, kind))
        .collect();
    let mut slot = vec![usize::MAX; s.quiver.vertex_count()];
    for (k, &v) in acting.iter().enumerate() {
        slot[v] = k;
    }
    let fixed_sum = sum_range(strategy, enumerated as usize, |mut idx| {
        let mut chosen = vec![0usize; acting.len()];
        for k in (0..acting.len()).rev() {
            chosen[k] = idx % elements[k].len();
            idx /= elements[k].len();
        }
        let mut buf = Vec::new();
        let nullity: usize = layout
            .blocks
            .iter()
            .map(|&(a, b, _)| {
                let ga = &elements[slot[a]][chosen[slot[a]]];
                let gb = &elements[slot[b]][chosen[slot[b]]];
                commutation_nullity(ga, gb, p, &mut buf)
            })
            .sum();
        (p as u128).pow(nullity as u32)
    });
    if fixed_sum % enumerated != 0 {
        return Err(Error::Precondition(format!(
            "Burnside sum {fixed_sum} not divisible by group order {enumerated}"
        )));
    }
    Ok(OrbitReport {
        setting: s.clone(),
        prime: p,
        kind,
        orbit_count: fixed_sum / enumerated,
        group_order,
        space_size: size,
    })
}

/// Exact orbit count on `R_d(Q)(F_p)` under the Borel or the full base
/// change group, with limits taken from the environment.
pub fn count_orbits(s: &QuiverSetting, p: u64, kind: GroupKind) -> Result<OrbitReport> {
    count_orbits_with(s, p, kind, &CostGuard::from_env()?, Strategy::default())
}

fn decode(mut idx: u128, p: u64, out: &mut [u64]) {
    for x in out.iter_mut().rev() {
        *x = (idx % p as u128) as u64;
        idx /= p as u128;
    }
}

fn encode(coords: &[u64], p: u64) -> u128 {
    coords.iter().fold(0u128, |acc, &x| acc * p as u128 + x as u128)
}

/// Apply `g` at vertex `v`: `f_a <- g f_a` for arrows into `v`, then
/// `f_a <- f_a g^-1` for arrows out of `v`.
fn act(
    layout: &SpaceLayout,
    v: usize,
    g: &SquareMatrix,
    g_inv: &SquareMatrix,
    p: u64,
    coords: &mut [u64],
    tmp: &mut Vec<u64>,
) {
    for &(a, b, off) in &layout.blocks {
        let (rows, cols) = (layout.dims[b], layout.dims[a]);
        if b == v {
            tmp.clear();
            for r in 0..rows {
                for c in 0..cols {
                    let x: u64 = (0..rows).map(|k| g.get(r, k) * coords[off + k * cols + c]).sum();
                    tmp.push(x % p);
                }
            }
            coords[off..off + rows * cols].copy_from_slice(tmp);
        }
        if a == v {
            tmp.clear();
            for r in 0..rows {
                for c in 0..cols {
                    let x: u64 = (0..cols).map(|k| coords[off + r * cols + k] * g_inv.get(k, c)).sum();
                    tmp.push(x % p);
                }
            }
            coords[off..off + rows * cols].copy_from_slice(tmp);
        }
    }
}

/// Orbit count by materializing the points of `R_d(Q)(F_p)` that satisfy
/// `keep` and joining each to its images under a generating set. `keep`
/// must describe a union of orbits.
pub fn count_orbits_by_enumeration<F>(
    s: &QuiverSetting,
    p: u64,
    kind: GroupKind,
    guard: &CostGuard,
    keep: F,
) -> Result<u128>
where
    F: Fn(&[u64]) -> bool,
{
    ensure_prime(p)?;
    let layout = SpaceLayout::new(s);
    let points = space_size(p, layout.len)?;
    if points > guard.max_points {
        return Err(Error::CostGuard(format!(
            "{points} points to enumerate (limit {})",
            guard.max_points
        )));
    }
    let mut gens = Vec::new();
    for v in acting_vertices(&s.quiver) {
        for g in group_generators(layout.dims[v], p, kind) {
            let inv = g.inverse(p).expect("generators are invertible");
            gens.push((v, g, inv));
        }
    }
    let n = points as usize;
    let mut ds = DisjointSets::new(n);
    let mut kept = vec![false; n];
    let mut coords = vec![0u64; layout.len];
    let mut moved = vec![0u64; layout.len];
    let mut tmp = Vec::new();
    for (idx, flag) in kept.iter_mut().enumerate() {
        decode(idx as u128, p, &mut coords);
        if !keep(&coords) {
            continue;
        }
        *flag = true;
        for (v, g, inv) in &gens {
            moved.copy_from_slice(&coords);
            act(&layout, *v, g, inv, p, &mut moved, &mut tmp);
            ds.union(idx, encode(&moved, p) as usize);
        }
    }
    let mut roots = std::collections::HashSet::new();
    for (idx, _) in kept.iter().enumerate().filter(|(_, k)| **k) {
        roots.insert(ds.find(idx));
    }
    Ok(roots.len() as u128)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthProbe {
    pub primes: Vec<u64>,
    pub counts: Vec<u128>,
    pub growing: bool,
}

/// Borel orbit counts over increasing primes. Strict growth is evidence of
/// infinitely many orbits over the algebraic closure; constancy is not a
/// proof of the converse.
pub fn growth_probe(s: &QuiverSetting, primes: &[u64]) -> Result<GrowthProbe> {
    growth_probe_with(s, primes, &CostGuard::from_env()?, Strategy::default())
}

pub fn growth_probe_with(
    s: &QuiverSetting,
    primes: &[u64],
    guard: &CostGuard,
    strategy: Strategy,
) -> Result<GrowthProbe> {
    if primes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("primes must be strictly ascending".into()));
    }
    let counts = primes
        .iter()
        .map(|&p| count_orbits_with(s, p, GroupKind::Borel, guard, strategy).map(|r| r.orbit_count))
        .collect::<Result<Vec<_>>>()?;
    let growing = !counts.is_empty() && counts.windows(2).all(|w| w[0] < w[1]);
    Ok(GrowthProbe {
        primes: primes.to_vec(),
        counts,
        growing,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagBijection {
    pub prime: u64,
    /// Borel orbits on `R_d(Q)(F_p)`, by Burnside.
    pub borel_orbits: u128,
    /// Full-group orbits on flag-type points of `R_hat(Q_d)(F_p)`, by
    /// union-find.
    pub flag_orbits: u128,
}

impl FlagBijection {
    pub fn holds(&self) -> bool {
        self.borel_orbits == self.flag_orbits
    }
}

pub const FLAG_CHECK_MAX_TOTAL_DIM: i64 = 4;

/// Compare Borel orbits on `R_d(Q)` with base change orbits on the flag-type
/// representations of the leg-extended setting (all leg maps injective).
pub fn flag_bijection_check(s: &QuiverSetting, p: u64) -> Result<FlagBijection> {
    flag_bijection_check_with(s, p, &CostGuard::from_env()?)
}

pub fn flag_bijection_check_with(s: &QuiverSetting, p: u64, guard: &CostGuard) -> Result<FlagBijection> {
    if s.dims.sum() > FLAG_CHECK_MAX_TOTAL_DIM {
        return Err(Error::Precondition(format!(
            "flag bijection check needs total dimension <= {FLAG_CHECK_MAX_TOTAL_DIM}"
        )));
    }
    if p != 2 && p != 3 {
        return Err(Error::Precondition("flag bijection check runs over F_2 or F_3".into()));
    }
    let x = extend(s)?;
    let layout = SpaceLayout::new(&x.extended);
    let leg_arrows = s.dims.sum() as usize - s.quiver.vertex_count();
    let legs: Vec<(usize, usize, usize)> = layout.blocks[..leg_arrows]
        .iter()
        .map(|&(a, b, off)| (layout.dims[b], layout.dims[a], off))
        .collect();
    let injective_legs = |coords: &[u64]| {
        let mut m = Vec::new();
        legs.iter().all(|&(rows, cols, off)| {
            m.clear();
            m.extend_from_slice(&coords[off..off + rows * cols]);
            rank_mod(&mut m, rows, cols, p) == cols
        })
    };
    let flag_orbits =
        count_orbits_by_enumeration(&x.extended, p, GroupKind::Full, guard, injective_legs)?;
    let borel_orbits =
        count_orbits_with(s, p, GroupKind::Borel, guard, Strategy::default())?.orbit_count;
    Ok(FlagBijection {
        prime: p,
        borel_orbits,
        flag_orbits,
    })
}

/// The settings the flag bijection check is run on: small quivers of every
/// kind (paths, a star, the Kronecker quiver, an oriented 2-cycle, the
/// Jordan quiver) with total dimension at most 4.
pub fn flag_check_suite() -> Vec<QuiverSetting> {
    let mut out = Vec::new();
    let mut add = |vertices: &[&str], arrows: &[(&str, &str)]| {
        let q = Quiver::new(vertices.iter().copied(), arrows.iter().copied())
            .expect("suite quivers are well formed");
        let n = q.vertex_count();
        let mut d = vec![1i64; n];
        loop {
            if d.iter().sum::<i64>() <= FLAG_CHECK_MAX_TOTAL_DIM {
                out.push(QuiverSetting::new(q.clone(), DimVector(d.clone())).unwrap());
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                d[k] += 1;
                if d[k] <= FLAG_CHECK_MAX_TOTAL_DIM {
                    break;
                }
                d[k] = 1;
            }
        }
    };
    add(&["1"], &[]);
    add(&["1", "2"], &[("1", "2")]);
    add(&["1", "2", "3"], &[("1", "2"), ("2", "3")]);
    add(&["1", "2", "3"], &[("1", "2"), ("3", "2")]);
    add(&["1", "2", "3", "4"], &[("1", "2"), ("2", "3"), ("3", "4")]);
    add(&["c", "x", "y", "z"], &[("x", "c"), ("y", "c"), ("z", "c")]);
    add(&["1", "2"], &[("1", "2"), ("1", "2")]);
    add(&["1", "2"], &[("1", "2"), ("2", "1")]);
    add(&["1"], &[("1", "1")]);
    out
}
