//! Euler form, simple reflections and the real / imaginary / non-root
//! classifier for loop-free quivers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, LabeledVector, Quiver, QuiverSetting};

/// The symmetrized Euler form of a loop-free quiver, stored as the edge
/// multiplicities of the underlying graph. `(d, i) = 2 d_i - sum_j m_ij d_j`.
#[derive(Debug, Clone)]
pub struct CartanForm {
    n: usize,
    /// `(neighbour, multiplicity)` per vertex.
    adjacency: Vec<Vec<(usize, i64)>>,
}

impl CartanForm {
    pub fn new(q: &Quiver) -> Result<Self> {
        q.ensure_loop_free()?;
        let n = q.vertex_count();
        let mut adjacency: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
        for &(s, t) in q.arrows() {
            for (a, b) in [(s, t), (t, s)] {
                match adjacency[a].iter_mut().find(|(w, _)| *w == b) {
                    Some((_, m)) => *m += 1,
                    None => adjacency[a].push((b, 1)),
                }
            }
        }
        Ok(CartanForm { n, adjacency })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// `(d, e_i)` for the coordinate vector `e_i`.
    #[inline]
    pub fn pair_with_unit(&self, d: &[i64], i: usize) -> i64 {
        2 * d[i]
            - self.adjacency[i]
                .iter()
                .map(|&(j, m)| m * d[j])
                .sum::<i64>()
    }

    pub fn pair(&self, d: &[i64], e: &[i64]) -> i64 {
        (0..self.n).map(|i| e[i] * self.pair_with_unit(d, i)).sum()
    }

    /// `(d, d)`, twice the Tits form.
    #[inline]
    pub fn quadratic(&self, d: &[i64]) -> i64 {
        let mut q = 0;
        for i in 0..self.n {
            if d[i] != 0 {
                q += d[i] * self.pair_with_unit(d, i);
            }
        }
        q
    }

    /// In-place `d <- d - (d, e_i) e_i`.
    #[inline]
    pub fn reflect_in_place(&self, d: &mut [i64], i: usize) {
        d[i] -= self.pair_with_unit(d, i);
    }

    /// Whether the positive entries of `d` span a connected subgraph.
    pub fn support_connected(&self, d: &[i64]) -> bool {
        let Some(start) = d.iter().position(|&x| x > 0) else {
            return true;
        };
        let total = d.iter().filter(|&&x| x > 0).count();
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adjacency[v] {
                if d[w] > 0 && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == total
    }

    /// Membership in the fundamental domain, for a nonzero nonnegative `d`.
    pub fn in_fundamental_domain(&self, d: &[i64]) -> bool {
        self.support_connected(d) && (0..self.n).all(|i| self.pair_with_unit(d, i) <= 0)
    }

    /// Reflection reduction of a nonzero nonnegative vector. `d` is left at
    /// the representative (or at the first vector with a negative entry).
    /// Indices of the reflections applied are pushed onto `trace`.
    pub fn reduce(&self, d: &mut [i64], mut trace: Option<&mut Vec<usize>>) -> RootKind {
        loop {
            if is_coordinate(d) {
                return RootKind::RealRoot;
            }
            if !self.support_connected(d) {
                return RootKind::NotRoot;
            }
            let mut best: Option<(usize, i64)> = None;
            for i in 0..self.n {
                if d[i] == 0 {
                    continue;
                }
                let p = self.pair_with_unit(d, i);
                if p > 0 && best.is_none_or(|(_, b)| p > b) {
                    best = Some((i, p));
                }
            }
            let Some((i, p)) = best else {
                return RootKind::ImaginaryRoot;
            };
            d[i] -= p;
            if let Some(t) = trace.as_deref_mut() {
                t.push(i);
            }
            if d[i] < 0 {
                return RootKind::NotRoot;
            }
        }
    }

    /// Classification without trace bookkeeping; `scratch` is overwritten.
    pub fn kind_of(&self, d: &[i64], scratch: &mut Vec<i64>) -> RootKind {
        scratch.clear();
        scratch.extend_from_slice(d);
        self.reduce(scratch, None)
    }

    /// True iff `d` is a positive imaginary root. Vectors with `(d,d) > 0`
    /// are rejected without reduction, since the form is Weyl-invariant and
    /// nonpositive on the fundamental domain.
    pub fn is_imaginary(&self, d: &[i64], scratch: &mut Vec<i64>) -> bool {
        self.quadratic(d) <= 0 && self.kind_of(d, scratch) == RootKind::ImaginaryRoot
    }
}

fn is_coordinate(d: &[i64]) -> bool {
    let mut ones = 0;
    for &x in d {
        match x {
            0 => {}
            1 => ones += 1,
            _ => return false,
        }
    }
    ones == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RootKind {
    RealRoot,
    ImaginaryRoot,
    NotRoot,
}

/// Outcome of [`classify_root`]: the kind, the vertices reflected at (in
/// order) and the vector the reduction stopped at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootClass {
    pub kind: RootKind,
    pub trace: Vec<usize>,
    /// A coordinate vector for real roots, a fundamental-domain element for
    /// imaginary roots, absent otherwise.
    pub representative: Option<DimVector>,
}

#[derive(Debug, Serialize)]
pub struct RootClassReport {
    pub kind: RootKind,
    pub trace: Vec<String>,
    pub representative: Option<LabeledVector>,
}

impl RootClass {
    pub fn report(&self, q: &Quiver) -> RootClassReport {
        RootClassReport {
            kind: self.kind,
            trace: self.trace.iter().map(|&i| q.name(i).to_string()).collect(),
            representative: self.representative.as_ref().map(|r| r.labeled(q)),
        }
    }
}

fn check_len(q: &Quiver, d: &DimVector) -> Result<()> {
    if d.len() != q.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: q.vertex_count(),
            got: d.len(),
        });
    }
    Ok(())
}

fn check_positive(q: &Quiver, d: &DimVector) -> Result<()> {
    check_len(q, d)?;
    if let Some(i) = d.0.iter().position(|&x| x < 0) {
        return Err(Error::NegativeEntry(q.name(i).to_string()));
    }
    if d.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// `<d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j`.
pub fn euler_form(q: &Quiver, d: &DimVector, e: &DimVector) -> Result<i64> {
    q.ensure_loop_free()?;
    check_len(q, d)?;
    check_len(q, e)?;
    let diag: i64 = d.0.iter().zip(&e.0).map(|(a, b)| a * b).sum();
    let off: i64 = q.arrows().iter().map(|&(s, t)| d.0[s] * e.0[t]).sum();
    Ok(diag - off)
}

/// Symmetrization `(d, e) = <d, e> + <e, d>`.
pub fn cartan_pairing(q: &Quiver, d: &DimVector, e: &DimVector) -> Result<i64> {
    Ok(euler_form(q, d, e)? + euler_form(q, e, d)?)
}

/// Simple reflection `s_i(d) = d - (d, e_i) e_i`.
pub fn reflect(q: &Quiver, d: &DimVector, vertex: &str) -> Result<DimVector> {
    let i = q.require_index(vertex)?;
    check_len(q, d)?;
    let form = CartanForm::new(q)?;
    let mut out = d.clone();
    form.reflect_in_place(&mut out.0, i);
    Ok(out)
}

pub fn in_fundamental_domain(q: &Quiver, d: &DimVector) -> Result<bool> {
    check_positive(q, d)?;
    let form = CartanForm::new(q)?;
    Ok(form.in_fundamental_domain(&d.0))
}

/// Classify a nonzero nonnegative vector by reflection reduction: reflect at
/// the vertex with the largest positive pairing (earliest on ties) until a
/// coordinate vector, a fundamental-domain element, a disconnected support
/// or a negative entry is reached.
pub fn classify_root(q: &Quiver, d: &DimVector) -> Result<RootClass> {
    check_positive(q, d)?;
    let form = CartanForm::new(q)?;
    let mut work = d.0.clone();
    let mut trace = Vec::new();
    let kind = form.reduce(&mut work, Some(&mut trace));
    let representative = match kind {
        RootKind::NotRoot => None,
        _ => Some(DimVector(work)),
    };
    Ok(RootClass {
        kind,
        trace,
        representative,
    })
}

/// Whether the full base change group has finitely many orbits, i.e. no
/// `0 != e <= d` is an imaginary root. Requires an acyclic quiver.
pub fn finite_orbit_type(s: &QuiverSetting) -> Result<bool> {
    if !s.quiver.is_acyclic() {
        return Err(Error::OrientedCycle);
    }
    let form = CartanForm::new(&s.quiver)?;
    let bound = &s.dims.0;
    let n = bound.len();
    let mut e = vec![0i64; n];
    let mut scratch = Vec::with_capacity(n);
    // odometer over the box, last coordinate fastest
    loop {
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(true);
            }
            k -= 1;
            if e[k] < bound[k] {
                e[k] += 1;
                break;
            }
            e[k] = 0;
        }
        if form.is_imaginary(&e, &mut scratch) {
            return Ok(false);
        }
    }
}
