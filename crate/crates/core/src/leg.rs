//! The leg-extended quiver `Q_d`: every vertex `i` is replaced by a chain
//! `(i,1) -> ... -> (i,d_i)` and every arrow `i -> j` is attached between
//! the tops `(i,d_i) -> (j,d_j)`. The hat dimension vector puts `k` at
//! `(i,k)`.

use std::ops::ControlFlow;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, LabeledVector, Quiver, QuiverSetting};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegExtendedSetting {
    /// `Q_d` with the hat dimension vector.
    pub extended: QuiverSetting,
    /// Extended vertex index -> (original vertex index, level starting at 1).
    pub level_of: Vec<(usize, usize)>,
    /// Original vertex index -> extended index of its top `(i, d_i)`.
    pub top_of: Vec<usize>,
    /// Original vertex index -> extended index of `(i, 1)`.
    pub leg_start: Vec<usize>,
    original_names: Vec<String>,
}

pub fn vertex_label(original: &str, level: usize) -> String {
    format!("({original},{level})")
}

/// Build `Q_d` and the hat dimension vector. Legs are laid out contiguously
/// in canonical vertex order; leg arrows come first, then the original
/// arrows between the tops in input order.
pub fn extend(s: &QuiverSetting) -> Result<LegExtendedSetting> {
    let q = &s.quiver;
    if let Some(i) = s.dims.0.iter().position(|&d| d < 1) {
        return Err(Error::ZeroDimension(q.name(i).to_string()));
    }
    let mut names = Vec::new();
    let mut hat = Vec::new();
    let mut level_of = Vec::new();
    let mut top_of = Vec::with_capacity(q.vertex_count());
    let mut leg_start = Vec::with_capacity(q.vertex_count());
    let mut arrows = Vec::new();
    for (i, &d) in s.dims.0.iter().enumerate() {
        leg_start.push(names.len());
        for k in 1..=d as usize {
            if k > 1 {
                arrows.push((names.len() - 1, names.len()));
            }
            names.push(vertex_label(q.name(i), k));
            hat.push(k as i64);
            level_of.push((i, k));
        }
        top_of.push(names.len() - 1);
    }
    arrows.extend(q.arrows().iter().map(|&(a, b)| (top_of[a], top_of[b])));
    Ok(LegExtendedSetting {
        extended: QuiverSetting {
            quiver: Quiver::from_indices(names, arrows),
            dims: DimVector(hat),
        },
        level_of,
        top_of,
        leg_start,
        original_names: q.vertices().to_vec(),
    })
}

impl LegExtendedSetting {
    pub fn quiver(&self) -> &Quiver {
        &self.extended.quiver
    }

    pub fn hat(&self) -> &DimVector {
        &self.extended.dims
    }

    pub fn vertex_count(&self) -> usize {
        self.level_of.len()
    }

    /// Extended index of `(i, k)`.
    pub fn index(&self, original: usize, level: usize) -> usize {
        self.leg_start[original] + level - 1
    }

    pub fn leg_count(&self) -> usize {
        self.leg_start.len()
    }

    fn leg_range(&self, original: usize) -> std::ops::Range<usize> {
        self.leg_start[original]..self.top_of[original] + 1
    }

    /// Label an extended vector for output.
    pub fn labeled(&self, e: &DimVector) -> LabeledVector {
        e.labeled(self.quiver())
    }

    fn check_box(&self, e: &DimVector) -> Result<()> {
        if e.len() != self.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: self.vertex_count(),
                got: e.len(),
            });
        }
        if !e.is_nonnegative() || !e.le(self.hat()) {
            return Err(Error::OutOfBox);
        }
        Ok(())
    }

    fn legs_nondecreasing(&self, e: &[i64]) -> bool {
        (0..self.leg_count()).all(|i| e[self.leg_range(i)].windows(2).all(|w| w[0] <= w[1]))
    }

    /// Increment form: the first entry of every leg and every step along it
    /// lie in `{0, 1}`.
    pub fn gentle_by_increments(&self, e: &[i64]) -> bool {
        (0..self.leg_count()).all(|i| {
            let leg = &e[self.leg_range(i)];
            (0..=1).contains(&leg[0]) && leg.windows(2).all(|w| (0..=1).contains(&(w[1] - w[0])))
        })
    }

    /// Double flag form: both `e` and `hat - e` are of flag type.
    pub fn gentle_by_double_flag(&self, e: &[i64]) -> bool {
        let complement: Vec<i64> = self.hat().0.iter().zip(e).map(|(h, x)| h - x).collect();
        self.legs_nondecreasing(e) && self.legs_nondecreasing(&complement)
    }

    /// Visit every nonzero gentle vector in enumeration order until `f`
    /// breaks. The buffer handed to `f` is reused between calls.
    pub fn visit_gentle<F>(&self, mut f: F) -> ControlFlow<()>
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
    {
        let mut cursor = GentleCursor::new(self);
        while let Some(e) = cursor.advance() {
            f(e)?;
        }
        ControlFlow::Continue(())
    }

    /// Number of gentle vectors including zero, `prod_i 2^{d_i}`, if it fits.
    pub fn gentle_count(&self) -> Option<u128> {
        1u128.checked_shl(u32::try_from(self.vertex_count()).ok()?)
    }
}

impl Serialize for LegExtendedSetting {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Levels<'a>(&'a LegExtendedSetting);
        impl Serialize for Levels<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let x = self.0;
                let mut map = serializer.serialize_map(Some(x.vertex_count()))?;
                for (v, &(i, k)) in x.level_of.iter().enumerate() {
                    map.serialize_entry(
                        x.quiver().name(v),
                        &(x.original_names[i].as_str(), k),
                    )?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(4))?;
        let setting = serde_json::to_value(&self.extended).map_err(serde::ser::Error::custom)?;
        for key in ["vertices", "arrows", "dims"] {
            map.serialize_entry(key, &setting[key])?;
        }
        map.serialize_entry("level_of", &Levels(self))?;
        map.end()
    }
}

/// Whether every leg of `e` is nondecreasing. `e` must satisfy
/// `0 <= e <= hat`.
pub fn is_flag_type(x: &LegExtendedSetting, e: &DimVector) -> Result<bool> {
    x.check_box(e)?;
    Ok(x.legs_nondecreasing(&e.0))
}

/// Whether `e` and `hat - e` are both of flag type. Both characterizations
/// are evaluated and must agree.
pub fn is_gentle(x: &LegExtendedSetting, e: &DimVector) -> Result<bool> {
    x.check_box(e)?;
    let by_increments = x.gentle_by_increments(&e.0);
    assert_eq!(
        by_increments,
        x.gentle_by_double_flag(&e.0),
        "gentle characterizations disagree on {e}"
    );
    Ok(by_increments)
}

/// Odometer over the leg increment bits. Bits are indexed like the extended
/// vertices, the first vertex being the most significant digit.
struct GentleCursor<'a> {
    x: &'a LegExtendedSetting,
    bits: Vec<bool>,
    e: Vec<i64>,
    done: bool,
}

impl<'a> GentleCursor<'a> {
    fn new(x: &'a LegExtendedSetting) -> Self {
        let n = x.vertex_count();
        GentleCursor {
            x,
            bits: vec![false; n],
            e: vec![0; n],
            done: false,
        }
    }

    fn advance(&mut self) -> Option<&[i64]> {
        if self.done {
            return None;
        }
        let Some(p) = self.bits.iter().rposition(|&b| !b) else {
            self.done = true;
            return None;
        };
        self.bits[p] = true;
        for b in &mut self.bits[p + 1..] {
            *b = false;
        }
        for v in p..self.bits.len() {
            let below = if self.x.level_of[v].1 == 1 { 0 } else { self.e[v - 1] };
            self.e[v] = below + self.bits[v] as i64;
        }
        Some(&self.e)
    }
}

/// Every nonzero gentle vector below the hat vector, each exactly once.
pub struct GentleIter<'a> {
    cursor: GentleCursor<'a>,
}

impl Iterator for GentleIter<'_> {
    type Item = DimVector;

    fn next(&mut self) -> Option<DimVector> {
        self.cursor.advance().map(|e| DimVector(e.to_vec()))
    }
}

pub fn enumerate_gentle(x: &LegExtendedSetting) -> GentleIter<'_> {
    GentleIter {
        cursor: GentleCursor::new(x),
    }
}

/// Push a vector on the extension of `small` into the extension of `big`
/// along `(i, k) -> (i, k + big_i - small_i)`; vertices of the big extension
/// not hit get 0.
pub fn lift_witness(small: &QuiverSetting, big: &QuiverSetting, e: &DimVector) -> Result<DimVector> {
    if small.quiver != big.quiver {
        return Err(Error::QuiverMismatch);
    }
    if !small.dims.le(&big.dims) {
        return Err(Error::NotComparable);
    }
    let xs = extend(small)?;
    let xb = extend(big)?;
    if e.len() != xs.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: xs.vertex_count(),
            got: e.len(),
        });
    }
    let mut out = DimVector::zeros(xb.vertex_count());
    for (v, &(i, k)) in xs.level_of.iter().enumerate() {
        let shift = (big.dims.0[i] - small.dims.0[i]) as usize;
        out.0[xb.index(i, k + shift)] = e.0[v];
    }
    Ok(out)
}
