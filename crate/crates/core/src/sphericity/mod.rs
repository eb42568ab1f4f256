//! The two sphericity deciders and their reconciliation.
//!
//! The root criterion looks for a gentle imaginary root of the leg-extended
//! quiver below the hat vector; its absence is equivalent to sphericity. The
//! structural decider accepts exactly the simple trees whose maximal thin
//! connected-sum pieces are single vertices, single edges, or two-edge paths
//! whose middle has dimension at most 2 or which have an end of dimension 1.

mod scan;

pub use scan::{scan, scan_trees, Disagreement, MonotonicityViolation, ScanReport, MAX_SCAN_VERTICES};

use std::ops::ControlFlow;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::leg::{extend, LegExtendedSetting};
use crate::quiver::{
    split_at_thin_cut_vertices, underlying_analysis, DimVector, LabeledVector, QuiverSetting,
};
use crate::roots::CartanForm;

/// Largest leg-extended quiver (sum of dimensions) the root criterion will
/// search exhaustively: `2^32` gentle vectors.
pub const MAX_GENTLE_BITS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    RootCriterion,
    Structural,
    Both,
}

/// Shape label of a piece of the thin connected-sum decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    A1,
    A2,
    #[serde(rename = "A3-(m,n,1)")]
    A3ThinEnd,
    #[serde(rename = "A3-(m,2,n)")]
    A3ThinMiddle,
    #[serde(rename = "forbidden")]
    Forbidden,
}

impl Shape {
    pub fn is_admissible(self) -> bool {
        self != Shape::Forbidden
    }

    pub fn label(self) -> &'static str {
        match self {
            Shape::A1 => "A1",
            Shape::A2 => "A2",
            Shape::A3ThinEnd => "A3-(m,n,1)",
            Shape::A3ThinMiddle => "A3-(m,2,n)",
            Shape::Forbidden => "forbidden",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub setting: QuiverSetting,
    pub shape: Shape,
}

impl Serialize for Piece {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let value = serde_json::to_value(&self.setting).map_err(serde::ser::Error::custom)?;
        let mut map = serializer.serialize_map(Some(4))?;
        for key in ["vertices", "arrows", "dims"] {
            map.serialize_entry(key, &value[key])?;
        }
        map.serialize_entry("shape", &self.shape)?;
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericityVerdict {
    pub spherical: bool,
    pub method: Method,
    /// Gentle imaginary root on `Q_d`, present iff the root criterion found
    /// the setting non-spherical.
    pub witness: Option<LabeledVector>,
    /// Pieces with shape labels, present when the structural decider ran on
    /// a simple tree.
    pub pieces: Option<Vec<Piece>>,
    pub agreement: Option<bool>,
}

impl Serialize for SphericityVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(5))?;
        map.serialize_entry("spherical", &self.spherical)?;
        map.serialize_entry("method", &self.method)?;
        map.serialize_entry("witness", &self.witness)?;
        map.serialize_entry("pieces", self.pieces.as_deref().unwrap_or(&[]))?;
        map.serialize_entry("agreement", &self.agreement)?;
        map.end()
    }
}

fn ensure_decidable(s: &QuiverSetting) -> Result<()> {
    if s.is_empty() {
        return Err(Error::Precondition("empty setting".into()));
    }
    if let Some(i) = s.dims.0.iter().position(|&d| d < 1) {
        return Err(Error::ZeroDimension(s.quiver.name(i).to_string()));
    }
    if !s.quiver.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Extension plus its symmetrized form, after checking the root criterion's
/// preconditions.
fn prepare_root_search(s: &QuiverSetting) -> Result<(LegExtendedSetting, CartanForm)> {
    ensure_decidable(s)?;
    if !s.quiver.is_acyclic() {
        return Err(Error::OrientedCycle);
    }
    let total = s.dims.sum() as usize;
    if total > MAX_GENTLE_BITS {
        return Err(Error::CostGuard(format!(
            "root criterion would enumerate 2^{total} gentle vectors (limit 2^{MAX_GENTLE_BITS})"
        )));
    }
    let x = extend(s)?;
    let form = CartanForm::new(x.quiver())?;
    Ok((x, form))
}

/// First gentle imaginary root in enumeration order, if any.
pub fn first_gentle_imaginary(x: &LegExtendedSetting, form: &CartanForm) -> Option<DimVector> {
    let mut scratch = Vec::with_capacity(x.vertex_count());
    let mut found = None;
    let _ = x.visit_gentle(|e| {
        if form.is_imaginary(e, &mut scratch) {
            found = Some(DimVector(e.to_vec()));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// Spherical iff no gentle `e <= hat(d)` is an imaginary root of `Q_d`.
pub fn is_spherical_root_criterion(s: &QuiverSetting) -> Result<SphericityVerdict> {
    let (x, form) = prepare_root_search(s)?;
    let witness = first_gentle_imaginary(&x, &form);
    Ok(SphericityVerdict {
        spherical: witness.is_none(),
        method: Method::RootCriterion,
        witness: witness.map(|w| x.labeled(&w)),
        pieces: None,
        agreement: None,
    })
}

/// Gentle imaginary root of least entry sum (earliest in enumeration order
/// on ties); `None` iff the setting is spherical.
pub fn minimal_witness(s: &QuiverSetting) -> Result<Option<LabeledVector>> {
    let (x, form) = prepare_root_search(s)?;
    let mut scratch = Vec::with_capacity(x.vertex_count());
    let mut best: Option<(i64, Vec<i64>)> = None;
    let _ = x.visit_gentle(|e| {
        let sum: i64 = e.iter().sum();
        if best.as_ref().is_none_or(|(b, _)| sum < *b) && form.is_imaginary(e, &mut scratch) {
            best = Some((sum, e.to_vec()));
        }
        ControlFlow::Continue(())
    });
    Ok(best.map(|(_, e)| x.labeled(&DimVector(e))))
}

pub fn piece_shape(p: &QuiverSetting) -> Shape {
    let q = &p.quiver;
    match (q.vertex_count(), q.arrow_count()) {
        (1, 0) => Shape::A1,
        (2, 1) => Shape::A2,
        (3, 2) => {
            let degrees = q.degrees();
            let Some(mid) = degrees.iter().position(|&d| d == 2) else {
                return Shape::Forbidden;
            };
            let ends_thin = (0..3).any(|v| v != mid && p.dims.0[v] == 1);
            if p.dims.0[mid] <= 2 {
                Shape::A3ThinMiddle
            } else if ends_thin {
                Shape::A3ThinEnd
            } else {
                Shape::Forbidden
            }
        }
        _ => Shape::Forbidden,
    }
}

/// Spherical iff the underlying graph is a simple tree and every piece of
/// the maximal thin connected-sum decomposition has an admissible shape.
pub fn is_spherical_structural(s: &QuiverSetting) -> Result<SphericityVerdict> {
    ensure_decidable(s)?;
    if !underlying_analysis(s).simple_tree {
        return Ok(SphericityVerdict {
            spherical: false,
            method: Method::Structural,
            witness: None,
            pieces: None,
            agreement: None,
        });
    }
    let dec = split_at_thin_cut_vertices(s)?;
    let pieces: Vec<Piece> = dec
        .pieces
        .into_iter()
        .map(|setting| {
            let shape = piece_shape(&setting);
            Piece { setting, shape }
        })
        .collect();
    Ok(SphericityVerdict {
        spherical: pieces.iter().all(|p| p.shape.is_admissible()),
        method: Method::Structural,
        witness: None,
        pieces: Some(pieces),
        agreement: None,
    })
}

/// Run the structural decider, and the root criterion too when the quiver is
/// acyclic and small enough to search. The structural flag is returned.
pub fn check(s: &QuiverSetting) -> Result<SphericityVerdict> {
    let mut verdict = is_spherical_structural(s)?;
    if !s.quiver.is_acyclic() {
        return Ok(verdict);
    }
    match is_spherical_root_criterion(s) {
        Ok(root) => {
            verdict.agreement = Some(root.spherical == verdict.spherical);
            verdict.witness = root.witness;
            verdict.method = Method::Both;
            Ok(verdict)
        }
        Err(Error::CostGuard(_)) => Ok(verdict),
        Err(e) => Err(e),
    }
}
