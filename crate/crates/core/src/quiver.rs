//! Quivers, dimension vectors and quiver settings, together with the
//! underlying-graph analysis used by the structural decider.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::unionfind::DisjointSets;

/// A finite quiver. Vertices are opaque string identifiers kept in input
/// order; arrows are stored as index pairs in input order and may repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
}

impl Quiver {
    pub fn new<S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
        arrows: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut resolved = Vec::new();
        for (s, t) in arrows {
            let (s, t): (String, String) = (s.into(), t.into());
            let si = *index.get(&s).ok_or(Error::UnknownVertex(s))?;
            let ti = *index.get(&t).ok_or(Error::UnknownVertex(t))?;
            resolved.push((si, ti));
        }
        Ok(Quiver {
            vertices,
            arrows: resolved,
            index,
        })
    }

    /// Build from vertex names and index-based arrows.
    ///
    /// Panics if an arrow index is out of range or names repeat; used for
    /// quivers constructed internally.
    pub fn from_indices(vertices: Vec<String>, arrows: Vec<(usize, usize)>) -> Self {
        let index: HashMap<String, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        assert_eq!(index.len(), vertices.len(), "duplicate vertex names");
        let n = vertices.len();
        assert!(arrows.iter().all(|&(s, t)| s < n && t < n));
        Quiver {
            vertices,
            arrows,
            index,
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn index_of(&self, vertex: &str) -> Option<usize> {
        self.index.get(vertex).copied()
    }

    pub fn require_index(&self, vertex: &str) -> Result<usize> {
        self.index_of(vertex)
            .ok_or_else(|| Error::UnknownVertex(vertex.to_string()))
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    /// First vertex carrying a loop, if any.
    pub fn loop_vertex(&self) -> Option<usize> {
        self.arrows.iter().find(|(s, t)| s == t).map(|&(s, _)| s)
    }

    pub fn ensure_loop_free(&self) -> Result<()> {
        match self.loop_vertex() {
            Some(v) => Err(Error::Loop(self.vertices[v].clone())),
            None => Ok(()),
        }
    }

    /// True iff there is no oriented cycle (loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertex_count();
        let mut indegree = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(s, t) in &self.arrows {
            indegree[t] += 1;
            out[s].push(t);
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &w in &out[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        seen == n
    }

    /// Neighbour lists of the underlying undirected multigraph, one entry
    /// per arrow end (a loop contributes its vertex twice).
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(s, t) in &self.arrows {
            adj[s].push(t);
            adj[t].push(s);
        }
        adj
    }

    /// Number of arrow ends at each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for &(s, t) in &self.arrows {
            deg[s] += 1;
            deg[t] += 1;
        }
        deg
    }

    /// Whether the vertices selected by `mask` induce a connected subgraph.
    /// The empty selection counts as connected.
    pub fn is_connected_on(&self, mask: &[bool]) -> bool {
        let n = self.vertex_count();
        let Some(start) = (0..n).find(|&v| mask[v]) else {
            return true;
        };
        let adj = self.neighbours();
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if mask[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == mask.iter().filter(|&&m| m).count()
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(&vec![true; self.vertex_count()])
    }

    /// The full subquiver on `keep` (indices into this quiver, in the order
    /// given), with every arrow whose ends both survive.
    pub fn induced(&self, keep: &[usize]) -> Quiver {
        let mut map = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let arrows = self
            .arrows
            .iter()
            .filter(|&&(s, t)| map[s] != usize::MAX && map[t] != usize::MAX)
            .map(|&(s, t)| (map[s], map[t]))
            .collect();
        let vertices = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        Quiver::from_indices(vertices, arrows)
    }

    /// Copy with arrow `k` reversed.
    pub fn with_reversed_arrow(&self, k: usize) -> Quiver {
        let mut q = self.clone();
        let (s, t) = q.arrows[k];
        q.arrows[k] = (t, s);
        q
    }
}

/// An integer vector indexed by the vertices of a quiver, in the quiver's
/// canonical vertex order. Entries may be negative while reflecting.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zeros(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// Coordinate vector of vertex `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Support mask: entries that are strictly positive.
    pub fn support(&self) -> Vec<bool> {
        self.0.iter().map(|&x| x > 0).collect()
    }

    /// Entrywise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Index of the single nonzero entry when this is a coordinate vector.
    pub fn coordinate_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &x) in self.0.iter().enumerate() {
            match x {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    pub fn sub(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Attach vertex labels for serialization.
    pub fn labeled(&self, quiver: &Quiver) -> LabeledVector {
        LabeledVector::new(quiver.vertices().to_vec(), self.clone())
    }

    /// Read a `{vertex: value}` map; vertices absent from the map get 0.
    pub fn from_labeled_json(quiver: &Quiver, text: &str) -> Result<DimVector> {
        let map: HashMap<String, i64> =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut v = vec![0; quiver.vertex_count()];
        for (k, x) in map {
            v[quiver.require_index(&k)?] = x;
        }
        Ok(DimVector(v))
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> Self {
        DimVector(v)
    }
}

/// A vector together with its vertex labels; serializes as a JSON object
/// `{label: value}` in label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledVector {
    pub labels: Vec<String>,
    pub values: DimVector,
}

impl LabeledVector {
    pub fn new(labels: Vec<String>, values: DimVector) -> Self {
        assert_eq!(labels.len(), values.len());
        LabeledVector { labels, values }
    }

    pub fn get(&self, label: &str) -> Option<i64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.values.0[i])
    }
}

impl Serialize for LabeledVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.labels.len()))?;
        for (l, v) in self.labels.iter().zip(&self.values.0) {
            map.serialize_entry(l, v)?;
        }
        map.end()
    }
}

/// A quiver together with a nonnegative dimension vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverSetting {
    pub quiver: Quiver,
    pub dims: DimVector,
}

impl QuiverSetting {
    pub fn new(quiver: Quiver, dims: DimVector) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: quiver.vertex_count(),
                got: dims.len(),
            });
        }
        if let Some(i) = dims.0.iter().position(|&x| x < 0) {
            return Err(Error::NegativeDimension {
                vertex: quiver.name(i).to_string(),
                value: dims.0[i],
            });
        }
        Ok(QuiverSetting { quiver, dims })
    }

    /// Convenience constructor for tests and fixtures.
    pub fn build(vertices: &[&str], arrows: &[(&str, &str)], dims: &[i64]) -> Result<Self> {
        let q = Quiver::new(vertices.iter().copied(), arrows.iter().copied())?;
        QuiverSetting::new(q, DimVector(dims.to_vec()))
    }

    /// Same quiver, different dimension vector.
    pub fn with_dims(&self, dims: DimVector) -> Result<Self> {
        QuiverSetting::new(self.quiver.clone(), dims)
    }

    pub fn dim_of(&self, vertex: &str) -> Option<i64> {
        self.quiver.index_of(vertex).map(|i| self.dims.0[i])
    }

    pub fn is_empty(&self) -> bool {
        self.quiver.vertex_count() == 0
    }

    /// Canonical compact JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("setting serialization cannot fail")
    }

    pub fn induced(&self, keep: &[usize]) -> QuiverSetting {
        QuiverSetting {
            quiver: self.quiver.induced(keep),
            dims: DimVector(keep.iter().map(|&i| self.dims.0[i]).collect()),
        }
    }
}

impl fmt::Display for QuiverSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

struct ArrowNames<'a>(&'a Quiver);

impl Serialize for ArrowNames<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(
            self.0
                .arrows()
                .iter()
                .map(|&(s, t)| [self.0.name(s), self.0.name(t)]),
        )
    }
}

impl Serialize for QuiverSetting {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("QuiverSetting", 3)?;
        st.serialize_field("vertices", self.quiver.vertices())?;
        st.serialize_field("arrows", &ArrowNames(&self.quiver))?;
        st.serialize_field("dims", &self.dims.labeled(&self.quiver))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSetting {
    vertices: Vec<String>,
    arrows: Vec<(String, String)>,
    dims: HashMap<String, i64>,
}

/// Parse the JSON setting format
/// `{"vertices": [...], "arrows": [[s, t], ...], "dims": {v: n, ...}}`.
pub fn parse_setting(text: &str) -> Result<QuiverSetting> {
    let raw: RawSetting =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let quiver = Quiver::new(raw.vertices, raw.arrows)?;
    for key in raw.dims.keys() {
        quiver.require_index(key)?;
    }
    let mut dims = Vec::with_capacity(quiver.vertex_count());
    for v in quiver.vertices() {
        let d = *raw
            .dims
            .get(v)
            .ok_or_else(|| Error::MissingDimension(v.clone()))?;
        if d < 0 {
            return Err(Error::NegativeDimension {
                vertex: v.clone(),
                value: d,
            });
        }
        dims.push(d);
    }
    QuiverSetting::new(quiver, DimVector(dims))
}

/// Drop every vertex of dimension 0 together with its incident arrows.
pub fn restrict_to_support(s: &QuiverSetting) -> QuiverSetting {
    let keep: Vec<usize> = (0..s.quiver.vertex_count())
        .filter(|&i| s.dims.0[i] > 0)
        .collect();
    s.induced(&keep)
}

/// Connected components, ordered by their first vertex.
pub fn components(s: &QuiverSetting) -> Vec<QuiverSetting> {
    let n = s.quiver.vertex_count();
    let mut ds = DisjointSets::new(n);
    for &(a, b) in s.quiver.arrows() {
        ds.union(a, b);
    }
    let mut order: Vec<usize> = Vec::new();
    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..n {
        let r = ds.find(v);
        members
            .entry(r)
            .or_insert_with(|| {
                order.push(r);
                Vec::new()
            })
            .push(v);
    }
    order.iter().map(|r| s.induced(&members[r])).collect()
}

/// Shape summary of the underlying undirected multigraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub connected: bool,
    pub simple_tree: bool,
    pub has_cycle_or_multiedge: bool,
    pub has_loop: bool,
}

pub fn analyse_quiver(q: &Quiver) -> Analysis {
    let n = q.vertex_count();
    let has_loop = q.loop_vertex().is_some();
    let mut ds = DisjointSets::new(n);
    let mut forest = !has_loop;
    for &(s, t) in q.arrows() {
        if s != t && !ds.union(s, t) {
            forest = false;
        }
    }
    let connected = q.is_connected();
    Analysis {
        connected,
        simple_tree: n > 0 && connected && forest && q.arrow_count() + 1 == n,
        has_cycle_or_multiedge: !forest,
        has_loop,
    }
}

pub fn underlying_analysis(s: &QuiverSetting) -> Analysis {
    analyse_quiver(&s.quiver)
}

/// Result of cutting a tree setting at its thin cut vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceDecomposition {
    pub pieces: Vec<QuiverSetting>,
    pub glue_vertices: Vec<String>,
}

impl PieceDecomposition {
    /// Glue the pieces back along shared vertex names. Vertices come out in
    /// order of first appearance, arrows in piece order.
    pub fn reglue(&self) -> QuiverSetting {
        let mut names: Vec<String> = Vec::new();
        let mut dims: Vec<i64> = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut arrows = Vec::new();
        for p in &self.pieces {
            let local: Vec<usize> = p
                .quiver
                .vertices()
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    *seen.entry(v.clone()).or_insert_with(|| {
                        names.push(v.clone());
                        dims.push(p.dims.0[i]);
                        names.len() - 1
                    })
                })
                .collect();
            arrows.extend(p.quiver.arrows().iter().map(|&(s, t)| (local[s], local[t])));
        }
        QuiverSetting {
            quiver: Quiver::from_indices(names, arrows),
            dims: DimVector(dims),
        }
    }
}

/// Cut at every vertex of dimension 1 and degree at least 2, giving each
/// incident edge its own copy of the vertex. Pieces are the connected
/// components afterwards, ordered by their first arrow.
pub fn split_at_thin_cut_vertices(s: &QuiverSetting) -> Result<PieceDecomposition> {
    if !underlying_analysis(s).simple_tree {
        return Err(Error::Precondition(
            "splitting requires a simple tree".into(),
        ));
    }
    if let Some(i) = s.dims.0.iter().position(|&d| d < 1) {
        return Err(Error::ZeroDimension(s.quiver.name(i).to_string()));
    }
    let q = &s.quiver;
    if q.arrow_count() == 0 {
        return Ok(PieceDecomposition {
            pieces: vec![s.clone()],
            glue_vertices: Vec::new(),
        });
    }
    let degrees = q.degrees();
    let is_glue = |v: usize| s.dims.0[v] == 1 && degrees[v] >= 2;

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); q.vertex_count()];
    for (k, &(a, b)) in q.arrows().iter().enumerate() {
        incident[a].push(k);
        incident[b].push(k);
    }
    let mut ds = DisjointSets::new(q.arrow_count());
    for (v, arrows) in incident.iter().enumerate() {
        if !is_glue(v) {
            for w in arrows.windows(2) {
                ds.union(w[0], w[1]);
            }
        }
    }

    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for k in 0..q.arrow_count() {
        let r = ds.find(k);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, ks)) => ks.push(k),
            None => groups.push((r, vec![k])),
        }
    }
    let pieces = groups
        .iter()
        .map(|(_, ks)| {
            let touched: HashSet<usize> =
                ks.iter().flat_map(|&k| [q.arrows()[k].0, q.arrows()[k].1]).collect();
            let keep: Vec<usize> = (0..q.vertex_count()).filter(|v| touched.contains(v)).collect();
            s.induced(&keep)
        })
        .collect();
    let glue_vertices = (0..q.vertex_count())
        .filter(|&v| is_glue(v))
        .map(|v| q.name(v).to_string())
        .collect();
    Ok(PieceDecomposition {
        pieces,
        glue_vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(dims: &[i64]) -> QuiverSetting {
        let names: Vec<String> = (1..=dims.len()).map(|i| i.to_string()).collect();
        let arrows: Vec<(usize, usize)> = (1..dims.len()).map(|i| (i - 1, i)).collect();
        QuiverSetting::new(Quiver::from_indices(names, arrows), DimVector(dims.to_vec())).unwrap()
    }

    #[test]
    fn parses_the_three_reference_settings() {
        let a2 = parse_setting(r#"{"vertices":["1","2"],"arrows":[["1","2"]],"dims":{"1":2,"2":3}}"#)
            .unwrap();
        assert_eq!(a2.dims, DimVector(vec![2, 3]));
        assert_eq!(a2.quiver.arrows(), &[(0, 1)]);

        let a1 = parse_setting(r#"{"vertices":["1"],"arrows":[],"dims":{"1":5}}"#).unwrap();
        assert_eq!(a1.quiver.vertex_count(), 1);
        assert_eq!(a1.dims.0, vec![5]);

        let kr = parse_setting(
            r#"{"vertices":["1","2"],"arrows":[["1","2"],["1","2"]],"dims":{"1":1,"2":1}}"#,
        )
        .unwrap();
        assert_eq!(kr.quiver.arrows(), &[(0, 1), (0, 1)]);
    }

    #[test]
    fn parse_errors() {
        let bad = parse_setting(r#"{"vertices":["1"],"arrows":[["1","9"]],"dims":{"1":1}}"#);
        assert_eq!(bad, Err(Error::UnknownVertex("9".into())));
        let neg = parse_setting(r#"{"vertices":["1"],"arrows":[],"dims":{"1":-2}}"#);
        assert!(matches!(neg, Err(Error::NegativeDimension { .. })));
        assert!(matches!(parse_setting("{not json"), Err(Error::Malformed(_))));
        let dup = parse_setting(r#"{"vertices":["1","1"],"arrows":[],"dims":{"1":1}}"#);
        assert_eq!(dup, Err(Error::DuplicateVertex("1".into())));
        let missing = parse_setting(r#"{"vertices":["1","2"],"arrows":[],"dims":{"1":1}}"#);
        assert_eq!(missing, Err(Error::MissingDimension("2".into())));
        let extra = parse_setting(r#"{"vertices":["1"],"arrows":[],"dims":{"1":1,"x":1}}"#);
        assert_eq!(extra, Err(Error::UnknownVertex("x".into())));
    }

    #[test]
    fn loops_are_accepted_but_flagged() {
        let s = parse_setting(r#"{"vertices":["a"],"arrows":[["a","a"]],"dims":{"a":1}}"#).unwrap();
        let an = underlying_analysis(&s);
        assert!(an.has_loop);
        assert!(an.has_cycle_or_multiedge);
        assert!(!an.simple_tree);
        assert!(!s.quiver.is_acyclic());
    }

    #[test]
    fn serialization_is_canonical() {
        let text = r#"{"vertices":["b","a"],"arrows":[["a","b"],["b","a"]],"dims":{"b":2,"a":1}}"#;
        let s = parse_setting(text).unwrap();
        assert_eq!(s.to_json(), text);
        let shuffled = r#"{"dims":{"a":1,"b":2},"arrows":[["a","b"],["b","a"]],"vertices":["b","a"]}"#;
        assert_eq!(parse_setting(shuffled).unwrap().to_json(), text);
    }

    #[test]
    fn restriction_to_support() {
        let split = restrict_to_support(&path(&[2, 0, 3]));
        assert_eq!(split.quiver.vertices(), &["1", "3"]);
        assert_eq!(split.quiver.arrow_count(), 0);
        let comps = components(&split);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].dims.0, vec![2]);
        assert_eq!(comps[1].dims.0, vec![3]);

        let a2 = path(&[2, 3]);
        assert_eq!(restrict_to_support(&a2), a2);

        let empty = restrict_to_support(&path(&[0]));
        assert!(empty.is_empty());
        assert!(components(&empty).is_empty());
    }

    #[test]
    fn analysis_examples() {
        let tri = QuiverSetting::build(&["1", "2", "3"], &[("1", "2"), ("2", "3"), ("3", "1")], &[1, 1, 1])
            .unwrap();
        let an = underlying_analysis(&tri);
        assert!(an.has_cycle_or_multiedge && !an.simple_tree && an.connected);

        let kr = QuiverSetting::build(&["1", "2"], &[("1", "2"), ("1", "2")], &[1, 1]).unwrap();
        assert!(underlying_analysis(&kr).has_cycle_or_multiedge);

        let a4 = underlying_analysis(&path(&[1, 1, 1, 1]));
        assert!(a4.simple_tree && !a4.has_cycle_or_multiedge && !a4.has_loop);

        let two = QuiverSetting::build(&["1", "2"], &[], &[1, 1]).unwrap();
        assert!(!underlying_analysis(&two).connected);
    }

    #[test]
    fn splitting_examples() {
        let dec = split_at_thin_cut_vertices(&path(&[3, 1, 3])).unwrap();
        assert_eq!(dec.glue_vertices, vec!["2"]);
        assert_eq!(dec.pieces.len(), 2);
        assert_eq!(dec.pieces[0].quiver.vertices(), &["1", "2"]);
        assert_eq!(dec.pieces[0].dims.0, vec![3, 1]);
        assert_eq!(dec.pieces[1].quiver.vertices(), &["2", "3"]);
        assert_eq!(dec.pieces[1].dims.0, vec![1, 3]);

        let whole = path(&[3, 2, 3]);
        let dec = split_at_thin_cut_vertices(&whole).unwrap();
        assert_eq!(dec.pieces, vec![whole]);
        assert!(dec.glue_vertices.is_empty());

        let star = QuiverSetting::build(
            &["c", "x", "y", "z"],
            &[("c", "x"), ("y", "c"), ("c", "z")],
            &[1, 4, 4, 4],
        )
        .unwrap();
        let dec = split_at_thin_cut_vertices(&star).unwrap();
        assert_eq!(dec.pieces.len(), 3);
        for p in &dec.pieces {
            assert_eq!(p.quiver.vertex_count(), 2);
            assert_eq!(p.dim_of("c"), Some(1));
        }
        assert_eq!(dec.glue_vertices, vec!["c"]);
    }

    #[test]
    fn splitting_rejects_non_trees() {
        let kr = QuiverSetting::build(&["1", "2"], &[("1", "2"), ("1", "2")], &[1, 1]).unwrap();
        assert!(matches!(split_at_thin_cut_vertices(&kr), Err(Error::Precondition(_))));
        assert!(matches!(
            split_at_thin_cut_vertices(&path(&[1, 0])),
            Err(Error::ZeroDimension(_))
        ));
    }

    #[test]
    fn a_thin_leaf_is_not_a_glue_vertex() {
        let dec = split_at_thin_cut_vertices(&path(&[1, 5, 1])).unwrap();
        assert_eq!(dec.pieces.len(), 1);
    }
}
