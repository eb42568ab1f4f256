//! Test-only helpers, including a forward-closure root enumerator that is
//! independent of the reflection reduction in the library.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use qsphere::{DimVector, Quiver, QuiverSetting, RootKind};

pub fn setting(vertices: &[&str], arrows: &[(&str, &str)], dims: &[i64]) -> QuiverSetting {
    QuiverSetting::build(vertices, arrows, dims).unwrap()
}

pub fn path(dims: &[i64]) -> QuiverSetting {
    let names: Vec<String> = (1..=dims.len()).map(|i| i.to_string()).collect();
    let arrows: Vec<(usize, usize)> = (1..dims.len()).map(|i| (i - 1, i)).collect();
    QuiverSetting::new(Quiver::from_indices(names, arrows), DimVector(dims.to_vec())).unwrap()
}

pub fn kronecker(a: i64, b: i64) -> QuiverSetting {
    setting(&["1", "2"], &[("1", "2"), ("1", "2")], &[a, b])
}

/// Euler form straight from its definition.
fn euler(q: &Quiver, d: &[i64], e: &[i64]) -> i64 {
    let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
    diag - q.arrows().iter().map(|&(s, t)| d[s] * e[t]).sum::<i64>()
}

fn pair_unit(q: &Quiver, d: &[i64], i: usize) -> i64 {
    let mut u = vec![0; d.len()];
    u[i] = 1;
    euler(q, d, &u) + euler(q, &u, d)
}

fn reflect(q: &Quiver, d: &[i64], i: usize) -> Vec<i64> {
    let mut out = d.to_vec();
    out[i] -= pair_unit(q, d, i);
    out
}

fn connected_support(q: &Quiver, d: &[i64]) -> bool {
    let n = d.len();
    let Some(start) = (0..n).find(|&i| d[i] > 0) else {
        return false;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &(s, t) in q.arrows() {
            for (a, b) in [(s, t), (t, s)] {
                if a == v && d[b] > 0 && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
    }
    (0..n).all(|i| d[i] == 0 || seen[i])
}

pub fn box_vectors(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn close_under_reflections(q: &Quiver, seeds: Vec<Vec<i64>>, bound: i64) -> BTreeSet<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = seeds.into();
    while let Some(v) = queue.pop_front() {
        for i in 0..v.len() {
            let w = reflect(q, &v, i);
            if w.iter().all(|&x| (0..=bound).contains(&x)) && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Positive real and imaginary roots inside `[0, bound]^n`, generated
/// forwards: simple roots and fundamental-domain points, closed under
/// reflections that stay in the box.
pub struct RootTable {
    pub real: BTreeSet<Vec<i64>>,
    pub imaginary: BTreeSet<Vec<i64>>,
}

impl RootTable {
    pub fn new(q: &Quiver, bound: i64) -> Self {
        let n = q.vertex_count();
        let simple: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut u = vec![0; n];
                u[i] = 1;
                u
            })
            .collect();
        let fundamental: Vec<Vec<i64>> = box_vectors(n, bound)
            .into_iter()
            .filter(|d| connected_support(q, d) && (0..n).all(|i| pair_unit(q, d, i) <= 0))
            .collect();
        RootTable {
            real: close_under_reflections(q, simple, bound),
            imaginary: close_under_reflections(q, fundamental, bound),
        }
    }

    pub fn kind(&self, d: &[i64]) -> RootKind {
        match (self.real.contains(d), self.imaginary.contains(d)) {
            (true, false) => RootKind::RealRoot,
            (false, true) => RootKind::ImaginaryRoot,
            (false, false) => RootKind::NotRoot,
            (true, true) => panic!("{d:?} generated as both real and imaginary"),
        }
    }
}

/// Quivers used for root-oracle comparisons.
pub fn oracle_quivers() -> Vec<(&'static str, Quiver)> {
    let q = |v: &[&str], a: &[(&str, &str)]| Quiver::new(v.iter().copied(), a.iter().copied()).unwrap();
    vec![
        ("A2", q(&["1", "2"], &[("1", "2")])),
        ("A3 linear", q(&["1", "2", "3"], &[("1", "2"), ("2", "3")])),
        ("A3 sink", q(&["1", "2", "3"], &[("1", "2"), ("3", "2")])),
        ("A3 source", q(&["1", "2", "3"], &[("2", "1"), ("2", "3")])),
        ("Kronecker", q(&["1", "2"], &[("1", "2"), ("1", "2")])),
    ]
}
