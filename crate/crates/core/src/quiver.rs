//! Acyclic quivers with an admissible vertex numbering.
//!
//! Vertices are numbered `1..=n` and every arrow `i -> j` must satisfy
//! `i < j`. With this numbering `c = s_1 s_2 ... s_n` is the Coxeter element
//! whose powers index the preprojective modules.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intmat::IntMatrix;
use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("quiver must have at least one vertex")]
    Empty,
    #[error("{0} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("arrow {0} -> {1} refers to a vertex outside 1..={2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("oriented cycle through vertex {0}")]
    Cycle(usize),
    #[error("arrow {0} -> {1} violates the admissible numbering (need source < target)")]
    Numbering(usize, usize),
    #[error("underlying graph is disconnected (vertex {0} unreachable from vertex 1)")]
    Disconnected(usize),
    #[error("malformed quiver JSON: {0}")]
    Json(String),
    #[error("unknown built-in quiver {0:?}")]
    UnknownName(String),
}

/// Largest accepted vertex count.
pub const MAX_VERTICES: usize = 64;

/// Simply-laced Dynkin type of the underlying graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// Wire format of a quiver. Arrows are 1-based `[source, target]` pairs.
#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawQuiver {
    n: usize,
    arrows: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    /// 1-based (source, target) pairs, in input order.
    arrows: Vec<(usize, usize)>,
    name: Option<String>,
    dynkin: Option<DynkinType>,
}

impl Quiver {
    /// Validates a raw description: vertex range, acyclicity, admissible
    /// numbering and connectivity, in that order.
    pub fn new(
        n: usize,
        arrows: Vec<(usize, usize)>,
        name: Option<String>,
    ) -> Result<Self, QuiverError> {
        if n == 0 {
            return Err(QuiverError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(QuiverError::TooManyVertices(n));
        }
        for &(s, t) in &arrows {
            if s == 0 || t == 0 || s > n || t > n {
                return Err(QuiverError::VertexOutOfRange(s, t, n));
            }
        }
        if let Some(v) = find_cycle(n, &arrows) {
            return Err(QuiverError::Cycle(v));
        }
        if let Some(&(s, t)) = arrows.iter().find(|(s, t)| s >= t) {
            return Err(QuiverError::Numbering(s, t));
        }
        if let Some(v) = unreachable_vertex(n, &arrows) {
            return Err(QuiverError::Disconnected(v));
        }
        let dynkin = classify(n, &arrows);
        Ok(Self {
            n,
            arrows,
            name,
            dynkin,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, QuiverError> {
        let raw: RawQuiver =
            serde_json::from_str(text).map_err(|e| QuiverError::Json(e.to_string()))?;
        Self::new(
            raw.n,
            raw.arrows.into_iter().map(|[s, t]| (s, t)).collect(),
            raw.name,
        )
    }

    pub fn to_json(&self) -> String {
        let raw = RawQuiver {
            n: self.n,
            arrows: self.arrows.iter().map(|&(s, t)| [s, t]).collect(),
            name: self.name.clone(),
        };
        serde_json::to_string(&raw).expect("quiver serializes")
    }

    /// Built-in quivers: `A1`..`A8` (linear), `D4`..`D6`, `E6`..`E8`,
    /// `triangle` and `kronecker`. All arrows point towards larger labels.
    pub fn builtin(name: &str) -> Result<Self, QuiverError> {
        let unknown = || QuiverError::UnknownName(name.to_string());
        let lower = name.to_ascii_lowercase();
        let (arrows, n) = match lower.as_str() {
            "triangle" => (vec![(1, 2), (2, 3), (1, 3)], 3),
            "kronecker" => (vec![(1, 2), (1, 2)], 2),
            _ => {
                let (kind, rank) = lower.split_at(1);
                let n: usize = rank.parse().map_err(|_| unknown())?;
                match (kind, n) {
                    ("a", 1..=8) => ((1..n).map(|i| (i, i + 1)).collect(), n),
                    ("d", 4..=6) => {
                        let mut a: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
                        a.push((n - 2, n - 1));
                        a.push((n - 2, n));
                        (a, n)
                    }
                    ("e", 6..=8) => {
                        let mut a: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                        a.push((3, n));
                        (a, n)
                    }
                    _ => return Err(unknown()),
                }
            }
        };
        let label = match lower.as_str() {
            "triangle" | "kronecker" => lower.clone(),
            _ => lower.to_ascii_uppercase(),
        };
        Self::new(n, arrows, Some(label))
    }

    /// Linear orientation `1 -> 2 -> ... -> n` of type A.
    pub fn linear(n: usize) -> Result<Self, QuiverError> {
        Self::new(
            n,
            (1..n).map(|i| (i, i + 1)).collect(),
            Some(format!("A{n}")),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dynkin_type(&self) -> Option<DynkinType> {
        self.dynkin
    }

    pub fn is_dynkin(&self) -> bool {
        self.dynkin.is_some()
    }

    /// Number of arrows between `i` and `j` in either direction (1-based).
    pub fn edge_count(&self, i: usize, j: usize) -> usize {
        self.arrows
            .iter()
            .filter(|&&(s, t)| (s, t) == (i, j) || (s, t) == (j, i))
            .count()
    }

    /// `A_ii = 2`, `A_ij = -(number of edges between i and j)`.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let mut a = IntMatrix::identity(self.n);
        for i in 0..self.n {
            a[(i, i)] = 2;
        }
        for &(s, t) in &self.arrows {
            a[(s - 1, t - 1)] -= 1;
            a[(t - 1, s - 1)] -= 1;
        }
        a
    }

    /// `E_ii = 1`, `E_ij = -(number of arrows i -> j)`; upper unitriangular.
    pub fn euler_matrix(&self) -> IntMatrix {
        let mut e = IntMatrix::identity(self.n);
        for &(s, t) in &self.arrows {
            e[(s - 1, t - 1)] -= 1;
        }
        e
    }

    /// Number of directed paths `i -> j` (including the trivial path when
    /// `i == j`), 0-based indices. This is the inverse of the Euler matrix.
    pub fn path_counts(&self) -> IntMatrix {
        self.euler_matrix()
            .unitriangular_inverse()
            .expect("admissible numbering gives a unitriangular Euler matrix")
    }

    /// The Coxeter word `(1, 2, ..., n)`.
    pub fn coxeter_word(&self) -> Word {
        Word::new((1..=self.n).collect())
    }

    /// The inverse Coxeter word `(n, ..., 2, 1)`.
    pub fn inverse_coxeter_word(&self) -> Word {
        Word::new((1..=self.n).rev().collect())
    }

    pub fn double_quiver(&self) -> DoubleQuiver {
        DoubleQuiver::new(self.clone())
    }

    /// The opposite quiver renumbered by `v -> n + 1 - v`, so that the
    /// numbering stays admissible.
    pub fn opposite(&self) -> Self {
        let n = self.n;
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| (n + 1 - t, n + 1 - s))
            .collect();
        let name = self.name.as_ref().map(|s| format!("{s}^op"));
        Self::new(n, arrows, name).expect("opposite of a valid quiver is valid")
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.name, self.dynkin) {
            (Some(name), _) => write!(f, "{name}"),
            (None, Some(t)) => write!(f, "{t}"),
            (None, None) => write!(f, "quiver on {} vertices", self.n),
        }
    }
}

/// A quiver together with a reversed arrow `a*` for every arrow `a`.
#[derive(Clone, Debug)]
pub struct DoubleQuiver {
    base: Quiver,
}

/// Arrow of the double quiver: the original arrow or its reverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DoubleArrow {
    Original(usize),
    Starred(usize),
}

impl DoubleQuiver {
    fn new(base: Quiver) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    /// All arrows with their 1-based (source, target) in the double quiver.
    pub fn arrows(&self) -> Vec<(DoubleArrow, usize, usize)> {
        let mut out = Vec::with_capacity(2 * self.base.arrows.len());
        for (idx, &(s, t)) in self.base.arrows.iter().enumerate() {
            out.push((DoubleArrow::Original(idx), s, t));
            out.push((DoubleArrow::Starred(idx), t, s));
        }
        out
    }
}

/// Suggests a renumbering (old label -> new label, 1-based) making every
/// arrow increase, or `None` if the quiver has an oriented cycle.
pub fn suggest_admissible_numbering(n: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
    let order = topological_order(n, arrows)?;
    let mut relabel = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        relabel[v] = pos + 1;
    }
    Some(relabel)
}

fn topological_order(n: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(s, t) in arrows {
        if s == 0 || t == 0 || s > n || t > n {
            return None;
        }
        out[s - 1].push(t - 1);
        indeg[t - 1] += 1;
    }
    // Smallest available vertex first keeps the order canonical.
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

fn find_cycle(n: usize, arrows: &[(usize, usize)]) -> Option<usize> {
    if topological_order(n, arrows).is_some() {
        return None;
    }
    // Some vertex lies on a cycle; report the smallest one that does.
    let mut out = vec![Vec::new(); n];
    for &(s, t) in arrows {
        out[s - 1].push(t - 1);
    }
    (0..n)
        .find(|&v| {
            let mut seen = vec![false; n];
            let mut stack: Vec<usize> = out[v].clone();
            while let Some(u) = stack.pop() {
                if u == v {
                    return true;
                }
                if !std::mem::replace(&mut seen[u], true) {
                    stack.extend(&out[u]);
                }
            }
            false
        })
        .map(|v| v + 1)
}

fn undirected(n: usize, arrows: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in arrows {
        adj[s - 1].push(t - 1);
        adj[t - 1].push(s - 1);
    }
    adj
}

fn unreachable_vertex(n: usize, arrows: &[(usize, usize)]) -> Option<usize> {
    let adj = undirected(n, arrows);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.iter().position(|s| !s).map(|v| v + 1)
}

/// Recognizes the simply-laced Dynkin diagrams A_n, D_n, E_6, E_7, E_8.
fn classify(n: usize, arrows: &[(usize, usize)]) -> Option<DynkinType> {
    // Must be a simple tree: n - 1 edges, no parallel arrows.
    if arrows.len() + 1 != n {
        return None;
    }
    let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(s, t) in arrows {
        *pairs.entry((s.min(t), s.max(t))).or_default() += 1;
    }
    if pairs.values().any(|&c| c > 1) {
        return None;
    }
    let adj = undirected(n, arrows);
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    if adj.iter().any(|a| a.len() > 3) || branch.len() > 1 {
        return None;
    }
    let Some(&centre) = branch.first() else {
        return Some(DynkinType::A(n));
    };
    let mut arms: Vec<usize> = adj[centre]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (centre, start, 1);
            loop {
                let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
                match next.as_slice() {
                    [] => break len,
                    [w] => {
                        prev = cur;
                        cur = *w;
                        len += 1;
                    }
                    _ => unreachable!("single branch vertex"),
                }
            }
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => Some(DynkinType::D(n)),
        [1, 2, 2] => Some(DynkinType::E(6)),
        [1, 2, 3] => Some(DynkinType::E(7)),
        [1, 2, 4] => Some(DynkinType::E(8)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Quiver {
        Quiver::new(3, vec![(1, 2), (2, 3), (1, 3)], None).unwrap()
    }

    #[test]
    fn validate_examples() {
        let a3 = Quiver::new(3, vec![(1, 2), (2, 3)], None).unwrap();
        assert_eq!(a3.dynkin_type(), Some(DynkinType::A(3)));
        assert_eq!(triangle().dynkin_type(), None);
        assert_eq!(
            Quiver::new(2, vec![(1, 2), (2, 1)], None),
            Err(QuiverError::Cycle(1))
        );
        assert_eq!(
            Quiver::new(2, vec![(2, 1)], None),
            Err(QuiverError::Numbering(2, 1))
        );
        assert_eq!(
            Quiver::new(3, vec![(1, 2)], None),
            Err(QuiverError::Disconnected(3))
        );
        assert_eq!(
            Quiver::new(1, vec![(1, 1)], None),
            Err(QuiverError::Cycle(1))
        );
        assert!(matches!(
            Quiver::new(2, vec![(1, 3)], None),
            Err(QuiverError::VertexOutOfRange(1, 3, 2))
        ));
    }

    #[test]
    fn cartan_and_euler() {
        let a2 = Quiver::builtin("A2").unwrap();
        assert_eq!(a2.cartan_matrix().rows(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.euler_matrix().rows(), vec![vec![1, -1], vec![0, 1]]);
        let t = triangle();
        assert_eq!(
            t.cartan_matrix().rows(),
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]
        );
        assert_eq!(
            t.euler_matrix().rows(),
            vec![vec![1, -1, -1], vec![0, 1, -1], vec![0, 0, 1]]
        );
        let k = Quiver::builtin("kronecker").unwrap();
        assert_eq!(k.cartan_matrix().rows(), vec![vec![2, -2], vec![-2, 2]]);
        let a3 = Quiver::builtin("A3").unwrap();
        assert_eq!(
            a3.euler_matrix().rows(),
            vec![vec![1, -1, 0], vec![0, 1, -1], vec![0, 0, 1]]
        );
    }

    #[test]
    fn coxeter_and_double() {
        assert_eq!(
            Quiver::builtin("A3").unwrap().coxeter_word().letters(),
            &[1, 2, 3]
        );
        assert_eq!(
            Quiver::builtin("A2").unwrap().coxeter_word().letters(),
            &[1, 2]
        );
        assert_eq!(
            Quiver::builtin("A1").unwrap().coxeter_word().letters(),
            &[1]
        );
        let d = Quiver::builtin("A2").unwrap().double_quiver();
        assert_eq!(
            d.arrows(),
            vec![
                (DoubleArrow::Original(0), 1, 2),
                (DoubleArrow::Starred(0), 2, 1)
            ]
        );
        assert_eq!(
            Quiver::builtin("A3")
                .unwrap()
                .double_quiver()
                .arrows()
                .len(),
            4
        );
        assert_eq!(triangle().double_quiver().arrows().len(), 6);
    }

    #[test]
    fn builtins_classify() {
        for (name, t) in [
            ("A1", DynkinType::A(1)),
            ("A8", DynkinType::A(8)),
            ("D4", DynkinType::D(4)),
            ("D6", DynkinType::D(6)),
            ("E6", DynkinType::E(6)),
            ("E7", DynkinType::E(7)),
            ("E8", DynkinType::E(8)),
        ] {
            assert_eq!(
                Quiver::builtin(name).unwrap().dynkin_type(),
                Some(t),
                "{name}"
            );
        }
        assert!(!Quiver::builtin("kronecker").unwrap().is_dynkin());
        assert!(Quiver::builtin("A9").is_err());
        assert!(Quiver::builtin("Z3").is_err());
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let q = Quiver::from_json(r#"{"n":3,"arrows":[[1,2],[2,3],[1,3]],"name":"tri"}"#).unwrap();
        assert_eq!(q.name(), Some("tri"));
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
        assert!(matches!(Quiver::from_json("{"), Err(QuiverError::Json(_))));
        assert_eq!(
            Quiver::from_json(r#"{"n":1000000000000,"arrows":[]}"#),
            Err(QuiverError::TooManyVertices(1_000_000_000_000))
        );
        assert!(matches!(
            Quiver::from_json(r#"{"n":2,"arrows":[[1,2]],"extra":1}"#),
            Err(QuiverError::Json(_))
        ));
    }

    #[test]
    fn renumbering_and_opposite() {
        let relabel = suggest_admissible_numbering(3, &[(3, 1), (1, 2)]).unwrap();
        assert_eq!(relabel, vec![2, 3, 1]);
        assert!(suggest_admissible_numbering(2, &[(1, 2), (2, 1)]).is_none());
        let op = Quiver::builtin("D4").unwrap().opposite();
        assert_eq!(op.arrows(), &[(3, 4), (2, 3), (1, 3)]);
        assert_eq!(op.dynkin_type(), Some(DynkinType::D(4)));
    }
}
