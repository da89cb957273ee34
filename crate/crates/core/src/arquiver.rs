//! Dimension vectors of the preprojective indecomposables `tau^{-k} P_j`.
//!
//! Conventions: `P_1` is the simple projective at the source-most vertex and
//! `dim(P_i)_j` is the number of paths `j -> i`. The Coxeter matrix is
//! `Phi = -E^{-T} E` with `E` the Euler matrix, so that
//! `dim tau^{-1} M = Phi^{-1} dim M` whenever `tau^{-1} M != 0`.
//!
//! Two independent engines produce the table: iteration of `Phi^{-1}`
//! ([`enumerate_preprojectives`]) and the mesh recursion
//! ([`knit_preprojectives`]). They are expected to agree row for row.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::intmat::IntMatrix;
use crate::leftmost::{PreprojIndex, SubcategorySpec};
use crate::quiver::Quiver;
use crate::weyl::{is_positive_root, WeylError};
use crate::word::Word;

/// Nonnegative integer vector indexed by the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }
}

impl std::fmt::Display for DimVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `dim P_i` for every vertex, in vertex order.
pub fn projective_dim_vectors(q: &Quiver) -> Vec<DimVector> {
    let paths = q.path_counts();
    (0..q.n()).map(|i| DimVector(paths.column(i))).collect()
}

/// `dim I_i` for every vertex: `dim(I_i)_j` counts paths `i -> j`.
pub fn injective_dim_vectors(q: &Quiver) -> Vec<DimVector> {
    let paths = q.path_counts();
    paths.rows().into_iter().map(DimVector).collect()
}

/// `Phi = -E^{-T} E`; sends `dim P_i` to `-dim I_i`.
pub fn coxeter_matrix(q: &Quiver) -> IntMatrix {
    let e = q.euler_matrix();
    let e_inv = e.unitriangular_inverse().expect("unitriangular");
    (&e_inv.transpose() * &e).neg()
}

/// `Phi^{-1} = -E^{-1} E^T`.
pub fn inverse_coxeter_matrix(q: &Quiver) -> IntMatrix {
    let e = q.euler_matrix();
    let e_inv = e.unitriangular_inverse().expect("unitriangular");
    (&e_inv * &e.transpose()).neg()
}

/// `dim tau^{-k} P_j` (1-based `j`), or `None` once the module has vanished.
pub fn preproj_dim(q: &Quiver, j: usize, k: usize) -> Option<DimVector> {
    let phi_inv = inverse_coxeter_matrix(q);
    let mut v = projective_dim_vectors(q)[j - 1].0.clone();
    for _ in 0..k {
        v = phi_inv.mul_vec(&v);
        if !is_positive_root(&v) {
            return None;
        }
    }
    Some(DimVector(v))
}

/// For each vertex `j`, the first `k` with `tau^{-k} P_j = 0`. Dynkin only.
pub fn vanishing_powers(q: &Quiver) -> Option<Vec<usize>> {
    if !q.is_dynkin() {
        return None;
    }
    let phi_inv = inverse_coxeter_matrix(q);
    let vanish = projective_dim_vectors(q)
        .into_iter()
        .map(|p| {
            let mut v = p.0;
            let mut k = 0;
            while is_positive_root(&v) {
                v = phi_inv.mul_vec(&v);
                k += 1;
            }
            k
        })
        .collect();
    Some(vanish)
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub j: usize,
    pub k: usize,
    pub dim: DimVector,
}

/// Preprojective indecomposables in the order
/// `P_1, ..., P_n, tau^{-1} P_1, ..., tau^{-1} P_n, ...` with zeros dropped.
#[derive(Clone, Debug)]
pub struct PreprojTable {
    n: usize,
    rows: Vec<(PreprojIndex, DimVector)>,
    vanish: Option<Vec<usize>>,
    arrows: Vec<(usize, usize)>,
}

impl PreprojTable {
    fn from_layers(q: &Quiver, layers: Vec<Vec<Option<DimVector>>>, dynkin: bool) -> Self {
        let n = q.n();
        let mut rows = Vec::new();
        let mut vanish = vec![usize::MAX; n];
        for (k, layer) in layers.iter().enumerate() {
            for (j, entry) in layer.iter().enumerate() {
                match entry {
                    Some(d) => rows.push((PreprojIndex::new(j + 1, k), d.clone())),
                    None => vanish[j] = vanish[j].min(k),
                }
            }
        }
        Self {
            n,
            rows,
            vanish: dynkin.then_some(vanish),
            arrows: q.arrows().to_vec(),
        }
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            rows: Vec::new(),
            vanish: None,
            arrows: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[(PreprojIndex, DimVector)] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// First vanishing power per vertex; `None` for non-Dynkin quivers.
    pub fn vanishing(&self) -> Option<&[usize]> {
        self.vanish.as_deref()
    }

    pub fn position(&self, idx: PreprojIndex) -> Option<usize> {
        self.rows.iter().position(|(i, _)| *i == idx)
    }

    pub fn dim(&self, idx: PreprojIndex) -> Option<&DimVector> {
        self.rows.iter().find(|(i, _)| *i == idx).map(|(_, d)| d)
    }

    /// Irreducible maps of the preprojective component as pairs of row
    /// positions: `tau^{-k} P_j -> tau^{-k} P_l` for each arrow `j -> l`, and
    /// `tau^{-k} P_j -> tau^{-k-1} P_i` for each arrow `i -> j`.
    pub fn ar_arrows(&self) -> Vec<(usize, usize)> {
        let pos: HashMap<PreprojIndex, usize> = self
            .rows
            .iter()
            .enumerate()
            .map(|(p, (i, _))| (*i, p))
            .collect();
        let mut out = Vec::new();
        for (p, (idx, _)) in self.rows.iter().enumerate() {
            for &(s, t) in &self.arrows {
                if s == idx.j {
                    if let Some(&q) = pos.get(&PreprojIndex::new(t, idx.k)) {
                        out.push((p, q));
                    }
                }
                if t == idx.j {
                    if let Some(&q) = pos.get(&PreprojIndex::new(s, idx.k + 1)) {
                        out.push((p, q));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn json_rows(&self) -> Vec<TableRow> {
        self.rows
            .iter()
            .map(|(i, d)| TableRow {
                j: i.j,
                k: i.k,
                dim: d.clone(),
            })
            .collect()
    }

    /// The word of vertex labels in table order.
    pub fn reading_word(&self) -> Word {
        Word::new(self.rows.iter().map(|(i, _)| i.j).collect())
    }
}

/// Table by iterating the inverse Coxeter matrix. Dynkin quivers run to
/// exhaustion; otherwise layers `0..=k_max` are produced.
pub fn enumerate_preprojectives(q: &Quiver, k_max: usize) -> PreprojTable {
    let phi_inv = inverse_coxeter_matrix(q);
    let dynkin = q.is_dynkin();
    let mut layers: Vec<Vec<Option<DimVector>>> =
        vec![projective_dim_vectors(q).into_iter().map(Some).collect()];
    loop {
        let last = layers.last().expect("nonempty");
        if last.iter().all(Option::is_none) || (!dynkin && layers.len() > k_max) {
            break;
        }
        let next = last
            .iter()
            .map(|entry| {
                entry.as_ref().and_then(|d| {
                    let v = phi_inv.mul_vec(&d.0);
                    is_positive_root(&v).then_some(DimVector(v))
                })
            })
            .collect();
        layers.push(next);
    }
    PreprojTable::from_layers(q, layers, dynkin)
}

/// Table by knitting: for non-injective `M = tau^{-k} P_j` the almost split
/// sequence gives `dim tau^{-1} M = (sum of middle terms) - dim M`, where the
/// middle terms are `tau^{-k} P_l` (arrows `j -> l`) and `tau^{-k-1} P_i`
/// (arrows `i -> j`).
pub fn knit_preprojectives(q: &Quiver, k_max: usize) -> PreprojTable {
    let n = q.n();
    let dynkin = q.is_dynkin();
    let injectives = injective_dim_vectors(q);
    let mut layers: Vec<Vec<Option<DimVector>>> =
        vec![projective_dim_vectors(q).into_iter().map(Some).collect()];
    loop {
        let last = layers.last().expect("nonempty").clone();
        if last.iter().all(Option::is_none) || (!dynkin && layers.len() > k_max) {
            break;
        }
        let mut next: Vec<Option<DimVector>> = vec![None; n];
        for j in 0..n {
            let Some(m) = &last[j] else { continue };
            if injectives.contains(m) {
                continue;
            }
            let mut v: Vec<i64> = m.0.iter().map(|x| -x).collect();
            for &(s, t) in q.arrows() {
                if s == j + 1 {
                    if let Some(d) = &last[t - 1] {
                        v.iter_mut().zip(&d.0).for_each(|(a, b)| *a += b);
                    }
                }
                if t == j + 1 {
                    if let Some(d) = &next[s - 1] {
                        v.iter_mut().zip(&d.0).for_each(|(a, b)| *a += b);
                    }
                }
            }
            if is_positive_root(&v) {
                next[j] = Some(DimVector(v));
            }
        }
        layers.push(next);
    }
    PreprojTable::from_layers(q, layers, dynkin)
}

/// Word for `w_0` obtained by reading the preprojective component in table
/// order.
pub fn ar_word_w0(q: &Quiver) -> Result<Word, WeylError> {
    if !q.is_dynkin() {
        return Err(WeylError::NotFiniteType(q.to_string()));
    }
    Ok(enumerate_preprojectives(q, 0).reading_word())
}

/// DOT rendering of the preprojective component; indecomposables in the
/// missing set of `highlight` are filled.
pub fn emit_dot(table: &PreprojTable, highlight: Option<&SubcategorySpec>) -> String {
    let mut out = String::from("digraph preprojective {\n  rankdir=LR;\n  node [shape=box];\n");
    for (p, (idx, dim)) in table.rows().iter().enumerate() {
        let marked = highlight.is_some_and(|h| h.missing().contains(idx));
        let style = if marked {
            ", style=filled, fillcolor=gray"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  n{p} [label=\"{idx}\\n{dim}\", pos=\"{},{}!\"{style}];",
            idx.k * 2 + idx.j,
            idx.j
        );
    }
    for (a, b) in table.ar_arrows() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(name: &str) -> Quiver {
        Quiver::builtin(name).unwrap()
    }

    #[test]
    fn projectives() {
        let t = projective_dim_vectors(&q("triangle"));
        assert_eq!(t[0].0, vec![1, 0, 0]);
        assert_eq!(t[1].0, vec![1, 1, 0]);
        assert_eq!(t[2].0, vec![2, 1, 1]);
        assert_eq!(projective_dim_vectors(&q("A3"))[2].0, vec![1, 1, 1]);
    }

    #[test]
    fn coxeter_matrix_properties() {
        for name in ["A2", "A3", "D4", "triangle"] {
            let quiver = q(name);
            let phi = coxeter_matrix(&quiver);
            assert_eq!(phi.determinant().abs(), 1, "{name}");
            assert!((&phi * &inverse_coxeter_matrix(&quiver)).is_identity());
            // Phi(dim P_i) = -dim I_i
            let inj = injective_dim_vectors(&quiver);
            for (p, i) in projective_dim_vectors(&quiver).iter().zip(&inj) {
                let image = phi.mul_vec(&p.0);
                assert_eq!(image, i.0.iter().map(|x| -x).collect::<Vec<_>>());
            }
        }
        // Coxeter number of A3 is 4.
        assert!(coxeter_matrix(&q("A3")).pow(4).is_identity());
        assert!(!coxeter_matrix(&q("A3")).pow(2).is_identity());
    }

    #[test]
    fn preproj_dim_examples() {
        let a3 = q("A3");
        assert_eq!(preproj_dim(&a3, 2, 1).unwrap().0, vec![0, 1, 1]);
        assert_eq!(preproj_dim(&a3, 3, 1), None);
        assert_eq!(preproj_dim(&a3, 2, 0).unwrap().0, vec![1, 1, 0]);
        let a2 = q("A2");
        assert_eq!(preproj_dim(&a2, 1, 1).unwrap().0, vec![0, 1]);
        assert_eq!(preproj_dim(&a2, 2, 1), None);
        assert!(preproj_dim(&q("triangle"), 1, 10).is_some());
    }

    #[test]
    fn tables() {
        let a2 = enumerate_preprojectives(&q("A2"), 0);
        let rows: Vec<_> = a2
            .rows()
            .iter()
            .map(|(i, d)| (i.j, i.k, d.0.clone()))
            .collect();
        assert_eq!(
            rows,
            vec![(1, 0, vec![1, 0]), (2, 0, vec![1, 1]), (1, 1, vec![0, 1])]
        );
        assert_eq!(enumerate_preprojectives(&q("A3"), 0).len(), 6);
        let tri = enumerate_preprojectives(&q("triangle"), 2);
        assert_eq!(tri.len(), 9);
        assert!(tri.vanishing().is_none());
        assert_eq!(vanishing_powers(&q("A3")).unwrap(), vec![3, 2, 1]);
    }

    #[test]
    fn knitting_agrees_with_coxeter() {
        for name in ["A1", "A2", "A3", "A4", "D4", "D5", "E6"] {
            let quiver = q(name);
            let a = enumerate_preprojectives(&quiver, 0);
            let b = knit_preprojectives(&quiver, 0);
            assert_eq!(a.rows(), b.rows(), "{name}");
        }
        let tri = q("triangle");
        assert_eq!(
            enumerate_preprojectives(&tri, 5).rows(),
            knit_preprojectives(&tri, 5).rows()
        );
    }

    #[test]
    fn ar_words() {
        assert_eq!(ar_word_w0(&q("A2")).unwrap().letters(), &[1, 2, 1]);
        assert_eq!(ar_word_w0(&q("A3")).unwrap().letters(), &[1, 2, 3, 1, 2, 1]);
        assert_eq!(ar_word_w0(&q("A1")).unwrap().letters(), &[1]);
        assert!(ar_word_w0(&q("triangle")).is_err());
    }

    #[test]
    fn dot_output() {
        let a2 = enumerate_preprojectives(&q("A2"), 0);
        let dot = emit_dot(&a2, None);
        assert_eq!(dot.matches("label=").count(), 3);
        assert!(!dot.contains("filled"));
        let a3 = enumerate_preprojectives(&q("A3"), 0);
        let spec = SubcategorySpec::new(vec![
            PreprojIndex::new(1, 0),
            PreprojIndex::new(2, 0),
            PreprojIndex::new(3, 0),
            PreprojIndex::new(2, 1),
        ]);
        let dot = emit_dot(&a3, Some(&spec));
        assert_eq!(dot.matches("label=").count(), 6);
        assert_eq!(dot.matches("filled").count(), 4);
        let empty = emit_dot(&PreprojTable::empty(0), None);
        assert_eq!(empty.matches("label=").count(), 0);
    }
}
