//! Grassmannian permutations in type `A_n`, the rectangle word and the
//! bad-`<=` criterion for leftmost reduced subwords.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::leftmost::{is_leftmost, PositionList};
use crate::quiver::Quiver;
use crate::weyl::{WeylElement, WeylError, WeylGroup};
use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrassError {
    #[error("need 1 <= k <= n, got n = {n}, k = {k}")]
    OutOfRange { n: usize, k: usize },
    #[error("partition {0:?} does not fit in the rectangle")]
    NotInRectangle(Vec<usize>),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

fn check(n: usize, k: usize) -> Result<(), GrassError> {
    if k == 0 || k > n {
        return Err(GrassError::OutOfRange { n, k });
    }
    Ok(())
}

/// The reduced word `(s_k ... s_n)(s_{k-1} ... s_{n-1}) ... (s_1 ... s_{n-k+1})`
/// laid out in `k` rows of `n - k + 1` cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridWord {
    pub n: usize,
    pub k: usize,
}

impl GridWord {
    pub fn rows(&self) -> usize {
        self.k
    }

    pub fn cols(&self) -> usize {
        self.n - self.k + 1
    }

    /// Generator in row `r`, column `c` (both 1-based, row 1 on top).
    pub fn cell(&self, r: usize, c: usize) -> usize {
        self.k - r + c
    }

    pub fn flattened(&self) -> Word {
        Word::new(
            (1..=self.rows())
                .flat_map(|r| (1..=self.cols()).map(move |c| self.cell(r, c)))
                .collect(),
        )
    }
}

pub fn rectangle_word(n: usize, k: usize) -> Result<GridWord, GrassError> {
    check(n, k)?;
    Ok(GridWord { n, k })
}

/// Weakly decreasing row lengths inside a `k x (n - k + 1)` box; trailing
/// zero rows are kept so that `parts.len() == k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Partition {
    pub parts: Vec<usize>,
}

impl Partition {
    pub fn new(grid: &GridWord, mut parts: Vec<usize>) -> Result<Self, GrassError> {
        if parts.len() > grid.rows()
            || parts.windows(2).any(|w| w[0] < w[1])
            || parts.first().is_some_and(|&p| p > grid.cols())
        {
            return Err(GrassError::NotInRectangle(parts));
        }
        parts.resize(grid.rows(), 0);
        Ok(Self { parts })
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        r >= 1 && c >= 1 && r <= self.parts.len() && c <= self.parts[r - 1]
    }

    /// Cells in row-reading order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |c| (r + 1, c)))
            .collect()
    }
}

pub fn partitions_in_rectangle(n: usize, k: usize) -> Result<Vec<Partition>, GrassError> {
    let grid = rectangle_word(n, k)?;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(rows: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if current.len() == rows {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        for part in 0..=max {
            current.push(part);
            go(rows, part, current, out);
            current.pop();
        }
    }
    go(grid.rows(), grid.cols(), &mut current, &mut out);
    Ok(out)
}

/// Cells of `lambda` read left to right along rows, top row first.
pub fn word_of_partition(grid: &GridWord, lambda: &Partition) -> Word {
    Word::new(
        lambda
            .cells()
            .into_iter()
            .map(|(r, c)| grid.cell(r, c))
            .collect(),
    )
}

/// Cells read down each column, columns left to right. This also respects
/// the order of the grid, so it gives the same element.
pub fn word_of_partition_by_columns(grid: &GridWord, lambda: &Partition) -> Word {
    let mut letters = Vec::new();
    for c in 1..=grid.cols() {
        for r in 1..=grid.rows() {
            if lambda.contains(r, c) {
                letters.push(grid.cell(r, c));
            }
        }
    }
    Word::new(letters)
}

pub type CellSelection = BTreeSet<(usize, usize)>;

/// A used cell with an unused cell of `lambda` above it in its column and an
/// unused cell to its left in its row.
pub fn has_bad_le(lambda: &Partition, sel: &CellSelection) -> bool {
    sel.iter().any(|&(r, c)| {
        let above = (1..r).any(|r2| lambda.contains(r2, c) && !sel.contains(&(r2, c)));
        let left = (1..c).any(|c2| lambda.contains(r, c2) && !sel.contains(&(r, c2)));
        above && left
    })
}

/// The elements with no left descent other than `s_k`.
pub fn grassmannian_permutations(n: usize, k: usize) -> Result<Vec<WeylElement>, GrassError> {
    check(n, k)?;
    let group = WeylGroup::new(&type_a(n));
    Ok(group
        .enumerate(usize::MAX)?
        .into_iter()
        .filter(|w| group.left_descents(w).iter().all(|&i| i == k))
        .collect())
}

fn type_a(n: usize) -> Quiver {
    Quiver::linear(n).expect("linear quiver is valid")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeCounterexample {
    pub partition: Vec<usize>,
    pub cells: Vec<(usize, usize)>,
    pub leftmost: bool,
    pub bad_le: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeReport {
    pub n: usize,
    pub k: usize,
    pub partitions: usize,
    pub reduced_selections: usize,
    pub counterexample: Option<LeCounterexample>,
}

impl LeReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// For every partition in the box and every selection of its cells that
/// spells a reduced word: leftmost iff no bad `<=`. Non-reduced selections
/// are skipped, since the statement is about reduced subwords.
pub fn verify_le_theorem(n: usize, k: usize) -> Result<LeReport, GrassError> {
    let grid = rectangle_word(n, k)?;
    let group = WeylGroup::new(&type_a(n));
    let partitions = partitions_in_rectangle(n, k)?;
    let mut reduced_selections = 0;
    for lambda in &partitions {
        let base = word_of_partition(&grid, lambda);
        let cells = lambda.cells();
        assert!(
            cells.len() < 32,
            "selection enumeration is limited to small boxes"
        );
        for mask in 0u32..1 << cells.len() {
            let positions: Vec<usize> = (0..cells.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            let sub = base.subword(&positions);
            if !group.is_reduced(&sub)? {
                continue;
            }
            reduced_selections += 1;
            let sel: CellSelection = positions.iter().map(|&p| cells[p - 1]).collect();
            let list = PositionList::new(positions).expect("positions increase");
            let leftmost = is_leftmost(&group, &base, &list);
            let bad_le = has_bad_le(lambda, &sel);
            if leftmost == bad_le {
                return Ok(LeReport {
                    n,
                    k,
                    partitions: partitions.len(),
                    reduced_selections,
                    counterexample: Some(LeCounterexample {
                        partition: lambda.parts.clone(),
                        cells: sel.into_iter().collect(),
                        leftmost,
                        bad_le,
                    }),
                });
            }
        }
    }
    Ok(LeReport {
        n,
        k,
        partitions: partitions.len(),
        reduced_selections,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn rectangle_layout() {
        let g = rectangle_word(4, 2).unwrap();
        assert_eq!(g.flattened(), Word::new(vec![2, 3, 4, 1, 2, 3]));
        assert_eq!(
            rectangle_word(2, 1).unwrap().flattened(),
            Word::new(vec![1, 2])
        );
        for n in 1..=5 {
            for k in 1..=n {
                let g = rectangle_word(n, k).unwrap();
                assert_eq!(g.flattened().len(), k * (n - k + 1));
            }
        }
        assert_eq!(
            rectangle_word(3, 0),
            Err(GrassError::OutOfRange { n: 3, k: 0 })
        );
        assert_eq!(
            rectangle_word(3, 4),
            Err(GrassError::OutOfRange { n: 3, k: 4 })
        );
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions_in_rectangle(4, 2).unwrap().len(), 10);
        assert_eq!(partitions_in_rectangle(1, 1).unwrap().len(), 2);
        assert_eq!(partitions_in_rectangle(2, 1).unwrap().len(), 3);
        for n in 1..=5 {
            for k in 1..=n {
                assert_eq!(
                    partitions_in_rectangle(n, k).unwrap().len(),
                    binomial(n + 1, k)
                );
            }
        }
    }

    #[test]
    fn partition_words() {
        let g = rectangle_word(4, 2).unwrap();
        let full = Partition::new(&g, vec![3, 3]).unwrap();
        assert_eq!(
            word_of_partition(&g, &full),
            Word::new(vec![2, 3, 4, 1, 2, 3])
        );
        let empty = Partition::new(&g, vec![]).unwrap();
        assert!(word_of_partition(&g, &empty).is_empty());
        let one = Partition::new(&g, vec![1]).unwrap();
        assert_eq!(word_of_partition(&g, &one), Word::new(vec![2]));
        assert!(Partition::new(&g, vec![1, 2]).is_err());
        assert!(Partition::new(&g, vec![4]).is_err());
    }

    #[test]
    fn bad_le_examples() {
        let g = rectangle_word(3, 2).unwrap();
        let block = Partition::new(&g, vec![2, 2]).unwrap();
        let all: CellSelection = block.cells().into_iter().collect();
        assert!(!has_bad_le(&block, &all));
        assert!(!has_bad_le(&block, &CellSelection::new()));
        let corner: CellSelection = [(2, 2)].into_iter().collect();
        assert!(has_bad_le(&block, &corner));
    }

    #[test]
    fn partitions_biject_onto_grassmannian_permutations() {
        for n in 1..=5 {
            let group = WeylGroup::new(&type_a(n));
            for k in 1..=n {
                let grid = rectangle_word(n, k).unwrap();
                let perms = grassmannian_permutations(n, k).unwrap();
                assert_eq!(perms.len(), binomial(n + 1, k));
                assert!(perms.iter().any(|w| w.is_identity()));
                let mut images = Vec::new();
                for lambda in partitions_in_rectangle(n, k).unwrap() {
                    let word = word_of_partition(&grid, &lambda);
                    assert!(group.is_reduced(&word).unwrap());
                    let w = group.evaluate(&word).unwrap();
                    assert!(perms.contains(&w));
                    let by_cols = word_of_partition_by_columns(&grid, &lambda);
                    assert_eq!(group.evaluate(&by_cols).unwrap(), w);
                    images.push(w);
                }
                images.sort();
                images.dedup();
                assert_eq!(images.len(), perms.len());
            }
        }
    }

    #[test]
    fn le_theorem_small() {
        for (n, k) in [(2, 1), (3, 2), (4, 2)] {
            let report = verify_le_theorem(n, k).unwrap();
            assert!(report.holds(), "{report:?}");
        }
    }
}
