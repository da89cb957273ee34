//! c-sortable elements, `sort_c`, inversion sets and the torsion-class
//! criterion in finite type.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::intmat::IntMatrix;
use crate::leftmost::{category_of, leftmost_positions, Base, LeftmostError};
use crate::preproj::{PreprojAlgebra, PreprojError};
use crate::repkit::{Catalogue, IndecSet, RepError};
use crate::weyl::{Root, WeylElement, WeylError, WeylGroup};
use crate::word::Word;

#[derive(Debug, Error)]
pub enum SortError {
    #[error("{0} elements have maximal length among the c-sortable elements below {1}")]
    AmbiguousMaximum(usize, Word),
    #[error("torsion criteria disagree at {w}: sort_c condition {direct}, c^-1-sortability of w w_0 {via_w0}")]
    CriterionMismatch { w: Word, direct: bool, via_w0: bool },
    #[error("{0} is not c-sortable")]
    NotSortable(Word),
    #[error("inversion set of {0} does not match C(Pi/I_w)")]
    CrossCheckMismatch(Word),
    #[error("inversion set of {0} contains a root missing from the catalogue")]
    UnknownRoot(Word),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Leftmost(#[from] LeftmostError),
    #[error(transparent)]
    Preproj(#[from] PreprojError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Letters used from each successive copy of the Coxeter word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CSortingBlocks(pub Vec<BTreeSet<usize>>);

impl CSortingBlocks {
    pub fn is_nested(&self) -> bool {
        self.0.windows(2).all(|b| b[1].is_subset(&b[0]))
    }
}

/// Blocks of the leftmost subword of `w` in `coxeter^inf`, where `coxeter`
/// lists each generator once.
pub fn sorting_blocks(
    group: &WeylGroup,
    w: &WeylElement,
    coxeter: &Word,
) -> Result<CSortingBlocks, LeftmostError> {
    let n = coxeter.len();
    let copies = w.length() + 1;
    let base = Word::new(
        std::iter::repeat_n(coxeter.letters(), copies)
            .flatten()
            .copied()
            .collect(),
    );
    let positions = leftmost_positions(group, w, Base::Word(&base))?;
    let mut blocks: Vec<BTreeSet<usize>> = Vec::new();
    for &p in positions.as_slice() {
        let copy = (p - 1) / n;
        if blocks.len() <= copy {
            blocks.resize(copy + 1, BTreeSet::new());
        }
        blocks[copy].insert(base.letters()[p - 1]);
    }
    Ok(CSortingBlocks(blocks))
}

pub fn c_sorting_blocks(group: &WeylGroup, w: &WeylElement) -> CSortingBlocks {
    sorting_blocks(group, w, &group.quiver().coxeter_word())
        .expect("every element is a subword of enough copies of c")
}

pub fn is_c_sortable(group: &WeylGroup, w: &WeylElement) -> bool {
    c_sorting_blocks(group, w).is_nested()
}

/// Sortability for `c^{-1} = s_n ... s_1`.
pub fn is_c_inverse_sortable(group: &WeylGroup, w: &WeylElement) -> bool {
    sorting_blocks(group, w, &group.quiver().inverse_coxeter_word())
        .expect("every element is a subword of enough copies of c^-1")
        .is_nested()
}

/// `{ s_{i_1} ... s_{i_{k-1}} alpha_{i_k} }` for a reduced word of `w`.
pub fn inversion_set(group: &WeylGroup, w: &WeylElement) -> BTreeSet<Root> {
    let word = group.reduced_word(w);
    let n = group.rank();
    let mut prefix = group.identity();
    let mut out = BTreeSet::new();
    for &i in word.letters() {
        let mut alpha = vec![0; n];
        alpha[i - 1] = 1;
        out.insert(group.apply(&prefix, &alpha));
        prefix = group.right_mul(&prefix, i);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SortingReport {
    pub w: Vec<usize>,
    pub c_sortable: bool,
    pub sort_c: Vec<usize>,
    pub torsion: bool,
}

/// Finite-type sorting data over an enumerated group.
pub struct SortingContext<'a> {
    group: &'a WeylGroup,
    elements: Vec<WeylElement>,
    sortable: HashSet<IntMatrix>,
    w0: WeylElement,
}

impl<'a> SortingContext<'a> {
    pub fn new(group: &'a WeylGroup, cap: usize) -> Result<Self, SortError> {
        let w0 = group.longest_element()?;
        let elements = group.enumerate(cap)?;
        let sortable = elements
            .iter()
            .filter(|w| is_c_sortable(group, w))
            .map(|w| w.matrix().clone())
            .collect();
        Ok(Self {
            group,
            elements,
            sortable,
            w0,
        })
    }

    pub fn group(&self) -> &WeylGroup {
        self.group
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn is_sortable(&self, w: &WeylElement) -> bool {
        self.sortable.contains(w.matrix())
    }

    /// The longest c-sortable `u` with `u <=_R w`.
    pub fn sort_c(&self, w: &WeylElement) -> Result<WeylElement, SortError> {
        let below: Vec<&WeylElement> = self
            .elements
            .iter()
            .filter(|u| self.is_sortable(u) && self.group.weak_leq_right(u, w))
            .collect();
        let best = below.iter().map(|u| u.length()).max().unwrap_or(0);
        let top: Vec<&&WeylElement> = below.iter().filter(|u| u.length() == best).collect();
        match top.as_slice() {
            [u] => Ok((**u).clone()),
            _ => Err(SortError::AmbiguousMaximum(
                top.len(),
                self.group.reduced_word(w),
            )),
        }
    }

    /// `sort_c(w s_i)` is longer than `sort_c(w)` for every right ascent
    /// `s_i`, cross-checked against c^-1-sortability of `w w_0`.
    pub fn is_torsion_candidate(&self, w: &WeylElement) -> Result<bool, SortError> {
        let base = self.sort_c(w)?.length();
        let mut direct = true;
        for i in 1..=self.group.rank() {
            if !self.group.right_descent(w, i) {
                let up = self.group.right_mul(w, i);
                if self.sort_c(&up)?.length() <= base {
                    direct = false;
                    break;
                }
            }
        }
        let via_w0 = is_c_inverse_sortable(self.group, &self.group.multiply(w, &self.w0));
        if direct != via_w0 {
            return Err(SortError::CriterionMismatch {
                w: self.group.reduced_word(w),
                direct,
                via_w0,
            });
        }
        Ok(direct)
    }

    pub fn report(&self, w: &WeylElement) -> Result<SortingReport, SortError> {
        Ok(SortingReport {
            w: self.group.reduced_word(w).letters().to_vec(),
            c_sortable: self.is_sortable(w),
            sort_c: self.group.reduced_word(&self.sort_c(w)?).letters().to_vec(),
            torsion: self.is_torsion_candidate(w)?,
        })
    }
}

/// Catalogue entries whose dimension vectors form `Inv(w)`, for c-sortable
/// `w`, checked against the summands of `Pi / I_w`.
pub fn torsion_free_of(
    alg: &PreprojAlgebra,
    cat: &Catalogue,
    w: &WeylElement,
) -> Result<IndecSet, SortError> {
    let group = alg.group();
    let word = group.reduced_word(w);
    if !is_c_sortable(group, w) {
        return Err(SortError::NotSortable(word));
    }
    let mut set = IndecSet::new();
    for root in inversion_set(group, w) {
        let idx = cat
            .index_of(&crate::arquiver::DimVector(root))
            .ok_or_else(|| SortError::UnknownRoot(word.clone()))?;
        set.insert(idx);
    }
    if alg.c_of_quotient(cat, w)? != set {
        return Err(SortError::CrossCheckMismatch(word));
    }
    Ok(set)
}

/// Outcome of [`verify_torsion_pair`], one flag per condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionPairCheck {
    pub torsion_class: bool,
    pub hom_orthogonal: bool,
    pub free_is_right_perp: bool,
    pub torsion_is_left_perp: bool,
}

impl TorsionPairCheck {
    pub fn holds(&self) -> bool {
        self.torsion_class
            && self.hom_orthogonal
            && self.free_is_right_perp
            && self.torsion_is_left_perp
    }
}

/// `T` is the cofinite class attached to `w` and `F` the torsion-free class
/// of `sort_c(w)`; checks that `(T, F)` is a torsion pair by Hom scans.
pub fn verify_torsion_pair(
    ctx: &SortingContext<'_>,
    alg: &PreprojAlgebra,
    cat: &Catalogue,
    w: &WeylElement,
) -> Result<TorsionPairCheck, SortError> {
    let group = ctx.group();
    let missing = category_of(group, w)?;
    let missing = cat
        .indices_of_labels(missing.missing())
        .map_err(|_| SortError::UnknownRoot(group.reduced_word(w)))?;
    let t = cat.complement(&missing);
    let f = torsion_free_of(alg, cat, &ctx.sort_c(w)?)?;
    Ok(TorsionPairCheck {
        torsion_class: cat.is_torsion_class(&t)?,
        hom_orthogonal: t.iter().all(|&x| f.iter().all(|&y| cat.hom_dim(x, y) == 0)),
        free_is_right_perp: cat.right_perp(&t) == f,
        torsion_is_left_perp: cat.left_perp(&f) == t,
    })
}
