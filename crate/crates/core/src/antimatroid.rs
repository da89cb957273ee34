//! Feasible-set systems built from leftmost subwords, and the accessible,
//! antimatroid and supersolvable axioms.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::leftmost::{leftmost_positions, Base};
use crate::weyl::{WeylElement, WeylError, WeylGroup};
use crate::word::Word;

pub type FeasibleSet = BTreeSet<usize>;

/// A collection of subsets of the ground set `{1, ..., ground}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetSystem {
    pub ground: usize,
    pub feasible: BTreeSet<FeasibleSet>,
}

impl SetSystem {
    pub fn new(ground: usize, feasible: impl IntoIterator<Item = FeasibleSet>) -> Self {
        Self {
            ground,
            feasible: feasible.into_iter().collect(),
        }
    }

    pub fn from_slices(ground: usize, sets: &[&[usize]]) -> Self {
        Self::new(ground, sets.iter().map(|s| s.iter().copied().collect()))
    }

    pub fn len(&self) -> usize {
        self.feasible.len()
    }

    pub fn is_empty(&self) -> bool {
        self.feasible.is_empty()
    }

    pub fn contains(&self, set: &FeasibleSet) -> bool {
        self.feasible.contains(set)
    }
}

/// Every element reachable as a (not necessarily reduced) subword of `base`.
pub fn expressible_elements(group: &WeylGroup, base: &Word) -> Result<Vec<WeylElement>, WeylError> {
    let mut seen: HashSet<WeylElement> = HashSet::from([group.identity()]);
    for &s in base.letters() {
        group.generator(s)?;
        let next: Vec<WeylElement> = seen.iter().map(|v| group.right_mul(v, s)).collect();
        seen.extend(next);
    }
    let mut out: Vec<WeylElement> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The sets `A_v` of leftmost positions, one for each element expressible
/// in `base`.
pub fn feasible_sets_from_word(group: &WeylGroup, base: &Word) -> Result<SetSystem, WeylError> {
    let feasible = expressible_elements(group, base)?
        .iter()
        .map(|v| {
            leftmost_positions(group, v, Base::Word(base))
                .expect("expressible elements have a reduced subword")
                .as_slice()
                .iter()
                .copied()
                .collect()
        })
        .collect::<Vec<FeasibleSet>>();
    Ok(SetSystem::new(base.len(), feasible))
}

/// A pair of feasible sets where an axiom fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub a: FeasibleSet,
    pub b: Option<FeasibleSet>,
}

pub fn accessibility_failure(sys: &SetSystem) -> Option<AxiomFailure> {
    sys.feasible
        .iter()
        .find(|a| {
            !a.is_empty()
                && !a.iter().any(|x| {
                    let mut smaller = (*a).clone();
                    smaller.remove(x);
                    sys.contains(&smaller)
                })
        })
        .map(|a| AxiomFailure {
            a: a.clone(),
            b: None,
        })
}

pub fn is_accessible(sys: &SetSystem) -> bool {
    accessibility_failure(sys).is_none()
}

fn extended(a: &FeasibleSet, x: usize) -> FeasibleSet {
    let mut out = a.clone();
    out.insert(x);
    out
}

fn exchange_failure(
    sys: &SetSystem,
    ok: impl Fn(&FeasibleSet, &FeasibleSet) -> bool,
) -> Option<AxiomFailure> {
    for a in &sys.feasible {
        for b in &sys.feasible {
            if !b.is_subset(a) && !ok(a, b) {
                return Some(AxiomFailure {
                    a: a.clone(),
                    b: Some(b.clone()),
                });
            }
        }
    }
    None
}

/// First failure of accessibility or of the exchange axiom.
pub fn antimatroid_failure(sys: &SetSystem) -> Option<AxiomFailure> {
    accessibility_failure(sys).or_else(|| {
        exchange_failure(sys, |a, b| {
            b.difference(a).any(|&x| sys.contains(&extended(a, x)))
        })
    })
}

pub fn is_antimatroid(sys: &SetSystem) -> bool {
    antimatroid_failure(sys).is_none()
}

/// `order` lists the ground set from smallest to largest; `None` means the
/// natural order.
pub fn supersolvable_failure(sys: &SetSystem, order: Option<&[usize]>) -> Option<AxiomFailure> {
    let rank = |x: usize| match order {
        Some(o) => o.iter().position(|&y| y == x).unwrap_or(usize::MAX),
        None => x,
    };
    accessibility_failure(sys).or_else(|| {
        exchange_failure(sys, |a, b| {
            let x = b
                .difference(a)
                .copied()
                .min_by_key(|&x| rank(x))
                .expect("b is not a subset of a");
            sys.contains(&extended(a, x))
        })
    })
}

pub fn is_supersolvable(sys: &SetSystem, order: Option<&[usize]>) -> bool {
    supersolvable_failure(sys, order).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntimatroidReport {
    pub word: Word,
    pub feasible_sets: usize,
    pub expressible_elements: usize,
    pub accessible: bool,
    pub antimatroid: bool,
    pub supersolvable: bool,
    pub counterexample: Option<AxiomFailure>,
}

impl AntimatroidReport {
    pub fn holds(&self) -> bool {
        self.accessible
            && self.antimatroid
            && self.supersolvable
            && self.feasible_sets == self.expressible_elements
    }
}

pub fn check_word(group: &WeylGroup, base: &Word) -> Result<AntimatroidReport, WeylError> {
    let expressible = expressible_elements(group, base)?.len();
    let sys = feasible_sets_from_word(group, base)?;
    let access = accessibility_failure(&sys);
    let anti = antimatroid_failure(&sys);
    let superso = supersolvable_failure(&sys, None);
    Ok(AntimatroidReport {
        word: base.clone(),
        feasible_sets: sys.len(),
        expressible_elements: expressible,
        accessible: access.is_none(),
        antimatroid: anti.is_none(),
        supersolvable: superso.is_none(),
        counterexample: access.or(anti).or(superso),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arquiver::ar_word_w0;
    use crate::quiver::Quiver;
    use proptest::prelude::*;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::new(&Quiver::builtin(name).unwrap())
    }

    #[test]
    fn a2_word_121() {
        let g = group("A2");
        let sys = feasible_sets_from_word(&g, &Word::new(vec![1, 2, 1])).unwrap();
        let expected = SetSystem::from_slices(3, &[&[], &[1], &[2], &[1, 2], &[2, 3], &[1, 2, 3]]);
        assert_eq!(sys, expected);
        assert!(is_accessible(&sys));
        assert!(is_antimatroid(&sys));
        assert!(is_supersolvable(&sys, None));
    }

    #[test]
    fn tiny_words() {
        let g = group("A1");
        let one = feasible_sets_from_word(&g, &Word::new(vec![1])).unwrap();
        assert_eq!(one, SetSystem::from_slices(1, &[&[], &[1]]));
        let two = feasible_sets_from_word(&g, &Word::new(vec![1, 1])).unwrap();
        assert_eq!(two, SetSystem::from_slices(2, &[&[], &[1]]));
        assert!(feasible_sets_from_word(&g, &Word::new(vec![2])).is_err());
    }

    #[test]
    fn axiom_examples() {
        assert!(is_accessible(&SetSystem::from_slices(
            2,
            &[&[], &[1], &[1, 2]]
        )));
        assert!(!is_accessible(&SetSystem::from_slices(2, &[&[], &[1, 2]])));
        assert!(!is_antimatroid(&SetSystem::from_slices(
            2,
            &[&[], &[1], &[2]]
        )));
        assert!(is_antimatroid(&SetSystem::from_slices(0, &[&[]])));
        let chain = SetSystem::from_slices(2, &[&[], &[2], &[1, 2]]);
        assert!(is_antimatroid(&chain));
        assert!(!is_supersolvable(&chain, None));
        assert!(is_supersolvable(&chain, Some(&[2, 1])));
        let square = SetSystem::from_slices(3, &[&[], &[1], &[3], &[1, 3]]);
        assert!(is_supersolvable(&square, None));
    }

    #[test]
    fn ar_words_give_supersolvable_antimatroids() {
        for name in ["A2", "A3", "D4"] {
            let g = group(name);
            let word = ar_word_w0(g.quiver()).unwrap();
            let report = check_word(&g, &word).unwrap();
            assert!(report.holds(), "{name}: {report:?}");
            assert_eq!(report.feasible_sets, g.enumerate(usize::MAX).unwrap().len());
        }
    }

    #[test]
    fn reduced_words_of_w0_in_a2() {
        let g = group("A2");
        let w0 = g.longest_element().unwrap();
        for word in g.all_reduced_words(&w0) {
            assert!(check_word(&g, &word).unwrap().holds());
        }
    }

    proptest! {
        #[test]
        fn arbitrary_words_in_a3(letters in proptest::collection::vec(1usize..=3, 0..9)) {
            let g = group("A3");
            let report = check_word(&g, &Word::new(letters)).unwrap();
            prop_assert!(report.holds(), "{:?}", report);
        }
    }
}
