//! Weyl groups acting on the root lattice.
//!
//! An element is stored as the integer matrix of its action on the basis of
//! simple roots (column `j` is the image of `alpha_j`), together with the
//! matrix of its inverse and its length. Two elements are equal exactly when
//! their matrices are equal.
//!
//! Lengths are obtained by descent peeling: strip a left descent until the
//! identity is reached. `s_i` is a left descent of `w` iff `w^{-1}(alpha_i)`
//! is a negative root.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Mutex;

use serde::Serialize;
use thiserror::Error;

use crate::intmat::IntMatrix;
use crate::quiver::Quiver;
use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("letter {letter} out of range 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("the Weyl group of {0} is infinite")]
    NotFiniteType(String),
    #[error("group enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),
}

/// A root in simple-root coordinates.
pub type Root = Vec<i64>;

pub fn is_positive_root(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x > 0)
}

pub fn is_negative_root(v: &[i64]) -> bool {
    v.iter().all(|&x| x <= 0) && v.iter().any(|&x| x < 0)
}

#[derive(Clone)]
pub struct WeylElement {
    matrix: IntMatrix,
    inverse: IntMatrix,
    length: usize,
}

impl WeylElement {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &IntMatrix {
        &self.inverse
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn rank(&self) -> usize {
        self.matrix.dim()
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

/// Orders by length first, then by matrix entries.
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length
            .cmp(&other.length)
            .then_with(|| self.matrix.cmp(&other.matrix))
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WeylElement")
            .field("length", &self.length)
            .field("matrix", &self.matrix)
            .finish()
    }
}

/// Serialized form of an element: a reduced word and the length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementReport {
    pub word: Vec<usize>,
    pub length: usize,
}

type BruhatKey = (IntMatrix, IntMatrix);

pub struct WeylGroup {
    quiver: Quiver,
    gens: Vec<IntMatrix>,
    bruhat_memo: Mutex<HashMap<BruhatKey, bool>>,
}

impl WeylGroup {
    pub fn new(quiver: &Quiver) -> Self {
        let n = quiver.n();
        let cartan = quiver.cartan_matrix();
        let gens = (0..n)
            .map(|i| {
                // s_i(alpha_j) = alpha_j - A_ij alpha_i
                let mut m = IntMatrix::identity(n);
                for j in 0..n {
                    m[(i, j)] -= cartan[(i, j)];
                }
                m
            })
            .collect();
        Self {
            quiver: quiver.clone(),
            gens,
            bruhat_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Matrix of `s_i` (1-based `i`).
    pub fn simple_reflection_matrix(&self, i: usize) -> Result<&IntMatrix, WeylError> {
        self.check_letter(i)?;
        Ok(&self.gens[i - 1])
    }

    fn check_letter(&self, letter: usize) -> Result<(), WeylError> {
        if letter == 0 || letter > self.rank() {
            Err(WeylError::LetterOutOfRange {
                letter,
                n: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    pub fn identity(&self) -> WeylElement {
        let id = IntMatrix::identity(self.rank());
        WeylElement {
            matrix: id.clone(),
            inverse: id,
            length: 0,
        }
    }

    pub fn generator(&self, i: usize) -> Result<WeylElement, WeylError> {
        self.check_letter(i)?;
        Ok(WeylElement {
            matrix: self.gens[i - 1].clone(),
            inverse: self.gens[i - 1].clone(),
            length: 1,
        })
    }

    /// Product of the reflections in word order. The length is recomputed by
    /// descent peeling and may be smaller than the word length.
    pub fn evaluate(&self, word: &Word) -> Result<WeylElement, WeylError> {
        let n = self.rank();
        let mut matrix = IntMatrix::identity(n);
        let mut inverse = IntMatrix::identity(n);
        for &l in word.letters() {
            self.check_letter(l)?;
            matrix = &matrix * &self.gens[l - 1];
            inverse = &self.gens[l - 1] * &inverse;
        }
        let length = self.peel_length(&matrix, &inverse);
        Ok(WeylElement {
            matrix,
            inverse,
            length,
        })
    }

    fn first_left_descent(&self, inverse: &IntMatrix) -> Option<usize> {
        (0..self.rank()).find(|&i| inverse.column(i).iter().any(|&x| x < 0))
    }

    fn peel_length(&self, matrix: &IntMatrix, inverse: &IntMatrix) -> usize {
        let mut m = matrix.clone();
        let mut inv = inverse.clone();
        let mut len = 0;
        while let Some(i) = self.first_left_descent(&inv) {
            m = &self.gens[i] * &m;
            inv = &inv * &self.gens[i];
            len += 1;
        }
        debug_assert!(m.is_identity());
        len
    }

    /// `l(s_i w) < l(w)`, i.e. `w^{-1}(alpha_i)` is negative.
    pub fn left_descent(&self, w: &WeylElement, i: usize) -> bool {
        w.inverse.column(i - 1).iter().any(|&x| x < 0)
    }

    /// `l(w s_i) < l(w)`, i.e. `w(alpha_i)` is negative.
    pub fn right_descent(&self, w: &WeylElement, i: usize) -> bool {
        w.matrix.column(i - 1).iter().any(|&x| x < 0)
    }

    pub fn left_descents(&self, w: &WeylElement) -> Vec<usize> {
        (1..=self.rank())
            .filter(|&i| self.left_descent(w, i))
            .collect()
    }

    pub fn right_descents(&self, w: &WeylElement) -> Vec<usize> {
        (1..=self.rank())
            .filter(|&i| self.right_descent(w, i))
            .collect()
    }

    /// `s_i w`.
    pub fn left_mul(&self, i: usize, w: &WeylElement) -> WeylElement {
        let s = &self.gens[i - 1];
        let length = if self.left_descent(w, i) {
            w.length - 1
        } else {
            w.length + 1
        };
        WeylElement {
            matrix: s * &w.matrix,
            inverse: &w.inverse * s,
            length,
        }
    }

    /// `w s_i`.
    pub fn right_mul(&self, w: &WeylElement, i: usize) -> WeylElement {
        let s = &self.gens[i - 1];
        let length = if self.right_descent(w, i) {
            w.length - 1
        } else {
            w.length + 1
        };
        WeylElement {
            matrix: &w.matrix * s,
            inverse: s * &w.inverse,
            length,
        }
    }

    pub fn multiply(&self, v: &WeylElement, w: &WeylElement) -> WeylElement {
        let matrix = &v.matrix * &w.matrix;
        let inverse = &w.inverse * &v.inverse;
        let length = self.peel_length(&matrix, &inverse);
        WeylElement {
            matrix,
            inverse,
            length,
        }
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        WeylElement {
            matrix: w.inverse.clone(),
            inverse: w.matrix.clone(),
            length: w.length,
        }
    }

    /// Reduced word obtained by repeatedly stripping the smallest left descent.
    pub fn reduced_word(&self, w: &WeylElement) -> Word {
        let mut letters = Vec::with_capacity(w.length);
        let mut cur = w.clone();
        while let Some(i) = self.first_left_descent(&cur.inverse) {
            letters.push(i + 1);
            cur = self.left_mul(i + 1, &cur);
        }
        Word::new(letters)
    }

    pub fn report(&self, w: &WeylElement) -> ElementReport {
        ElementReport {
            word: self.reduced_word(w).letters().to_vec(),
            length: w.length,
        }
    }

    pub fn is_reduced(&self, word: &Word) -> Result<bool, WeylError> {
        Ok(self.evaluate(word)?.length == word.len())
    }

    /// Every reduced word of `w`, in lexicographic order.
    pub fn all_reduced_words(&self, w: &WeylElement) -> Vec<Word> {
        if w.is_identity() {
            return vec![Word::empty()];
        }
        let mut out = Vec::new();
        for i in self.left_descents(w) {
            for tail in self.all_reduced_words(&self.left_mul(i, w)) {
                let mut letters = vec![i];
                letters.extend_from_slice(tail.letters());
                out.push(Word::new(letters));
            }
        }
        out
    }

    /// Bruhat order by the lifting property: if `s w < w` then
    /// `v <= w` iff `s v <= s w` (when `s v < v`) or `v <= s w` (otherwise).
    pub fn bruhat_leq(&self, v: &WeylElement, w: &WeylElement) -> bool {
        if v.is_identity() {
            return true;
        }
        if v.length > w.length {
            return false;
        }
        if v.length == w.length {
            return v == w;
        }
        let key = (v.matrix.clone(), w.matrix.clone());
        if let Some(&hit) = self.bruhat_memo.lock().expect("bruhat memo").get(&key) {
            return hit;
        }
        let s = self
            .first_left_descent(&w.inverse)
            .expect("w has positive length")
            + 1;
        let sw = self.left_mul(s, w);
        let result = if self.left_descent(v, s) {
            self.bruhat_leq(&self.left_mul(s, v), &sw)
        } else {
            self.bruhat_leq(v, &sw)
        };
        self.bruhat_memo
            .lock()
            .expect("bruhat memo")
            .insert(key, result);
        result
    }

    /// Right weak order: `l(v) + l(v^{-1} w) = l(w)`.
    pub fn weak_leq_right(&self, v: &WeylElement, w: &WeylElement) -> bool {
        if v.length > w.length {
            return false;
        }
        let quotient = self.multiply(&self.inverse(v), w);
        v.length + quotient.length == w.length
    }

    fn require_finite(&self) -> Result<(), WeylError> {
        if self.quiver.is_dynkin() {
            Ok(())
        } else {
            Err(WeylError::NotFiniteType(self.quiver.to_string()))
        }
    }

    /// The longest element, built by multiplying on the right by ascents.
    pub fn longest_element(&self) -> Result<WeylElement, WeylError> {
        self.require_finite()?;
        let mut w = self.identity();
        while let Some(i) = (1..=self.rank()).find(|&i| !self.right_descent(&w, i)) {
            w = self.right_mul(&w, i);
        }
        Ok(w)
    }

    /// All elements by breadth-first search over left multiplication by
    /// generators, deduplicated by matrix. Elements come out sorted by length
    /// and, within a length, in discovery order.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<WeylElement>, WeylError> {
        let mut seen: HashSet<IntMatrix> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity().matrix);
        while let Some(w) = queue.pop_front() {
            for i in 1..=self.rank() {
                if self.left_descent(&w, i) {
                    continue;
                }
                let sw = self.left_mul(i, &w);
                if seen.insert(sw.matrix.clone()) {
                    if seen.len() > cap {
                        return Err(WeylError::CapExceeded(cap));
                    }
                    queue.push_back(sw);
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    /// `w` applied to a vector in simple-root coordinates.
    pub fn apply(&self, w: &WeylElement, v: &[i64]) -> Vec<i64> {
        w.matrix.mul_vec(v)
    }

    /// Positive roots as the orbit of the simple roots, sorted by height then
    /// lexicographically. Finite type only.
    pub fn positive_roots(&self) -> Result<Vec<Root>, WeylError> {
        self.require_finite()?;
        let n = self.rank();
        let mut seen: HashSet<Root> = HashSet::new();
        let mut queue: VecDeque<Root> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        while let Some(r) = queue.pop_front() {
            if !seen.insert(r.clone()) {
                continue;
            }
            for g in &self.gens {
                let image = g.mul_vec(&r);
                if is_positive_root(&image) && !seen.contains(&image) {
                    queue.push_back(image);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_iter().collect();
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        Ok(roots)
    }
}
