//! The preprojective algebra of a Dynkin quiver as an explicit
//! finite-dimensional algebra over `F_p`, and its ideals `I_w`.
//!
//! Paths are written left to right. An arrow `a: s -> t` of the quiver
//! contributes two letters: `a` itself read as `t -> s` (so that right
//! multiplication by it restricts to the kQ-action of [`crate::repkit`]) and
//! its reverse `a*: s -> t`. The relation at vertex `v` is
//! `sum_{a: s = v} a* a - sum_{a: t = v} a a*`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::arquiver::enumerate_preprojectives;
use crate::fp::{is_prime, neg, FpMatrix, Subspace};
use crate::intmat::IntMatrix;
use crate::quiver::Quiver;
use crate::repkit::{Catalogue, IndecSet, Rep, RepError};
use crate::weyl::{WeylElement, WeylError, WeylGroup};
use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreprojError {
    #[error("quiver {0} is not of Dynkin type; its preprojective algebra is infinite dimensional")]
    NotDynkin(String),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("word {0} is not reduced")]
    NotReduced(Word),
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("catalogue is over a different quiver or field")]
    CatalogueMismatch,
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// A basis element: the class of a path, tagged with its endpoints and length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub start: usize,
    pub end: usize,
    pub degree: usize,
    /// Letters of a representative path; empty for the idempotents.
    pub path: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
struct Letter {
    start: usize,
    end: usize,
}

type SparseVec = Vec<(usize, u32)>;

/// A two-sided ideal, stored as an echelon basis in the coordinates of the
/// algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    space: Subspace,
}

impl Ideal {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn contains(&self, other: &Ideal) -> bool {
        self.space.contains_subspace(&other.space)
    }
}

pub struct PreprojAlgebra {
    quiver: Quiver,
    group: WeylGroup,
    p: u32,
    letters: Vec<Letter>,
    basis: Vec<BasisElement>,
    graded: Vec<usize>,
    /// `rmul[x][b]`: basis element `b` times letter `x`.
    rmul: Vec<Vec<SparseVec>>,
    cache: Mutex<HashMap<IntMatrix, Arc<Ideal>>>,
}

impl std::fmt::Debug for PreprojAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PreprojAlgebra")
            .field("quiver", &self.quiver.to_string())
            .field("p", &self.p)
            .field("graded", &self.graded)
            .finish()
    }
}

impl PreprojAlgebra {
    /// Degree by degree: `A_d = (A_{d-1} (x) letters) / (A_{d-2} (x) relations)`,
    /// stopping at the first zero component.
    pub fn build(q: &Quiver, p: u32) -> Result<Self, PreprojError> {
        if !is_prime(p) {
            return Err(PreprojError::NotPrime(p));
        }
        if !q.is_dynkin() {
            return Err(PreprojError::NotDynkin(q.to_string()));
        }
        let n = q.n();
        let mut letters = Vec::new();
        for &(s, t) in q.arrows() {
            letters.push(Letter { start: t, end: s });
            letters.push(Letter { start: s, end: t });
        }
        // rho[v]: (coefficient, first letter, second letter).
        let mut rho: Vec<Vec<(u32, usize, usize)>> = vec![Vec::new(); n + 1];
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            let (bar, star) = (2 * a, 2 * a + 1);
            rho[s].push((1, star, bar));
            rho[t].push((neg(1, p), bar, star));
        }

        let mut basis: Vec<BasisElement> = (1..=n)
            .map(|v| BasisElement {
                start: v,
                end: v,
                degree: 0,
                path: Vec::new(),
            })
            .collect();
        let mut rmul: Vec<Vec<SparseVec>> = vec![Vec::new(); letters.len()];
        let mut graded = vec![n];
        // Degree 1 is free on the letters.
        let mut prev: Vec<usize> = (0..n).collect();
        let mut cur: Vec<usize> = Vec::new();
        for (x, l) in letters.iter().enumerate() {
            cur.push(basis.len());
            basis.push(BasisElement {
                start: l.start,
                end: l.end,
                degree: 1,
                path: vec![x],
            });
        }
        for (x, l) in letters.iter().enumerate() {
            rmul[x] = vec![Vec::new(); basis.len()];
            rmul[x][l.start - 1] = vec![(cur[x], 1)];
        }
        graded.push(cur.len());
        let mut before = prev;
        prev = cur;

        while !prev.is_empty() {
            // Candidates (b, x) with b in degree d-1.
            let mut cand: Vec<(usize, usize)> = Vec::new();
            let mut cand_index: HashMap<(usize, usize), usize> = HashMap::new();
            for &b in &prev {
                for (x, l) in letters.iter().enumerate() {
                    if basis[b].end == l.start {
                        cand_index.insert((b, x), cand.len());
                        cand.push((b, x));
                    }
                }
            }
            let width = cand.len();
            let mut rel_rows: Vec<u32> = Vec::new();
            let mut rel_count = 0;
            for &c in &before {
                let v = basis[c].end;
                let mut row = vec![0u32; width];
                for &(coef, x, y) in &rho[v] {
                    for &(b, cb) in &rmul[x][c] {
                        if let Some(&col) = cand_index.get(&(b, y)) {
                            let add = (coef as u64 * cb as u64 % p as u64) as u32;
                            row[col] = (row[col] + add) % p;
                        }
                    }
                }
                rel_rows.extend(row);
                rel_count += 1;
            }
            let rel = FpMatrix::from_rows(rel_count, width, p, &rel_rows);
            let (rref, pivots) = rel.rref();
            let mut new_index = vec![usize::MAX; width];
            let mut cur = Vec::new();
            for (col, &(b, x)) in cand.iter().enumerate() {
                if pivots.binary_search(&col).is_err() {
                    new_index[col] = basis.len();
                    cur.push(basis.len());
                    let mut path = basis[b].path.clone();
                    path.push(x);
                    basis.push(BasisElement {
                        start: basis[b].start,
                        end: letters[x].end,
                        degree: basis[b].degree + 1,
                        path,
                    });
                }
            }
            let pivot_row: HashMap<usize, usize> =
                pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
            for row in rmul.iter_mut() {
                row.resize(basis.len(), Vec::new());
            }
            for (col, &(b, x)) in cand.iter().enumerate() {
                let value: SparseVec = match pivot_row.get(&col) {
                    None => vec![(new_index[col], 1)],
                    Some(&r) => (0..width)
                        .filter(|&f| new_index[f] != usize::MAX && rref.get(r, f) != 0)
                        .map(|f| (new_index[f], neg(rref.get(r, f), p)))
                        .collect(),
                };
                rmul[x][b] = value;
            }
            graded.push(cur.len());
            before = prev;
            prev = cur;
        }
        graded.pop();
        for row in rmul.iter_mut() {
            row.resize(basis.len(), Vec::new());
        }
        Ok(Self {
            quiver: q.clone(),
            group: WeylGroup::new(q),
            p,
            letters,
            basis,
            graded,
            rmul,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimensions of the graded pieces, degree 0 first.
    pub fn graded_dims(&self) -> &[usize] {
        &self.graded
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    /// `sum over preprojective rows of the total dimension`; the dimension
    /// of the algebra is expected to equal this.
    pub fn expected_dim(q: &Quiver) -> usize {
        enumerate_preprojectives(q, 0)
            .rows()
            .iter()
            .map(|(_, d)| d.total() as usize)
            .sum()
    }

    pub fn basis_vector(&self, k: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[k] = 1;
        v
    }

    pub fn idempotent(&self, i: usize) -> Vec<u32> {
        self.basis_vector(i - 1)
    }

    pub fn unit(&self) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[..self.quiver.n()].fill(1);
        v
    }

    fn right_letter(&self, u: &[u32], x: usize) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = vec![0u32; self.dim()];
        for (b, &c) in u.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(k, m) in &self.rmul[x][b] {
                out[k] = ((out[k] as u64 + c as u64 * m as u64) % p) as u32;
            }
        }
        out
    }

    /// `u` times the basis element `k`.
    fn right_basis(&self, u: &[u32], k: usize) -> Vec<u32> {
        let el = &self.basis[k];
        let mut acc: Vec<u32> = u
            .iter()
            .enumerate()
            .map(|(b, &c)| if self.basis[b].end == el.start { c } else { 0 })
            .collect();
        for &x in &el.path {
            acc = self.right_letter(&acc, x);
        }
        acc
    }

    pub fn mul(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.dim()];
        for (k, &c) in v.iter().enumerate() {
            if c != 0 {
                let part = self.right_basis(u, k);
                crate::fp::axpy(&mut out, c, &part, self.p);
            }
        }
        out
    }

    pub fn whole(&self) -> Ideal {
        Ideal {
            space: Subspace::full(self.dim(), self.p),
        }
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal {
            space: Subspace::zero(self.dim(), self.p),
        }
    }

    /// Closed under left and right multiplication by every letter and
    /// idempotent, hence by the whole algebra.
    pub fn is_two_sided(&self, s: &Subspace) -> bool {
        let gens: Vec<usize> = (0..self.quiver.n())
            .chain((0..self.letters.len()).map(|x| self.quiver.n() + x))
            .collect();
        s.basis().iter().all(|v| {
            gens.iter().all(|&g| {
                let gv = self.basis_vector(g);
                s.contains(&self.mul(v, &gv)) && s.contains(&self.mul(&gv, v))
            })
        })
    }

    fn checked(&self, space: Subspace) -> Result<Ideal, PreprojError> {
        if self.is_two_sided(&space) {
            Ok(Ideal { space })
        } else {
            Err(PreprojError::NotAnIdeal)
        }
    }

    /// `I_i = Pi (1 - e_i) Pi`, spanned by products of basis elements that
    /// meet at a vertex other than `i`.
    pub fn ideal_i(&self, i: usize) -> Result<Ideal, PreprojError> {
        let mut space = Subspace::zero(self.dim(), self.p);
        for x in 0..self.dim() {
            if self.basis[x].end == i {
                continue;
            }
            let xv = self.basis_vector(x);
            for y in 0..self.dim() {
                if self.basis[y].start == self.basis[x].end {
                    space.insert(self.right_basis(&xv, y));
                }
            }
        }
        self.checked(space)
    }

    pub fn multiply_ideals(&self, a: &Ideal, b: &Ideal) -> Result<Ideal, PreprojError> {
        let mut space = Subspace::zero(self.dim(), self.p);
        for u in a.space.basis() {
            for v in b.space.basis() {
                space.insert(self.mul(u, v));
            }
        }
        self.checked(space)
    }

    /// `I_w = I_{i_t} ... I_{i_1}` for a reduced word `s_{i_1} ... s_{i_t}`,
    /// computed directly from the word without the cache.
    pub fn ideal_w(&self, word: &Word) -> Result<Ideal, PreprojError> {
        if !self.group.is_reduced(word)? {
            return Err(PreprojError::NotReduced(word.clone()));
        }
        let mut acc = self.whole();
        for &i in word.letters() {
            acc = self.multiply_ideals(&self.ideal_i(i)?, &acc)?;
        }
        Ok(acc)
    }

    /// `I_w`, memoised by the element. Uses `I_{ws} = I_s I_w` when
    /// `l(ws) > l(w)`.
    pub fn ideal_of(&self, w: &WeylElement) -> Result<Arc<Ideal>, PreprojError> {
        if let Some(hit) = self.cache.lock().expect("ideal cache").get(w.matrix()) {
            return Ok(Arc::clone(hit));
        }
        let ideal = match self.group.right_descents(w).first() {
            None => self.whole(),
            Some(&s) => {
                let shorter = self.group.right_mul(w, s);
                let inner = self.ideal_of(&shorter)?;
                self.multiply_ideals(&self.ideal_i(s)?, &inner)?
            }
        };
        let mut cache = self.cache.lock().expect("ideal cache");
        let entry = cache
            .entry(w.matrix().clone())
            .or_insert_with(|| Arc::new(ideal));
        Ok(Arc::clone(entry))
    }

    /// Basis indices ending at each vertex (the right kQ-grading).
    fn ending_at(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&k| self.basis[k].end == v)
    }

    /// The right kQ-module `I`: vertex `j` is `I e_j`, and the arrow
    /// `s -> t` acts by right multiplication `I e_t -> I e_s`.
    pub fn restrict(&self, ideal: &Ideal) -> Rep {
        let n = self.quiver.n();
        let parts: Vec<Subspace> = (1..=n)
            .map(|j| {
                let e = self.idempotent(j);
                Subspace::span(
                    self.dim(),
                    self.p,
                    ideal.space.basis().iter().map(|u| self.mul(u, &e)),
                )
            })
            .collect();
        let dims: Vec<usize> = parts.iter().map(Subspace::dim).collect();
        let mats = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let cols: Vec<Vec<u32>> = parts[t - 1]
                    .basis()
                    .iter()
                    .map(|b| {
                        parts[s - 1]
                            .coordinates(&self.right_letter(b, 2 * a))
                            .expect("ideal is closed under right multiplication")
                    })
                    .collect();
                FpMatrix::from_columns(dims[s - 1], self.p, &cols)
            })
            .collect();
        Rep::new(self.p, dims, self.quiver.arrows().to_vec(), mats)
            .expect("restriction has consistent shapes")
    }

    /// The right kQ-module `Pi / I`, using the non-pivot coordinates of the
    /// echelon basis of `I` as a basis of the quotient.
    pub fn restrict_quotient(&self, ideal: &Ideal) -> Rep {
        let n = self.quiver.n();
        let pivots = ideal.space.pivots();
        let free: Vec<Vec<usize>> = (1..=n)
            .map(|j| {
                self.ending_at(j)
                    .filter(|k| pivots.binary_search(k).is_err())
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = free.iter().map(Vec::len).collect();
        let mats = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let cols: Vec<Vec<u32>> = free[t - 1]
                    .iter()
                    .map(|&k| {
                        let image = ideal
                            .space
                            .reduce(&self.right_letter(&self.basis_vector(k), 2 * a));
                        free[s - 1].iter().map(|&f| image[f]).collect()
                    })
                    .collect();
                FpMatrix::from_columns(dims[s - 1], self.p, &cols)
            })
            .collect();
        Rep::new(self.p, dims, self.quiver.arrows().to_vec(), mats)
            .expect("quotient has consistent shapes")
    }

    fn check_catalogue(&self, cat: &Catalogue) -> Result<(), PreprojError> {
        if cat.quiver().arrows() != self.quiver.arrows() || cat.p() != self.p {
            return Err(PreprojError::CatalogueMismatch);
        }
        Ok(())
    }

    /// Indecomposable summands of `I_w` restricted to kQ.
    pub fn c_of(&self, cat: &Catalogue, w: &WeylElement) -> Result<IndecSet, PreprojError> {
        self.check_catalogue(cat)?;
        let ideal = self.ideal_of(w)?;
        Ok(cat.decompose(&self.restrict(&ideal))?.into_iter().collect())
    }

    /// Indecomposable summands of `Pi / I_w` restricted to kQ.
    pub fn c_of_quotient(
        &self,
        cat: &Catalogue,
        w: &WeylElement,
    ) -> Result<IndecSet, PreprojError> {
        self.check_catalogue(cat)?;
        let ideal = self.ideal_of(w)?;
        Ok(cat
            .decompose(&self.restrict_quotient(&ideal))?
            .into_iter()
            .collect())
    }

    /// `dim e_i I e_j` for all vertex pairs (1-based rows and columns stored
    /// 0-based).
    pub fn bigraded_dims(&self, ideal: &Ideal) -> Vec<Vec<usize>> {
        let n = self.quiver.n();
        (1..=n)
            .map(|i| {
                let ei = self.idempotent(i);
                (1..=n)
                    .map(|j| {
                        let ej = self.idempotent(j);
                        Subspace::span(
                            self.dim(),
                            self.p,
                            ideal
                                .space
                                .basis()
                                .iter()
                                .map(|u| self.mul(&self.mul(&ei, u), &ej)),
                        )
                        .dim()
                    })
                    .collect()
            })
            .collect()
    }

    /// `dim e_i (Pi / I) e_j`.
    pub fn bigraded_quotient_dims(&self, ideal: &Ideal) -> Vec<Vec<usize>> {
        let n = self.quiver.n();
        let sub = self.bigraded_dims(ideal);
        let whole = self.bigraded_dims(&self.whole());
        (0..n)
            .map(|i| (0..n).map(|j| whole[i][j] - sub[i][j]).collect())
            .collect()
    }

    /// The permutation `nu` with `w_0(alpha_i) = -alpha_{nu(i)}` (1-based).
    pub fn nakayama_permutation(&self) -> Result<Vec<usize>, PreprojError> {
        let w0 = self.group.longest_element()?;
        let n = self.quiver.n();
        Ok((0..n)
            .map(|i| {
                let mut alpha = vec![0; n];
                alpha[i] = 1;
                let image = self.group.apply(&w0, &alpha);
                image
                    .iter()
                    .position(|&c| c == -1)
                    .expect("w_0 maps simple roots to negative simple roots")
                    + 1
            })
            .collect())
    }

    /// Graded shadow of `D I_w = Pi / I_{w_0 w^{-1}}`: the total dimensions
    /// agree and `dim e_i (Pi / I_{w_0 w^{-1}}) e_j = dim e_{nu(j)} I_w e_i`,
    /// i.e. the dual grading `e_i (D M) e_j = D(e_j M e_i)` twisted by the
    /// Nakayama permutation on one side. Dimensions only, not module
    /// structures.
    pub fn verify_duality(&self, w: &WeylElement) -> Result<bool, PreprojError> {
        let w0 = self.group.longest_element()?;
        let partner = self.group.multiply(&w0, &self.group.inverse(w));
        let iw = self.ideal_of(w)?;
        let ip = self.ideal_of(&partner)?;
        if iw.dim() != self.dim() - ip.dim() {
            return Ok(false);
        }
        let nu = self.nakayama_permutation()?;
        let a = self.bigraded_dims(&iw);
        let b = self.bigraded_quotient_dims(&ip);
        let n = self.quiver.n();
        Ok((0..n).all(|i| (0..n).all(|j| b[i][j] == a[nu[j] - 1][i])))
    }

    /// Whether `I_v` contains `I_w`.
    pub fn ideal_contains(&self, v: &WeylElement, w: &WeylElement) -> Result<bool, PreprojError> {
        let (iv, iw) = (self.ideal_of(v)?, self.ideal_of(w)?);
        Ok(iv.contains(&iw))
    }
}
