//! Explicit quiver representations over `F_p` and brute-force closure tests
//! for sets of indecomposables.
//!
//! Representations are right modules over the path algebra: an arrow
//! `a: s -> t` acts as a linear map `V_t -> V_s`, stored as a
//! `dim_s x dim_t` matrix. With this convention `P_1` is simple and
//! `dim(P_i)_j` counts paths `j -> i`, matching [`crate::arquiver`].

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arquiver::{enumerate_preprojectives, DimVector};
use crate::fp::{is_prime, FpMatrix, Subspace};
use crate::leftmost::PreprojIndex;
use crate::quiver::Quiver;

/// Set of indecomposables, as indices into a [`Catalogue`].
pub type IndecSet = BTreeSet<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("{0} is not a positive root of the quiver")]
    NotARoot(DimVector),
    #[error("quiver {0} is not of Dynkin type")]
    NotDynkin(String),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("matrix for arrow {arrow} has shape {got:?}, expected {expected:?}")]
    ShapeMismatch {
        arrow: usize,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error(
        "extension enumeration refused: p = {p}, dim Ext = {ext_dim} (caps p <= 5, dim Ext <= 4)"
    )]
    FieldTooLargeForEnumeration { p: u32, ext_dim: usize },
    #[error("no splitting found for a representation of dimension {0} within the retry budget")]
    DecompositionFailure(DimVector),
    #[error("could not construct an indecomposable of dimension {0}")]
    ConstructionFailure(DimVector),
}

const SPLIT_RETRIES: usize = 32;
const BUILD_RETRIES: usize = 2000;
const MAX_ENUM_P: u32 = 5;
const MAX_ENUM_EXT: usize = 4;

/// A representation: one vector space per vertex, one matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    p: u32,
    dims: Vec<usize>,
    arrows: Vec<(usize, usize)>,
    mats: Vec<FpMatrix>,
}

impl Rep {
    pub fn new(
        p: u32,
        dims: Vec<usize>,
        arrows: Vec<(usize, usize)>,
        mats: Vec<FpMatrix>,
    ) -> Result<Self, RepError> {
        assert_eq!(arrows.len(), mats.len(), "one matrix per arrow");
        for (a, (&(s, t), m)) in arrows.iter().zip(&mats).enumerate() {
            let expected = (dims[s - 1], dims[t - 1]);
            if (m.rows(), m.cols()) != expected {
                return Err(RepError::ShapeMismatch {
                    arrow: a,
                    got: (m.rows(), m.cols()),
                    expected,
                });
            }
        }
        Ok(Self {
            p,
            dims,
            arrows,
            mats,
        })
    }

    pub fn zero(q: &Quiver, p: u32) -> Self {
        Self::with_dims(q, p, &vec![0; q.n()])
    }

    /// All arrow maps zero.
    pub fn with_dims(q: &Quiver, p: u32, dims: &[usize]) -> Self {
        let mats = q
            .arrows()
            .iter()
            .map(|&(s, t)| FpMatrix::zeros(dims[s - 1], dims[t - 1], p))
            .collect();
        Self {
            p,
            dims: dims.to_vec(),
            arrows: q.arrows().to_vec(),
            mats,
        }
    }

    pub fn random(q: &Quiver, p: u32, dims: &[usize], rng: &mut impl Rng) -> Self {
        let mut r = Self::with_dims(q, p, dims);
        for m in r.mats.iter_mut() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    m.set(i, j, rng.gen_range(0..p));
                }
            }
        }
        r
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn mats(&self) -> &[FpMatrix] {
        &self.mats
    }

    /// Start of each vertex block in the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims
            .iter()
            .map(|&d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        let dims: Vec<usize> = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let mats = self
            .arrows
            .iter()
            .zip(self.mats.iter().zip(&other.mats))
            .map(|(&(s, t), (a, b))| {
                let mut m = FpMatrix::zeros(dims[s - 1], dims[t - 1], self.p);
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m.set(a.rows() + i, a.cols() + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Rep {
            p: self.p,
            dims,
            arrows: self.arrows.clone(),
            mats,
        }
    }

    /// The subrepresentation on the given vertex subspaces, in their echelon
    /// bases. The subspaces must be stable under the arrow maps.
    pub fn restrict(&self, subs: &[Subspace]) -> Rep {
        let dims: Vec<usize> = subs.iter().map(Subspace::dim).collect();
        let mats = self
            .arrows
            .iter()
            .zip(&self.mats)
            .map(|(&(s, t), m)| {
                let cols: Vec<Vec<u32>> = subs[t - 1]
                    .basis()
                    .iter()
                    .map(|b| {
                        subs[s - 1]
                            .coordinates(&m.mul_vec(b))
                            .expect("subspace is stable under the arrow maps")
                    })
                    .collect();
                FpMatrix::from_columns(dims[s - 1], self.p, &cols)
            })
            .collect();
        Rep {
            p: self.p,
            dims,
            arrows: self.arrows.clone(),
            mats,
        }
    }

    /// Same representation after the base change `g_v` at every vertex.
    pub fn conjugate(&self, g: &[FpMatrix]) -> Rep {
        let inv: Vec<FpMatrix> = g
            .iter()
            .map(|m| m.inverse().expect("base change must be invertible"))
            .collect();
        let mats = self
            .arrows
            .iter()
            .zip(&self.mats)
            .map(|(&(s, t), m)| g[s - 1].mul(m).mul(&inv[t - 1]))
            .collect();
        Rep {
            mats,
            ..self.clone()
        }
    }

    /// The vector-space dual, a representation of the opposite quiver
    /// renumbered `v -> n + 1 - v` (see [`Quiver::opposite`]).
    pub fn dual(&self) -> Rep {
        let n = self.dims.len();
        Rep {
            p: self.p,
            dims: self.dims.iter().rev().copied().collect(),
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| (n + 1 - t, n + 1 - s))
                .collect(),
            mats: self.mats.iter().map(FpMatrix::transpose).collect(),
        }
    }
}

/// A morphism: one matrix `V_v -> W_v` per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism(pub Vec<FpMatrix>);

impl Morphism {
    pub fn is_morphism(&self, x: &Rep, y: &Rep) -> bool {
        x.arrows
            .iter()
            .enumerate()
            .all(|(a, &(s, t))| self.0[s - 1].mul(&x.mats[a]) == y.mats[a].mul(&self.0[t - 1]))
    }

    /// Image of a total-space vector of the source.
    pub fn apply(&self, x: &Rep, y: &Rep, v: &[u32]) -> Vec<u32> {
        let (xo, yo) = (x.offsets(), y.offsets());
        let mut out = vec![0; y.total_dim()];
        for (i, f) in self.0.iter().enumerate() {
            let part = f.mul_vec(&v[xo[i]..xo[i] + x.dims[i]]);
            out[yo[i]..yo[i] + y.dims[i]].copy_from_slice(&part);
        }
        out
    }
}

pub type HomBasis = Vec<Morphism>;

/// Basis of `Hom(X, Y)`: solutions of `f_s X_a = Y_a f_t` for each arrow.
pub fn hom_space(x: &Rep, y: &Rep) -> HomBasis {
    let p = x.p;
    let n = x.dims.len();
    // Unknown (v, r, c) is entry (r, c) of f_v, a dim Y_v x dim X_v block.
    let mut var_off = vec![0; n + 1];
    for v in 0..n {
        var_off[v + 1] = var_off[v] + y.dims[v] * x.dims[v];
    }
    let vars = var_off[n];
    let var = |v: usize, r: usize, c: usize| var_off[v] + r * x.dims[v] + c;
    let mut eqs: Vec<Vec<u32>> = Vec::new();
    for (a, &(s, t)) in x.arrows.iter().enumerate() {
        let (s, t) = (s - 1, t - 1);
        let (xa, ya) = (&x.mats[a], &y.mats[a]);
        for r in 0..y.dims[s] {
            for c in 0..x.dims[t] {
                let mut eq = vec![0u32; vars];
                for k in 0..x.dims[s] {
                    let coeff = xa.get(k, c);
                    if coeff != 0 {
                        let i = var(s, r, k);
                        eq[i] = (eq[i] + coeff) % p;
                    }
                }
                for k in 0..y.dims[t] {
                    let coeff = ya.get(r, k);
                    if coeff != 0 {
                        let i = var(t, k, c);
                        eq[i] = (eq[i] + p - coeff) % p;
                    }
                }
                eqs.push(eq);
            }
        }
    }
    let flat: Vec<u32> = eqs.concat();
    let system = FpMatrix::from_rows(eqs.len(), vars, p, &flat);
    system
        .nullspace()
        .into_iter()
        .map(|sol| {
            Morphism(
                (0..n)
                    .map(|v| {
                        FpMatrix::from_rows(
                            y.dims[v],
                            x.dims[v],
                            p,
                            &sol[var_off[v]..var_off[v + 1]],
                        )
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Sum of the images of all maps `X -> N`, as a subspace of the total space
/// of `N`.
pub fn trace_subspace(x: &Rep, n: &Rep) -> Subspace {
    let total = x.total_dim();
    Subspace::span(
        n.total_dim(),
        n.p,
        hom_space(x, n).iter().flat_map(|f| {
            (0..total).map(move |i| {
                let mut e = vec![0; total];
                e[i] = 1;
                f.apply(x, n, &e)
            })
        }),
    )
}

/// Common kernel of all maps `N -> X`, as a subspace of the total space of
/// `N`.
pub fn cotrace_subspace(n: &Rep, x: &Rep) -> Subspace {
    let homs = hom_space(n, x);
    let total = n.total_dim();
    if homs.is_empty() {
        return Subspace::full(total, n.p);
    }
    let rows: Vec<u32> = homs
        .iter()
        .flat_map(|f| {
            let cols: Vec<Vec<u32>> = (0..total)
                .map(|i| {
                    let mut e = vec![0; total];
                    e[i] = 1;
                    f.apply(n, x, &e)
                })
                .collect();
            FpMatrix::from_columns(x.total_dim(), n.p, &cols)
                .data()
                .to_vec()
        })
        .collect();
    let m = FpMatrix::from_rows(rows.len() / total.max(1), total, n.p, &rows);
    Subspace::span(total, n.p, m.nullspace())
}

/// `dim Hom(Z, X) - dim Ext^1(Z, X)` computed from dimension vectors.
pub fn euler_form(q: &Quiver, z: &DimVector, x: &DimVector) -> i64 {
    let e = q.euler_matrix();
    let n = q.n();
    let mut acc = 0;
    for s in 0..n {
        for t in 0..n {
            acc += x.0[s] * e[(s, t)] * z.0[t];
        }
    }
    acc
}

/// Extensions `0 -> X -> E -> Z -> 0` are given by maps `h_a: Z_t -> X_s`
/// modulo coboundaries `phi_s Z_a - X_a phi_t`. Returns a basis of a
/// complement of the coboundaries, one vector of blocks per class.
fn ext_basis(z: &Rep, x: &Rep) -> Vec<Vec<FpMatrix>> {
    let p = x.p;
    let n = x.dims.len();
    let mut h_off = vec![0; x.arrows.len() + 1];
    for (a, &(s, t)) in x.arrows.iter().enumerate() {
        h_off[a + 1] = h_off[a] + x.dims[s - 1] * z.dims[t - 1];
    }
    let h_total = h_off[x.arrows.len()];
    let mut coboundaries = Subspace::zero(h_total, p);
    for v in 0..n {
        for r in 0..x.dims[v] {
            for c in 0..z.dims[v] {
                // phi = elementary matrix E_rc at vertex v.
                let mut vec = vec![0u32; h_total];
                for (a, &(s, t)) in x.arrows.iter().enumerate() {
                    let (s, t) = (s - 1, t - 1);
                    let cols = z.dims[t];
                    if s == v {
                        // phi_s Z_a: row r gets row c of Z_a.
                        for j in 0..cols {
                            let idx = h_off[a] + r * cols + j;
                            vec[idx] = (vec[idx] + z.mats[a].get(c, j)) % p;
                        }
                    }
                    if t == v {
                        // - X_a phi_t: column c gets - column r of X_a.
                        for i in 0..x.dims[s] {
                            let idx = h_off[a] + i * cols + c;
                            vec[idx] = (vec[idx] + p - x.mats[a].get(i, r)) % p;
                        }
                    }
                }
                coboundaries.insert(vec);
            }
        }
    }
    let mut complement = Vec::new();
    let mut grown = coboundaries;
    for i in 0..h_total {
        let mut e = vec![0; h_total];
        e[i] = 1;
        if grown.insert(e.clone()) {
            complement.push(e);
        }
    }
    complement
        .into_iter()
        .map(|h| {
            x.arrows
                .iter()
                .enumerate()
                .map(|(a, &(s, t))| {
                    FpMatrix::from_rows(x.dims[s - 1], z.dims[t - 1], p, &h[h_off[a]..h_off[a + 1]])
                })
                .collect()
        })
        .collect()
}

pub fn ext_dim(z: &Rep, x: &Rep) -> usize {
    ext_basis(z, x).len()
}

/// Middle term of the extension of `Z` by `X` with cocycle `h`.
fn extension(z: &Rep, x: &Rep, h: &[FpMatrix]) -> Rep {
    let p = x.p;
    let dims: Vec<usize> = x.dims.iter().zip(&z.dims).map(|(a, b)| a + b).collect();
    let mats = x
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let (s, t) = (s - 1, t - 1);
            let mut m = FpMatrix::zeros(dims[s], dims[t], p);
            for i in 0..x.dims[s] {
                for j in 0..x.dims[t] {
                    m.set(i, j, x.mats[a].get(i, j));
                }
                for j in 0..z.dims[t] {
                    m.set(i, x.dims[t] + j, h[a].get(i, j));
                }
            }
            for i in 0..z.dims[s] {
                for j in 0..z.dims[t] {
                    m.set(x.dims[s] + i, x.dims[t] + j, z.mats[a].get(i, j));
                }
            }
            m
        })
        .collect();
    Rep {
        p,
        dims,
        arrows: x.arrows.clone(),
        mats,
    }
}

/// Middle terms of all non-split extensions `0 -> X -> E -> Z -> 0`, one per
/// class up to scalars.
pub fn nonsplit_extensions(z: &Rep, x: &Rep) -> Result<Vec<Rep>, RepError> {
    let basis = ext_basis(z, x);
    let d = basis.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    let p = x.p;
    if p > MAX_ENUM_P || d > MAX_ENUM_EXT {
        return Err(RepError::FieldTooLargeForEnumeration { p, ext_dim: d });
    }
    let mut out = Vec::new();
    let mut coeffs = vec![0u32; d];
    loop {
        // Normalised representatives: first nonzero coefficient is 1.
        if coeffs.iter().find(|&&c| c != 0) == Some(&1) {
            let h: Vec<FpMatrix> = (0..x.arrows.len())
                .map(|a| {
                    let mut m = FpMatrix::zeros(basis[0][a].rows(), basis[0][a].cols(), p);
                    for (c, b) in coeffs.iter().zip(&basis) {
                        m = m.add_scaled(*c, &b[a]);
                    }
                    m
                })
                .collect();
            out.push(extension(z, x, &h));
        }
        let mut i = 0;
        while i < d {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        if i == d {
            break;
        }
    }
    Ok(out)
}

/// A random representation with the given dimension vector, retried until its
/// endomorphism ring is the field. In Dynkin type such a brick is the unique
/// indecomposable with that dimension vector.
pub fn build_indecomposable(
    q: &Quiver,
    dim: &DimVector,
    p: u32,
    rng: &mut impl Rng,
) -> Result<Rep, RepError> {
    if !q.is_dynkin() {
        return Err(RepError::NotDynkin(q.to_string()));
    }
    let roots = enumerate_preprojectives(q, 0);
    if !roots.rows().iter().any(|(_, d)| d == dim) {
        return Err(RepError::NotARoot(dim.clone()));
    }
    let dims: Vec<usize> = dim.0.iter().map(|&d| d as usize).collect();
    for _ in 0..BUILD_RETRIES {
        let r = Rep::random(q, p, &dims, rng);
        if hom_space(&r, &r).len() == 1 {
            return Ok(r);
        }
    }
    Err(RepError::ConstructionFailure(dim.clone()))
}

/// Splits `m` by the Fitting decomposition of `phi - lambda` for a random
/// endomorphism `phi`. `None` when `End(m)` is the field.
fn split(m: &Rep, rng: &mut ChaCha8Rng) -> Result<Option<(Rep, Rep)>, RepError> {
    let p = m.p;
    let end = hom_space(m, m);
    if end.len() <= 1 {
        return Ok(None);
    }
    let n = m.dims.len();
    for _ in 0..SPLIT_RETRIES {
        let coeffs: Vec<u32> = end.iter().map(|_| rng.gen_range(0..p)).collect();
        let phi: Vec<FpMatrix> = (0..n)
            .map(|v| {
                let mut acc = FpMatrix::zeros(m.dims[v], m.dims[v], p);
                for (c, f) in coeffs.iter().zip(&end) {
                    acc = acc.add_scaled(*c, &f.0[v]);
                }
                acc
            })
            .collect();
        for lambda in 0..p {
            let powers: Vec<FpMatrix> = (0..n)
                .map(|v| {
                    let id = FpMatrix::identity(m.dims[v], p);
                    phi[v].add_scaled(p - lambda, &id).pow(m.dims[v])
                })
                .collect();
            let kernels: Vec<Subspace> = powers
                .iter()
                .zip(&m.dims)
                .map(|(psi, &d)| Subspace::span(d, p, psi.nullspace()))
                .collect();
            let k: usize = kernels.iter().map(Subspace::dim).sum();
            if k == 0 || k == m.total_dim() {
                continue;
            }
            let images: Vec<Subspace> = powers
                .iter()
                .zip(&m.dims)
                .map(|(psi, &d)| Subspace::span(d, p, (0..psi.cols()).map(|j| psi.column(j))))
                .collect();
            return Ok(Some((m.restrict(&kernels), m.restrict(&images))));
        }
    }
    Err(RepError::DecompositionFailure(m.dim_vector()))
}

fn cells<T>(count: usize) -> Vec<OnceLock<T>> {
    (0..count).map(|_| OnceLock::new()).collect()
}

/// One indecomposable per positive root of a Dynkin quiver, indexed like the
/// rows of [`enumerate_preprojectives`]. Pairwise data is computed lazily and
/// memoised.
pub struct Catalogue {
    quiver: Quiver,
    p: u32,
    seed: u64,
    labels: Vec<PreprojIndex>,
    reps: Vec<Rep>,
    by_dim: HashMap<DimVector, usize>,
    homs: Vec<OnceLock<usize>>,
    traces: Vec<OnceLock<Subspace>>,
    cotraces: Vec<OnceLock<Subspace>>,
    ext_summands: Vec<OnceLock<Result<IndecSet, RepError>>>,
}

impl std::fmt::Debug for Catalogue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Catalogue")
            .field("quiver", &self.quiver.to_string())
            .field("p", &self.p)
            .field("size", &self.reps.len())
            .finish()
    }
}

impl Catalogue {
    pub fn new(q: &Quiver, p: u32, seed: u64) -> Result<Self, RepError> {
        if !is_prime(p) {
            return Err(RepError::NotPrime(p));
        }
        if !q.is_dynkin() {
            return Err(RepError::NotDynkin(q.to_string()));
        }
        let table = enumerate_preprojectives(q, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let reps = table
            .rows()
            .iter()
            .map(|(_, d)| build_indecomposable(q, d, p, &mut rng))
            .collect::<Result<Vec<_>, _>>()?;
        let labels = table.rows().iter().map(|(i, _)| *i).collect();
        Ok(Self::from_parts(q.clone(), p, seed, labels, reps))
    }

    fn from_parts(
        quiver: Quiver,
        p: u32,
        seed: u64,
        labels: Vec<PreprojIndex>,
        reps: Vec<Rep>,
    ) -> Self {
        let m = reps.len();
        let by_dim = reps
            .iter()
            .enumerate()
            .map(|(i, r)| (r.dim_vector(), i))
            .collect();
        Self {
            quiver,
            p,
            seed,
            labels,
            reps,
            by_dim,
            homs: cells(m * m),
            traces: cells(m * m),
            cotraces: cells(m * m),
            ext_summands: cells(m * m),
        }
    }

    /// The dual catalogue over the opposite quiver, with the same indexing.
    pub fn dual(&self) -> Catalogue {
        Self::from_parts(
            self.quiver.opposite(),
            self.p,
            self.seed,
            self.labels.clone(),
            self.reps.iter().map(Rep::dual).collect(),
        )
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, i: usize) -> &Rep {
        &self.reps[i]
    }

    pub fn reps(&self) -> &[Rep] {
        &self.reps
    }

    /// The preprojective index of entry `i` (as a module over the original
    /// quiver).
    pub fn label(&self, i: usize) -> PreprojIndex {
        self.labels[i]
    }

    pub fn index_of_label(&self, idx: PreprojIndex) -> Option<usize> {
        self.labels.iter().position(|&l| l == idx)
    }

    pub fn index_of(&self, dim: &DimVector) -> Option<usize> {
        self.by_dim.get(dim).copied()
    }

    pub fn full(&self) -> IndecSet {
        (0..self.len()).collect()
    }

    pub fn complement(&self, s: &IndecSet) -> IndecSet {
        (0..self.len()).filter(|i| !s.contains(i)).collect()
    }

    /// Indices of the given labels; unknown labels are reported as `Err`.
    pub fn indices_of_labels(&self, labels: &[PreprojIndex]) -> Result<IndecSet, PreprojIndex> {
        labels
            .iter()
            .map(|&l| self.index_of_label(l).ok_or(l))
            .collect()
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        *self.homs[x * self.len() + y].get_or_init(|| hom_space(&self.reps[x], &self.reps[y]).len())
    }

    fn trace(&self, x: usize, n: usize) -> &Subspace {
        self.traces[x * self.len() + n].get_or_init(|| trace_subspace(&self.reps[x], &self.reps[n]))
    }

    fn cotrace(&self, n: usize, x: usize) -> &Subspace {
        self.cotraces[n * self.len() + x]
            .get_or_init(|| cotrace_subspace(&self.reps[n], &self.reps[x]))
    }

    /// Whether `N` (entry `n`) is a quotient of an object of `add S`.
    pub fn is_generated(&self, s: &IndecSet, n: usize) -> bool {
        let total = self.reps[n].total_dim();
        let mut acc = Subspace::zero(total, self.p);
        for &x in s {
            acc = acc.sum(self.trace(x, n));
            if acc.dim() == total {
                return true;
            }
        }
        acc.dim() == total
    }

    /// Whether `N` embeds into an object of `add S`.
    pub fn is_cogenerated(&self, s: &IndecSet, n: usize) -> bool {
        let total = self.reps[n].total_dim();
        let mut acc = Subspace::full(total, self.p);
        for &x in s {
            acc = acc.intersection(self.cotrace(n, x));
            if acc.dim() == 0 {
                return true;
            }
        }
        acc.dim() == 0
    }

    /// A summand of a quotient is a quotient, so it suffices that no
    /// indecomposable outside `S` is generated by `S`.
    pub fn is_quotient_closed(&self, s: &IndecSet) -> bool {
        (0..self.len()).all(|n| s.contains(&n) || !self.is_generated(s, n))
    }

    /// Quotient closure of the dual set over the opposite quiver.
    pub fn is_subclosed(&self, s: &IndecSet) -> bool {
        self.dual().is_quotient_closed(s)
    }

    /// Submodule closure tested directly by common kernels.
    pub fn is_subclosed_direct(&self, s: &IndecSet) -> bool {
        (0..self.len()).all(|n| s.contains(&n) || !self.is_cogenerated(s, n))
    }

    /// Indecomposable summands of the middle terms of all extensions of
    /// entry `z` by entry `x`.
    pub fn extension_summands(&self, z: usize, x: usize) -> Result<&IndecSet, RepError> {
        self.ext_summands[z * self.len() + x]
            .get_or_init(|| {
                let mut out = IndecSet::new();
                for e in nonsplit_extensions(&self.reps[z], &self.reps[x])? {
                    out.extend(self.decompose(&e)?);
                }
                Ok(out)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Every extension between two indecomposables of `S` has all its
    /// summands in `S`.
    pub fn is_extension_closed(&self, s: &IndecSet) -> Result<bool, RepError> {
        for &z in s {
            for &x in s {
                if !self.extension_summands(z, x)?.is_subset(s) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_torsion_class(&self, s: &IndecSet) -> Result<bool, RepError> {
        Ok(self.is_quotient_closed(s) && self.is_extension_closed(s)?)
    }

    pub fn is_torsion_free_class(&self, s: &IndecSet) -> Result<bool, RepError> {
        Ok(self.is_subclosed_direct(s) && self.is_extension_closed(s)?)
    }

    /// `{N : Hom(X, N) = 0 for all X in S}`.
    pub fn right_perp(&self, s: &IndecSet) -> IndecSet {
        (0..self.len())
            .filter(|&n| s.iter().all(|&x| self.hom_dim(x, n) == 0))
            .collect()
    }

    /// `{M : Hom(M, Y) = 0 for all Y in S}`.
    pub fn left_perp(&self, s: &IndecSet) -> IndecSet {
        (0..self.len())
            .filter(|&m| s.iter().all(|&y| self.hom_dim(m, y) == 0))
            .collect()
    }

    /// Multiset of catalogue entries, sorted, whose direct sum is isomorphic
    /// to `m`. Deterministic for a fixed catalogue seed.
    pub fn decompose(&self, m: &Rep) -> Result<Vec<usize>, RepError> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 0x9e37_79b9_7f4a_7c15);
        let mut stack = vec![m.clone()];
        let mut out = Vec::new();
        while let Some(r) = stack.pop() {
            if r.total_dim() == 0 {
                continue;
            }
            match split(&r, &mut rng)? {
                Some((a, b)) => {
                    stack.push(a);
                    stack.push(b);
                }
                None => {
                    let dim = r.dim_vector();
                    out.push(self.index_of(&dim).ok_or(RepError::NotARoot(dim))?);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Every quotient-closed subset, by exhaustive search over all subsets.
    pub fn quotient_closed_sets(&self) -> Vec<IndecSet> {
        self.all_subsets()
            .filter(|s| self.is_quotient_closed(s))
            .collect()
    }

    pub fn subclosed_sets(&self) -> Vec<IndecSet> {
        self.all_subsets()
            .filter(|s| self.is_subclosed_direct(s))
            .collect()
    }

    fn all_subsets(&self) -> impl Iterator<Item = IndecSet> + '_ {
        let m = self.len();
        assert!(
            m < 32,
            "exhaustive subset search is limited to small catalogues"
        );
        (0u32..1 << m).map(move |mask| (0..m).filter(|i| mask >> i & 1 == 1).collect())
    }
}
