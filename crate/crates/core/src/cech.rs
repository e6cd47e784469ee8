//! Multigraded pieces of local cohomology `H^i_I(A)` for `A = R/J` with `J`
//! squarefree, presented on the window `{−1, 0, 1}^n`.
//!
//! The Čech complex at a degree `β` only depends on `N = {j : β_j < 0}` and
//! `P = {j : β_j ≥ 1}`, so every piece equals the piece at `clamp(β)` and
//! multiplication by `x_j` is the identity outside the window.
//!
//! Two models of the degree-`β` complex are used:
//!
//! * the literal Čech complex on the minimal generators of `I`, with one spot
//!   per subset of generators (exponential in the number of generators);
//! * for `J = 0`, the augmented cochain complex of the nerve
//!   `K_N = {T ⊆ N : some generator avoids T}`, shifted so that
//!   `H^i_I(R)_β = H̃^{i−2}(K_N)`. Multiplication by `x_j` across
//!   `β_j = −1 → 0` is restriction of cochains from `K_N` to `K_{N∖j}`.
//!
//! The second one is cheap (at most `2^n` faces) and is cross-checked against
//! the first in tests and by sampling.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CohomologyBasis, DenseMatrix, Field, ScalarField, VectorSpaceComplex};
use crate::monomial::{Monomial, MonomialIdeal, PolyRing};
use crate::simplicial::{bits, coboundary, submasks, VertexSet};
use crate::with_field;

/// Largest number of variables for which the `3^n` window is materialized.
pub const MAX_WINDOW_VARS: usize = 12;
/// Largest number of generators for which the literal Čech complex is built.
pub const MAX_LITERAL_GENERATORS: usize = 12;
/// The literal complex is used as the independent side of sampling checks up
/// to this many generators.
pub const LITERAL_CHECK_GENERATORS: usize = 10;

/// `R/J` for a squarefree monomial ideal `J` (possibly zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientQuotient {
    relations: MonomialIdeal,
}

impl AmbientQuotient {
    pub fn new(relations: MonomialIdeal) -> Result<Self> {
        if !relations.is_squarefree() {
            return Err(Error::NotSquarefree("ambient relations"));
        }
        if relations.is_unit() {
            return Err(Error::ImproperIdeal("ambient relations"));
        }
        Ok(AmbientQuotient { relations })
    }

    pub fn polynomial(ring: &Arc<PolyRing>) -> Self {
        AmbientQuotient {
            relations: MonomialIdeal::zero(ring),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.relations.ring()
    }

    pub fn relations(&self) -> &MonomialIdeal {
        &self.relations
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }

    pub fn is_polynomial(&self) -> bool {
        self.relations.is_zero()
    }

    /// Krull dimension of `R/J`.
    pub fn dimension(&self) -> usize {
        self.relations.dimension().expect("relations are proper")
    }

    /// `A/x_v A`, written in the ring without `x_v`.
    pub fn quotient_by_variable(&self, v: usize) -> Result<AmbientQuotient> {
        if v >= self.nvars() {
            return Err(Error::OutOfRange {
                what: "variable",
                detail: format!("{v} not below {}", self.nvars()),
            });
        }
        let ring = self.ring().without_variable(v)?;
        Self::new(self.relations.eliminate_variable(v, &ring)?)
    }

    /// Whether `x^m` is zero in `A`.
    pub fn kills(&self, m: &Monomial) -> bool {
        self.relations.contains(m)
    }
}

/// Window degree for `β`, coordinates clamped to `[−1, 1]`.
pub fn clamp_degree(beta: &[i32]) -> Vec<i32> {
    beta.iter().map(|&b| b.clamp(-1, 1)).collect()
}

/// Base-3 position of `clamp(β)` in the window.
pub fn window_index(beta: &[i32]) -> usize {
    beta.iter()
        .rev()
        .fold(0, |acc, &b| acc * 3 + (b.clamp(-1, 1) + 1) as usize)
}

pub fn window_degree(n: usize, mut index: usize) -> Vec<i32> {
    (0..n)
        .map(|_| {
            let d = (index % 3) as i32 - 1;
            index /= 3;
            d
        })
        .collect()
}

pub fn window_size(n: usize) -> usize {
    3usize.pow(n as u32)
}

pub fn window_degrees(n: usize) -> impl Iterator<Item = Vec<i32>> {
    (0..window_size(n)).map(move |k| window_degree(n, k))
}

/// How the degree-`β` complexes are modeled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Backend {
    /// Nerve model in the polynomial ambient, literal Čech complex otherwise.
    Auto,
    Literal,
}

/// Degree complexes for a fixed `(A, I)`.
#[derive(Debug, Clone)]
struct Engine {
    n: usize,
    /// Supports of the generators of `I` that are nonzero in `A`.
    gens: Vec<VertexSet>,
    relations: Vec<VertexSet>,
    nerve: bool,
}

type Key = u64;

impl Engine {
    fn new(a: &AmbientQuotient, ideal: &MonomialIdeal, backend: Backend) -> Result<Self> {
        if a.ring() != ideal.ring() {
            return Err(Error::ContextMismatch);
        }
        if ideal.is_unit() || ideal.sum(a.relations())?.is_unit() {
            return Err(Error::ImproperIdeal("ideal"));
        }
        let gens: Vec<VertexSet> = ideal
            .gens()
            .iter()
            .filter(|g| !a.kills(g))
            .map(Monomial::support)
            .collect();
        if gens.is_empty() {
            return Err(Error::ZeroIdeal("ideal in the ambient"));
        }
        let relations: Vec<VertexSet> =
            a.relations().gens().iter().map(Monomial::support).collect();
        let nerve = backend == Backend::Auto && relations.is_empty();
        if !nerve && gens.len() > MAX_LITERAL_GENERATORS {
            return Err(Error::TooLarge(format!(
                "Čech complex on {} generators (max {MAX_LITERAL_GENERATORS})",
                gens.len()
            )));
        }
        Ok(Engine {
            n: a.nvars(),
            gens,
            relations,
            nerve,
        })
    }

    fn key(&self, beta: &[i32]) -> Key {
        let mut neg = 0u64;
        let mut pos = 0u64;
        for (j, &b) in beta.iter().enumerate() {
            if b < 0 {
                neg |= 1 << j;
            } else if b >= 1 {
                pos |= 1 << j;
            }
        }
        if self.nerve {
            neg
        } else {
            neg | pos << 32
        }
    }

    fn max_term(&self) -> usize {
        if self.nerve {
            self.n + 1
        } else {
            self.gens.len()
        }
    }

    /// Sorted basis spots of term `t`.
    fn spots(&self, key: Key, t: usize) -> Vec<u32> {
        let neg = (key & 0xffff_ffff) as u32;
        let pos = (key >> 32) as u32;
        if self.nerve {
            if t == 0 || neg == 0 {
                return vec![];
            }
            let mut out: Vec<u32> = submasks(neg)
                .filter(|&s| s.count_ones() as usize == t - 1)
                .filter(|&s| self.gens.iter().any(|&g| g & s == 0))
                .collect();
            out.sort_unstable();
            return out;
        }
        let r = self.gens.len();
        (0u32..1 << r)
            .filter(|s| s.count_ones() as usize == t)
            .filter(|&s| {
                let u = bits(s).fold(0, |acc, k| acc | self.gens[k]);
                neg & !u == 0 && !self.relations.iter().any(|&g| g & !(u | pos) == 0)
            })
            .collect()
    }

    /// The complex restricted to terms `lo..=hi`; lower terms are zero.
    fn complex<F: Field>(
        &self,
        field: &F,
        key: Key,
        lo: usize,
        hi: usize,
    ) -> (VectorSpaceComplex<F>, Vec<Vec<u32>>) {
        let hi = hi.min(self.max_term());
        let spots: Vec<Vec<u32>> = (0..=hi)
            .map(|t| if t < lo { vec![] } else { self.spots(key, t) })
            .collect();
        let dims = spots.iter().map(Vec::len).collect();
        let diffs = spots
            .windows(2)
            .map(|w| coboundary(field, &w[0], &w[1]))
            .collect();
        let c = VectorSpaceComplex::new_unchecked(field, dims, diffs).expect("coboundary shapes");
        (c, spots)
    }

    fn piece<F: Field>(&self, field: &F, key: Key, i: usize) -> Result<Class<F>> {
        if i > self.max_term() {
            return Ok(Class {
                basis: CohomologyBasis::compute(
                    &VectorSpaceComplex::new_unchecked(field, vec![], vec![])?,
                    0,
                )?,
                spots: vec![],
            });
        }
        let (c, mut spots) = self.complex(field, key, i.saturating_sub(1), i + 1);
        Ok(Class {
            basis: CohomologyBasis::compute(&c, i)?,
            spots: std::mem::take(&mut spots[i]),
        })
    }

    fn piece_dim<F: Field>(&self, field: &F, beta: &[i32], i: usize) -> usize {
        if i > self.max_term() {
            return 0;
        }
        let (c, _) = self.complex(field, self.key(beta), i.saturating_sub(1), i + 1);
        c.cohomology_dim(i)
    }

    fn all_dims<F: Field>(&self, field: &F, key: Key) -> Vec<usize> {
        self.complex(field, key, 0, self.max_term())
            .0
            .cohomology_dims()
    }
}

struct Class<F: Field> {
    basis: CohomologyBasis<F>,
    spots: Vec<u32>,
}

/// `1` on spots present on both sides, `0` elsewhere.
fn spot_map<F: Field>(field: &F, from: &[u32], to: &[u32]) -> DenseMatrix<F> {
    let mut m = DenseMatrix::zeros(field, to.len(), from.len());
    for (c, s) in from.iter().enumerate() {
        if let Ok(r) = to.binary_search(s) {
            m.set(r, c, field.one());
        }
    }
    m
}

/// The literal Čech complex of `A` on the minimal generators of `I` in
/// degree `β`.
pub fn cech_complex_at_degree<F: Field>(
    field: &F,
    a: &AmbientQuotient,
    ideal: &MonomialIdeal,
    beta: &[i32],
) -> Result<VectorSpaceComplex<F>> {
    if beta.len() != a.nvars() {
        return Err(Error::OutOfRange {
            what: "degree",
            detail: format!("{} coordinates for {} variables", beta.len(), a.nvars()),
        });
    }
    let e = Engine::new(a, ideal, Backend::Literal)?;
    Ok(e.complex(field, e.key(beta), 0, e.max_term()).0)
}

/// Integer table over the window degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceTable {
    pub nvars: usize,
    /// Indexed by [`window_index`].
    pub dims: Vec<usize>,
}

impl PieceTable {
    pub fn get(&self, beta: &[i32]) -> usize {
        self.dims[window_index(beta)]
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Window degrees with nonzero entries.
    pub fn support(&self) -> Vec<(Vec<i32>, usize)> {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(k, &d)| (window_degree(self.nvars, k), d))
            .collect()
    }
}

/// `H^i_I(A)` as its window pieces and the multiplication maps between them.
#[derive(Clone)]
pub struct WindowedModule<F: Field> {
    field: F,
    ambient: AmbientQuotient,
    ideal: MonomialIdeal,
    index: usize,
    engine: Arc<Engine>,
    /// Window degree to class.
    keys: Vec<usize>,
    classes: Arc<Vec<Class<F>>>,
    /// Induced maps between distinct classes joined by a step.
    maps: Arc<HashMap<(usize, usize), DenseMatrix<F>>>,
    /// Coordinates pinned to `+1` by localization.
    localized: VertexSet,
}

impl<F: Field> std::fmt::Debug for WindowedModule<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WindowedModule")
            .field("ideal", &self.ideal)
            .field("relations", self.ambient.relations())
            .field("index", &self.index)
            .field("localized", &self.localized)
            .field("total", &self.total_dim())
            .finish()
    }
}

pub fn windowed_module<F: Field>(
    field: &F,
    a: &AmbientQuotient,
    ideal: &MonomialIdeal,
    index: usize,
) -> Result<WindowedModule<F>> {
    windowed_module_using(field, a, ideal, index, Backend::Auto)
}

pub fn windowed_module_using<F: Field>(
    field: &F,
    a: &AmbientQuotient,
    ideal: &MonomialIdeal,
    index: usize,
    backend: Backend,
) -> Result<WindowedModule<F>> {
    let n = a.nvars();
    if n > MAX_WINDOW_VARS {
        return Err(Error::TooLarge(format!(
            "window on {n} variables (max {MAX_WINDOW_VARS})"
        )));
    }
    let engine = Arc::new(Engine::new(a, ideal, backend)?);
    let size = window_size(n);

    let mut key_of: HashMap<Key, usize> = HashMap::new();
    let mut distinct: Vec<Key> = Vec::new();
    let keys: Vec<usize> = (0..size)
        .map(|k| {
            let key = engine.key(&window_degree(n, k));
            *key_of.entry(key).or_insert_with(|| {
                distinct.push(key);
                distinct.len() - 1
            })
        })
        .collect();

    let classes: Vec<Class<F>> = distinct
        .par_iter()
        .map(|&key| engine.piece(field, key, index))
        .collect::<Result<_>>()?;

    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    for k in 0..size {
        let beta = window_degree(n, k);
        for j in 0..n {
            if beta[j] < 1 {
                let pair = (keys[k], keys[k + 3usize.pow(j as u32)]);
                if pair.0 != pair.1
                    && classes[pair.0].basis.dim() > 0
                    && classes[pair.1].basis.dim() > 0
                {
                    pairs.insert(pair);
                }
            }
        }
    }
    let mut pairs: Vec<_> = pairs.into_iter().collect();
    pairs.sort_unstable();
    let maps: HashMap<(usize, usize), DenseMatrix<F>> = pairs
        .par_iter()
        .map(|&(s, t)| {
            let chain = spot_map(field, &classes[s].spots, &classes[t].spots);
            ((s, t), classes[s].basis.induced(&classes[t].basis, &chain))
        })
        .collect();

    let module = WindowedModule {
        field: field.clone(),
        ambient: a.clone(),
        ideal: ideal.clone(),
        index,
        engine,
        keys,
        classes: Arc::new(classes),
        maps: Arc::new(maps),
        localized: 0,
    };
    if module.engine.gens.len() <= LITERAL_CHECK_GENERATORS {
        module.check_straightness(4, 0x5eed ^ index as u64)?;
    }
    Ok(module)
}

impl<F: Field> WindowedModule<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> &AmbientQuotient {
        &self.ambient
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    /// Coordinates at which this module has been localized.
    pub fn localized_at(&self) -> VertexSet {
        self.localized
    }

    fn class_at(&self, beta: &[i32]) -> usize {
        self.keys[window_index(beta)]
    }

    /// Dimension of the piece in degree `β` (any integer vector).
    pub fn piece_dim(&self, beta: &[i32]) -> usize {
        self.classes[self.class_at(beta)].basis.dim()
    }

    pub fn piece_table(&self) -> PieceTable {
        PieceTable {
            nvars: self.nvars(),
            dims: self
                .keys
                .iter()
                .map(|&c| self.classes[c].basis.dim())
                .collect(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.keys.iter().map(|&c| self.classes[c].basis.dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.keys.iter().all(|&c| self.classes[c].basis.dim() == 0)
    }

    fn class_map(&self, s: usize, t: usize) -> DenseMatrix<F> {
        let (ds, dt) = (self.classes[s].basis.dim(), self.classes[t].basis.dim());
        if s == t {
            return DenseMatrix::identity(&self.field, ds);
        }
        match self.maps.get(&(s, t)) {
            Some(m) => m.clone(),
            None => DenseMatrix::zeros(&self.field, dt, ds),
        }
    }

    /// Multiplication by `x_j` from degree `β` to `β + e_j`, both clamped.
    pub fn step_map(&self, beta: &[i32], j: usize) -> DenseMatrix<F> {
        let mut next = beta.to_vec();
        next[j] += 1;
        self.class_map(self.class_at(beta), self.class_at(&next))
    }

    /// Multiplication by `x^{v−u}` from degree `u` to `v`, for `u ≤ v`
    /// coordinatewise after clamping.
    pub fn map_between(&self, u: &[i32], v: &[i32]) -> DenseMatrix<F> {
        let mut cur = clamp_degree(u);
        let target = clamp_degree(v);
        let mut m = DenseMatrix::identity(&self.field, self.piece_dim(&cur));
        for j in 0..cur.len() {
            while cur[j] < target[j] {
                m = self.step_map(&cur, j).mul(&m);
                cur[j] += 1;
            }
        }
        m
    }

    /// For `j ≠ l`, the two ways from `β` to `β + e_j + e_l` agree.
    pub fn commuting_squares_hold(&self) -> bool {
        let n = self.nvars();
        (0..window_size(n)).into_par_iter().all(|k| {
            let beta = window_degree(n, k);
            for j in 0..n {
                for l in j + 1..n {
                    if beta[j] == 1 || beta[l] == 1 {
                        continue;
                    }
                    let mut bj = beta.clone();
                    bj[j] += 1;
                    let mut bl = beta.clone();
                    bl[l] += 1;
                    let via_j = self.step_map(&bj, l).mul(&self.step_map(&beta, j));
                    let via_l = self.step_map(&bl, j).mul(&self.step_map(&beta, l));
                    if !via_j.same_entries(&via_l) {
                        return false;
                    }
                }
            }
            true
        })
    }

    /// Piece dimension at an arbitrary degree computed from scratch, with the
    /// literal Čech complex when it is small enough.
    pub fn direct_piece_dim(&self, gamma: &[i32]) -> usize {
        let mut gamma = gamma.to_vec();
        for j in bits(self.localized) {
            gamma[j] = gamma[j].max(1);
        }
        if self.engine.gens.len() <= LITERAL_CHECK_GENERATORS && self.engine.nerve {
            let lit = Engine {
                nerve: false,
                ..(*self.engine).clone()
            };
            return lit.piece_dim(&self.field, &gamma, self.index);
        }
        self.engine.piece_dim(&self.field, &gamma, self.index)
    }

    /// Compares direct piece dimensions at random degrees in `[−4, 4]^n` with
    /// the window pieces.
    pub fn check_straightness(&self, samples: usize, seed: u64) -> Result<()> {
        let n = self.nvars();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let degrees: Vec<Vec<i32>> = (0..samples)
            .map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect())
            .collect();
        let bad = degrees
            .par_iter()
            .find_first(|g| self.direct_piece_dim(g) != self.piece_dim(g));
        match bad {
            Some(g) => Err(Error::WindowViolated(format!(
                "degree {g:?}: direct {} vs window {}",
                self.direct_piece_dim(g),
                self.piece_dim(g)
            ))),
            None => Ok(()),
        }
    }

    /// `N_{x_j}`: each piece replaced by the piece with coordinate `j` at `+1`.
    pub fn localize(&self, j: usize) -> Result<WindowedModule<F>> {
        let n = self.nvars();
        if j >= n {
            return Err(Error::OutOfRange {
                what: "variable",
                detail: format!("{j} not below {n}"),
            });
        }
        let keys = (0..window_size(n))
            .map(|k| {
                let mut beta = window_degree(n, k);
                beta[j] = 1;
                self.keys[window_index(&beta)]
            })
            .collect();
        Ok(WindowedModule {
            keys,
            localized: self.localized | 1 << j,
            ..self.clone()
        })
    }
}

/// `c = max{i : H^i_I(A) ≠ 0}`.
pub fn cohomological_dimension(
    a: &AmbientQuotient,
    ideal: &MonomialIdeal,
    field: ScalarField,
) -> Result<usize> {
    let n = a.nvars();
    let engine = Engine::new(a, ideal, Backend::Auto)?;
    if !engine.nerve && n > MAX_WINDOW_VARS {
        return Err(Error::TooLarge(format!(
            "window on {n} variables (max {MAX_WINDOW_VARS})"
        )));
    }
    let keys: Vec<Key> = if engine.nerve {
        (0..1u64 << n).collect()
    } else {
        let mut ks: Vec<Key> = window_degrees(n).map(|b| engine.key(&b)).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    };
    let top = with_field!(field, |f| {
        keys.par_iter()
            .map(|&k| engine.all_dims(&f, k).iter().rposition(|&d| d > 0))
            .max()
            .flatten()
    });
    top.ok_or_else(|| Error::Invariant(format!("no nonzero local cohomology for {ideal}")))
}

/// Values `b_j ∈ {0,1,2}` (as a bit mask) for which the clamped pair
/// `(u_j, v_j)` arises from some `β_j` with `v_j = clamp(β_j + b_j)`.
fn realizing_exponents(u: i32, v: i32) -> u8 {
    match (u, v) {
        (-1, -1) | (1, 1) => 0b111,
        (0, 0) => 0b001,
        (-1, 0) | (0, 1) => 0b110,
        (-1, 1) => 0b100,
        _ => 0,
    }
}

/// The monomial annihilator `Ann_R N` (it contains the ambient relations).
pub fn annihilator<F: Field>(m: &WindowedModule<F>) -> Result<MonomialIdeal> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let n = m.nvars();
    let ring = m.ambient().ring();
    let size = window_size(n);

    // a nonzero piece with no coordinate at 0 blocks every exponent
    let full = (0..size).any(|k| {
        let beta = window_degree(n, k);
        beta.iter().all(|&b| b != 0) && m.piece_dim(&beta) > 0
    });
    if full {
        return Ok(MonomialIdeal::zero(ring));
    }

    // boxes of blocked exponents, one mask per coordinate
    let boxes: HashSet<Vec<u8>> = (0..size)
        .into_par_iter()
        .filter(|&k| m.classes[m.keys[k]].basis.dim() > 0)
        .flat_map_iter(|k| {
            let u = window_degree(n, k);
            let mut found = Vec::new();
            let start = DenseMatrix::identity(&m.field, m.piece_dim(&u));
            let mut stack = vec![(u.clone(), 0usize, start)];
            while let Some((v, first, map)) = stack.pop() {
                found.push(
                    u.iter()
                        .zip(&v)
                        .map(|(&a, &b)| realizing_exponents(a, b))
                        .collect::<Vec<u8>>(),
                );
                for j in first..n {
                    if v[j] < 1 {
                        let next_map = m.step_map(&v, j).mul(&map);
                        if !next_map.is_zero() {
                            let mut w = v.clone();
                            w[j] += 1;
                            stack.push((w, j, next_map));
                        }
                    }
                }
            }
            found
        })
        .collect();

    let cube = 3usize.pow(n as u32);
    let mut blocked = vec![false; cube];
    for b in &boxes {
        let choices: Vec<Vec<usize>> = b
            .iter()
            .map(|&mask| (0..3).filter(|e| mask >> e & 1 == 1).collect())
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0usize; n];
        loop {
            let pos = (0..n).rev().fold(0, |acc, j| acc * 3 + choices[j][idx[j]]);
            blocked[pos] = true;
            let mut j = 0;
            while j < n {
                idx[j] += 1;
                if idx[j] < choices[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == n {
                break;
            }
        }
    }
    let gens: Vec<Monomial> = (0..cube)
        .filter(|&p| !blocked[p])
        .map(|mut p| {
            Monomial(
                (0..n)
                    .map(|_| {
                        let e = (p % 3) as u32;
                        p /= 3;
                        e
                    })
                    .collect(),
            )
        })
        .collect();
    MonomialIdeal::new(ring, gens)
}

pub fn localize_at_variable<F: Field>(
    m: &WindowedModule<F>,
    j: usize,
) -> Result<WindowedModule<F>> {
    m.localize(j)
}

/// Degreewise kernel and cokernel dimensions of `N → N_{x_j}`.
pub fn h0_h1_principal<F: Field>(
    m: &WindowedModule<F>,
    j: usize,
) -> Result<(PieceTable, PieceTable)> {
    let n = m.nvars();
    if j >= n {
        return Err(Error::OutOfRange {
            what: "variable",
            detail: format!("{j} not below {n}"),
        });
    }
    let (ker, coker): (Vec<usize>, Vec<usize>) = (0..window_size(n))
        .into_par_iter()
        .map(|k| {
            let beta = window_degree(n, k);
            let mut top = beta.clone();
            top[j] = 1;
            let map = m.map_between(&beta, &top);
            let r = map.rank();
            (map.cols() - r, map.rows() - r)
        })
        .unzip();
    Ok((
        PieceTable {
            nvars: n,
            dims: ker,
        },
        PieceTable {
            nvars: n,
            dims: coker,
        },
    ))
}

/// Whether every localization at a variable vanishes.
pub fn supported_only_at_max<F: Field>(m: &WindowedModule<F>) -> bool {
    (0..m.nvars()).all(|j| m.localize(j).map(|l| l.is_zero()).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use proptest::prelude::*;

    const Q: Rationals = Rationals;

    fn ring(names: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(
            names.iter().map(|s| s.to_string()).collect(),
            ScalarField::Rationals,
        )
        .unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, g: &[&str]) -> MonomialIdeal {
        MonomialIdeal::parse(r, g).unwrap()
    }

    fn skew_lines() -> (AmbientQuotient, MonomialIdeal) {
        let r = PolyRing::standard(4, ScalarField::Rationals).unwrap();
        let i = ideal(&r, &["x1", "x3"])
            .intersect(&ideal(&r, &["x2", "x4"]))
            .unwrap();
        (AmbientQuotient::polynomial(&r), i)
    }

    fn singh_walther() -> (AmbientQuotient, MonomialIdeal) {
        let r = ring(&["x", "y", "z", "w"]);
        let a = AmbientQuotient::new(ideal(&r, &["x*y*z", "x*y*w"])).unwrap();
        (a, ideal(&r, &["x", "y"]))
    }

    #[test]
    fn window_indexing_round_trips() {
        for k in 0..window_size(4) {
            assert_eq!(window_index(&window_degree(4, k)), k);
        }
        assert_eq!(window_index(&[-7, 9]), window_index(&[-1, 1]));
    }

    #[test]
    fn literal_complex_examples() {
        let r = ring(&["x", "y"]);
        let poly = AmbientQuotient::polynomial(&r);
        let c = cech_complex_at_degree(&Q, &poly, &ideal(&r, &["x*y"]), &[-1, -1]).unwrap();
        assert_eq!(c.term_dims(), &[0, 1]);
        assert_eq!(c.cohomology_dims(), vec![0, 1]);

        let c = cech_complex_at_degree(&Q, &poly, &ideal(&r, &["x"]), &[0, 0]).unwrap();
        assert_eq!(c.term_dims(), &[1, 1]);
        assert_eq!(c.cohomology_dims(), vec![0, 0]);

        let a = AmbientQuotient::new(ideal(&r, &["x*y"])).unwrap();
        let c = cech_complex_at_degree(&Q, &a, &ideal(&r, &["x"]), &[-1, 0]).unwrap();
        assert_eq!(c.cohomology_dim(1), 1);

        assert!(cech_complex_at_degree(&Q, &poly, &MonomialIdeal::unit(&r), &[0, 0]).is_err());
    }

    #[test]
    fn principal_ideal_module() {
        let r = ring(&["x", "y"]);
        let poly = AmbientQuotient::polynomial(&r);
        let m = windowed_module(&Q, &poly, &ideal(&r, &["x"]), 1).unwrap();
        for beta in window_degrees(2) {
            let want = usize::from(beta[0] == -1 && beta[1] >= 0);
            assert_eq!(m.piece_dim(&beta), want, "{beta:?}");
        }
        let step = m.step_map(&[-1, 0], 1);
        assert_eq!(step.rows(), 1);
        assert_eq!(step.rank(), 1);
        assert!(m.commuting_squares_hold());
    }

    #[test]
    fn skew_lines_top_module() {
        let (a, i) = skew_lines();
        let m = windowed_module(&Q, &a, &i, 3).unwrap();
        assert_eq!(m.piece_table().support(), vec![(vec![-1, -1, -1, -1], 1)]);
        assert!(supported_only_at_max(&m));
        assert_eq!(
            cohomological_dimension(&a, &i, ScalarField::Rationals).unwrap(),
            3
        );
    }

    #[test]
    fn beyond_length_is_zero() {
        let (a, i) = skew_lines();
        assert!(windowed_module(&Q, &a, &i, 5).unwrap().is_zero());
        let (a, i) = singh_walther();
        assert!(windowed_module(&Q, &a, &i, 4).unwrap().is_zero());
    }

    #[test]
    fn cohomological_dimension_examples() {
        let r = ring(&["x", "y", "z", "w"]);
        let poly = AmbientQuotient::polynomial(&r);
        assert_eq!(
            cohomological_dimension(&poly, &ideal(&r, &["x", "y"]), ScalarField::Rationals)
                .unwrap(),
            2
        );
        let (a, i) = singh_walther();
        assert_eq!(
            cohomological_dimension(&a, &i, ScalarField::Rationals).unwrap(),
            2
        );
    }

    #[test]
    fn annihilator_examples() {
        let r = ring(&["x"]);
        let m =
            windowed_module(&Q, &AmbientQuotient::polynomial(&r), &ideal(&r, &["x"]), 1).unwrap();
        assert!(annihilator(&m).unwrap().is_zero());

        let (a, i) = singh_walther();
        let m = windowed_module(&Q, &a, &i, 2).unwrap();
        let rr = a.ring().clone();
        assert_eq!(annihilator(&m).unwrap(), ideal(&rr, &["z", "w"]));

        let r3 = ring(&["x", "y", "w"]);
        let a = AmbientQuotient::new(ideal(&r3, &["x*y*w"])).unwrap();
        let m = windowed_module(&Q, &a, &ideal(&r3, &["x", "y"]), 2).unwrap();
        assert_eq!(annihilator(&m).unwrap(), ideal(&r3, &["w"]));

        let r3 = ring(&["x", "y", "z"]);
        let a = AmbientQuotient::new(ideal(&r3, &["x*y*z"])).unwrap();
        let m = windowed_module(&Q, &a, &ideal(&r3, &["x"]), 1).unwrap();
        assert_eq!(annihilator(&m).unwrap(), ideal(&r3, &["y*z"]));

        let zero =
            windowed_module(&Q, &AmbientQuotient::polynomial(&r), &ideal(&r, &["x"]), 0).unwrap();
        assert_eq!(annihilator(&zero), Err(Error::ZeroModule));
    }

    #[test]
    fn localization_examples() {
        let r = ring(&["x", "y"]);
        let m =
            windowed_module(&Q, &AmbientQuotient::polynomial(&r), &ideal(&r, &["x"]), 1).unwrap();
        let l = localize_at_variable(&m, 1).unwrap();
        assert_eq!(l.piece_table().total(), 3);
        let (h0, h1) = h0_h1_principal(&m, 1).unwrap();
        // y is injective on N but not surjective: N_y has y-degree −1 pieces
        assert!(h0.is_zero());
        assert_eq!(h1.support(), vec![(vec![-1, -1], 1)]);
        assert!(!supported_only_at_max(&m));

        // coker(H² → H²_z) against H³ of the maximal ideal
        let r3 = ring(&["x", "y", "z"]);
        let poly = AmbientQuotient::polynomial(&r3);
        let m = windowed_module(&Q, &poly, &ideal(&r3, &["x", "y"]), 2).unwrap();
        let (_, h1) = h0_h1_principal(&m, 2).unwrap();
        let top = windowed_module(&Q, &poly, &MonomialIdeal::maximal(&r3), 3).unwrap();
        assert_eq!(h1, top.piece_table());
        assert_eq!(h1.support(), vec![(vec![-1, -1, -1], 1)]);

        let zero = windowed_module(&Q, &poly, &MonomialIdeal::maximal(&r3), 0).unwrap();
        let (h0, h1) = h0_h1_principal(&zero, 0).unwrap();
        assert!(h0.is_zero() && h1.is_zero());
        assert!(supported_only_at_max(&zero));
    }

    #[test]
    fn literal_and_nerve_agree_on_skew_lines() {
        let (a, i) = skew_lines();
        for k in 0..=4 {
            let nerve = windowed_module(&Q, &a, &i, k).unwrap();
            let lit = windowed_module_using(&Q, &a, &i, k, Backend::Literal).unwrap();
            assert_same_module(&nerve, &lit);
        }
    }

    /// Same pieces and same ranks of every composite map.
    fn assert_same_module<F: Field>(x: &WindowedModule<F>, y: &WindowedModule<F>) {
        let n = x.nvars();
        assert_eq!(x.piece_table(), y.piece_table());
        for ku in 0..window_size(n) {
            let u = window_degree(n, ku);
            if x.piece_dim(&u) == 0 {
                continue;
            }
            for kv in 0..window_size(n) {
                let v = window_degree(n, kv);
                if u.iter().zip(&v).all(|(a, b)| a <= b) {
                    assert_eq!(
                        x.map_between(&u, &v).rank(),
                        y.map_between(&u, &v).rank(),
                        "{u:?} -> {v:?}"
                    );
                }
            }
        }
    }

    /// Verdict for `x^b` straight from the definition over degrees in a box.
    fn kills_by_brute_force<F: Field>(m: &WindowedModule<F>, b: &[u32]) -> bool {
        let n = m.nvars();
        let mut beta = vec![-4i32; n];
        loop {
            let target: Vec<i32> = beta.iter().zip(b).map(|(&x, &e)| x + e as i32).collect();
            if !m.map_between(&beta, &target).is_zero() {
                return false;
            }
            let mut j = 0;
            while j < n {
                beta[j] += 1;
                if beta[j] <= 4 {
                    break;
                }
                beta[j] = -4;
                j += 1;
            }
            if j == n {
                return true;
            }
        }
    }

    #[test]
    fn annihilator_matches_definition_and_stabilizes() {
        let (a, i) = singh_walther();
        let m = windowed_module(&Q, &a, &i, 2).unwrap();
        let ann = annihilator(&m).unwrap();
        let mut b = vec![0u32; 4];
        loop {
            let mono = Monomial(b.clone());
            assert_eq!(ann.contains(&mono), kills_by_brute_force(&m, &b), "{b:?}");
            let mut j = 0;
            while j < 4 {
                b[j] += 1;
                if b[j] <= 3 {
                    break;
                }
                b[j] = 0;
                j += 1;
            }
            if j == 4 {
                break;
            }
        }
    }

    #[test]
    fn prime_field_module() {
        let f = PrimeField::new(2).unwrap();
        let (a, i) = skew_lines();
        let m = windowed_module(&f, &a, &i, 2).unwrap();
        let q = windowed_module(&Q, &a, &i, 2).unwrap();
        assert_eq!(m.piece_table(), q.piece_table());
    }

    #[test]
    fn ambient_validation() {
        let r = ring(&["x", "y"]);
        assert!(AmbientQuotient::new(ideal(&r, &["x^2"])).is_err());
        assert!(AmbientQuotient::new(MonomialIdeal::unit(&r)).is_err());
        let a = AmbientQuotient::new(ideal(&r, &["x*y"])).unwrap();
        assert_eq!(a.dimension(), 1);
        let b = a.quotient_by_variable(0).unwrap();
        assert!(b.is_polynomial());
        assert_eq!(b.nvars(), 1);
        // x*y vanishes in the ambient
        assert!(windowed_module(&Q, &a, &ideal(&r, &["x*y"]), 1).is_err());
    }

    fn arb_squarefree() -> impl Strategy<Value = (AmbientQuotient, MonomialIdeal)> {
        (2usize..=4).prop_flat_map(|n| {
            prop::collection::vec(1u32..(1 << n), 1..=5).prop_map(move |sets| {
                let r = PolyRing::standard(n, ScalarField::Rationals).unwrap();
                let gens = sets.iter().map(|&s| Monomial::from_support(n, s)).collect();
                (
                    AmbientQuotient::polynomial(&r),
                    MonomialIdeal::new(&r, gens).unwrap(),
                )
            })
        })
    }

    fn arb_quotient() -> impl Strategy<Value = (AmbientQuotient, MonomialIdeal)> {
        (3usize..=4).prop_flat_map(|n| {
            (
                prop::collection::vec(1u32..(1 << n), 1..=3),
                prop::collection::vec(1u32..(1 << n), 1..=3),
            )
                .prop_filter_map("proper and nonzero", move |(js, is)| {
                    let r = PolyRing::standard(n, ScalarField::Rationals).unwrap();
                    let j = MonomialIdeal::new(
                        &r,
                        js.iter().map(|&s| Monomial::from_support(n, s)).collect(),
                    )
                    .ok()?;
                    let i = MonomialIdeal::new(
                        &r,
                        is.iter().map(|&s| Monomial::from_support(n, s)).collect(),
                    )
                    .ok()?;
                    let a = AmbientQuotient::new(j).ok()?;
                    Engine::new(&a, &i, Backend::Auto).ok()?;
                    Some((a, i))
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn nerve_model_matches_literal_complex((a, i) in arb_squarefree(), k in 0usize..=4) {
            let nerve = windowed_module(&Q, &a, &i, k).unwrap();
            let lit = windowed_module_using(&Q, &a, &i, k, Backend::Literal).unwrap();
            assert_same_module(&nerve, &lit);
        }

        #[test]
        fn quotient_modules_are_consistent((a, i) in arb_quotient(), k in 0usize..=3) {
            let m = windowed_module(&Q, &a, &i, k).unwrap();
            prop_assert!(m.commuting_squares_hold());
            m.check_straightness(12, 7).unwrap();
            let bound = 1usize << m.engine.gens.len();
            for beta in window_degrees(a.nvars()) {
                prop_assert!(m.piece_dim(&beta) <= bound);
                let direct = cech_complex_at_degree(&Q, &a, &i, &beta).unwrap().cohomology_dim(k);
                prop_assert_eq!(direct, m.piece_dim(&beta));
            }
            if !m.is_zero() {
                let ann = annihilator(&m).unwrap();
                prop_assert!(ann.contains_ideal(a.relations()));
                for g in ann.gens() {
                    let b: Vec<u32> = g.exps().to_vec();
                    prop_assert!(kills_by_brute_force(&m, &b));
                }
            }
        }

        #[test]
        fn cd_matches_top_nonzero_module((a, i) in arb_squarefree()) {
            let c = cohomological_dimension(&a, &i, ScalarField::Rationals).unwrap();
            prop_assert!(!windowed_module(&Q, &a, &i, c).unwrap().is_zero());
            for k in c + 1..=a.nvars() {
                prop_assert!(windowed_module(&Q, &a, &i, k).unwrap().is_zero());
            }
        }
    }
}
