//! Simplicial complexes on a vertex set `{0, …, n-1}`, stored by facets as
//! bitmasks.
//!
//! The void complex (no faces) and the irrelevant complex (only the empty
//! face) are different values: `I_void = (1)` and `I_irrelevant = m`.
//! Dimensions follow the usual convention `dim ∅ = −1`, and the irrelevant
//! complex has `H̃^{-1} = k`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Field, ScalarField, VectorSpaceComplex};
use crate::with_field;

/// Subsets of the vertex set, one bit per vertex.
pub type VertexSet = u32;

pub const MAX_VERTICES: usize = 24;

pub(crate) fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// All submasks of `mask`, including `0` and `mask` itself.
pub(crate) fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & mask)
        };
        Some(cur)
    })
}

fn size(mask: u32) -> usize {
    mask.count_ones() as usize
}

/// Sign of inserting vertex `v` into the ordered face `face` (which must not
/// contain `v`): `(−1)^{#vertices of face below v}`.
pub(crate) fn insertion_sign(face: u32, v: usize) -> i64 {
    if (face & ((1u32 << v) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.facets.is_empty() {
            return write!(f, "<void on {}>", self.n);
        }
        write!(f, "<")?;
        for (i, &face) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let vs: Vec<String> = bits(face).map(|v| v.to_string()).collect();
            write!(f, "{{{}}}", vs.join(","))?;
        }
        write!(f, ">")
    }
}

impl SimplicialComplex {
    /// Complex generated by the given faces; non-maximal ones are dropped.
    pub fn new(n: usize, faces: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge(format!(
                "{n} vertices (max {MAX_VERTICES})"
            )));
        }
        let universe = Self::universe_mask(n);
        let faces: BTreeSet<VertexSet> = faces.into_iter().collect();
        if let Some(bad) = faces.iter().find(|&&f| f & !universe != 0) {
            return Err(Error::OutOfRange {
                what: "face",
                detail: format!("{bad:#b} uses a vertex outside 0..{n}"),
            });
        }
        Ok(SimplicialComplex {
            n,
            facets: maximal_sets(faces),
        })
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![] }
    }

    pub fn irrelevant(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![0] }
    }

    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![Self::universe_mask(n)],
        }
    }

    fn universe_mask(n: usize) -> u32 {
        if n == 32 {
            u32::MAX
        } else {
            (1u32 << n) - 1
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, face: VertexSet) -> bool {
        self.facets.iter().any(|&f| face & !f == 0)
    }

    /// All faces, sorted by size and then by mask.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut all: Vec<VertexSet> = self
            .facets
            .iter()
            .flat_map(|&f| submasks(f))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        all.sort_by_key(|&f| (size(f), f));
        all
    }

    /// Vertices that are faces.
    pub fn vertices(&self) -> VertexSet {
        self.facets.iter().fold(0, |acc, f| acc | f)
    }

    /// `None` for the void complex, `-1` for the irrelevant complex.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|&f| size(f) as i32 - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        let mut dims = self.facets.iter().map(|&f| size(f));
        match dims.next() {
            None => true,
            Some(d) => dims.all(|e| e == d),
        }
    }

    pub fn link(&self, sigma: VertexSet) -> Result<Self> {
        if !self.contains(sigma) {
            return Err(Error::NotAFace(format!("{sigma:#b}")));
        }
        let faces = self
            .facets
            .iter()
            .filter(|&&f| sigma & !f == 0)
            .map(|&f| f & !sigma);
        Self::new(self.n, faces)
    }

    /// Restriction to the faces contained in `sigma`.
    pub fn induced(&self, sigma: VertexSet) -> Self {
        if self.is_void() {
            return self.clone();
        }
        let faces: Vec<_> = self.facets.iter().map(|&f| f & sigma).collect();
        Self::new(self.n, faces).expect("restriction stays in range")
    }

    /// Subcomplex generated by the faces of dimension exactly `i`.
    pub fn pure_skeleton(&self, i: i32) -> Result<Self> {
        let dim = self.dim().ok_or_else(|| Error::OutOfRange {
            what: "skeleton dimension",
            detail: "void complex has no skeleta".into(),
        })?;
        if i < -1 || i > dim {
            return Err(Error::OutOfRange {
                what: "skeleton dimension",
                detail: format!("{i} not in [-1, {dim}]"),
            });
        }
        let k = (i + 1) as usize;
        let faces: Vec<_> = self.faces().into_iter().filter(|&f| size(f) == k).collect();
        Self::new(self.n, faces)
    }

    /// `{σ : V∖σ ∉ Δ}`.
    pub fn alexander_dual(&self) -> Self {
        let universe = Self::universe_mask(self.n);
        let faces = (0..=universe).filter(|&s| !self.contains(universe & !s));
        Self::new(self.n, faces).expect("dual stays in range")
    }

    /// Number of connected components (0 for the void and irrelevant complexes).
    pub fn components(&self) -> usize {
        let verts: Vec<usize> = bits(self.vertices()).collect();
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &f in &self.facets {
            let mut it = bits(f);
            if let Some(first) = it.next() {
                for v in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                    parent[a] = b;
                }
            }
        }
        verts
            .iter()
            .map(|&v| find(&mut parent, v))
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Augmented cochain complex; term `t` is spanned by the faces with `t`
    /// vertices, so `H̃^j` sits at term `j + 1`.
    pub fn reduced_cochain_complex<F: Field>(&self, field: &F) -> VectorSpaceComplex<F> {
        let faces = self.faces();
        let top = faces.last().map_or(0, |&f| size(f) + 1);
        let mut by_size: Vec<Vec<VertexSet>> = vec![Vec::new(); top];
        for f in faces {
            by_size[size(f)].push(f);
        }
        let dims: Vec<usize> = by_size.iter().map(Vec::len).collect();
        let diffs = (0..top.saturating_sub(1))
            .map(|t| coboundary(field, &by_size[t], &by_size[t + 1]))
            .collect();
        VectorSpaceComplex::new_unchecked(field, dims, diffs).expect("coboundary shapes")
    }

    /// Reduced cohomology dimensions indexed by `j + 1` for `j ≥ −1`.
    pub fn reduced_cohomology_dims<F: Field>(&self, field: &F) -> Vec<usize> {
        self.reduced_cochain_complex(field).cohomology_dims()
    }

    pub fn reduced_cohomology_dim(&self, j: i32, field: ScalarField) -> usize {
        if j < -1 {
            return 0;
        }
        with_field!(field, |f| {
            self.reduced_cohomology_dims(&f)
                .get((j + 1) as usize)
                .copied()
                .unwrap_or(0)
        })
    }

    /// Reisner's criterion: every link has cohomology only in top degree.
    pub fn is_cm(&self, field: ScalarField) -> bool {
        with_field!(field, |f| self.is_cm_over(&f))
    }

    pub fn is_cm_over<F: Field>(&self, field: &F) -> bool {
        self.faces().par_iter().all(|&sigma| {
            let link = self.link(sigma).expect("face of self");
            let Some(d) = link.dim() else { return true };
            let h = link.reduced_cohomology_dims(field);
            // H̃^j for j < d lives at indices 0..=d
            h.iter().take((d + 1) as usize).all(|&x| x == 0)
        })
    }
}

fn maximal_sets(faces: BTreeSet<VertexSet>) -> Vec<VertexSet> {
    let mut by_size: Vec<VertexSet> = faces.into_iter().collect();
    by_size.sort_by_key(|&f| std::cmp::Reverse(size(f)));
    let mut kept: Vec<VertexSet> = Vec::new();
    for f in by_size {
        if !kept.iter().any(|&g| f & !g == 0) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

/// Matrix of δ from faces `lower` (size t) to faces `upper` (size t + 1).
pub(crate) fn coboundary<F: Field>(
    field: &F,
    lower: &[VertexSet],
    upper: &[VertexSet],
) -> DenseMatrix<F> {
    let mut m = DenseMatrix::zeros(field, upper.len(), lower.len());
    for (r, &tau) in upper.iter().enumerate() {
        for v in bits(tau) {
            let sigma = tau & !(1 << v);
            if let Ok(c) = lower.binary_search(&sigma) {
                m.set(r, c, field.from_i64(insertion_sign(sigma, v)));
            }
        }
    }
    m
}
