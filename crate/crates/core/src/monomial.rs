//! Monomial ideals in a polynomial ring `k[x_1, …, x_n]`.
//!
//! Ideals are kept by their minimal generators. The unit ideal is the single
//! generator `1`, the zero ideal has no generators. Primes are monomial primes
//! and are passed around as variable sets.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ScalarField;
use crate::simplicial::{bits, SimplicialComplex, VertexSet};

pub const MAX_VARIABLES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    names: Vec<String>,
    field: ScalarField,
}

impl PolyRing {
    pub fn new(names: Vec<String>, field: ScalarField) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::InvalidRing(
                "at least one variable is required".into(),
            ));
        }
        if names.len() > MAX_VARIABLES {
            return Err(Error::TooLarge(format!(
                "{} variables (max {MAX_VARIABLES})",
                names.len()
            )));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || !a.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::InvalidRing(format!("bad variable name `{a}`")));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidRing(format!("duplicate variable `{a}`")));
            }
        }
        if let ScalarField::Prime(p) = field {
            ScalarField::prime(p)?;
        }
        Ok(Arc::new(PolyRing { names, field }))
    }

    /// Ring with variables `x1, …, xn`.
    pub fn standard(n: usize, field: ScalarField) -> Result<Arc<Self>> {
        Self::new((1..=n).map(|i| format!("x{i}")).collect(), field)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The same ring over another coefficient field.
    pub fn with_field(&self, field: ScalarField) -> Arc<Self> {
        Arc::new(PolyRing {
            names: self.names.clone(),
            field,
        })
    }

    /// The ring with variable `v` removed.
    pub fn without_variable(&self, v: usize) -> Result<Arc<Self>> {
        let mut names = self.names.clone();
        names.remove(v);
        Self::new(names, self.field)
    }

    pub fn all_variables(&self) -> VertexSet {
        (1u32 << self.nvars()) - 1
    }
}

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn power(n: usize, i: usize, k: u32) -> Self {
        let mut e = vec![0; n];
        e[i] = k;
        Monomial(e)
    }

    /// Squarefree monomial on a variable set.
    pub fn from_support(n: usize, s: VertexSet) -> Self {
        Monomial((0..n).map(|i| s >> i & 1).collect())
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> VertexSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, saturating at zero.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    /// Drop coordinate `v`.
    pub fn without_variable(&self, v: usize) -> Monomial {
        let mut e = self.0.clone();
        e.remove(v);
        Monomial(e)
    }

    pub fn parse(s: &str, ring: &PolyRing) -> Result<Self> {
        let n = ring.nvars();
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        let mut e = vec![0u32; n];
        if s == "1" {
            return Ok(Monomial(e));
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, pow) = match factor.split_once('^') {
                Some((a, b)) => {
                    let k: u32 = b
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    (a.trim(), k)
                }
                None => (factor, 1),
            };
            if name.is_empty() {
                return Err(Error::Parse(format!("missing variable in `{s}`")));
            }
            let i = ring
                .var_index(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            e[i] += pow;
        }
        Ok(Monomial(e))
    }

    pub fn display<'a>(&'a self, ring: &'a PolyRing) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, ring }
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    ring: &'a PolyRing,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.ring.names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: Arc<PolyRing>,
    gens: Vec<Monomial>,
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g.display(&self.ring))?;
        }
        if self.gens.is_empty() {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

/// Minimal elements under divisibility, deduplicated, in canonical order.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl MonomialIdeal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Monomial>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.nvars() != ring.nvars()) {
            return Err(Error::InvalidRing(format!(
                "exponent vector of length {} in a ring with {} variables",
                g.nvars(),
                ring.nvars()
            )));
        }
        Ok(MonomialIdeal {
            ring: ring.clone(),
            gens: minimalize(gens),
        })
    }

    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| Monomial::parse(s, ring))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            gens: vec![],
        }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            gens: vec![Monomial::one(ring.nvars())],
        }
    }

    /// The monomial prime generated by the variables in `vars`.
    pub fn prime(ring: &Arc<PolyRing>, vars: VertexSet) -> Self {
        let n = ring.nvars();
        Self::new(ring, bits(vars).map(|i| Monomial::var(n, i)).collect())
            .expect("variables in range")
    }

    pub fn maximal(ring: &Arc<PolyRing>) -> Self {
        Self::prime(ring, ring.all_variables())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Union of the supports of the generators.
    pub fn support(&self) -> VertexSet {
        self.gens.iter().fold(0, |m, g| m | g.support())
    }

    fn same_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Self::new(&self.ring, gens)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b)))
            .collect();
        Self::new(&self.ring, gens)
    }

    pub fn intersect_all<'a>(
        ring: &Arc<PolyRing>,
        ideals: impl IntoIterator<Item = &'a MonomialIdeal>,
    ) -> Result<MonomialIdeal> {
        ideals
            .into_iter()
            .try_fold(Self::unit(ring), |acc, i| acc.intersect(i))
    }

    /// `(self : other)`, the intersection of the colons by each generator of `other`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let mut acc = Self::unit(&self.ring);
        for g in &other.gens {
            let by_g = Self::new(
                &self.ring,
                self.gens.iter().map(|m| m.quotient(g)).collect(),
            )?;
            acc = acc.intersect(&by_g)?;
        }
        Ok(acc)
    }

    pub fn add_variable(&self, v: usize) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.push(Monomial::var(self.nvars(), v));
        Self::new(&self.ring, gens).expect("same ring")
    }

    /// Image in `R/(x_v)`, written in the ring without `x_v`.
    pub fn eliminate_variable(&self, v: usize, target: &Arc<PolyRing>) -> Result<MonomialIdeal> {
        let gens = self
            .gens
            .iter()
            .filter(|g| g.0[v] == 0)
            .map(|g| g.without_variable(v))
            .collect();
        Self::new(target, gens)
    }

    /// The same generators in another ring with the same number of variables.
    pub fn change_ring(&self, ring: &Arc<PolyRing>) -> Result<MonomialIdeal> {
        Self::new(ring, self.gens.clone())
    }

    /// Inclusion-minimal variable sets meeting every generator's support.
    pub fn minimal_primes(&self) -> Result<Vec<VertexSet>> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal("ideal"));
        }
        if self.is_unit() {
            return Err(Error::ImproperIdeal("ideal"));
        }
        Ok(minimal_covers(
            &self.gens.iter().map(Monomial::support).collect::<Vec<_>>(),
            self.support(),
        ))
    }

    /// Krull dimension of `R/I`.
    pub fn dimension(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::ImproperIdeal("ideal"));
        }
        if self.is_zero() {
            return Ok(self.nvars());
        }
        Ok(self.nvars() - self.height()?)
    }

    pub fn height(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::ImproperIdeal("ideal"));
        }
        if self.is_zero() {
            return Ok(0);
        }
        Ok(self
            .minimal_primes()?
            .iter()
            .map(|p| p.count_ones() as usize)
            .min()
            .expect("a proper nonzero ideal has a minimal prime"))
    }

    /// Irredundant decomposition into ideals generated by pure powers of variables.
    pub fn irreducible_decomposition(&self) -> Result<Vec<MonomialIdeal>> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal("ideal"));
        }
        if self.is_unit() {
            return Err(Error::ImproperIdeal("ideal"));
        }
        let mut out: Vec<Vec<Monomial>> = Vec::new();
        split_irreducible(self.gens.clone(), &mut out);
        let mut comps: Vec<MonomialIdeal> = out
            .into_iter()
            .map(|g| Self::new(&self.ring, g).expect("same ring"))
            .collect();
        comps.sort_by(|a, b| a.gens.cmp(&b.gens));
        comps.dedup();
        // a component containing another one is redundant
        let snapshot = comps.clone();
        comps.retain(|c| !snapshot.iter().any(|d| d != c && c.contains_ideal(d)));
        // drop anything still redundant, last first
        let mut i = comps.len();
        while i > 0 {
            i -= 1;
            let others: Vec<&MonomialIdeal> = comps
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, c)| c)
                .collect();
            if !others.is_empty()
                && comps[i].contains_ideal(&Self::intersect_all(&self.ring, others)?)
            {
                comps.remove(i);
            }
        }
        Ok(comps)
    }

    /// Primary decomposition obtained by merging irreducible components with
    /// equal radicals.
    pub fn primary_decomposition(&self) -> Result<Vec<PrimaryComponent>> {
        let mut groups: BTreeMap<VertexSet, MonomialIdeal> = BTreeMap::new();
        for c in self.irreducible_decomposition()? {
            let rad = c.support();
            let merged = match groups.remove(&rad) {
                Some(prev) => prev.intersect(&c)?,
                None => c,
            };
            groups.insert(rad, merged);
        }
        let n = self.nvars();
        let mut comps: Vec<PrimaryComponent> = groups
            .into_iter()
            .map(|(radical, ideal)| PrimaryComponent {
                ideal,
                radical,
                dimension: n - radical.count_ones() as usize,
            })
            .collect();
        comps.sort_by(|a, b| {
            b.dimension
                .cmp(&a.dimension)
                .then(a.radical.cmp(&b.radical))
        });
        Ok(comps)
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree("ideal"));
        }
        let n = self.nvars();
        if self.is_unit() {
            return Ok(SimplicialComplex::void(n));
        }
        let supports: Vec<VertexSet> = self.gens.iter().map(Monomial::support).collect();
        let faces =
            (0..=self.ring.all_variables()).filter(|&s| !supports.iter().any(|&g| g & !s == 0));
        SimplicialComplex::new(n, faces)
    }

    /// Stanley–Reisner ideal of `delta`: one generator per minimal non-face.
    pub fn stanley_reisner(ring: &Arc<PolyRing>, delta: &SimplicialComplex) -> Result<Self> {
        let n = ring.nvars();
        if delta.vertex_count() != n {
            return Err(Error::ContextMismatch);
        }
        let gens = (0..=ring.all_variables())
            .filter(|&s| !delta.contains(s) && bits(s).all(|v| delta.contains(s & !(1 << v))))
            .map(|s| Monomial::from_support(n, s))
            .collect();
        Self::new(ring, gens)
    }
}

fn split_irreducible(gens: Vec<Monomial>, out: &mut Vec<Vec<Monomial>>) {
    let gens = minimalize(gens);
    let Some(pos) = gens.iter().position(|g| g.support().count_ones() >= 2) else {
        out.push(gens);
        return;
    };
    let m = &gens[pos];
    let j = m.support().trailing_zeros() as usize;
    let power = Monomial::power(m.nvars(), j, m.0[j]);
    let rest = m.quotient(&power);
    let mut left: Vec<Monomial> = gens.clone();
    left[pos] = power;
    let mut right = gens;
    right[pos] = rest;
    split_irreducible(left, out);
    split_irreducible(right, out);
}

/// Minimal transversals of a family of nonempty sets inside `universe`.
pub(crate) fn minimal_covers(sets: &[VertexSet], universe: VertexSet) -> Vec<VertexSet> {
    let mut candidates: Vec<VertexSet> = crate::simplicial::submasks(universe).collect();
    candidates.sort_by_key(|&c| (c.count_ones(), c));
    let mut found: Vec<VertexSet> = Vec::new();
    for c in candidates {
        if sets.iter().all(|&s| s & c != 0) && !found.iter().any(|&f| f & !c == 0) {
            found.push(c);
        }
    }
    found
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub ideal: MonomialIdeal,
    pub radical: VertexSet,
    /// `dim R/radical`
    pub dimension: usize,
}

/// Variables allowed in monomials of `Σ(I)` for `I` viewed in `R/J`: those
/// outside every minimal prime of `I + J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaSet {
    pub allowed: VertexSet,
}

impl SigmaSet {
    /// Whether a monomial (nonzero in `R/J`, not a unit) avoids every minimal prime.
    pub fn contains(&self, m: &Monomial) -> bool {
        !m.is_one() && m.support() & !self.allowed == 0
    }
}

pub fn sigma_set(ideal: &MonomialIdeal, ambient: &MonomialIdeal) -> Result<SigmaSet> {
    let total = ideal.sum(ambient)?;
    if total.is_unit() {
        return Err(Error::ImproperIdeal("I + J"));
    }
    if total.is_zero() {
        return Err(Error::ZeroIdeal("I + J"));
    }
    let covered = total.minimal_primes()?.iter().fold(0, |a, p| a | p);
    Ok(SigmaSet {
        allowed: ideal.ring().all_variables() & !covered,
    })
}

/// `Q_I(R/J)`: the intersection of the top-dimensional primary components
/// `Q` of `J` whose prime `P` has `dim R/(I + P) = 0`, as an ideal containing
/// `J`. The unit ideal stands for "no component qualifies" (`Q_I(M) = M`).
pub fn q_ideal(ideal: &MonomialIdeal, module: &MonomialIdeal) -> Result<MonomialIdeal> {
    ideal.same_ring(module)?;
    if module.is_unit() {
        return Err(Error::ImproperIdeal("module ideal"));
    }
    if ideal.is_unit() {
        return Err(Error::ImproperIdeal("ideal"));
    }
    let ring = ideal.ring();
    if module.is_zero() {
        return Ok(if ideal.dimension()? == 0 {
            MonomialIdeal::zero(ring)
        } else {
            MonomialIdeal::unit(ring)
        });
    }
    let comps = module.primary_decomposition()?;
    let top = module.dimension()?;
    let mut chosen = Vec::new();
    for c in &comps {
        if c.dimension != top {
            continue;
        }
        let with_prime = ideal.sum(&MonomialIdeal::prime(ring, c.radical))?;
        if with_prime.dimension()? == 0 {
            chosen.push(&c.ideal);
        }
    }
    MonomialIdeal::intersect_all(ring, chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

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

    fn xyzw() -> Arc<PolyRing> {
        ring(&["x", "y", "z", "w"])
    }

    #[test]
    fn parse_and_display() {
        let r = PolyRing::standard(5, ScalarField::Rationals).unwrap();
        let m = Monomial::parse("x1^2*x4*x5", &r).unwrap();
        assert_eq!(m.exps(), &[2, 0, 0, 1, 1]);
        assert_eq!(m.display(&r).to_string(), "x1^2*x4*x5");
        assert_eq!(
            Monomial::parse("x6", &r),
            Err(Error::UnknownVariable("x6".into()))
        );
        assert!(Monomial::parse("x1^", &r).is_err());
        assert_eq!(Monomial::parse("1", &r).unwrap(), Monomial::one(5));
    }

    #[test]
    fn ring_validation() {
        assert!(PolyRing::new(vec![], ScalarField::Rationals).is_err());
        assert!(PolyRing::new(vec!["x".into(), "x".into()], ScalarField::Rationals).is_err());
        assert!(PolyRing::new(vec!["x".into()], ScalarField::Prime(4)).is_err());
    }

    #[test]
    fn generators_are_minimal() {
        let r = xyzw();
        let i = ideal(&r, &["x*y", "x", "x*y*z", "y^2"]);
        assert_eq!(i.to_string(), "(x, y^2)");
        assert!(MonomialIdeal::unit(&r).is_unit());
        assert!(MonomialIdeal::zero(&r).is_zero());
    }

    #[test]
    fn intersect_sum_colon() {
        let r = xyzw();
        let x = ideal(&r, &["x"]);
        let yz = ideal(&r, &["y", "z"]);
        assert_eq!(x.intersect(&yz).unwrap(), ideal(&r, &["x*y", "x*z"]));

        let sw = ideal(&r, &["x"])
            .intersect(&ideal(&r, &["y"]))
            .unwrap()
            .intersect(&ideal(&r, &["z", "w"]))
            .unwrap();
        assert_eq!(sw, ideal(&r, &["x*y*z", "x*y*w"]));

        let c = ideal(&r, &["x^2*y"]).colon(&ideal(&r, &["x"])).unwrap();
        assert_eq!(c, ideal(&r, &["x*y"]));
        assert_eq!(x.sum(&yz).unwrap(), ideal(&r, &["x", "y", "z"]));

        let other = PolyRing::standard(4, ScalarField::Rationals).unwrap();
        assert_eq!(
            x.sum(&MonomialIdeal::zero(&other)),
            Err(Error::ContextMismatch)
        );
    }

    #[test]
    fn minimal_primes_examples() {
        let r = xyzw();
        let bits = |s: &[usize]| s.iter().fold(0u32, |m, &i| m | 1 << i);
        assert_eq!(
            ideal(&r, &["x*y", "x*z"]).minimal_primes().unwrap(),
            vec![bits(&[0]), bits(&[1, 2])]
        );
        assert_eq!(
            ideal(&r, &["x*y*z", "x*y*w"]).minimal_primes().unwrap(),
            vec![bits(&[0]), bits(&[1]), bits(&[2, 3])]
        );
        assert_eq!(
            ideal(&r, &["x", "y"]).minimal_primes().unwrap(),
            vec![bits(&[0, 1])]
        );
        assert!(MonomialIdeal::zero(&r).minimal_primes().is_err());
        assert!(MonomialIdeal::unit(&r).minimal_primes().is_err());
    }

    #[test]
    fn dimension_examples() {
        let r = xyzw();
        assert_eq!(ideal(&r, &["x", "y"]).dimension().unwrap(), 2);
        assert_eq!(ideal(&r, &["x*y*z", "x*y*w"]).dimension().unwrap(), 3);
        let r4 = PolyRing::standard(4, ScalarField::Rationals).unwrap();
        let skew = ideal(&r4, &["x1", "x3"])
            .intersect(&ideal(&r4, &["x2", "x4"]))
            .unwrap();
        assert_eq!(skew.dimension().unwrap(), 2);
        assert_eq!(skew.height().unwrap(), 2);
        assert!(MonomialIdeal::unit(&r).dimension().is_err());
    }

    #[test]
    fn irreducible_decomposition_examples() {
        let r = ring(&["x", "y"]);
        let d = ideal(&r, &["x*y"]).irreducible_decomposition().unwrap();
        assert_eq!(d, vec![ideal(&r, &["y"]), ideal(&r, &["x"])]);

        let d = ideal(&r, &["x^2", "x*y"])
            .irreducible_decomposition()
            .unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.contains(&ideal(&r, &["x"])));
        assert!(d.contains(&ideal(&r, &["x^2", "y"])));

        let r5 = PolyRing::standard(5, ScalarField::Rationals).unwrap();
        let comps = [
            ideal(&r5, &["x1"]),
            ideal(&r5, &["x2", "x3"]),
            ideal(&r5, &["x1^2", "x4", "x5"]),
        ];
        let j = MonomialIdeal::intersect_all(&r5, &comps).unwrap();
        let mut got = j.irreducible_decomposition().unwrap();
        got.sort_by(|a, b| a.gens().cmp(b.gens()));
        let mut want = comps.to_vec();
        want.sort_by(|a, b| a.gens().cmp(b.gens()));
        assert_eq!(got, want);
    }

    #[test]
    fn stanley_reisner_examples() {
        let r = PolyRing::standard(4, ScalarField::Rationals).unwrap();
        // edges {1,3} and {2,4}, zero-based {0,2} and {1,3}
        let delta = SimplicialComplex::new(4, [0b0101, 0b1010]).unwrap();
        let i = MonomialIdeal::stanley_reisner(&r, &delta).unwrap();
        assert_eq!(i, ideal(&r, &["x1*x2", "x1*x4", "x2*x3", "x3*x4"]));
        assert_eq!(
            i,
            ideal(&r, &["x1", "x3"])
                .intersect(&ideal(&r, &["x2", "x4"]))
                .unwrap()
        );
        assert_eq!(i.to_complex().unwrap(), delta);
        assert!(
            MonomialIdeal::stanley_reisner(&r, &SimplicialComplex::simplex(4))
                .unwrap()
                .is_zero()
        );
        assert!(ideal(&r, &["x1^2"]).to_complex().is_err());
    }

    #[test]
    fn sigma_set_examples() {
        let r = xyzw();
        let j = ideal(&r, &["x*y*z", "x*y*w"]);
        let g = sigma_set(&ideal(&r, &["x", "y"]), &j).unwrap();
        assert_eq!(g.allowed, 0b1100);
        assert!(g.contains(&Monomial::parse("z*w", &r).unwrap()));
        assert!(!g.contains(&Monomial::parse("x*z", &r).unwrap()));
        let all = sigma_set(&MonomialIdeal::maximal(&r), &j).unwrap();
        assert_eq!(all.allowed, 0);
        let r2 = ring(&["x", "y"]);
        let g = sigma_set(&ideal(&r2, &["x"]), &MonomialIdeal::zero(&r2)).unwrap();
        assert_eq!(g.allowed, 0b10);
        assert!(sigma_set(&MonomialIdeal::unit(&r2), &MonomialIdeal::zero(&r2)).is_err());
    }

    /// Direct test of the two defining conditions on each component.
    fn q_oracle(i: &MonomialIdeal, j: &MonomialIdeal) -> MonomialIdeal {
        let r = i.ring();
        let comps = j.primary_decomposition().unwrap();
        let top = comps.iter().map(|c| c.dimension).max().unwrap();
        let mut acc = MonomialIdeal::unit(r);
        for c in comps {
            let plus = i.sum(&MonomialIdeal::prime(r, c.radical)).unwrap();
            let zero_dim = plus
                .minimal_primes()
                .unwrap()
                .iter()
                .all(|&p| p == r.all_variables());
            if c.dimension == top && zero_dim {
                acc = acc.intersect(&c.ideal).unwrap();
            }
        }
        acc
    }

    #[test]
    fn q_ideal_examples() {
        let r = ring(&["x", "y"]);
        let xy = ideal(&r, &["x*y"]);
        assert_eq!(q_ideal(&MonomialIdeal::maximal(&r), &xy).unwrap(), xy);
        // only (y) sees I + P of dimension 0
        let q = q_ideal(&ideal(&r, &["x"]), &xy).unwrap();
        assert_eq!(q, q_oracle(&ideal(&r, &["x"]), &xy));
        assert_eq!(q, ideal(&r, &["y"]));

        let r3 = ring(&["x", "y", "z"]);
        let x = ideal(&r3, &["x"]);
        assert_eq!(q_ideal(&MonomialIdeal::maximal(&r3), &x).unwrap(), x);
        // no component qualifies
        assert!(q_ideal(&ideal(&r3, &["y"]), &x).unwrap().is_unit());
    }

    fn arb_ideal(max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
        (2usize..=4).prop_flat_map(move |n| {
            prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..5).prop_map(move |gs| {
                let r = PolyRing::standard(n, ScalarField::Rationals).unwrap();
                MonomialIdeal::new(&r, gs.into_iter().map(Monomial).collect()).unwrap()
            })
        })
    }

    /// All exponent vectors in the box `[0, bound]^n`.
    fn box_monomials(n: usize, bound: u32) -> Vec<Monomial> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..=bound).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(Monomial).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ideal_operations_match_membership(a in arb_ideal(2), b in arb_ideal(2)) {
            prop_assume!(a.nvars() == b.nvars());
            let b = b.change_ring(a.ring()).unwrap();
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            let c = a.colon(&b).unwrap();
            for m in box_monomials(a.nvars(), 3) {
                prop_assert_eq!(s.contains(&m), a.contains(&m) || b.contains(&m));
                prop_assert_eq!(i.contains(&m), a.contains(&m) && b.contains(&m));
                prop_assert_eq!(c.contains(&m), b.gens().iter().all(|g| a.contains(&m.mul(g))));
            }
            for id in [&s, &i, &c] {
                for g in id.gens() {
                    prop_assert!(id.gens().iter().filter(|h| h.divides(g)).count() == 1);
                }
            }
        }

        #[test]
        fn irreducible_components_intersect_back(a in arb_ideal(2)) {
            prop_assume!(a.is_proper());
            let comps = a.irreducible_decomposition().unwrap();
            let back = MonomialIdeal::intersect_all(a.ring(), &comps).unwrap();
            prop_assert_eq!(&back, &a);
            for (k, c) in comps.iter().enumerate() {
                prop_assert!(c.gens().iter().all(|g| g.support().count_ones() == 1));
                let others: Vec<_> = comps.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, c)| c).collect();
                if !others.is_empty() {
                    let rest = MonomialIdeal::intersect_all(a.ring(), others).unwrap();
                    prop_assert!(rest != a, "component {} is redundant", c);
                }
            }
        }

        #[test]
        fn squarefree_primes_are_facet_complements(a in arb_ideal(1)) {
            prop_assume!(a.is_proper());
            let delta = a.to_complex().unwrap();
            let all = a.ring().all_variables();
            let mut comps: Vec<u32> = delta.facets().iter().map(|f| all & !f).collect();
            comps.sort_by_key(|&c| (c.count_ones(), c));
            prop_assert_eq!(a.minimal_primes().unwrap(), comps);
            prop_assert_eq!(MonomialIdeal::stanley_reisner(a.ring(), &delta).unwrap(), a);
        }

        #[test]
        fn sigma_monomials_avoid_all_primes(a in arb_ideal(2), b in arb_ideal(1)) {
            prop_assume!(a.nvars() == b.nvars());
            let b = b.change_ring(a.ring()).unwrap();
            let total = a.sum(&b).unwrap();
            prop_assume!(total.is_proper());
            let g = sigma_set(&a, &b).unwrap();
            for m in box_monomials(a.nvars(), 1) {
                if g.contains(&m) {
                    for p in total.minimal_primes().unwrap() {
                        prop_assert_eq!(m.support() & p, 0);
                    }
                }
            }
        }
    }
}
