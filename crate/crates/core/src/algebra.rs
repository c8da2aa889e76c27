//! The incidence algebra `I(P, Q)` with exact rational scalars.
//!
//! An [`IncidenceFunction`] is stored sparsely over the comparable pairs of
//! its poset; absent pairs are zero and stored values are never zero, so
//! structural equality is algebraic equality.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational, RationalMatrix};
use crate::poset::{Poset, PosetAutomorphism, PosetFile};

pub type Pair = (usize, usize);

#[derive(Clone, Debug)]
pub struct IncidenceFunction {
    poset: Arc<Poset>,
    entries: BTreeMap<Pair, Rational>,
}

impl PartialEq for IncidenceFunction {
    fn eq(&self, other: &Self) -> bool {
        same_poset(&self.poset, &other.poset) && self.entries == other.entries
    }
}

impl Eq for IncidenceFunction {}

fn same_poset(a: &Arc<Poset>, b: &Arc<Poset>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl IncidenceFunction {
    pub fn zero(poset: &Arc<Poset>) -> Self {
        IncidenceFunction { poset: poset.clone(), entries: BTreeMap::new() }
    }

    /// The unit `δ`.
    pub fn delta(poset: &Arc<Poset>) -> Self {
        let entries = (0..poset.len()).map(|x| ((x, x), Rational::one())).collect();
        IncidenceFunction { poset: poset.clone(), entries }
    }

    /// `ζ`, one on every comparable pair.
    pub fn zeta(poset: &Arc<Poset>) -> Self {
        let entries = poset.comparable_pairs().into_iter().map(|p| (p, Rational::one())).collect();
        IncidenceFunction { poset: poset.clone(), entries }
    }

    /// The basis element `e_xy`.
    pub fn basis(poset: &Arc<Poset>, x: usize, y: usize) -> Result<Self> {
        poset.check_comparable(x, y)?;
        Ok(Self::basis_unchecked(poset, (x, y)))
    }

    pub(crate) fn basis_unchecked(poset: &Arc<Poset>, pair: Pair) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(pair, Rational::one());
        IncidenceFunction { poset: poset.clone(), entries }
    }

    /// Builds a function from `(x, y, value)` triples; repeated pairs add up.
    pub fn from_entries<I>(poset: &Arc<Poset>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut f = Self::zero(poset);
        for (x, y, v) in entries {
            poset.check_comparable(x, y)?;
            f.add_at((x, y), &v);
        }
        Ok(f)
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn get(&self, x: usize, y: usize) -> Rational {
        self.entries.get(&(x, y)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> &BTreeMap<Pair, Rational> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The single pair of a nonzero multiple of a basis element.
    pub fn as_basis_multiple(&self) -> Option<(Pair, &Rational)> {
        match self.entries.len() {
            1 => self.entries.iter().next().map(|(p, v)| (*p, v)),
            _ => None,
        }
    }

    fn add_at(&mut self, pair: Pair, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry(pair).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&pair);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.poset);
        }
        let entries = self.entries.iter().map(|(p, v)| (*p, v * c)).collect();
        IncidenceFunction { poset: self.poset.clone(), entries }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_poset(&self.poset, &other.poset) {
            Ok(())
        } else {
            Err(Error::PosetMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (p, v) in &other.entries {
            out.add_at(*p, v);
        }
        Ok(out)
    }

    /// Convolution `(f g)(x, y) = Σ_{x ⪯ z ⪯ y} f(x, z) g(z, y)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.poset);
        for (&(x, z), a) in &self.entries {
            for (&(_, y), b) in other.entries.range((z, 0)..(z + 1, 0)) {
                out.add_at((x, y), &(a * b));
            }
        }
        Ok(out)
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let entries = self.entries.iter().filter_map(|(p, a)| other.entries.get(p).map(|b| (*p, a * b))).collect();
        Ok(IncidenceFunction { poset: self.poset.clone(), entries })
    }

    /// Two-sided convolution inverse by back-substitution along a linear
    /// extension; exists iff every diagonal entry is nonzero.
    pub fn invert(&self) -> Result<Self> {
        let p = &self.poset;
        let n = p.len();
        let diag_inv: Vec<Rational> = (0..n)
            .map(|x| self.entries.get(&(x, x)).map(|d| d.recip()).ok_or(Error::NotInvertible(x)))
            .collect::<Result<_>>()?;
        let order = p.linear_extension();
        let mut g = Self::zero(p);
        for &y in &order {
            g.add_at((y, y), &diag_inv[y]);
            // f(x,x) g(x,y) = -Σ_{x ≺ z ⪯ y} f(x,z) g(z,y); fill x downward from y
            for &x in order.iter().rev() {
                if x == y || !p.leq(x, y) {
                    continue;
                }
                let mut acc = Rational::zero();
                for (&(_, z), a) in self.entries.range((x, 0)..(x + 1, 0)) {
                    if z != x && p.leq(z, y) {
                        if let Some(b) = g.entries.get(&(z, y)) {
                            acc += a * b;
                        }
                    }
                }
                g.add_at((x, y), &(-acc * &diag_inv[x]));
            }
        }
        Ok(g)
    }

    /// Nonzero on every comparable pair with `s(x,y) = s(x,z) s(z,y)`.
    pub fn is_multiplicative(&self) -> bool {
        self.multiplicativity_defect().is_none()
    }

    fn multiplicativity_defect(&self) -> Option<String> {
        let p = &self.poset;
        let n = p.len();
        for (x, y) in p.comparable_pairs() {
            if !self.entries.contains_key(&(x, y)) {
                return Some(format!("zero at comparable pair ({x},{y})"));
            }
        }
        for x in 0..n {
            for z in 0..n {
                if !p.leq(x, z) {
                    continue;
                }
                for y in 0..n {
                    if p.leq(z, y) && self.get(x, y) != self.get(x, z) * self.get(z, y) {
                        return Some(format!("cocycle fails on {x} ⪯ {z} ⪯ {y}"));
                    }
                }
            }
        }
        None
    }

    pub fn to_file(&self, poset: PosetRef) -> IncidenceFunctionFile {
        IncidenceFunctionFile {
            poset,
            entries: self.entries.iter().map(|(&(x, y), v)| (x, y, format_rational(v))).collect(),
        }
    }

    pub fn from_triples(poset: &Arc<Poset>, triples: &[(usize, usize, String)]) -> Result<Self> {
        let parsed = triples.iter().map(|(x, y, v)| Ok((*x, *y, parse_rational(v)?))).collect::<Result<Vec<_>>>()?;
        Self::from_entries(poset, parsed)
    }
}

impl Add for &IncidenceFunction {
    type Output = IncidenceFunction;
    fn add(self, rhs: &IncidenceFunction) -> IncidenceFunction {
        self.try_add(rhs).expect("operands share a poset")
    }
}

impl Neg for &IncidenceFunction {
    type Output = IncidenceFunction;
    fn neg(self) -> IncidenceFunction {
        self.scale(&-Rational::one())
    }
}

impl Sub for &IncidenceFunction {
    type Output = IncidenceFunction;
    fn sub(self, rhs: &IncidenceFunction) -> IncidenceFunction {
        self + &(-rhs)
    }
}

/// A linear endomorphism of `I(P, Q)` given by the image of each `e_xy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    poset: Arc<Poset>,
    images: BTreeMap<Pair, IncidenceFunction>,
}

impl AlgebraMorphism {
    pub fn identity(poset: &Arc<Poset>) -> Self {
        Self::from_fn(poset, |p| IncidenceFunction::basis_unchecked(poset, p))
    }

    fn from_fn(poset: &Arc<Poset>, mut image: impl FnMut(Pair) -> IncidenceFunction) -> Self {
        let images = poset.comparable_pairs().into_iter().map(|p| (p, image(p))).collect();
        AlgebraMorphism { poset: poset.clone(), images }
    }

    /// Builds a morphism from explicit basis images without validating it.
    pub fn from_images(poset: &Arc<Poset>, images: BTreeMap<Pair, IncidenceFunction>) -> Result<Self> {
        for (&(x, y), f) in &images {
            poset.check_comparable(x, y)?;
            if !same_poset(poset, f.poset()) {
                return Err(Error::PosetMismatch);
            }
        }
        for p in poset.comparable_pairs() {
            if !images.contains_key(&p) {
                return Err(Error::NotAutomorphism(format!("no image given for e{p:?}")));
            }
        }
        Ok(AlgebraMorphism { poset: poset.clone(), images })
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn image(&self, x: usize, y: usize) -> &IncidenceFunction {
        &self.images[&(x, y)]
    }

    pub fn images(&self) -> &BTreeMap<Pair, IncidenceFunction> {
        &self.images
    }

    /// Linear extension to an arbitrary function.
    pub fn apply(&self, f: &IncidenceFunction) -> Result<IncidenceFunction> {
        if !same_poset(&self.poset, f.poset()) {
            return Err(Error::PosetMismatch);
        }
        let mut out = IncidenceFunction::zero(&self.poset);
        for (p, v) in f.entries() {
            for (q, w) in self.images[p].entries() {
                out.add_at(*q, &(v * w));
            }
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if !same_poset(&self.poset, &other.poset) {
            return Err(Error::PosetMismatch);
        }
        let images = other.images.iter().map(|(p, f)| Ok((*p, self.apply(f)?))).collect::<Result<_>>()?;
        Ok(AlgebraMorphism { poset: self.poset.clone(), images })
    }

    /// Checks that the morphism is a unital, bijective algebra map:
    /// `φ(e_xy) φ(e_uv) = [y = u] φ(e_xv)`, `Σ φ(e_xx) = δ`, and the image
    /// matrix has full rank.
    pub fn validate(&self) -> Result<()> {
        let pairs = self.poset.comparable_pairs();
        for &(x, y) in &pairs {
            for &(u, v) in &pairs {
                let prod = self.images[&(x, y)].convolve(&self.images[&(u, v)])?;
                let ok = if y == u { prod == self.images[&(x, v)] } else { prod.is_zero() };
                if !ok {
                    return Err(Error::NotAutomorphism(format!(
                        "product of images of e{:?} and e{:?} is wrong",
                        (x, y),
                        (u, v)
                    )));
                }
            }
        }
        let mut unit = IncidenceFunction::zero(&self.poset);
        for x in 0..self.poset.len() {
            unit = &unit + &self.images[&(x, x)];
        }
        if unit != IncidenceFunction::delta(&self.poset) {
            return Err(Error::NotAutomorphism("unit is not preserved".into()));
        }
        if self.matrix().rank() != pairs.len() {
            return Err(Error::NotAutomorphism("images are linearly dependent".into()));
        }
        Ok(())
    }

    /// Column `j` holds the coordinates of the image of the `j`-th basis pair.
    fn matrix(&self) -> RationalMatrix {
        let pairs = self.poset.comparable_pairs();
        let index: BTreeMap<Pair, usize> = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut m = RationalMatrix::zeros(pairs.len(), pairs.len());
        for (j, p) in pairs.iter().enumerate() {
            for (q, v) in self.images[p].entries() {
                m.set(index[q], j, v.clone());
            }
        }
        m
    }

    pub fn to_file(&self, poset: PosetRef) -> MorphismFile {
        MorphismFile {
            poset,
            images: self
                .images
                .iter()
                .map(|(&(x, y), f)| MorphismEntry {
                    pair: [x, y],
                    image: f.entries.iter().map(|(&(u, v), q)| (u, v, format_rational(q))).collect(),
                })
                .collect(),
        }
    }

    pub fn from_file(poset: &Arc<Poset>, file: &MorphismFile) -> Result<Self> {
        let mut images = BTreeMap::new();
        for e in &file.images {
            let f = IncidenceFunction::from_triples(poset, &e.image)?;
            if images.insert((e.pair[0], e.pair[1]), f).is_some() {
                return Err(Error::Parse(format!("pair {:?} listed twice", e.pair)));
            }
        }
        Self::from_images(poset, images)
    }
}

/// Inner automorphism `ψ_r(f) = r f r⁻¹`.
pub fn inner_auto(r: &IncidenceFunction) -> Result<AlgebraMorphism> {
    let r_inv = r.invert()?;
    let poset = r.poset().clone();
    let mut err = None;
    let m = AlgebraMorphism::from_fn(&poset, |p| {
        let e = IncidenceFunction::basis_unchecked(&poset, p);
        match r.convolve(&e).and_then(|re| re.convolve(&r_inv)) {
            Ok(f) => f,
            Err(e) => {
                err = Some(e);
                IncidenceFunction::zero(&poset)
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

/// Hadamard automorphism `M_s(f) = s ∗ f` for multiplicative `s`.
pub fn mult_auto(s: &IncidenceFunction) -> Result<AlgebraMorphism> {
    if let Some(why) = s.multiplicativity_defect() {
        return Err(Error::NotMultiplicative(why));
    }
    let poset = s.poset().clone();
    Ok(AlgebraMorphism::from_fn(&poset, |(x, y)| {
        IncidenceFunction::basis_unchecked(&poset, (x, y)).scale(&s.get(x, y))
    }))
}

/// Induced automorphism `σ̂(e_xy) = e_{σ(x)σ(y)}`.
pub fn induced_auto(poset: &Arc<Poset>, sigma: &PosetAutomorphism) -> Result<AlgebraMorphism> {
    let sigma = PosetAutomorphism::new(poset, sigma.perm().to_vec())?;
    Ok(AlgebraMorphism::from_fn(poset, |(x, y)| {
        IncidenceFunction::basis_unchecked(poset, (sigma.apply(x), sigma.apply(y)))
    }))
}

/// A factorization `φ = ψ_r ∘ M_s ∘ σ̂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub r: IncidenceFunction,
    pub s: IncidenceFunction,
    pub sigma: PosetAutomorphism,
}

impl Decomposition {
    pub fn compose(&self) -> Result<AlgebraMorphism> {
        let poset = self.r.poset();
        inner_auto(&self.r)?.compose(&mult_auto(&self.s)?)?.compose(&induced_auto(poset, &self.sigma)?)
    }
}

/// Factors a validated automorphism as `ψ_r ∘ M_s ∘ σ̂`.
///
/// `σ(x)` is read off the diagonal of `φ(e_xx)`; with `φ' = φ ∘ σ̂⁻¹`,
/// `r = Σ_x φ'(e_xx) e_xx` has unit diagonal, and `ψ_r⁻¹ ∘ φ'` scales each
/// `e_xy` by a multiplicative `s(x, y)`. The result is checked on every
/// basis element before it is returned.
pub fn decompose_automorphism(phi: &AlgebraMorphism) -> Result<Decomposition> {
    phi.validate()?;
    let poset = phi.poset().clone();
    let n = poset.len();

    let mut perm = Vec::with_capacity(n);
    for x in 0..n {
        let img = phi.image(x, x);
        let hits: Vec<usize> = (0..n).filter(|&y| img.get(y, y).is_one()).collect();
        match hits.as_slice() {
            [y] => perm.push(*y),
            _ => return Err(Error::Decomposition(format!("diagonal of φ(e_{x}{x}) has {} unit entries", hits.len()))),
        }
    }
    let sigma =
        PosetAutomorphism::new(&poset, perm).map_err(|e| Error::Decomposition(format!("recovered σ invalid: {e}")))?;

    let phi_prime = phi.compose(&induced_auto(&poset, &sigma.inverse())?)?;
    let mut r = IncidenceFunction::zero(&poset);
    for x in 0..n {
        let term = phi_prime.image(x, x).convolve(&IncidenceFunction::basis_unchecked(&poset, (x, x)))?;
        r = &r + &term;
    }
    let r_inv = r.invert().map_err(|e| Error::Decomposition(format!("r not invertible: {e}")))?;

    let mut s = IncidenceFunction::zero(&poset);
    for (x, y) in poset.comparable_pairs() {
        let c = r_inv.convolve(phi_prime.image(x, y))?.convolve(&r)?;
        match c.as_basis_multiple() {
            Some((pair, v)) if pair == (x, y) => s.add_at((x, y), v),
            _ => {
                return Err(Error::Decomposition(format!("ψ_r⁻¹∘φ' does not scale e_{x}{y}")));
            }
        }
    }
    if let Some(why) = s.multiplicativity_defect() {
        return Err(Error::Decomposition(format!("scaling function not multiplicative: {why}")));
    }
    let d = Decomposition { r, s, sigma };
    if d.compose()? != *phi {
        return Err(Error::Decomposition("reconstruction differs from input".into()));
    }
    Ok(d)
}

/// How a file refers to its poset: a fixture or path name, or inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PosetRef {
    Named(String),
    Inline(PosetFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceFunctionFile {
    pub poset: PosetRef,
    pub entries: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismEntry {
    pub pair: [usize; 2],
    pub image: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFile {
    pub poset: PosetRef,
    pub images: Vec<MorphismEntry>,
}
