//! Multilinear graded polynomial identities of elementary gradings.
//!
//! A multilinear polynomial of multidegree `(g_1, …, g_m)` is a vector in
//! the `m!`-dimensional space spanned by the monomials
//! `x_{π(1)} ⋯ x_{π(m)}`, columns ordered by the lexicographic order of
//! `π`. Its identities of that type form the kernel of the evaluation map
//! on substitutions `x_i ↦ e_{u_i v_i}` with `e_{u_i v_i}` in `A^θ(g_i)`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{IncidenceFunction, Pair};
use crate::error::{Error, Result};
use crate::grading::{classify_gradings, GradingMap};
use crate::group::{permutations, FiniteGroup};
use crate::linalg::{
    format_rational, parse_rational, subspace_contains, subspace_intersect_all, Rational, RationalMatrix, RowReducer,
};
use crate::poset::Poset;

pub const DEFAULT_CAP: usize = 4;

/// A multilinear polynomial; `terms` maps 0-based permutations to coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearPolynomial {
    group: Arc<FiniteGroup>,
    multidegree: Vec<usize>,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl MultilinearPolynomial {
    pub fn new<I>(group: &Arc<FiniteGroup>, multidegree: Vec<usize>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Rational)>,
    {
        let m = multidegree.len();
        if m == 0 {
            return Err(Error::DegreeMismatch("multidegree must be nonempty".into()));
        }
        if let Some(&g) = multidegree.iter().find(|&&g| g >= group.order()) {
            return Err(Error::UnknownGroupElement(format!("index {g}")));
        }
        let mut out: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (perm, c) in terms {
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            if sorted != (0..m).collect::<Vec<_>>() {
                return Err(Error::Parse(format!("{perm:?} is not a permutation of 0..{m}")));
            }
            *out.entry(perm).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(MultilinearPolynomial { group: group.clone(), multidegree, terms: out })
    }

    /// The single monomial `x_1 x_2 ⋯ x_m`.
    pub fn monomial(group: &Arc<FiniteGroup>, multidegree: Vec<usize>) -> Result<Self> {
        let m = multidegree.len();
        Self::new(group, multidegree, [((0..m).collect(), Rational::one())])
    }

    /// Reads a coefficient vector indexed by the lexicographic permutations.
    pub fn from_vector(group: &Arc<FiniteGroup>, multidegree: Vec<usize>, coeffs: &[Rational]) -> Result<Self> {
        let perms = permutations(multidegree.len());
        if coeffs.len() != perms.len() {
            return Err(Error::DimensionMismatch(coeffs.len(), perms.len()));
        }
        Self::new(group, multidegree, perms.into_iter().zip(coeffs.iter().cloned()))
    }

    pub fn degree(&self) -> usize {
        self.multidegree.len()
    }

    pub fn multidegree(&self) -> &[usize] {
        &self.multidegree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.terms
    }

    /// Coefficients in lexicographic permutation order.
    pub fn to_vector(&self) -> Vec<Rational> {
        permutations(self.degree()).iter().map(|p| self.terms.get(p).cloned().unwrap_or_else(Rational::zero)).collect()
    }

    pub fn to_file(&self) -> PolynomialFile {
        PolynomialFile {
            multidegree: self.multidegree.iter().map(|&g| self.group.element_name(g).to_string()).collect(),
            terms: self
                .terms
                .iter()
                .map(|(p, c)| TermFile { perm: p.iter().map(|i| i + 1).collect(), coeff: format_rational(c) })
                .collect(),
        }
    }
}

/// `{"multidegree": ["h","1"], "terms": [{"perm":[1,2],"coeff":"1"}, …]}`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialFile {
    pub multidegree: Vec<String>,
    pub terms: Vec<TermFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFile {
    pub perm: Vec<usize>,
    pub coeff: String,
}

impl PolynomialFile {
    pub fn resolve(&self, group: &Arc<FiniteGroup>) -> Result<MultilinearPolynomial> {
        let multidegree = self.multidegree.iter().map(|n| group.element(n)).collect::<Result<Vec<_>>>()?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let perm = t
                    .perm
                    .iter()
                    .map(|&i| i.checked_sub(1).ok_or_else(|| Error::Parse("perm entries are 1-based".into())))
                    .collect::<Result<Vec<_>>>()?;
                Ok((perm, parse_rational(&t.coeff)?))
            })
            .collect::<Result<Vec<_>>>()?;
        MultilinearPolynomial::new(group, multidegree, terms)
    }
}

/// Basis pairs assigned to the variables, variable `i` homogeneous of degree `g_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pairs: Vec<Pair>,
}

impl Substitution {
    pub fn new(grading: &GradingMap, multidegree: &[usize], pairs: Vec<Pair>) -> Result<Self> {
        if pairs.len() != multidegree.len() {
            return Err(Error::DegreeMismatch(format!(
                "{} variables but {} substituted elements",
                multidegree.len(),
                pairs.len()
            )));
        }
        for (i, (&(u, v), &g)) in pairs.iter().zip(multidegree).enumerate() {
            let d = grading.grade_of_pair(u, v)?;
            if d != g {
                let group = grading.group();
                return Err(Error::DegreeMismatch(format!(
                    "variable {} has degree {} but e_{u}{v} has degree {}",
                    i + 1,
                    group.element_name(g),
                    group.element_name(d)
                )));
            }
        }
        Ok(Substitution { pairs })
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }
}

/// `Φ(e_{u_1 v_1}, …, e_{u_m v_m})` by exact convolution.
pub fn evaluate(phi: &MultilinearPolynomial, grading: &GradingMap, sub: &Substitution) -> Result<IncidenceFunction> {
    if phi.multidegree.len() != sub.pairs.len() {
        return Err(Error::DegreeMismatch("substitution length differs from polynomial degree".into()));
    }
    Substitution::new(grading, &phi.multidegree, sub.pairs.clone())?;
    let poset = grading.poset();
    let mut total = IncidenceFunction::zero(poset);
    for (perm, c) in &phi.terms {
        let mut prod = IncidenceFunction::delta(poset);
        for &i in perm {
            let (u, v) = sub.pairs[i];
            prod = prod.convolve(&IncidenceFunction::basis(poset, u, v)?)?;
        }
        total = &total + &prod.scale(c);
    }
    Ok(total)
}

/// Product of `e_{u v}` along `order`, as a pair, or `None` if it vanishes.
fn path_product(pairs: &[Pair], order: &[usize]) -> Option<Pair> {
    let (start, mut end) = pairs[order[0]];
    for &i in &order[1..] {
        let (u, v) = pairs[i];
        if u != end {
            return None;
        }
        end = v;
    }
    Some((start, end))
}

/// The multilinear identities of one multidegree type, as a canonical
/// echelon basis of coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySlice {
    pub multidegree: Vec<usize>,
    pub basis: RationalMatrix,
}

impl IdentitySlice {
    pub fn dimension(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains(&self, coeffs: &[Rational]) -> bool {
        let mut red = RowReducer::new(self.basis.cols());
        for r in self.basis.row_vecs() {
            red.push(r).expect("slice rows have ambient width");
        }
        red.contains(coeffs)
    }

    pub fn report(&self, group: &FiniteGroup) -> SliceReport {
        SliceReport {
            multidegree: self.multidegree.iter().map(|&g| group.element_name(g).to_string()).collect(),
            dimension: self.dimension(),
            ambient_dimension: self.ambient_dimension(),
            basis: self.basis.to_strings(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceReport {
    pub multidegree: Vec<String>,
    pub dimension: usize,
    pub ambient_dimension: usize,
    pub basis: Vec<Vec<String>>,
}

fn check_cap(m: usize, cap: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::DegreeMismatch("multidegree must be nonempty".into()));
    }
    if m > cap {
        return Err(Error::CapExceeded { degree: m, cap });
    }
    Ok(())
}

/// Visits every substitution of the given multidegree.
fn for_each_substitution(grading: &GradingMap, multidegree: &[usize], mut f: impl FnMut(&[Pair]) -> bool) {
    let components = grading.components();
    let choices: Vec<&[Pair]> =
        multidegree.iter().map(|g| components.get(g).map_or(&[][..], |v| v.as_slice())).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let m = multidegree.len();
    let mut idx = vec![0usize; m];
    let mut pairs: Vec<Pair> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
    loop {
        if !f(&pairs) {
            return;
        }
        let mut k = m;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                pairs[k] = choices[k][idx[k]];
                break;
            }
            idx[k] = 0;
            pairs[k] = choices[k][0];
        }
    }
}

/// Kernel of the evaluation map, streamed one substitution at a time.
///
/// Each substitution contributes one row per output coordinate `(x, y)`;
/// the row's entry in column `π` is 1 when the monomial `π` evaluates to
/// `e_xy`.
pub fn identity_slice(grading: &GradingMap, multidegree: &[usize], cap: usize) -> Result<IdentitySlice> {
    let m = multidegree.len();
    check_cap(m, cap)?;
    if let Some(&g) = multidegree.iter().find(|&&g| g >= grading.group().order()) {
        return Err(Error::UnknownGroupElement(format!("index {g}")));
    }
    let perms = permutations(m);
    let cols = perms.len();
    let mut reducer = RowReducer::new(cols);
    for_each_substitution(grading, multidegree, |pairs| {
        let mut rows: BTreeMap<Pair, Vec<Rational>> = BTreeMap::new();
        for (j, perm) in perms.iter().enumerate() {
            if let Some(out) = path_product(pairs, perm) {
                rows.entry(out).or_insert_with(|| vec![Rational::zero(); cols])[j] = Rational::one();
            }
        }
        for row in rows.into_values() {
            reducer.push(row).expect("evaluation rows have m! columns");
        }
        !reducer.is_full()
    });
    Ok(IdentitySlice { multidegree: multidegree.to_vec(), basis: reducer.kernel() })
}

/// All tuples of length `1..=d` over `elements`, shorter first, then lexicographic.
pub fn tuples_upto(elements: &[usize], d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..d {
        layer = layer
            .iter()
            .flat_map(|t| {
                elements.iter().map(move |&g| {
                    let mut t = t.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceComparison {
    pub equal: bool,
    pub first_difference: Option<Vec<usize>>,
    pub multidegrees_checked: usize,
}

/// Compares identity slices of two gradings for every multidegree of
/// length `≤ d` over `G_θ ∪ G_μ ∪ {1}`; any other multidegree has an empty
/// component on both sides and so a full slice on both.
pub fn slices_equal_upto(theta: &GradingMap, mu: &GradingMap, d: usize, cap: usize) -> Result<SliceComparison> {
    if *theta.poset() != *mu.poset() || *theta.group() != *mu.group() {
        return Err(Error::Mismatch("gradings live on different posets or groups".into()));
    }
    if d > cap {
        return Err(Error::CapExceeded { degree: d, cap });
    }
    let mut degrees: BTreeSet<usize> = theta.support();
    degrees.extend(mu.support());
    degrees.insert(theta.group().identity());
    let degrees: Vec<usize> = degrees.into_iter().collect();
    let tuples = tuples_upto(&degrees, d);
    for (i, t) in tuples.iter().enumerate() {
        if identity_slice(theta, t, cap)? != identity_slice(mu, t, cap)? {
            return Ok(SliceComparison {
                equal: false,
                first_difference: Some(t.clone()),
                multidegrees_checked: i + 1,
            });
        }
    }
    Ok(SliceComparison { equal: true, first_difference: None, multidegrees_checked: tuples.len() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReductionReport {
    pub multidegree: Vec<usize>,
    pub whole_dimension: usize,
    pub intersection_dimension: usize,
    pub chain_dimensions: Vec<usize>,
    /// Whole-poset slice contained in every chain slice.
    pub contained_in_each_chain: bool,
    pub holds: bool,
}

/// Compares the whole-poset slice with the intersection of the slices of
/// the gradings induced on the maximal chains.
pub fn verify_chain_reduction(grading: &GradingMap, multidegree: &[usize], cap: usize) -> Result<ChainReductionReport> {
    let whole = identity_slice(grading, multidegree, cap)?;
    let mut chain_slices = Vec::new();
    for chain in grading.poset().maximal_chains() {
        let restricted = grading.restrict(chain.indices())?;
        chain_slices.push(identity_slice(&restricted, multidegree, cap)?.basis);
    }
    let cols = whole.ambient_dimension();
    let meet = subspace_intersect_all(cols, &chain_slices)?;
    let contained = chain_slices.iter().map(|s| subspace_contains(s, &whole.basis)).collect::<Result<Vec<_>>>()?;
    Ok(ChainReductionReport {
        multidegree: multidegree.to_vec(),
        whole_dimension: whole.dimension(),
        intersection_dimension: meet.rows(),
        chain_dimensions: chain_slices.iter().map(RationalMatrix::rows).collect(),
        contained_in_each_chain: contained.iter().all(|&c| c),
        holds: meet == whole.basis,
    })
}

/// Whether `x_1 ⋯ x_m` vanishes under every substitution of this type.
pub fn is_monomial_identity(grading: &GradingMap, multidegree: &[usize]) -> bool {
    let components = grading.components();
    // pairs (start, end) reachable as nonzero products of the prefix
    let mut reach: BTreeSet<Pair> = match multidegree.first().and_then(|g| components.get(g)) {
        Some(c) => c.iter().copied().collect(),
        None => return true,
    };
    for g in &multidegree[1..] {
        let Some(comp) = components.get(g) else { return true };
        reach = reach
            .iter()
            .flat_map(|&(s, e)| comp.iter().filter(move |&&(u, _)| u == e).map(move |&(_, v)| (s, v)))
            .collect();
        if reach.is_empty() {
            return true;
        }
    }
    reach.is_empty()
}

/// All monomial identities of length `1..=d` over the whole group.
pub fn monomial_identities(grading: &GradingMap, d: usize, cap: usize) -> Result<BTreeSet<Vec<usize>>> {
    if d > cap {
        return Err(Error::CapExceeded { degree: d, cap });
    }
    let all: Vec<usize> = (0..grading.group().order()).collect();
    Ok(tuples_upto(&all, d).into_iter().filter(|t| is_monomial_identity(grading, t)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnseparatedPair {
    pub first: usize,
    pub second: usize,
    /// First multidegree (length `≤ d`) whose full identity slices differ, if any.
    pub slice_difference: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub degree: usize,
    pub classes: usize,
    pub pairs_checked: usize,
    /// Representative pairs whose monomial identities up to `degree` coincide.
    pub unseparated: Vec<UnseparatedPair>,
}

impl TransitivityReport {
    pub fn all_separated(&self) -> bool {
        self.unseparated.is_empty()
    }
}

/// For a chain-transitive poset, checks that inequivalent grading classes
/// have different monomial identities of degree `≤ d`. Pairs that are not
/// separated are re-examined with full multilinear slices up to `d` and
/// reported.
pub fn chain_transitivity_identity_check(
    poset: &Arc<Poset>,
    group: &Arc<FiniteGroup>,
    d: usize,
    cap: usize,
    budget: u128,
) -> Result<(TransitivityReport, Vec<GradingMap>)> {
    if !poset.is_chain_transitive() {
        return Err(Error::NotChainTransitive);
    }
    if d > cap {
        return Err(Error::CapExceeded { degree: d, cap });
    }
    let reps = classify_gradings(poset, group, budget)?.representatives;
    let monos = reps.iter().map(|r| monomial_identities(r, d, cap)).collect::<Result<Vec<_>>>()?;
    let mut unseparated = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            pairs_checked += 1;
            if monos[i] == monos[j] {
                let cmp = slices_equal_upto(&reps[i], &reps[j], d, cap)?;
                unseparated.push(UnseparatedPair { first: i, second: j, slice_difference: cmp.first_difference });
            }
        }
    }
    let report = TransitivityReport { degree: d, classes: reps.len(), pairs_checked, unseparated };
    Ok((report, reps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::rat;

    fn setup(p: Poset, g: &str) -> (Arc<Poset>, Arc<FiniteGroup>) {
        (Arc::new(p), Arc::new(FiniteGroup::from_spec(g).unwrap()))
    }

    fn map(p: &Arc<Poset>, g: &Arc<FiniteGroup>, names: &[&str]) -> GradingMap {
        GradingMap::from_names(p, g, names).unwrap()
    }

    fn poly(g: &Arc<FiniteGroup>, md: Vec<usize>, terms: &[(&[usize], i64)]) -> MultilinearPolynomial {
        MultilinearPolynomial::new(g, md, terms.iter().map(|(p, c)| (p.to_vec(), rat(*c)))).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let (c3, g) = setup(Poset::chain(3).unwrap(), "C1");
        let theta = GradingMap::trivial(&c3, &g);
        let x1x2 = MultilinearPolynomial::monomial(&g, vec![0, 0]).unwrap();
        let sub = Substitution::new(&theta, &[0, 0], vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(evaluate(&x1x2, &theta, &sub).unwrap(), IncidenceFunction::basis(&c3, 0, 2).unwrap());

        let comm = poly(&g, vec![0, 0], &[(&[0, 1], 1), (&[1, 0], -1)]);
        let diag = Substitution::new(&theta, &[0, 0], vec![(1, 1), (2, 2)]).unwrap();
        assert!(evaluate(&comm, &theta, &diag).unwrap().is_zero());

        let same = Substitution::new(&theta, &[0, 0], vec![(0, 1), (0, 1)]).unwrap();
        assert!(evaluate(&x1x2, &theta, &same).unwrap().is_zero());
    }

    #[test]
    fn substitution_degree_mismatch() {
        let (c2, g) = setup(Poset::chain(2).unwrap(), "C2");
        let theta = map(&c2, &g, &["1", "h"]);
        assert!(matches!(Substitution::new(&theta, &[0], vec![(0, 1)]), Err(Error::DegreeMismatch(_))));
        assert!(matches!(Substitution::new(&theta, &[0, 0], vec![(0, 0)]), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn ut2_has_no_degree_two_identity() {
        let (c2, g) = setup(Poset::chain(2).unwrap(), "C1");
        let s = identity_slice(&GradingMap::trivial(&c2, &g), &[0, 0], DEFAULT_CAP).unwrap();
        assert_eq!(s.dimension(), 0);
        assert_eq!(s.ambient_dimension(), 2);
    }

    #[test]
    fn empty_component_gives_full_slice() {
        let (c2, g) = setup(Poset::chain(2).unwrap(), "C2");
        let s = identity_slice(&GradingMap::trivial(&c2, &g), &[0, 1, 0], DEFAULT_CAP).unwrap();
        assert_eq!(s.basis, RationalMatrix::identity(6));
    }

    #[test]
    fn example_type_h_h() {
        let (p, g) = setup(corpus::example(), "C3");
        let theta = map(&p, &g, &["1", "h", "h^2", "1"]);
        let s = identity_slice(&theta, &[1, 1], DEFAULT_CAP).unwrap();
        assert_eq!(s.dimension(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let (c2, g) = setup(Poset::chain(2).unwrap(), "C1");
        let t = GradingMap::trivial(&c2, &g);
        assert_eq!(identity_slice(&t, &[0; 5], 4).unwrap_err(), Error::CapExceeded { degree: 5, cap: 4 });
        assert!(matches!(slices_equal_upto(&t, &t, 5, 4), Err(Error::CapExceeded { .. })));
        assert!(matches!(monomial_identities(&t, 5, 4), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn slice_comparison_examples() {
        let (c2, g) = setup(Poset::chain(2).unwrap(), "C2");
        let triv = GradingMap::trivial(&c2, &g);
        let graded = map(&c2, &g, &["1", "h"]);
        assert!(slices_equal_upto(&triv, &triv, 3, DEFAULT_CAP).unwrap().equal);
        let cmp = slices_equal_upto(&triv, &graded, 1, DEFAULT_CAP).unwrap();
        assert!(!cmp.equal);
        assert_eq!(cmp.first_difference, Some(vec![1]));
    }

    #[test]
    fn chain_reduction_on_a_chain() {
        let (c3, g) = setup(Poset::chain(3).unwrap(), "C2");
        let theta = map(&c3, &g, &["1", "h", "h"]);
        let r = verify_chain_reduction(&theta, &[0, 1], DEFAULT_CAP).unwrap();
        assert!(r.holds && r.contained_in_each_chain);
        assert_eq!(r.chain_dimensions, vec![r.whole_dimension]);
    }

    #[test]
    fn monomial_examples() {
        let (c2, g) = setup(Poset::chain(2).unwrap(), "C2");
        let ids = monomial_identities(&GradingMap::trivial(&c2, &g), 2, DEFAULT_CAP).unwrap();
        assert!(ids.contains(&vec![1]));
        assert!(!ids.contains(&vec![0, 0]));
        let graded = map(&c2, &g, &["1", "h"]);
        assert!(is_monomial_identity(&graded, &[1, 1]));

        let (c3, g) = setup(Poset::chain(3).unwrap(), "C2");
        let theta = map(&c3, &g, &["1", "h", "1"]);
        assert!(is_monomial_identity(&theta, &[1, 1, 1]));
        // e12 · e22 · e23 = e13
        assert!(!is_monomial_identity(&theta, &[1, 0, 1]));
        assert!(!is_monomial_identity(&theta, &[1, 1]));
    }

    #[test]
    fn polynomial_file_round_trip() {
        let g = Arc::new(FiniteGroup::from_spec("C2").unwrap());
        let p = poly(&g, vec![1, 0], &[(&[0, 1], 1), (&[1, 0], -1)]);
        let f = p.to_file();
        assert_eq!(f.multidegree, vec!["h", "1"]);
        assert_eq!(f.terms[0].perm, vec![1, 2]);
        assert_eq!(f.resolve(&g).unwrap(), p);
        let bad = PolynomialFile {
            multidegree: vec!["1".into()],
            terms: vec![TermFile { perm: vec![2], coeff: "1".into() }],
        };
        assert!(bad.resolve(&g).is_err());
    }
}
