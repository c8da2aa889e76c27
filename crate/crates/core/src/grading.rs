//! Elementary gradings `A^θ` given by maps `θ: P → G`.
//!
//! The pair `(x, y)` gets degree `θ_x⁻¹ θ_y`. Two maps are equivalent when
//! `μ = hθσ`, i.e. `μ(x) = h_i · θ(σ⁻¹(x))` for `x` in component `i`, with
//! one shift `h_i` per connected component and `σ ∈ Aut(P)`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Pair;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::poset::{Poset, PosetAutomorphism};

pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Clone, Debug)]
pub struct GradingMap {
    poset: Arc<Poset>,
    group: Arc<FiniteGroup>,
    theta: Vec<usize>,
}

impl PartialEq for GradingMap {
    fn eq(&self, other: &Self) -> bool {
        self.theta == other.theta && *self.poset == *other.poset && *self.group == *other.group
    }
}

impl Eq for GradingMap {}

/// The basis pairs of the homogeneous component of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedComponent {
    pub degree: usize,
    pub basis: Vec<Pair>,
}

/// Certifies `μ = hθσ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceWitness {
    pub shifts: Vec<usize>,
    pub sigma: PosetAutomorphism,
}

impl GradingMap {
    pub fn new(poset: &Arc<Poset>, group: &Arc<FiniteGroup>, theta: Vec<usize>) -> Result<Self> {
        if theta.len() != poset.len() {
            return Err(Error::Mismatch(format!(
                "θ has {} values for a poset of {} elements",
                theta.len(),
                poset.len()
            )));
        }
        if let Some(&bad) = theta.iter().find(|&&g| g >= group.order()) {
            return Err(Error::UnknownGroupElement(format!("index {bad}")));
        }
        Ok(GradingMap { poset: poset.clone(), group: group.clone(), theta })
    }

    pub fn trivial(poset: &Arc<Poset>, group: &Arc<FiniteGroup>) -> Self {
        GradingMap { poset: poset.clone(), group: group.clone(), theta: vec![group.identity(); poset.len()] }
    }

    /// Parses element names, e.g. `["1", "h", "h^2", "1"]`.
    pub fn from_names<S: AsRef<str>>(poset: &Arc<Poset>, group: &Arc<FiniteGroup>, names: &[S]) -> Result<Self> {
        let theta = names.iter().map(|n| group.element(n.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(poset, group, theta)
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn names(&self) -> Vec<String> {
        self.theta.iter().map(|&g| self.group.element_name(g).to_string()).collect()
    }

    fn degree(&self, (x, y): Pair) -> usize {
        self.group.left_div(self.theta[x], self.theta[y])
    }

    /// `θ_x⁻¹ θ_y`.
    pub fn grade_of_pair(&self, x: usize, y: usize) -> Result<usize> {
        self.poset.check_comparable(x, y)?;
        Ok(self.degree((x, y)))
    }

    /// `G_θ`, the set of degrees that occur.
    pub fn support(&self) -> BTreeSet<usize> {
        self.poset.comparable_pairs().into_iter().map(|p| self.degree(p)).collect()
    }

    pub fn component_basis(&self, g: usize) -> GradedComponent {
        let basis = self.poset.comparable_pairs().into_iter().filter(|&p| self.degree(p) == g).collect();
        GradedComponent { degree: g, basis }
    }

    /// Every nonempty component, keyed by degree.
    pub fn components(&self) -> BTreeMap<usize, Vec<Pair>> {
        let mut out: BTreeMap<usize, Vec<Pair>> = BTreeMap::new();
        for p in self.poset.comparable_pairs() {
            out.entry(self.degree(p)).or_default().push(p);
        }
        out
    }

    /// The grading induced on the subposet spanned by `indices`.
    pub fn restrict(&self, indices: &[usize]) -> Result<GradingMap> {
        let sub = Arc::new(self.poset.subposet(indices)?);
        let theta = indices.iter().map(|&i| self.theta[i]).collect();
        Ok(GradingMap { poset: sub, group: self.group.clone(), theta })
    }

    /// `hθσ`: `x ↦ h_{c(x)} · θ(σ⁻¹(x))`.
    pub fn act(&self, shifts: &[usize], sigma: &PosetAutomorphism) -> GradingMap {
        let comp = self.poset.component_of();
        let inv = sigma.inverse();
        let theta = (0..self.theta.len()).map(|x| self.group.mul(shifts[comp[x]], self.theta[inv.apply(x)])).collect();
        GradingMap { poset: self.poset.clone(), group: self.group.clone(), theta }
    }

    /// `θσ`: `x ↦ θ(σ⁻¹(x))`.
    pub fn permute(&self, sigma: &PosetAutomorphism) -> GradingMap {
        let k = self.poset.connected_components().len();
        self.act(&vec![self.group.identity(); k], sigma)
    }

    fn check_compatible(&self, other: &GradingMap) -> Result<()> {
        if *self.poset != *other.poset {
            return Err(Error::Mismatch("different posets".into()));
        }
        if *self.group != *other.group {
            return Err(Error::Mismatch("different groups".into()));
        }
        Ok(())
    }

    /// Finds `(h, σ)` with `other = h·self·σ`, if any.
    ///
    /// For each `σ ∈ Aut(P)` the shift on each component is forced by its
    /// least element `x₀`: `h = μ(x₀) (θσ)(x₀)⁻¹`; the candidate is then
    /// checked on every element.
    pub fn equivalent(&self, other: &GradingMap) -> Result<Option<EquivalenceWitness>> {
        self.check_compatible(other)?;
        let comps = self.poset.connected_components();
        for sigma in self.poset.automorphisms() {
            let moved = self.permute(&sigma);
            let shifts: Vec<usize> =
                comps.iter().map(|c| self.group.mul(other.theta[c[0]], self.group.inv(moved.theta[c[0]]))).collect();
            let ok = comps
                .iter()
                .zip(&shifts)
                .all(|(c, &h)| c.iter().all(|&x| other.theta[x] == self.group.mul(h, moved.theta[x])));
            if ok {
                return Ok(Some(EquivalenceWitness { shifts, sigma }));
            }
        }
        Ok(None)
    }

    /// Whether `witness` certifies `other = h·self·σ`.
    pub fn verify_witness(&self, other: &GradingMap, witness: &EquivalenceWitness) -> bool {
        self.check_compatible(other).is_ok()
            && witness.shifts.len() == self.poset.connected_components().len()
            && self.act(&witness.shifts, &witness.sigma).theta == other.theta
    }

    pub fn to_file(&self) -> GradingFile {
        GradingFile { group: self.group.name().to_string(), theta: self.names() }
    }
}

/// `{"group": "C3", "theta": ["1","h","h^2","1"]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingFile {
    pub group: String,
    pub theta: Vec<String>,
}

impl GradingFile {
    pub fn resolve(&self, poset: &Arc<Poset>) -> Result<GradingMap> {
        let group = Arc::new(FiniteGroup::from_spec(&self.group)?);
        GradingMap::from_names(poset, &group, &self.theta)
    }
}

/// Number of maps `P → G`, checked against `budget`.
pub fn check_budget(poset: &Poset, group: &FiniteGroup, budget: u128) -> Result<usize> {
    let needed = (group.order() as u128).checked_pow(poset.len() as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed as usize)
}

/// Map `θ ↔ code` with `θ[0]` most significant, so code order is
/// lexicographic order of the element-index sequences.
struct MapCodec {
    n: usize,
    m: usize,
}

impl MapCodec {
    fn decode(&self, mut code: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = code % self.m;
            code /= self.m;
        }
    }

    fn encode(&self, theta: &[usize]) -> usize {
        theta.iter().fold(0, |acc, &g| acc * self.m + g)
    }

    fn total(&self) -> usize {
        self.m.pow(self.n as u32)
    }
}

/// All shift vectors `h ∈ G^k`, in lexicographic order.
fn shift_vectors(group: &FiniteGroup, k: usize) -> Vec<Vec<usize>> {
    let codec = MapCodec { n: k, m: group.order() };
    (0..codec.total())
        .map(|c| {
            let mut h = vec![0; k];
            codec.decode(c, &mut h);
            h
        })
        .collect()
}

/// `|G|^(n−k)`.
pub fn count_distinct_gradings(poset: &Poset, group: &FiniteGroup) -> u128 {
    let k = poset.connected_components().len();
    (group.order() as u128).pow((poset.len() - k) as u32)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub formula: u128,
    /// Orbit count of `G^P` under the per-component shift action, when verified.
    pub enumerated: Option<u128>,
}

impl CountReport {
    pub fn agrees(&self) -> bool {
        self.enumerated.is_none_or(|e| e == self.formula)
    }
}

/// Counts distinct gradings; with `verify`, also enumerates shift orbits.
pub fn count_gradings(poset: &Poset, group: &FiniteGroup, verify: bool, budget: u128) -> Result<CountReport> {
    let formula = count_distinct_gradings(poset, group);
    if !verify {
        return Ok(CountReport { formula, enumerated: None });
    }
    check_budget(poset, group, budget)?;
    let comps = poset.component_of();
    let k = poset.connected_components().len();
    let codec = MapCodec { n: poset.len(), m: group.order() };
    let shifts = shift_vectors(group, k);
    let mut seen = vec![false; codec.total()];
    let mut theta = vec![0; codec.n];
    let mut image = vec![0; codec.n];
    let mut orbits = 0u128;
    for code in 0..codec.total() {
        if seen[code] {
            continue;
        }
        orbits += 1;
        codec.decode(code, &mut theta);
        for h in &shifts {
            for x in 0..codec.n {
                image[x] = group.mul(h[comps[x]], theta[x]);
            }
            seen[codec.encode(&image)] = true;
        }
    }
    Ok(CountReport { formula, enumerated: Some(orbits) })
}

#[derive(Clone, Debug)]
pub struct Classification {
    /// Lexicographically least map of each class, in increasing order.
    pub representatives: Vec<GradingMap>,
    /// Size of each class, aligned with `representatives`.
    pub class_sizes: Vec<usize>,
    pub orbit_count: u128,
    pub burnside_count: u128,
}

/// Classifies `G^P` up to `θ ∼ hθσ` by direct orbit enumeration and
/// cross-checks the count with Burnside's lemma over `G^k ⋊ Aut(P)`,
/// counting genuine fixed points `hθσ = θ`.
pub fn classify_gradings(poset: &Arc<Poset>, group: &Arc<FiniteGroup>, budget: u128) -> Result<Classification> {
    check_budget(poset, group, budget)?;
    let comps = poset.component_of();
    let k = poset.connected_components().len();
    let auts = poset.automorphisms();
    let inv_auts: Vec<PosetAutomorphism> = auts.iter().map(PosetAutomorphism::inverse).collect();
    let shifts = shift_vectors(group, k);
    let codec = MapCodec { n: poset.len(), m: group.order() };
    let n = codec.n;

    let act = |h: &[usize], sigma_inv: &PosetAutomorphism, theta: &[usize], out: &mut [usize]| {
        for x in 0..n {
            out[x] = group.mul(h[comps[x]], theta[sigma_inv.apply(x)]);
        }
    };

    let mut seen = vec![false; codec.total()];
    let mut theta = vec![0; n];
    let mut image = vec![0; n];
    let mut representatives = Vec::new();
    let mut class_sizes = Vec::new();
    for code in 0..codec.total() {
        if seen[code] {
            continue;
        }
        codec.decode(code, &mut theta);
        let mut size = 0;
        for si in &inv_auts {
            for h in &shifts {
                act(h, si, &theta, &mut image);
                let c = codec.encode(&image);
                if !seen[c] {
                    seen[c] = true;
                    size += 1;
                }
            }
        }
        representatives.push(GradingMap { poset: poset.clone(), group: group.clone(), theta: theta.clone() });
        class_sizes.push(size);
    }

    let mut fixed_total: u128 = 0;
    for si in &inv_auts {
        for h in &shifts {
            for code in 0..codec.total() {
                codec.decode(code, &mut theta);
                if (0..n).all(|x| theta[x] == group.mul(h[comps[x]], theta[si.apply(x)])) {
                    fixed_total += 1;
                }
            }
        }
    }
    let acting = (shifts.len() * auts.len()) as u128;
    debug_assert_eq!(fixed_total % acting, 0);
    Ok(Classification {
        orbit_count: representatives.len() as u128,
        burnside_count: fixed_total / acting,
        representatives,
        class_sizes,
    })
}

/// Every map `P → G` in lexicographic order.
pub fn all_gradings(poset: &Arc<Poset>, group: &Arc<FiniteGroup>, budget: u128) -> Result<Vec<GradingMap>> {
    check_budget(poset, group, budget)?;
    let codec = MapCodec { n: poset.len(), m: group.order() };
    Ok((0..codec.total())
        .map(|code| {
            let mut theta = vec![0; codec.n];
            codec.decode(code, &mut theta);
            GradingMap { poset: poset.clone(), group: group.clone(), theta }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn setup(p: Poset, g: &str) -> (Arc<Poset>, Arc<FiniteGroup>) {
        (Arc::new(p), Arc::new(FiniteGroup::from_spec(g).unwrap()))
    }

    fn map(p: &Arc<Poset>, g: &Arc<FiniteGroup>, names: &[&str]) -> GradingMap {
        GradingMap::from_names(p, g, names).unwrap()
    }

    #[test]
    fn support_examples() {
        let (p, g) = setup(corpus::example(), "C3");
        assert_eq!(GradingMap::trivial(&p, &g).support(), BTreeSet::from([0]));
        assert_eq!(map(&p, &g, &["1", "h", "h^2", "1"]).support(), BTreeSet::from([0, 1, 2]));
        let (a, g) = setup(Poset::antichain(3).unwrap(), "C3");
        assert_eq!(map(&a, &g, &["h", "1", "h^2"]).support(), BTreeSet::from([0]));
    }

    #[test]
    fn grade_of_pair_examples() {
        let (p, g) = setup(corpus::example(), "C3");
        let theta = map(&p, &g, &["1", "h", "h^2", "1"]);
        let mu = map(&p, &g, &["1", "h^2", "h", "1"]);
        assert_eq!(theta.grade_of_pair(2, 2).unwrap(), g.identity());
        assert_eq!(theta.grade_of_pair(1, 3).unwrap(), g.element("h^2").unwrap());
        assert_eq!(mu.grade_of_pair(1, 3).unwrap(), g.element("h").unwrap());
        assert_eq!(theta.grade_of_pair(0, 1).unwrap_err(), Error::NotComparable(0, 1));
    }

    #[test]
    fn component_examples() {
        let (p, g) = setup(corpus::example(), "C3");
        assert_eq!(GradingMap::trivial(&p, &g).component_basis(0).basis, p.comparable_pairs());
        let theta = map(&p, &g, &["1", "h", "h^2", "1"]);
        assert_eq!(theta.component_basis(1).basis, vec![(1, 2)]);
        assert_eq!(theta.component_basis(2).basis, vec![(1, 3)]);
        let (c2, g2) = setup(Poset::chain(2).unwrap(), "C2");
        assert!(GradingMap::trivial(&c2, &g2).component_basis(1).basis.is_empty());
    }

    #[test]
    fn counting_examples() {
        let (c3, g) = setup(Poset::chain(3).unwrap(), "C2");
        let r = count_gradings(&c3, &g, true, DEFAULT_BUDGET).unwrap();
        assert_eq!(r, CountReport { formula: 4, enumerated: Some(4) });
        let (a3, g) = setup(Poset::antichain(3).unwrap(), "C2");
        assert_eq!(count_gradings(&a3, &g, true, DEFAULT_BUDGET).unwrap().enumerated, Some(1));
        let (ex, g) = setup(corpus::example(), "C3");
        let r = count_gradings(&ex, &g, true, DEFAULT_BUDGET).unwrap();
        assert_eq!(r, CountReport { formula: 27, enumerated: Some(27) });
    }

    #[test]
    fn budget_is_enforced() {
        let (c4, g) = setup(Poset::chain(4).unwrap(), "C3");
        assert_eq!(classify_gradings(&c4, &g, 80).unwrap_err(), Error::BudgetExceeded { needed: 81, budget: 80 });
        assert!(count_gradings(&c4, &g, false, 1).is_ok());
    }

    #[test]
    fn equivalence_examples() {
        let (p, g) = setup(corpus::example(), "C3");
        let theta = map(&p, &g, &["1", "h", "h^2", "1"]);
        let mu = map(&p, &g, &["1", "h^2", "h", "1"]);
        let w = theta.equivalent(&theta).unwrap().unwrap();
        assert_eq!(w.shifts, vec![0]);
        assert!(w.sigma.is_identity());
        assert_eq!(theta.equivalent(&mu).unwrap(), None);

        let (c2, g) = setup(Poset::chain(2).unwrap(), "C3");
        let a = map(&c2, &g, &["1", "h"]);
        let b = map(&c2, &g, &["h", "h^2"]);
        let w = a.equivalent(&b).unwrap().unwrap();
        assert_eq!(w.shifts, vec![g.element("h").unwrap()]);
        assert!(w.sigma.is_identity());
        assert!(a.verify_witness(&b, &w));
    }

    #[test]
    fn equivalence_mismatch() {
        let (c2, g3) = setup(Poset::chain(2).unwrap(), "C3");
        let g2 = Arc::new(FiniteGroup::from_spec("C2").unwrap());
        let a = GradingMap::trivial(&c2, &g3);
        let b = GradingMap::trivial(&c2, &g2);
        assert!(matches!(a.equivalent(&b), Err(Error::Mismatch(_))));
    }

    #[test]
    fn classification_examples() {
        let (c2, g) = setup(Poset::chain(2).unwrap(), "C2");
        let cls = classify_gradings(&c2, &g, DEFAULT_BUDGET).unwrap();
        assert_eq!(cls.orbit_count, 2);
        assert_eq!(cls.burnside_count, 2);
        assert_eq!(cls.representatives[0].theta(), &[0, 0]);
        assert_eq!(cls.representatives[1].theta(), &[0, 1]);

        let (c1, g) = setup(Poset::chain(1).unwrap(), "S3");
        assert_eq!(classify_gradings(&c1, &g, DEFAULT_BUDGET).unwrap().orbit_count, 1);

        let (ex, g) = setup(corpus::example(), "C3");
        let cls = classify_gradings(&ex, &g, DEFAULT_BUDGET).unwrap();
        assert_eq!((cls.orbit_count, cls.burnside_count), (27, 27));
        assert_eq!(cls.class_sizes.iter().sum::<usize>(), 81);
    }

    #[test]
    fn nonabelian_shift_is_on_the_left() {
        let (c2, g) = setup(Poset::chain(2).unwrap(), "S3");
        let a = g.element("(12)").unwrap();
        let b = g.element("(23)").unwrap();
        let theta = GradingMap::new(&c2, &g, vec![g.identity(), b]).unwrap();
        let shifted = theta.act(&[a], &PosetAutomorphism::identity(2));
        assert_eq!(shifted.theta(), &[a, g.mul(a, b)]);
        // left shifts preserve every degree θ_x⁻¹θ_y
        assert_eq!(shifted.components(), theta.components());
    }

    #[test]
    fn grading_file_round_trip() {
        let (p, g) = setup(corpus::example(), "C3");
        let theta = map(&p, &g, &["1", "h", "h^2", "1"]);
        let file = theta.to_file();
        assert_eq!(file.theta, vec!["1", "h", "h^2", "1"]);
        assert_eq!(file.resolve(&p).unwrap(), theta);
        let bad = GradingFile { group: "C3".into(), theta: vec!["1".into(), "q".into(), "1".into(), "1".into()] };
        assert_eq!(bad.resolve(&p).unwrap_err(), Error::UnknownGroupElement("q".into()));
    }
}
