//! Seeded random instances for property checks.

use std::sync::Arc;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::IncidenceFunction;
use crate::grading::GradingMap;
use crate::group::FiniteGroup;
use crate::linalg::{ratio, Rational};
use crate::poset::{Poset, PosetAutomorphism};

pub type Rng64 = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational `a/b` with `|a| ≤ 3`, `1 ≤ b ≤ 3`.
pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Arbitrary element; roughly a third of the entries are zero.
pub fn function<R: Rng>(poset: &Arc<Poset>, rng: &mut R) -> IncidenceFunction {
    let entries: Vec<_> = poset.comparable_pairs().into_iter().map(|(x, y)| (x, y, rational(rng))).collect();
    IncidenceFunction::from_entries(poset, entries).expect("pairs are comparable")
}

/// Element with nonzero diagonal.
pub fn invertible<R: Rng>(poset: &Arc<Poset>, rng: &mut R) -> IncidenceFunction {
    let entries: Vec<_> = poset
        .comparable_pairs()
        .into_iter()
        .map(|(x, y)| (x, y, if x == y { nonzero_rational(rng) } else { rational(rng) }))
        .collect();
    IncidenceFunction::from_entries(poset, entries).expect("pairs are comparable")
}

/// Random multiplicative function.
///
/// Values are drawn on the Hasse covers and extended along paths; when the
/// Hasse diagram has cycles the draw may be inconsistent, in which case a
/// coboundary `a(y)/a(x)` is used instead.
pub fn multiplicative<R: Rng>(poset: &Arc<Poset>, rng: &mut R) -> IncidenceFunction {
    let n = poset.len();
    let mut value: Vec<Option<Rational>> = vec![None; n * n];
    for x in 0..n {
        value[x * n + x] = Some(Rational::from_integer(1.into()));
    }
    for &(a, b) in poset.covers() {
        value[a * n + b] = Some(nonzero_rational(rng));
    }
    let order = poset.linear_extension();
    for &y in &order {
        for &x in order.iter().rev() {
            if x == y || !poset.leq(x, y) || value[x * n + y].is_some() {
                continue;
            }
            let &(z, _) = poset
                .covers()
                .iter()
                .find(|&&(z, t)| t == y && poset.leq(x, z))
                .expect("x < y has a lower cover of y above x");
            let v = value[x * n + z].clone().expect("filled earlier") * value[z * n + y].clone().expect("cover");
            value[x * n + y] = Some(v);
        }
    }
    let entries: Vec<_> = poset
        .comparable_pairs()
        .into_iter()
        .map(|(x, y)| (x, y, value[x * n + y].clone().expect("all comparable pairs filled")))
        .collect();
    let s = IncidenceFunction::from_entries(poset, entries).expect("pairs are comparable");
    if s.is_multiplicative() {
        return s;
    }
    let a: Vec<Rational> = (0..n).map(|_| nonzero_rational(rng)).collect();
    let entries: Vec<_> = poset.comparable_pairs().into_iter().map(|(x, y)| (x, y, &a[y] / &a[x])).collect();
    IncidenceFunction::from_entries(poset, entries).expect("pairs are comparable")
}

pub fn automorphism<R: Rng>(auts: &[PosetAutomorphism], rng: &mut R) -> PosetAutomorphism {
    auts.choose(rng).expect("Aut(P) contains the identity").clone()
}

pub fn grading<R: Rng>(poset: &Arc<Poset>, group: &Arc<FiniteGroup>, rng: &mut R) -> GradingMap {
    let theta = (0..poset.len()).map(|_| rng.gen_range(0..group.order())).collect();
    GradingMap::new(poset, group, theta).expect("values are group elements")
}
