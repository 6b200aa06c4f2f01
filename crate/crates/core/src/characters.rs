//! Weight multiplicities of integrable highest-weight modules `L_lambda`,
//! truncated by d-degree, and the characters built from them.
//!
//! Multiplicities come from the Freudenthal recursion
//!
//! ```text
//! ((lambda+rho, lambda+rho) - (mu+rho, mu+rho)) m(mu)
//!     = 2 sum_{alpha > 0} mult(alpha) sum_{j >= 1} (mu + j alpha, alpha) m(mu + j alpha)
//! ```
//!
//! run over `mu = lambda - beta` in increasing depth of `beta`. The Weyl-Kac
//! character identity is kept independent of it and serves as the check.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bounds;
use crate::cartan::{format_labels, AffineAlgebra, AlgebraId, RootVec, Weight};
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::weyl::{shifted_action, WeylEnumeration};

/// Multiplicities `mult(lambda - beta)` for every `beta` with `n_0(beta) <= trunc`.
#[derive(Clone, Debug)]
pub struct MultTable {
    algebra: AlgebraId,
    highest: Vec<i64>,
    trunc: i64,
    entries: HashMap<RootVec, BigInt>,
    // h'-weight -> (degree, multiplicity), ascending degree
    by_labels: HashMap<Vec<i64>, Vec<(i64, BigInt)>>,
}

impl MultTable {
    pub(crate) fn from_entries(
        alg: &AffineAlgebra,
        highest: Vec<i64>,
        trunc: i64,
        entries: HashMap<RootVec, BigInt>,
    ) -> Self {
        let mut by_labels: HashMap<Vec<i64>, Vec<(i64, BigInt)>> = HashMap::new();
        for (beta, m) in &entries {
            let w = alg.lower(&Weight::from_labels(highest.clone()), beta);
            by_labels.entry(w.labels).or_default().push((beta.degree(), m.clone()));
        }
        for v in by_labels.values_mut() {
            v.sort_by_key(|(d, _)| *d);
        }
        MultTable {
            algebra: alg.id(),
            highest,
            trunc,
            entries,
            by_labels,
        }
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn highest(&self) -> &[i64] {
        &self.highest
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mult(&self, beta: &RootVec) -> BigInt {
        self.entries.get(beta).cloned().unwrap_or_default()
    }

    /// Entries sorted by `(depth, coordinates)`.
    pub fn sorted_entries(&self) -> Vec<(&RootVec, &BigInt)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by(|(a, _), (b, _)| (a.depth(), &a.0).cmp(&(b.depth(), &b.0)));
        v
    }

    /// Distinct `h'`-weights occurring up to the truncation.
    pub fn h_weights(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.by_labels.keys()
    }

    /// `h'`-weight -> `(degree, multiplicity)` pairs in ascending degree.
    pub(crate) fn weight_strings(&self) -> &HashMap<Vec<i64>, Vec<(i64, BigInt)>> {
        &self.by_labels
    }

    /// The table cut down to `trunc`.
    pub fn slice(&self, alg: &AffineAlgebra, trunc: i64) -> MultTable {
        let entries = self
            .entries
            .iter()
            .filter(|(b, _)| b.degree() <= trunc)
            .map(|(b, m)| (b.clone(), m.clone()))
            .collect();
        MultTable::from_entries(alg, self.highest.clone(), trunc.min(self.trunc), entries)
    }

    fn series_at(&self, nu: &[i64], trunc: i64) -> QSeries {
        let pairs = self
            .by_labels
            .get(nu)
            .into_iter()
            .flatten()
            .filter(|(d, _)| *d <= trunc)
            .map(|(d, m)| (*d, m.clone()));
        QSeries::from_coeffs(0, trunc, pairs)
    }
}

impl PartialEq for MultTable {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra
            && self.highest == other.highest
            && self.trunc == other.trunc
            && self.entries == other.entries
    }
}

/// Freudenthal over the given positive-root list; the order of `roots` must
/// not matter.
pub(crate) fn freudenthal(
    alg: &AffineAlgebra,
    lambda: &[i64],
    trunc: i64,
    roots: &[(RootVec, i64)],
) -> Result<HashMap<RootVec, BigInt>> {
    let n = alg.n_nodes();
    let lam_rho: Vec<i64> = lambda.iter().map(|l| l + 1).collect();
    let lam_on_root: Vec<i64> = roots.iter().map(|(a, _)| alg.pair_weight_scaled(lambda, a)).collect();

    let mut entries: HashMap<RootVec, BigInt> = HashMap::new();
    let zero = RootVec::zero(n);
    entries.insert(zero.clone(), BigInt::one());
    let mut frontier = vec![zero];

    while !frontier.is_empty() {
        let mut cands: Vec<RootVec> = frontier
            .iter()
            .flat_map(|b| {
                (0..n).map(move |i| {
                    let mut c = b.clone();
                    c.0[i] += 1;
                    c
                })
            })
            .filter(|c| c.degree() <= trunc)
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        cands.sort();

        let mut next = Vec::new();
        for beta in cands {
            let bb = alg.pair_roots_scaled(&beta, &beta);
            // |lambda - beta|^2 <= |lambda|^2 for every weight
            if 2 * alg.pair_weight_scaled(lambda, &beta) - bb < 0 {
                continue;
            }
            let den = 2 * alg.pair_weight_scaled(&lam_rho, &beta) - bb;
            if den <= 0 {
                return Err(Error::Inconsistency(format!(
                    "Freudenthal denominator {den} at beta {:?} for {}",
                    beta.0,
                    format_labels(lambda)
                )));
            }
            let mut acc = BigInt::zero();
            for ((alpha, am), lam_alpha) in roots.iter().zip(&lam_on_root) {
                if alpha.0.iter().zip(&beta.0).any(|(a, b)| a > b) {
                    continue;
                }
                let mut gamma = beta.clone();
                loop {
                    for (g, a) in gamma.0.iter_mut().zip(&alpha.0) {
                        *g -= a;
                    }
                    if !gamma.is_nonnegative() {
                        break;
                    }
                    if let Some(m) = entries.get(&gamma) {
                        // (lambda - gamma, alpha)
                        let p = lam_alpha - alg.pair_roots_scaled(&gamma, alpha);
                        acc += m * BigInt::from(p * am);
                    }
                }
            }
            acc *= 2;
            let (q, r) = acc.div_rem(&BigInt::from(den));
            if !r.is_zero() {
                return Err(Error::Inconsistency(format!(
                    "non-integral multiplicity {acc}/{den} at beta {:?}",
                    beta.0
                )));
            }
            if q.is_negative() {
                return Err(Error::Inconsistency(format!("negative multiplicity at beta {:?}", beta.0)));
            }
            if !q.is_zero() {
                entries.insert(beta.clone(), q);
                next.push(beta);
            }
        }
        frontier = next;
    }
    Ok(entries)
}

pub fn weight_multiplicities(alg: &AffineAlgebra, lambda: &[i64], trunc: i64) -> Result<MultTable> {
    alg.check_dominant(lambda)?;
    let trunc = trunc.max(0);
    let roots = alg.positive_roots_to_degree(trunc);
    let entries = freudenthal(alg, lambda, trunc, &roots)?;
    Ok(MultTable::from_entries(alg, lambda.to_vec(), trunc, entries))
}

/// `ch_q(L_lambda)^{nu'} = sum mult(lambda - beta) q^{n_0(beta)}` over the
/// `delta`-string of `beta` restricting to `nu'`, truncated at `trunc`.
pub fn weight_space_character(
    alg: &AffineAlgebra,
    table: &MultTable,
    nu: &[i64],
    trunc: i64,
) -> Result<QSeries> {
    alg.check_arity(nu)?;
    let k = alg.level(&table.highest);
    let found = alg.level(nu);
    if found != k {
        return Err(Error::LevelMismatch { expected: k, found });
    }
    if trunc > table.trunc {
        return Err(Error::InsufficientTruncation {
            needed: trunc,
            available: table.trunc,
        });
    }
    Ok(table.series_at(nu, trunc))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StringFunction {
    /// The weight space has nothing in degrees `0..=trunc`.
    Empty { trunc: i64 },
    /// `q^{-offset} ch_q(L_lambda)^{mu'}`, with `offset` its valuation.
    Series { offset: i64, series: QSeries },
}

pub fn string_function(alg: &AffineAlgebra, table: &MultTable, mu: &[i64], trunc: i64) -> Result<StringFunction> {
    let ch = weight_space_character(alg, table, mu, trunc)?;
    Ok(match ch.valuation() {
        None => StringFunction::Empty { trunc },
        Some(offset) => StringFunction::Series {
            offset,
            series: ch.shift(-offset).with_min_deg(0)?,
        },
    })
}

/// Nonzero coefficients of
/// `sum_w (-1)^l(w) e^{w*lambda} - ch L_lambda * prod_{alpha>0} (1 - e^{-alpha})^{mult alpha}`
/// with monomials `e^{lambda - beta}` keyed by `beta`, `n_0(beta) <= trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub trunc: i64,
    pub weyl_terms: usize,
    pub nonzero: BTreeMap<RootVec, BigInt>,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.nonzero.is_empty()
    }
}

pub fn character_identity_residual(alg: &AffineAlgebra, lambda: &[i64], trunc: i64) -> Result<Residual> {
    let table = weight_multiplicities(alg, lambda, trunc)?;
    character_identity_residual_with(alg, &table)
}

pub fn character_identity_residual_with(alg: &AffineAlgebra, table: &MultTable) -> Result<Residual> {
    let lambda = table.highest();
    let trunc = table.trunc();
    let lam = Weight::from_labels(lambda.to_vec());

    let mut lhs: HashMap<RootVec, BigInt> = HashMap::new();
    let max_len = bounds::orbit_length_bound(alg, lambda, trunc);
    let mut en = WeylEnumeration::new(alg);
    en.ensure(max_len);
    let mut weyl_terms = 0;
    for w in en.iter() {
        let img = shifted_action(alg, w, &lam);
        if img.dval > trunc {
            continue;
        }
        let diff: Vec<i64> = lambda.iter().zip(&img.labels).map(|(a, b)| a - b).collect();
        let beta = alg
            .root_from_labels(&diff, img.dval)
            .ok_or_else(|| Error::Inconsistency(format!("w*lambda off the root lattice: {:?}", w.word)))?;
        let sign = if w.length % 2 == 0 { 1 } else { -1 };
        *lhs.entry(beta).or_default() += sign;
        weyl_terms += 1;
    }

    let mut rhs: HashMap<RootVec, BigInt> = table.entries.clone();
    for (alpha, mult) in alg.positive_roots_to_degree(trunc) {
        for _ in 0..mult {
            let mut next = rhs.clone();
            for (beta, c) in &rhs {
                let shifted = RootVec(beta.0.iter().zip(&alpha.0).map(|(b, a)| b + a).collect());
                if shifted.degree() <= trunc {
                    *next.entry(shifted).or_default() -= c;
                }
            }
            next.retain(|_, c| !c.is_zero());
            rhs = next;
        }
    }

    let mut nonzero = BTreeMap::new();
    let keys: HashSet<&RootVec> = lhs.keys().chain(rhs.keys()).collect();
    for k in keys {
        let d = lhs.get(k).cloned().unwrap_or_default() - rhs.get(k).cloned().unwrap_or_default();
        if !d.is_zero() {
            nonzero.insert(k.clone(), d);
        }
    }
    Ok(Residual {
        trunc,
        weyl_terms,
        nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::simple_reflection;

    fn alg(s: &str) -> AffineAlgebra {
        AffineAlgebra::from_id(s.parse().unwrap())
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn basic_module_delta_string() {
        let a = alg("A1~1");
        let t = weight_multiplicities(&a, &[1, 0], 5).unwrap();
        let along: Vec<BigInt> = (0..=5).map(|n| t.mult(&RootVec(vec![n, n]))).collect();
        assert_eq!(along, big(&[1, 1, 2, 3, 5, 7]));
        let ch = weight_space_character(&a, &t, &[1, 0], 5).unwrap();
        assert_eq!(ch.dense(), big(&[1, 1, 2, 3, 5, 7]));
    }

    #[test]
    fn highest_weight_has_multiplicity_one() {
        for s in ["A1~1", "A2~1", "G2~1"] {
            let a = alg(s);
            for lam in a.dominant_weights(2) {
                let t = weight_multiplicities(&a, &lam.labels, 1).unwrap();
                assert_eq!(t.mult(&RootVec::zero(a.n_nodes())), BigInt::one());
            }
        }
    }

    #[test]
    fn single_step_below_highest_weight() {
        let a = alg("A1~1");
        let t = weight_multiplicities(&a, &[0, 1], 2).unwrap();
        assert_eq!(t.mult(&RootVec(vec![0, 1])), BigInt::one());
        assert_eq!(t.mult(&RootVec(vec![1, 0])), BigInt::zero());
    }

    #[test]
    fn rejects_non_dominant() {
        let a = alg("A1~1");
        assert!(matches!(weight_multiplicities(&a, &[2, -1], 3), Err(Error::NotDominant(_))));
        assert!(matches!(weight_multiplicities(&a, &[1, 0, 0], 3), Err(Error::WrongArity { .. })));
    }

    #[test]
    fn character_contracts() {
        let a = alg("A1~1");
        let t = weight_multiplicities(&a, &[1, 0], 4).unwrap();
        let top = weight_space_character(&a, &t, &[1, 0], 4).unwrap();
        assert_eq!(top.coeff(0), Some(BigInt::one()));
        // finite weight 3 at level 1 is outside the degree-0 hull
        let far = weight_space_character(&a, &t, &[-2, 3], 4).unwrap();
        assert_eq!(far.coeff(0), Some(BigInt::zero()));
        assert!(matches!(
            weight_space_character(&a, &t, &[2, 0], 4),
            Err(Error::LevelMismatch { expected: 1, found: 2 })
        ));
        assert!(matches!(
            weight_space_character(&a, &t, &[1, 0], 9),
            Err(Error::InsufficientTruncation { .. })
        ));
    }

    #[test]
    fn string_function_normalization() {
        let a = alg("A1~1");
        let t = weight_multiplicities(&a, &[1, 0], 6).unwrap();
        match string_function(&a, &t, &[1, 0], 6).unwrap() {
            StringFunction::Series { offset, series } => {
                assert_eq!(offset, 0);
                assert_eq!(series, weight_space_character(&a, &t, &[1, 0], 6).unwrap());
            }
            other => panic!("{other:?}"),
        }
        // finite weight 2 first appears at degree 1
        match string_function(&a, &t, &[-1, 2], 6).unwrap() {
            StringFunction::Series { offset, series } => {
                assert_eq!(offset, 1);
                assert_eq!(series.coeff(0), Some(BigInt::one()));
                assert_eq!(series.trunc(), 5);
            }
            other => panic!("{other:?}"),
        }
        let odd = weight_multiplicities(&a, &[0, 1], 6).unwrap();
        assert_eq!(
            string_function(&a, &odd, &[1, 0], 6).unwrap(),
            StringFunction::Empty { trunc: 6 }
        );
    }

    #[test]
    fn root_order_does_not_matter() {
        let a = alg("A2~1");
        let mut roots = a.positive_roots_to_degree(4);
        let fwd = freudenthal(&a, &[1, 1, 0], 4, &roots).unwrap();
        roots.reverse();
        roots.rotate_left(7);
        let back = freudenthal(&a, &[1, 1, 0], 4, &roots).unwrap();
        assert_eq!(fwd, back);
    }

    #[test]
    fn finite_weyl_symmetry_of_each_degree() {
        for (s, lam) in [("A1~1", vec![1, 2]), ("A2~1", vec![0, 1, 1]), ("G2~1", vec![1, 0, 0])] {
            let a = alg(s);
            let t = weight_multiplicities(&a, &lam, 3).unwrap();
            let hw = Weight::from_labels(lam.clone());
            for (beta, m) in t.sorted_entries() {
                let mu = a.lower(&hw, beta);
                for i in 1..a.n_nodes() {
                    let img = simple_reflection(&a, i).unwrap().apply(&mu);
                    assert_eq!(img.dval, mu.dval);
                    let diff: Vec<i64> = lam.iter().zip(&img.labels).map(|(x, y)| x - y).collect();
                    let b2 = a.root_from_labels(&diff, img.dval).unwrap();
                    assert_eq!(&t.mult(&b2), m, "{s} {beta:?} s_{i}");
                }
            }
        }
    }

    #[test]
    fn truncation_is_monotone() {
        let a = alg("A1~1");
        let small = weight_multiplicities(&a, &[1, 1], 4).unwrap();
        let large = weight_multiplicities(&a, &[1, 1], 7).unwrap();
        assert_eq!(large.slice(&a, 4), small);
    }

    #[test]
    fn residual_vanishes() {
        let a = alg("A1~1");
        for (lam, n) in [(vec![1, 0], 6), (vec![0, 0], 3), (vec![2, 1], 4)] {
            let r = character_identity_residual(&a, &lam, n).unwrap();
            assert!(r.is_zero(), "{lam:?}: {:?}", r.nonzero);
            assert!(r.weyl_terms > 0);
        }
        let g = alg("G2~1");
        assert!(character_identity_residual(&g, &[0, 1, 0], 2).unwrap().is_zero());
    }

    #[test]
    fn residual_detects_a_corrupted_table() {
        let a = alg("A1~1");
        let mut t = weight_multiplicities(&a, &[1, 0], 4).unwrap();
        *t.entries.get_mut(&RootVec(vec![2, 2])).unwrap() += 1;
        let r = character_identity_residual_with(&a, &t).unwrap();
        assert!(!r.is_zero());
    }
}
