//! The affine Weyl group, enumerated by length, and its shifted action
//! `w * lambda = w(lambda + rho) - rho`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cartan::{AffineAlgebra, Weight};
use crate::error::{Error, Result};

/// A Weyl group element stored as its exact action on `(labels, dval)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub length: usize,
    /// Row-major `(r+2) x (r+2)` matrix acting on `(labels..., dval)`.
    pub matrix: Vec<i64>,
    /// One reduced word `s_{word[0]} s_{word[1]} ...`.
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(alg: &AffineAlgebra) -> Self {
        let n = alg.n_nodes() + 1;
        let mut matrix = vec![0; n * n];
        for i in 0..n {
            matrix[i * n + i] = 1;
        }
        WeylElement {
            length: 0,
            matrix,
            word: Vec::new(),
        }
    }

    fn dim(&self) -> usize {
        (self.matrix.len() as f64).sqrt() as usize
    }

    /// Plain (unshifted) action.
    pub fn apply(&self, lambda: &Weight) -> Weight {
        let n = self.dim();
        let x: Vec<i64> = lambda.labels.iter().copied().chain([lambda.dval]).collect();
        let y: Vec<i64> = (0..n)
            .map(|r| (0..n).map(|c| self.matrix[r * n + c] * x[c]).sum())
            .collect();
        Weight {
            labels: y[..n - 1].to_vec(),
            dval: y[n - 1],
        }
    }

    fn compose_matrix(&self, rhs: &[i64]) -> Vec<i64> {
        let n = self.dim();
        let mut out = vec![0; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.matrix[r * n + k];
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] += a * rhs[k * n + c];
                }
            }
        }
        out
    }

    /// `self * s_i`, with the length supplied by the caller.
    fn times_simple(&self, alg: &AffineAlgebra, i: usize, length: usize) -> WeylElement {
        let mut word = self.word.clone();
        word.push(i);
        WeylElement {
            length,
            matrix: self.compose_matrix(&reflection_matrix(alg, i)),
            word,
        }
    }

    /// `s_i * self` as a matrix.
    pub fn left_simple_matrix(&self, alg: &AffineAlgebra, i: usize) -> Vec<i64> {
        let s = WeylElement {
            length: 1,
            matrix: reflection_matrix(alg, i),
            word: vec![i],
        };
        s.compose_matrix(&self.matrix)
    }
}

fn reflection_matrix(alg: &AffineAlgebra, i: usize) -> Vec<i64> {
    // s_i(x) = x - x_i alpha_i, alpha_i = (a_{0i}, ..., a_{ri}; -delta_{i0})
    let nodes = alg.n_nodes();
    let n = nodes + 1;
    let mut alpha: Vec<i64> = (0..nodes).map(|j| alg.gcm()[j][i]).collect();
    alpha.push(if i == 0 { -1 } else { 0 });
    let mut m = vec![0; n * n];
    for r in 0..n {
        m[r * n + r] = 1;
        m[r * n + i] -= alpha[r];
    }
    m
}

pub fn simple_reflection(alg: &AffineAlgebra, i: usize) -> Result<WeylElement> {
    if i > alg.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            rank: alg.rank(),
        });
    }
    Ok(WeylElement {
        length: 1,
        matrix: reflection_matrix(alg, i),
        word: vec![i],
    })
}

pub fn shifted_action(alg: &AffineAlgebra, w: &WeylElement, lambda: &Weight) -> Weight {
    let rho = alg.rho();
    let shifted = Weight {
        labels: lambda.labels.iter().zip(&rho.labels).map(|(a, b)| a + b).collect(),
        dval: lambda.dval + rho.dval,
    };
    let img = w.apply(&shifted);
    Weight {
        labels: img.labels.iter().zip(&rho.labels).map(|(a, b)| a - b).collect(),
        dval: img.dval - rho.dval,
    }
}

/// Layers of the Weyl group by length, grown on demand.
///
/// Layer `p + 1` is `{ w s_i : w in layer p }` minus everything already seen;
/// elements are identified by their action matrix, which is faithful.
#[derive(Clone, Debug)]
pub struct WeylEnumeration {
    alg: AffineAlgebra,
    layers: Vec<Arc<[WeylElement]>>,
    index: HashMap<Vec<i64>, usize>,
}

impl WeylEnumeration {
    pub fn new(alg: &AffineAlgebra) -> Self {
        let e = WeylElement::identity(alg);
        let mut index = HashMap::new();
        index.insert(e.matrix.clone(), 0);
        WeylEnumeration {
            alg: alg.clone(),
            layers: vec![Arc::from(vec![e])],
            index,
        }
    }

    /// Highest length enumerated so far.
    pub fn max_length(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn ensure(&mut self, max_length: usize) {
        while self.layers.len() <= max_length {
            let p = self.layers.len();
            let prev = self.layers[p - 1].clone();
            let mut next = Vec::new();
            for w in prev.iter() {
                for i in 0..self.alg.n_nodes() {
                    let cand = w.times_simple(&self.alg, i, p);
                    if self.index.contains_key(&cand.matrix) {
                        continue;
                    }
                    self.index.insert(cand.matrix.clone(), p);
                    next.push(cand);
                }
            }
            self.layers.push(Arc::from(next));
        }
    }

    pub fn layer(&self, p: usize) -> Option<Arc<[WeylElement]>> {
        self.layers.get(p).cloned()
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.len()).collect()
    }

    /// Length of the element with this action matrix, if it was enumerated.
    pub fn length_of(&self, matrix: &[i64]) -> Option<usize> {
        self.index.get(matrix).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeylElement> {
        self.layers.iter().flat_map(|l| l.iter())
    }
}

/// Layers `0..=max_length` of the Weyl group.
pub fn enumerate_weyl(alg: &AffineAlgebra, max_length: usize) -> Vec<Vec<WeylElement>> {
    let mut en = WeylEnumeration::new(alg);
    en.ensure(max_length);
    en.layers.iter().map(|l| l.to_vec()).collect()
}

/// sl2 coordinates `(i, k, m)`: `h_0`-eigenvalue, level and d-value.
pub fn ikm_to_weight(i: i64, k: i64, m: i64) -> Weight {
    Weight {
        labels: vec![k - i, i],
        dval: m,
    }
}

pub fn weight_to_ikm(w: &Weight) -> (i64, i64, i64) {
    let i = w.labels[1];
    (i, w.labels[0] + i, w.dval)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> AffineAlgebra {
        AffineAlgebra::from_id(s.parse().unwrap())
    }

    /// Coefficients of the affine Poincare series
    /// `W_fin(t) / prod_i (1 - t^{e_i})`, `e_i` the exponents.
    fn poincare(exponents: &[usize], terms: usize) -> Vec<i64> {
        // W_fin(t) = prod_i (1 + t + ... + t^{e_i})
        let mut s = vec![0i64; terms];
        s[0] = 1;
        for &e in exponents {
            let mut next = vec![0i64; terms];
            for (d, &c) in s.iter().enumerate() {
                for k in 0..=e {
                    if d + k < terms {
                        next[d + k] += c;
                    }
                }
            }
            s = next;
        }
        for &e in exponents {
            // divide by (1 - t^e)
            for d in e..terms {
                s[d] += s[d - e];
            }
        }
        s
    }

    #[test]
    fn layer_sizes_match_poincare_series() {
        for (s, exps) in [
            ("A1~1", vec![1]),
            ("A2~1", vec![1, 2]),
            ("B2~1", vec![1, 3]),
            ("G2~1", vec![1, 5]),
            ("A3~1", vec![1, 2, 3]),
        ] {
            let a = alg(s);
            let mut en = WeylEnumeration::new(&a);
            en.ensure(9);
            let sizes: Vec<i64> = en.layer_sizes().into_iter().map(|x| x as i64).collect();
            assert_eq!(sizes, poincare(&exps, 10), "{s}");
        }
    }

    #[test]
    fn a1_and_a2_small_layers() {
        let sizes: Vec<usize> = enumerate_weyl(&alg("A1~1"), 4).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 2, 2, 2]);
        let sizes: Vec<usize> = enumerate_weyl(&alg("A2~1"), 3).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 6, 9]);
        assert_eq!(enumerate_weyl(&alg("E6~1"), 0).len(), 1);
    }

    #[test]
    fn reflections_are_involutions_fixing_level() {
        for s in ["A1~1", "A2~1", "G2~1", "B3~1"] {
            let a = alg(s);
            let lam = Weight::new((0..a.n_nodes() as i64).map(|x| x * 2 - 1).collect(), 3);
            for i in 0..a.n_nodes() {
                let r = simple_reflection(&a, i).unwrap();
                let img = r.apply(&lam);
                assert_eq!(r.apply(&img), lam);
                assert_eq!(a.level(&img.labels), a.level(&lam.labels));
                if i != 0 {
                    assert_eq!(img.dval, lam.dval);
                }
            }
        }
        assert!(simple_reflection(&alg("A1~1"), 2).is_err());
    }

    #[test]
    fn sl2_plain_reflections() {
        let a = alg("A1~1");
        let (i, k, m) = (1, 3, 5);
        let lam = ikm_to_weight(i, k, m);
        let s1 = simple_reflection(&a, 1).unwrap();
        assert_eq!(weight_to_ikm(&s1.apply(&lam)), (-i, k, m));
        let s0 = simple_reflection(&a, 0).unwrap();
        let img = s0.apply(&lam);
        assert_eq!(img.dval, m + (k - i));
        assert_eq!(img.labels, vec![-(k - i), 2 * k - i]);
    }

    #[test]
    fn shifted_action_examples() {
        let a = alg("A1~1");
        let en = {
            let mut e = WeylEnumeration::new(&a);
            e.ensure(2);
            e
        };
        let lam = ikm_to_weight(0, 1, 0);
        let imgs = |p: usize| -> Vec<(i64, i64, i64)> {
            en.layer(p)
                .unwrap()
                .iter()
                .map(|w| weight_to_ikm(&shifted_action(&a, w, &lam)))
                .collect()
        };
        let l1 = imgs(1);
        assert!(l1.contains(&(-2, 1, 0)));
        assert!(l1.contains(&(4, 1, 2)));
        assert!(imgs(2).contains(&(6, 1, 4)));
    }

    #[test]
    fn words_reproduce_matrices() {
        let a = alg("A2~1");
        let mut en = WeylEnumeration::new(&a);
        en.ensure(5);
        for w in en.iter() {
            assert_eq!(w.word.len(), w.length);
            let mut m = WeylElement::identity(&a);
            for &i in &w.word {
                m = m.times_simple(&a, i, 0);
            }
            assert_eq!(m.matrix, w.matrix);
            assert_eq!(en.length_of(&w.matrix), Some(w.length));
        }
    }
}
