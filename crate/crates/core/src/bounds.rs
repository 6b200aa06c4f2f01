//! Degree lower bounds and the length cutoffs that certify when a Weyl sum
//! may stop.
//!
//! Two facts carry everything here. For a weight `nu` of `L_lambda`
//! (dominant, level `k > 0`), `|nu|^2 <= |lambda|^2`, which in terms of the
//! finite parts reads
//!
//! ```text
//! deg(nu) >= (|nu_fin|^2 - |lambda_fin|^2) / (2k).
//! ```
//!
//! And for `x = lambda + rho` and `beta_w = x - w(x)`, `l(w) <= ht(beta_w)`:
//! each length-increasing step `w -> s_i w` subtracts `<w x, alpha_i^vee> >= 1`
//! copies of `alpha_i`. Bounding `ht(beta_w)` over every `w` whose term can
//! reach degree `N` therefore bounds the lengths that need enumerating.

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::cartan::{ceil_sqrt, AffineAlgebra};

/// Weyl sums longer than this are refused rather than run.
pub const MAX_CERTIFIED_LENGTH: usize = 5000;

/// Lower bound on the lowest degree of `ch_q(L_lambda)^{nu'}`, or `None` if
/// `nu'` cannot be a weight of `L_lambda` at all.
pub fn weight_degree_bound(alg: &AffineAlgebra, lambda: &[i64], nu: &[i64]) -> Option<i64> {
    let k = alg.level(lambda);
    if alg.level(nu) != k {
        return None;
    }
    let diff: Vec<i64> = lambda.iter().zip(nu).map(|(a, b)| a - b).collect();
    if !alg.in_root_lattice(&diff) {
        return None;
    }
    if k == 0 {
        // L_0 is trivial
        return (lambda == nu).then_some(0);
    }
    let raw = (alg.finite_norm2(nu) - alg.finite_norm2(lambda)) / Rational64::from_integer(2 * k);
    Some(raw.ceil().to_integer().max(0))
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn sum(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `|v| (|u| + |w|) <= sqrt(2 |v|^2 (|u|^2 + |w|^2))`, rounded up.
fn height_of_sum(alg: &AffineAlgebra, u2: Rational64, w2: Rational64) -> i64 {
    let two = Rational64::from_integer(2);
    ceil_sqrt(two * alg.height_norm2() * (u2 + w2))
}

/// Cutoff for `sum_w (-1)^l(w) q^{(w*a)(d)} ch_q(L_b)^{(mu - w*a)'}`.
///
/// Any contributing term has `n_0(beta_w) <= N` and
/// `|(mu - a + gamma)_fin|^2 <= |b_fin|^2 + 2 k_b N`.
pub fn product_length_bound(alg: &AffineAlgebra, a: &[i64], b: &[i64], mu: &[i64], trunc: i64) -> usize {
    let kb = alg.level(b);
    let r2 = alg.finite_norm2(b) + Rational64::from_integer(2 * kb * trunc.max(0));
    let d2 = alg.finite_norm2(&diff(mu, a));
    let h = alg.coxeter_number() * trunc.max(0) + height_of_sum(alg, r2, d2);
    h.max(0) as usize
}

/// Cutoff and largest `(w*mu)(d)` for
/// `sum_w (-1)^l(w) q^{-(w*mu)(d)} ch_q(L_a)^{(w*mu - b)'}`.
///
/// With `x = mu + rho` at level `L = K + h^vee` and `y = w(x)_fin`,
/// `n_0(beta_w) = (|y|^2 - |x_fin|^2) / (2L)`; a term reaches degree `N` only
/// if `A|y - c|^2 - B|y|^2 <= N + A|a_fin|^2 - B|x_fin|^2` with
/// `A = 1/(2 k_a)`, `B = 1/(2L)`, `c = (rho + b)_fin`, which confines `y` to
/// a ball since `A > B`.
pub fn fraction_length_bound(
    alg: &AffineAlgebra,
    a: &[i64],
    b: &[i64],
    mu: &[i64],
    trunc: i64,
) -> (usize, i64) {
    let rho = alg.rho().labels;
    let x = sum(mu, &rho);
    let x2 = alg.finite_norm2(&x);
    let big_l = alg.level(mu) + alg.dual_coxeter_number();
    let c = sum(&rho, b);
    let c2 = alg.finite_norm2(&c);
    let ka = alg.level(a);

    let y2 = if ka == 0 {
        // only nu = a = 0 survives, which pins y = c
        c2
    } else {
        let aa = Rational64::new(1, 2 * ka);
        let bb = Rational64::new(1, 2 * big_l);
        let m = Rational64::from_integer(trunc) + aa * alg.finite_norm2(a) - bb * x2;
        let spread = aa * (aa + bb) / (aa - bb) * c2;
        let y2 = Rational64::from_integer(2) * (m + spread) / (aa - bb);
        if y2.is_negative() {
            Rational64::zero()
        } else {
            y2
        }
    };
    let n0 = ((y2 - x2) / Rational64::from_integer(2 * big_l)).floor().to_integer().max(0);
    let h = alg.coxeter_number() * n0 + height_of_sum(alg, x2, y2);
    (h.max(0) as usize, n0)
}

/// Cutoff for the alternating sum `sum_w (-1)^l(w) e^{w*lambda}` restricted to
/// `n_0(beta_w) <= N`.
pub fn orbit_length_bound(alg: &AffineAlgebra, lambda: &[i64], trunc: i64) -> usize {
    let x = sum(lambda, &alg.rho().labels);
    let x2 = alg.finite_norm2(&x);
    let big_l = alg.level(lambda) + alg.dual_coxeter_number();
    let y2 = x2 + Rational64::from_integer(2 * big_l * trunc.max(0));
    let h = alg.coxeter_number() * trunc.max(0) + height_of_sum(alg, x2, y2);
    h.max(0) as usize
}
