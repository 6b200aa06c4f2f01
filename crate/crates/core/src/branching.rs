//! Branching functions `c^{mu'}_{lambda1' lambda2'}(q)`: the graded
//! multiplicity of `L_{mu'}` in `L_{lambda1'} (x) L_{lambda2'}`.
//!
//! Computed four ways: by peeling the tensor product character, by two
//! alternating Weyl sums over weight-space characters, and for `A1~1` by
//! closed sums over the integers. Every route returns exact integers and can
//! be compared coefficient by coefficient.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::bounds::{fraction_length_bound, product_length_bound, weight_degree_bound, MAX_CERTIFIED_LENGTH};
use crate::cartan::{format_labels, AffineAlgebra, CartanType, Weight};
use crate::characters::{weight_space_character, MultTable};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::qseries::{series_pairs, QSeries};
use crate::weyl::{shifted_action, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Oracle,
    Bosonic1,
    Bosonic1Swap,
    Bosonic2,
    Bosonic2Swap,
    Sl2Closed1,
    Sl2Closed2,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Oracle,
        Method::Bosonic1,
        Method::Bosonic1Swap,
        Method::Bosonic2,
        Method::Bosonic2Swap,
        Method::Sl2Closed1,
        Method::Sl2Closed2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Bosonic1 => "bosonic1",
            Method::Bosonic1Swap => "bosonic1-swap",
            Method::Bosonic2 => "bosonic2",
            Method::Bosonic2Swap => "bosonic2-swap",
            Method::Sl2Closed1 => "sl2-closed-1",
            Method::Sl2Closed2 => "sl2-closed-2",
        }
    }

    pub fn applies_to(self, alg: &AffineAlgebra) -> bool {
        match self {
            Method::Sl2Closed1 | Method::Sl2Closed2 => is_sl2(alg),
            _ => true,
        }
    }

    /// Every method usable on `alg`, in canonical order.
    pub fn all_for(alg: &AffineAlgebra) -> Vec<Method> {
        Method::ALL.into_iter().filter(|m| m.applies_to(alg)).collect()
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method {s:?}")))
    }
}

fn is_sl2(alg: &AffineAlgebra) -> bool {
    alg.id().ty == CartanType::A && alg.rank() == 1
}

/// A validated triple of `h'`-weights with `level(mu) = level(lambda1) + level(lambda2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BranchingQuery {
    pub lambda1: Vec<i64>,
    pub lambda2: Vec<i64>,
    pub mu: Vec<i64>,
    pub trunc: i64,
}

impl BranchingQuery {
    pub fn new(alg: &AffineAlgebra, lambda1: Vec<i64>, lambda2: Vec<i64>, mu: Vec<i64>, trunc: i64) -> Result<Self> {
        for w in [&lambda1, &lambda2, &mu] {
            alg.check_dominant(w)?;
        }
        let expected = alg.level(&lambda1) + alg.level(&lambda2);
        let found = alg.level(&mu);
        if found != expected {
            return Err(Error::LevelMismatch { expected, found });
        }
        if trunc < 0 {
            return Err(Error::InvalidArgument(format!("truncation {trunc} is negative")));
        }
        Ok(BranchingQuery {
            lambda1,
            lambda2,
            mu,
            trunc,
        })
    }

    /// The same query with `lambda1` and `lambda2` exchanged.
    pub fn swapped(&self) -> Self {
        BranchingQuery {
            lambda1: self.lambda2.clone(),
            lambda2: self.lambda1.clone(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingResult {
    pub method: Method,
    /// Every coefficient up to this degree is exact.
    pub trunc: i64,
    /// Conformal-weight offset, when a coset character was requested.
    pub offset: Option<Rational64>,
    pub series: QSeries,
    /// Weyl layers consumed, summation indices visited, or components peeled.
    pub terms_used: usize,
}

pub fn format_rational(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Serialize for BranchingResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("method", self.method.name())?;
        m.serialize_entry("trunc", &self.trunc)?;
        if let Some(o) = self.offset {
            m.serialize_entry("offset", &format_rational(o))?;
        }
        m.serialize_entry("series", &series_pairs(&self.series))?;
        m.serialize_entry("terms_used", &self.terms_used)?;
        m.end()
    }
}

fn certify(len: usize) -> Result<()> {
    if len > MAX_CERTIFIED_LENGTH {
        return Err(Error::NotCertifiable(format!(
            "Weyl sum needs lengths up to {len}, limit is {MAX_CERTIFIED_LENGTH}"
        )));
    }
    Ok(())
}

fn check_nonnegative(series: &QSeries, method: Method) -> Result<()> {
    if let Some((d, c)) = series.terms().find(|(_, c)| c.is_negative()) {
        return Err(Error::Inconsistency(format!("{method} produced coefficient {c} at q^{d}")));
    }
    Ok(())
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn accumulate(acc: &mut QSeries, term: &QSeries, positive: bool) {
    *acc = if positive { &*acc + term } else { &*acc - term };
}

pub fn branch(ctx: &Context, q: &BranchingQuery, method: Method) -> Result<BranchingResult> {
    match method {
        Method::Oracle => branch_oracle(ctx, q),
        Method::Bosonic1 => branch_bosonic_product(ctx, q, false),
        Method::Bosonic1Swap => branch_bosonic_product(ctx, q, true),
        Method::Bosonic2 => branch_bosonic_fraction(ctx, q, false),
        Method::Bosonic2Swap => branch_bosonic_fraction(ctx, q, true),
        Method::Sl2Closed1 | Method::Sl2Closed2 => {
            let coords = Sl2Coords::from_query(ctx.algebra(), q)?;
            let form = if method == Method::Sl2Closed1 { Sl2Form::One } else { Sl2Form::Two };
            branch_sl2_closed(ctx, form, coords, q.trunc)
        }
    }
}

/// Graded characters of `L_{lambda1} (x) L_{lambda2}` at dominant
/// `h'`-weights, and their decomposition into irreducibles.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub trunc: i64,
    /// `T(nu', n)`, keyed by dominant `nu'`.
    pub tensor: BTreeMap<Vec<i64>, QSeries>,
    /// Branching function of every `mu'` with a nonzero coefficient.
    pub components: BTreeMap<Vec<i64>, QSeries>,
    pub peeled: usize,
}

fn tensor_tables(
    t1: &MultTable,
    t2: &MultTable,
    trunc: i64,
    keep: impl Fn(&[i64]) -> bool,
) -> HashMap<Vec<i64>, Vec<BigInt>> {
    let width = (trunc + 1) as usize;
    let mut out: HashMap<Vec<i64>, Vec<BigInt>> = HashMap::new();
    for (nu1, s1) in t1.weight_strings() {
        for (nu2, s2) in t2.weight_strings() {
            let nu = add(nu1, nu2);
            if !keep(&nu) {
                continue;
            }
            let slot = out.entry(nu).or_insert_with(|| vec![BigInt::zero(); width]);
            for (d1, m1) in s1 {
                for (d2, m2) in s2 {
                    let d = d1 + d2;
                    if d <= trunc {
                        slot[d as usize] += m1 * m2;
                    }
                }
            }
        }
    }
    out
}

/// `ch_q(L_{lambda1} (x) L_{lambda2})^{nu'}` up to `trunc`.
pub fn tensor_character(ctx: &Context, lambda1: &[i64], lambda2: &[i64], nu: &[i64], trunc: i64) -> Result<QSeries> {
    let t1 = ctx.table(lambda1, trunc)?;
    let t2 = ctx.table(lambda2, trunc)?;
    let tables = tensor_tables(&t1, &t2, trunc, |w| w == nu);
    let dense = tables.into_values().next().unwrap_or_default();
    Ok(QSeries::from_coeffs(
        0,
        trunc,
        dense.into_iter().enumerate().map(|(d, c)| (d as i64, c)),
    ))
}

/// Peels irreducible components off the tensor product, degree by degree,
/// higher finite weights first within a degree.
pub fn decompose(ctx: &Context, lambda1: &[i64], lambda2: &[i64], trunc: i64) -> Result<Decomposition> {
    let alg = ctx.algebra();
    alg.check_dominant(lambda1)?;
    alg.check_dominant(lambda2)?;
    let trunc = trunc.max(0);
    let width = (trunc + 1) as usize;
    let level = alg.level(lambda1) + alg.level(lambda2);

    let t1 = ctx.table(lambda1, trunc)?;
    let t2 = ctx.table(lambda2, trunc)?;
    let tensor = tensor_tables(&t1, &t2, trunc, |w| alg.is_dominant(w));

    let mut order: Vec<Vec<i64>> = alg.dominant_weights(level).into_iter().map(|w| w.labels).collect();
    order.sort_by_key(|l| (Reverse(alg.finite_height(l)), Reverse(l.clone())));

    let zero_row = vec![BigInt::zero(); width];
    let mut explained: HashMap<Vec<i64>, Vec<BigInt>> = HashMap::new();
    let mut components: BTreeMap<Vec<i64>, Vec<BigInt>> = BTreeMap::new();
    let mut peeled = 0;
    for n in 0..=trunc {
        for nu in &order {
            let total = tensor.get(nu).map_or(&zero_row, |r| r)[n as usize].clone();
            let seen = explained.get(nu).map_or(&zero_row, |r| r)[n as usize].clone();
            let c = total - seen;
            if c.is_negative() {
                return Err(Error::Inconsistency(format!(
                    "negative multiplicity {c} of {} at q^{n}",
                    format_labels(nu)
                )));
            }
            if c.is_zero() {
                continue;
            }
            peeled += 1;
            components.entry(nu.clone()).or_insert_with(|| zero_row.clone())[n as usize] = c.clone();
            let rest = trunc - n;
            let tau = ctx.table(nu, rest)?;
            for target in &order {
                let ch = weight_space_character(alg, &tau, target, rest)?;
                if ch.is_zero() {
                    continue;
                }
                let row = explained.entry(target.clone()).or_insert_with(|| zero_row.clone());
                for (d, m) in ch.terms() {
                    row[(n + d) as usize] += &c * m;
                }
            }
        }
    }

    let to_series = |row: Vec<BigInt>| QSeries::from_coeffs(0, trunc, row.into_iter().enumerate().map(|(d, c)| (d as i64, c)));
    Ok(Decomposition {
        trunc,
        tensor: tensor.into_iter().map(|(k, v)| (k, to_series(v))).collect(),
        components: components.into_iter().map(|(k, v)| (k, to_series(v))).collect(),
        peeled,
    })
}

pub fn branch_oracle(ctx: &Context, q: &BranchingQuery) -> Result<BranchingResult> {
    let dec = decompose(ctx, &q.lambda1, &q.lambda2, q.trunc)?;
    let series = dec
        .components
        .get(&q.mu)
        .cloned()
        .unwrap_or_else(|| QSeries::zero(0, q.trunc));
    Ok(BranchingResult {
        method: Method::Oracle,
        trunc: q.trunc,
        offset: None,
        series,
        terms_used: dec.peeled,
    })
}

fn sign_of(w: &WeylElement) -> bool {
    w.length.is_multiple_of(2)
}

/// `sum_w (-1)^l(w) q^{(w*a)(d)} ch_q(L_b)^{(mu - w*a)'}` with
/// `(a, b) = (lambda1, lambda2)`, or exchanged under `swap`.
pub fn branch_bosonic_product(ctx: &Context, q: &BranchingQuery, swap: bool) -> Result<BranchingResult> {
    let alg = ctx.algebra();
    let (a, b) = if swap { (&q.lambda2, &q.lambda1) } else { (&q.lambda1, &q.lambda2) };
    let n = q.trunc;
    let len = product_length_bound(alg, a, b, &q.mu, n);
    certify(len)?;
    let layers = ctx.weyl_layers(len);
    let tb = ctx.table(b, n)?;
    let aw = Weight::from_labels(a.clone());

    let mut acc = QSeries::zero(0, n);
    for w in layers.iter().flat_map(|l| l.iter()) {
        let img = shifted_action(alg, w, &aw);
        let e = img.dval;
        if e > n {
            continue;
        }
        let nu = sub(&q.mu, &img.labels);
        match weight_degree_bound(alg, b, &nu) {
            Some(lb) if lb + e <= n => {}
            _ => continue,
        }
        let ch = weight_space_character(alg, &tb, &nu, n - e)?.shift(e);
        accumulate(&mut acc, &ch, sign_of(w));
    }
    let method = if swap { Method::Bosonic1Swap } else { Method::Bosonic1 };
    check_nonnegative(&acc, method)?;
    Ok(BranchingResult {
        method,
        trunc: n,
        offset: None,
        series: acc,
        terms_used: layers.len(),
    })
}

/// `sum_w (-1)^l(w) q^{-(w*mu)(d)} ch_q(L_a)^{(w*mu - b)'}` with
/// `(a, b) = (lambda1, lambda2)`, or exchanged under `swap`; `mu` is fixed.
pub fn branch_bosonic_fraction(ctx: &Context, q: &BranchingQuery, swap: bool) -> Result<BranchingResult> {
    let alg = ctx.algebra();
    let (a, b) = if swap { (&q.lambda2, &q.lambda1) } else { (&q.lambda1, &q.lambda2) };
    let n = q.trunc;
    let (len, _) = fraction_length_bound(alg, a, b, &q.mu, n);
    certify(len)?;
    let layers = ctx.weyl_layers(len);
    let muw = Weight::from_labels(q.mu.clone());

    // (sign, e, nu) for every term that can reach degree n
    let mut terms = Vec::new();
    for w in layers.iter().flat_map(|l| l.iter()) {
        let img = shifted_action(alg, w, &muw);
        let e = img.dval;
        let nu = sub(&img.labels, b);
        match weight_degree_bound(alg, a, &nu) {
            Some(lb) if lb - e <= n => terms.push((sign_of(w), e, nu)),
            _ => {}
        }
    }
    let window = terms.iter().map(|(_, e, _)| n + e).max().unwrap_or(n).max(n);
    let ta = ctx.table(a, window)?;

    let mut acc = QSeries::zero(0, n);
    for (positive, e, nu) in &terms {
        let ch = weight_space_character(alg, &ta, nu, n + e)?.shift(-e);
        accumulate(&mut acc, &ch, *positive);
    }
    let method = if swap { Method::Bosonic2Swap } else { Method::Bosonic2 };
    let series = settle_negative_degrees(acc, method)?;
    Ok(BranchingResult {
        method,
        trunc: n,
        offset: None,
        series,
        terms_used: layers.len(),
    })
}

/// Drops the (necessarily cancelled) negative-degree part of a sum.
fn settle_negative_degrees(acc: QSeries, method: Method) -> Result<QSeries> {
    if let Some((d, c)) = acc.terms().find(|(d, _)| *d < 0) {
        return Err(Error::Inconsistency(format!("{method} left {c} at q^{d}")));
    }
    let series = acc.with_min_deg(0)?;
    check_nonnegative(&series, method)?;
    Ok(series)
}

/// `A1~1` data in `(i, k)` coordinates: `lambda1 = (i1, k1)`,
/// `lambda2 = (i2, k2)`, `mu = (j, k1 + k2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sl2Coords {
    pub i1: i64,
    pub k1: i64,
    pub i2: i64,
    pub k2: i64,
    pub j: i64,
}

impl Sl2Coords {
    pub fn new(i1: i64, k1: i64, i2: i64, k2: i64, j: i64) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCoordinates(m));
        if k1 < 0 || k2 < 0 {
            return bad(format!("levels {k1}, {k2} must be nonnegative"));
        }
        if !(0..=k1).contains(&i1) {
            return bad(format!("i1 = {i1} outside 0..={k1}"));
        }
        if !(0..=k2).contains(&i2) {
            return bad(format!("i2 = {i2} outside 0..={k2}"));
        }
        if !(0..=k1 + k2).contains(&j) {
            return bad(format!("j = {j} outside 0..={}", k1 + k2));
        }
        Ok(Sl2Coords { i1, k1, i2, k2, j })
    }

    pub fn from_query(alg: &AffineAlgebra, q: &BranchingQuery) -> Result<Self> {
        if !is_sl2(alg) {
            return Err(Error::InvalidArgument(format!("closed forms need A1~1, not {}", alg.id())));
        }
        Sl2Coords::new(q.lambda1[1], alg.level(&q.lambda1), q.lambda2[1], alg.level(&q.lambda2), q.mu[1])
    }

    pub fn query(&self, trunc: i64) -> Result<BranchingQuery> {
        let alg = AffineAlgebra::from_id("A1~1".parse().expect("valid id"));
        BranchingQuery::new(
            &alg,
            sl2_labels(self.i1, self.k1),
            sl2_labels(self.i2, self.k2),
            sl2_labels(self.j, self.k1 + self.k2),
            trunc,
        )
    }
}

/// Labels of the `A1~1` weight with finite eigenvalue `i` at level `k`.
pub fn sl2_labels(i: i64, k: i64) -> Vec<i64> {
    vec![k - i, i]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2Form {
    One,
    Two,
}

fn sl2_char(ctx: &Context, table: &Arc<MultTable>, l: i64, k: i64, trunc: i64) -> Result<QSeries> {
    weight_space_character(ctx.algebra(), table, &sl2_labels(l, k), trunc)
}

pub fn branch_sl2_closed(ctx: &Context, form: Sl2Form, c: Sl2Coords, trunc: i64) -> Result<BranchingResult> {
    if !is_sl2(ctx.algebra()) {
        return Err(Error::InvalidArgument(format!(
            "closed forms need A1~1, not {}",
            ctx.algebra().id()
        )));
    }
    let n = trunc;
    if n < 0 {
        return Err(Error::InvalidArgument(format!("truncation {n} is negative")));
    }
    let Sl2Coords { i1, k1, i2, k2, j } = c;
    let mut acc = QSeries::zero(0, n);
    let mut used = 0;
    match form {
        Sl2Form::One => {
            let t2 = ctx.table(&sl2_labels(i2, k2), n)?;
            // the exponent is at least |p|
            for p in -n..=n {
                used += 1;
                let e = p * p * (k1 + 2) + p * (i1 + 1);
                if e > n {
                    continue;
                }
                let base = 2 * p * (k1 + 2);
                let plus = sl2_char(ctx, &t2, base - j + i1, k2, n - e)?.shift(e);
                let minus = sl2_char(ctx, &t2, base + j + i1 + 2, k2, n - e)?.shift(e);
                acc = &(&acc + &plus) - &minus;
            }
            let method = Method::Sl2Closed1;
            check_nonnegative(&acc, method)?;
            Ok(BranchingResult {
                method,
                trunc: n,
                offset: None,
                series: acc,
                terms_used: used,
            })
        }
        Sl2Form::Two => {
            let big = k1 + k2 + 2;
            let e = |p: i64| -big * p * p - (j + 1) * p;
            let l_plus = |p: i64| 2 * big * p + j - i2;
            let l_minus = |p: i64| 2 * big * p + j + i2 + 2;
            let window = sl2_form2_window(c, n);
            let reach = |p: i64| {
                [l_plus(p), l_minus(p)]
                    .iter()
                    .any(|&l| sl2_degree_floor(i1, k1, l, e(p)) <= Rational64::from_integer(n))
            };
            let depth = window.clone().filter(|&p| reach(p)).map(|p| n - e(p)).max().unwrap_or(n).max(n);
            let t1 = ctx.table(&sl2_labels(i1, k1), depth)?;
            for p in window {
                used += 1;
                let ep = e(p);
                if ep > n || !reach(p) {
                    continue;
                }
                let plus = sl2_char(ctx, &t1, l_plus(p), k1, n - ep)?.shift(ep);
                let minus = sl2_char(ctx, &t1, l_minus(p), k1, n - ep)?.shift(ep);
                acc = &(&acc + &plus) - &minus;
            }
            let method = Method::Sl2Closed2;
            let series = settle_negative_degrees(acc, method)?;
            Ok(BranchingResult {
                method,
                trunc: n,
                offset: None,
                series,
                terms_used: used,
            })
        }
    }
}

/// `e + (l^2 - i^2) / (4k)`, a lower bound on every degree in `q^e ch_{i,k}^l`.
fn sl2_degree_floor(i: i64, k: i64, l: i64, e: i64) -> Rational64 {
    if k == 0 {
        return Rational64::from_integer(e);
    }
    Rational64::from_integer(e) + Rational64::new(l * l - i * i, 4 * k)
}

/// Indices `p` outside of which neither summand reaches degree `n`. Both
/// floors are quadratics in `p` with positive leading coefficient, so once
/// both exceed `n` and increase away from zero they stay above `n`.
fn sl2_form2_window(c: Sl2Coords, n: i64) -> std::ops::RangeInclusive<i64> {
    let Sl2Coords { i1, k1, i2, k2, j } = c;
    if k1 == 0 {
        return -1..=1;
    }
    let big = k1 + k2 + 2;
    let floors = |p: i64| {
        let e = -big * p * p - (j + 1) * p;
        [
            sl2_degree_floor(i1, k1, 2 * big * p + j - i2, e),
            sl2_degree_floor(i1, k1, 2 * big * p + j + i2 + 2, e),
        ]
    };
    let nn = Rational64::from_integer(n);
    let done = |p: i64, step: i64| {
        let (here, next) = (floors(p), floors(p + step));
        (0..2).all(|t| here[t] > nn && next[t] > here[t])
    };
    let mut hi = 0;
    while !done(hi, 1) {
        hi += 1;
    }
    let mut lo = 0;
    while !done(lo, -1) {
        lo -= 1;
    }
    lo..=hi
}

/// `(lambda, lambda + 2 rho) / (2 (k + h^vee))` on the finite part.
pub fn conformal_weight(alg: &AffineAlgebra, labels: &[i64], level: i64) -> Result<Rational64> {
    alg.check_arity(labels)?;
    let found = alg.level(labels);
    if found != level {
        return Err(Error::LevelMismatch { expected: level, found });
    }
    let rho = alg.rho().labels;
    let num = alg.finite_norm2(labels) + alg.finite_inner(labels, &rho) * 2;
    Ok(num / Rational64::from_integer(2 * (level + alg.dual_coxeter_number())))
}

/// `Delta(lambda1) + Delta(lambda2) - Delta(mu)`.
pub fn coset_offset(alg: &AffineAlgebra, q: &BranchingQuery) -> Result<Rational64> {
    let (k1, k2) = (alg.level(&q.lambda1), alg.level(&q.lambda2));
    Ok(conformal_weight(alg, &q.lambda1, k1)? + conformal_weight(alg, &q.lambda2, k2)?
        - conformal_weight(alg, &q.mu, k1 + k2)?)
}

/// The branching function together with its conformal offset, kept apart.
pub fn coset_character(ctx: &Context, q: &BranchingQuery, method: Method) -> Result<BranchingResult> {
    let mut res = branch(ctx, q, method)?;
    res.offset = Some(coset_offset(ctx.algebra(), q)?);
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str) -> Context {
        Context::new(AffineAlgebra::from_id(s.parse().unwrap()))
    }

    fn dense(s: &QSeries) -> Vec<i64> {
        s.dense().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    fn sl2_query(t: (i64, i64, i64, i64, i64), n: i64) -> BranchingQuery {
        Sl2Coords::new(t.0, t.1, t.2, t.3, t.4).unwrap().query(n).unwrap()
    }

    #[test]
    fn ising_vacuum_from_the_oracle() {
        let c = ctx("A1~1");
        let q = sl2_query((0, 1, 0, 1, 0), 8);
        let r = branch_oracle(&c, &q).unwrap();
        assert_eq!(dense(&r.series), vec![1, 0, 1, 1, 2, 2, 3, 3, 5]);
    }

    #[test]
    fn trivial_second_factor() {
        let c = ctx("A2~1");
        let alg = c.algebra().clone();
        for mu in alg.dominant_weights(1) {
            let q = BranchingQuery::new(&alg, vec![0, 1, 0], vec![0, 0, 0], mu.labels.clone(), 3).unwrap();
            for m in [Method::Oracle, Method::Bosonic1, Method::Bosonic1Swap, Method::Bosonic2, Method::Bosonic2Swap] {
                let r = branch(&c, &q, m).unwrap();
                let expect = if mu.labels == [0, 1, 0] { vec![1, 0, 0, 0] } else { vec![0; 4] };
                assert_eq!(dense(&r.series), expect, "{m} {:?}", mu.labels);
            }
        }
    }

    #[test]
    fn all_methods_agree_on_small_sl2_grid() {
        let c = ctx("A1~1");
        for (k1, k2) in [(1, 1), (1, 2), (0, 2), (2, 1)] {
            for i1 in 0..=k1 {
                for i2 in 0..=k2 {
                    for j in 0..=k1 + k2 {
                        let q = sl2_query((i1, k1, i2, k2, j), 7);
                        let base = branch_oracle(&c, &q).unwrap().series;
                        for m in Method::all_for(c.algebra()) {
                            let r = branch(&c, &q, m).unwrap();
                            assert_eq!(r.series, base, "{m} on {:?}", (i1, k1, i2, k2, j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn a2_methods_agree() {
        let c = ctx("A2~1");
        let alg = c.algebra().clone();
        for l1 in alg.dominant_weights(1) {
            for mu in alg.dominant_weights(2) {
                let q = BranchingQuery::new(&alg, l1.labels.clone(), vec![1, 0, 0], mu.labels.clone(), 4).unwrap();
                let base = branch_oracle(&c, &q).unwrap().series;
                for m in Method::all_for(&alg) {
                    assert_eq!(branch(&c, &q, m).unwrap().series, base, "{m} {q:?}");
                }
            }
        }
    }

    #[test]
    fn g2_methods_agree_at_low_order() {
        let c = ctx("G2~1");
        let alg = c.algebra().clone();
        let ones = alg.dominant_weights(1);
        for mu in alg.dominant_weights(2) {
            let q = BranchingQuery::new(&alg, ones[0].labels.clone(), ones[1].labels.clone(), mu.labels.clone(), 2).unwrap();
            let base = branch_oracle(&c, &q).unwrap().series;
            for m in [Method::Bosonic1, Method::Bosonic2] {
                assert_eq!(branch(&c, &q, m).unwrap().series, base, "{m} {q:?}");
            }
        }
    }

    #[test]
    fn leading_term_of_the_top_component() {
        let c = ctx("A1~1");
        for m in Method::all_for(c.algebra()) {
            let q = sl2_query((1, 2, 1, 1, 2), 0);
            assert_eq!(dense(&branch(&c, &q, m).unwrap().series), vec![1], "{m}");
        }
    }

    #[test]
    fn tensor_factors_commute() {
        let c = ctx("A1~1");
        let alg = c.algebra().clone();
        for mu in alg.dominant_weights(3) {
            let q = BranchingQuery::new(&alg, vec![1, 1], vec![0, 1], mu.labels, 6).unwrap();
            let a = branch(&c, &q, Method::Bosonic1).unwrap().series;
            let b = branch(&c, &q.swapped(), Method::Bosonic1).unwrap().series;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn sum_rule_at_a_non_dominant_weight() {
        let c = ctx("A1~1");
        let n = 6;
        let dec = decompose(&c, &[1, 1], &[1, 0], n).unwrap();
        // finite eigenvalue -3 at level 3
        let nu = vec![6, -3];
        let mut total = QSeries::zero(0, n);
        for (mu, cs) in &dec.components {
            let t = c.table(mu, n).unwrap();
            let ch = weight_space_character(c.algebra(), &t, &nu, n).unwrap();
            total = &total + &(cs * &ch);
        }
        assert_eq!(total, tensor_character(&c, &[1, 1], &[1, 0], &nu, n).unwrap());
        assert!(!total.is_zero());
    }

    #[test]
    fn reversed_variable_form_agrees() {
        // c(1/q) = sum_w (-1)^l q^{(w*mu)(d)} ch_{1/q}(L_a)^{(w*mu - b)'}
        let c = ctx("A1~1");
        let alg = c.algebra().clone();
        let q = sl2_query((1, 2, 0, 1, 1), 6);
        let n = q.trunc;
        let (len, n0) = fraction_length_bound(&alg, &q.lambda1, &q.lambda2, &q.mu, n);
        let ta = c.table(&q.lambda1, n + n0).unwrap();
        let muw = Weight::from_labels(q.mu.clone());
        let mut inv = QSeries::zero(-n, 0);
        for w in c.weyl_layers(len).iter().flat_map(|l| l.iter().cloned().collect::<Vec<_>>()) {
            let img = shifted_action(&alg, &w, &muw);
            let nu = sub(&img.labels, &q.lambda2);
            match weight_degree_bound(&alg, &q.lambda1, &nu) {
                Some(lb) if lb - img.dval <= n => {}
                _ => continue,
            }
            let ch = weight_space_character(&alg, &ta, &nu, n + img.dval).unwrap();
            let t = ch.reflect(img.dval, -n, 0).unwrap();
            accumulate(&mut inv, &t, sign_of(&w));
        }
        let back = inv.reflect(0, 0, n).unwrap();
        assert_eq!(back, branch(&c, &q, Method::Bosonic2).unwrap().series);
    }

    #[test]
    fn conformal_weights() {
        let a = AffineAlgebra::from_id("A1~1".parse().unwrap());
        assert_eq!(conformal_weight(&a, &[1, 0], 1).unwrap(), Rational64::zero());
        assert_eq!(conformal_weight(&a, &[0, 1], 1).unwrap(), Rational64::new(1, 4));
        assert_eq!(conformal_weight(&a, &[0, 2], 2).unwrap(), Rational64::new(1, 2));
        assert!(matches!(conformal_weight(&a, &[0, 2], 1), Err(Error::LevelMismatch { .. })));
        let a2 = AffineAlgebra::from_id("A2~1".parse().unwrap());
        // fundamental of sl3 at level 1: (2/3 + 2)/(2*4)
        assert_eq!(conformal_weight(&a2, &[0, 1, 0], 1).unwrap(), Rational64::new(1, 3));
    }

    #[test]
    fn coset_offsets() {
        let c = ctx("A1~1");
        let vac = sl2_query((0, 1, 0, 1, 0), 4);
        let r = coset_character(&c, &vac, Method::Oracle).unwrap();
        assert_eq!(r.offset, Some(Rational64::zero()));
        let q = sl2_query((1, 1, 1, 1, 0), 4);
        let r = coset_character(&c, &q, Method::Bosonic1).unwrap();
        assert_eq!(r.offset, Some(Rational64::new(1, 2)));
        let triv = sl2_query((1, 1, 0, 0, 1), 4);
        let r = coset_character(&c, &triv, Method::Oracle).unwrap();
        assert_eq!(r.offset, Some(Rational64::zero()));
        assert_eq!(dense(&r.series), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn query_validation() {
        let a = AffineAlgebra::from_id("A1~1".parse().unwrap());
        assert!(matches!(
            BranchingQuery::new(&a, vec![1, 0], vec![1, 0], vec![3, 0], 4),
            Err(Error::LevelMismatch { expected: 2, found: 3 })
        ));
        assert!(matches!(
            BranchingQuery::new(&a, vec![2, -1], vec![1, 0], vec![2, 0], 4),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(Sl2Coords::new(0, 1, 0, 1, 3), Err(Error::InvalidCoordinates(_))));
        assert!(matches!(Sl2Coords::new(2, 1, 0, 1, 0), Err(Error::InvalidCoordinates(_))));
        let c = ctx("A2~1");
        let q = BranchingQuery::new(c.algebra(), vec![1, 0, 0], vec![1, 0, 0], vec![2, 0, 0], 2).unwrap();
        assert!(branch(&c, &q, Method::Sl2Closed1).is_err());
    }

    #[test]
    fn result_json_shape() {
        let c = ctx("A1~1");
        let q = sl2_query((1, 1, 1, 1, 0), 3);
        let r = coset_character(&c, &q, Method::Oracle).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            format!(
                r#"{{"method":"oracle","trunc":3,"offset":"1/2","series":{},"terms_used":{}}}"#,
                serde_json::to_string(&series_pairs(&r.series)).unwrap(),
                r.terms_used
            )
        );
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("all".parse::<Method>().is_err());
    }
}
