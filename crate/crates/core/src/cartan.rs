//! Untwisted affine Cartan data built from a finite simple type.
//!
//! Conventions: `a_ij = alpha_j(alpha_i^vee)`, weights are stored as their
//! coroot labels `lambda(alpha_i^vee)` together with `lambda(d)`, and
//! `[d, x (x) t^n] = -n x (x) t^n`, so `alpha_i(d) = -delta_{i0}`. Lowering a
//! weight by `beta = sum n_i alpha_i` therefore raises its d-value by `n_0`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// An untwisted affine type such as `A1~1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId {
    pub ty: CartanType,
    pub rank: usize,
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}~1", self.ty, self.rank)
    }
}

impl FromStr for AlgebraId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidAlgebra(format!("'{s}' (expected e.g. A1~1, G2~1)"));
        let body = s.strip_suffix("~1").ok_or_else(bad)?;
        let mut chars = body.chars();
        let ty = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => CartanType::A,
            Some('B') => CartanType::B,
            Some('C') => CartanType::C,
            Some('D') => CartanType::D,
            Some('E') => CartanType::E,
            Some('F') => CartanType::F,
            Some('G') => CartanType::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        let id = AlgebraId { ty, rank };
        id.validate()?;
        Ok(id)
    }
}

impl AlgebraId {
    pub fn new(ty: CartanType, rank: usize) -> Result<Self> {
        let id = AlgebraId { ty, rank };
        id.validate()?;
        Ok(id)
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.ty {
            CartanType::A => self.rank >= 1,
            CartanType::B | CartanType::C => self.rank >= 2,
            CartanType::D => self.rank >= 4,
            CartanType::E => (6..=8).contains(&self.rank),
            CartanType::F => self.rank == 4,
            CartanType::G => self.rank == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(format!(
                "no finite type {:?}{}",
                self.ty, self.rank
            )))
        }
    }
}

/// Element of `h*`: coroot labels `lambda(alpha_0^vee), ..., lambda(alpha_r^vee)`
/// and the d-value `lambda(d)`. The restriction to `h'` is `labels`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub labels: Vec<i64>,
    pub dval: i64,
}

impl Weight {
    pub fn new(labels: Vec<i64>, dval: i64) -> Self {
        Weight { labels, dval }
    }

    /// Lift of an `h'`-weight with `lambda(d) = 0`.
    pub fn from_labels(labels: Vec<i64>) -> Self {
        Weight { labels, dval: 0 }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_labels(&self.labels))?;
        if self.dval != 0 {
            write!(f, ";d={}", self.dval)?;
        }
        Ok(())
    }
}

pub fn format_labels(labels: &[i64]) -> String {
    labels.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// `sum n_i alpha_i` in simple-root coordinates `n_0, ..., n_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn zero(len: usize) -> Self {
        RootVec(vec![0; len])
    }

    pub fn depth(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Number of `alpha_0` summands; the d-degree of `lambda - beta` when
    /// `lambda(d) = 0`.
    pub fn degree(&self) -> i64 {
        self.0[0]
    }

    /// `beta(d)` under the `alpha_0(d) = -1` convention.
    pub fn dval(&self) -> i64 {
        -self.0[0]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&n| n >= 0)
    }
}

#[derive(Clone, Debug)]
pub struct AffineAlgebra {
    id: AlgebraId,
    rank: usize,
    gcm: Vec<Vec<i64>>,
    sym: Vec<Rational64>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    finite_roots: Vec<Vec<i64>>,
    // lcm of the symmetrizer denominators, and the scaled symmetrizer
    pair_scale: i64,
    sym_scaled: Vec<i64>,
    // sym_scaled[i] * gcm[i][j]
    gram_scaled: Vec<Vec<i64>>,
    fin_inv: Vec<Vec<Rational64>>,
    // (omega_i, omega_j) for the finite fundamental weights
    fund_gram: Vec<Vec<Rational64>>,
    height_norm2: Rational64,
}

fn finite_cartan(id: AlgebraId) -> Vec<Vec<i64>> {
    let r = id.rank;
    let mut a = vec![vec![0i64; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match id.ty {
        CartanType::A => (0..r - 1).for_each(|i| link(i, i + 1, -1, -1)),
        CartanType::B => {
            (0..r - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(r - 2, r - 1, -1, -2);
        }
        CartanType::C => {
            (0..r - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(r - 2, r - 1, -2, -1);
        }
        CartanType::D => {
            (0..r - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(r - 3, r - 1, -1, -1);
        }
        CartanType::E => {
            // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..r - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        CartanType::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        CartanType::G => link(0, 1, -3, -1),
    }
    a
}

/// `d_i` with `d_i a_ij = d_j a_ji`, normalized so long roots have `d = 1`.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<Rational64> {
    let n = a.len();
    let mut d: Vec<Option<Rational64>> = vec![None; n];
    d[0] = Some(Rational64::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let di = d[i].unwrap();
        for j in 0..n {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                d[j] = Some(di * Rational64::new(a[i][j], a[j][i]));
                stack.push(j);
            }
        }
    }
    let d: Vec<Rational64> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let max = *d.iter().max().unwrap();
    d.into_iter().map(|x| x / max).collect()
}

/// Positive roots of a finite Cartan matrix in simple-root coordinates, by
/// extending root strings.
fn finite_positive_roots(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = a.len();
    let mut roots: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..r {
                // p: how far the alpha_i-string extends below beta
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if roots.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..r).map(|j| a[i][j] * beta[j]).sum();
                if p - pair > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !roots.contains(&up) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    roots
}

fn invert(m: &[Vec<Rational64>]) -> Vec<Vec<Rational64>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero()).expect("nonsingular");
        aug.swap(col, piv);
        let p = aug[col][col];
        for x in aug[col].iter_mut() {
            *x /= p;
        }
        let pivot = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            let f = row[col];
            if r != col && !f.is_zero() {
                for (x, v) in row.iter_mut().zip(&pivot) {
                    *x -= f * v;
                }
            }
        }
    }
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

impl AffineAlgebra {
    pub fn build(ty: CartanType, rank: usize) -> Result<Self> {
        Ok(Self::from_id(AlgebraId::new(ty, rank)?))
    }

    pub fn from_id(id: AlgebraId) -> Self {
        let r = id.rank;
        let fin = finite_cartan(id);
        let fin_sym = symmetrizer(&fin);
        let finite_roots = finite_positive_roots(&fin);
        let fin_q: Vec<Vec<Rational64>> = fin
            .iter()
            .map(|row| row.iter().map(|&x| Rational64::from_integer(x)).collect())
            .collect();
        let fin_inv = invert(&fin_q);

        // Highest root theta = the unique root of maximal height.
        let theta = finite_roots.last().unwrap().clone();
        // theta(alpha_i^vee)
        let theta_on: Vec<i64> = (0..r).map(|i| (0..r).map(|j| fin[i][j] * theta[j]).sum()).collect();
        // alpha_j(theta^vee) with theta^vee = sum theta_i d_i alpha_i^vee
        let on_theta_co: Vec<Rational64> = (0..r)
            .map(|j| {
                (0..r)
                    .map(|i| Rational64::from_integer(theta[i] * fin[i][j]) * fin_sym[i])
                    .sum()
            })
            .collect();

        let n = r + 1;
        let mut gcm = vec![vec![0i64; n]; n];
        gcm[0][0] = 2;
        for i in 0..r {
            for j in 0..r {
                gcm[i + 1][j + 1] = fin[i][j];
            }
            gcm[i + 1][0] = -theta_on[i];
            assert!(on_theta_co[i].is_integer());
            gcm[0][i + 1] = -on_theta_co[i].to_integer();
        }
        let sym: Vec<Rational64> = std::iter::once(Rational64::one()).chain(fin_sym.iter().copied()).collect();
        let marks: Vec<i64> = std::iter::once(1).chain(theta.iter().copied()).collect();
        let comarks: Vec<i64> = marks
            .iter()
            .zip(&sym)
            .map(|(&m, &d)| {
                let c = d * m;
                assert!(c.is_integer());
                c.to_integer()
            })
            .collect();

        let pair_scale = sym.iter().fold(1i64, |acc, d| acc.lcm(d.denom()));
        let sym_scaled: Vec<i64> = sym.iter().map(|d| (d * pair_scale).to_integer()).collect();
        let gram_scaled: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| sym_scaled[i] * gcm[i][j]).collect())
            .collect();

        let fund_gram: Vec<Vec<Rational64>> = (0..r)
            .map(|i| (0..r).map(|j| fin_inv[j][i] * fin_sym[j]).collect())
            .collect();
        let height_norm2 = (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .map(|(i, j)| fin_inv[i][j] / fin_sym[j])
            .sum();

        AffineAlgebra {
            id,
            rank: r,
            gcm,
            sym,
            marks,
            comarks,
            finite_roots,
            pair_scale,
            sym_scaled,
            gram_scaled,
            fin_inv,
            fund_gram,
            height_norm2,
        }
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    /// Rank of the finite algebra; weights have `rank + 1` labels.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n_nodes(&self) -> usize {
        self.rank + 1
    }

    pub fn gcm(&self) -> &[Vec<i64>] {
        &self.gcm
    }

    pub fn symmetrizer(&self) -> &[Rational64] {
        &self.sym
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn imaginary_mult(&self) -> i64 {
        self.rank as i64
    }

    /// Sum of the marks.
    pub fn coxeter_number(&self) -> i64 {
        self.marks.iter().sum()
    }

    /// Sum of the comarks, the level of `rho`.
    pub fn dual_coxeter_number(&self) -> i64 {
        self.comarks.iter().sum()
    }

    /// Positive roots of the finite algebra in finite simple-root coordinates.
    pub fn finite_positive_roots(&self) -> &[Vec<i64>] {
        &self.finite_roots
    }

    /// Null root `delta = sum a_i alpha_i`.
    pub fn delta(&self) -> RootVec {
        RootVec(self.marks.clone())
    }

    pub fn rho(&self) -> Weight {
        Weight::from_labels(vec![1; self.n_nodes()])
    }

    pub fn check_arity(&self, labels: &[i64]) -> Result<()> {
        if labels.len() != self.n_nodes() {
            return Err(Error::WrongArity {
                expected: self.n_nodes(),
                found: labels.len(),
            });
        }
        Ok(())
    }

    pub fn level(&self, labels: &[i64]) -> i64 {
        labels.iter().zip(&self.comarks).map(|(l, c)| l * c).sum()
    }

    pub fn is_dominant(&self, labels: &[i64]) -> bool {
        labels.iter().all(|&l| l >= 0)
    }

    /// Labels `beta(alpha_i^vee)` of a root-lattice vector.
    pub fn root_labels(&self, beta: &RootVec) -> Vec<i64> {
        self.gcm
            .iter()
            .map(|row| row.iter().zip(&beta.0).map(|(a, n)| a * n).sum())
            .collect()
    }

    /// The weight `lambda - beta`.
    pub fn lower(&self, lambda: &Weight, beta: &RootVec) -> Weight {
        let bl = self.root_labels(beta);
        Weight {
            labels: lambda.labels.iter().zip(&bl).map(|(l, b)| l - b).collect(),
            dval: lambda.dval - beta.dval(),
        }
    }

    /// Solves `labels(beta) = diff` with `beta_0 = n0`; `None` when the
    /// solution is not integral.
    pub fn root_from_labels(&self, diff: &[i64], n0: i64) -> Option<RootVec> {
        let r = self.rank;
        let rhs: Vec<i64> = (0..r).map(|i| diff[i + 1] - self.gcm[i + 1][0] * n0).collect();
        let mut out = vec![n0];
        for i in 0..r {
            let v: Rational64 = (0..r).map(|j| self.fin_inv[i][j] * rhs[j]).sum();
            if !v.is_integer() {
                return None;
            }
            out.push(v.to_integer());
        }
        let beta = RootVec(out);
        // the alpha_0^vee row holds iff levels agree
        if self.root_labels(&beta)[0] != diff[0] {
            return None;
        }
        Some(beta)
    }

    /// Whether `diff` lies in the label image of the root lattice.
    pub fn in_root_lattice(&self, diff: &[i64]) -> bool {
        self.root_from_labels(diff, 0).is_some()
    }

    pub fn pair_scale(&self) -> i64 {
        self.pair_scale
    }

    /// `pair_scale * (lambda, beta)`.
    pub fn pair_weight_scaled(&self, labels: &[i64], beta: &RootVec) -> i64 {
        labels
            .iter()
            .zip(&self.sym_scaled)
            .zip(&beta.0)
            .map(|((l, d), n)| l * d * n)
            .sum()
    }

    /// `pair_scale * (beta, gamma)`.
    pub fn pair_roots_scaled(&self, beta: &RootVec, gamma: &RootVec) -> i64 {
        let mut s = 0;
        for (i, &bi) in beta.0.iter().enumerate() {
            if bi == 0 {
                continue;
            }
            let row = &self.gram_scaled[i];
            s += bi * row.iter().zip(&gamma.0).map(|(g, c)| g * c).sum::<i64>();
        }
        s
    }

    /// Invariant form `(lambda, beta)` against a root-lattice vector.
    pub fn pairing_weight(&self, lambda: &Weight, beta: &RootVec) -> Rational64 {
        Rational64::new(self.pair_weight_scaled(&lambda.labels, beta), self.pair_scale)
    }

    pub fn pairing_roots(&self, beta: &RootVec, gamma: &RootVec) -> Rational64 {
        Rational64::new(self.pair_roots_scaled(beta, gamma), self.pair_scale)
    }

    /// `|nu_fin|^2` for the finite part of a weight given by its labels.
    pub fn finite_norm2(&self, labels: &[i64]) -> Rational64 {
        let f = &labels[1..];
        let mut s = Rational64::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += self.fund_gram[i][j] * (f[i] * f[j]);
            }
        }
        s
    }

    /// `(nu_fin, mu_fin)`.
    pub fn finite_inner(&self, a: &[i64], b: &[i64]) -> Rational64 {
        let mut s = Rational64::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += self.fund_gram[i][j] * (a[i + 1] * b[j + 1]);
            }
        }
        s
    }

    /// Height of the finite part, in simple-root coordinates.
    pub fn finite_height(&self, labels: &[i64]) -> Rational64 {
        let mut s = Rational64::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += self.fin_inv[i][j] * labels[j + 1];
            }
        }
        s
    }

    /// `|v|^2` for the vector `v` with `(alpha_i, v) = 1` on the finite
    /// simple roots, so `|ht(gamma)| <= |v| |gamma|`.
    pub fn height_norm2(&self) -> Rational64 {
        self.height_norm2
    }

    /// Positive roots with `n_0 <= max_degree`, with multiplicities, ordered
    /// by depth.
    pub fn positive_roots_to_degree(&self, max_degree: i64) -> Vec<(RootVec, i64)> {
        let r = self.rank;
        let mut out = Vec::new();
        let shifted = |fin: &[i64], sign: i64, n: i64| {
            let mut v = vec![n];
            v.extend((0..r).map(|i| sign * fin[i] + n * self.marks[i + 1]));
            RootVec(v)
        };
        for n in 0..=max_degree {
            for fin in &self.finite_roots {
                out.push((shifted(fin, 1, n), 1));
                if n >= 1 {
                    out.push((shifted(fin, -1, n), 1));
                }
            }
            if n >= 1 {
                let delta_n = RootVec(self.marks.iter().map(|m| m * n).collect());
                out.push((delta_n, self.imaginary_mult()));
            }
        }
        out.sort_by(|(a, _), (b, _)| (a.depth(), &a.0).cmp(&(b.depth(), &b.0)));
        out
    }

    /// Positive roots of depth at most `max_depth`, with multiplicities.
    pub fn positive_roots_up_to(&self, max_depth: i64) -> Vec<(RootVec, i64)> {
        if max_depth <= 0 {
            return Vec::new();
        }
        // depth(alpha + n delta) >= n
        self.positive_roots_to_degree(max_depth)
            .into_iter()
            .filter(|(a, _)| a.depth() <= max_depth)
            .collect()
    }

    /// All of `P+_k`, lexicographically descending in the labels.
    pub fn dominant_weights(&self, k: i64) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.n_nodes()];
        self.fill_dominant(0, k, &mut cur, &mut out);
        out.sort_by(|a, b| b.labels.cmp(&a.labels));
        out
    }

    fn fill_dominant(&self, idx: usize, remaining: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if idx == cur.len() {
            if remaining == 0 {
                out.push(Weight::from_labels(cur.clone()));
            }
            return;
        }
        let c = self.comarks[idx];
        let mut l = 0;
        while l * c <= remaining {
            cur[idx] = l;
            self.fill_dominant(idx + 1, remaining - l * c, cur, out);
            l += 1;
        }
        cur[idx] = 0;
    }

    /// Validates an `h'`-weight as dominant integral of the given arity.
    pub fn check_dominant(&self, labels: &[i64]) -> Result<()> {
        self.check_arity(labels)?;
        if !self.is_dominant(labels) {
            return Err(Error::NotDominant(format_labels(labels)));
        }
        Ok(())
    }
}

/// Smallest nonnegative integer `s` with `s^2 >= x`.
pub(crate) fn ceil_sqrt(x: Rational64) -> i64 {
    if !x.is_positive() {
        return 0;
    }
    let (p, q) = (*x.numer() as i128, *x.denom() as i128);
    // s^2 >= p/q  <=>  s^2 q >= p
    let mut s = ((p as f64 / q as f64).sqrt()) as i128;
    while s > 0 && (s - 1) * (s - 1) * q >= p {
        s -= 1;
    }
    while s * s * q < p {
        s += 1;
    }
    s as i64
}
