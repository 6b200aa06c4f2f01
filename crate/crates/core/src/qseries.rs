//! Truncated Laurent series in one formal variable `q` with big-integer
//! coefficients.
//!
//! A [`QSeries`] carries an explicit window `[min_deg, trunc]`: coefficients
//! below `min_deg` are zero, coefficients above `trunc` are *unknown*. Every
//! operation narrows the window pessimistically so that an alternating sum
//! can never silently read an unknown coefficient as zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct QSeries {
    min_deg: i64,
    trunc: i64,
    coeffs: BTreeMap<i64, BigInt>,
}

impl QSeries {
    pub fn zero(min_deg: i64, trunc: i64) -> Self {
        QSeries {
            min_deg,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    /// `1 + O(q^{trunc+1})`.
    pub fn one(trunc: i64) -> Self {
        Self::monomial(0, BigInt::one(), trunc)
    }

    pub fn monomial(deg: i64, coeff: BigInt, trunc: i64) -> Self {
        Self::from_coeffs(deg, trunc, [(deg, coeff)])
    }

    /// Builds a series from `(degree, coefficient)` pairs. Repeated degrees
    /// are summed; pairs outside `[min_deg, trunc]` above `trunc` are dropped.
    ///
    /// Panics if a nonzero coefficient lies below `min_deg`.
    pub fn from_coeffs<I>(min_deg: i64, trunc: i64, pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (d, c) in pairs {
            if d > trunc {
                continue;
            }
            *coeffs.entry(d).or_default() += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        if let Some((&d, _)) = coeffs.iter().next() {
            assert!(d >= min_deg, "coefficient at degree {d} below min_deg {min_deg}");
        }
        QSeries {
            min_deg,
            trunc,
            coeffs,
        }
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`, or `None` when `n` lies above the truncation.
    pub fn coeff(&self, n: i64) -> Option<BigInt> {
        if n > self.trunc {
            return None;
        }
        Some(self.coeffs.get(&n).cloned().unwrap_or_default())
    }

    /// Nonzero terms in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Dense coefficient list for degrees `min_deg..=trunc`.
    pub fn dense(&self) -> Vec<BigInt> {
        (self.min_deg..=self.trunc)
            .map(|d| self.coeffs.get(&d).cloned().unwrap_or_default())
            .collect()
    }

    pub fn has_negative_coeff(&self) -> bool {
        self.coeffs.values().any(|c| c.is_negative())
    }

    /// Narrows the truncation to `min(self.trunc, trunc)`.
    pub fn truncate(&self, trunc: i64) -> Self {
        let trunc = trunc.min(self.trunc);
        QSeries {
            min_deg: self.min_deg,
            trunc,
            coeffs: self.coeffs.range(..=trunc).map(|(&d, c)| (d, c.clone())).collect(),
        }
    }

    /// Raises `min_deg` to `lo`, failing if a nonzero coefficient would be
    /// discarded.
    pub fn with_min_deg(&self, lo: i64) -> Result<Self> {
        if let Some(d) = self.valuation() {
            if d < lo {
                return Err(Error::WindowClipsSupport { lo, degree: d });
            }
        }
        Ok(QSeries {
            min_deg: lo,
            ..self.clone()
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.min_deg, self.trunc);
        }
        QSeries {
            min_deg: self.min_deg,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(&d, c)| (d, c * k)).collect(),
        }
    }

    /// Multiplies by `q^m`.
    pub fn shift(&self, m: i64) -> Self {
        QSeries {
            min_deg: self.min_deg + m,
            trunc: self.trunc + m,
            coeffs: self.coeffs.iter().map(|(&d, c)| (d + m, c.clone())).collect(),
        }
    }

    /// Substitutes `q -> q^{-1}` and multiplies by `q^m`, keeping the window
    /// `[lo, hi]`.
    ///
    /// The reflected series is known only from degree `m - self.trunc`
    /// upwards, so `lo` below that is an insufficient-truncation error. The
    /// caller asserts that nothing nonzero lands below `lo`; a violation is
    /// reported rather than dropped.
    pub fn reflect(&self, m: i64, lo: i64, hi: i64) -> Result<Self> {
        let available_from = m - self.trunc;
        if lo < available_from {
            return Err(Error::InsufficientTruncation {
                needed: m - lo,
                available: self.trunc,
            });
        }
        let mut coeffs = BTreeMap::new();
        for (&d, c) in &self.coeffs {
            let e = m - d;
            if e > hi {
                continue;
            }
            if e < lo {
                return Err(Error::WindowClipsSupport { lo, degree: e });
            }
            coeffs.insert(e, c.clone());
        }
        Ok(QSeries {
            min_deg: lo,
            trunc: hi,
            coeffs,
        })
    }

    /// Re-applies the canonical-form rules; a no-op on any series produced
    /// by this module.
    pub fn canonicalize(&self) -> Self {
        let mut out = self.clone();
        out.coeffs.retain(|&d, c| !c.is_zero() && d <= out.trunc);
        out
    }

    fn add_impl(&self, other: &QSeries, negate_other: bool) -> QSeries {
        let trunc = self.trunc.min(other.trunc);
        let min_deg = self.min_deg.min(other.min_deg);
        let mut coeffs: BTreeMap<i64, BigInt> =
            self.coeffs.range(..=trunc).map(|(&d, c)| (d, c.clone())).collect();
        for (&d, c) in other.coeffs.range(..=trunc) {
            let e = coeffs.entry(d).or_default();
            if negate_other {
                *e -= c;
            } else {
                *e += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        QSeries {
            min_deg,
            trunc,
            coeffs,
        }
    }

    fn mul_impl(&self, other: &QSeries) -> QSeries {
        let trunc = (self.trunc + other.min_deg).min(other.trunc + self.min_deg);
        let min_deg = self.min_deg + other.min_deg;
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&da, ca) in &self.coeffs {
            for (&db, cb) in other.coeffs.range(..=trunc - da) {
                *coeffs.entry(da + db).or_default() += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        QSeries {
            min_deg,
            trunc,
            coeffs,
        }
    }
}

impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        self.trunc == other.trunc && self.coeffs == other.coeffs
    }
}

impl Eq for QSeries {}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.add_impl(rhs, false)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.add_impl(rhs, true)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.mul_impl(rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&d, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match d {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("q")?,
                1 => write!(f, "{mag}q")?,
                _ if unit => write!(f, "q^{d}")?,
                _ => write!(f, "{mag}q^{d}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.trunc + 1)
    }
}

/// `[[degree, "coefficient"], ...]` in ascending degree.
pub(crate) fn series_pairs(s: &QSeries) -> Vec<(i64, String)> {
    s.terms().map(|(d, c)| (d, c.to_string())).collect()
}

#[derive(Serialize, Deserialize)]
struct QSeriesRepr {
    min_deg: i64,
    trunc: i64,
    series: Vec<(i64, String)>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QSeriesRepr {
            min_deg: self.min_deg,
            trunc: self.trunc,
            series: series_pairs(self),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = QSeriesRepr::deserialize(deserializer)?;
        let mut pairs = Vec::with_capacity(repr.series.len());
        let mut last = None;
        for (d, c) in repr.series {
            if last.is_some_and(|l| d <= l) {
                return Err(D::Error::custom("degrees must be strictly ascending"));
            }
            if d < repr.min_deg || d > repr.trunc {
                return Err(D::Error::custom(format!("degree {d} outside window")));
            }
            last = Some(d);
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            pairs.push((d, c));
        }
        Ok(QSeries::from_coeffs(repr.min_deg, repr.trunc, pairs))
    }
}
