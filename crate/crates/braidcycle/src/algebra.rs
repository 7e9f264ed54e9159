//! Integer Laurent polynomials in one variable `x`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A finite sum of terms `c * x^e` with nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<BigInt, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `sign * x^exponent`.
    pub fn monomial(sign: i32, exponent: impl Into<BigInt>) -> Self {
        assert!(sign == 1 || sign == -1, "monomial sign must be +1 or -1");
        let mut p = Self::zero();
        p.add_term(exponent.into(), BigInt::from(sign));
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I, E, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (E, C)>,
        E: Into<BigInt>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e.into(), c.into());
        }
        p
    }

    pub fn add_term(&mut self, exponent: BigInt, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BigInt, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponent: &BigInt) -> BigInt {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&BigInt::zero())
    }

    /// The polynomial with its `x^0` term removed.
    pub fn without_constant(&self) -> Self {
        let mut p = self.clone();
        p.terms.remove(&BigInt::zero());
        p
    }

    /// Value of the derivative at `x = 1`, i.e. the sum of `c * e`.
    pub fn derivative_at_one(&self) -> BigInt {
        self.terms.iter().map(|(e, c)| e * c).sum()
    }

    /// Value at `x = 1`, i.e. the sum of coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn min_exponent(&self) -> Option<&BigInt> {
        self.terms.keys().next()
    }

    pub fn max_exponent(&self) -> Option<&BigInt> {
        self.terms.keys().next_back()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, e: &BigInt) -> fmt::Result {
    if e.is_one() {
        write!(f, "x")
    } else {
        write!(f, "x^{e}")
    }
}

/// Canonical form: descending exponents, e.g. `x^3 + 2*x - 1 - x^-2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write_power(f, e)?;
            } else {
                write!(f, "{mag}*")?;
                write_power(f, e)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse Laurent polynomial term `{0}`")]
pub struct ParsePolyError(pub String);

impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    /// Accepts the canonical text form, with optional spaces and terms in any order.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParsePolyError(s.to_string()));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut chunks = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.char_indices() {
            let after_caret = compact[..i].ends_with('^');
            if (ch == '+' || ch == '-') && i > 0 && !after_caret {
                chunks.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        chunks.push(cur);

        let mut p = Self::zero();
        for chunk in chunks {
            let bad = || ParsePolyError(chunk.clone());
            let (sign, body) = match chunk.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, chunk.strip_prefix('+').unwrap_or(&chunk)),
            };
            let (coeff, power) = match body.split_once('*') {
                Some((c, x)) => (BigInt::from_str(c).map_err(|_| bad())?, Some(x)),
                None if body.starts_with('x') => (BigInt::one(), Some(body)),
                None => (BigInt::from_str(body).map_err(|_| bad())?, None),
            };
            let exp = match power {
                None => BigInt::zero(),
                Some("x") => BigInt::one(),
                Some(x) => {
                    let e = x.strip_prefix("x^").ok_or_else(bad)?;
                    BigInt::from_str(e).map_err(|_| bad())?
                }
            };
            if coeff.is_zero() {
                return Err(bad());
            }
            p.add_term(exp, coeff * sign);
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let key = e.to_string();
            match c.to_i64() {
                Some(v) => map.serialize_entry(&key, &v)?,
                None => map.serialize_entry(&key, &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(i64),
            Text(String),
        }

        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a map from decimal exponents to integer coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((k, v)) = access.next_entry::<String, Coeff>()? {
                    let e = BigInt::from_str(&k).map_err(de::Error::custom)?;
                    let c = match v {
                        Coeff::Int(i) => BigInt::from(i),
                        Coeff::Text(t) => BigInt::from_str(&t).map_err(de::Error::custom)?,
                    };
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }

        deserializer.deserialize_map(PolyVisitor)
    }
}
