//! Finitely supported rational linear combinations over an ordered key type.
//!
//! Every algebraic carrier in the crate (algebra elements, tensors, trace
//! spaces) is a `LinComb` over some key. Keys are kept in a `BTreeMap`, so
//! iteration order is the canonical term order and zero coefficients are never
//! stored.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational coefficient.
pub type Coeff = BigRational;

pub fn q(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p` or `p/q`.
pub fn coeff_to_string(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `p`, `-p` or `p/q`; rejects zero denominators.
pub fn parse_coeff(s: &str) -> Option<Coeff> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Coeff>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(key: K, coeff: Coeff) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn basis(key: K) -> Self {
        Self::from_term(key, Coeff::one())
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

    pub fn coeff(&self, key: &K) -> Coeff {
        self.terms.get(key).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add_term(&mut self, key: K, coeff: Coeff) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &Coeff) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn scale(&self, s: &Coeff) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Coeff> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Coeff> {
        self.terms.keys()
    }

    /// Linear extension of a key map whose image is a linear combination.
    pub fn flat_map<K2, F>(&self, mut f: F) -> LinComb<K2>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> LinComb<K2>,
    {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Linear extension of a partial key map; `None` images are dropped.
    pub fn filter_map_keys<K2, F>(&self, mut f: F) -> LinComb<K2>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> Option<K2>,
    {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            if let Some(k2) = f(k) {
                out.add_term(k2, c.clone());
            }
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Coeff)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Coeff)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Coeff);
    type IntoIter = btree_map::Iter<'a, K, Coeff>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> AddAssign<&LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord + Clone> SubAssign<&LinComb<K>> for LinComb<K> {
    fn sub_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c.clone());
        }
    }
}

impl<K: Ord + Clone> Add for LinComb<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone> Add<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> Sub for LinComb<K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<K: Ord + Clone> Sub<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Ord + Clone> Neg for LinComb<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<K: Ord + Clone> Neg for &LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        self.clone().neg()
    }
}

/// Writes `Σ c·term` in the `3·x − y` style shared by every tensor carrier.
pub(crate) fn write_terms<'a, T: 'a, I, F>(f: &mut fmt::Formatter<'_>, terms: I, mut term: F) -> fmt::Result
where
    I: IntoIterator<Item = (T, &'a Coeff)>,
    F: FnMut(&mut fmt::Formatter<'_>, T) -> fmt::Result,
{
    let mut first = true;
    for (t, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        match (first, neg) {
            (true, true) => f.write_str("−")?,
            (true, false) => {}
            (false, true) => f.write_str(" − ")?,
            (false, false) => f.write_str(" + ")?,
        }
        if !abs.is_one() {
            write!(f, "{}·", coeff_to_string(&abs))?;
        }
        term(f, t)?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut a = LinComb::basis(3u32);
        a.add_term(3, -q(1));
        assert!(a.is_zero());
        a.add_term(5, q(0));
        assert!(a.is_zero());
    }

    #[test]
    fn coefficient_formatting() {
        assert_eq!(coeff_to_string(&q(-4)), "-4");
        assert_eq!(coeff_to_string(&q_frac(6, -4)), "-3/2");
    }
}
