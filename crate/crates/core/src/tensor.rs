//! Tensor carriers: `A⊗A`, `|trip(A)| ≅ (A⊗|A|) ⊕ (|A|⊗A)` and
//! `|A^e| ≅ |A|⊗|A|`, with their actions and structure maps.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::algebra::AlgElem;
use crate::linear::{write_terms, Coeff, LinComb};
use crate::word::{CyclicWord, Word};

/// Element of `A⊗A`; the key `(p, q)` stands for `p⊗q`.
pub type Tensor2 = LinComb<(Word, Word)>;

/// Element of `|A^e|`, written in `|A|⊗|A|` coordinates.
pub type TraceTensor2 = LinComb<(CyclicWord, CyclicWord)>;

/// Element of `|trip(A)|`: `right` holds `x⊗|y|` terms, `left` holds `|z|⊗w`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TripleTrace {
    pub right: LinComb<(Word, CyclicWord)>,
    pub left: LinComb<(CyclicWord, Word)>,
}

pub fn tensor(a: &AlgElem, b: &AlgElem) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (p, cp) in a {
        for (q, cq) in b {
            out.add_term((p.clone(), q.clone()), cp * cq);
        }
    }
    out
}

pub fn simple_tensor(p: Word, q: Word) -> Tensor2 {
    Tensor2::basis((p, q))
}

/// `l·(p⊗q)·r = lp⊗qr` for single words.
pub fn outer_word(l: &Word, t: &Tensor2, r: &Word) -> Tensor2 {
    t.filter_map_keys(|(p, q)| Some((l.compose(p)?, q.compose(r)?)))
}

/// `l ·in (p⊗q) ·in r = pr⊗lq` for single words.
pub fn inner_word(l: &Word, t: &Tensor2, r: &Word) -> Tensor2 {
    t.filter_map_keys(|(p, q)| Some((p.compose(r)?, l.compose(q)?)))
}

pub fn outer_act(a: &AlgElem, t: &Tensor2, b: &AlgElem) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (x, cx) in a {
        for (y, cy) in b {
            out.add_scaled(&outer_word(x, t, y), &(cx * cy));
        }
    }
    out
}

pub fn inner_act(a: &AlgElem, t: &Tensor2, b: &AlgElem) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (x, cx) in a {
        for (y, cy) in b {
            out.add_scaled(&inner_word(x, t, y), &(cx * cy));
        }
    }
    out
}

pub fn mult2(t: &Tensor2) -> AlgElem {
    t.filter_map_keys(|(p, q)| p.compose(q))
}

pub fn flip(t: &Tensor2) -> Tensor2 {
    t.filter_map_keys(|(p, q)| Some((q.clone(), p.clone())))
}

/// `(|·|⊗id)`: `p⊗q ↦ |p|⊗q`.
pub fn trace_first(t: &Tensor2) -> TripleTrace {
    TripleTrace {
        right: LinComb::zero(),
        left: t.filter_map_keys(|(p, q)| Some((CyclicWord::of(p)?, q.clone()))),
    }
}

/// `(id⊗|·|)`: `p⊗q ↦ p⊗|q|`.
pub fn trace_second(t: &Tensor2) -> TripleTrace {
    TripleTrace {
        right: t.filter_map_keys(|(p, q)| Some((p.clone(), CyclicWord::of(q)?))),
        left: LinComb::zero(),
    }
}

/// `x⊗|y| + |z|⊗w ↦ x⊗|y| + w⊗|z|`.
pub fn fold(t: &TripleTrace) -> TripleTrace {
    let mut right = t.right.clone();
    for ((z, w), c) in &t.left {
        right.add_term((w.clone(), z.clone()), c.clone());
    }
    TripleTrace {
        right,
        left: LinComb::zero(),
    }
}

/// `|mult|`: both summands collapse to `|x|⊗|y|`.
pub fn mult_trace(t: &TripleTrace) -> TraceTensor2 {
    let mut out = TraceTensor2::zero();
    for ((x, y), c) in &t.right {
        if let Some(x) = CyclicWord::of(x) {
            out.add_term((x, y.clone()), c.clone());
        }
    }
    for ((x, y), c) in &t.left {
        if let Some(y) = CyclicWord::of(y) {
            out.add_term((x.clone(), y), c.clone());
        }
    }
    out
}

/// `u⊗v ↦ u⊗v + v⊗u`.
pub fn sym(t: &TraceTensor2) -> TraceTensor2 {
    let mut out = t.clone();
    for ((u, v), c) in t {
        out.add_term((v.clone(), u.clone()), c.clone());
    }
    out
}

/// Action on the non-trace factor by single words.
pub fn triple_word_act(l: &Word, t: &TripleTrace, r: &Word) -> TripleTrace {
    let mul = |x: &Word| l.compose(x)?.compose(r);
    TripleTrace {
        right: t.right.filter_map_keys(|(x, y)| Some((mul(x)?, y.clone()))),
        left: t.left.filter_map_keys(|(y, x)| Some((y.clone(), mul(x)?))),
    }
}

pub fn triple_act(a: &AlgElem, t: &TripleTrace, b: &AlgElem) -> TripleTrace {
    let mut out = TripleTrace::zero();
    for (x, cx) in a {
        for (y, cy) in b {
            out.add_scaled(&triple_word_act(x, t, y), &(cx * cy));
        }
    }
    out
}

impl TripleTrace {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.right.is_zero() && self.left.is_zero()
    }

    pub fn add_scaled(&mut self, other: &TripleTrace, s: &Coeff) {
        self.right.add_scaled(&other.right, s);
        self.left.add_scaled(&other.left, s);
    }

    pub fn scale(&self, s: &Coeff) -> Self {
        Self {
            right: self.right.scale(s),
            left: self.left.scale(s),
        }
    }

    pub fn term_count(&self) -> usize {
        self.right.len() + self.left.len()
    }
}

impl AddAssign<&TripleTrace> for TripleTrace {
    fn add_assign(&mut self, rhs: &TripleTrace) {
        self.right += &rhs.right;
        self.left += &rhs.left;
    }
}

impl SubAssign<&TripleTrace> for TripleTrace {
    fn sub_assign(&mut self, rhs: &TripleTrace) {
        self.right -= &rhs.right;
        self.left -= &rhs.left;
    }
}

impl Add for TripleTrace {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl Sub for TripleTrace {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl Neg for TripleTrace {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            right: -self.right,
            left: -self.left,
        }
    }
}

impl fmt::Display for LinComb<(Word, Word)> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.iter(), |f, (p, q)| write!(f, "{p} ⊗ {q}"))
    }
}

impl fmt::Display for LinComb<(CyclicWord, CyclicWord)> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.iter(), |f, (u, v)| write!(f, "{u} ⊗ {v}"))
    }
}

enum TripleTerm<'a> {
    Left(&'a CyclicWord, &'a Word),
    Right(&'a Word, &'a CyclicWord),
}

impl fmt::Display for TripleTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let left = self.left.iter().map(|((z, w), c)| (TripleTerm::Left(z, w), c));
        let right = self.right.iter().map(|((x, y), c)| (TripleTerm::Right(x, y), c));
        write_terms(f, left.chain(right), |f, t| match t {
            TripleTerm::Left(z, w) => write!(f, "{z} ⊗ {w}"),
            TripleTerm::Right(x, y) => write!(f, "{x} ⊗ {y}"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{alg_mul, word_elem};
    use crate::linear::q;
    use crate::word::Generator;

    const A1: Generator = Generator::alpha(1);
    const B1: Generator = Generator::beta(1);
    const G1: Generator = Generator::gamma(1);
    const D1: Generator = Generator::delta(1);

    fn w(g: Generator) -> Word {
        g.word()
    }

    fn one(v: u32) -> Word {
        Word::identity(v)
    }

    #[test]
    fn outer_action_on_idempotents() {
        let t = simple_tensor(one(0), one(0));
        assert_eq!(outer_word(&w(A1), &t, &w(B1)), simple_tensor(w(A1), w(B1)));
        let dg = simple_tensor(w(D1), w(G1));
        assert_eq!(outer_word(&one(1), &dg, &one(0)), dg);
        assert!(outer_word(&one(0), &dg, &w(A1)).is_zero());
    }

    #[test]
    fn inner_action_formula() {
        let t = simple_tensor(w(A1), w(B1));
        let expected = simple_tensor(w(A1).compose(&w(G1)).unwrap(), w(B1).compose(&w(B1)).unwrap());
        assert_eq!(inner_word(&w(B1), &t, &w(G1)), expected);
    }

    #[test]
    fn mult_of_non_composable_idempotents_vanishes() {
        assert!(mult2(&simple_tensor(one(1), one(0))).is_zero());
        let mut t = simple_tensor(one(0), w(A1));
        t.add_term((w(A1), one(0)), q(-1));
        assert!(mult2(&t).is_zero());
        assert_eq!(mult2(&simple_tensor(w(B1), w(A1))), alg_mul(&word_elem(w(B1)), &word_elem(w(A1))));
    }

    #[test]
    fn fold_swaps_only_the_left_summand() {
        let a = CyclicWord::of(&w(A1)).unwrap();
        let t = TripleTrace {
            right: LinComb::basis((one(0), a.clone())),
            left: LinComb::from_term((CyclicWord::unit(), w(A1)), q(-1)),
        };
        let folded = fold(&t);
        assert!(folded.left.is_zero());
        assert_eq!(folded.to_string(), "1_0 ⊗ |a1| − a1 ⊗ |1_0|");
        assert!(mult_trace(&t).is_zero());
    }

    #[test]
    fn sym_of_skew_element_vanishes() {
        let a = CyclicWord::of(&w(A1)).unwrap();
        let u = CyclicWord::unit();
        let mut t = TraceTensor2::basis((a.clone(), u.clone()));
        t.add_term((u, a), q(-1));
        assert!(sym(&t).is_zero());
        let s = sym(&TraceTensor2::basis((CyclicWord::of(&w(B1)).unwrap(), CyclicWord::unit())));
        assert_eq!(sym(&s), s.scale(&q(2)));
    }

    #[test]
    fn triple_action_hits_the_word_factor() {
        let t = TripleTrace {
            right: LinComb::basis((one(0), CyclicWord::of(&w(A1)).unwrap())),
            left: LinComb::zero(),
        };
        let out = triple_word_act(&w(A1), &t, &w(B1));
        assert_eq!(out.to_string(), "a1 b1 ⊗ |a1|");
    }
}
