//! Derivations `A → A` and double derivations `A → A⊗A`, tabulated on
//! generators and extended to words by the Leibniz rule.

use std::collections::BTreeMap;

use crate::algebra::{word_mul_left, word_mul_right, AlgElem};
use crate::linear::Coeff;
use crate::tensor::{inner_act, mult2, outer_word, Tensor2};
use crate::word::{Generator, Letter, Word};

/// An `S`-linear derivation, stored by its values on generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    gen_values: BTreeMap<Generator, AlgElem>,
}

impl Derivation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_table(table: impl IntoIterator<Item = (Generator, AlgElem)>) -> Self {
        Self {
            gen_values: table.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn on_generator(&self, c: Generator) -> AlgElem {
        self.gen_values.get(&c).cloned().unwrap_or_default()
    }

    pub fn table(&self) -> &BTreeMap<Generator, AlgElem> {
        &self.gen_values
    }

    pub fn is_zero(&self) -> bool {
        self.gen_values.is_empty()
    }

    /// `f(c⁻¹) = −c⁻¹ f(c) c⁻¹`.
    pub fn on_letter(&self, l: Letter) -> AlgElem {
        let v = self.on_generator(l.gen);
        if !l.inverse || v.is_zero() {
            return v;
        }
        let inv = Word::letter(l);
        -word_mul_right(&word_mul_left(&inv, &v), &inv)
    }

    pub fn eval_word(&self, w: &Word) -> AlgElem {
        let mut out = AlgElem::zero();
        for (j, &l) in w.letters().iter().enumerate() {
            let v = self.on_letter(l);
            if v.is_zero() {
                continue;
            }
            let v = word_mul_right(&word_mul_left(&w.prefix(j), &v), &w.suffix(j + 1));
            out += &v;
        }
        out
    }

    pub fn eval(&self, a: &AlgElem) -> AlgElem {
        a.flat_map(|w| self.eval_word(w))
    }

    /// Endpoint typing: `f(c) ∈ A(s(c), t(c))`.
    pub fn is_well_typed(&self) -> bool {
        self.gen_values.iter().all(|(c, v)| {
            v.keys()
                .all(|w| w.source() == c.source() && w.target() == c.target())
        })
    }
}

/// An `S`-linear double derivation, stored by its values on generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DoubleDerivation {
    gen_values: BTreeMap<Generator, Tensor2>,
}

impl DoubleDerivation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_table(table: impl IntoIterator<Item = (Generator, Tensor2)>) -> Self {
        Self {
            gen_values: table.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn on_generator(&self, c: Generator) -> Tensor2 {
        self.gen_values.get(&c).cloned().unwrap_or_default()
    }

    pub fn table(&self) -> &BTreeMap<Generator, Tensor2> {
        &self.gen_values
    }

    pub fn is_zero(&self) -> bool {
        self.gen_values.is_empty()
    }

    /// `Θ(c⁻¹) = −c⁻¹·Θ(c)·c⁻¹` for the outer action.
    pub fn on_letter(&self, l: Letter) -> Tensor2 {
        let v = self.on_generator(l.gen);
        if !l.inverse || v.is_zero() {
            return v;
        }
        let inv = Word::letter(l);
        -outer_word(&inv, &v, &inv)
    }

    pub fn eval_word(&self, w: &Word) -> Tensor2 {
        let mut out = Tensor2::zero();
        for (j, &l) in w.letters().iter().enumerate() {
            let v = self.on_letter(l);
            if v.is_zero() {
                continue;
            }
            out += &outer_word(&w.prefix(j), &v, &w.suffix(j + 1));
        }
        out
    }

    pub fn eval(&self, a: &AlgElem) -> Tensor2 {
        a.flat_map(|w| self.eval_word(w))
    }

    /// `mult ∘ Θ`.
    pub fn mult(&self) -> Derivation {
        Derivation::from_table(self.gen_values.iter().map(|(c, v)| (*c, mult2(v))))
    }

    /// `(a⊗b̄)·Θ : x ↦ a ·in Θ(x) ·in b`, the right `A^e`-action induced by the
    /// inner structure.
    pub fn act(&self, a: &AlgElem, b: &AlgElem) -> DoubleDerivation {
        DoubleDerivation::from_table(
            self.gen_values
                .iter()
                .map(|(c, v)| (*c, inner_act(a, v, b))),
        )
    }

    pub fn scale(&self, s: &Coeff) -> DoubleDerivation {
        DoubleDerivation::from_table(self.gen_values.iter().map(|(c, v)| (*c, v.scale(s))))
    }

    pub fn add(&self, other: &DoubleDerivation) -> DoubleDerivation {
        let mut table = self.gen_values.clone();
        for (c, v) in &other.gen_values {
            *table.entry(*c).or_default() += v;
        }
        DoubleDerivation::from_table(table)
    }

    /// Endpoint typing: every `p⊗q` in `Θ(c)` has `s(p) = s(c)`, `t(q) = t(c)`.
    pub fn is_well_typed(&self) -> bool {
        self.gen_values.iter().all(|(c, v)| {
            v.keys()
                .all(|(p, q)| p.source() == c.source() && q.target() == c.target())
        })
    }
}

/// The Fox-type double derivation `∂_c` with `∂_c(c') = δ_{cc'} 1_{s(c')}⊗1_{t(c')}`.
pub fn fox_derivation(c: Generator) -> DoubleDerivation {
    DoubleDerivation::from_table([(
        c,
        Tensor2::basis((Word::identity(c.source()), Word::identity(c.target()))),
    )])
}

pub fn fox_partial(c: Generator, a: &AlgElem) -> Tensor2 {
    fox_derivation(c).eval(a)
}
