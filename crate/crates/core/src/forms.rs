//! Non-commutative 1-forms `Ω¹A` in the dualisable basis, the universal
//! derivation `d`, contractions, and basis-flat connections.
//!
//! A basis element `e_c` is `(dc)c⁻¹` for a groupoid generator and `dw` for
//! a free letter of `T(W)`. Both live at a single object, `s(c)`, so a
//! monomial `u·e_c·w` needs `t(u) = s(c) = s(w)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::AlgElem;
use crate::derivation::{fox_derivation, DoubleDerivation};
use crate::error::{Error, Result};
use crate::linear::{q, write_terms, Coeff, LinComb};
use crate::surface::{Presentation, SurfaceSignature};
use crate::tensor::{outer_word, Tensor2};
use crate::word::{Generator, Letter, Word};

/// `Σ coeff · u·e_c·w`, keyed by `(c, u, w)`.
pub type OneForm = LinComb<(Generator, Word, Word)>;

/// How `u·d(ℓ)·w` is rewritten into the basis.
///
/// `d(c) = e_c·c`, `d(c⁻¹) = −c⁻¹·e_c` for groupoid letters, and
/// `d(w) = e_w` for free letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LetterRewrite {
    pub sign: i64,
    pub basis: Generator,
    /// Letter appended to the left slot.
    pub left: Option<Letter>,
    /// Letter prepended to the right slot.
    pub right: Option<Letter>,
}

pub fn rewrite_letter(l: Letter) -> LetterRewrite {
    if !l.gen.invertible() {
        LetterRewrite {
            sign: 1,
            basis: l.gen,
            left: None,
            right: None,
        }
    } else if l.inverse {
        LetterRewrite {
            sign: -1,
            basis: l.gen,
            left: Some(l),
            right: None,
        }
    } else {
        LetterRewrite {
            sign: 1,
            basis: l.gen,
            left: None,
            right: Some(l),
        }
    }
}

/// The trailing factor `t` in `e_c = dc·t`: `c⁻¹`, or nothing for free letters.
pub fn basis_tail(c: Generator) -> Option<Letter> {
    c.invertible().then(|| c.inv_letter())
}

/// The basis element `e_c` as a 1-form.
pub fn basis_element(c: Generator) -> OneForm {
    let v = c.source();
    OneForm::basis((c, Word::identity(v), Word::identity(v)))
}

fn push_word(w: &Word, l: Letter) -> Option<Word> {
    w.compose(&Word::letter(l))
}

fn prepend_word(l: Letter, w: &Word) -> Option<Word> {
    Word::letter(l).compose(w)
}

/// `l · d(w) · r` expanded into the basis by the Leibniz rule.
pub fn d_sandwich(l: &Word, w: &Word, r: &Word) -> OneForm {
    let mut out = OneForm::zero();
    if l.target() != w.source() || w.target() != r.source() {
        return out;
    }
    for (j, &letter) in w.letters().iter().enumerate() {
        let rw = rewrite_letter(letter);
        let left = l.compose(&w.prefix(j));
        let right = w.suffix(j + 1).compose(r);
        let (Some(mut left), Some(mut right)) = (left, right) else {
            continue;
        };
        if let Some(x) = rw.left {
            match push_word(&left, x) {
                Some(v) => left = v,
                None => continue,
            }
        }
        if let Some(x) = rw.right {
            match prepend_word(x, &right) {
                Some(v) => right = v,
                None => continue,
            }
        }
        out.add_term((rw.basis, left, right), q(rw.sign));
    }
    out
}

/// The universal derivation `d : A → Ω¹A`.
pub fn differential(a: &AlgElem) -> OneForm {
    a.flat_map(|w| {
        let v = Word::identity(w.source());
        let t = Word::identity(w.target());
        d_sandwich(&v, w, &t)
    })
}

/// `l · d(x) · r` for an algebra element `x`.
pub fn d_elem_sandwich(l: &Word, x: &AlgElem, r: &Word) -> OneForm {
    x.flat_map(|w| d_sandwich(l, w, r))
}

/// Bimodule action `l·ω·r` by single words.
pub fn form_act(l: &Word, omega: &OneForm, r: &Word) -> OneForm {
    omega.filter_map_keys(|(c, u, w)| Some((*c, l.compose(u)?, w.compose(r)?)))
}

pub fn form_act_elem(a: &AlgElem, omega: &OneForm, b: &AlgElem) -> OneForm {
    let mut out = OneForm::zero();
    for (x, cx) in a {
        for (y, cy) in b {
            out.add_scaled(&form_act(x, omega, y), &(cx * cy));
        }
    }
    out
}

/// `i_Θ(ω)` for a double derivation: `u·e_c·w ↦ u·(Θ(c)·t)·w` with
/// `e_c = dc·t`.
pub fn contract(theta: &DoubleDerivation, omega: &OneForm) -> Tensor2 {
    let mut out = Tensor2::zero();
    for ((c, u, w), coeff) in omega {
        let tc = theta.on_generator(*c);
        if tc.is_zero() {
            continue;
        }
        let right = match basis_tail(*c) {
            Some(t) => match prepend_word(t, w) {
                Some(r) => r,
                None => continue,
            },
            None => w.clone(),
        };
        out.add_scaled(&outer_word(u, &tc, &right), coeff);
    }
    out
}

/// Re-derives `ω = Σ_c i_{∂_c}(ω)' dc i_{∂_c}(ω)''` over `gens`.
pub fn reconstruct(omega: &OneForm, gens: &[Generator]) -> OneForm {
    let mut out = OneForm::zero();
    for &c in gens {
        let i = contract(&fox_derivation(c), omega);
        for ((p, q_), coeff) in &i {
            let cw = Word::letter(c.letter());
            out.add_scaled(&d_sandwich(p, &cw, q_), coeff);
        }
    }
    out
}

/// The image of `ω` in `A⊗_S A`, where `Ω¹_S A = Ker(mult)`:
/// `u·e_c·w ↦ u⊗(c·t·w) − uc⊗(t·w)`.
pub fn expand(omega: &OneForm) -> Tensor2 {
    let mut out = Tensor2::zero();
    for ((c, u, w), coeff) in omega {
        let tw = match basis_tail(*c) {
            Some(t) => prepend_word(t, w),
            None => Some(w.clone()),
        };
        let Some(tw) = tw else { continue };
        let cw = Word::letter(c.letter());
        if let Some(ctw) = cw.compose(&tw) {
            out.add_term((u.clone(), ctw), coeff.clone());
        }
        if let Some(uc) = u.compose(&cw) {
            out.add_term((uc, tw), -coeff.clone());
        }
    }
    out
}

/// Coefficient table of `ω` at generator `c` as an element of `A⊗A`.
pub fn coefficient_at(omega: &OneForm, c: Generator) -> Tensor2 {
    omega.filter_map_keys(|(g, u, w)| (*g == c).then(|| (u.clone(), w.clone())))
}

/// Typing invariant: `t(u) = s(c) = s(w)` on every monomial.
pub fn is_well_typed(omega: &OneForm) -> bool {
    omega
        .keys()
        .all(|(c, u, w)| u.target() == c.source() && w.source() == c.source())
}

/// A connection on `Ω¹A` annihilating the declared basis `{e_c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    flat_basis: BTreeSet<Generator>,
}

impl Connection {
    pub fn basis_flat(gens: impl IntoIterator<Item = Generator>) -> Self {
        Self {
            flat_basis: gens.into_iter().collect(),
        }
    }

    pub fn flat_basis(&self) -> &BTreeSet<Generator> {
        &self.flat_basis
    }

    /// The connection's Christoffel data on `e_c`: zero for declared basis
    /// elements, unknown otherwise.
    pub fn annihilates(&self, c: Generator) -> bool {
        self.flat_basis.contains(&c)
    }

    /// Checks that every basis element of the algebra is flat, so the
    /// contraction `i_{Θ^e}∇` acts on coefficients only.
    pub fn check_basis_flat(&self, gens: &[Generator]) -> Result<()> {
        for c in gens {
            if !self.annihilates(*c) {
                return Err(Error::UnsupportedConnection(format!(
                    "basis element e_{c} is not declared flat"
                )));
            }
        }
        Ok(())
    }

    /// `∇(u·e_c·w) = d(u⊗w̄)⊗e_c`, returned as the coefficient pairs
    /// `(u, w)` whose differential is taken, keyed by basis element.
    pub fn covariant_coefficients(&self, omega: &OneForm) -> Result<OneForm> {
        for (c, _, _) in omega.keys() {
            if !self.annihilates(*c) {
                return Err(Error::UnsupportedConnection(format!("e_{c} has no declared flat lift")));
            }
        }
        Ok(omega.clone())
    }
}

/// `∇_C` with `∇_C((dc)c⁻¹) = 0` for every surface generator.
pub fn nabla_c(sig: &SurfaceSignature) -> Connection {
    Connection::basis_flat(sig.generators())
}

/// `∇_W` with `∇_W(dw) = 0` on `T(W)`, or `∇_C` on a surface.
pub fn nabla_flat(pres: &Presentation) -> Connection {
    Connection::basis_flat(pres.generators())
}

impl fmt::Display for LinComb<(Generator, Word, Word)> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.iter(), |f, (c, u, w)| write!(f, "{u} * D[{c}] * {w}"))
    }
}

pub fn scale_form(omega: &OneForm, s: &Coeff) -> OneForm {
    omega.scale(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{alg_mul, word_elem};
    use crate::tensor::simple_tensor;

    const A1: Generator = Generator::alpha(1);
    const B1: Generator = Generator::beta(1);
    const D1: Generator = Generator::delta(1);

    fn word(ls: &[Letter]) -> Word {
        Word::from_letters(ls[0].source(), ls).unwrap()
    }

    #[test]
    fn d_of_identity_is_zero() {
        assert!(differential(&word_elem(Word::identity(1))).is_zero());
    }

    #[test]
    fn d_of_generator_in_basis() {
        let d = differential(&word_elem(A1.word()));
        assert_eq!(d, OneForm::basis((A1, Word::identity(0), A1.word())));
    }

    #[test]
    fn d_of_product() {
        let ab = word(&[A1.letter(), B1.letter()]);
        let d = differential(&word_elem(ab.clone()));
        let mut expected = OneForm::basis((A1, Word::identity(0), ab));
        expected.add_term((B1, A1.word(), B1.word()), q(1));
        assert_eq!(d, expected);
    }

    #[test]
    fn d_of_inverse_letter() {
        let inv = Word::letter(D1.inv_letter());
        let d = differential(&word_elem(inv.clone()));
        assert_eq!(d, OneForm::from_term((D1, inv, Word::identity(1)), q(-1)));
        assert!(is_well_typed(&d));
    }

    #[test]
    fn expansion_lands_in_kernel_of_mult() {
        let w = word(&[A1.letter(), B1.inv_letter(), D1.inv_letter()]);
        let e = expand(&differential(&word_elem(w.clone())));
        let mut expected = simple_tensor(Word::identity(0), w.clone());
        expected.add_term((w, Word::identity(1)), q(-1));
        assert_eq!(e, expected);
    }

    #[test]
    fn contraction_with_fox_derivative_reads_coefficients() {
        let omega = form_act(&A1.word(), &basis_element(B1), &Word::identity(0));
        let i = contract(&fox_derivation(B1), &omega);
        assert_eq!(i, simple_tensor(A1.word(), Word::letter(B1.inv_letter())));
        assert_eq!(reconstruct(&omega, &[A1, B1]), omega);
    }

    #[test]
    fn leibniz_for_d() {
        let x = word_elem(word(&[A1.letter(), B1.letter()]));
        let y = word_elem(word(&[B1.inv_letter(), A1.letter(), A1.letter()]));
        let one = word_elem(Word::identity(0));
        let lhs = differential(&alg_mul(&x, &y));
        let rhs = form_act_elem(&one, &differential(&x), &y) + form_act_elem(&x, &differential(&y), &one);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn free_letters_use_plain_dw() {
        let w1 = Generator::free(1);
        let w2 = Generator::free(2);
        let ww = word(&[w1.letter(), w2.letter()]);
        let d = differential(&word_elem(ww));
        let mut expected = OneForm::basis((w1, Word::identity(0), w2.word()));
        expected.add_term((w2, w1.word(), Word::identity(0)), q(1));
        assert_eq!(d, expected);
    }

    #[test]
    fn connection_must_cover_all_generators() {
        let conn = Connection::basis_flat([A1]);
        assert!(conn.check_basis_flat(&[A1, B1]).is_err());
        assert!(conn.check_basis_flat(&[A1]).is_ok());
    }
}
