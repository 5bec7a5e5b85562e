//! The category algebra `A = K𝒢` and its trace space `|A|`.

use std::fmt;

use crate::linear::{coeff_to_string, Coeff, LinComb};
use crate::word::{CyclicWord, Word};

/// Element of the category algebra: a rational combination of reduced words.
pub type AlgElem = LinComb<Word>;

/// Element of the trace space `|A| = A/[A, A]`.
pub type TraceElem = LinComb<CyclicWord>;

pub fn word_elem(w: Word) -> AlgElem {
    AlgElem::basis(w)
}

/// `[x][y] = [xy]` when composable, zero otherwise.
pub fn word_compose(x: &Word, y: &Word) -> AlgElem {
    x.compose(y).map(AlgElem::basis).unwrap_or_default()
}

pub fn alg_mul(x: &AlgElem, y: &AlgElem) -> AlgElem {
    let mut out = AlgElem::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            if let Some(ab) = a.compose(b) {
                out.add_term(ab, ca * cb);
            }
        }
    }
    out
}

/// Left multiplication by a single word.
pub fn word_mul_left(w: &Word, x: &AlgElem) -> AlgElem {
    x.filter_map_keys(|b| w.compose(b))
}

/// Right multiplication by a single word.
pub fn word_mul_right(x: &AlgElem, w: &Word) -> AlgElem {
    x.filter_map_keys(|a| a.compose(w))
}

/// `Σ_v [1_v]`, the unit of the category algebra.
pub fn unit(objects: &[u32]) -> AlgElem {
    objects.iter().map(|&v| (Word::identity(v), Coeff::from_integer(1.into()))).collect()
}

pub fn trace_word(w: &Word) -> TraceElem {
    CyclicWord::of(w).map(TraceElem::basis).unwrap_or_default()
}

pub fn trace_project(x: &AlgElem) -> TraceElem {
    x.filter_map_keys(CyclicWord::of)
}

pub fn alg_inverse(w: &Word) -> Word {
    w.inverse()
}

impl fmt::Display for LinComb<Word> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{}", coeff_to_string(c), w)?;
        }
        Ok(())
    }
}

impl fmt::Display for LinComb<CyclicWord> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::linear::write_terms(f, self.iter(), |f, w| write!(f, "{w}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::q;
    use crate::word::Generator;

    const A1: Generator = Generator::alpha(1);
    const B1: Generator = Generator::beta(1);
    const G1: Generator = Generator::gamma(1);
    const D1: Generator = Generator::delta(1);

    #[test]
    fn identities_select_composable_terms() {
        let ones = unit(&[0, 1]);
        let d = word_elem(D1.word());
        assert_eq!(alg_mul(&ones, &d), d);
        assert_eq!(alg_mul(&word_elem(Word::identity(0)), &d), AlgElem::zero());
        assert_eq!(alg_mul(&d, &ones), d);
    }

    #[test]
    fn bilinearity() {
        let x = word_elem(A1.word()).scale(&q(2));
        let y = word_elem(B1.word()).scale(&q(3));
        assert_eq!(alg_mul(&x, &y).to_string(), "6*a1 b1");
    }

    #[test]
    fn non_loops_have_zero_trace() {
        let dg = D1.word().compose(&G1.word()).unwrap();
        assert!(trace_word(&dg).is_zero());
        assert_eq!(trace_word(&Word::identity(1)), trace_word(&Word::identity(0)));
    }

    #[test]
    fn algebra_element_text_form() {
        let mut x = word_elem(B1.word());
        x.add_term(A1.word(), q(-1) / q(2));
        assert_eq!(x.to_string(), "-1/2*a1 + 1*b1");
        assert_eq!(AlgElem::zero().to_string(), "0");
    }
}
