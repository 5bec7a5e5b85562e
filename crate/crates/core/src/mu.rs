//! The framed self-intersection operation `μ^fr`, defined algebraically by
//! its generator values and the product rule
//! `μ(ab) = μ(a)b + aμ(b) + (|·|⊗id)κ(a,b) + (id⊗|·|)κ(b,a)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::Serialize;

use crate::algebra::AlgElem;
use crate::bracket::{kappa_bracket, DoubleBracket};
use crate::divergence::phi;
use crate::error::Result;
use crate::forms::nabla_c;
use crate::linear::{q, q_frac, Coeff, LinComb};
use crate::surface::{Presentation, SurfaceSignature};
use crate::tensor::{trace_first, trace_second, triple_word_act, TripleTrace};
use crate::word::{CyclicWord, Generator, Kind, Letter, Word};

/// Rotation numbers of the generators for the standard framing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramingData {
    rot: BTreeMap<Generator, Coeff>,
}

impl FramingData {
    /// `rot(α_i) = ½`, `rot(β_i) = −½`, `rot(γ_j) = ½`, `rot(δ_j) = 2g+j−½`.
    pub fn standard(sig: &SurfaceSignature) -> Self {
        let g = i64::from(sig.genus());
        let rot = sig
            .generators()
            .into_iter()
            .map(|c| {
                let r = match c.kind {
                    Kind::Alpha | Kind::Gamma => q_frac(1, 2),
                    Kind::Beta => q_frac(-1, 2),
                    Kind::Delta => q(2 * g + i64::from(c.index)) - q_frac(1, 2),
                    Kind::Free => unreachable!("surfaces have no free letters"),
                };
                (c, r)
            })
            .collect();
        Self { rot }
    }

    pub fn rot(&self, c: Generator) -> Coeff {
        self.rot.get(&c).cloned().unwrap_or_default()
    }

    /// Replaces one rotation number; used to build deliberately wrong tables.
    pub fn with_rot(mut self, c: Generator, r: Coeff) -> Self {
        self.rot.insert(c, r);
        self
    }
}

fn unit_left(c: &Word) -> TripleTrace {
    TripleTrace {
        right: LinComb::zero(),
        left: LinComb::basis((CyclicWord::unit(), c.clone())),
    }
}

fn unit_right(c: &Word) -> TripleTrace {
    TripleTrace {
        right: LinComb::basis((c.clone(), CyclicWord::unit())),
        left: LinComb::zero(),
    }
}

/// The framing-independent part of `μ(c)`.
fn intrinsic(c: Generator) -> TripleTrace {
    let w = c.word();
    let class = CyclicWord::of(&w);
    match (c.kind, class) {
        (Kind::Alpha | Kind::Gamma, Some(class)) => TripleTrace {
            right: LinComb::from_term((Word::identity(0), class), q(-1)),
            left: LinComb::zero(),
        },
        (Kind::Beta, Some(class)) => TripleTrace {
            right: LinComb::zero(),
            left: LinComb::from_term((class, Word::identity(0)), q(-1)),
        },
        _ => TripleTrace::zero(),
    }
}

/// `μ(c) = (rot(c)+½)·|1_0|⊗c − (rot(c)−½)·c⊗|1_0| + intrinsic(c)`.
pub fn mu_table_with_framing(sig: &SurfaceSignature, framing: &FramingData) -> BTreeMap<Generator, TripleTrace> {
    let half = q_frac(1, 2);
    sig.generators()
        .into_iter()
        .map(|c| {
            let r = framing.rot(c);
            let w = c.word();
            let mut v = unit_left(&w).scale(&(&r + &half));
            v -= &unit_right(&w).scale(&(&r - &half));
            v += &intrinsic(c);
            (c, v)
        })
        .collect()
}

pub fn mu_generator_table(sig: &SurfaceSignature) -> BTreeMap<Generator, TripleTrace> {
    mu_table_with_framing(sig, &FramingData::standard(sig))
}

/// Evaluator for `μ^fr` with a per-word cache.
pub struct MuEngine {
    kappa: DoubleBracket,
    table: BTreeMap<Generator, TripleTrace>,
    cache: Mutex<HashMap<Word, TripleTrace>>,
}

impl MuEngine {
    pub fn new(sig: &SurfaceSignature) -> Self {
        Self::with_framing(sig, &FramingData::standard(sig))
    }

    pub fn with_framing(sig: &SurfaceSignature, framing: &FramingData) -> Self {
        Self {
            kappa: kappa_bracket(sig),
            table: mu_table_with_framing(sig, framing),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn kappa(&self) -> &DoubleBracket {
        &self.kappa
    }

    /// `μ(ab)` from `μ(a)`, `μ(b)` and the κ corrections.
    fn combine(&self, a: &Word, mu_a: &TripleTrace, b: &Word, mu_b: &TripleTrace) -> TripleTrace {
        let mut out = triple_word_act(&Word::identity(a.source()), mu_a, b);
        out += &triple_word_act(a, mu_b, &Word::identity(b.target()));
        out += &trace_first(&self.kappa.eval_words(a, b));
        out += &trace_second(&self.kappa.eval_words(b, a));
        out
    }

    /// `μ(c⁻¹) = −c⁻¹·(μ(c)·c⁻¹ + (|·|⊗id)κ(c,c⁻¹) + (id⊗|·|)κ(c⁻¹,c))`,
    /// forced by `μ(cc⁻¹) = 0`.
    fn on_letter(&self, l: Letter) -> TripleTrace {
        let base = self.table.get(&l.gen).cloned().unwrap_or_default();
        if !l.inverse {
            return base;
        }
        let c = l.gen.word();
        let inv = Word::letter(l);
        let mut inner = triple_word_act(&Word::identity(c.source()), &base, &inv);
        inner += &trace_first(&self.kappa.eval_words(&c, &inv));
        inner += &trace_second(&self.kappa.eval_words(&inv, &c));
        -triple_word_act(&inv, &inner, &Word::identity(inv.target()))
    }

    /// Recursion on the leftmost letter.
    pub fn eval_word(&self, w: &Word) -> TripleTrace {
        match w.len() {
            0 => return TripleTrace::zero(),
            1 => return self.on_letter(w.letters()[0]),
            _ => {}
        }
        if let Some(v) = self.cache.lock().expect("cache poisoned").get(w) {
            return v.clone();
        }
        let head = w.prefix(1);
        let tail = w.suffix(1);
        let v = self.combine(&head, &self.on_letter(w.letters()[0]), &tail, &self.eval_word(&tail));
        self.cache.lock().expect("cache poisoned").insert(w.clone(), v.clone());
        v
    }

    /// The product rule applied at split position `k` (`0 < k < |w|`).
    pub fn eval_split(&self, w: &Word, k: usize) -> TripleTrace {
        let (a, b) = (w.prefix(k), w.suffix(k));
        self.combine(&a, &self.eval_word(&a), &b, &self.eval_word(&b))
    }

    pub fn eval(&self, a: &AlgElem) -> TripleTrace {
        let mut out = TripleTrace::zero();
        for (w, k) in a {
            out.add_scaled(&self.eval_word(w), k);
        }
        out
    }
}

pub fn mu_eval(sig: &SurfaceSignature, a: &AlgElem) -> TripleTrace {
    MuEngine::new(sig).eval(a)
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremCase {
    pub word: String,
    pub residual: String,
    pub status: &'static str,
}

/// `μ^fr(w) + φ_{κ,∇_C}(w)` for each word; every residual should vanish.
pub fn verify_main_theorem(sig: &SurfaceSignature, words: &[Word]) -> Result<Vec<MainTheoremCase>> {
    verify_main_theorem_with(sig, &MuEngine::new(sig), words)
}

pub fn verify_main_theorem_with(sig: &SurfaceSignature, mu: &MuEngine, words: &[Word]) -> Result<Vec<MainTheoremCase>> {
    let pres = Presentation::from(*sig);
    let conn = nabla_c(sig);
    words
        .iter()
        .map(|w| {
            let a = AlgElem::basis(w.clone());
            let residual = mu.eval(&a) + phi(mu.kappa(), &conn, &a, &pres)?;
            Ok(MainTheoremCase {
                word: w.to_string(),
                status: if residual.is_zero() { "pass" } else { "fail" },
                residual: residual.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::make_surface;

    #[test]
    fn generator_table_values() {
        let sig = make_surface(2, 1).unwrap();
        let t = mu_generator_table(&sig);
        assert_eq!(t[&Generator::alpha(1)].to_string(), "|1_0| ⊗ a1 − 1_0 ⊗ |a1|");
        assert_eq!(t[&Generator::beta(2)].to_string(), "−|b2| ⊗ 1_0 + b2 ⊗ |1_0|");
        assert_eq!(t[&Generator::delta(1)].to_string(), "5·|1_0| ⊗ d1 − 4·d1 ⊗ |1_0|");
        let sig = make_surface(1, 1).unwrap();
        assert_eq!(mu_generator_table(&sig)[&Generator::delta(1)].to_string(), "3·|1_0| ⊗ d1 − 2·d1 ⊗ |1_0|");
    }

    #[test]
    fn product_of_alpha_beta() {
        let sig = make_surface(1, 1).unwrap();
        let w = Word::from_letters(0, &[Generator::alpha(1).letter(), Generator::beta(1).letter()]).unwrap();
        assert_eq!(MuEngine::new(&sig).eval_word(&w).to_string(), "|1_0| ⊗ a1 b1 − 1_0 ⊗ |a1 b1|");
    }

    #[test]
    fn inverse_letters_cancel() {
        let sig = make_surface(1, 2).unwrap();
        let mu = MuEngine::new(&sig);
        for c in sig.generators() {
            let l = c.letter();
            let pairs = [[l, l.inv()], [l.inv(), l]];
            for p in pairs {
                let a = Word::letter(p[0]);
                let b = Word::letter(p[1]);
                let combined = mu.combine(&a, &mu.eval_word(&a), &b, &mu.eval_word(&b));
                assert!(combined.is_zero(), "{c}: {combined}");
            }
        }
    }

    #[test]
    fn identities_vanish() {
        let sig = make_surface(1, 1).unwrap();
        assert!(mu_eval(&sig, &AlgElem::basis(Word::identity(1))).is_zero());
    }

    #[test]
    fn wrong_framing_is_detected() {
        let sig = make_surface(1, 1).unwrap();
        let d1 = Generator::delta(1);
        let bad = MuEngine::with_framing(&sig, &FramingData::standard(&sig).with_rot(d1, q(0)));
        let report = verify_main_theorem_with(&sig, &bad, &[d1.word(), Generator::alpha(1).word()]).unwrap();
        assert_eq!(report[0].status, "fail");
        assert_eq!(report[1].status, "pass");
    }
}
