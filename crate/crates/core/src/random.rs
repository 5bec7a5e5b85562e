//! Seeded generators for words, operator tables and pairings used by the
//! verification suites. The same seed always yields the same sequence.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bracket::DoubleBracket;
use crate::derivation::DoubleDerivation;
use crate::linear::{q, q_frac, Coeff};
use crate::surface::Presentation;
use crate::tensor::Tensor2;
use crate::tensoralg::PairingMatrix;
use crate::word::{Letter, Word};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn letters_from(pres: &Presentation, v: u32) -> Vec<Letter> {
    let mut out = Vec::new();
    for g in pres.generators() {
        if g.source() == v {
            out.push(g.letter());
        }
        if g.invertible() && g.target() == v {
            out.push(g.inv_letter());
        }
    }
    out
}

/// A reduced word of exactly `len` letters starting at `start`, or `None`
/// if the walk runs into a dead end.
fn walk(rng: &mut SuiteRng, pres: &Presentation, start: u32, len: usize) -> Option<Word> {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    let mut here = start;
    for _ in 0..len {
        let choices: Vec<Letter> = letters_from(pres, here)
            .into_iter()
            .filter(|l| letters.last().is_none_or(|p| !p.cancels(*l)))
            .collect();
        let l = *choices.choose(rng)?;
        here = l.target();
        letters.push(l);
    }
    Word::from_letters(start, &letters)
}

/// A word starting at `start` whose length is uniform in `0..=max_len`.
pub fn random_word_from(rng: &mut SuiteRng, pres: &Presentation, start: u32, max_len: usize) -> Word {
    loop {
        let len = rng.gen_range(0..=max_len);
        if let Some(w) = walk(rng, pres, start, len) {
            return w;
        }
    }
}

/// A word from a uniformly chosen object.
pub fn random_word(rng: &mut SuiteRng, pres: &Presentation, max_len: usize) -> Word {
    let objects = pres.objects();
    let start = *objects.choose(rng).expect("presentations have objects");
    random_word_from(rng, pres, start, max_len)
}

/// A word from `start` to `end`; lengths below 2 are raised so every pair
/// of objects is reachable.
pub fn random_path(rng: &mut SuiteRng, pres: &Presentation, start: u32, end: u32, max_len: usize) -> Word {
    let max_len = max_len.max(2);
    loop {
        let w = random_word_from(rng, pres, start, max_len);
        if w.target() == end {
            return w;
        }
    }
}

/// A loop word with length in `1..=max_len` (the identity is excluded).
pub fn random_loop(rng: &mut SuiteRng, pres: &Presentation, max_len: usize) -> Word {
    loop {
        let w = random_word(rng, pres, max_len.max(1));
        if w.is_loop() && !w.is_identity() {
            return w;
        }
    }
}

/// A pair `(a, b)` with `t(a) = s(b)`.
pub fn random_composable_pair(rng: &mut SuiteRng, pres: &Presentation, max_len: usize) -> (Word, Word) {
    let a = random_word(rng, pres, max_len);
    let b = random_word_from(rng, pres, a.target(), max_len);
    (a, b)
}

/// A small nonzero rational: `±1, ±2, ±3` or `±1/2`.
pub fn random_coeff(rng: &mut SuiteRng) -> Coeff {
    let magnitude = match rng.gen_range(0..4) {
        0 => q_frac(1, 2),
        k => q(k),
    };
    if rng.gen_bool(0.5) {
        -magnitude
    } else {
        magnitude
    }
}

/// A double derivation whose value on each generator `c` has 0–2 monomials
/// `p⊗q` with `s(p) = s(c)`, `t(q) = t(c)` and `|p|, |q| ≤ max_len`.
pub fn random_double_derivation(rng: &mut SuiteRng, pres: &Presentation, max_len: usize) -> DoubleDerivation {
    let table: Vec<_> = pres
        .generators()
        .into_iter()
        .map(|c| {
            let mut v = Tensor2::zero();
            for _ in 0..rng.gen_range(0..=2) {
                let p = random_word_from(rng, pres, c.source(), max_len);
                let q_ = random_path(rng, pres, p.target(), c.target(), max_len);
                v.add_term((p, q_), random_coeff(rng));
            }
            (c, v)
        })
        .collect();
    DoubleDerivation::from_table(table)
}

/// A typed generator-pair table: each `T(c, d)` gets 0–2 monomials `p⊗q`
/// with `p: s(d)→t(c)` and `q: s(c)→t(d)`.
pub fn random_bracket_table(rng: &mut SuiteRng, pres: &Presentation, max_len: usize) -> DoubleBracket {
    let gens = pres.generators();
    let mut table = Vec::new();
    for &c in &gens {
        for &d in &gens {
            let mut v = Tensor2::zero();
            for _ in 0..rng.gen_range(0..=2) {
                let p = random_path(rng, pres, d.source(), c.target(), max_len);
                let q_ = random_path(rng, pres, c.source(), d.target(), max_len);
                v.add_term((p, q_), random_coeff(rng));
            }
            table.push(((c, d), v));
        }
    }
    DoubleBracket::from_table(table)
}

/// A skew-symmetric pairing with small integer entries.
#[allow(clippy::needless_range_loop)]
pub fn random_skew_pairing(rng: &mut SuiteRng, dim: usize) -> PairingMatrix {
    let mut entries = vec![vec![q(0); dim]; dim];
    for i in 0..dim {
        for j in (i + 1)..dim {
            let v = q(rng.gen_range(-3..=3));
            entries[i][j] = v.clone();
            entries[j][i] = -v;
        }
    }
    PairingMatrix::new(entries).expect("dimension is in range")
}
