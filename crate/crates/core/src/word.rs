//! Letters, reduced words and cyclic words of the free surface groupoid.
//!
//! Objects are `0..=n`. Every generator except `δ_j` is a loop at `0`;
//! `δ_j` runs from object `j` to object `0`. The tensor-algebra backend
//! reuses the same machinery with non-invertible `Free` letters at the single
//! object `0`.

use std::cmp::Ordering;
use std::fmt;

/// Generator family, ranked `α < β < γ < δ < w` for canonical ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Alpha,
    Beta,
    Gamma,
    Delta,
    /// Basis vector `w_i` of the tensor algebra `T(W)`.
    Free,
}

impl Kind {
    pub fn prefix(self) -> char {
        match self {
            Kind::Alpha => 'a',
            Kind::Beta => 'b',
            Kind::Gamma => 'g',
            Kind::Delta => 'd',
            Kind::Free => 'w',
        }
    }

    pub fn from_prefix(c: char) -> Option<Kind> {
        Some(match c {
            'a' => Kind::Alpha,
            'b' => Kind::Beta,
            'g' => Kind::Gamma,
            'd' => Kind::Delta,
            'w' => Kind::Free,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: Kind,
    pub index: u32,
}

impl Generator {
    pub const fn new(kind: Kind, index: u32) -> Self {
        Self { kind, index }
    }
    pub const fn alpha(i: u32) -> Self {
        Self::new(Kind::Alpha, i)
    }
    pub const fn beta(i: u32) -> Self {
        Self::new(Kind::Beta, i)
    }
    pub const fn gamma(i: u32) -> Self {
        Self::new(Kind::Gamma, i)
    }
    pub const fn delta(i: u32) -> Self {
        Self::new(Kind::Delta, i)
    }
    pub const fn free(i: u32) -> Self {
        Self::new(Kind::Free, i)
    }

    pub fn source(self) -> u32 {
        match self.kind {
            Kind::Delta => self.index,
            _ => 0,
        }
    }

    pub fn target(self) -> u32 {
        0
    }

    pub fn invertible(self) -> bool {
        self.kind != Kind::Free
    }

    pub fn letter(self) -> Letter {
        Letter {
            gen: self,
            inverse: false,
        }
    }

    pub fn inv_letter(self) -> Letter {
        debug_assert!(self.invertible());
        Letter {
            gen: self,
            inverse: true,
        }
    }

    pub fn word(self) -> Word {
        Word::letter(self.letter())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.index)
    }
}

/// A generator with exponent `+1` (`inverse == false`) or `−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn source(self) -> u32 {
        if self.inverse {
            self.gen.target()
        } else {
            self.gen.source()
        }
    }

    pub fn target(self) -> u32 {
        if self.inverse {
            self.gen.source()
        } else {
            self.gen.target()
        }
    }

    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn cancels(self, next: Letter) -> bool {
        self.gen == next.gen && self.inverse != next.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gen)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// A reduced composable word; the empty word is the identity `1_v` at
/// `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    source: u32,
}

impl Word {
    pub fn identity(object: u32) -> Self {
        Self {
            letters: Vec::new(),
            source: object,
        }
    }

    pub fn letter(l: Letter) -> Self {
        Self {
            letters: vec![l],
            source: l.source(),
        }
    }

    /// Freely reduces a composable letter sequence starting at `start`.
    /// Returns `None` if some adjacent pair is not composable.
    pub fn from_letters(start: u32, letters: &[Letter]) -> Option<Self> {
        let mut at = start;
        let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            if l.source() != at {
                return None;
            }
            at = l.target();
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Some(Self {
            letters: stack,
            source: start,
        })
    }

    /// Builds a word from letters already known to be reduced and composable.
    pub(crate) fn from_reduced(source: u32, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.first().is_none_or(|l| l.source() == source));
        debug_assert!(letters.windows(2).all(|w| w[0].target() == w[1].source() && !w[0].cancels(w[1])));
        Self { letters, source }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn source(&self) -> u32 {
        self.source
    }

    pub fn target(&self) -> u32 {
        self.letters.last().map_or(self.source, |l| l.target())
    }

    pub fn is_loop(&self) -> bool {
        self.source() == self.target()
    }

    /// Composition `self · other`, `None` when `target(self) ≠ source(other)`.
    pub fn compose(&self, other: &Word) -> Option<Word> {
        if self.target() != other.source() {
            return None;
        }
        let mut cut = 0;
        let (a, b) = (&self.letters, &other.letters);
        while cut < a.len() && cut < b.len() && a[a.len() - 1 - cut].cancels(b[cut]) {
            cut += 1;
        }
        let mut letters = Vec::with_capacity(a.len() + b.len() - 2 * cut);
        letters.extend_from_slice(&a[..a.len() - cut]);
        letters.extend_from_slice(&b[cut..]);
        Some(Word {
            letters,
            source: self.source,
        })
    }

    pub fn inverse(&self) -> Word {
        let letters = self.letters.iter().rev().map(|l| l.inv()).collect();
        Word {
            letters,
            source: self.target(),
        }
    }

    /// Prefix of the first `k` letters.
    pub fn prefix(&self, k: usize) -> Word {
        Word {
            letters: self.letters[..k].to_vec(),
            source: self.source,
        }
    }

    /// Suffix after dropping the first `k` letters.
    pub fn suffix(&self, k: usize) -> Word {
        let source = if k == 0 {
            self.source
        } else {
            self.letters[k - 1].target()
        };
        Word {
            letters: self.letters[k..].to_vec(),
            source,
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1_{}", self.source);
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Conjugacy class of a loop: cyclically reduced, stored as its least
/// rotation. The empty class is the unit `|1_v|`, shared by all objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn unit() -> Self {
        Self {
            letters: Vec::new(),
        }
    }

    /// Class of a word; `None` for non-loops, whose trace vanishes.
    pub fn of(word: &Word) -> Option<Self> {
        if !word.is_loop() {
            return None;
        }
        let l = &word.letters;
        let (mut lo, mut hi) = (0, l.len());
        while hi - lo >= 2 && l[hi - 1].cancels(l[lo]) {
            lo += 1;
            hi -= 1;
        }
        Some(Self {
            letters: least_rotation(&l[lo..hi]),
        })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// A loop word representing the class.
    pub fn representative(&self) -> Word {
        match self.letters.first() {
            None => Word::identity(0),
            Some(first) => Word::from_reduced(first.source(), self.letters.clone()),
        }
    }
}

fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    if n == 0 {
        return Vec::new();
    }
    let rotation = |k: usize| letters[k..].iter().chain(&letters[..k]);
    let best = (1..n).fold(0, |best, k| {
        if rotation(k).cmp(rotation(best)) == Ordering::Less {
            k
        } else {
            best
        }
    });
    rotation(best).copied().collect()
}

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("|1_0|");
        }
        f.write_str("|")?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("|")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A1: Generator = Generator::alpha(1);
    const B1: Generator = Generator::beta(1);
    const G1: Generator = Generator::gamma(1);
    const D1: Generator = Generator::delta(1);

    #[test]
    fn delta_runs_from_its_boundary_to_base() {
        assert_eq!((D1.source(), D1.target()), (1, 0));
        let inv = D1.inv_letter();
        assert_eq!((inv.source(), inv.target()), (0, 1));
    }

    #[test]
    fn compose_cancels_at_the_junction() {
        let w = A1.word().compose(&Word::letter(A1.inv_letter())).unwrap();
        assert_eq!(w, Word::identity(0));
        let dg = D1.word().compose(&G1.word()).unwrap();
        assert_eq!(dg.to_string(), "d1 g1");
        assert!(G1.word().compose(&D1.word()).is_none());
    }

    #[test]
    fn inverse_swaps_endpoints() {
        let ab = Word::from_letters(0, &[A1.letter(), B1.letter()]).unwrap();
        assert_eq!(ab.inverse().to_string(), "b1^-1 a1^-1");
        assert_eq!(Word::identity(3).inverse(), Word::identity(3));
        let d = D1.word().inverse();
        assert_eq!((d.source(), d.target()), (0, 1));
    }

    #[test]
    fn cyclic_reduction_and_rotation() {
        let w = Word::from_letters(0, &[A1.letter(), B1.letter(), A1.inv_letter()]).unwrap();
        assert_eq!(CyclicWord::of(&w).unwrap(), CyclicWord::of(&B1.word()).unwrap());
        let ba = Word::from_letters(0, &[B1.letter(), A1.letter()]).unwrap();
        assert_eq!(CyclicWord::of(&ba).unwrap().to_string(), "|a1 b1|");
        assert!(CyclicWord::of(&D1.word()).is_none());
        assert_eq!(CyclicWord::of(&Word::identity(1)).unwrap(), CyclicWord::unit());
        let conj = Word::from_letters(1, &[D1.letter(), G1.letter(), D1.inv_letter()]).unwrap();
        assert_eq!(CyclicWord::of(&conj).unwrap().to_string(), "|g1|");
    }

    #[test]
    fn word_order_puts_shorter_words_first() {
        let mut v = [B1.word(), Word::identity(1), A1.word(), Word::identity(0)];
        v.sort();
        let s: Vec<String> = v.iter().map(|w| w.to_string()).collect();
        assert_eq!(s, ["1_0", "1_1", "a1", "b1"]);
    }
}
