//! Double brackets tabulated on generator pairs, the intersection bracket κ,
//! the inner double derivation `ad_e` and its defect bracket `ad_{ad_e}`.

use std::collections::BTreeMap;

use crate::algebra::{AlgElem, TraceElem};
use crate::derivation::{Derivation, DoubleDerivation};
use crate::error::{Error, Result};
use crate::linear::{q, q_frac, Coeff};
use crate::surface::{Presentation, SurfaceSignature};
use crate::tensor::{flip, inner_word, mult2, outer_word, Tensor2};
use crate::word::{Generator, Kind, Letter, Word};

/// A double bracket, determined by its values `Π(c, c')` on generator pairs.
///
/// Values must satisfy the endpoint typing
/// `Π: A(v1,v2)⊗A(v3,v4) → A(v3,v2)⊗A(v1,v4)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DoubleBracket {
    table: BTreeMap<(Generator, Generator), Tensor2>,
}

impl DoubleBracket {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_table(table: impl IntoIterator<Item = ((Generator, Generator), Tensor2)>) -> Self {
        Self {
            table: table.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn table(&self) -> &BTreeMap<(Generator, Generator), Tensor2> {
        &self.table
    }

    pub fn on_generators(&self, c: Generator, d: Generator) -> Tensor2 {
        self.table.get(&(c, d)).cloned().unwrap_or_default()
    }

    /// Value on a pair of letters. Inverse letters use the rules forced by
    /// `Π(a, cc⁻¹) = 0` and `Π(cc⁻¹, b) = 0`:
    /// `Π(a, c⁻¹) = −c⁻¹·Π(a,c)·c⁻¹` and `Π(c⁻¹, b) = −Π'(c,b)c⁻¹ ⊗ c⁻¹Π''(c,b)`.
    pub fn on_letters(&self, l: Letter, m: Letter) -> Tensor2 {
        let mut v = self.on_generators(l.gen, m.gen);
        if v.is_zero() {
            return v;
        }
        if m.inverse {
            let inv = Word::letter(m);
            v = -outer_word(&inv, &v, &inv);
        }
        if l.inverse {
            let inv = Word::letter(l);
            v = -inner_word(&inv, &v, &inv);
        }
        v
    }

    /// `Π(a, b)` on words: the Leibniz recursions (inner in the first slot,
    /// outer in the second) unrolled into a sum over letter pairs,
    /// `Σ_{i,j} b_{<j} Π'(a_i,b_j) a_{>i} ⊗ a_{<i} Π''(a_i,b_j) b_{>j}`.
    pub fn eval_words(&self, a: &Word, b: &Word) -> Tensor2 {
        let mut out = Tensor2::zero();
        for (i, &l) in a.letters().iter().enumerate() {
            let (a_pre, a_post) = (a.prefix(i), a.suffix(i + 1));
            for (j, &m) in b.letters().iter().enumerate() {
                let v = self.on_letters(l, m);
                if v.is_zero() {
                    continue;
                }
                let v = inner_word(&a_pre, &v, &a_post);
                out += &outer_word(&b.prefix(j), &v, &b.suffix(j + 1));
            }
        }
        out
    }

    pub fn eval(&self, a: &AlgElem, b: &AlgElem) -> Tensor2 {
        let mut out = Tensor2::zero();
        for (x, cx) in a {
            for (y, cy) in b {
                out.add_scaled(&self.eval_words(x, y), &(cx * cy));
            }
        }
        out
    }

    /// `Π°(c, d) = flip Π(d, c)`, itself a double bracket.
    pub fn inversion(&self) -> DoubleBracket {
        DoubleBracket::from_table(self.table.iter().map(|((c, d), v)| ((*d, *c), flip(v))))
    }

    pub fn add(&self, other: &DoubleBracket) -> DoubleBracket {
        let mut table = self.table.clone();
        for (k, v) in &other.table {
            *table.entry(*k).or_default() += v;
        }
        DoubleBracket::from_table(table)
    }

    pub fn scale(&self, s: &Coeff) -> DoubleBracket {
        DoubleBracket::from_table(self.table.iter().map(|(k, v)| (*k, v.scale(s))))
    }

    pub fn is_well_typed(&self) -> bool {
        self.table.iter().all(|((c, d), v)| {
            v.keys().all(|(p, q)| {
                p.source() == d.source()
                    && p.target() == c.target()
                    && q.source() == c.source()
                    && q.target() == d.target()
            })
        })
    }

    /// The double derivation `Π(a, ·)` tabulated on `gens`.
    pub fn as_double_derivation(&self, a: &AlgElem, gens: &[Generator]) -> DoubleDerivation {
        DoubleDerivation::from_table(
            gens.iter()
                .map(|&c| (c, self.eval(a, &AlgElem::basis(c.word())))),
        )
    }

    /// `Ham_Π(t) : c ↦ mult Π(a, c)` for loop representatives `a` of `t`.
    pub fn ham(&self, t: &TraceElem, gens: &[Generator]) -> Result<Derivation> {
        let mut table: BTreeMap<Generator, AlgElem> = BTreeMap::new();
        for (class, coeff) in t {
            let rep = class.representative();
            if !rep.is_loop() {
                return Err(Error::NoRepresentative(class.to_string()));
            }
            for &c in gens {
                let v = mult2(&self.eval_words(&rep, &c.word())).scale(coeff);
                *table.entry(c).or_default() += &v;
            }
        }
        Ok(Derivation::from_table(table))
    }
}

pub fn db_eval(pi: &DoubleBracket, a: &AlgElem, b: &AlgElem) -> Tensor2 {
    pi.eval(a, b)
}

pub fn db_inversion_eval(pi: &DoubleBracket, a: &AlgElem, b: &AlgElem) -> Tensor2 {
    flip(&pi.eval(b, a))
}

struct TableBuilder {
    terms: Tensor2,
}

impl TableBuilder {
    fn new() -> Self {
        Self { terms: Tensor2::zero() }
    }

    fn term(mut self, c: i64, p: &[Letter], q_: &[Letter]) -> Self {
        self.terms.add_term((mono(p), mono(q_)), q(c));
        self
    }

    fn done(self) -> Tensor2 {
        self.terms
    }
}

/// Word from a letter list; the empty list is `1_0`.
fn mono(letters: &[Letter]) -> Word {
    let start = letters.first().map_or(0, |l| l.source());
    Word::from_letters(start, letters).expect("table monomials are composable")
}

/// `x⊗y + y⊗x − yx⊗1_0 − 1_0⊗xy`, the common shape of the off-diagonal κ
/// entries between loops at `•_0`.
fn crossing(x: Letter, y: Letter) -> Tensor2 {
    TableBuilder::new()
        .term(1, &[x], &[y])
        .term(1, &[y], &[x])
        .term(-1, &[y, x], &[])
        .term(-1, &[], &[x, y])
        .done()
}

/// The intersection double bracket κ of `Σ_{g,n+1}` on the free generating
/// system `(α_i, β_i, γ_j, δ_j)`.
pub fn kappa_bracket(sig: &SurfaceSignature) -> DoubleBracket {
    use std::cmp::Ordering::*;
    let gens = sig.generators();
    let mut table = Vec::new();
    for &c in &gens {
        for &d in &gens {
            let (x, y) = (c.letter(), d.letter());
            let (i, j) = (c.index, d.index);
            let b = TableBuilder::new();
            let v = match (c.kind, d.kind, i.cmp(&j)) {
                (_, _, Less) if !matches!((c.kind, d.kind), (Kind::Gamma | Kind::Delta, Kind::Alpha | Kind::Beta)) => {
                    Tensor2::zero()
                }
                (Kind::Alpha, Kind::Alpha, Equal) => b.term(1, &[x], &[x]).term(-1, &[], &[x, x]).done(),
                (Kind::Alpha, Kind::Beta, Equal) => b.term(1, &[y], &[x]).done(),
                (Kind::Beta, Kind::Alpha, Equal) => b
                    .term(1, &[x], &[y])
                    .term(-1, &[y, x], &[])
                    .term(-1, &[], &[x, y])
                    .done(),
                (Kind::Beta, Kind::Beta, Equal) => b.term(1, &[x], &[x]).term(-1, &[x, x], &[]).done(),
                (Kind::Alpha | Kind::Beta, Kind::Alpha | Kind::Beta, Greater) => crossing(x, y),
                (Kind::Alpha | Kind::Beta, Kind::Gamma | Kind::Delta, _) => Tensor2::zero(),
                (Kind::Gamma, Kind::Alpha | Kind::Beta, _) => crossing(x, y),
                (Kind::Gamma, Kind::Gamma, Equal) => b.term(1, &[x], &[x]).term(-1, &[], &[x, x]).done(),
                (Kind::Gamma, Kind::Gamma, Greater) => crossing(x, y),
                (Kind::Gamma, Kind::Delta, Equal) => b.term(1, &[y], &[x]).done(),
                (Kind::Gamma, Kind::Delta, Greater) => b.term(-1, &[y, x], &[]).term(1, &[y], &[x]).done(),
                (Kind::Delta, Kind::Alpha | Kind::Beta, _) => b.term(1, &[y], &[x]).term(-1, &[], &[x, y]).done(),
                (Kind::Delta, Kind::Gamma, Equal) => b.term(-1, &[], &[x, y]).done(),
                (Kind::Delta, Kind::Gamma, Greater) => b.term(1, &[y], &[x]).term(-1, &[], &[x, y]).done(),
                (Kind::Delta, Kind::Delta, Equal) => b.term(1, &[x], &[x]).done(),
                (Kind::Delta, Kind::Delta, Greater) => b.term(1, &[y], &[x]).done(),
                _ => unreachable!("free letters do not occur on surfaces"),
            };
            table.push(((c, d), v));
        }
    }
    DoubleBracket::from_table(table)
}

/// `ad_e : x ↦ x⊗1 − 1⊗x` for `e = Σ_v 1_v⊗1_v`.
pub fn ad_e(pres: &Presentation) -> DoubleDerivation {
    DoubleDerivation::from_table(pres.generators().into_iter().map(|c| {
        let mut t = Tensor2::basis((c.word(), Word::identity(c.target())));
        t.add_term((Word::identity(c.source()), c.word()), q(-1));
        (c, t)
    }))
}

/// `ad_{ad_e}(x, y) = −y e'x⊗e'' + e'x⊗e''y + ye'⊗xe'' − e'⊗xe''y` summed
/// over `e = Σ_v 1_v⊗1_v`.
pub fn ad_ad_e_words(objects: &[u32], x: &Word, y: &Word) -> Tensor2 {
    let mut out = Tensor2::zero();
    let cat = |ws: &[&Word]| -> Option<Word> {
        let mut acc = ws[0].clone();
        for w in &ws[1..] {
            acc = acc.compose(w)?;
        }
        Some(acc)
    };
    for &v in objects {
        let e = Word::identity(v);
        if let (Some(p), Some(q_)) = (cat(&[y, &e, x]), Some(e.clone())) {
            out.add_term((p, q_), q(-1));
        }
        if let (Some(p), Some(q_)) = (cat(&[&e, x]), cat(&[&e, y])) {
            out.add_term((p, q_), q(1));
        }
        if let (Some(p), Some(q_)) = (cat(&[y, &e]), cat(&[x, &e])) {
            out.add_term((p, q_), q(1));
        }
        if let Some(q_) = cat(&[x, &e, y]) {
            out.add_term((e.clone(), q_), q(-1));
        }
    }
    out
}

pub fn ad_ad_e(objects: &[u32], a: &AlgElem, b: &AlgElem) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (x, cx) in a {
        for (y, cy) in b {
            out.add_scaled(&ad_ad_e_words(objects, x, y), &(cx * cy));
        }
    }
    out
}

/// `ad_{ad_e}` as a tabulated double bracket.
pub fn ad_ad_e_bracket(pres: &Presentation) -> DoubleBracket {
    let objects = pres.objects();
    let gens = pres.generators();
    DoubleBracket::from_table(gens.iter().flat_map(|&c| {
        let objects = &objects;
        gens.iter()
            .map(move |&d| ((c, d), ad_ad_e_words(objects, &c.word(), &d.word())))
    }))
}

/// `(T − T°) + ½·ad_{ad_e}`; its symmetric part is exactly `ad_{ad_e}`.
pub fn with_inner_defect(t: &DoubleBracket, pres: &Presentation) -> DoubleBracket {
    let skew = t.add(&t.inversion().scale(&q(-1)));
    skew.add(&ad_ad_e_bracket(pres).scale(&q_frac(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::word_elem;
    use crate::surface::make_surface;
    use crate::tensor::simple_tensor;

    fn w(ls: &[Letter]) -> AlgElem {
        word_elem(mono(ls))
    }

    #[test]
    fn kappa_sample_entries() {
        let k = kappa_bracket(&make_surface(2, 2).unwrap());
        let (a1, b1, g1) = (Generator::alpha(1), Generator::beta(1), Generator::gamma(1));
        let d2 = Generator::delta(2);
        assert_eq!(k.on_generators(a1, b1), simple_tensor(b1.word(), a1.word()));
        assert!(k.on_generators(a1, g1).is_zero());
        assert_eq!(
            k.on_generators(d2, g1).to_string(),
            "−1_0 ⊗ d2 g1 + g1 ⊗ d2"
        );
        assert!(k.is_well_typed());
    }

    #[test]
    fn kappa_is_well_typed_on_every_surface() {
        for (g, n) in [(1, 1), (1, 2), (2, 3), (0, 2), (3, 1)] {
            assert!(kappa_bracket(&make_surface(g, n).unwrap()).is_well_typed(), "({g},{n})");
        }
    }

    #[test]
    fn inverse_letter_in_second_slot() {
        let k = kappa_bracket(&make_surface(1, 1).unwrap());
        let a = Generator::alpha(1);
        let got = db_eval(&k, &w(&[a.letter()]), &w(&[a.inv_letter()]));
        // −a⁻¹·(a⊗a − 1⊗a²)·a⁻¹ = −1⊗1 + a⁻¹⊗a
        let mut expected = simple_tensor(Word::identity(0), Word::identity(0)).scale(&q(-1));
        expected.add_term((Word::letter(a.inv_letter()), a.word()), q(1));
        assert_eq!(got, expected);
    }

    #[test]
    fn identity_arguments_vanish() {
        let k = kappa_bracket(&make_surface(1, 1).unwrap());
        let a = w(&[Generator::alpha(1).letter()]);
        let one = word_elem(Word::identity(0));
        assert!(db_eval(&k, &a, &one).is_zero());
        assert!(db_eval(&k, &one, &a).is_zero());
        assert!(ad_ad_e(&[0, 1], &a, &one).is_zero());
    }

    #[test]
    fn ad_ad_e_on_loops_matches_the_defect() {
        let (a, b) = (Generator::alpha(1), Generator::beta(1));
        let got = ad_ad_e(&[0, 1], &w(&[a.letter()]), &w(&[b.letter()]));
        let mut expected = Tensor2::zero();
        expected.add_term((mono(&[b.letter(), a.letter()]), Word::identity(0)), q(-1));
        expected.add_term((a.word(), b.word()), q(1));
        expected.add_term((b.word(), a.word()), q(1));
        expected.add_term((Word::identity(0), mono(&[a.letter(), b.letter()])), q(-1));
        assert_eq!(got, expected);
    }

    #[test]
    fn ad_e_on_delta() {
        let pres = Presentation::from(make_surface(1, 1).unwrap());
        let d = Generator::delta(1);
        assert_eq!(ad_e(&pres).on_generator(d).to_string(), "−1_1 ⊗ d1 + d1 ⊗ 1_0");
    }

    #[test]
    fn defect_doubles_on_delta_delta() {
        let k = kappa_bracket(&make_surface(1, 1).unwrap());
        let d = w(&[Generator::delta(1).letter()]);
        let sum = db_eval(&k, &d, &d) + db_inversion_eval(&k, &d, &d);
        assert_eq!(sum, simple_tensor(Generator::delta(1).word(), Generator::delta(1).word()).scale(&q(2)));
    }

    #[test]
    fn ham_of_alpha_on_beta() {
        let sig = make_surface(1, 1).unwrap();
        let k = kappa_bracket(&sig);
        let (a, b) = (Generator::alpha(1), Generator::beta(1));
        let t = crate::algebra::trace_word(&a.word());
        let f = k.ham(&t, &sig.generators()).unwrap();
        assert_eq!(f.on_generator(b), w(&[b.letter(), a.letter()]));
        assert!(k.ham(&crate::algebra::trace_word(&Word::identity(0)), &sig.generators()).unwrap().is_zero());
    }
}
