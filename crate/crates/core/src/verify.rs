//! Verification suites: each checks one identity exactly on a seeded corpus
//! and reports one case per input.

use std::cmp::Ordering;
use std::fmt::Display;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{trace_word, AlgElem};
use crate::bracket::{ad_ad_e, ad_ad_e_words, ad_e, kappa_bracket, with_inner_defect, DoubleBracket};
use crate::derivation::DoubleDerivation;
use crate::divergence::{delta_map, delta_via_div, div, modular, phi, tdiv};
use crate::error::{Error, Result};
use crate::forms::{basis_element, form_act, nabla_c, reconstruct, Connection, OneForm};
use crate::linear::q;
use crate::mu::MuEngine;
use crate::random::{
    random_bracket_table, random_coeff, random_composable_pair, random_double_derivation, random_loop, random_path,
    random_skew_pairing, random_word, random_word_from, rng, SuiteRng,
};
use crate::surface::{Presentation, SurfaceSignature};
use crate::tensor::{
    flip, inner_act, mult_trace, outer_act, sym, trace_first, trace_second, triple_act, triple_word_act, Tensor2,
    TripleTrace,
};
use crate::tensoralg::{delta_tensor, free_word, pairing_bracket, phi_tensor, PairingMatrix};
use crate::word::{CyclicWord, Generator, Kind, Letter, Word};

pub const SUITES: &[&str] = &[
    "kappa-table",
    "defect",
    "main-theorem",
    "modular",
    "lift",
    "multiplicativity",
    "product-rules",
    "modular-derivation",
    "skew",
    "tensor",
    "structural",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub sig: SurfaceSignature,
    pub seed: u64,
    pub samples: usize,
    pub max_len: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Case {
    pub id: usize,
    pub inputs: String,
    pub residual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<Case>,
    pub seed: u64,
    pub samples: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    pub fn ok(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

struct Outcome {
    inputs: String,
    residual: String,
    pass: bool,
}

fn outcome(inputs: impl Into<String>, residual: &impl Display, zero: bool) -> Outcome {
    Outcome {
        inputs: inputs.into(),
        residual: residual.to_string(),
        pass: zero,
    }
}

fn triple_outcome(inputs: impl Into<String>, r: &TripleTrace) -> Outcome {
    outcome(inputs, r, r.is_zero())
}

/// Evaluates cases in parallel; the report keeps input order.
fn run_cases<T, F>(inputs: Vec<T>, f: F) -> Result<Vec<Case>>
where
    T: Sync,
    F: Fn(&T) -> Result<Outcome> + Sync,
{
    let outs: Vec<Result<Outcome>> = inputs.par_iter().map(&f).collect();
    outs.into_iter()
        .enumerate()
        .map(|(id, o)| {
            let o = o?;
            Ok(Case {
                id,
                inputs: o.inputs,
                residual: o.residual,
                pass: o.pass,
            })
        })
        .collect()
}

/// Per-suite stream so a suite yields the same cases alone or inside `all`.
fn suite_rng(seed: u64, suite: &str) -> SuiteRng {
    let idx = SUITES.iter().position(|s| *s == suite).unwrap_or(SUITES.len()) as u64;
    rng(seed ^ (idx + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITES.iter().map(|s| run_one(s, cfg)).collect();
    }
    Ok(vec![run_one(name, cfg)?])
}

fn run_one(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let cases = match name {
        "kappa-table" => kappa_table(cfg)?,
        "defect" => defect(cfg)?,
        "main-theorem" => main_theorem(cfg)?,
        "modular" => modular_vanishing(cfg)?,
        "lift" => lift(cfg)?,
        "multiplicativity" => multiplicativity(cfg)?,
        "product-rules" => product_rules(cfg)?,
        "modular-derivation" => modular_derivation(cfg)?,
        "skew" => skew(cfg)?,
        "tensor" => tensor_backend(cfg)?,
        "structural" => structural(cfg)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        cases,
        seed: cfg.seed,
        samples: cfg.samples,
    })
}

type Template = &'static [(i64, &'static str, &'static str)];

const CROSS: Template = &[(1, "I", "J"), (1, "J", "I"), (-1, "J I", "1"), (-1, "1", "I J")];

/// The generator table of κ as term templates in the first generator `I`,
/// the second `J` and `1 = 1_0`.
fn kappa_template(c: Kind, d: Kind, ord: Ordering) -> Template {
    use Kind::*;
    use Ordering::*;
    match (c, d, ord) {
        (Gamma, Alpha | Beta, _) => CROSS,
        (Delta, Alpha | Beta, _) => &[(1, "J", "I"), (-1, "1", "I J")],
        (Alpha | Beta, Gamma | Delta, _) => &[],
        (_, _, Less) => &[],
        (Alpha, Alpha, Equal) | (Gamma, Gamma, Equal) => &[(1, "I", "I"), (-1, "1", "I I")],
        (Alpha, Beta, Equal) => &[(1, "J", "I")],
        (Beta, Alpha, Equal) => &[(1, "I", "J"), (-1, "J I", "1"), (-1, "1", "I J")],
        (Beta, Beta, Equal) => &[(1, "I", "I"), (-1, "I I", "1")],
        (Alpha | Beta, Alpha | Beta, Greater) | (Gamma, Gamma, Greater) => CROSS,
        (Gamma, Delta, Equal) => &[(1, "J", "I")],
        (Gamma, Delta, Greater) => &[(-1, "J I", "1"), (1, "J", "I")],
        (Delta, Gamma, Equal) => &[(-1, "1", "I J")],
        (Delta, Gamma, Greater) => &[(1, "J", "I"), (-1, "1", "I J")],
        (Delta, Delta, Equal) => &[(1, "I", "I")],
        (Delta, Delta, Greater) => &[(1, "J", "I")],
        _ => &[],
    }
}

fn render(template: &str, i: Generator, j: Generator) -> Word {
    let atoms: Vec<Word> = template
        .split_whitespace()
        .map(|atom| match atom {
            "I" => i.word(),
            "J" => j.word(),
            _ => Word::identity(0),
        })
        .collect();
    atoms[1..]
        .iter()
        .fold(atoms[0].clone(), |acc, w| acc.compose(w).expect("templates are composable"))
}

/// κ on a generator pair, rebuilt from the templates.
pub fn kappa_reference(i: Generator, j: Generator) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (k, p, q_) in kappa_template(i.kind, j.kind, i.index.cmp(&j.index)) {
        out.add_term((render(p, i, j), render(q_, i, j)), q(*k));
    }
    out
}

fn kappa_table(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let k = kappa_bracket(&cfg.sig);
    let gens = cfg.sig.generators();
    let pairs: Vec<(Generator, Generator)> = gens.iter().flat_map(|&c| gens.iter().map(move |&d| (c, d))).collect();
    run_cases(pairs, |&(c, d)| {
        let r = k.on_generators(c, d) - kappa_reference(c, d);
        Ok(outcome(format!("κ({c}, {d})"), &r, r.is_zero()))
    })
}

fn defect(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let pres = Presentation::from(cfg.sig);
    let mut r = suite_rng(cfg.seed, "defect");
    let k = kappa_bracket(&cfg.sig);
    let objects = pres.objects();
    let pairs: Vec<(Word, Word)> = (0..cfg.samples)
        .map(|_| (random_word(&mut r, &pres, cfg.max_len), random_word(&mut r, &pres, cfg.max_len)))
        .collect();
    run_cases(pairs, |(a, b)| {
        let res = k.eval_words(a, b) + flip(&k.eval_words(b, a)) - ad_ad_e_words(&objects, a, b);
        Ok(outcome(format!("a = {a}; b = {b}"), &res, res.is_zero()))
    })
}

fn generators_then_random(cfg: &SuiteConfig, suite: &str) -> Vec<Word> {
    let pres = Presentation::from(cfg.sig);
    let mut r = suite_rng(cfg.seed, suite);
    let mut words: Vec<Word> = cfg.sig.generators().into_iter().map(|c| c.word()).collect();
    words.extend((0..cfg.samples).map(|_| random_word(&mut r, &pres, cfg.max_len)));
    words
}

fn main_theorem(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let pres = Presentation::from(cfg.sig);
    let conn = nabla_c(&cfg.sig);
    let mu = MuEngine::new(&cfg.sig);
    run_cases(generators_then_random(cfg, "main-theorem"), |w| {
        let a = AlgElem::basis(w.clone());
        let res = mu.eval(&a) + phi(mu.kappa(), &conn, &a, &pres)?;
        Ok(triple_outcome(format!("w = {w}"), &res))
    })
}

fn modular_vanishing(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let pres = Presentation::from(cfg.sig);
    let conn = nabla_c(&cfg.sig);
    let k = kappa_bracket(&cfg.sig);
    let e = ad_e(&pres);
    run_cases(generators_then_random(cfg, "modular"), |w| {
        let res = modular(&k, &conn, &e, &AlgElem::basis(w.clone()), &pres)?;
        Ok(triple_outcome(format!("w = {w}"), &res))
    })
}

fn describe_theta(theta: &DoubleDerivation) -> String {
    let parts: Vec<String> = theta.table().iter().map(|(c, v)| format!("{c} ↦ {v}")).collect();
    if parts.is_empty() {
        "Θ = 0".into()
    } else {
        format!("Θ: {}", parts.join("; "))
    }
}

fn lift(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let pres = Presentation::from(cfg.sig);
    let conn = nabla_c(&cfg.sig);
    let mut r = suite_rng(cfg.seed, "lift");
    let thetas: Vec<_> = (0..cfg.samples)
        .map(|_| random_double_derivation(&mut r, &pres, 3))
        .collect();
    run_cases(thetas, |theta| {
        let res = mult_trace(&tdiv(theta, &conn, &pres)?) - div(&theta.mult(), &conn, &pres)?;
        Ok(outcome(describe_theta(theta), &res, res.is_zero()))
    })
}

/// `TDiv((a⊗b̄)Θ) − [(a⊗b̄)·TDiv(Θ) − |Θ'(b)|⊗aΘ''(b) − Θ'(a)b⊗|Θ''(a)|]`.
pub fn multiplicativity_residual(
    theta: &DoubleDerivation,
    a: &AlgElem,
    b: &AlgElem,
    conn: &Connection,
    pres: &Presentation,
) -> Result<TripleTrace> {
    let lhs = tdiv(&theta.act(a, b), conn, pres)?;
    let mut rhs = triple_act(a, &tdiv(theta, conn, pres)?, b);
    let one = crate::algebra::unit(&pres.objects());
    rhs -= &trace_first(&inner_act(a, &theta.eval(b), &one));
    rhs -= &trace_second(&inner_act(&one, &theta.eval(a), b));
    Ok(lhs - rhs)
}

fn multiplicativity(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let pres = Presentation::from(cfg.sig);
    let conn = nabla_c(&cfg.sig);
    let mut r = suite_rng(cfg.seed, "multiplicativity");
    let len = cfg.max_len.min(3);
    let inputs: Vec<_> = (0..cfg.samples)
        .map(|_| {
            let theta = random_double_derivation(&mut r, &pres, 2);
            let a = random_word(&mut r, &pres, len);
            let b = random_word(&mut r, &pres, len);
            (theta, a, b)
        })
        .collect();
    run_cases(inputs, |(theta, a, b)| {
        let res = multiplicativity_residual(theta, &AlgElem::basis(a.clone()), &AlgElem::basis(b.clone()), &conn, &pres)?;
        Ok(triple_outcome(format!("{}; a = {a}; b = {b}", describe_theta(theta)), &res))
    })
}

/// `φ(ab) − [φ(a)b + aφ(b) − (|·|⊗id)Π(a,b) − (id⊗|·|)Π(b,a)]`.
pub fn phi_product_residual(
    pi: &DoubleBracket,
    conn: &Connection,
    a: &Word,
    b: &Word,
    pres: &Presentation,
) -> Result<TripleTrace> {
    let ab = a.compose(b).map(AlgElem::basis).unwrap_or_default();
    let pa = phi(pi, conn, &AlgElem::basis(a.clone()), pres)?;
    let pb = phi(pi, conn, &AlgElem::basis(b.clone()), pres)?;
    let mut rhs = triple_word_act(&Word::identity(a.source()), &pa, b);
    rhs += &triple_word_act(a, &pb, &Word::identity(b.target()));
    rhs -= &trace_first(&pi.eval_words(a, b));
    rhs -= &trace_second(&pi.eval_words(b, a));
    Ok(phi(pi, conn, &ab, pres)? - rhs)
}

/// `μ(ab) − [μ(a)b + aμ(b) + (|·|⊗id)κ(a,b) + (id⊗|·|)κ(b,a)]`.
pub fn mu_product_residual(mu: &MuEngine, a: &Word, b: &Word) -> TripleTrace {
    let ab = a.compose(b).map(|w| mu.eval_word(&w)).unwrap_or_default();
    let mut rhs = triple_word_act(&Word::identity(a.source()), &mu.eval_word(a), b);
    rhs += &triple_word_act(a, &mu.eval_word(b), &Word::identity(b.target()));
    rhs += &trace_first(&mu.kappa().eval_words(a, b));
    rhs += &trace_second(&mu.kappa().eval_words(b, a));
    ab - rhs
}

fn product_rules(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let pres = Presentation::from(cfg.sig);
    let conn = nabla_c(&cfg.sig);
    let mu = MuEngine::new(&cfg.sig);
    let mut r = suite_rng(cfg.seed, "product-rules");
    let half = (cfg.max_len / 2).max(1);
    let inputs: Vec<(usize, Word, Word)> = (0..cfg.samples)
        .flat_map(|i| {
            let (a, b) = random_composable_pair(&mut r, &pres, half);
            let w = random_word(&mut r, &pres, cfg.max_len);
            [(3 * i, a.clone(), b.clone()), (3 * i + 1, a, b), (3 * i + 2, w, Word::identity(0))]
        })
        .collect();
    run_cases(inputs, |(tag, a, b)| match tag % 3 {
        0 => Ok(triple_outcome(
            format!("φ product rule: a = {a}; b = {b}"),
            &phi_product_residual(mu.kappa(), &conn, a, b, &pres)?,
        )),
        1 => Ok(triple_outcome(
            format!("μ product rule: a = {a}; b = {b}"),
            &mu_product_residual(&mu, a, b),
        )),
        _ => {
            let base = mu.eval_word(a);
            let mut res = TripleTrace::zero();
            for k in 1..a.len() {
                res += &(mu.eval_split(a, k) - base.clone());
            }
            Ok(triple_outcome(format!("split positions: w = {a}"), &res))
        }
    })
}

fn modular_derivation(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let pres = Presentation::from(cfg.sig);
    let conn = nabla_c(&cfg.sig);
    let e = ad_e(&pres);
    let objects = pres.objects();
    let mut r = suite_rng(cfg.seed, "modular-derivation");
    let len = cfg.max_len.min(2);
    let inputs: Vec<_> = (0..cfg.samples)
        .map(|_| {
            let t = random_bracket_table(&mut r, &pres, 2);
            let pi = with_inner_defect(&t, &pres);
            let (a, b) = random_composable_pair(&mut r, &pres, len);
            (pi, a, b)
        })
        .collect();
    run_cases(inputs, |(pi, a, b)| {
        let (ea, eb) = (AlgElem::basis(a.clone()), AlgElem::basis(b.clone()));
        let defect = pi.eval(&ea, &eb) + flip(&pi.eval(&eb, &ea)) - ad_ad_e(&objects, &ea, &eb);
        let ab = a.compose(b).map(AlgElem::basis).unwrap_or_default();
        let m = |x: &AlgElem| modular(pi, &conn, &e, x, &pres);
        let mut res = m(&ab)?;
        res -= &triple_word_act(&Word::identity(a.source()), &m(&ea)?, b);
        res -= &triple_word_act(a, &m(&eb)?, &Word::identity(b.target()));
        let pass = res.is_zero() && defect.is_zero();
        let residual = if defect.is_zero() {
            res.to_string()
        } else {
            format!("defect: {defect}; derivation: {res}")
        };
        Ok(Outcome {
            inputs: format!("random bracket #{}; a = {a}; b = {b}", pi.table().len()),
            residual,
            pass,
        })
    })
}

fn skew(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let pres = Presentation::from(cfg.sig);
    let conn = nabla_c(&cfg.sig);
    let mu = MuEngine::new(&cfg.sig);
    let mut r = suite_rng(cfg.seed, "skew");
    let words: Vec<Word> = (0..cfg.samples).map(|_| random_loop(&mut r, &pres, cfg.max_len)).collect();
    run_cases(words, |w| {
        let t = trace_word(w);
        let d = delta_map(mu.kappa(), &conn, &t, &pres)?;
        let s = sym(&d);
        let via_mu = d.clone() + mult_trace(&mu.eval_word(w));
        let via_div = d - delta_via_div(mu.kappa(), &conn, &t, &pres)?;
        let pass = s.is_zero() && via_mu.is_zero() && via_div.is_zero();
        Ok(Outcome {
            inputs: format!("|{w}|"),
            residual: format!("sym δ: {s}; δ + |μ|: {via_mu}; δ − Div∘σ: {via_div}"),
            pass,
        })
    })
}

/// `⟨u, w⟩` straight from the double-sum formula
/// `Σ ⟨u_i,w_j⟩ w_1⋯w_{j−1}u_{i+1}⋯u_r ⊗ u_1⋯u_{i−1}w_{j+1}⋯w_s`.
pub fn pairing_bracket_by_sum(p: &PairingMatrix, u: &[u32], w: &[u32]) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (i, &ui) in u.iter().enumerate() {
        for (j, &wj) in w.iter().enumerate() {
            let left: Vec<u32> = w[..j].iter().chain(&u[i + 1..]).copied().collect();
            let right: Vec<u32> = u[..i].iter().chain(&w[j + 1..]).copied().collect();
            out.add_term((free_word(&left), free_word(&right)), p.get(ui as usize, wj as usize).clone());
        }
    }
    out
}

fn all_words(dim: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<u32>| {
                (1..=dim).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

enum TensorCase {
    Display(PairingMatrix, Vec<u32>, Vec<u32>),
    PhiLetter(PairingMatrix, u32),
    SymDelta(PairingMatrix, Word),
}

fn tensor_backend(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let mut r = suite_rng(cfg.seed, "tensor");
    let mut inputs = Vec::new();
    let p3 = random_skew_pairing(&mut r, 3);
    let words = all_words(2, 3);
    for u in &words {
        for w in &words {
            inputs.push(TensorCase::Display(p3.clone(), u.clone(), w.clone()));
        }
    }
    for dim in 1..=6u32 {
        let p = random_skew_pairing(&mut r, dim as usize);
        for i in 1..=dim {
            inputs.push(TensorCase::PhiLetter(p.clone(), i));
        }
    }
    for _ in 0..cfg.samples {
        let dim = r.gen_range(2..=6);
        let p = random_skew_pairing(&mut r, dim);
        let pres = p.presentation();
        let w = random_loop(&mut r, &pres, cfg.max_len);
        inputs.push(TensorCase::SymDelta(p, w));
    }
    run_cases(inputs, |case| match case {
        TensorCase::Display(p, u, w) => {
            let res = pairing_bracket(p, &free_word(u), &free_word(w)) - pairing_bracket_by_sum(p, u, w);
            Ok(outcome(
                format!("⟨{}, {}⟩", free_word(u), free_word(w)),
                &res,
                res.is_zero(),
            ))
        }
        TensorCase::PhiLetter(p, i) => Ok(triple_outcome(
            format!("φ(w{i}), dim {}", p.dim()),
            &phi_tensor(p, &AlgElem::basis(free_word(&[*i])))?,
        )),
        TensorCase::SymDelta(p, w) => {
            let res = sym(&delta_tensor(p, &trace_word(w))?);
            Ok(outcome(format!("sym δ(|{w}|), dim {}", p.dim()), &res, res.is_zero()))
        }
    })
}

/// A composable letter sequence that may contain cancelling pairs.
fn random_letter_walk(r: &mut SuiteRng, pres: &Presentation, len: usize) -> (u32, Vec<Letter>) {
    let objects = pres.objects();
    let start = objects[r.gen_range(0..objects.len())];
    let mut here = start;
    let mut letters = Vec::new();
    for _ in 0..len {
        let w = random_word_from(r, pres, here, 1);
        if let Some(&l) = w.letters().first() {
            here = l.target();
            letters.push(l);
        } else if let Some(&prev) = letters.last() {
            let l: Letter = prev.inv();
            here = l.target();
            letters.push(l);
        }
    }
    (start, letters)
}

/// Cancels adjacent inverse pairs in a random order.
fn reduce_randomly(r: &mut SuiteRng, mut letters: Vec<Letter>) -> Vec<Letter> {
    loop {
        let spots: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&i| letters[i].cancels(letters[i + 1]))
            .collect();
        if spots.is_empty() {
            return letters;
        }
        let i = spots[r.gen_range(0..spots.len())];
        letters.drain(i..i + 2);
    }
}

fn random_one_form(r: &mut SuiteRng, pres: &Presentation, max_len: usize) -> OneForm {
    let gens = pres.generators();
    let mut out = OneForm::zero();
    for _ in 0..r.gen_range(1..=3) {
        let c = gens[r.gen_range(0..gens.len())];
        let v = c.source();
        let u = random_path(r, pres, 0, v, max_len);
        let u = if r.gen_bool(0.5) { random_path(r, pres, v, v, max_len) } else { u };
        let w = random_word_from(r, pres, v, max_len);
        out.add_scaled(&form_act(&u, &basis_element(c), &w), &random_coeff(r));
    }
    out
}

enum StructCase {
    Confluence(u32, Vec<Letter>, Vec<Letter>),
    Cyclic(Word, Word),
    Bimodule(Word, Word, Word, Word, Tensor2),
    Duality(OneForm),
}

fn structural(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let pres = Presentation::from(cfg.sig);
    let gens = pres.generators();
    let mut r = suite_rng(cfg.seed, "structural");
    let mut inputs = Vec::new();
    for _ in 0..cfg.samples {
        let (start, letters) = random_letter_walk(&mut r, &pres, 2 * cfg.max_len);
        let reduced = reduce_randomly(&mut r, letters.clone());
        inputs.push(StructCase::Confluence(start, letters, reduced));

        let x = random_word(&mut r, &pres, cfg.max_len);
        let y = random_path(&mut r, &pres, x.target(), x.source(), cfg.max_len);
        inputs.push(StructCase::Cyclic(x, y));

        let words: Vec<Word> = (0..4).map(|_| random_word(&mut r, &pres, 2)).collect();
        let mut t = Tensor2::zero();
        for _ in 0..2 {
            let p = random_word(&mut r, &pres, 2);
            let q_ = random_word(&mut r, &pres, 2);
            t.add_term((p, q_), random_coeff(&mut r));
        }
        inputs.push(StructCase::Bimodule(
            words[0].clone(),
            words[1].clone(),
            words[2].clone(),
            words[3].clone(),
            t,
        ));

        inputs.push(StructCase::Duality(random_one_form(&mut r, &pres, cfg.max_len.min(3))));
    }
    run_cases(inputs, |case| match case {
        StructCase::Confluence(start, letters, reduced) => {
            let stack = Word::from_letters(*start, letters);
            let random_order = Word::from_letters(*start, reduced);
            let pass = stack.is_some() && stack == random_order && stack.as_ref().map(|w| w.letters()) == Some(&reduced[..]);
            let shown: Vec<String> = letters.iter().map(|l| l.to_string()).collect();
            Ok(Outcome {
                inputs: format!("reduce [{}]", shown.join(" ")),
                residual: format!(
                    "{} vs {}",
                    stack.map_or("∅".into(), |w| w.to_string()),
                    random_order.map_or("∅".into(), |w| w.to_string())
                ),
                pass,
            })
        }
        StructCase::Cyclic(x, y) => {
            let xy = x.compose(y).expect("y starts where x ends");
            let yx = y.compose(x).expect("x starts where y ends");
            let res = trace_word(&xy) - trace_word(&yx);
            let direct = CyclicWord::of(&xy) == CyclicWord::of(&yx);
            Ok(outcome(format!("x = {x}; y = {y}"), &res, res.is_zero() && direct))
        }
        StructCase::Bimodule(a, b, c, d, t) => {
            let e = |w: &Word| AlgElem::basis(w.clone());
            let one = crate::algebra::unit(&pres.objects());
            let ab = crate::algebra::alg_mul(&e(a), &e(b));
            let cd = crate::algebra::alg_mul(&e(c), &e(d));
            let mut res = outer_act(&ab, t, &cd) - outer_act(&e(a), &outer_act(&e(b), t, &e(c)), &e(d));
            res += &(inner_act(&ab, t, &cd) - inner_act(&e(a), &inner_act(&e(b), t, &e(c)), &e(d)));
            res += &(outer_act(&e(a), &inner_act(&e(b), t, &e(c)), &e(d))
                - inner_act(&e(b), &outer_act(&e(a), t, &e(d)), &e(c)));
            res += &(outer_act(&one, t, &one) - t.clone());
            res += &(inner_act(&one, t, &one) - t.clone());
            Ok(outcome(format!("a = {a}; b = {b}; c = {c}; d = {d}; t = {t}"), &res, res.is_zero()))
        }
        StructCase::Duality(omega) => {
            let res = reconstruct(omega, &gens) - omega.clone();
            Ok(outcome(format!("ω = {omega}"), &res, res.is_zero()))
        }
    })
}

/// Counterexamples to the theorem under a modified framing; used to check
/// that the harness can fail.
pub fn mutated_framing_report(sig: &SurfaceSignature, c: Generator) -> Result<Vec<crate::mu::MainTheoremCase>> {
    let framing = crate::mu::FramingData::standard(sig).with_rot(c, q(0));
    let mu = MuEngine::with_framing(sig, &framing);
    let words: Vec<Word> = sig.generators().into_iter().map(|g| g.word()).collect();
    crate::mu::verify_main_theorem_with(sig, &mu, &words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::make_surface;

    fn cfg(g: u32, n: u32, samples: usize) -> SuiteConfig {
        SuiteConfig {
            sig: make_surface(g, n).unwrap(),
            seed: 11,
            samples,
            max_len: 4,
        }
    }

    #[test]
    fn every_suite_passes_on_a_small_corpus() {
        for name in SUITES {
            let reports = run_suite(name, &cfg(1, 2, 8)).unwrap();
            for rep in reports {
                let bad: Vec<_> = rep.failures().collect();
                assert!(bad.is_empty(), "{name}: {bad:?}");
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("defect", &cfg(1, 1, 5)).unwrap();
        let b = run_suite("defect", &cfg(1, 1, 5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(run_suite("nope", &cfg(1, 1, 1)), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn mutated_framing_fails_only_on_the_mutated_generator() {
        let sig = make_surface(1, 2).unwrap();
        let report = mutated_framing_report(&sig, Generator::delta(2)).unwrap();
        let failing: Vec<_> = report.iter().filter(|c| c.status == "fail").map(|c| c.word.clone()).collect();
        assert_eq!(failing, vec!["d2".to_string()]);
    }
}
