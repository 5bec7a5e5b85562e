//! Lie derivatives, contractions against a basis-flat connection, and the
//! trace recipe behind `Div^∇`, `TDiv^∇`, `φ_{Π,∇}`, `δ^{Ham_Π,∇}` and the
//! modular vector field.
//!
//! Traces are read off the basis: for an `A^e`-linear `ψ` on `Ω¹A`,
//! `Tr ψ = Σ_c |coefficient of e_c in ψ(e_c)|`.

use std::ops::{AddAssign, SubAssign};

use rayon::prelude::*;

use crate::algebra::{AlgElem, TraceElem};
use crate::bracket::DoubleBracket;
use crate::derivation::{Derivation, DoubleDerivation};
use crate::error::Result;
use crate::forms::{basis_element, basis_tail, d_elem_sandwich, d_sandwich, form_act, form_act_elem, Connection, OneForm};
use crate::linear::{Coeff, LinComb};
use crate::surface::Presentation;
use crate::tensor::{fold, mult_trace, trace_second, TraceTensor2, TripleTrace};
use crate::word::{CyclicWord, Generator, Word};

/// Element of `trip(A)⊗_{A^e}Ω¹ ≅ (A⊗Ω¹) ⊕ (Ω¹⊗A)`.
///
/// `a_omega` keys `(x, c, u, v)` stand for `x ⊗ u·e_c·v`; `omega_a` keys
/// `(c, u, v, y)` stand for `u·e_c·v ⊗ y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TripOmega {
    pub a_omega: LinComb<(Word, Generator, Word, Word)>,
    pub omega_a: LinComb<(Generator, Word, Word, Word)>,
}

impl TripOmega {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.a_omega.is_zero() && self.omega_a.is_zero()
    }

    /// Adds `k · x ⊗ ω`.
    pub fn push_a_omega(&mut self, x: &Word, omega: &OneForm, k: &Coeff) {
        for ((c, u, v), coeff) in omega {
            self.a_omega
                .add_term((x.clone(), *c, u.clone(), v.clone()), coeff * k);
        }
    }

    /// Adds `k · ω ⊗ y`.
    pub fn push_omega_a(&mut self, omega: &OneForm, y: &Word, k: &Coeff) {
        for ((c, u, v), coeff) in omega {
            self.omega_a
                .add_term((*c, u.clone(), v.clone(), y.clone()), coeff * k);
        }
    }

    /// Outer action `l·X·r`: `l` multiplies the leftmost factor, `r` the
    /// rightmost.
    pub fn act(&self, l: &Word, r: &Word) -> TripOmega {
        TripOmega {
            a_omega: self
                .a_omega
                .filter_map_keys(|(x, c, u, v)| Some((l.compose(x)?, *c, u.clone(), v.compose(r)?))),
            omega_a: self
                .omega_a
                .filter_map_keys(|(c, u, v, y)| Some((*c, l.compose(u)?, v.clone(), y.compose(r)?))),
        }
    }

    /// Collapses both summands to `Ω¹` (`x⊗ω ↦ xω`, `ω⊗y ↦ ωy`); the image
    /// of `L_Θ` under this map is `L_{mult∘Θ}`.
    pub fn collapse(&self) -> OneForm {
        let mut out = OneForm::zero();
        for ((x, c, u, v), k) in &self.a_omega {
            if let Some(xu) = x.compose(u) {
                out.add_term((*c, xu, v.clone()), k.clone());
            }
        }
        for ((c, u, v, y), k) in &self.omega_a {
            if let Some(vy) = v.compose(y) {
                out.add_term((*c, u.clone(), vy), k.clone());
            }
        }
        out
    }

    /// Diagonal trace at basis element `c` through `|trip(A)|`:
    /// `x⊗u·e_c·v ↦ ux⊗|v|` and `u·e_c·v⊗y ↦ |u|⊗yv`.
    pub fn trace_at(&self, c: Generator) -> TripleTrace {
        let mut out = TripleTrace::zero();
        for ((x, g, u, v), k) in &self.a_omega {
            if *g != c {
                continue;
            }
            if let (Some(ux), Some(v)) = (u.compose(x), CyclicWord::of(v)) {
                out.right.add_term((ux, v), k.clone());
            }
        }
        for ((g, u, v, y), k) in &self.omega_a {
            if *g != c {
                continue;
            }
            if let (Some(u), Some(yv)) = (CyclicWord::of(u), y.compose(v)) {
                out.left.add_term((u, yv), k.clone());
            }
        }
        out
    }
}

impl AddAssign<&TripOmega> for TripOmega {
    fn add_assign(&mut self, rhs: &TripOmega) {
        self.a_omega += &rhs.a_omega;
        self.omega_a += &rhs.omega_a;
    }
}

impl SubAssign<&TripOmega> for TripOmega {
    fn sub_assign(&mut self, rhs: &TripOmega) {
        self.a_omega -= &rhs.a_omega;
        self.omega_a -= &rhs.omega_a;
    }
}

fn unit_at(c: Generator) -> Word {
    Word::identity(c.source())
}

/// `Ω¹`-diagonal trace of a 1-form at `c`: `u·e_c·v ↦ |u|⊗|v|`.
fn form_trace_at(omega: &OneForm, c: Generator) -> TraceTensor2 {
    let mut out = TraceTensor2::zero();
    for ((g, u, v), k) in omega {
        if *g != c {
            continue;
        }
        if let (Some(u), Some(v)) = (CyclicWord::of(u), CyclicWord::of(v)) {
            out.add_term((u, v), k.clone());
        }
    }
    out
}

/// `L_f(e_c)`: `d(f(c))·c⁻¹ − e_c·f(c)·c⁻¹` for groupoid letters, `d(f(w))`
/// for free letters.
fn lie_der_basis(f: &Derivation, c: Generator) -> OneForm {
    let fc = f.on_generator(c);
    let v = unit_at(c);
    match basis_tail(c) {
        None => d_elem_sandwich(&v, &fc, &Word::identity(c.target())),
        Some(t) => {
            let tw = Word::letter(t);
            let mut out = d_elem_sandwich(&v, &fc, &tw);
            let e = basis_element(c);
            for (x, k) in &fc {
                if let Some(xt) = x.compose(&tw) {
                    out.add_scaled(&form_act(&v, &e, &xt), &-k.clone());
                }
            }
            out
        }
    }
}

/// The Lie derivative `L_f` on `Ω¹A`, via
/// `L_f(u·e_c·w) = f(u)·e_c·w + u·L_f(e_c)·w + u·e_c·f(w)`.
pub fn lie_der(f: &Derivation, omega: &OneForm) -> OneForm {
    let mut out = OneForm::zero();
    for ((c, u, w), k) in omega {
        let e = basis_element(*c);
        let fu = f.eval_word(u);
        let fw = f.eval_word(w);
        let mut term = form_act_elem(&fu, &e, &AlgElem::basis(w.clone()));
        term += &form_act(u, &lie_der_basis(f, *c), w);
        term += &form_act_elem(&AlgElem::basis(u.clone()), &e, &fw);
        out.add_scaled(&term, k);
    }
    out
}

/// `L_Θ(a·dc·b)` for a generator `c` (positive letter), by the closed form
///
/// ```text
/// L_Θ(a(dc)b) = Θ'(a)⊗Θ''(a)(dc)b + a dΘ'(c)⊗Θ''(c)b
///             + aΘ'(c)⊗dΘ''(c)b + a(dc)Θ'(b)⊗Θ''(b)
/// ```
///
/// which follows from `L_Θ(a(dc)b) = L_Θ(a d(cb)) − L_Θ(ac db)` and the
/// `a₀da₁` formula.
pub fn lie_double_mixed(theta: &DoubleDerivation, a: &Word, c: Generator, b: &Word) -> TripOmega {
    let mut out = TripOmega::zero();
    let cw = c.word();
    let dc_b = |l: &Word, r: &Word| d_sandwich(l, &cw, r);

    for ((p, q), k) in &theta.eval_word(a) {
        out.push_a_omega(p, &dc_b(q, b), k);
    }
    let tc = theta.on_generator(c);
    for ((p, q), k) in &tc {
        if let Some(qb) = q.compose(b) {
            let left = d_sandwich(a, p, &Word::identity(p.target()));
            out.push_omega_a(&left, &qb, k);
        }
        if let Some(ap) = a.compose(p) {
            let right = d_sandwich(&Word::identity(q.source()), q, b);
            out.push_a_omega(&ap, &right, k);
        }
    }
    for ((p, q), k) in &theta.eval_word(b) {
        let left = dc_b(a, p);
        out.push_omega_a(&left, q, k);
    }
    out
}

/// The double Lie derivative `L_Θ : Ω¹ → (A⊗Ω¹) ⊕ (Ω¹⊗A)`.
pub fn lie_double(theta: &DoubleDerivation, omega: &OneForm) -> TripOmega {
    let mut out = TripOmega::zero();
    for ((c, u, w), k) in omega {
        let tw = match basis_tail(*c) {
            Some(t) => match Word::letter(t).compose(w) {
                Some(tw) => tw,
                None => continue,
            },
            None => w.clone(),
        };
        let x = lie_double_mixed(theta, u, *c, &tw);
        out.a_omega.add_scaled(&x.a_omega, k);
        out.omega_a.add_scaled(&x.omega_a, k);
    }
    out
}

/// `i_{Θ^e}∇` for a basis-flat connection:
/// `u·e_c·w ↦ Θ'(u)⊗Θ''(u)·e_c·w + u·e_c·Θ'(w)⊗Θ''(w)`.
pub fn contract_nabla(theta: &DoubleDerivation, conn: &Connection, omega: &OneForm) -> Result<TripOmega> {
    let omega = conn.covariant_coefficients(omega)?;
    let mut out = TripOmega::zero();
    for ((c, u, w), k) in &omega {
        let e = basis_element(*c);
        for ((p, q), kp) in &theta.eval_word(u) {
            out.push_a_omega(p, &form_act(q, &e, w), &(k * kp));
        }
        for ((p, q), kp) in &theta.eval_word(w) {
            out.push_omega_a(&form_act(u, &e, p), q, &(k * kp));
        }
    }
    Ok(out)
}

/// `(i_{f^e}⊗id)∇` for a basis-flat connection:
/// `u·e_c·w ↦ f(u)·e_c·w + u·e_c·f(w)`.
pub fn contract_nabla_der(f: &Derivation, conn: &Connection, omega: &OneForm) -> Result<OneForm> {
    let omega = conn.covariant_coefficients(omega)?;
    let mut out = OneForm::zero();
    for ((c, u, w), k) in &omega {
        let e = basis_element(*c);
        let uw = AlgElem::basis(u.clone());
        let ww = AlgElem::basis(w.clone());
        out.add_scaled(&form_act_elem(&f.eval_word(u), &e, &ww), k);
        out.add_scaled(&form_act_elem(&uw, &e, &f.eval_word(w)), k);
    }
    Ok(out)
}

/// `TDiv^∇(Θ) = Tr(i_{Θ^e}∇ − L_Θ)`.
pub fn tdiv(theta: &DoubleDerivation, conn: &Connection, pres: &Presentation) -> Result<TripleTrace> {
    let gens = pres.generators();
    conn.check_basis_flat(&gens)?;
    let parts: Vec<Result<TripleTrace>> = gens
        .par_iter()
        .map(|&c| {
            let e = basis_element(c);
            let mut x = contract_nabla(theta, conn, &e)?;
            x -= &lie_double(theta, &e);
            Ok(x.trace_at(c))
        })
        .collect();
    let mut out = TripleTrace::zero();
    for p in parts {
        out += &p?;
    }
    Ok(out)
}

/// `Div^∇(f) = Tr((i_{f^e}⊗id)∘∇ − L_f)`, computed on `Ω¹` without going
/// through `TDiv`.
pub fn div(f: &Derivation, conn: &Connection, pres: &Presentation) -> Result<TraceTensor2> {
    let gens = pres.generators();
    conn.check_basis_flat(&gens)?;
    let mut out = TraceTensor2::zero();
    for c in gens {
        let e = basis_element(c);
        let mut y = contract_nabla_der(f, conn, &e)?;
        y -= &lie_der(f, &e);
        out += &form_trace_at(&y, c);
    }
    Ok(out)
}

/// `φ_{Π,∇}(a) = TDiv^∇(Π(a, ·))`.
pub fn phi(pi: &DoubleBracket, conn: &Connection, a: &AlgElem, pres: &Presentation) -> Result<TripleTrace> {
    let theta = pi.as_double_derivation(a, &pres.generators());
    tdiv(&theta, conn, pres)
}

/// `δ^{Ham_Π,∇}(t) = |φ_{Π,∇}|(t)`, evaluated on loop representatives.
pub fn delta_map(pi: &DoubleBracket, conn: &Connection, t: &TraceElem, pres: &Presentation) -> Result<TraceTensor2> {
    let mut out = TraceTensor2::zero();
    for (class, k) in t {
        let rep = AlgElem::basis(class.representative());
        out.add_scaled(&mult_trace(&phi(pi, conn, &rep, pres)?), k);
    }
    Ok(out)
}

/// `Div^∇ ∘ Ham_Π`, the second route to `δ^{Ham_Π,∇}`.
pub fn delta_via_div(pi: &DoubleBracket, conn: &Connection, t: &TraceElem, pres: &Presentation) -> Result<TraceTensor2> {
    let f = pi.ham(t, &pres.generators())?;
    div(&f, conn, pres)
}

/// `m_{Π,∇,Θ}(a) = fd(φ_{Π,∇}(a)) + Θ'(a)⊗|Θ''(a)|`. Only meaningful when
/// `Π + Π° = ad_Θ`; that is not checked here.
pub fn modular(
    pi: &DoubleBracket,
    conn: &Connection,
    theta: &DoubleDerivation,
    a: &AlgElem,
    pres: &Presentation,
) -> Result<TripleTrace> {
    let mut out = fold(&phi(pi, conn, a, pres)?);
    out += &trace_second(&theta.eval(a));
    Ok(out)
}

/// `|m|: x⊗|y| ↦ |x|⊗|y|` on the folded (`A⊗|A|`) part.
pub fn modular_trace(m: &TripleTrace) -> TraceTensor2 {
    mult_trace(m)
}
