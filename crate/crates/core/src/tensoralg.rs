//! The tensor algebra `T(W)` with the double bracket induced by a pairing
//! `⟨·,·⟩ : W⊗W → ℚ` and the flat connection `∇_W(dw) = 0`.
//!
//! `T(W)` is the one-object case of the groupoid machinery: letters `w_i`
//! are non-invertible generators at object 0, and the divergence engine is
//! reused unchanged.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{AlgElem, TraceElem};
use crate::bracket::DoubleBracket;
use crate::divergence::{delta_map, phi};
use crate::error::{Error, Result};
use crate::forms::nabla_flat;
use crate::linear::{coeff_to_string, parse_coeff, Coeff};
use crate::surface::{Presentation, MAX_TENSOR_DIM};
use crate::tensor::{Tensor2, TraceTensor2, TripleTrace};
use crate::word::{Generator, Word};

/// `P[i][j] = ⟨w_{i+1}, w_{j+1}⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    entries: Vec<Vec<Coeff>>,
}

#[derive(Serialize, Deserialize)]
struct PairingJson {
    dim: usize,
    entries: Vec<Vec<Value>>,
}

fn coeff_from_json(v: &Value) -> Option<Coeff> {
    match v {
        Value::Number(n) => parse_coeff(&n.as_i64()?.to_string()),
        Value::String(s) => parse_coeff(s),
        _ => None,
    }
}

impl PairingMatrix {
    pub fn new(entries: Vec<Vec<Coeff>>) -> Result<Self> {
        let dim = entries.len();
        if dim == 0 || dim > MAX_TENSOR_DIM {
            return Err(Error::BadDimension(dim));
        }
        if entries.iter().any(|row| row.len() != dim) {
            return Err(Error::InvalidTable(format!("pairing matrix must be {dim}×{dim}")));
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `⟨w_i, w_j⟩` with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.entries[i - 1][j - 1]
    }

    pub fn is_skew(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == -self.entries[j][i].clone()))
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::Tensor { dim: self.dim() }
    }

    /// Parses `{"dim": m, "entries": [[…]]}`; entries are integers or
    /// `"p/q"` strings.
    pub fn from_json(src: &str) -> Result<Self> {
        let raw: PairingJson =
            serde_json::from_str(src).map_err(|e| Error::InvalidTable(format!("pairing matrix: {e}")))?;
        let entries = raw
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| coeff_from_json(v).ok_or_else(|| Error::InvalidTable(format!("bad coefficient {v}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.len() != raw.dim {
            return Err(Error::InvalidTable(format!(
                "dim is {} but {} rows were given",
                raw.dim,
                entries.len()
            )));
        }
        Self::new(entries)
    }

    pub fn to_json(&self) -> String {
        let raw = PairingJson {
            dim: self.dim(),
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|c| Value::String(coeff_to_string(c))).collect())
                .collect(),
        };
        serde_json::to_string(&raw).expect("pairing matrix serializes")
    }
}

/// A word `w_{i_1}⋯w_{i_k}` in `T(W)` from 1-based indices.
pub fn free_word(indices: &[u32]) -> Word {
    let letters: Vec<_> = indices.iter().map(|&i| Generator::free(i).letter()).collect();
    Word::from_letters(0, &letters).expect("free words are always composable")
}

/// The double bracket with `(w_i, w_j) ↦ ⟨w_i, w_j⟩·1⊗1`, extended by the
/// Leibniz rules.
pub fn pairing_double_bracket(p: &PairingMatrix) -> DoubleBracket {
    let one = Word::identity(0);
    let n = p.dim() as u32;
    DoubleBracket::from_table((1..=n).flat_map(|i| {
        let one = one.clone();
        (1..=n).map(move |j| {
            let v = Tensor2::from_term((one.clone(), one.clone()), p.get(i as usize, j as usize).clone());
            ((Generator::free(i), Generator::free(j)), v)
        })
    }))
}

pub fn pairing_bracket(p: &PairingMatrix, u: &Word, w: &Word) -> Tensor2 {
    pairing_double_bracket(p).eval_words(u, w)
}

/// `φ_{⟨·,·⟩,∇_W}(a)`.
pub fn phi_tensor(p: &PairingMatrix, a: &AlgElem) -> Result<TripleTrace> {
    let pres = p.presentation();
    phi(&pairing_double_bracket(p), &nabla_flat(&pres), a, &pres)
}

/// `δ^{Ham_⟨·,·⟩,∇_W}(t)`.
pub fn delta_tensor(p: &PairingMatrix, t: &TraceElem) -> Result<TraceTensor2> {
    let pres = p.presentation();
    delta_map(&pairing_double_bracket(p), &nabla_flat(&pres), t, &pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::trace_word;
    use crate::linear::q;

    fn skew3() -> PairingMatrix {
        PairingMatrix::new(vec![
            vec![q(0), q(1), q(-2)],
            vec![q(-1), q(0), q(3)],
            vec![q(2), q(-3), q(0)],
        ])
        .unwrap()
    }

    #[test]
    fn single_letters_pair_to_units() {
        let p = skew3();
        let one = Word::identity(0);
        assert_eq!(
            pairing_bracket(&p, &free_word(&[1]), &free_word(&[2])),
            Tensor2::from_term((one.clone(), one), q(1))
        );
        assert!(pairing_bracket(&p, &free_word(&[1]), &free_word(&[])).is_zero());
    }

    #[test]
    fn two_letters_against_one() {
        let p = skew3();
        let got = pairing_bracket(&p, &free_word(&[1, 2]), &free_word(&[3]));
        let mut expected = Tensor2::from_term((free_word(&[2]), free_word(&[])), q(-2));
        expected.add_term((free_word(&[]), free_word(&[1])), q(3));
        assert_eq!(got, expected);
    }

    #[test]
    fn phi_vanishes_on_letters_for_skew_pairings() {
        let p = skew3();
        for i in 1..=3 {
            assert!(phi_tensor(&p, &AlgElem::basis(free_word(&[i]))).unwrap().is_zero());
        }
        assert!(phi_tensor(&p, &AlgElem::basis(free_word(&[]))).unwrap().is_zero());
        assert!(delta_tensor(&p, &trace_word(&free_word(&[1]))).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let p = skew3();
        assert_eq!(PairingMatrix::from_json(&p.to_json()).unwrap(), p);
        let parsed = PairingMatrix::from_json(r#"{"dim": 2, "entries": [[0, "1/2"], ["-1/2", 0]]}"#).unwrap();
        assert!(parsed.is_skew());
        assert!(PairingMatrix::from_json(r#"{"dim": 3, "entries": [[0]]}"#).is_err());
    }
}
