//! Path expressions: `a1 b1^-1 * d2`, `1_0`, and linear combinations
//! `2*a1 b1 - 1/2*g1`.

use crate::algebra::{trace_project, AlgElem, TraceElem};
use crate::error::{Error, Result};
use crate::linear::{parse_coeff, q, Coeff};
use crate::surface::Presentation;
use crate::word::{Generator, Kind, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Atom {
    Letter { gen: Generator, exponent: i64 },
    Identity(u32),
}

#[derive(Clone, Debug)]
struct Token {
    text: String,
    offset: usize,
    atom: Atom,
}

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

fn parse_index(digits: &str, offset: usize, ident: &str) -> Result<u32> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::UnknownIdentifier {
            ident: ident.to_string(),
            offset,
        });
    }
    digits
        .parse()
        .map_err(|_| parse_err(offset, format!("index in `{ident}` is too large")))
}

fn lex_atom(text: &str, offset: usize, pres: &Presentation) -> Result<Token> {
    let (ident, exponent) = match text.split_once('^') {
        Some((ident, exp)) => {
            let e: i64 = exp
                .parse()
                .map_err(|_| parse_err(offset + ident.len() + 1, format!("bad exponent `{exp}`")))?;
            (ident, Some(e))
        }
        None => (text, None),
    };
    if let Some(obj) = ident.strip_prefix("1_") {
        let v = parse_index(obj, offset, ident)?;
        if !pres.contains_object(v) {
            return Err(Error::IndexOutOfRange {
                ident: ident.to_string(),
                offset,
                index: v,
                context: format!("the objects of {pres}"),
            });
        }
        if exponent.is_some() {
            return Err(parse_err(offset, format!("identity `{ident}` cannot carry an exponent")));
        }
        return Ok(Token {
            text: text.to_string(),
            offset,
            atom: Atom::Identity(v),
        });
    }
    let mut chars = ident.chars();
    let kind = chars.next().and_then(Kind::from_prefix).ok_or_else(|| Error::UnknownIdentifier {
        ident: ident.to_string(),
        offset,
    })?;
    let index = parse_index(chars.as_str(), offset, ident)?;
    let gen = Generator { kind, index };
    if index == 0 || !pres.contains(gen) {
        let known_kind = pres.generators().iter().any(|g| g.kind == kind);
        if !known_kind {
            return Err(Error::UnknownIdentifier {
                ident: ident.to_string(),
                offset,
            });
        }
        return Err(Error::IndexOutOfRange {
            ident: ident.to_string(),
            offset,
            index,
            context: pres.to_string(),
        });
    }
    let exponent = exponent.unwrap_or(1);
    if exponent < 0 && !gen.invertible() {
        return Err(parse_err(offset, format!("`{ident}` is not invertible")));
    }
    Ok(Token {
        text: text.to_string(),
        offset,
        atom: Atom::Letter { gen, exponent },
    })
}

fn tokenize(src: &str, base: usize, pres: &Presentation) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut start = None;
    let flush = |start: &mut Option<usize>, end: usize, out: &mut Vec<Token>| -> Result<()> {
        if let Some(s) = start.take() {
            out.push(lex_atom(&src[s..end], base + s, pres)?);
        }
        Ok(())
    };
    for (i, ch) in src.char_indices() {
        if ch.is_whitespace() || ch == '*' {
            flush(&mut start, i, &mut out)?;
        } else if ch.is_ascii_alphanumeric() || ch == '_' || ch == '^' || ch == '-' {
            start.get_or_insert(i);
        } else {
            return Err(parse_err(base + i, format!("unexpected character `{ch}`")));
        }
    }
    flush(&mut start, src.len(), &mut out)?;
    Ok(out)
}

fn parse_path_at(src: &str, base: usize, pres: &Presentation) -> Result<Word> {
    let tokens = tokenize(src, base, pres)?;
    let Some(first) = tokens.first() else {
        return Err(parse_err(base, "empty path expression"));
    };
    let start = match first.atom {
        Atom::Identity(v) => v,
        Atom::Letter { gen, exponent } if exponent < 0 => gen.target(),
        Atom::Letter { gen, .. } => gen.source(),
    };
    let mut word = Word::identity(start);
    let mut prev: Option<&Token> = None;
    for tok in &tokens {
        let piece = match tok.atom {
            Atom::Identity(v) => Word::identity(v),
            Atom::Letter { gen, exponent } => {
                let l = if exponent < 0 { gen.inv_letter() } else { gen.letter() };
                let mut w = Word::identity(l.source());
                for _ in 0..exponent.unsigned_abs() {
                    w = w.compose(&Word::letter(l)).expect("powers of one letter compose");
                }
                w
            }
        };
        word = word.compose(&piece).ok_or_else(|| Error::NotComposable {
            left: prev.map_or_else(|| word.to_string(), |p| p.text.clone()),
            right: tok.text.clone(),
            end: word.target(),
            start: piece.source(),
            offset: tok.offset,
        })?;
        prev = Some(tok);
    }
    Ok(word)
}

/// Parses a path expression into a reduced word; adjacent atoms must be
/// composable.
pub fn parse_path(src: &str, pres: &Presentation) -> Result<Word> {
    parse_path_at(src, 0, pres)
}

fn is_coeff_token(s: &str) -> bool {
    let mut parts = s.splitn(2, '/');
    let num = parts.next().unwrap_or("");
    let num_ok = !num.is_empty() && num.bytes().all(|b| b.is_ascii_digit());
    num_ok && parts.next().is_none_or(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
}

/// Splits on `+`/`-`/`−` term separators, keeping `^-1` intact. Yields
/// `(sign, byte offset, term text)`.
fn split_terms(src: &str) -> Vec<(bool, usize, &str)> {
    let mut out = Vec::new();
    let mut negative = false;
    let mut start = 0;
    let mut prev_non_space: Option<char> = None;
    let mut has_content = false;
    for (i, ch) in src.char_indices() {
        let is_sep = matches!(ch, '+' | '−') || (ch == '-' && prev_non_space != Some('^'));
        if is_sep {
            if has_content {
                out.push((negative, start, &src[start..i]));
                negative = false;
            }
            if ch != '+' {
                negative = !negative;
            }
            start = i + ch.len_utf8();
            has_content = false;
        } else if !ch.is_whitespace() {
            has_content = true;
        }
        if !ch.is_whitespace() {
            prev_non_space = Some(ch);
        }
    }
    if has_content {
        out.push((negative, start, &src[start..]));
    }
    out
}

/// Parses `c1*p1 + c2*p2 - …`; a bare path has coefficient 1 and `0` is the
/// zero element.
pub fn parse_elem(src: &str, pres: &Presentation) -> Result<AlgElem> {
    if src.trim() == "0" {
        return Ok(AlgElem::zero());
    }
    let terms = split_terms(src);
    if terms.is_empty() {
        return Err(parse_err(0, "empty expression"));
    }
    let mut out = AlgElem::zero();
    for (negative, offset, text) in terms {
        let lead = text.len() - text.trim_start().len();
        let body = text.trim_start();
        let first_end = body.find(|c: char| c.is_whitespace() || c == '*').unwrap_or(body.len());
        let (coeff, path, path_offset): (Coeff, &str, usize) = if is_coeff_token(&body[..first_end]) {
            let c = parse_coeff(&body[..first_end])
                .ok_or_else(|| parse_err(offset + lead, "zero denominator"))?;
            let rest = &body[first_end..];
            let skip = rest.len() - rest.trim_start_matches(|c: char| c.is_whitespace() || c == '*').len();
            (c, &rest[skip..], offset + lead + first_end + skip)
        } else {
            (q(1), body, offset + lead)
        };
        let w = parse_path_at(path, path_offset, pres)?;
        out.add_term(w, if negative { -coeff } else { coeff });
    }
    Ok(out)
}

/// Parses an element of `|A|`; surrounding `|…|` bars are optional.
pub fn parse_trace(src: &str, pres: &Presentation) -> Result<TraceElem> {
    let cleaned: String = src.chars().map(|c| if c == '|' { ' ' } else { c }).collect();
    let a = parse_elem(&cleaned, pres)?;
    for w in a.keys() {
        if !w.is_loop() {
            return Err(Error::NoRepresentative(format!("|{w}|")));
        }
    }
    Ok(trace_project(&a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::make_surface;

    fn pres(g: u32, n: u32) -> Presentation {
        make_surface(g, n).unwrap().into()
    }

    #[test]
    fn parses_words_with_inverses() {
        let p = pres(1, 1);
        assert_eq!(parse_path("a1 b1 a1^-1", &p).unwrap().to_string(), "a1 b1 a1^-1");
        assert_eq!(parse_path("d1 g1", &p).unwrap().to_string(), "d1 g1");
        assert_eq!(parse_path("a1*a1^-1", &p).unwrap().to_string(), "1_0");
        assert_eq!(parse_path("b1^-2", &p).unwrap().to_string(), "b1^-1 b1^-1");
        assert_eq!(parse_path("1_1 d1 1_0", &p).unwrap().to_string(), "d1");
    }

    #[test]
    fn composability_errors_name_the_pair() {
        let err = parse_path("g1 d1", &pres(1, 1)).unwrap_err();
        assert_eq!(
            err,
            Error::NotComposable {
                left: "g1".into(),
                right: "d1".into(),
                end: 0,
                start: 1,
                offset: 3
            }
        );
    }

    #[test]
    fn identifier_errors_carry_offsets() {
        let p = pres(1, 1);
        assert!(matches!(parse_path("a1 x2", &p), Err(Error::UnknownIdentifier { offset: 3, .. })));
        assert!(matches!(parse_path("a2", &p), Err(Error::IndexOutOfRange { index: 2, .. })));
        assert!(matches!(parse_path("1_5", &p), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(parse_path("a1 ?", &p), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(parse_path("w1", &p), Err(Error::UnknownIdentifier { .. })));
    }

    #[test]
    fn tensor_letters() {
        let p = Presentation::tensor(3).unwrap();
        assert_eq!(parse_path("w1 w3", &p).unwrap().to_string(), "w1 w3");
        assert!(parse_path("w1^-1", &p).is_err());
        assert!(matches!(parse_path("w4", &p), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn linear_combinations_round_trip() {
        let p = pres(1, 1);
        let a = parse_elem("-1/2*a1 + 1*b1 a1^-1 - 3 d1", &p).unwrap();
        assert_eq!(a.to_string(), "-1/2*a1 + -3*d1 + 1*b1 a1^-1");
        assert_eq!(parse_elem(&a.to_string(), &p).unwrap(), a);
        assert!(parse_elem("0", &p).unwrap().is_zero());
        assert!(matches!(parse_elem("2*g1 d1", &p), Err(Error::NotComposable { offset: 5, .. })));
    }

    #[test]
    fn trace_elements() {
        let p = pres(1, 1);
        let t = parse_trace("|a1 b1 a1^-1|", &p).unwrap();
        assert_eq!(t.to_string(), "|b1|");
        assert!(parse_trace("d1", &p).is_err());
    }
}
