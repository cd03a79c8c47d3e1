//! Text format for homeomorphism descriptions.
//!
//! ```text
//! homeo := (identity) | (chart (piece src dst)*) | (lift perm)
//!        | (blockmap perm (override i chart)*)
//!        | (compose homeo homeo) | (inverse homeo)
//! perm  := (table (i j)*) | (zigzag)
//!        | (perm-compose perm perm) | (perm-inverse perm)
//! ```
//!
//! `src` and `dst` are interval literals `(lo, hi]` with ordinal
//! expression endpoints.

use crate::homeo::chart::{Chart, Interval, Piece};
use crate::homeo::{Homeo, HomeoError, Perm};
use crate::ordinal::Ordinal;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    LParen,
    RParen,
    RBracket,
    Comma,
    Atom(String),
}

fn lex(text: &str) -> Vec<Tok> {
    let mut toks = Vec::new();
    let mut atom = String::new();
    let flush = |atom: &mut String, toks: &mut Vec<Tok>| {
        if !atom.is_empty() {
            toks.push(Tok::Atom(std::mem::take(atom)));
        }
    };
    for ch in text.chars() {
        match ch {
            '(' | ')' | ']' | ',' => {
                flush(&mut atom, &mut toks);
                toks.push(match ch {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ']' => Tok::RBracket,
                    _ => Tok::Comma,
                });
            }
            c if c.is_whitespace() => flush(&mut atom, &mut toks),
            c => atom.push(c),
        }
    }
    flush(&mut atom, &mut toks);
    toks
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    alpha: u64,
}

impl Parser {
    fn err(&self, msg: &str) -> HomeoError {
        HomeoError::Parse(format!("{msg} at token {}", self.pos))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok, HomeoError> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok) -> Result<(), HomeoError> {
        let got = self.next()?;
        if got == want {
            Ok(())
        } else {
            Err(self.err(&format!("expected {want:?}, found {got:?}")))
        }
    }

    fn atom(&mut self) -> Result<String, HomeoError> {
        match self.next()? {
            Tok::Atom(a) => Ok(a),
            other => Err(self.err(&format!("expected a symbol, found {other:?}"))),
        }
    }

    fn index(&mut self) -> Result<u64, HomeoError> {
        let a = self.atom()?;
        a.parse().map_err(|_| self.err(&format!("bad block index {a:?}")))
    }

    /// Joins atoms up to the given delimiter into one ordinal expression.
    fn ordinal_until(&mut self, stop: &Tok) -> Result<Ordinal, HomeoError> {
        let mut parts: Vec<String> = Vec::new();
        while self.peek() != Some(stop) {
            parts.push(self.atom()?);
        }
        let text = parts.join(" ");
        text.parse().map_err(|e| self.err(&format!("bad ordinal {text:?}: {e}")))
    }

    fn interval(&mut self) -> Result<Interval, HomeoError> {
        self.expect(Tok::LParen)?;
        let lo = self.ordinal_until(&Tok::Comma)?;
        self.expect(Tok::Comma)?;
        let hi = self.ordinal_until(&Tok::RBracket)?;
        self.expect(Tok::RBracket)?;
        Ok((lo, hi))
    }

    fn piece(&mut self) -> Result<Piece, HomeoError> {
        self.expect(Tok::LParen)?;
        let head = self.atom()?;
        if head != "piece" {
            return Err(self.err(&format!("expected piece, found {head:?}")));
        }
        let src = self.interval()?;
        let dst = self.interval()?;
        self.expect(Tok::RParen)?;
        Piece::new(src, dst)
    }

    /// A `(chart ...)` form, already past the opening paren and head.
    fn chart_body(&mut self) -> Result<Chart, HomeoError> {
        let mut pieces = Vec::new();
        while self.peek() == Some(&Tok::LParen) {
            pieces.push(self.piece()?);
        }
        self.expect(Tok::RParen)?;
        Chart::new(pieces)
    }

    fn chart(&mut self) -> Result<Chart, HomeoError> {
        self.expect(Tok::LParen)?;
        let head = self.atom()?;
        if head != "chart" {
            return Err(self.err(&format!("expected chart, found {head:?}")));
        }
        self.chart_body()
    }

    fn perm(&mut self) -> Result<Perm, HomeoError> {
        self.expect(Tok::LParen)?;
        let head = self.atom()?;
        let p = match head.as_str() {
            "table" => {
                let mut entries = Vec::new();
                while self.peek() == Some(&Tok::LParen) {
                    self.expect(Tok::LParen)?;
                    let i = self.index()?;
                    let j = self.index()?;
                    self.expect(Tok::RParen)?;
                    entries.push((i, j));
                }
                Perm::table(entries)?
            }
            "zigzag" => Perm::zigzag(),
            "perm-compose" => {
                let outer = self.perm()?;
                let inner = self.perm()?;
                Perm::compose(&outer, &inner)
            }
            "perm-inverse" => Perm::inverse(&self.perm()?),
            other => return Err(self.err(&format!("unknown permutation form {other:?}"))),
        };
        self.expect(Tok::RParen)?;
        Ok(p)
    }

    fn homeo(&mut self) -> Result<Homeo, HomeoError> {
        self.expect(Tok::LParen)?;
        let head = self.atom()?;
        match head.as_str() {
            "identity" => {
                self.expect(Tok::RParen)?;
                Ok(Homeo::identity(self.alpha))
            }
            "chart" => {
                let chart = self.chart_body()?;
                Homeo::from_global_chart(self.alpha, chart)
            }
            "lift" => {
                let p = self.perm()?;
                self.expect(Tok::RParen)?;
                Ok(Homeo::lift(self.alpha, &p))
            }
            "blockmap" => {
                let p = self.perm()?;
                let mut overrides = BTreeMap::new();
                while self.peek() == Some(&Tok::LParen) {
                    self.expect(Tok::LParen)?;
                    let head = self.atom()?;
                    if head != "override" {
                        return Err(self.err(&format!("expected override, found {head:?}")));
                    }
                    let i = self.index()?;
                    let chart = self.chart()?;
                    self.expect(Tok::RParen)?;
                    if overrides.insert(i, chart).is_some() {
                        return Err(self.err(&format!("duplicate override for block {i}")));
                    }
                }
                self.expect(Tok::RParen)?;
                Homeo::block_map(self.alpha, &p, overrides)
            }
            "compose" => {
                let outer = self.homeo()?;
                let inner = self.homeo()?;
                self.expect(Tok::RParen)?;
                Ok(Homeo::compose(&outer, &inner))
            }
            "inverse" => {
                let g = self.homeo()?;
                self.expect(Tok::RParen)?;
                Ok(Homeo::inverse(&g))
            }
            other => Err(self.err(&format!("unknown homeomorphism form {other:?}"))),
        }
    }
}

/// Parses a homeomorphism description over the block system of rank
/// `alpha` (ambient space `[1, w^(alpha+1)]`).
pub fn parse_homeo(alpha: u64, text: &str) -> Result<Homeo, HomeoError> {
    let mut p = Parser { toks: lex(text), pos: 0, alpha };
    let h = p.homeo()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn parses_identity_and_lift() {
        let h = parse_homeo(1, "(identity)").unwrap();
        assert_eq!(h.eval(&o("w+3")).unwrap(), o("w+3"));
        let h = parse_homeo(1, "(lift (zigzag))").unwrap();
        // Block 1 = (0, w] moves onto block 2 = (w, w*2].
        assert_eq!(h.eval(&o("3")).unwrap(), o("w+3"));
        assert_eq!(h.eval(&o("w*3")).unwrap(), o("w"));
    }

    #[test]
    fn parses_chart_with_spaced_ordinals() {
        let text = "(chart (piece (0, w] (w, w*2]) (piece (w, w*2] (0, w]))";
        let h = parse_homeo(1, text).unwrap();
        assert_eq!(h.eval(&o("5")).unwrap(), o("w+5"));
        assert_eq!(h.eval(&o("w+5")).unwrap(), o("5"));
        assert_eq!(h.eval(&o("w*2+1")).unwrap(), o("w*2+1"));
    }

    #[test]
    fn parses_nested_forms() {
        let text = "(compose (lift (table (1 2) (2 1))) (inverse (lift (table (1 2) (2 1)))))";
        let h = parse_homeo(2, text).unwrap();
        for x in ["1", "w^2+w*2", "w^2*3"] {
            assert_eq!(h.eval(&o(x)).unwrap(), o(x));
        }
    }

    #[test]
    fn parses_blockmap_override() {
        // Swap the first two points of block 1, identity elsewhere.
        let text = "(blockmap (table) \
                    (override 1 (chart \
                      (piece (0, 1] (1, 2]) \
                      (piece (1, 2] (0, 1]) \
                      (piece (2, w] (2, w]))))";
        let h = parse_homeo(1, text).unwrap();
        assert_eq!(h.eval(&o("1")).unwrap(), o("2"));
        assert_eq!(h.eval(&o("2")).unwrap(), o("1"));
        assert_eq!(h.eval(&o("7")).unwrap(), o("7"));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_homeo(1, "(identity) junk").is_err());
        assert!(parse_homeo(1, "(warp)").is_err());
        assert!(parse_homeo(1, "(chart (piece (0, w] (0, 3]))").is_err());
        assert!(parse_homeo(1, "(lift (table (1 2)))").is_err());
        assert!(parse_homeo(1, "").is_err());
    }
}
