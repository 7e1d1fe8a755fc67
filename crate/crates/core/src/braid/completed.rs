use std::collections::BTreeMap;

use super::{BraidElt, BraidError, BraidMonoid};
use crate::coxeter::{DiagramAuto, WeylElt};

/// One letter of the completed monoid: a simple element, plain or underlined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    pub elt: WeylElt,
    pub underlined: bool,
}

impl Token {
    pub fn plain(elt: WeylElt) -> Self {
        Self { elt, underlined: false }
    }

    pub fn underlined(elt: WeylElt) -> Self {
        Self { elt, underlined: true }
    }
}

/// A word in the completed monoid. Identity tokens are never stored.
///
/// Two words denote the same element when their [`ZBraidElt`] images agree.
/// That test is sound; completeness is only conjectural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompletedBraidElt {
    tokens: Vec<Token>,
}

impl CompletedBraidElt {
    pub fn new(tokens: impl IntoIterator<Item = Token>) -> Self {
        Self { tokens: tokens.into_iter().filter(|t| !t.elt.is_identity()).collect() }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn has_underlined(&self) -> bool {
        self.tokens.iter().any(|t| t.underlined)
    }

    pub fn is_fully_underlined(&self) -> bool {
        self.tokens.iter().all(|t| t.underlined)
    }

    pub fn length(&self) -> usize {
        self.tokens.iter().map(|t| t.elt.length()).sum()
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self { tokens: self.tokens.iter().chain(&other.tokens).copied().collect() }
    }
}

/// Element of the monoid ring ℤB⁺.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZBraidElt {
    terms: BTreeMap<BraidElt, i64>,
}

impl ZBraidElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_braid(b: BraidElt) -> Self {
        Self { terms: BTreeMap::from([(b, 1)]) }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BraidElt, i64)> {
        self.terms.iter().map(|(b, &c)| (b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: BraidElt, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(b.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&b);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in o.terms() {
            out.add_term(b.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (b, c) in self.terms() {
            out.add_term(b.clone(), c * k);
        }
        out
    }
}

impl BraidMonoid<'_> {
    pub fn zb_mul(&self, a: &ZBraidElt, b: &ZBraidElt) -> ZBraidElt {
        let mut out = ZBraidElt::zero();
        for (x, c) in a.terms() {
            for (y, d) in b.terms() {
                out.add_term(self.mul(x, y), c * d);
            }
        }
        out
    }

    /// Left quotient of every term by `p`, if `p` divides them all.
    pub fn zb_left_quotient(&self, p: &BraidElt, z: &ZBraidElt) -> Option<ZBraidElt> {
        let mut out = ZBraidElt::zero();
        for (b, c) in z.terms() {
            out.add_term(self.left_quotient(p, b)?, c);
        }
        Some(out)
    }

    /// The image in ℤB⁺ where an underlined `w` becomes `Σ_{v ≤ w} v`.
    pub fn zb_image(&self, c: &CompletedBraidElt) -> ZBraidElt {
        let mut acc: BTreeMap<BraidElt, i64> = BTreeMap::from([(self.unit(), 1)]);
        for tok in c.tokens() {
            let mut next = BTreeMap::new();
            let factors: &[WeylElt] =
                if tok.underlined { self.sys.lower_interval(tok.elt) } else { std::slice::from_ref(&tok.elt) };
            for (b, &k) in &acc {
                for &v in factors {
                    *next.entry(self.mul_atom(b, v)).or_insert(0) += k;
                }
            }
            acc = next;
        }
        acc.retain(|_, v| *v != 0);
        ZBraidElt { terms: acc }
    }

    pub fn completed_equal(&self, a: &CompletedBraidElt, b: &CompletedBraidElt) -> bool {
        self.zb_image(a) == self.zb_image(b)
    }

    /// The morphism to `B⁺` forgetting underlines.
    pub fn rho(&self, c: &CompletedBraidElt) -> BraidElt {
        let atoms: Vec<WeylElt> = c.tokens().iter().map(|t| t.elt).collect();
        self.from_atoms(&atoms)
    }

    pub fn completed_from_braid(&self, b: &BraidElt) -> CompletedBraidElt {
        CompletedBraidElt::new(b.factors().iter().map(|&w| Token::plain(w)))
    }

    pub fn completed_apply_auto(&self, f: &DiagramAuto, c: &CompletedBraidElt) -> CompletedBraidElt {
        CompletedBraidElt::new(
            c.tokens().iter().map(|t| Token { elt: self.sys.apply_auto(f, t.elt), underlined: t.underlined }),
        )
    }

    /// Reads the token grammar: `_st s pi w0 _w0 1`. Tokens must be reduced words.
    pub fn parse_completed(&self, src: &str) -> Result<CompletedBraidElt, BraidError> {
        let mut tokens = Vec::new();
        for raw in src.split_whitespace() {
            let (underlined, body) = match raw.strip_prefix('_') {
                Some(rest) => (true, rest),
                None => (false, raw),
            };
            let w = match body {
                "pi" if underlined => return Err(BraidError::Parse("'pi' cannot be underlined".into())),
                "pi" => {
                    tokens.extend([Token::plain(self.sys.longest()); 2]);
                    continue;
                }
                "w0" => self.sys.longest(),
                "1" => self.sys.identity(),
                "" => return Err(BraidError::Parse("empty token".into())),
                _ => {
                    let word = self.sys.parse_word(body)?;
                    self.sys.from_reduced_word(&word).ok_or_else(|| BraidError::NotLengthAdditive(raw.to_string()))?
                }
            };
            tokens.push(Token { elt: w, underlined });
        }
        Ok(CompletedBraidElt::new(tokens))
    }

    pub fn format_completed(&self, c: &CompletedBraidElt) -> String {
        if c.tokens().is_empty() {
            return "1".into();
        }
        c.tokens()
            .iter()
            .map(|t| format!("{}{}", if t.underlined { "_" } else { "" }, self.sys.format(t.elt)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
