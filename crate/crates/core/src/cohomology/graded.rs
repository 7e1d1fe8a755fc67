use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeMap, Serializer};

use super::types::TypeData;
use crate::rings::BiPoly;

/// A graded virtual character: unipotent symbol ↦ polynomial in `t^{1/2}`, `h`, `eps`.
/// Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedChar {
    coeffs: BTreeMap<String, BiPoly>,
}

impl GradedChar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(symbol: &str, p: BiPoly) -> Self {
        let mut g = Self::zero();
        g.add_to(symbol, &p);
        g
    }

    pub fn add_to(&mut self, symbol: &str, p: &BiPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.coeffs.entry(symbol.to_string()).or_default();
        *e = &*e + p;
        if e.is_zero() {
            self.coeffs.remove(symbol);
        }
    }

    pub fn get(&self, symbol: &str) -> BiPoly {
        self.coeffs.get(symbol).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BiPoly)> {
        self.coeffs.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in o.iter() {
            out.add_to(k, v);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&BiPoly::int(-1)))
    }

    pub fn scale(&self, c: &BiPoly) -> Self {
        let mut out = Self::zero();
        for (k, v) in self.iter() {
            out.add_to(k, &(v * c));
        }
        out
    }

    pub fn map(&self, f: impl Fn(&BiPoly) -> BiPoly) -> Self {
        let mut out = Self::zero();
        for (k, v) in self.iter() {
            out.add_to(k, &f(v));
        }
        out
    }

    /// Exact division of every component.
    pub fn div_exact(&self, c: &BiPoly) -> Option<Self> {
        let mut out = Self::zero();
        for (k, v) in self.iter() {
            out.add_to(k, &v.div_exact(c)?);
        }
        Some(out)
    }

    pub fn all_coefficients_even(&self) -> bool {
        self.coeffs.values().all(BiPoly::all_coefficients_even)
    }

    pub fn has_eps(&self) -> bool {
        self.coeffs.values().any(BiPoly::has_eps)
    }

    /// Applies the Ennola permutation of the type `k` times.
    pub fn ennola(&self, data: &TypeData, k: usize) -> Self {
        let Some(perm) = &data.ennola else {
            return self.clone();
        };
        let mut out = Self::zero();
        for (sym, v) in self.iter() {
            let mut target = sym;
            for _ in 0..k {
                target = match data.symbol_index(target) {
                    Some(i) => data.symbols[perm[i]],
                    None => target,
                };
            }
            out.add_to(target, v);
        }
        out
    }
}

impl fmt::Display for GradedChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        f.write_str(&parts.join("; "))
    }
}

impl Serialize for GradedChar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for (k, v) in self.iter() {
            map.serialize_entry(k, &v.to_string())?;
        }
        map.end()
    }
}
