use std::fmt;

use super::{AlgebraicNumber, LaurentPoly};

/// Small square matrix over [`LaurentPoly`], stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = LaurentPoly::one();
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        Self { n, entries: vec![LaurentPoly::zero(); n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn scalar(n: usize, c: LaurentPoly) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn trace(&self) -> LaurentPoly {
        (0..self.n).fold(LaurentPoly::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentPoly::zero();
                for k in 0..n {
                    acc = &acc + &(self.get(i, k) * o.get(k, j));
                }
                out.entries[i * n + j] = acc;
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Self {
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    /// The diagonal value if the matrix is scalar.
    pub fn as_scalar(&self) -> Option<LaurentPoly> {
        let d = self.get(0, 0).clone();
        (*self == Self::scalar(self.n, d.clone())).then_some(d)
    }

    /// Entry-wise application of a coefficient map.
    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn scale_const(&self, c: AlgebraicNumber) -> Self {
        self.map(|a| a.scale(c))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            f.write_str(&row.join(", "))?;
        }
        f.write_str("]")
    }
}
