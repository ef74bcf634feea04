//! Dense exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            m.data[i * cols..(i + 1) * cols].clone_from_slice(&row);
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{x : M x = 0}`: one vector per free column `f`, with
    /// `x_f = 1` and zeros on the other free columns.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &(_, c) in &ech.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for &(r, c) in &ech.pivots {
                    let row = &ech.rows[r];
                    x[c] = -Rational::new(row[f].clone(), row[c].clone());
                }
                x
            })
            .collect()
    }

    /// Fraction-free reduced echelon form: each row is scaled to integers and
    /// kept primitive; pivots are eliminated from every other row.
    fn echelon(&self) -> IntEchelon {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows).map(|r| integer_row(self.row(r))).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next].clone();
            let pv = pivot_row[c].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next || row[c].is_zero() {
                    continue;
                }
                let e = row[c].clone();
                let g = pv.gcd(&e);
                let (mp, me) = (&pv / &g, &e / &g);
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x * &mp - y * &me;
                }
                make_primitive(row);
            }
            pivots.push((next, c));
            next += 1;
        }
        IntEchelon { rows, pivots }
    }
}

struct IntEchelon {
    rows: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot.
    pivots: Vec<(usize, usize)>,
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn kernel(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    m.kernel()
}

/// Incrementally maintained reduced row echelon basis of a row space.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    dim: usize,
    /// Rows normalized so the pivot entry is 1; sorted by pivot column.
    rows: Vec<(usize, Vec<Rational>)>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` modulo the current span.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (c, row) in &self.rows {
            if v[*c].is_zero() {
                continue;
            }
            let k = v[*c].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &k * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(c) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[c].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let k = row[c].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &k * y;
                }
            }
        }
        let at = self.rows.partition_point(|(pc, _)| *pc < c);
        self.rows.insert(at, (c, v));
        true
    }

    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    /// Basis of the orthogonal complement `{x : r·x = 0 for every row r}`.
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        RationalMatrix::from_rows(self.dim, self.basis()).kernel()
    }
}

/// Scales a non-zero vector so its entries are coprime integers with a
/// positive first non-zero entry.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let mut ints = integer_row(v);
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
    }
    ints.into_iter().map(Rational::from_integer).collect()
}
