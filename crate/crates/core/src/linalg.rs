//! Exact nullspace computation over the rationals.
//!
//! Rows are cleared of denominators and reduced with fraction-free integer
//! elimination. The pivot in each column is the row with the smallest
//! nonzero absolute value, and every updated row is divided by the gcd of
//! its entries.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sparse matrix with exact rational entries; zero entries are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    cols: usize,
    rows: Vec<BTreeMap<usize, BigRational>>,
}

impl RationalMatrix {
    pub fn new(cols: usize) -> Self {
        RationalMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense(rows: &[Vec<BigRational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            m.push_row(r.iter().cloned().enumerate());
        }
        m
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        Self::from_dense(&dense)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n);
        for i in 0..n {
            m.push_row([(i, BigRational::one())]);
        }
        m
    }

    /// Appends a row given as `(column, value)` pairs; repeated columns add up.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, BigRational)>) {
        let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range");
            *row.entry(c).or_insert_with(BigRational::zero) += v;
        }
        row.retain(|_, v| !v.is_zero());
        self.rows.push(row);
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    /// Number of rows with at least one nonzero entry.
    pub fn nonzero_rows(&self) -> usize {
        self.rows.iter().filter(|r| !r.is_empty()).count()
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.rows[r]
            .get(&c)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn row_entries(&self, r: usize) -> impl Iterator<Item = (usize, &BigRational)> {
        self.rows[r].iter().map(|(&c, v)| (c, v))
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.cols);
        self.rows
            .iter()
            .map(|row| row.iter().map(|(&c, v)| v * &x[c]).sum())
            .collect()
    }

    pub fn rank(&self) -> usize {
        Echelon::reduce(self).pivots.len()
    }

    /// A basis of `{x : Mx = 0}`, one vector per non-pivot column in
    /// increasing column order; see [`kernel_basis`].
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        kernel_basis(self)
    }
}

type IntRow = Vec<(usize, BigInt)>;

fn clear_denominators(row: &BTreeMap<usize, BigRational>) -> IntRow {
    let lcm = row
        .values()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut out: IntRow = row
        .iter()
        .map(|(&c, v)| (c, v.numer() * (&lcm / v.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a·x - b·y` on sparse rows.
fn combine(a: &BigInt, x: &IntRow, b: &BigInt, y: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let v = match (x.get(i), y.get(j)) {
            (Some((cx, vx)), Some((cy, vy))) if cx == cy => {
                i += 1;
                j += 1;
                (*cx, a * vx - b * vy)
            }
            (Some((cx, vx)), Some((cy, _))) if cx < cy => {
                i += 1;
                (*cx, a * vx)
            }
            (Some((cx, vx)), None) => {
                i += 1;
                (*cx, a * vx)
            }
            (_, Some((cy, vy))) => {
                j += 1;
                (*cy, -(b * vy))
            }
            (None, None) => unreachable!(),
        };
        if !v.1.is_zero() {
            out.push(v);
        }
    }
    out
}

/// Row echelon form over the integers.
struct Echelon {
    cols: usize,
    /// `(pivot column, row)`; each row is zero left of its pivot column.
    pivots: Vec<(usize, IntRow)>,
}

impl Echelon {
    fn reduce(m: &RationalMatrix) -> Self {
        let mut active: Vec<IntRow> = m
            .rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(clear_denominators)
            .collect();
        let mut pivots = Vec::new();
        for c in 0..m.cols {
            if active.is_empty() {
                break;
            }
            let best = active
                .iter()
                .enumerate()
                .filter(|(_, r)| r.first().is_some_and(|(k, _)| *k == c))
                .min_by(|(_, a), (_, b)| a[0].1.abs().cmp(&b[0].1.abs()))
                .map(|(i, _)| i);
            let Some(best) = best else {
                continue;
            };
            let pivot = active.swap_remove(best);
            let p = pivot[0].1.clone();
            for row in active.iter_mut() {
                if row.first().is_some_and(|(k, _)| *k == c) {
                    let v = row[0].1.clone();
                    let g = p.gcd(&v);
                    let mut next = combine(&(&p / &g), row, &(&v / &g), &pivot);
                    make_primitive(&mut next);
                    *row = next;
                }
            }
            active.retain(|r| !r.is_empty());
            pivots.push((c, pivot));
        }
        Echelon {
            cols: m.cols,
            pivots,
        }
    }
}

/// Nullspace basis of `m`.
///
/// For each free column `f`, the vector with `x_f = 1`, all other free
/// coordinates `0`, and pivot coordinates solved by back substitution. Each
/// vector is then scaled to integer entries with content 1 and a positive
/// first nonzero entry. The dimension is `cols - rank`.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<BigRational>> {
    let ech = Echelon::reduce(m);
    let pivot_cols: Vec<usize> = ech.pivots.iter().map(|(c, _)| *c).collect();
    let free: Vec<usize> = (0..ech.cols)
        .filter(|c| pivot_cols.binary_search(c).is_err())
        .collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); ech.cols];
            x[f] = BigRational::one();
            for (c, row) in ech.pivots.iter().rev() {
                let s: BigRational = row[1..]
                    .iter()
                    .map(|(k, v)| BigRational::from_integer(v.clone()) * &x[*k])
                    .sum();
                x[*c] = -s / BigRational::from_integer(row[0].1.clone());
            }
            normalize_integral(&x)
        })
        .collect()
}

/// Scales to coprime integers with a positive first nonzero entry.
pub fn normalize_integral(x: &[BigRational]) -> Vec<BigRational> {
    let lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return x.to_vec();
    }
    let sign = match ints.iter().find(|v| !v.is_zero()) {
        Some(v) if v.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|v| BigRational::from_integer(v / &g * &sign))
        .collect()
}

/// Reduced row echelon form of the span of `vectors`, normalized so that
/// equal spans give equal results.
pub fn span_rref(vectors: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let mut rows: Vec<Vec<BigRational>> = vectors.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (v, pv) in rows[i].iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}
