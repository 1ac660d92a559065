//! Exact integer vectors and matrix kernels.
//!
//! Everything here is arbitrary precision. Rational input is cleared to integer
//! rows before elimination, and all eliminations are fraction free, so vectors
//! coming out of this module are always integral and (where it matters)
//! primitive.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Index, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::LinalgError;

/// A vector of arbitrary-precision integers.
///
/// Exponent tuples, ray directions and constraint normals all live here.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        Self(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = BigInt::one();
        v
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        Self(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(BigInt::is_zero)
    }

    /// Entries as `i64`, if every entry fits.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| x.to_i64()).collect()
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = BigInt::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    /// Sign of the inner product with `other`.
    pub fn dot_sign(&self, other: &IntVector) -> Ordering {
        self.dot(other).cmp(&BigInt::zero())
    }

    /// `a * self + b * other`.
    pub fn combine(a: &BigInt, x: &IntVector, b: &BigInt, y: &IntVector) -> IntVector {
        debug_assert_eq!(x.dim(), y.dim());
        IntVector(
            x.0.iter()
                .zip(&y.0)
                .map(|(xi, yi)| {
                    let mut s = BigInt::zero();
                    if !xi.is_zero() {
                        s += a * xi;
                    }
                    if !yi.is_zero() {
                        s += b * yi;
                    }
                    s
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Gcd of the absolute values of the entries (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.0 {
            if x.is_zero() {
                continue;
            }
            g = if g.is_zero() { x.abs() } else { g.gcd(x) };
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content; the direction is preserved.
    pub fn primitive(&self) -> Result<IntVector, LinalgError> {
        let mut v = self.clone();
        if v.make_primitive() {
            Ok(v)
        } else {
            Err(LinalgError::ZeroVector)
        }
    }

    /// In-place form of [`IntVector::primitive`]; returns false on the zero vector.
    pub(crate) fn make_primitive(&mut self) -> bool {
        let g = self.content();
        if g.is_zero() {
            return false;
        }
        if !g.is_one() {
            for x in &mut self.0 {
                *x = &*x / &g;
            }
        }
        true
    }

    /// Index of the first nonzero entry.
    pub fn leading_index(&self) -> Option<usize> {
        self.0.iter().position(|x| !x.is_zero())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.into_iter().map(|x| -x).collect())
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        Self::from_i64s(&v)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

// Entries serialize as JSON integers when they fit in an i64 and as decimal
// strings otherwise.
impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            match x.to_i64() {
                Some(i) => seq.serialize_element(&i)?,
                None => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Small(i64),
            Big(String),
        }
        let raw = Vec::<Entry>::deserialize(d)?;
        raw.into_iter()
            .map(|e| match e {
                Entry::Small(i) => Ok(BigInt::from(i)),
                Entry::Big(t) => t.parse::<BigInt>().map_err(serde::de::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(IntVector)
    }
}

/// Free-function form of [`IntVector::primitive`].
pub fn primitive(v: &IntVector) -> Result<IntVector, LinalgError> {
    v.primitive()
}

/// A dense matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: Vec<Vec<BigRational>>,
    ncols: usize,
}

impl RatMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>, ncols: usize) -> Result<Self, LinalgError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(LinalgError::RaggedRows {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(Self { rows, ncols })
    }

    pub fn empty(ncols: usize) -> Self {
        Self {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn from_int_rows(rows: &[IntVector], ncols: usize) -> Result<Self, LinalgError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        Self::new(rows, ncols)
    }

    pub fn from_i64_rows(rows: &[&[i64]], ncols: usize) -> Result<Self, LinalgError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect();
        Self::new(rows, ncols)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// Scales every row by the lcm of its denominators.
    pub fn to_integer_rows(&self) -> Vec<IntVector> {
        self.rows
            .iter()
            .map(|row| {
                let l = row
                    .iter()
                    .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
                IntVector::new(row.iter().map(|x| x.numer() * (&l / x.denom())).collect())
            })
            .collect()
    }
}

/// Row rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    row_echelon(m.to_integer_rows(), m.ncols()).pivots.len()
}

/// Primitive integer basis of the right null space of `m`.
pub fn kernel_basis(m: &RatMatrix) -> Vec<IntVector> {
    int_kernel_basis(&m.to_integer_rows(), m.ncols())
}

/// Reduced row-echelon form of an integer matrix, up to row scaling.
///
/// Each pivot column has a single nonzero entry, each row is primitive and
/// its pivot is positive. This is the unique canonical integer form of the
/// row space.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    pub rows: Vec<IntVector>,
    pub pivots: Vec<usize>,
}

pub(crate) fn row_echelon(mut rows: Vec<IntVector>, ncols: usize) -> Echelon {
    rows.retain(|r| !r.is_zero());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        // Smallest nonzero pivot keeps the fraction-free updates small.
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()))
        else {
            continue;
        };
        rows.swap(r, p);
        rows[r].make_primitive();
        if rows[r][c] < BigInt::zero() {
            rows[r] = -&rows[r];
        }
        let pivot_row = rows[r].clone();
        let pv = pivot_row[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = -&row[c];
            let mut next = IntVector::combine(&pv, row, &f, &pivot_row);
            next.make_primitive();
            *row = next;
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    rows.retain(|row| !row.is_zero());
    Echelon { rows, pivots }
}

#[cfg(test)]
pub(crate) fn int_rank(rows: &[IntVector], ncols: usize) -> usize {
    row_echelon(rows.to_vec(), ncols).pivots.len()
}

/// Primitive integer kernel basis of the integer matrix with the given rows.
///
/// Vectors are returned one per free column, in increasing column order.
pub(crate) fn int_kernel_basis(rows: &[IntVector], ncols: usize) -> Vec<IntVector> {
    let ech = row_echelon(rows.to_vec(), ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        // x_free = L, x_pivot(i) = -row_i[free] * L / pivot_i
        let mut l = BigInt::one();
        for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
            if !row[free].is_zero() {
                l = l.lcm(&row[pc]);
            }
        }
        let mut x = vec![BigInt::zero(); ncols];
        x[free] = l.clone();
        for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
            if !row[free].is_zero() {
                x[pc] = -(&row[free] * &l) / &row[pc];
            }
        }
        let mut v = IntVector::new(x);
        v.make_primitive();
        basis.push(v);
    }
    basis
}

/// Pairwise-orthogonal integer basis spanning the same space as `vectors`.
pub(crate) fn orthogonal_basis(vectors: &[IntVector]) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let w = project_out(v, &out);
        if !w.is_zero() {
            out.push(w);
        }
    }
    out
}

/// Positive multiple of the orthogonal projection of `v` onto the orthogonal
/// complement of the span of `ortho` (which must be pairwise orthogonal).
pub(crate) fn project_out(v: &IntVector, ortho: &[IntVector]) -> IntVector {
    let mut w = v.clone();
    for u in ortho {
        let t = w.dot(u);
        if t.is_zero() {
            continue;
        }
        let uu = u.dot(u);
        w = IntVector::combine(&uu, &w, &-t, u);
        w.make_primitive();
    }
    w
}
