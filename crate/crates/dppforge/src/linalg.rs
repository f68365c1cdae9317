//! Finite-dimensional spaces with named ordered bases, dense matrices, 2- and
//! 3-tensors, bilinear forms, and the dualization utilities (`twist`, `sharp`,
//! `dual_map`, `j_omega`, `two_tensor_form`, `dual_basis`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::ForgeError;

pub type Vector = Vec<Rational>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Rational, a: &[Rational]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// `acc += c * a`.
pub fn vec_axpy(acc: &mut [Rational], c: &Rational, a: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in acc.iter_mut().zip(a) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

/// A named space with an ordered list of distinct basis labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSpace {
    pub name: String,
    pub labels: Vec<String>,
}

impl BasisSpace {
    pub fn new(name: impl Into<String>, labels: Vec<String>) -> Result<Self, ForgeError> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(ForgeError::Input(format!("duplicate basis label {l:?}")));
            }
        }
        Ok(BasisSpace { name: name.into(), labels })
    }

    /// Builds a space from labels known to be distinct.
    pub fn from_strs(name: &str, labels: &[&str]) -> Self {
        Self::new(name, labels.iter().map(|s| s.to_string()).collect()).expect("distinct labels")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Dual space: labels get the suffix `*`.
    pub fn dual(&self) -> BasisSpace {
        BasisSpace {
            name: format!("{}*", self.name),
            labels: self.labels.iter().map(|l| format!("{l}*")).collect(),
        }
    }

    /// `self ⊕ other` with basis (self, other).
    pub fn direct_sum(&self, other: &BasisSpace, name: &str) -> Result<BasisSpace, ForgeError> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        BasisSpace::new(name, labels)
    }

    /// `self ⊗ other` with lexicographic basis labels "a⊗b" (self-major).
    pub fn tensor(&self, other: &BasisSpace, name: &str) -> BasisSpace {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        BasisSpace { name: name.to_string(), labels }
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect())
    }

    /// Matrix whose j-th column is `cols[j]`.
    pub fn from_columns(nrows: usize, cols: &[Vector]) -> Self {
        let mut m = Matrix::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Rational) {
        if !v.is_zero() {
            self.data[i * self.cols + j] += v;
        }
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let mut out = zero_vec(self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: vec_add(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: vec_sub(&self.data, &other.data) }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: vec_scale(c, &self.data) }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&Rational::from_int(-1))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let mut a = self.clone();
        let mut sign = Rational::one();
        let mut prev = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a.get(r, k).is_zero()) else {
                return Rational::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(k, k) * a.get(i, j) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, Rational::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    /// Inverse by fraction-free Gauss-Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<Matrix, ForgeError> {
        if !self.is_square() {
            return Err(ForgeError::Singular("non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, self.get(i, j).clone());
            }
            a.set(i, n + i, Rational::one());
        }
        let mut prev = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a.get(r, k).is_zero()) else {
                return Err(ForgeError::Singular("matrix is not invertible".into()));
            };
            if p != k {
                a.swap_rows(p, k);
            }
            let pivot = a.get(k, k).clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let aik = a.get(i, k).clone();
                for j in 0..2 * n {
                    if j == k {
                        continue;
                    }
                    let v = (&pivot * a.get(i, j) - &aik * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, Rational::zero());
            }
            // Rows above k were scaled by pivot/prev implicitly; the row k itself is
            // left as is, so every diagonal entry ends up equal to the final pivot.
            prev = pivot;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            let d = a.get(i, i).clone();
            for j in 0..n {
                inv.set(i, j, a.get(i, n + j) / &d);
            }
        }
        Ok(inv)
    }

    /// Kronecker product: `(A ⊗ B)[(i,k),(j,l)] = A[i,j] B[k,l]`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..a.cols {
            let Some(p) = (rank..a.rows).find(|&r| !a.get(r, c).is_zero()) else { continue };
            a.swap_rows(p, rank);
            let piv = a.get(rank, c).clone();
            for i in rank + 1..a.rows {
                let f = a.get(i, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..a.cols {
                    let v = a.get(i, j) - &f * a.get(rank, j);
                    a.set(i, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn null_space(&self) -> Vec<Vector> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
            a.swap_rows(p, r);
            let piv = a.get(r, c).clone();
            for j in 0..a.cols {
                let v = a.get(r, j) / &piv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..a.cols {
                    let v = a.get(i, j) - &f * a.get(r, j);
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
            if r == a.rows {
                break;
            }
        }
        let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = zero_vec(a.cols);
                x[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    x[pc] = -a.get(row, f);
                }
                x
            })
            .collect()
    }
}

/// A linear map with an explicit domain and codomain; matrix is codomain × domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub domain: BasisSpace,
    pub codomain: BasisSpace,
    pub matrix: Matrix,
}

impl LinMap {
    pub fn new(domain: BasisSpace, codomain: BasisSpace, matrix: Matrix) -> Result<Self, ForgeError> {
        if matrix.rows != codomain.dim() || matrix.cols != domain.dim() {
            return Err(ForgeError::Shape(format!(
                "matrix {}x{} does not match {} -> {}",
                matrix.rows,
                matrix.cols,
                domain.dim(),
                codomain.dim()
            )));
        }
        Ok(LinMap { domain, codomain, matrix })
    }

    pub fn identity(space: &BasisSpace) -> Self {
        LinMap { domain: space.clone(), codomain: space.clone(), matrix: Matrix::identity(space.dim()) }
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        self.matrix.apply(v)
    }

    /// Image of the j-th domain basis vector.
    pub fn image(&self, j: usize) -> Vector {
        self.matrix.column(j)
    }
}

/// Element of `left ⊗ right`; `data[i][j]` is the coefficient of `left_i ⊗ right_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor2 {
    pub left: BasisSpace,
    pub right: BasisSpace,
    pub data: Matrix,
}

impl Tensor2 {
    pub fn zeros(left: &BasisSpace, right: &BasisSpace) -> Self {
        Tensor2 { left: left.clone(), right: right.clone(), data: Matrix::zeros(left.dim(), right.dim()) }
    }

    pub fn from_matrix(left: &BasisSpace, right: &BasisSpace, data: Matrix) -> Result<Self, ForgeError> {
        if data.rows != left.dim() || data.cols != right.dim() {
            return Err(ForgeError::Shape("tensor coefficient shape mismatch".into()));
        }
        Ok(Tensor2 { left: left.clone(), right: right.clone(), data })
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.data.get(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_zero()
    }

    /// Nonzero terms as `(left label, right label, coefficient)` in basis order.
    pub fn terms(&self) -> Vec<(String, String, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.data.rows {
            for j in 0..self.data.cols {
                let c = self.data.get(i, j);
                if !c.is_zero() {
                    out.push((self.left.labels[i].clone(), self.right.labels[j].clone(), c.clone()));
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.left == self.right && self.data == self.data.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.left == self.right && self.data.add(&self.data.transpose()).is_zero()
    }
}

impl fmt::Display for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(self.terms().into_iter().map(|(a, b, c)| (format!("{a}⊗{b}"), c))))
    }
}

/// Renders `Σ c·label` with the usual sign conventions; "0" for an empty sum.
pub fn format_terms(terms: impl IntoIterator<Item = (String, Rational)>) -> String {
    let mut s = String::new();
    for (label, c) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            s.push_str(&a.to_string());
            s.push('·');
        }
        s.push_str(&label);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn format_vector(space: &BasisSpace, v: &[Rational]) -> String {
    format_terms(space.labels.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(l, c)| (l.clone(), c.clone())))
}

/// Element of `s0 ⊗ s1 ⊗ s2`, dense, index `(i, j, k)` row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    pub dims: [usize; 3],
    pub data: Vec<Rational>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Tensor3 { dims: [d0, d1, d2], data: vec![Rational::zero(); d0 * d1 * d2] }
    }

    pub fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[self.idx(i, j, k)]
    }

    pub fn add_at(&mut self, i: usize, j: usize, k: usize, v: &Rational) {
        if !v.is_zero() {
            let p = self.idx(i, j, k);
            self.data[p] += v;
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn sub(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.dims, other.dims);
        Tensor3 { dims: self.dims, data: vec_sub(&self.data, &other.data) }
    }

    pub fn add(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.dims, other.dims);
        Tensor3 { dims: self.dims, data: vec_add(&self.data, &other.data) }
    }

    /// Nonzero entries `((i, j, k), coefficient)` in index order.
    pub fn nonzero(&self) -> Vec<([usize; 3], Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dims[0] {
            for j in 0..self.dims[1] {
                for k in 0..self.dims[2] {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        out.push(([i, j, k], c.clone()));
                    }
                }
            }
        }
        out
    }
}

/// A bilinear form `ω(e_i, e_j) = matrix[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    pub space: BasisSpace,
    pub matrix: Matrix,
}

impl BilinearForm {
    pub fn new(space: &BasisSpace, matrix: Matrix) -> Result<Self, ForgeError> {
        if matrix.rows != space.dim() || matrix.cols != space.dim() {
            return Err(ForgeError::Shape("form matrix must be dim × dim".into()));
        }
        Ok(BilinearForm { space: space.clone(), matrix })
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let my = self.matrix.apply(y);
        x.iter().zip(&my).map(|(a, b)| a * b).sum()
    }

    pub fn is_skew(&self) -> bool {
        self.matrix.add(&self.matrix.transpose()).is_zero()
    }
}

/// τ(t): swaps the two tensor factors.
pub fn twist(t: &Tensor2) -> Tensor2 {
    Tensor2 { left: t.right.clone(), right: t.left.clone(), data: t.data.transpose() }
}

/// `r♯ : A* → A` with `⟨r♯(ξ1), ξ2⟩ = ⟨ξ1 ⊗ ξ2, r⟩`.
pub fn sharp(r: &Tensor2) -> Result<LinMap, ForgeError> {
    if r.left != r.right {
        return Err(ForgeError::Shape("sharp needs both tensor factors equal".into()));
    }
    LinMap::new(r.left.dual(), r.left.clone(), r.data.transpose())
}

/// `f* : W* → V*` with `⟨f*(ξ), v⟩ = ⟨ξ, f(v)⟩`.
pub fn dual_map(f: &LinMap) -> LinMap {
    LinMap {
        domain: undual(&f.codomain).map_or_else(|| f.codomain.dual(), |s| s),
        codomain: undual(&f.domain).map_or_else(|| f.domain.dual(), |s| s),
        matrix: f.matrix.transpose(),
    }
}

/// If every label ends in `*`, the space it is the dual of.
fn undual(s: &BasisSpace) -> Option<BasisSpace> {
    let name = s.name.strip_suffix('*')?;
    let labels: Option<Vec<String>> = s.labels.iter().map(|l| l.strip_suffix('*').map(str::to_string)).collect();
    Some(BasisSpace { name: name.to_string(), labels: labels? })
}

/// `J_ω : A* → A` determined by `⟨J_ω⁻¹(a1), a2⟩ = ω(a1, a2)`.
pub fn j_omega(omega: &BilinearForm) -> Result<LinMap, ForgeError> {
    let jinv = omega.matrix.transpose();
    let j = jinv.inverse().map_err(|_| ForgeError::Singular("ω is degenerate".into()))?;
    LinMap::new(omega.space.dual(), omega.space.clone(), j)
}

/// The 2-tensor `r_J` with `⟨r_J, ξ1 ⊗ ξ2⟩ = ⟨J(ξ1), ξ2⟩`, so that `sharp(r_J) = J`.
pub fn two_tensor_form(j: &LinMap) -> Result<Tensor2, ForgeError> {
    if j.domain != j.codomain.dual() {
        return Err(ForgeError::Shape("two_tensor_form needs a map A* → A".into()));
    }
    Tensor2::from_matrix(&j.codomain, &j.codomain, j.matrix.transpose())
}

/// `{f_i}` with `ω(f_i, e_j) = δ_ij`, as coordinate vectors.
pub fn dual_basis(omega: &BilinearForm) -> Result<Vec<Vector>, ForgeError> {
    let inv = omega.matrix.inverse().map_err(|_| ForgeError::Singular("ω is degenerate".into()))?;
    Ok((0..inv.rows).map(|i| inv.row(i).to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn space(labels: &[&str]) -> BasisSpace {
        BasisSpace::from_strs("A", labels)
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_int_rows(&[&[0, 2, 1], &[1, 0, 3], &[4, 1, 0]]);
        assert_eq!(m.det(), q(25));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        let s = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det(), q(0));
        assert!(s.inverse().is_err());
        assert_eq!(Matrix::zeros(0, 0).det(), q(1));
    }

    #[test]
    fn sharp_of_skew_p3_tensor() {
        let a = space(&["e1", "e2", "e3"]);
        let r = Tensor2::from_matrix(&a, &a, Matrix::from_int_rows(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]])).unwrap();
        let s = sharp(&r).unwrap();
        assert_eq!(s.image(1), vec![q(0), q(0), q(1)]);
        assert_eq!(s.image(2), vec![q(0), q(-1), q(0)]);
        assert_eq!(s.image(0), vec![q(0); 3]);
        assert_eq!(twist(&r).data, r.data.neg());
    }

    #[test]
    fn b2_dual_basis_and_j() {
        let b = space(&["x1", "x2"]);
        let w = BilinearForm::new(&b, Matrix::from_int_rows(&[&[0, 1], &[-1, 0]])).unwrap();
        let f = dual_basis(&w).unwrap();
        assert_eq!(f, vec![vec![q(0), q(-1)], vec![q(1), q(0)]]);
        for (i, fi) in f.iter().enumerate() {
            for j in 0..2 {
                assert_eq!(w.eval(fi, &unit_vec(2, j)), q((i == j) as i64));
            }
        }
        let j = j_omega(&w).unwrap();
        let rj = two_tensor_form(&j).unwrap();
        assert_eq!(sharp(&rj).unwrap(), j);
        // ⟨J⁻¹(a1), a2⟩ = ω(a1, a2)
        let jinv = j.matrix.inverse().unwrap();
        for a1 in 0..2 {
            for a2 in 0..2 {
                assert_eq!(jinv.get(a2, a1), w.matrix.get(a1, a2));
            }
        }
    }

    #[test]
    fn dual_map_involution() {
        let a = space(&["e1", "e2"]);
        let f = LinMap::new(a.clone(), a.clone(), Matrix::from_int_rows(&[&[1, 2], &[3, 4]])).unwrap();
        let d = dual_map(&f);
        assert_eq!(d.domain, a.dual());
        assert_eq!(dual_map(&d), f);
    }

    #[test]
    fn null_space_basis() {
        let m = Matrix::from_int_rows(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&m.apply(&ns[0])));
        assert_eq!(m.rank(), 2);
    }
}
