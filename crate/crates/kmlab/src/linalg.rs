//! Dimension-3 vectors, matrices, lower-index-pair tensors and the small
//! solvers the geometry needs: exact Gaussian elimination and a float
//! symmetric eigendecomposition.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{tolerance, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("singular system")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not symmetric within tolerance (max asymmetry {0})")]
    NotSymmetric(f64),
}

fn from_fn3<T>(mut f: impl FnMut(usize) -> T) -> [T; 3] {
    std::array::from_fn(|i| f(i))
}

/// Column vector with three [`Scalar`] components.
#[derive(Clone, PartialEq)]
pub struct Vec3(pub [Scalar; 3]);

impl Vec3 {
    pub fn zero() -> Self {
        Vec3(from_fn3(|_| Scalar::zero()))
    }

    pub fn basis(i: usize) -> Self {
        Vec3(from_fn3(|k| if k == i { Scalar::one() } else { Scalar::zero() }))
    }

    pub fn from_fn(f: impl FnMut(usize) -> Scalar) -> Self {
        let mut f = f;
        Vec3(from_fn3(|i| f(i)))
    }

    pub fn from_ints(v: [i64; 3]) -> Self {
        Vec3(v.map(Scalar::int))
    }

    pub fn scale(&self, s: &Scalar) -> Vec3 {
        Vec3::from_fn(|i| &self.0[i] * s)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn max_abs(&self) -> Scalar {
        max_abs(self.0.iter())
    }

    pub fn to_float_mode(&self) -> Vec3 {
        Vec3::from_fn(|i| self.0[i].to_float_mode())
    }
}

impl Index<usize> for Vec3 {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl Add<&Vec3> for &Vec3 {
    type Output = Vec3;
    fn add(self, rhs: &Vec3) -> Vec3 {
        Vec3::from_fn(|i| &self.0[i] + &rhs.0[i])
    }
}

impl Sub<&Vec3> for &Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: &Vec3) -> Vec3 {
        Vec3::from_fn(|i| &self.0[i] - &rhs.0[i])
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::from_fn(|i| -&self.0[i])
    }
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?})", self.0[0], self.0[1], self.0[2])
    }
}

/// 3x3 matrix, row-major: `m.at(i, j)` is row `i`, column `j`.
#[derive(Clone, PartialEq)]
pub struct Mat3(pub [[Scalar; 3]; 3]);

impl Mat3 {
    pub fn zero() -> Self {
        Mat3::from_fn(|_, _| Scalar::zero())
    }

    pub fn identity() -> Self {
        Mat3::from_fn(|i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        Mat3(from_fn3(|i| from_fn3(|j| f(i, j))))
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Mat3(rows.map(|r| r.map(Scalar::int)))
    }

    pub fn diag(d: [Scalar; 3]) -> Self {
        let mut m = Mat3::zero();
        for (i, s) in d.into_iter().enumerate() {
            m.0[i][i] = s;
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.0[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.0[i][j] = v;
    }

    pub fn row(&self, i: usize) -> Vec3 {
        Vec3::from_fn(|j| self.0[i][j].clone())
    }

    pub fn col(&self, j: usize) -> Vec3 {
        Vec3::from_fn(|i| self.0[i][j].clone())
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn scale(&self, s: &Scalar) -> Mat3 {
        Mat3::from_fn(|i, j| &self.0[i][j] * s)
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        Vec3::from_fn(|i| {
            (0..3).fold(Scalar::zero(), |acc, j| acc + &self.0[i][j] * &v.0[j])
        })
    }

    pub fn trace(&self) -> Scalar {
        &(&self.0[0][0] + &self.0[1][1]) + &self.0[2][2]
    }

    pub fn det(&self) -> Scalar {
        let m = &self.0;
        let t0 = &m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]));
        let t1 = &m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]));
        let t2 = &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
        &(&t0 - &t1) + &t2
    }

    /// Exact inverse via the adjugate; `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Mat3> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let m = &self.0;
        let cof = |i: usize, j: usize| {
            let (r0, r1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0]);
            if (i + j) % 2 == 0 {
                minor
            } else {
                -&minor
            }
        };
        // adjugate = transpose of cofactor matrix
        Some(Mat3::from_fn(|i, j| &cof(j, i) / &det))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (i + 1..3).all(|j| self.0[i][j] == self.0[j][i]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..3).all(|i| (i..3).all(|j| (&self.0[i][j] + &self.0[j][i]).is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Scalar::is_zero)
    }

    pub fn max_abs(&self) -> Scalar {
        max_abs(self.0.iter().flatten())
    }

    /// Rank via Gaussian elimination (exact pivots; tolerance pivots in float mode).
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Scalar>> = self.0.iter().map(|r| r.to_vec()).collect();
        let mut rank = 0;
        for col in 0..3 {
            let Some(p) = (rank..3).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            for r in 0..3 {
                if r != rank && !rows[r][col].is_zero() {
                    let factor = &rows[r][col] / &rows[rank][col];
                    for c in col..3 {
                        rows[r][c] = &rows[r][c] - &(&factor * &rows[rank][c]);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Outer product `u vᵀ` (column times row).
    pub fn outer(u: &Vec3, v: &Vec3) -> Mat3 {
        Mat3::from_fn(|i, j| &u.0[i] * &v.0[j])
    }

    pub fn commutator(&self, other: &Mat3) -> Mat3 {
        &(self * other) - &(other * self)
    }

    pub fn to_float_mode(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j].to_float_mode())
    }
}

impl Add<&Mat3> for &Mat3 {
    type Output = Mat3;
    fn add(self, rhs: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| &self.0[i][j] + &rhs.0[i][j])
    }
}

impl Sub<&Mat3> for &Mat3 {
    type Output = Mat3;
    fn sub(self, rhs: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| &self.0[i][j] - &rhs.0[i][j])
    }
}

impl Neg for &Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        Mat3::from_fn(|i, j| -&self.0[i][j])
    }
}

impl Mul<&Mat3> for &Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| {
            (0..3).fold(Scalar::zero(), |acc, k| acc + &self.0[i][k] * &rhs.0[k][j])
        })
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..3 {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Tensor with one upper and two lower indices, `t.get(k, i, j)` = t^k_{ij}.
/// Used for structure constants and Christoffel tables.
#[derive(Clone, PartialEq)]
pub struct Ten3(pub [[[Scalar; 3]; 3]; 3]);

impl Ten3 {
    pub fn zero() -> Self {
        Ten3::from_fn(|_, _, _| Scalar::zero())
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        Ten3(from_fn3(|k| from_fn3(|i| from_fn3(|j| f(k, i, j)))))
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &Scalar {
        &self.0[k][i][j]
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, v: Scalar) {
        self.0[k][i][j] = v;
    }

    /// The vector t^·_{ij} for a fixed lower pair.
    pub fn lower_pair(&self, i: usize, j: usize) -> Vec3 {
        Vec3::from_fn(|k| self.0[k][i][j].clone())
    }

    /// Antisymmetry in the lower index pair: t^k_{ij} = -t^k_{ji}.
    pub fn is_antisymmetric_lower(&self) -> bool {
        (0..3).all(|k| {
            (0..3).all(|i| (i..3).all(|j| (&self.0[k][i][j] + &self.0[k][j][i]).is_zero()))
        })
    }

    pub fn max_abs(&self) -> Scalar {
        max_abs(self.0.iter().flatten().flatten())
    }

    pub fn to_float_mode(&self) -> Ten3 {
        Ten3::from_fn(|k, i, j| self.0[k][i][j].to_float_mode())
    }
}

impl fmt::Debug for Ten3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Ten3[")?;
        for i in 0..3 {
            for j in 0..3 {
                let v = self.lower_pair(i, j);
                if !v.is_zero() {
                    writeln!(f, "  ({i},{j}) -> {v:?}")?;
                }
            }
        }
        write!(f, "]")
    }
}

/// Rank-4 curvature array, `r.get(l, i, j, k)` = R^l_{ijk} meaning
/// R(e_i, e_j) e_k = sum_l R^l_{ijk} e_l.
#[derive(Clone, PartialEq)]
pub struct Rank4(pub [[[[Scalar; 3]; 3]; 3]; 3]);

impl Rank4 {
    pub fn from_fn(mut f: impl FnMut(usize, usize, usize, usize) -> Scalar) -> Self {
        Rank4(from_fn3(|l| from_fn3(|i| from_fn3(|j| from_fn3(|k| f(l, i, j, k))))))
    }

    pub fn get(&self, l: usize, i: usize, j: usize, k: usize) -> &Scalar {
        &self.0[l][i][j][k]
    }

    /// R(e_i, e_j) e_k as a vector.
    pub fn apply_frame(&self, i: usize, j: usize, k: usize) -> Vec3 {
        Vec3::from_fn(|l| self.0[l][i][j][k].clone())
    }

    pub fn max_abs(&self) -> Scalar {
        max_abs(self.0.iter().flatten().flatten().flatten())
    }
}

fn max_abs<'a>(items: impl Iterator<Item = &'a Scalar>) -> Scalar {
    let mut best = Scalar::zero();
    for s in items {
        let a = s.abs();
        if a.to_f64() > best.to_f64() {
            best = a;
        }
    }
    best
}

/// Determinant of the 3x3 matrix whose columns are the given vectors.
/// This is the frame volume form evaluated on the triple.
pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> Scalar {
    let m = Mat3::from_fn(|i, j| match j {
        0 => a.0[i].clone(),
        1 => b.0[i].clone(),
        _ => c.0[i].clone(),
    });
    m.det()
}

/// Solves `A x = b` for square systems of dimension 1..=3 by Gaussian
/// elimination. Exact scalars use exact pivoting; float scalars pick the
/// largest pivot and declare singularity below the global tolerance.
pub fn solve_linear(a: &[Vec<Scalar>], b: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
    let n = a.len();
    if n == 0 || n > 3 || b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(LinalgError::Shape(format!(
            "expected square system of dimension 1..=3, got {}x? with rhs {}",
            n,
            b.len()
        )));
    }
    let mut m: Vec<Vec<Scalar>> = a.to_vec();
    let mut rhs: Vec<Scalar> = b.to_vec();
    let float_mode = m.iter().flatten().any(|s| !s.is_exact());

    for col in 0..n {
        let pivot_row = if float_mode {
            (col..n)
                .max_by(|&r, &s| {
                    m[r][col]
                        .abs()
                        .to_f64()
                        .partial_cmp(&m[s][col].abs().to_f64())
                        .unwrap()
                })
                .filter(|&r| m[r][col].abs().to_f64() > tolerance())
        } else {
            (col..n).find(|&r| !m[r][col].is_zero())
        };
        let Some(p) = pivot_row else {
            return Err(LinalgError::Singular);
        };
        m.swap(col, p);
        rhs.swap(col, p);
        for r in 0..n {
            if r != col {
                let factor = &m[r][col] / &m[col][col];
                for c in col..n {
                    m[r][c] = &m[r][c] - &(&factor * &m[col][c]);
                }
                rhs[r] = &rhs[r] - &(&factor * &rhs[col]);
            }
        }
    }
    Ok((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

/// Result of a float symmetric eigendecomposition: `vectors` holds orthonormal
/// eigenvector columns, `values[i]` belongs to column `i`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: [f64; 3],
    pub vectors: [[f64; 3]; 3],
}

impl SymEigen {
    pub fn vector(&self, i: usize) -> [f64; 3] {
        [self.vectors[0][i], self.vectors[1][i], self.vectors[2][i]]
    }
}

/// Eigendecomposition of a symmetric matrix, float mode. Rejects input whose
/// asymmetry exceeds the global tolerance.
pub fn sym_eigen(m: &Mat3) -> Result<SymEigen, LinalgError> {
    let f = |i: usize, j: usize| m.at(i, j).to_f64();
    let mut asym: f64 = 0.0;
    for i in 0..3 {
        for j in i + 1..3 {
            asym = asym.max((f(i, j) - f(j, i)).abs());
        }
    }
    if asym > tolerance() {
        return Err(LinalgError::NotSymmetric(asym));
    }
    let nm = nalgebra::Matrix3::from_fn(|i, j| (f(i, j) + f(j, i)) / 2.0);
    let eig = nm.symmetric_eigen();
    let mut values = [0.0; 3];
    let mut vectors = [[0.0; 3]; 3];
    for i in 0..3 {
        values[i] = eig.eigenvalues[i];
        for r in 0..3 {
            vectors[r][i] = eig.eigenvectors[(r, i)];
        }
    }
    Ok(SymEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_identity() {
        let a: Vec<Vec<Scalar>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        let b = vec![Scalar::int(1), Scalar::int(2), Scalar::int(3)];
        assert_eq!(solve_linear(&a, &b).unwrap(), b);
    }

    #[test]
    fn solve_diag_2x2() {
        let a = vec![
            vec![Scalar::int(2), Scalar::int(0)],
            vec![Scalar::int(0), Scalar::int(2)],
        ];
        let b = vec![Scalar::int(1), Scalar::int(1)];
        assert_eq!(
            solve_linear(&a, &b).unwrap(),
            vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]
        );
    }

    #[test]
    fn solve_rank_deficient() {
        let a = vec![
            vec![Scalar::int(1), Scalar::int(1)],
            vec![Scalar::int(2), Scalar::int(2)],
        ];
        let b = vec![Scalar::int(1), Scalar::int(2)];
        assert_eq!(solve_linear(&a, &b), Err(LinalgError::Singular));
    }

    #[test]
    fn eigen_diagonal() {
        let m = Mat3::from_ints([[3, 0, 0], [0, 2, 0], [0, 0, 1]]).to_float_mode();
        let eig = sym_eigen(&m).unwrap();
        let mut vals = eig.values;
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 2.0).abs() < 1e-12);
        assert!((vals[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_zero() {
        let eig = sym_eigen(&Mat3::zero().to_float_mode()).unwrap();
        assert!(eig.values.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn eigen_offdiag_pair() {
        // characteristic polynomial (t^2 - 1)(t - 2): eigenvalues -1, 1, 2
        let m = Mat3::from_ints([[0, 1, 0], [1, 0, 0], [0, 0, 2]]).to_float_mode();
        let eig = sym_eigen(&m).unwrap();
        let mut vals = eig.values;
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
        assert!((vals[2] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_rejects_asymmetric() {
        let m = Mat3::from_ints([[0, 1, 0], [0, 0, 0], [0, 0, 0]]).to_float_mode();
        assert!(matches!(sym_eigen(&m), Err(LinalgError::NotSymmetric(_))));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat3::from_ints([[2, 1, 0], [0, 1, 3], [1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat3::identity());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Mat3::identity().rank(), 3);
        assert_eq!(Mat3::zero().rank(), 0);
        assert_eq!(Mat3::from_ints([[1, 2, 3], [2, 4, 6], [0, 0, 1]]).rank(), 2);
    }
}
