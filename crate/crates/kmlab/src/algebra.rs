//! Three-dimensional metric Lie algebras: structure constants plus a constant
//! frame metric, with exact Levi-Civita connection and curvature.
//!
//! Conventions, used verbatim everywhere else in the crate:
//! - brackets `[e_i, e_j] = sum_k C^k_{ij} e_k` with C antisymmetric in (i, j);
//! - Koszul formula `2 g(grad_i e_j, e_k) = g([e_i,e_j],e_k) - g([e_j,e_k],e_i)
//!   + g([e_k,e_i],e_j)` (left-invariant fields, constant metric coefficients);
//! - curvature `R(X,Y)Z = grad_X grad_Y Z - grad_Y grad_X Z - grad_{[X,Y]} Z`;
//! - `Ric(X,Y)` is the trace of `Z -> R(Z,X)Y`.

use std::fmt;

use thiserror::Error;

use crate::linalg::{det3, sym_eigen, Mat3, Rank4, Ten3, Vec3};
use crate::scalar::Scalar;

/// How the frame metric is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameKind {
    /// G = identity (Riemannian orthonormal frame).
    Orthonormal,
    /// Frame order (xi, E1, E2) with g(xi,xi) = 1, g(E1,E2) = 1 and the E_i null.
    Artin,
    /// Any symmetric invertible G.
    General,
}

impl FrameKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FrameKind::Orthonormal => "orthonormal",
            FrameKind::Artin => "artin",
            FrameKind::General => "general",
        }
    }

    /// The metric normal form implied by the frame kind, if any.
    pub fn expected_metric(&self) -> Option<Mat3> {
        match self {
            FrameKind::Orthonormal => Some(Mat3::identity()),
            FrameKind::Artin => Some(Mat3::from_ints([[1, 0, 0], [0, 0, 1], [0, 1, 0]])),
            FrameKind::General => None,
        }
    }
}

/// One violated invariant of a [`MetricLieAlgebra3`], with the offending indices.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraViolation {
    /// C^k_{ij} + C^k_{ji} != 0.
    Antisymmetry { i: usize, j: usize, k: usize, residual: Scalar },
    /// Cyclic Jacobi sum over (i, j, l) has a nonzero component n.
    Jacobi { i: usize, j: usize, l: usize, n: usize, residual: Scalar },
    MetricNotSymmetric { i: usize, j: usize },
    MetricSingular,
    /// The metric does not match the frame kind's normal form.
    FrameMetricMismatch { i: usize, j: usize },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraViolation::Antisymmetry { i, j, k, residual } => write!(
                f,
                "structure constants not antisymmetric at (i,j)=({i},{j}), k={k}: C^k_ij + C^k_ji = {residual}"
            ),
            AlgebraViolation::Jacobi { i, j, l, n, residual } => write!(
                f,
                "Jacobi identity violated on (e{i}, e{j}, e{l}), component {n}: residual {residual}"
            ),
            AlgebraViolation::MetricNotSymmetric { i, j } => {
                write!(f, "metric not symmetric at ({i},{j})")
            }
            AlgebraViolation::MetricSingular => write!(f, "metric is singular"),
            AlgebraViolation::FrameMetricMismatch { i, j } => {
                write!(f, "metric entry ({i},{j}) does not match the declared frame kind")
            }
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum AlgebraError {
    #[error("invalid metric Lie algebra: {}", format_violations(.0))]
    Invalid(Vec<AlgebraViolation>),
    #[error("basis change matrix is singular")]
    SingularBasis,
}

pub(crate) fn format_violations(vs: &[AlgebraViolation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

/// A 3-dimensional Lie algebra with a left-invariant (pseudo-)metric given in
/// a fixed frame.
#[derive(Clone, PartialEq)]
pub struct MetricLieAlgebra3 {
    brackets: Ten3,
    metric: Mat3,
    frame_kind: FrameKind,
}

impl fmt::Debug for MetricLieAlgebra3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricLieAlgebra3")
            .field("frame_kind", &self.frame_kind)
            .field("brackets", &self.brackets)
            .field("metric", &self.metric)
            .finish()
    }
}

impl MetricLieAlgebra3 {
    pub fn new(brackets: Ten3, metric: Mat3, frame_kind: FrameKind) -> Self {
        MetricLieAlgebra3 { brackets, metric, frame_kind }
    }

    pub fn abelian(metric: Mat3, frame_kind: FrameKind) -> Self {
        Self::new(Ten3::zero(), metric, frame_kind)
    }

    pub fn brackets(&self) -> &Ten3 {
        &self.brackets
    }

    pub fn metric(&self) -> &Mat3 {
        &self.metric
    }

    pub fn frame_kind(&self) -> FrameKind {
        self.frame_kind
    }

    /// `[x, y]` for arbitrary coordinate vectors.
    pub fn bracket(&self, x: &Vec3, y: &Vec3) -> Vec3 {
        Vec3::from_fn(|k| {
            let mut acc = Scalar::zero();
            for i in 0..3 {
                if x[i].is_zero() {
                    continue;
                }
                for j in 0..3 {
                    let c = self.brackets.get(k, i, j);
                    if !c.is_zero() {
                        acc = acc + &x[i] * &y[j] * c;
                    }
                }
            }
            acc
        })
    }

    /// `[e_i, e_j]` as a vector.
    pub fn bracket_frame(&self, i: usize, j: usize) -> Vec3 {
        self.brackets.lower_pair(i, j)
    }

    /// g(x, y) in the frame metric.
    pub fn inner(&self, x: &Vec3, y: &Vec3) -> Scalar {
        let gy = self.metric.mul_vec(y);
        (0..3).fold(Scalar::zero(), |acc, i| acc + &x[i] * &gy[i])
    }

    /// Matrix of ad_x: column j holds [x, e_j].
    pub fn ad_matrix(&self, x: &Vec3) -> Mat3 {
        let cols: Vec<Vec3> = (0..3).map(|j| self.bracket(x, &Vec3::basis(j))).collect();
        Mat3::from_fn(|i, j| cols[j][i].clone())
    }

    /// trace(ad_{e_i}).
    pub fn ad_trace(&self, i: usize) -> Scalar {
        (0..3).fold(Scalar::zero(), |acc, m| acc + self.brackets.get(m, i, m))
    }

    pub fn is_unimodular(&self) -> bool {
        (0..3).all(|i| self.ad_trace(i).is_zero())
    }

    /// Checks every structural invariant and returns the list of violations
    /// (empty for a valid algebra). Diagnostic: never fails early.
    pub fn validate(&self) -> Vec<AlgebraViolation> {
        let mut out = Vec::new();
        for k in 0..3 {
            for i in 0..3 {
                for j in i..3 {
                    let r = self.brackets.get(k, i, j) + self.brackets.get(k, j, i);
                    if !r.is_zero() {
                        out.push(AlgebraViolation::Antisymmetry { i, j, k, residual: r });
                    }
                }
            }
        }
        // Jacobi on the single independent triple (0,1,2); cyclic sums over
        // repeated indices vanish by antisymmetry (reported above if broken).
        let (i, j, l) = (0, 1, 2);
        let jac = &(&self.jacobi_term(i, j, l) + &self.jacobi_term(j, l, i))
            + &self.jacobi_term(l, i, j);
        for n in 0..3 {
            if !jac[n].is_zero() {
                out.push(AlgebraViolation::Jacobi { i, j, l, n, residual: jac[n].clone() });
            }
        }
        for i in 0..3 {
            for j in i + 1..3 {
                if self.metric.at(i, j) != self.metric.at(j, i) {
                    out.push(AlgebraViolation::MetricNotSymmetric { i, j });
                }
            }
        }
        if self.metric.det().is_zero() {
            out.push(AlgebraViolation::MetricSingular);
        }
        if let Some(expected) = self.frame_kind.expected_metric() {
            for i in 0..3 {
                for j in 0..3 {
                    if self.metric.at(i, j) != expected.at(i, j) {
                        out.push(AlgebraViolation::FrameMetricMismatch { i, j });
                    }
                }
            }
        }
        out
    }

    /// [[e_i, e_j], e_l].
    fn jacobi_term(&self, i: usize, j: usize, l: usize) -> Vec3 {
        let inner = self.bracket_frame(i, j);
        self.bracket(&inner, &Vec3::basis(l))
    }

    pub fn ensure_valid(&self) -> Result<(), AlgebraError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(AlgebraError::Invalid(v))
        }
    }

    /// Rewrites the algebra in the frame whose vectors are the columns of `b`.
    pub fn change_basis(&self, b: &Mat3, new_kind: FrameKind) -> Result<Self, AlgebraError> {
        let binv = b.inverse().ok_or(AlgebraError::SingularBasis)?;
        let cols: Vec<Vec3> = (0..3).map(|j| b.col(j)).collect();
        let mut brackets = Ten3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let w = self.bracket(&cols[i], &cols[j]);
                let coords = binv.mul_vec(&w);
                for n in 0..3 {
                    brackets.set(n, i, j, coords[n].clone());
                }
            }
        }
        let metric = &(&b.transpose() * &self.metric) * b;
        Ok(MetricLieAlgebra3::new(brackets, metric, new_kind))
    }

    pub fn to_float_mode(&self) -> Self {
        MetricLieAlgebra3::new(
            self.brackets.to_float_mode(),
            self.metric.to_float_mode(),
            self.frame_kind,
        )
    }
}

/// Christoffel table, curvature, Ricci and scalar curvature of the
/// Levi-Civita connection of a valid algebra.
#[derive(Clone)]
pub struct ConnectionCurvature {
    /// gamma.get(k, i, j) = Gamma^k_{ij}, grad_{e_i} e_j = sum_k Gamma^k_{ij} e_k.
    pub gamma: Ten3,
    pub riemann: Rank4,
    pub ricci: Mat3,
    pub scalar: Scalar,
}

impl ConnectionCurvature {
    /// Matrix of grad_{e_i} acting on coordinates.
    pub fn nabla_matrix(&self, i: usize) -> Mat3 {
        Mat3::from_fn(|k, j| self.gamma.get(k, i, j).clone())
    }

    /// Matrix of grad_x for an arbitrary direction.
    pub fn nabla_in_direction(&self, x: &Vec3) -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            if !x[i].is_zero() {
                m = &m + &self.nabla_matrix(i).scale(&x[i]);
            }
        }
        m
    }

    /// grad_x y for coordinate vectors (constant coefficients).
    pub fn covariant_derivative(&self, x: &Vec3, y: &Vec3) -> Vec3 {
        self.nabla_in_direction(x).mul_vec(y)
    }

    /// R(x, y) z for arbitrary coordinate vectors.
    pub fn curvature_apply(&self, x: &Vec3, y: &Vec3, z: &Vec3) -> Vec3 {
        let mut out = Vec3::zero();
        for i in 0..3 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..3 {
                    if z[k].is_zero() {
                        continue;
                    }
                    let s = &xy * &z[k];
                    let r = self.riemann.apply_frame(i, j, k);
                    out = &out + &r.scale(&s);
                }
            }
        }
        out
    }
}

/// Levi-Civita Christoffel table from the Koszul formula. Rejects invalid
/// algebras.
pub fn koszul_connection(alg: &MetricLieAlgebra3) -> Result<Ten3, AlgebraError> {
    alg.ensure_valid()?;
    let ginv = alg.metric().inverse().expect("validated metric is invertible");
    let half = Scalar::ratio(1, 2);
    // w_{ijk} = g(grad_i e_j, e_k)
    let w = |i: usize, j: usize, k: usize| -> Scalar {
        let t0 = alg.inner(&alg.bracket_frame(i, j), &Vec3::basis(k));
        let t1 = alg.inner(&alg.bracket_frame(j, k), &Vec3::basis(i));
        let t2 = alg.inner(&alg.bracket_frame(k, i), &Vec3::basis(j));
        &half * &(&(&t0 - &t1) + &t2)
    };
    let mut gamma = Ten3::zero();
    for i in 0..3 {
        for j in 0..3 {
            let wv = Vec3::from_fn(|k| w(i, j, k));
            let coords = ginv.mul_vec(&wv);
            for l in 0..3 {
                gamma.set(l, i, j, coords[l].clone());
            }
        }
    }
    Ok(gamma)
}

/// Full connection-curvature data of a valid algebra.
pub fn curvature(alg: &MetricLieAlgebra3) -> Result<ConnectionCurvature, AlgebraError> {
    let gamma = koszul_connection(alg)?;
    let gmat: Vec<Mat3> = (0..3)
        .map(|i| Mat3::from_fn(|k, j| gamma.get(k, i, j).clone()))
        .collect();
    let riemann = Rank4::from_fn(|l, i, j, k| {
        let mut acc = Scalar::zero();
        for m in 0..3 {
            acc = acc + gamma.get(m, j, k) * gmat[i].at(l, m)
                - gamma.get(m, i, k) * gmat[j].at(l, m)
                - alg.brackets().get(m, i, j) * gamma.get(l, m, k);
        }
        acc
    });
    let ricci = Mat3::from_fn(|j, k| {
        (0..3).fold(Scalar::zero(), |acc, i| acc + riemann.get(i, i, j, k))
    });
    let ginv = alg.metric().inverse().expect("validated metric is invertible");
    let mut scalar = Scalar::zero();
    for j in 0..3 {
        for k in 0..3 {
            scalar = scalar + ginv.at(j, k) * ricci.at(j, k);
        }
    }
    Ok(ConnectionCurvature { gamma, riemann, ricci, scalar })
}

#[derive(Debug, Clone, Error)]
pub enum SectionalError {
    #[error("degenerate plane: g(X,X)g(Y,Y) - g(X,Y)^2 = 0")]
    DegeneratePlane,
}

/// Sectional curvature of span{x, y}:
/// K = g(R(x,y)y, x) / (g(x,x) g(y,y) - g(x,y)^2).
pub fn sectional(
    alg: &MetricLieAlgebra3,
    cc: &ConnectionCurvature,
    x: &Vec3,
    y: &Vec3,
) -> Result<Scalar, SectionalError> {
    let gxx = alg.inner(x, x);
    let gyy = alg.inner(y, y);
    let gxy = alg.inner(x, y);
    let den = &(&gxx * &gyy) - &gxy.square();
    if den.is_zero() {
        return Err(SectionalError::DegeneratePlane);
    }
    let num = alg.inner(&cc.curvature_apply(x, y, y), x);
    Ok(&num / &den)
}

/// The plane-curvature expression used for Artin frames: g(R(E2,E1)E1, E2),
/// taken verbatim on the frame vectors e_2, e_1 (no normalization), so it is
/// defined even though the Artin plane metric is degenerate on the diagonal.
pub fn sectional_artin_kd(alg: &MetricLieAlgebra3, cc: &ConnectionCurvature) -> Scalar {
    let e1 = Vec3::basis(1);
    let e2 = Vec3::basis(2);
    alg.inner(&cc.curvature_apply(&e2, &e1, &e1), &e2)
}

#[derive(Debug, Clone, Error)]
pub enum MilnorError {
    #[error("Milnor frames require an orthonormal (Riemannian) frame")]
    NotOrthonormal,
    #[error("algebra is not unimodular: trace(ad_e{index}) = {trace}")]
    NotUnimodular { index: usize, trace: Scalar },
    #[error("bracket operator not symmetric: {0}")]
    NotSymmetric(String),
}

/// Milnor frame data for a unimodular Riemannian algebra: diagonalized
/// bracket coefficients, the derived mu_i, principal Ricci curvatures, and
/// the orthonormal frame (columns, in input-frame coordinates).
#[derive(Debug, Clone)]
pub struct MilnorData {
    pub lambda: [Scalar; 3],
    pub mu: [Scalar; 3],
    pub ricci: [Scalar; 3],
    pub frame: Mat3,
}

impl MilnorData {
    /// Signs of the lambda_i with the float zero band of the global tolerance.
    pub fn signs(&self) -> [i8; 3] {
        [self.lambda[0].sign(), self.lambda[1].sign(), self.lambda[2].sign()]
    }
}

/// Finds an orthonormal frame (f0, f1, f2) with [f1,f2] = lambda_0 f0 (cyclic),
/// by diagonalizing the bracket operator L with [x,y] = L(x `cross` y).
/// Float mode: eigenvectors are generally irrational.
pub fn milnor_frame(alg: &MetricLieAlgebra3) -> Result<MilnorData, MilnorError> {
    if alg.frame_kind() != FrameKind::Orthonormal {
        return Err(MilnorError::NotOrthonormal);
    }
    for i in 0..3 {
        let t = alg.ad_trace(i);
        if !t.is_zero() {
            return Err(MilnorError::NotUnimodular { index: i, trace: t });
        }
    }
    // L columns: [e1,e2] -> e0 slot, [e2,e0] -> e1 slot, [e0,e1] -> e2 slot.
    let cols = [alg.bracket_frame(1, 2), alg.bracket_frame(2, 0), alg.bracket_frame(0, 1)];
    let l = Mat3::from_fn(|i, j| cols[j][i].to_float_mode());
    let eig = sym_eigen(&l).map_err(|e| MilnorError::NotSymmetric(e.to_string()))?;
    let mut frame = Mat3::from_fn(|i, j| Scalar::float(eig.vectors[i][j]));
    // A negatively oriented eigenframe breaks the cyclic bracket pattern; flip
    // one column to restore det = +1 (the eigenpair is unchanged).
    if frame.det().to_f64() < 0.0 {
        for i in 0..3 {
            let v = -frame.at(i, 0);
            frame.set(i, 0, v);
        }
    }
    let lambda: [Scalar; 3] = std::array::from_fn(|i| Scalar::float(eig.values[i]));
    let half_sum = Scalar::ratio(1, 2) * (&lambda[0] + &lambda[1] + &lambda[2]);
    let mu: [Scalar; 3] = std::array::from_fn(|i| &half_sum - &lambda[i]);
    let ricci: [Scalar; 3] = [
        Scalar::int(2) * &mu[1] * &mu[2],
        Scalar::int(2) * &mu[0] * &mu[2],
        Scalar::int(2) * &mu[0] * &mu[1],
    ];
    Ok(MilnorData { lambda, mu, ricci, frame })
}

/// Max-abs residual of the defining Milnor bracket relations for `data`
/// against `alg`; used as the self-check oracle in tests.
pub fn milnor_bracket_residual(alg: &MetricLieAlgebra3, data: &MilnorData) -> f64 {
    let falg = alg.to_float_mode();
    let col = |j: usize| data.frame.col(j).to_float_mode();
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        let (a, b) = ((i + 1) % 3, (i + 2) % 3);
        let got = falg.bracket(&col(a), &col(b));
        let want = col(i).scale(&data.lambda[i]);
        worst = worst.max((&got - &want).max_abs().to_f64());
    }
    worst
}

/// Orientation volume det(x, y, z) — exposed for form evaluation.
pub fn frame_volume(x: &Vec3, y: &Vec3, z: &Vec3) -> Scalar {
    det3(x, y, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg() -> MetricLieAlgebra3 {
        let mut c = Ten3::zero();
        c.set(0, 1, 2, Scalar::int(2));
        c.set(0, 2, 1, Scalar::int(-2));
        MetricLieAlgebra3::new(c, Mat3::identity(), FrameKind::Orthonormal)
    }

    #[test]
    fn abelian_validates_and_is_flat() {
        let alg = MetricLieAlgebra3::abelian(Mat3::identity(), FrameKind::Orthonormal);
        assert!(alg.validate().is_empty());
        let cc = curvature(&alg).unwrap();
        assert!(cc.gamma.max_abs().is_zero());
        assert!(cc.riemann.max_abs().is_zero());
        assert!(cc.ricci.is_zero());
        assert!(cc.scalar.is_zero());
    }

    #[test]
    fn antisymmetry_violation_reported() {
        let mut c = Ten3::zero();
        c.set(0, 1, 2, Scalar::one());
        c.set(0, 2, 1, Scalar::one());
        let alg = MetricLieAlgebra3::new(c, Mat3::identity(), FrameKind::Orthonormal);
        let vs = alg.validate();
        assert!(vs
            .iter()
            .any(|v| matches!(v, AlgebraViolation::Antisymmetry { i: 1, j: 2, k: 0, .. })));
    }

    #[test]
    fn heisenberg_unimodular_and_valid() {
        let alg = heisenberg();
        assert!(alg.validate().is_empty());
        assert!(alg.is_unimodular());
    }

    #[test]
    fn milnor_rejects_non_unimodular() {
        // [e0, e1] = e1 has trace(ad_e0) = 1
        let mut c = Ten3::zero();
        c.set(1, 0, 1, Scalar::one());
        c.set(1, 1, 0, Scalar::int(-1));
        let alg = MetricLieAlgebra3::new(c, Mat3::identity(), FrameKind::Orthonormal);
        assert!(alg.validate().is_empty());
        match milnor_frame(&alg) {
            Err(MilnorError::NotUnimodular { index: 0, trace }) => {
                assert_eq!(trace, Scalar::one());
            }
            other => panic!("expected NotUnimodular, got {other:?}"),
        }
    }

    #[test]
    fn milnor_abelian_zero() {
        let alg = MetricLieAlgebra3::abelian(Mat3::identity(), FrameKind::Orthonormal);
        let data = milnor_frame(&alg).unwrap();
        for i in 0..3 {
            assert!(data.lambda[i].is_zero());
            assert!(data.ricci[i].is_zero());
        }
        assert!(milnor_bracket_residual(&alg, &data) < 1e-9);
    }
}
