//! Jacobi-operator analysis and extraction of the nullity constants
//! (kappa, mu) from the curvature of a structure.

use crate::algebra::ConnectionCurvature;
use crate::linalg::{solve_linear, Mat3, Vec3};
use crate::scalar::Scalar;
use crate::structure::StructureTensors;

/// Which nullity condition the curvature satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullityKind {
    /// R(X,Y) xi = kappa (eta(Y)X - eta(X)Y) + mu (eta(Y)hX - eta(X)hY),
    /// with h != 0 so both constants are determined.
    KappaMu,
    /// h = 0 and R(X,Y) xi = kappa (eta(Y)X - eta(X)Y); mu is undetermined.
    KappaOnly,
    /// The curvature does not satisfy either condition.
    None,
}

impl NullityKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            NullityKind::KappaMu => "KappaMu",
            NullityKind::KappaOnly => "KappaOnly",
            NullityKind::None => "None",
        }
    }
}

/// Outcome of the (kappa, mu) extraction.
#[derive(Debug, Clone)]
pub struct KappaMuReport {
    pub nullity: NullityKind,
    pub kappa: Option<Scalar>,
    /// None when h = 0: the coefficient of h is then undetermined.
    pub mu: Option<Scalar>,
    pub h_rank: usize,
    /// Max-abs residual over both checks (Jacobi-operator reconstruction of
    /// R(X,Y) xi and the decomposition J = kappa P + mu h). Zero in exact
    /// mode when the structure is a genuine nullity space.
    pub residual: Scalar,
}

/// The Jacobi operator J_xi: X -> R(X, xi) xi as a matrix. Symmetric with
/// respect to g, and J_xi(xi) = 0.
pub fn jacobi_operator(st: &StructureTensors, cc: &ConnectionCurvature) -> Mat3 {
    let cols: Vec<Vec3> = (0..3)
        .map(|i| cc.curvature_apply(&Vec3::basis(i), &st.xi, &st.xi))
        .collect();
    Mat3::from_fn(|r, c| cols[c][r].clone())
}

fn frobenius(a: &Mat3, b: &Mat3) -> Scalar {
    let mut acc = Scalar::zero();
    for i in 0..3 {
        for j in 0..3 {
            acc = acc + a.at(i, j) * b.at(i, j);
        }
    }
    acc
}

fn max_scalar(a: Scalar, b: Scalar) -> Scalar {
    if a.to_f64() >= b.to_f64() {
        a
    } else {
        b
    }
}

/// Extracts (kappa, mu). The curvature must first be reproducible from the
/// Jacobi operator alone, R(X,Y) xi = eta(Y) J X - eta(X) J Y; then J is
/// decomposed against Id - eta (x) xi and h by an exact least-squares solve
/// whose residual must vanish (within tolerance in float mode).
pub fn solve_kappa_mu(st: &StructureTensors, cc: &ConnectionCurvature) -> KappaMuReport {
    let j = jacobi_operator(st, cc);
    let h = st.compute_h();
    let h_rank = h.rank();
    let p = st.projector();

    // Reconstruction residual: R(e_a, e_b) xi vs eta_b J e_a - eta_a J e_b.
    let mut recon = Scalar::zero();
    for a in 0..3 {
        for b in (a + 1)..3 {
            let r = cc.curvature_apply(&Vec3::basis(a), &Vec3::basis(b), &st.xi);
            let expect = &j.col(a).scale(&st.eta[b]) - &j.col(b).scale(&st.eta[a]);
            recon = max_scalar(recon, (&r - &expect).max_abs());
        }
    }

    let h_zero = h.is_zero();
    if h_zero {
        // single-coefficient fit J = kappa P
        let kappa = &frobenius(&j, &p) / &frobenius(&p, &p);
        let fit = (&j - &p.scale(&kappa)).max_abs();
        let residual = max_scalar(recon, fit);
        if residual.is_zero() {
            return KappaMuReport {
                nullity: NullityKind::KappaOnly,
                kappa: Some(kappa),
                mu: None,
                h_rank,
                residual,
            };
        }
        return KappaMuReport { nullity: NullityKind::None, kappa: None, mu: None, h_rank, residual };
    }

    // Normal equations for J = kappa P + mu h over all nine components.
    let a = vec![
        vec![frobenius(&p, &p), frobenius(&p, &h)],
        vec![frobenius(&h, &p), frobenius(&h, &h)],
    ];
    let rhs = vec![frobenius(&j, &p), frobenius(&j, &h)];
    let Ok(sol) = solve_linear(&a, &rhs) else {
        // h proportional to the projector: the split is ambiguous, treat as
        // undetermined mu like the h = 0 branch.
        let kappa = &frobenius(&j, &p) / &frobenius(&p, &p);
        let fit = (&j - &p.scale(&kappa)).max_abs();
        let residual = max_scalar(recon, fit);
        let nullity = if residual.is_zero() { NullityKind::KappaOnly } else { NullityKind::None };
        let kappa = (nullity == NullityKind::KappaOnly).then_some(kappa);
        return KappaMuReport { nullity, kappa, mu: None, h_rank, residual };
    };
    let (kappa, mu) = (sol[0].clone(), sol[1].clone());
    let fit = (&(&j - &p.scale(&kappa)) - &h.scale(&mu)).max_abs();
    let residual = max_scalar(recon, fit);
    if residual.is_zero() {
        KappaMuReport {
            nullity: NullityKind::KappaMu,
            kappa: Some(kappa),
            mu: Some(mu),
            h_rank,
            residual,
        }
    } else {
        KappaMuReport { nullity: NullityKind::None, kappa: None, mu: None, h_rank, residual }
    }
}
