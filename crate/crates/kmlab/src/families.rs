//! Constructors for the parametric model families: orthonormal-frame
//! contact-type algebras (including both nilpotent degenerations) and
//! Artin-frame para-type algebras (the general bracket family and the two
//! canonical (kappa, mu) normal forms). Each constructor returns a validated
//! algebra-plus-structure pair together with the closed-form curvature data
//! the analysis is checked against.

use std::fmt;

use thiserror::Error;

use crate::algebra::{FrameKind, MetricLieAlgebra3};
use crate::linalg::{Mat3, Ten3, Vec3};
use crate::scalar::Scalar;
use crate::structure::StructureTensors;

#[derive(Debug, Clone, Error)]
pub enum FamilyError {
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("epsilon must be -1 or +1, got {0}")]
    BadEpsilon(String),
}

/// A parametric family instance.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// Orthonormal frame (xi, E1, E2), phi E1 = E2:
    /// [E1,E2] = 2k xi, [E2,xi] = -(lambda+c) E1, [xi,E1] = (lambda-c) E2.
    Contact { k: Scalar, lambda: Scalar, c: Scalar },
    /// Degeneration with [xi, E1] = 0:
    /// [E1,E2] = 2k xi, [E2,xi] = -2 lambda E1.
    Nilpotent1 { k: Scalar, lambda: Scalar },
    /// Degeneration with [E2, xi] = 0:
    /// [E1,E2] = 2k xi, [xi,E1] = 2 lambda E2.
    Nilpotent2 { k: Scalar, lambda: Scalar },
    /// Artin frame (xi, E1, E2), phi E1 = E1, phi E2 = -E2:
    /// [E1,E2] = 2u xi, [xi,E1] = a E1 + b E2, [xi,E2] = c E1 - a E2.
    Para { u: Scalar, a: Scalar, b: Scalar, c: Scalar },
    /// The unconstrained Artin-frame bracket family
    /// [E1,E2] = p1 E1 + p2 E2 + 2u xi, [xi,E1] = a E1 + b E2,
    /// [xi,E2] = c E1 + d E2, subject to u(a+d) = 0 and (A - (a+d)I) p = 0.
    ParaGeneral {
        p1: Scalar,
        p2: Scalar,
        a: Scalar,
        b: Scalar,
        c: Scalar,
        d: Scalar,
        u: Scalar,
    },
    /// Canonical paracontact metric (kappa, mu) normal form:
    /// [E1,E2] = -b E2 + 2 xi, [xi,E1] = (1 - mu/2) E1 + eps E2,
    /// [xi,E2] = -eps (kappa+1) E1 - (1 - mu/2) E2. b = 0 unless kappa = -1.
    PcmCanonical { kappa: Scalar, mu: Scalar, epsilon: i8, b: Scalar },
    /// Canonical almost paracosymplectic (kappa, mu) normal form:
    /// [E1,E2] = -b E2, [xi,E1] = -(mu/2) E1 + eps E2,
    /// [xi,E2] = -eps kappa E1 + (mu/2) E2. b = 0 unless kappa = 0.
    ApcosCanonical { kappa: Scalar, mu: Scalar, epsilon: i8, b: Scalar },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Contact { k, lambda, c } => {
                write!(f, "contact(k={k}, lambda={lambda}, c={c})")
            }
            FamilySpec::Nilpotent1 { k, lambda } => {
                write!(f, "nilpotent1(k={k}, lambda={lambda})")
            }
            FamilySpec::Nilpotent2 { k, lambda } => {
                write!(f, "nilpotent2(k={k}, lambda={lambda})")
            }
            FamilySpec::Para { u, a, b, c } => write!(f, "para(u={u}, a={a}, b={b}, c={c})"),
            FamilySpec::ParaGeneral { p1, p2, a, b, c, d, u } => write!(
                f,
                "para_general(p1={p1}, p2={p2}, a={a}, b={b}, c={c}, d={d}, u={u})"
            ),
            FamilySpec::PcmCanonical { kappa, mu, epsilon, b } => {
                write!(f, "pcm_canonical(kappa={kappa}, mu={mu}, epsilon={epsilon}, b={b})")
            }
            FamilySpec::ApcosCanonical { kappa, mu, epsilon, b } => {
                write!(f, "apcos_canonical(kappa={kappa}, mu={mu}, epsilon={epsilon}, b={b})")
            }
        }
    }
}

/// Contact-type structure tensors on the orthonormal frame (xi, E1, E2):
/// phi E1 = E2, phi E2 = -E1, epsilon = -1.
fn contact_structure(alg: MetricLieAlgebra3) -> StructureTensors {
    let mut phi = Mat3::zero();
    phi.set(2, 1, Scalar::one());
    phi.set(1, 2, Scalar::int(-1));
    StructureTensors::new(-1, phi, Vec3::basis(0), Vec3::basis(0), alg)
}

/// Para-type structure tensors on the Artin frame (xi, E1, E2):
/// phi E1 = E1, phi E2 = -E2, epsilon = +1.
fn para_structure(alg: MetricLieAlgebra3) -> StructureTensors {
    let mut phi = Mat3::zero();
    phi.set(1, 1, Scalar::one());
    phi.set(2, 2, Scalar::int(-1));
    StructureTensors::new(1, phi, Vec3::basis(0), Vec3::basis(0), alg)
}

fn set_antisym(c: &mut Ten3, k: usize, i: usize, j: usize, v: Scalar) {
    c.set(k, j, i, -&v);
    c.set(k, i, j, v);
}

impl FamilySpec {
    /// CLI-facing family name.
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Contact { .. } => "contact",
            FamilySpec::Nilpotent1 { .. } => "nilpotent1",
            FamilySpec::Nilpotent2 { .. } => "nilpotent2",
            FamilySpec::Para { .. } => "para",
            FamilySpec::ParaGeneral { .. } => "para_general",
            FamilySpec::PcmCanonical { .. } => "pcm_canonical",
            FamilySpec::ApcosCanonical { .. } => "apcos_canonical",
        }
    }

    /// Builds the algebra and structure. Parameters that break the Jacobi
    /// identity (or a forced normal-form constraint) are rejected with the
    /// violated constraint named.
    pub fn build(&self) -> Result<(MetricLieAlgebra3, StructureTensors), FamilyError> {
        match self {
            FamilySpec::Contact { k, lambda, c } => {
                Ok(build_contact(k, &(lambda - c), &(lambda + c)))
            }
            FamilySpec::Nilpotent1 { k, lambda } => {
                // lambda - c = 0 degeneration: [xi,E1] = 0, [E2,xi] = -2 lambda E1
                Ok(build_contact(k, &Scalar::zero(), &(Scalar::int(2) * lambda)))
            }
            FamilySpec::Nilpotent2 { k, lambda } => {
                // lambda + c = 0 degeneration: [E2,xi] = 0, [xi,E1] = 2 lambda E2
                Ok(build_contact(k, &(Scalar::int(2) * lambda), &Scalar::zero()))
            }
            FamilySpec::Para { u, a, b, c } => Ok(build_para_general(
                &Scalar::zero(),
                &Scalar::zero(),
                a,
                b,
                c,
                &-a,
                u,
            )),
            FamilySpec::ParaGeneral { p1, p2, a, b, c, d, u } => {
                let trace = a + d;
                let ut = u * &trace;
                if !ut.is_zero() {
                    return Err(FamilyError::Constraint(format!(
                        "Jacobi requires u(a+d) = 0, got u(a+d) = {ut}"
                    )));
                }
                // (A - (a+d) I) p = 0 with A = [[a, c], [b, d]]
                let r1 = &(&(a - &trace) * p1) + &(c * p2);
                let r2 = &(b * p1) + &(&(d - &trace) * p2);
                if !r1.is_zero() || !r2.is_zero() {
                    return Err(FamilyError::Constraint(format!(
                        "Jacobi requires (A - (a+d)I)p = 0, got ({r1}, {r2})"
                    )));
                }
                Ok(build_para_general(p1, p2, a, b, c, d, u))
            }
            FamilySpec::PcmCanonical { kappa, mu, epsilon, b } => {
                let eps = check_epsilon(*epsilon)?;
                let kp1 = kappa + Scalar::one();
                if !kp1.is_zero() && !b.is_zero() {
                    return Err(FamilyError::Constraint(format!(
                        "pcm_canonical requires b = 0 when kappa != -1 (kappa = {kappa})"
                    )));
                }
                let one_minus_half_mu = Scalar::one() - Scalar::ratio(1, 2) * mu;
                let jac = b * &one_minus_half_mu;
                if !jac.is_zero() {
                    return Err(FamilyError::Constraint(format!(
                        "Jacobi requires b(1 - mu/2) = 0 for constant b, got {jac}"
                    )));
                }
                Ok(build_para_full(
                    &Scalar::zero(),
                    &-b,
                    &one_minus_half_mu,
                    &eps,
                    &(-&eps * &kp1),
                    &-&one_minus_half_mu,
                    &Scalar::one(),
                ))
            }
            FamilySpec::ApcosCanonical { kappa, mu, epsilon, b } => {
                let eps = check_epsilon(*epsilon)?;
                if !kappa.is_zero() && !b.is_zero() {
                    return Err(FamilyError::Constraint(format!(
                        "apcos_canonical requires b = 0 when kappa != 0 (kappa = {kappa})"
                    )));
                }
                let half_mu = Scalar::ratio(1, 2) * mu;
                let jac = b * mu;
                if !jac.is_zero() {
                    return Err(FamilyError::Constraint(format!(
                        "Jacobi requires b mu = 0 for constant b, got b*mu = {jac}"
                    )));
                }
                Ok(build_para_full(
                    &Scalar::zero(),
                    &-b,
                    &-&half_mu,
                    &eps,
                    &(-&eps * kappa),
                    &half_mu,
                    &Scalar::zero(),
                ))
            }
        }
    }

    /// The closed-form (kappa, mu) this family instance realizes, when the
    /// derivation applies (Para general form needs p = 0 and a + d = 0).
    pub fn expected_kappa_mu(&self) -> Option<(Scalar, Scalar)> {
        match self {
            FamilySpec::Contact { k, lambda, c } => {
                Some((k.square() - lambda.square(), Scalar::int(2) * (k + c)))
            }
            FamilySpec::Nilpotent1 { k, lambda } => {
                Some((k.square() - lambda.square(), Scalar::int(2) * (k + lambda)))
            }
            FamilySpec::Nilpotent2 { k, lambda } => {
                Some((k.square() - lambda.square(), Scalar::int(2) * (k - lambda)))
            }
            FamilySpec::Para { u, a, b, c } => {
                Some((-(u.square() + b * c), Scalar::int(2) * (u - a)))
            }
            FamilySpec::ParaGeneral { p1, p2, a, b, c, d, u } => {
                let aligned = p1.is_zero() && p2.is_zero() && (a + d).is_zero();
                aligned.then(|| (-(u.square() + b * c), Scalar::int(2) * (u - a)))
            }
            FamilySpec::PcmCanonical { kappa, mu, .. }
            | FamilySpec::ApcosCanonical { kappa, mu, .. } => Some((kappa.clone(), mu.clone())),
        }
    }

    /// Closed-form principal Ricci curvatures (r_xi, r_E1, r_E2) and scalar
    /// curvature, for the Riemannian (orthonormal-frame) families.
    pub fn expected_ricci(&self) -> Option<(Scalar, Scalar, Scalar, Scalar)> {
        let (k, lambda, c) = match self {
            FamilySpec::Contact { k, lambda, c } => (k.clone(), lambda.clone(), c.clone()),
            FamilySpec::Nilpotent1 { k, lambda } => (k.clone(), lambda.clone(), lambda.clone()),
            FamilySpec::Nilpotent2 { k, lambda } => (k.clone(), lambda.clone(), -lambda),
            _ => return None,
        };
        let two = Scalar::int(2);
        let kc = &k + &c;
        let r1 = &two * &(k.square() - lambda.square());
        let r2 = -&(&two * &kc) * &(&k - &lambda);
        let r3 = -&(&two * &kc) * &(&k + &lambda);
        let s = -&two * &(k.square() + lambda.square()) - &(Scalar::int(4) * &k) * &c;
        Some((r1, r2, r3, s))
    }
}

fn check_epsilon(e: i8) -> Result<Scalar, FamilyError> {
    if e == 1 || e == -1 {
        Ok(Scalar::int(e as i64))
    } else {
        Err(FamilyError::BadEpsilon(e.to_string()))
    }
}

/// Orthonormal contact-type algebra with [xi,E1] = s1 E2, [xi,E2] = s2 E1,
/// [E1,E2] = 2k xi (s1 = lambda - c, s2 = lambda + c).
fn build_contact(k: &Scalar, s1: &Scalar, s2: &Scalar) -> (MetricLieAlgebra3, StructureTensors) {
    let mut c = Ten3::zero();
    set_antisym(&mut c, 0, 1, 2, Scalar::int(2) * k);
    set_antisym(&mut c, 2, 0, 1, s1.clone());
    set_antisym(&mut c, 1, 0, 2, s2.clone());
    let alg = MetricLieAlgebra3::new(c, Mat3::identity(), FrameKind::Orthonormal);
    let st = contact_structure(alg.clone());
    (alg, st)
}

fn build_para_general(
    p1: &Scalar,
    p2: &Scalar,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    u: &Scalar,
) -> (MetricLieAlgebra3, StructureTensors) {
    build_para_full(p1, p2, a, b, c, d, u)
}

/// Artin-frame algebra [E1,E2] = p1 E1 + p2 E2 + 2u xi, [xi,E1] = a E1 + b E2,
/// [xi,E2] = c E1 + d E2.
fn build_para_full(
    p1: &Scalar,
    p2: &Scalar,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    u: &Scalar,
) -> (MetricLieAlgebra3, StructureTensors) {
    let mut t = Ten3::zero();
    set_antisym(&mut t, 1, 1, 2, p1.clone());
    set_antisym(&mut t, 2, 1, 2, p2.clone());
    set_antisym(&mut t, 0, 1, 2, Scalar::int(2) * u);
    set_antisym(&mut t, 1, 0, 1, a.clone());
    set_antisym(&mut t, 2, 0, 1, b.clone());
    set_antisym(&mut t, 1, 0, 2, c.clone());
    set_antisym(&mut t, 2, 0, 2, d.clone());
    let metric = FrameKind::Artin.expected_metric().unwrap();
    let alg = MetricLieAlgebra3::new(t, metric, FrameKind::Artin);
    let st = para_structure(alg.clone());
    (alg, st)
}

/// The standard rational sweep grid {-3..3} plus the half-integers
/// {-3/2, -1/2, 1/2, 3/2}.
pub fn standard_grid() -> Vec<Scalar> {
    let mut g: Vec<Scalar> = (-3..=3).map(Scalar::int).collect();
    for (p, q) in [(-3, 2), (-1, 2), (1, 2), (3, 2)] {
        g.push(Scalar::ratio(p, q));
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contact_1_2_0_brackets() {
        let spec = FamilySpec::Contact {
            k: Scalar::int(1),
            lambda: Scalar::int(2),
            c: Scalar::int(0),
        };
        let (alg, st) = spec.build().unwrap();
        assert!(alg.validate().is_empty());
        assert!(st.validate().is_empty());
        // [E1,E2] = 2 xi, [E2,xi] = -2 E1, [xi,E1] = 2 E2
        assert_eq!(alg.bracket_frame(1, 2), Vec3::from_ints([2, 0, 0]));
        assert_eq!(alg.bracket_frame(2, 0), Vec3::from_ints([0, -2, 0]));
        assert_eq!(alg.bracket_frame(0, 1), Vec3::from_ints([0, 0, 2]));
    }

    #[test]
    fn nilpotent2_brackets() {
        let spec = FamilySpec::Nilpotent2 { k: Scalar::int(1), lambda: Scalar::int(3) };
        let (alg, _) = spec.build().unwrap();
        assert_eq!(alg.bracket_frame(1, 2), Vec3::from_ints([2, 0, 0]));
        assert_eq!(alg.bracket_frame(2, 0), Vec3::zero());
        assert_eq!(alg.bracket_frame(0, 1), Vec3::from_ints([0, 0, 6]));
    }

    #[test]
    fn pcm_canonical_brackets() {
        // kappa = -3, mu = 2, eps = +1, b = 0:
        // [xi,E1] = (1 - 1) E1 + E2 = E2, [xi,E2] = -(-2) E1 - 0 E2 = 2 E1
        let spec = FamilySpec::PcmCanonical {
            kappa: Scalar::int(-3),
            mu: Scalar::int(2),
            epsilon: 1,
            b: Scalar::int(0),
        };
        let (alg, st) = spec.build().unwrap();
        assert!(alg.validate().is_empty());
        assert!(st.validate().is_empty());
        assert_eq!(alg.bracket_frame(1, 2), Vec3::from_ints([2, 0, 0]));
        assert_eq!(alg.bracket_frame(0, 1), Vec3::from_ints([0, 0, 1]));
        assert_eq!(alg.bracket_frame(0, 2), Vec3::from_ints([0, 2, 0]));
    }

    #[test]
    fn para_general_rejects_broken_jacobi() {
        // u = 1 with a + d = 1 violates u(a+d) = 0
        let spec = FamilySpec::ParaGeneral {
            p1: Scalar::zero(),
            p2: Scalar::zero(),
            a: Scalar::int(1),
            b: Scalar::zero(),
            c: Scalar::zero(),
            d: Scalar::zero(),
            u: Scalar::int(1),
        };
        match spec.build() {
            Err(FamilyError::Constraint(msg)) => assert!(msg.contains("u(a+d)")),
            other => panic!("expected constraint error, got {other:?}"),
        }
    }

    #[test]
    fn pcm_canonical_rejects_bad_b() {
        let spec = FamilySpec::PcmCanonical {
            kappa: Scalar::int(0),
            mu: Scalar::int(2),
            epsilon: 1,
            b: Scalar::int(1),
        };
        assert!(matches!(spec.build(), Err(FamilyError::Constraint(_))));
        // kappa = -1 but mu != 2 with b != 0 breaks Jacobi for constant b
        let spec = FamilySpec::PcmCanonical {
            kappa: Scalar::int(-1),
            mu: Scalar::int(0),
            epsilon: 1,
            b: Scalar::int(1),
        };
        match spec.build() {
            Err(FamilyError::Constraint(msg)) => assert!(msg.contains("b(1 - mu/2)")),
            other => panic!("expected constraint error, got {other:?}"),
        }
        // the mu = 2 slice closes into a Lie algebra
        let spec = FamilySpec::PcmCanonical {
            kappa: Scalar::int(-1),
            mu: Scalar::int(2),
            epsilon: 1,
            b: Scalar::int(1),
        };
        let (alg, st) = spec.build().unwrap();
        assert!(alg.validate().is_empty());
        assert!(st.validate().is_empty());
    }

    #[test]
    fn expected_kappa_mu_examples() {
        let spec = FamilySpec::Contact {
            k: Scalar::int(1),
            lambda: Scalar::int(2),
            c: Scalar::int(0),
        };
        assert_eq!(spec.expected_kappa_mu().unwrap(), (Scalar::int(-3), Scalar::int(2)));
        let spec = FamilySpec::Nilpotent1 { k: Scalar::int(1), lambda: Scalar::int(3) };
        assert_eq!(spec.expected_kappa_mu().unwrap(), (Scalar::int(-8), Scalar::int(8)));
        let spec = FamilySpec::Para {
            u: Scalar::int(1),
            a: Scalar::int(0),
            b: Scalar::int(1),
            c: Scalar::int(1),
        };
        assert_eq!(spec.expected_kappa_mu().unwrap(), (Scalar::int(-2), Scalar::int(2)));
    }

    #[test]
    fn expected_ricci_examples() {
        let spec = FamilySpec::Contact {
            k: Scalar::int(1),
            lambda: Scalar::int(2),
            c: Scalar::int(0),
        };
        let (r1, r2, r3, s) = spec.expected_ricci().unwrap();
        assert_eq!(
            (r1, r2, r3, s),
            (Scalar::int(-6), Scalar::int(2), Scalar::int(-6), Scalar::int(-10))
        );
        let spec = FamilySpec::Contact {
            k: Scalar::int(0),
            lambda: Scalar::int(2),
            c: Scalar::int(1),
        };
        let (r1, r2, r3, s) = spec.expected_ricci().unwrap();
        assert_eq!(
            (r1, r2, r3, s),
            (Scalar::int(-8), Scalar::int(4), Scalar::int(-4), Scalar::int(-8))
        );
        let spec = FamilySpec::Contact {
            k: Scalar::int(0),
            lambda: Scalar::int(0),
            c: Scalar::int(0),
        };
        let (r1, r2, r3, s) = spec.expected_ricci().unwrap();
        assert!(r1.is_zero() && r2.is_zero() && r3.is_zero() && s.is_zero());
    }
}
