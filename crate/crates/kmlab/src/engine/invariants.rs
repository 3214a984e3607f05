//! The four deformation invariants: the Boeckx invariant I and its almost
//! cosymplectic analogue C (square-root valued, kept lazy), and the
//! para-type invariants E and F (rational).

use std::fmt;

use crate::engine::kappa_mu::{KappaMuReport, NullityKind};
use crate::scalar::Scalar;
use crate::structure::ClassTag;

/// A lazily rooted value `coeff * sqrt(radicand)` with `radicand > 0`.
/// Equality and ordering against rationals are decided on squares plus sign,
/// so invariant comparisons stay exact.
#[derive(Debug, Clone)]
pub struct SignedSqrt {
    pub coeff: Scalar,
    pub radicand: Scalar,
}

impl SignedSqrt {
    pub fn new(coeff: Scalar, radicand: Scalar) -> Self {
        assert!(radicand.sign() > 0, "radicand must be positive");
        SignedSqrt { coeff, radicand }
    }

    pub fn sign(&self) -> i8 {
        self.coeff.sign()
    }

    /// The exact square, coeff^2 * radicand.
    pub fn square(&self) -> Scalar {
        &self.coeff.square() * &self.radicand
    }

    /// Exact rational value when the radicand is a perfect square (or the
    /// coefficient vanishes).
    pub fn exact_value(&self) -> Option<Scalar> {
        if self.coeff.is_zero() {
            return Some(Scalar::zero());
        }
        self.radicand.sqrt_exact().map(|r| &self.coeff * &r)
    }

    pub fn approx(&self) -> f64 {
        self.coeff.to_f64() * self.radicand.to_f64().sqrt()
    }

    /// Equality via squares plus sign.
    pub fn eq_root(&self, other: &SignedSqrt) -> bool {
        self.sign() == other.sign() && self.square() == other.square()
    }

    /// Compare against a rational threshold.
    pub fn cmp_rational(&self, t: &Scalar) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        let (s, ts) = (self.sign(), t.sign());
        if s != ts {
            return s.cmp(&ts);
        }
        if s == 0 {
            return Equal;
        }
        // same nonzero sign: compare squares, flipping for negatives
        let ord = self
            .square()
            .partial_cmp(&t.square())
            .expect("scalar comparison");
        if s > 0 {
            ord
        } else {
            ord.reverse()
        }
    }

    pub fn abs_is_one(&self) -> bool {
        self.square() == Scalar::one()
    }
}

impl fmt::Display for SignedSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "({})*sqrt({})", self.coeff, self.radicand),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantKind {
    BoeckxI,
    DackoOlszakC,
    ParaE,
    ParaF,
}

impl InvariantKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            InvariantKind::BoeckxI => "Boeckx_I",
            InvariantKind::DackoOlszakC => "DackoOlszak_C",
            InvariantKind::ParaE => "Para_E",
            InvariantKind::ParaF => "Para_F",
        }
    }
}

#[derive(Debug, Clone)]
pub enum InvariantValue {
    Rational(Scalar),
    Root(SignedSqrt),
}

impl InvariantValue {
    pub fn exact(&self) -> Option<Scalar> {
        match self {
            InvariantValue::Rational(v) => Some(v.clone()),
            InvariantValue::Root(r) => r.exact_value(),
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            InvariantValue::Rational(v) => v.to_f64(),
            InvariantValue::Root(r) => r.approx(),
        }
    }

    /// Exact equality (squares plus sign for rooted values).
    pub fn eq_invariant(&self, other: &InvariantValue) -> bool {
        match (self, other) {
            (InvariantValue::Rational(a), InvariantValue::Rational(b)) => a == b,
            (InvariantValue::Root(a), InvariantValue::Root(b)) => a.eq_root(b),
            (InvariantValue::Rational(a), InvariantValue::Root(b))
            | (InvariantValue::Root(b), InvariantValue::Rational(a)) => {
                b.sign() == a.sign() && b.square() == a.square()
            }
        }
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantValue::Rational(v) => write!(f, "{v}"),
            InvariantValue::Root(r) => write!(f, "{r}"),
        }
    }
}

/// One invariant with its definedness status.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub kind: InvariantKind,
    pub value: Option<InvariantValue>,
    pub reason_undefined: Option<String>,
}

impl InvariantReport {
    pub fn defined(&self) -> bool {
        self.value.is_some()
    }
}

/// Emits the invariant matching the structure class:
/// I = (1 - mu/2)/sqrt(1 - kappa) for contact metric, kappa < 1;
/// C = (-mu/2)/sqrt(-kappa) for almost cosymplectic, kappa < 0;
/// E = (1 - mu/2)^2/(1 + kappa) for paracontact metric, kappa != -1;
/// F = (-mu/2)^2/kappa for almost paracosymplectic, kappa != 0.
/// Undefined invariants carry the reason instead of a value.
pub fn invariants(class: &ClassTag, kmu: &KappaMuReport) -> Vec<InvariantReport> {
    let kind = match class {
        ClassTag::ContactMetric => InvariantKind::BoeckxI,
        ClassTag::AlmostCosymplectic => InvariantKind::DackoOlszakC,
        ClassTag::ParacontactMetric => InvariantKind::ParaE,
        ClassTag::AlmostParacosymplectic => InvariantKind::ParaF,
        _ => return Vec::new(),
    };
    vec![invariant_for(kind, kmu)]
}

fn undefined(kind: InvariantKind, reason: impl Into<String>) -> InvariantReport {
    InvariantReport { kind, value: None, reason_undefined: Some(reason.into()) }
}

fn invariant_for(kind: InvariantKind, kmu: &KappaMuReport) -> InvariantReport {
    if kmu.nullity == NullityKind::None {
        return undefined(kind, "not a (kappa,mu)-space");
    }
    let kappa = kmu.kappa.clone().expect("nullity implies kappa");
    let one = Scalar::one();
    let half = Scalar::ratio(1, 2);
    let Some(mu) = kmu.mu.clone() else {
        let reason = match kind {
            InvariantKind::BoeckxI => "kappa = 1 (Sasakian): mu undetermined, I undefined",
            InvariantKind::DackoOlszakC => {
                "kappa = 0 (cosymplectic-type): mu undetermined, C undefined"
            }
            InvariantKind::ParaE => "kappa = -1 (para-Sasakian): mu undetermined, E undefined",
            InvariantKind::ParaF => {
                "kappa = 0 (paracosymplectic-type): mu undetermined, F undefined"
            }
        };
        return undefined(kind, reason);
    };
    match kind {
        InvariantKind::BoeckxI => {
            let one_minus_kappa = &one - &kappa;
            if one_minus_kappa.sign() <= 0 {
                return undefined(kind, format!("kappa = {kappa} >= 1: I undefined"));
            }
            let coeff = &one - &(&half * &mu);
            let root = SignedSqrt::new(coeff, one_minus_kappa.recip());
            InvariantReport { kind, value: Some(InvariantValue::Root(root)), reason_undefined: None }
        }
        InvariantKind::DackoOlszakC => {
            let minus_kappa = -&kappa;
            if minus_kappa.sign() <= 0 {
                return undefined(kind, format!("kappa = {kappa} >= 0: C undefined"));
            }
            let coeff = -&(&half * &mu);
            let root = SignedSqrt::new(coeff, minus_kappa.recip());
            InvariantReport { kind, value: Some(InvariantValue::Root(root)), reason_undefined: None }
        }
        InvariantKind::ParaE => {
            let denom = &one + &kappa;
            if denom.is_zero() {
                return undefined(kind, "kappa = -1: E undefined");
            }
            let num = (&one - &(&half * &mu)).square();
            InvariantReport {
                kind,
                value: Some(InvariantValue::Rational(&num / &denom)),
                reason_undefined: None,
            }
        }
        InvariantKind::ParaF => {
            if kappa.is_zero() {
                return undefined(kind, "kappa = 0: F undefined");
            }
            let num = (&half * &mu).square();
            InvariantReport {
                kind,
                value: Some(InvariantValue::Rational(&num / &kappa)),
                reason_undefined: None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_sqrt_compare() {
        // 2 sqrt(3) vs rational 3: squares 12 vs 9
        let r = SignedSqrt::new(Scalar::int(2), Scalar::int(3));
        assert_eq!(r.cmp_rational(&Scalar::int(3)), std::cmp::Ordering::Greater);
        assert_eq!(r.cmp_rational(&Scalar::int(4)), std::cmp::Ordering::Less);
        // -1/2 sqrt(4) = -1
        let r = SignedSqrt::new(Scalar::ratio(-1, 2), Scalar::int(4));
        assert_eq!(r.exact_value().unwrap(), Scalar::int(-1));
        assert!(r.abs_is_one());
        assert_eq!(r.cmp_rational(&Scalar::int(-1)), std::cmp::Ordering::Equal);
        assert_eq!(r.cmp_rational(&Scalar::int(-2)), std::cmp::Ordering::Greater);
    }
}
