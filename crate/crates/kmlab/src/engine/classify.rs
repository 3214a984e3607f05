//! Classification of the underlying simply connected Lie group from the
//! structure class and the deformation invariant, following the four
//! invariant-range tables. Boundary rows (|I| = 1, |C| = 1) are detected
//! structurally from nilpotency of ad_xi restricted to the kernel
//! distribution, which is stable under deformation even in float mode.

use std::fmt;

use crate::engine::invariants::{InvariantReport, InvariantValue};
use crate::engine::kappa_mu::{KappaMuReport, NullityKind};
use crate::linalg::Mat3;
use crate::scalar::Scalar;
use crate::structure::{ClassTag, StructureTensors};

/// Simply connected group (or unlisted table row).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    Su2OrSo3,
    Sl2OrO12,
    E2,
    E11,
    /// The paracontact E = 1 row names two groups without a discriminator.
    E2OrE11,
    Heisenberg,
    /// A table row whose group column is empty.
    Unlisted,
}

impl Group {
    pub fn display(&self) -> &'static str {
        match self {
            Group::Su2OrSo3 => "SO(3) or SU(2)",
            Group::Sl2OrO12 => "SL(2,R)/O(1,2)",
            Group::E2 => "E(2)",
            Group::E11 => "E(1,1)",
            Group::E2OrE11 => "E(2) or E(1,1)",
            Group::Heisenberg => "Heisenberg Lie group H3",
            Group::Unlisted => "-",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            Group::Su2OrSo3 => "simple, compact",
            Group::Sl2OrO12 => "simple, compact quotients",
            Group::E2 | Group::E11 | Group::E2OrE11 => "solvable, compact quotients",
            Group::Heisenberg => "nilpotent",
            Group::Unlisted => "-",
        }
    }
}

/// A classified table row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupClass {
    pub group: Group,
    /// 1 = contact metric, 2 = paracontact metric, 3 = almost cosymplectic,
    /// 4 = almost paracosymplectic.
    pub table: u8,
    pub invariant_range: &'static str,
}

impl GroupClass {
    /// One line in the table layout: group | description | invariant range.
    pub fn table_row(&self) -> String {
        format!(
            "{} | {} | {}",
            self.group.display(),
            self.group.description(),
            self.invariant_range
        )
    }
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group.display())
    }
}

/// Inputs the tables do not classify, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotClassified {
    pub reason: String,
}

impl NotClassified {
    fn new(reason: impl Into<String>) -> Self {
        NotClassified { reason: reason.into() }
    }
}

impl fmt::Display for NotClassified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not classified ({})", self.reason)
    }
}

/// Nilpotency data of ad_xi restricted to the kernel distribution
/// D = ker eta (projected back into D).
#[derive(Debug, Clone)]
pub struct AdXiRestriction {
    pub trace: Scalar,
    pub det: Scalar,
    pub is_zero: bool,
}

impl AdXiRestriction {
    pub fn nilpotent_nonzero(&self) -> bool {
        self.trace.is_zero() && self.det.is_zero() && !self.is_zero
    }
}

/// Computes trace and determinant of P ad_xi P restricted to D, basis-free:
/// the projected operator kills xi, so its remaining invariants are
/// tr(M) and the second elementary symmetric function of M.
pub fn ad_xi_restriction(st: &StructureTensors) -> AdXiRestriction {
    let p = st.projector();
    let m = &(&p * &st.algebra.ad_matrix(&st.xi)) * &p;
    let trace = m.trace();
    let m2 = &m * &m;
    let det = Scalar::ratio(1, 2) * (trace.square() - m2.trace());
    AdXiRestriction { trace, det, is_zero: m.is_zero() }
}

fn classified(group: Group, table: u8, invariant_range: &'static str) -> GroupClass {
    GroupClass { group, table, invariant_range }
}

/// Assigns the table row. Requires the structure class, the nullity report,
/// the class-matched invariant, and the structural ad_xi data.
pub fn classify_group(
    class: &ClassTag,
    kmu: &KappaMuReport,
    inv: Option<&InvariantReport>,
    structural: &AdXiRestriction,
) -> Result<GroupClass, NotClassified> {
    if kmu.nullity == NullityKind::None {
        return Err(NotClassified::new("not a (kappa,mu)-space"));
    }
    match class {
        ClassTag::ContactMetric => {
            if kmu.h_rank == 0 {
                return Err(NotClassified::new("Sasakian"));
            }
            let value = defined_invariant(inv)?;
            let InvariantValue::Root(i) = value else {
                return Err(NotClassified::new("internal: I must be root-valued"));
            };
            if structural.nilpotent_nonzero() {
                // |I| = 1; the sign of 1 - mu/2 separates the two rows
                return Ok(if i.sign() > 0 {
                    classified(Group::E2, 1, "I = 1")
                } else {
                    classified(Group::E11, 1, "I = -1")
                });
            }
            if i.sign() > 0 && i.square() > Scalar::one() {
                Ok(classified(Group::Su2OrSo3, 1, "I > 1"))
            } else {
                Ok(classified(Group::Sl2OrO12, 1, "I < 1, I != -1"))
            }
        }
        ClassTag::AlmostCosymplectic => {
            if kmu.h_rank == 0 {
                return Err(NotClassified::new("cosymplectic"));
            }
            let value = defined_invariant(inv)?;
            let InvariantValue::Root(_) = value else {
                return Err(NotClassified::new("internal: C must be root-valued"));
            };
            if structural.nilpotent_nonzero() {
                return Ok(classified(Group::Heisenberg, 3, "|C| = 1"));
            }
            let c = match value {
                InvariantValue::Root(c) => c,
                InvariantValue::Rational(_) => unreachable!(),
            };
            if c.square() > Scalar::one() {
                Ok(classified(Group::E2, 3, "|C| > 1"))
            } else {
                Ok(classified(Group::E11, 3, "|C| < 1"))
            }
        }
        ClassTag::ParacontactMetric => {
            if kmu.h_rank == 0 {
                return Err(NotClassified::new("para-Sasakian"));
            }
            let kappa = kmu.kappa.clone().expect("nullity implies kappa");
            if kappa == Scalar::int(-1) {
                return Err(NotClassified::new("kappa = -1 (outside the paracontact table)"));
            }
            let value = defined_invariant(inv)?;
            let InvariantValue::Rational(e) = value else {
                return Err(NotClassified::new("internal: E must be rational"));
            };
            let (zero, one) = (Scalar::zero(), Scalar::one());
            if e == one {
                Ok(classified(Group::E2OrE11, 2, "E = 1"))
            } else if e == zero {
                if kappa > Scalar::int(-1) {
                    Ok(classified(Group::Unlisted, 2, "E = 0 and kappa > -1"))
                } else {
                    Ok(classified(Group::Unlisted, 2, "E = 0 and kappa < -1"))
                }
            } else if e > zero && e < one {
                Ok(classified(Group::Su2OrSo3, 2, "0 < E < 1"))
            } else {
                Ok(classified(Group::Sl2OrO12, 2, "E < 0 or E > 1"))
            }
        }
        ClassTag::AlmostParacosymplectic => {
            let kappa = kmu.kappa.clone().expect("nullity implies kappa");
            if kappa.is_zero() {
                return Err(if kmu.h_rank == 0 {
                    NotClassified::new("paracosymplectic-type (kappa = 0)")
                } else {
                    NotClassified::new("kappa = 0 (outside the paracosymplectic table)")
                });
            }
            let value = defined_invariant(inv)?;
            let InvariantValue::Rational(f) = value else {
                return Err(NotClassified::new("internal: F must be rational"));
            };
            let (zero, one) = (Scalar::zero(), Scalar::one());
            if f == one {
                Ok(classified(Group::Heisenberg, 4, "F = 1"))
            } else if f == zero {
                if kappa.sign() > 0 {
                    Ok(classified(Group::Unlisted, 4, "F = 0 and kappa > 0"))
                } else {
                    Ok(classified(Group::Unlisted, 4, "F = 0 and kappa < 0"))
                }
            } else if f > zero && f < one {
                Ok(classified(Group::E2, 4, "0 < F < 1"))
            } else {
                Ok(classified(Group::E11, 4, "F > 1 or F < 0"))
            }
        }
        ClassTag::AlmostKenmotsu { .. } | ClassTag::AlmostParaKenmotsu { .. } => {
            Err(NotClassified::new("Kenmotsu-type class not covered by the tables"))
        }
        ClassTag::Other { .. } => Err(NotClassified::new("class not covered by the tables")),
    }
}

fn defined_invariant<'a>(
    inv: Option<&'a InvariantReport>,
) -> Result<&'a InvariantValue, NotClassified> {
    match inv {
        Some(r) => match &r.value {
            Some(v) => Ok(v),
            None => Err(NotClassified::new(
                r.reason_undefined.clone().unwrap_or_else(|| "invariant undefined".into()),
            )),
        },
        None => Err(NotClassified::new("invariant unavailable")),
    }
}

/// All populated rows of the four tables, for sweep coverage reporting.
pub fn populated_rows() -> Vec<GroupClass> {
    vec![
        classified(Group::Su2OrSo3, 1, "I > 1"),
        classified(Group::Sl2OrO12, 1, "I < 1, I != -1"),
        classified(Group::E2, 1, "I = 1"),
        classified(Group::E11, 1, "I = -1"),
        classified(Group::Su2OrSo3, 2, "0 < E < 1"),
        classified(Group::Sl2OrO12, 2, "E < 0 or E > 1"),
        classified(Group::E2OrE11, 2, "E = 1"),
        classified(Group::E2, 3, "|C| > 1"),
        classified(Group::E11, 3, "|C| < 1"),
        classified(Group::Heisenberg, 3, "|C| = 1"),
        classified(Group::E2, 4, "0 < F < 1"),
        classified(Group::E11, 4, "F > 1 or F < 0"),
        classified(Group::Heisenberg, 4, "F = 1"),
    ]
}

#[allow(unused)]
fn _suppress_unused_mat3_warning(_: &Mat3) {}
