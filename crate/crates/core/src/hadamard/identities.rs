use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::exact::{GaussInt, QuadPoly, Substitution, Term};
use crate::scheme::Eigenmatrix;

use super::song::{song_eigenmatrix, SongParameters};
use super::{build_e_polynomials, HadamardError};

/// Parameter grid for the class-3 identities: a = 1, …, 8 in case (i).
pub const CLASS3_GRID: std::ops::RangeInclusive<i64> = 1..=8;

/// The polynomial identities behind the classification arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IdentityId {
    /// e₂ − e₁ = 4ib(X₁−X₂)(X₅−1)
    #[serde(rename = "01-7")]
    E2MinusE1,
    /// e₄ − e₃ = 4ib²(X₆−1)(X₃−X₄) after X₅ = 1, X₁ = −X₂ = ±i
    #[serde(rename = "01-8")]
    E4MinusE3,
    /// e₅ − e₆ = 4b²(X₆+1)(X₃+X₄) after X₅ = 1, X₁ = −X₂ = ±i
    #[serde(rename = "01-9")]
    E5MinusE6,
    /// e₁ − e₂ = bi(X₁−X₂)(r(X₁+X₂−2X₃) − 2X₃ + 2) for a class-3 matrix
    #[serde(rename = "class3-main")]
    Class3Main,
    /// 4(e₃ − e₁) = ((s−bi)X₁ + (s+bi)X₂ − 2s)((s+bi)X₁ + (s−bi)X₂ − 2s) after X₃ = 1
    #[serde(rename = "class3-spec")]
    Class3Spec,
}

impl IdentityId {
    pub const ALL: [IdentityId; 5] = [
        IdentityId::E2MinusE1,
        IdentityId::E4MinusE3,
        IdentityId::E5MinusE6,
        IdentityId::Class3Main,
        IdentityId::Class3Spec,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityId::E2MinusE1 => "01-7",
            IdentityId::E4MinusE3 => "01-8",
            IdentityId::E5MinusE6 => "01-9",
            IdentityId::Class3Main => "class3-main",
            IdentityId::Class3Spec => "class3-spec",
        }
    }

    pub fn uses_class6(&self) -> bool {
        matches!(
            self,
            IdentityId::E2MinusE1 | IdentityId::E4MinusE3 | IdentityId::E5MinusE6
        )
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| format!("unknown identity {s:?}"))
    }
}

/// The outcome of one instance (one specialization or one grid point).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityInstance {
    pub label: String,
    pub passed: bool,
    /// The first differing coefficient as (term, lhs, rhs).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<(String, GaussInt, GaussInt)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub passed: bool,
    pub instances: Vec<IdentityInstance>,
}

fn g(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re, im)
}

/// c + Σ coeffs[j] X_{j+1} in `nvars` variables.
fn lin(nvars: usize, c: GaussInt, coeffs: &[(usize, GaussInt)]) -> QuadPoly {
    let mut l = vec![GaussInt::zero(); nvars];
    for (j, v) in coeffs {
        l[j - 1] = v.clone();
    }
    QuadPoly::linear_form(c, l)
}

fn compare(
    label: String,
    lhs: &QuadPoly,
    rhs: &QuadPoly,
) -> Result<IdentityInstance, HadamardError> {
    let diff = lhs.first_difference(rhs)?;
    Ok(IdentityInstance {
        label,
        passed: diff.is_none(),
        residual: diff.map(|(t, a, b): (Term, _, _)| (t.to_string(), a, b)),
    })
}

/// The two concrete points X₅ = 1, X₁ = ±i, X₂ = ∓i.
fn zeta4_points() -> Vec<(String, BTreeMap<usize, Substitution>)> {
    [1i64, -1]
        .into_iter()
        .map(|eps| {
            let subs = BTreeMap::from([
                (5, Substitution::Value(GaussInt::one())),
                (1, Substitution::Value(g(0, eps))),
                (2, Substitution::Value(g(0, -eps))),
            ]);
            let label = if eps == 1 {
                "X1=i, X2=-i, X5=1"
            } else {
                "X1=-i, X2=i, X5=1"
            };
            (label.to_string(), subs)
        })
        .collect()
}

fn class6_b(p: &Eigenmatrix) -> Result<i64, HadamardError> {
    if p.size() != 7 {
        return Err(HadamardError::DimensionMismatch {
            expected: 7,
            got: p.size(),
        });
    }
    p.get(0, 3)
        .to_i64_pair()
        .map(|(b, _)| b)
        .ok_or(HadamardError::BadEigenmatrix)
}

/// Builds both sides of the identity as polynomials and compares them coefficient by
/// coefficient. `class6` is the eigenmatrix used by the class-6 identities; the class-3
/// identities run over [`CLASS3_GRID`] instead.
pub fn verify_identity(
    id: IdentityId,
    class6: &Eigenmatrix,
) -> Result<IdentityReport, HadamardError> {
    let instances = match id {
        IdentityId::E2MinusE1 => {
            let b = class6_b(class6)?;
            let e = build_e_polynomials(class6)?;
            let lhs = e[1].sub(&e[0])?;
            let rhs = lin(6, GaussInt::zero(), &[(1, g(1, 0)), (2, g(-1, 0))])
                .mul(&lin(6, g(-1, 0), &[(5, g(1, 0))]))?
                .scale(&g(0, 4 * b));
            vec![compare(format!("b={b}"), &lhs, &rhs)?]
        }
        IdentityId::E4MinusE3 | IdentityId::E5MinusE6 => {
            let b = class6_b(class6)?;
            let e = build_e_polynomials(class6)?;
            let (lhs, rhs) = if id == IdentityId::E4MinusE3 {
                let rhs = lin(6, g(-1, 0), &[(6, g(1, 0))])
                    .mul(&lin(6, GaussInt::zero(), &[(3, g(1, 0)), (4, g(-1, 0))]))?
                    .scale(&g(0, 4 * b * b));
                (e[3].sub(&e[2])?, rhs)
            } else {
                let rhs = lin(6, g(1, 0), &[(6, g(1, 0))])
                    .mul(&lin(6, GaussInt::zero(), &[(3, g(1, 0)), (4, g(1, 0))]))?
                    .scale(&g(4 * b * b, 0));
                (e[4].sub(&e[5])?, rhs)
            };
            zeta4_points()
                .into_iter()
                .map(|(label, subs)| {
                    compare(
                        format!("b={b}, {label}"),
                        &lhs.specialize(&subs)?,
                        &rhs.specialize(&subs)?,
                    )
                })
                .collect::<Result<_, _>>()?
        }
        IdentityId::Class3Main | IdentityId::Class3Spec => CLASS3_GRID
            .map(|a| class3_instance(id, a))
            .collect::<Result<_, _>>()?,
    };
    Ok(IdentityReport {
        id,
        passed: instances.iter().all(|i: &IdentityInstance| i.passed),
        instances,
    })
}

fn class3_instance(id: IdentityId, a: i64) -> Result<IdentityInstance, HadamardError> {
    let params = SongParameters::from_a(a)?;
    let b = params
        .b()
        .expect("case (i) with these valencies has b = 2a");
    let (r, s) = (params.r, params.s);
    let p = song_eigenmatrix(&params)?;
    let e = build_e_polynomials(&p)?;
    let label = format!("a={a} (r={r}, s={s}, b={b})");
    if id == IdentityId::Class3Main {
        let lhs = e[0].sub(&e[1])?;
        let x1_minus_x2 = lin(3, GaussInt::zero(), &[(1, g(1, 0)), (2, g(-1, 0))]);
        // r(X1 + X2 − 2X3) − 2X3 + 2
        let inner = lin(
            3,
            g(2, 0),
            &[(1, g(r, 0)), (2, g(r, 0)), (3, g(-2 * r - 2, 0))],
        );
        let rhs = x1_minus_x2.mul(&inner)?.scale(&g(0, b));
        compare(label, &lhs, &rhs)
    } else {
        let subs = BTreeMap::from([(3, Substitution::Value(GaussInt::one()))]);
        let lhs = e[2].sub(&e[0])?.scale(&g(4, 0)).specialize(&subs)?;
        let f1 = lin(3, g(-2 * s, 0), &[(1, g(s, -b)), (2, g(s, b))]);
        let f2 = lin(3, g(-2 * s, 0), &[(1, g(s, b)), (2, g(s, -b))]);
        compare(label, &lhs, &f1.mul(&f2)?)
    }
}
