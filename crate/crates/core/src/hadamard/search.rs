use rayon::prelude::*;
use serde::Serialize;

use crate::exact::lcm_order;
use crate::scheme::Eigenmatrix;

use super::{is_chm_gamma, HadamardError, HermitianConstraint, WeightVector};

/// The shape of a solution.
///
/// For the class-6 scheme:
///
/// ```text
/// W1(ε1, ε2):  w = (1, ε1 i, −ε1 i, ε2 i, −ε2 i, 1, 1)
/// W2(ε1, ε2):  w = (1, ε1 i, −ε1 i, ε2,    ε2,   1, −1)
/// ```
///
/// and for a class-3 scheme with pairing 1 ↔ 2, `ClassThree(ε)` is w = (1, ε i, −ε i, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "form")]
pub enum ButsonForm {
    W1 { eps1: i8, eps2: i8 },
    W2 { eps1: i8, eps2: i8 },
    ClassThree { eps: i8 },
    Other,
}

impl ButsonForm {
    pub fn label(&self) -> String {
        match *self {
            ButsonForm::W1 { eps1, eps2 } => format!("W1({eps1:+},{eps2:+})"),
            ButsonForm::W2 { eps1, eps2 } => format!("W2({eps1:+},{eps2:+})"),
            ButsonForm::ClassThree { eps } => format!("C3({eps:+})"),
            ButsonForm::Other => "other".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ButsonSolution {
    pub weights: WeightVector,
    #[serde(flatten)]
    pub form: ButsonForm,
}

fn sign(q: u32, unit: u32) -> Option<i8> {
    match q {
        x if x == unit => Some(1),
        x if x == (unit + 2) % 4 => Some(-1),
        _ => None,
    }
}

/// Matches `w` against the known solution shapes.
pub fn classify(w: &WeightVector) -> ButsonForm {
    let Some(q) = w.as_quaternary() else {
        return ButsonForm::Other;
    };
    // q holds powers of i: 0 ↦ 1, 1 ↦ i, 2 ↦ −1, 3 ↦ −i
    match *q.as_slice() {
        [0, a, b, c, d, 0, 0] if (a + b) % 4 == 0 && (c + d) % 4 == 0 => {
            match (sign(a, 1), sign(c, 1)) {
                (Some(eps1), Some(eps2)) => ButsonForm::W1 { eps1, eps2 },
                _ => ButsonForm::Other,
            }
        }
        [0, a, b, c, d, 0, 2] if (a + b) % 4 == 0 && c == d => match (sign(a, 1), sign(c, 0)) {
            (Some(eps1), Some(eps2)) => ButsonForm::W2 { eps1, eps2 },
            _ => ButsonForm::Other,
        },
        [0, a, b, 0] if (a + b) % 4 == 0 => match sign(a, 1) {
            Some(eps) => ButsonForm::ClassThree { eps },
            None => ButsonForm::Other,
        },
        _ => ButsonForm::Other,
    }
}

/// Exhaustive search over hermitian weight vectors of N-th roots of unity.
///
/// Each conjugate pair {i, i′} contributes N choices and each self-paired class the real roots
/// (±1). Candidates are visited in mixed-radix order of the free indices, first index slowest,
/// and the output keeps that order.
pub fn search_butson(p: &Eigenmatrix, order: u32) -> Result<Vec<ButsonSolution>, HadamardError> {
    lcm_order(order)?;
    let hc = HermitianConstraint::from_eigenmatrix(p)?;
    let free = hc.free_indices();
    let choices: Vec<Vec<u32>> = free
        .iter()
        .map(|&i| {
            if hc.pairing()[i] == i {
                (0..order).filter(|&x| (2 * x) % order == 0).collect()
            } else {
                (0..order).collect()
            }
        })
        .collect();
    let total: usize = choices.iter().map(Vec::len).product();
    let hits: Vec<Option<ButsonSolution>> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut picks = vec![(0usize, 0u32); free.len()];
            for (slot, (c, &i)) in choices.iter().zip(&free).enumerate().rev() {
                picks[slot] = (i, c[idx % c.len()]);
                idx /= c.len();
            }
            let w = hc.complete(order, &picks);
            match is_chm_gamma(p, &w) {
                Ok(true) => Ok(Some(ButsonSolution {
                    form: classify(&w),
                    weights: w,
                })),
                Ok(false) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(hits.into_iter().flatten().collect())
}
