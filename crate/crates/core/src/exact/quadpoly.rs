use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{CycInt, ExactError, GaussInt};

/// A polynomial of total degree at most two in `X_1 … X_d` with Gaussian-integer coefficients.
///
/// Variables are indexed from 1 to match the usual `X_j` naming; index 0 is the constant slot
/// and never a variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadPoly {
    nvars: usize,
    constant: GaussInt,
    linear: Vec<GaussInt>,
    // upper triangle, row-major: (j, k) with 1 ≤ j ≤ k ≤ d
    quad: Vec<GaussInt>,
}

/// A monomial of a [`QuadPoly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Term {
    Constant,
    Linear(usize),
    Quadratic(usize, usize),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Term::Constant => write!(f, "1"),
            Term::Linear(j) => write!(f, "X{j}"),
            Term::Quadratic(j, k) if j == k => write!(f, "X{j}^2"),
            Term::Quadratic(j, k) => write!(f, "X{j}X{k}"),
        }
    }
}

/// What to put in place of a variable when specializing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Substitution {
    Value(GaussInt),
    /// `X_j := ±X_var`
    Alias {
        var: usize,
        negate: bool,
    },
}

fn tri_index(nvars: usize, j: usize, k: usize) -> usize {
    let (j, k) = if j <= k { (j, k) } else { (k, j) };
    // rows j = 1..d hold d - j + 1 entries
    let before: usize = (1..j).map(|r| nvars - r + 1).sum();
    before + (k - j)
}

impl QuadPoly {
    pub fn zero(nvars: usize) -> Self {
        QuadPoly {
            nvars,
            constant: GaussInt::zero(),
            linear: vec![GaussInt::zero(); nvars],
            quad: vec![GaussInt::zero(); nvars * (nvars + 1) / 2],
        }
    }

    pub fn constant(nvars: usize, c: GaussInt) -> Self {
        let mut p = QuadPoly::zero(nvars);
        p.constant = c;
        p
    }

    /// The polynomial `X_j`.
    pub fn var(nvars: usize, j: usize) -> Result<Self, ExactError> {
        let mut p = QuadPoly::zero(nvars);
        p.set(Term::Linear(j), GaussInt::one())?;
        Ok(p)
    }

    /// `c + Σ l_j X_j` from a constant and the coefficients of `X_1 … X_d`.
    pub fn linear_form(constant: GaussInt, linear: Vec<GaussInt>) -> Self {
        let nvars = linear.len();
        QuadPoly {
            nvars,
            constant,
            linear,
            quad: vec![GaussInt::zero(); nvars * (nvars + 1) / 2],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn check_var(&self, j: usize) -> Result<(), ExactError> {
        if j == 0 || j > self.nvars {
            Err(ExactError::VariableOutOfRange {
                index: j,
                nvars: self.nvars,
            })
        } else {
            Ok(())
        }
    }

    pub fn coeff(&self, term: Term) -> Result<&GaussInt, ExactError> {
        match term {
            Term::Constant => Ok(&self.constant),
            Term::Linear(j) => {
                self.check_var(j)?;
                Ok(&self.linear[j - 1])
            }
            Term::Quadratic(j, k) => {
                self.check_var(j)?;
                self.check_var(k)?;
                Ok(&self.quad[tri_index(self.nvars, j, k)])
            }
        }
    }

    fn coeff_mut(&mut self, term: Term) -> Result<&mut GaussInt, ExactError> {
        match term {
            Term::Constant => Ok(&mut self.constant),
            Term::Linear(j) => {
                self.check_var(j)?;
                Ok(&mut self.linear[j - 1])
            }
            Term::Quadratic(j, k) => {
                self.check_var(j)?;
                self.check_var(k)?;
                let idx = tri_index(self.nvars, j, k);
                Ok(&mut self.quad[idx])
            }
        }
    }

    pub fn set(&mut self, term: Term, value: GaussInt) -> Result<(), ExactError> {
        *self.coeff_mut(term)? = value;
        Ok(())
    }

    pub fn add_to(&mut self, term: Term, value: &GaussInt) -> Result<(), ExactError> {
        *self.coeff_mut(term)? += value;
        Ok(())
    }

    /// All terms with their coefficients, zeros included, in a fixed order.
    pub fn terms(&self) -> impl Iterator<Item = (Term, &GaussInt)> + '_ {
        let d = self.nvars;
        let quad_terms = (1..=d).flat_map(move |j| (j..=d).map(move |k| Term::Quadratic(j, k)));
        std::iter::once(Term::Constant)
            .chain((1..=d).map(Term::Linear))
            .chain(quad_terms)
            .map(move |t| (t, self.coeff(t).expect("term in range")))
    }

    pub fn is_zero(&self) -> bool {
        self.terms().all(|(_, c)| c.is_zero())
    }

    pub fn is_linear(&self) -> bool {
        self.quad.iter().all(GaussInt::is_zero)
    }

    fn check_dims(&self, other: &QuadPoly) -> Result<(), ExactError> {
        if self.nvars != other.nvars {
            Err(ExactError::DimensionMismatch(self.nvars, other.nvars))
        } else {
            Ok(())
        }
    }

    fn zip_with(
        &self,
        other: &QuadPoly,
        f: impl Fn(&GaussInt, &GaussInt) -> GaussInt,
    ) -> Result<QuadPoly, ExactError> {
        self.check_dims(other)?;
        Ok(QuadPoly {
            nvars: self.nvars,
            constant: f(&self.constant, &other.constant),
            linear: self
                .linear
                .iter()
                .zip(&other.linear)
                .map(|(a, b)| f(a, b))
                .collect(),
            quad: self
                .quad
                .iter()
                .zip(&other.quad)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &QuadPoly) -> Result<QuadPoly, ExactError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QuadPoly) -> Result<QuadPoly, ExactError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &GaussInt) -> QuadPoly {
        QuadPoly {
            nvars: self.nvars,
            constant: &self.constant * c,
            linear: self.linear.iter().map(|a| a * c).collect(),
            quad: self.quad.iter().map(|a| a * c).collect(),
        }
    }

    /// Product of two polynomials whose degrees add up to at most two.
    pub fn mul(&self, other: &QuadPoly) -> Result<QuadPoly, ExactError> {
        self.check_dims(other)?;
        let (lin, any) = match (self.is_linear(), other.is_linear()) {
            (true, true) => (self, other),
            (false, true) if other.linear.iter().all(GaussInt::is_zero) => {
                return Ok(self.scale(&other.constant));
            }
            (true, false) if self.linear.iter().all(GaussInt::is_zero) => {
                return Ok(other.scale(&self.constant));
            }
            _ => return Err(ExactError::DegreeOverflow),
        };
        let d = self.nvars;
        let mut out = QuadPoly::zero(d);
        out.constant = &lin.constant * &any.constant;
        for j in 1..=d {
            let a = &lin.linear[j - 1];
            let b = &any.linear[j - 1];
            out.linear[j - 1] = &lin.constant * b + a * &any.constant;
        }
        for j in 1..=d {
            let a = &lin.linear[j - 1];
            if a.is_zero() {
                continue;
            }
            for k in 1..=d {
                let b = &any.linear[k - 1];
                if !b.is_zero() {
                    out.add_to(Term::Quadratic(j, k), &(a * b))?;
                }
            }
        }
        Ok(out)
    }

    /// Evaluates at `values[j-1] = X_j`. All values must share one cyclotomic order divisible by 4.
    pub fn eval(&self, values: &[CycInt]) -> Result<CycInt, ExactError> {
        if values.len() != self.nvars {
            return Err(ExactError::DimensionMismatch(self.nvars, values.len()));
        }
        let order = values.first().map(CycInt::order).unwrap_or(4);
        let embed = |g: &GaussInt| CycInt::from_gauss(order, g);
        let mut acc = embed(&self.constant)?;
        for (j, c) in self.linear.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + embed(c)? * &values[j];
            }
        }
        for j in 1..=self.nvars {
            for k in j..=self.nvars {
                let c = &self.quad[tri_index(self.nvars, j, k)];
                if !c.is_zero() {
                    acc = acc + embed(c)? * &values[j - 1] * &values[k - 1];
                }
            }
        }
        Ok(acc)
    }

    /// Substitutes values or signed aliases for some variables and collects terms.
    ///
    /// Substituted variables keep their index but no longer occur. Alias chains are followed;
    /// a chain that loops back on itself is an error.
    pub fn specialize(&self, subs: &BTreeMap<usize, Substitution>) -> Result<QuadPoly, ExactError> {
        // resolve each variable to (sign, Some(var)) or a constant
        enum Resolved {
            Var(GaussInt, usize),
            Const(GaussInt),
        }
        let resolve = |j: usize| -> Result<Resolved, ExactError> {
            let mut sign = GaussInt::one();
            let mut cur = j;
            let mut seen = vec![false; self.nvars + 1];
            loop {
                self.check_var(cur)?;
                if seen[cur] {
                    return Err(ExactError::InconsistentAlias(j));
                }
                seen[cur] = true;
                match subs.get(&cur) {
                    None => return Ok(Resolved::Var(sign, cur)),
                    Some(Substitution::Value(v)) => return Ok(Resolved::Const(&sign * v)),
                    Some(Substitution::Alias { var, negate }) => {
                        if *negate {
                            sign = -sign;
                        }
                        cur = *var;
                    }
                }
            }
        };
        for &j in subs.keys() {
            self.check_var(j)?;
        }
        let resolved: Vec<Resolved> = (1..=self.nvars).map(resolve).collect::<Result<_, _>>()?;
        let as_linear = |r: &Resolved| -> QuadPoly {
            let mut p = QuadPoly::zero(self.nvars);
            match r {
                Resolved::Var(s, v) => p.linear[v - 1] = s.clone(),
                Resolved::Const(c) => p.constant = c.clone(),
            }
            p
        };
        let mut out = QuadPoly::constant(self.nvars, self.constant.clone());
        for j in 1..=self.nvars {
            let c = &self.linear[j - 1];
            if !c.is_zero() {
                out = out.add(&as_linear(&resolved[j - 1]).scale(c))?;
            }
        }
        for j in 1..=self.nvars {
            for k in j..=self.nvars {
                let c = &self.quad[tri_index(self.nvars, j, k)];
                if c.is_zero() {
                    continue;
                }
                let prod = as_linear(&resolved[j - 1]).mul(&as_linear(&resolved[k - 1]))?;
                out = out.add(&prod.scale(c))?;
            }
        }
        Ok(out)
    }

    /// The first term (in [`QuadPoly::terms`] order) where `self` and `other` differ.
    pub fn first_difference(
        &self,
        other: &QuadPoly,
    ) -> Result<Option<(Term, GaussInt, GaussInt)>, ExactError> {
        self.check_dims(other)?;
        Ok(self
            .terms()
            .zip(other.terms())
            .find(|((_, a), (_, b))| a != b)
            .map(|((t, a), (_, b))| (t, a.clone(), b.clone())))
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match t {
                Term::Constant => write!(f, "({c})")?,
                _ => write!(f, "({c}){t}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
