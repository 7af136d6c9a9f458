//! The Galois ring GR(4, e) = (Z/4Z)\[x\]/(Φ) for odd e ≥ 3.
//!
//! Elements are packed two bits per coefficient into a `u32`: coefficient k of
//! `c_0 + c_1 ξ + … + c_{e−1} ξ^{e−1}` sits in bits 2k and 2k+1, so the packed
//! value doubles as an index into per-element tables of length 4^e.
//!
//! Everything the scheme construction needs (Teichmüller decomposition, Frobenius,
//! trace, characters, the subsets T, T₀, T₁, P, P₀, H, E) is tabulated once at
//! construction; afterwards the ring is immutable.

pub mod gf2;
mod set;
pub mod z4poly;

pub use set::ElementSet;

use serde::Serialize;
use thiserror::Error;

use crate::exact::GaussInt;

/// Largest supported extension degree (n = 4^11 ≈ 4.2M elements).
pub const MAX_DEGREE: u32 = 11;

const LO: u32 = 0x5555_5555;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("e must be odd (got {0})")]
    EvenDegree(u32),
    #[error("e must be at least 3 (got {0})")]
    DegreeTooSmall(u32),
    #[error("e must be at most {max} (got {0})", max = MAX_DEGREE)]
    DegreeTooLarge(u32),
    #[error("polynomial {mask:#x} has degree {got:?}, expected {expected}")]
    WrongDegree {
        mask: u64,
        expected: u32,
        got: Option<u32>,
    },
    #[error("polynomial {0:#x} is not primitive over GF(2)")]
    NotPrimitive(u64),
    #[error("lifted polynomial fails a consistency check: {0}")]
    LiftFailed(String),
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadCoefficients { expected: usize, got: usize },
    #[error("internal table check failed: {0}")]
    Internal(String),
}

/// A ring element in packed form. Only meaningful together with its [`GaloisRing`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RingElem(pub u32);

impl RingElem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The distinguished subsets of the ring, as membership masks.
#[derive(Clone, Debug)]
pub struct Subsets {
    /// Teichmüller units ξ^j.
    pub t: ElementSet,
    /// ξ^j with Tr(ζ^j) = 0.
    pub t0: ElementSet,
    /// ξ^j with Tr(ζ^j) = 1.
    pub t1: ElementSet,
    /// The maximal ideal 2R.
    pub p: ElementSet,
    /// 2T₀ ∪ {0}.
    pub p0: ElementSet,
    /// 1 + P₀.
    pub h: ElementSet,
    /// Principal units 1 + P.
    pub e: ElementSet,
}

/// The parameters identifying a ring, as written to JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingSummary {
    pub e: u32,
    pub b: u64,
    pub n: u64,
    /// φ over GF(2), coefficients from x⁰ upward.
    pub phi2: Vec<u8>,
    /// Φ over Z/4Z, coefficients from x⁰ upward.
    #[serde(rename = "Phi4")]
    pub phi4: Vec<u8>,
}

#[derive(Clone, Debug)]
pub struct GaloisRing {
    e: u32,
    n: usize,
    phi2: u64,
    phi4: Vec<u8>,
    // x^{e+k} mod Φ for 0 ≤ k < e−1
    reduction: Vec<RingElem>,
    // ξ^j for 0 ≤ j < 2^e − 1
    teich_exp: Vec<RingElem>,
    // residue mask -> Teichmüller representative (0 for residue 0)
    teich_of_residue: Vec<RingElem>,
    // residue mask -> j with ξ^j reducing to it (u32::MAX for residue 0)
    log_of_residue: Vec<u32>,
    trace: Vec<u8>,
    subsets: Subsets,
}

impl GaloisRing {
    /// Builds GR(4, e) over the given primitive polynomial `phi2` (a GF(2) bitmask,
    /// e.g. `0b1011` for x³ + x + 1), or over the smallest primitive polynomial of
    /// degree e when `phi2` is `None`.
    pub fn new(e: u32, phi2: Option<u64>) -> Result<Self, RingError> {
        if e.is_multiple_of(2) {
            return Err(RingError::EvenDegree(e));
        }
        if e < 3 {
            return Err(RingError::DegreeTooSmall(e));
        }
        if e > MAX_DEGREE {
            return Err(RingError::DegreeTooLarge(e));
        }
        let phi2 = match phi2 {
            Some(mask) => {
                let got = gf2::degree(mask);
                if got != Some(e) {
                    return Err(RingError::WrongDegree {
                        mask,
                        expected: e,
                        got,
                    });
                }
                if !gf2::is_primitive(mask, e) {
                    return Err(RingError::NotPrimitive(mask));
                }
                mask
            }
            None => {
                gf2::smallest_primitive(e).expect("primitive polynomials exist in every degree")
            }
        };

        let phi4 = z4poly::graeffe_lift(phi2);
        check_lift(phi2, &phi4, e)?;

        let n = 1usize << (2 * e);
        let mut ring = GaloisRing {
            e,
            n,
            phi2,
            phi4,
            reduction: Vec::new(),
            teich_exp: Vec::new(),
            teich_of_residue: Vec::new(),
            log_of_residue: Vec::new(),
            trace: Vec::new(),
            subsets: Subsets {
                t: ElementSet::new(n),
                t0: ElementSet::new(n),
                t1: ElementSet::new(n),
                p: ElementSet::new(n),
                p0: ElementSet::new(n),
                h: ElementSet::new(n),
                e: ElementSet::new(n),
            },
        };
        ring.build_reduction();
        ring.build_teichmuller()?;
        ring.build_trace()?;
        ring.build_subsets()?;
        Ok(ring)
    }

    fn build_reduction(&mut self) {
        let e = self.e as usize;
        // x^e = −(Φ − x^e)
        let mut cur: Vec<u8> = self.phi4[..e].iter().map(|&c| (4 - c) % 4).collect();
        let mut table = Vec::with_capacity(e.saturating_sub(1));
        for _ in 0..e.saturating_sub(1) {
            table.push(self.pack(&cur));
            // multiply by x
            let top = cur[e - 1];
            for k in (1..e).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            for (c, &p) in cur.iter_mut().zip(&self.phi4) {
                *c = (*c + top * (4 - p)) % 4;
            }
        }
        self.reduction = table;
    }

    fn build_teichmuller(&mut self) -> Result<(), RingError> {
        let q = (1usize << self.e) - 1;
        let xi = self.xi();
        let mut exp = Vec::with_capacity(q);
        let mut cur = self.one();
        let mut by_residue = vec![RingElem(0); q + 1];
        let mut log = vec![u32::MAX; q + 1];
        for j in 0..q {
            let r = self.residue(cur);
            if r == 0 || log[r] != u32::MAX {
                return Err(RingError::Internal(format!(
                    "ξ^{j} does not give a new residue; T is not a lift of K*"
                )));
            }
            log[r] = j as u32;
            by_residue[r] = cur;
            exp.push(cur);
            cur = self.mul(cur, xi);
        }
        if cur != self.one() {
            return Err(RingError::Internal("ξ^(2^e − 1) ≠ 1".into()));
        }
        self.teich_exp = exp;
        self.teich_of_residue = by_residue;
        self.log_of_residue = log;
        Ok(())
    }

    fn build_trace(&mut self) -> Result<(), RingError> {
        let mut trace = vec![0u8; self.n];
        for (idx, t) in trace.iter_mut().enumerate() {
            let a = RingElem(idx as u32);
            let mut acc = RingElem(0);
            let mut cur = a;
            for _ in 0..self.e {
                acc = self.add(acc, cur);
                cur = self.frobenius(cur);
            }
            if cur != a {
                return Err(RingError::Internal(format!(
                    "Frobenius^e moves element {idx:#x}"
                )));
            }
            if acc.0 >> 2 != 0 {
                return Err(RingError::Internal(format!(
                    "trace of {idx:#x} is not in Z/4Z"
                )));
            }
            *t = acc.0 as u8;
        }
        self.trace = trace;
        Ok(())
    }

    fn build_subsets(&mut self) -> Result<(), RingError> {
        let n = self.n;
        let mut s = Subsets {
            t: ElementSet::new(n),
            t0: ElementSet::new(n),
            t1: ElementSet::new(n),
            p: ElementSet::new(n),
            p0: ElementSet::new(n),
            h: ElementSet::new(n),
            e: ElementSet::new(n),
        };
        let mut zeta_j = 1u64;
        for (j, &t) in self.teich_exp.iter().enumerate() {
            // ζ^j in GF(2)[x]/(φ) is the residue of ξ^j
            if zeta_j != self.residue(t) as u64 {
                return Err(RingError::Internal(format!(
                    "residue of ξ^{j} is not ζ^{j}"
                )));
            }
            let tr = gf2::field_trace(zeta_j, self.phi2, self.e);
            if tr != self.trace(t) % 2 {
                return Err(RingError::Internal(format!(
                    "Tr(ζ^{j}) disagrees with S(ξ^{j}) mod 2"
                )));
            }
            s.t.insert(t);
            let two_t = self.double(t);
            s.p.insert(two_t);
            if tr == 0 {
                s.t0.insert(t);
                s.p0.insert(two_t);
            } else {
                s.t1.insert(t);
            }
            zeta_j = gf2::mulmod(zeta_j, 0b10, self.phi2, self.e);
        }
        s.p.insert(self.zero());
        s.p0.insert(self.zero());
        let one = self.one();
        for a in s.p.iter() {
            s.e.insert(self.add(one, a));
        }
        for a in s.p0.iter() {
            s.h.insert(self.add(one, a));
        }
        self.subsets = s;
        Ok(())
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// b = 2^{e−1} = |P₀| = |H|.
    pub fn b(&self) -> u64 {
        1u64 << (self.e - 1)
    }

    /// The ring order 4^e.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The primitive GF(2) polynomial as a bitmask.
    pub fn phi2(&self) -> u64 {
        self.phi2
    }

    /// Coefficients of Φ over Z/4Z from x⁰ upward.
    pub fn phi4(&self) -> &[u8] {
        &self.phi4
    }

    pub fn summary(&self) -> RingSummary {
        RingSummary {
            e: self.e,
            b: self.b(),
            n: self.n as u64,
            phi2: z4poly::from_gf2(self.phi2),
            phi4: self.phi4.clone(),
        }
    }

    pub fn subsets(&self) -> &Subsets {
        &self.subsets
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElem> {
        (0..self.n as u32).map(RingElem)
    }

    pub fn zero(&self) -> RingElem {
        RingElem(0)
    }

    pub fn one(&self) -> RingElem {
        RingElem(1)
    }

    /// The image ξ of x.
    pub fn xi(&self) -> RingElem {
        RingElem(1 << 2)
    }

    /// The constant `c mod 4`.
    pub fn from_int(&self, c: i64) -> RingElem {
        RingElem(c.rem_euclid(4) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u8]) -> Result<RingElem, RingError> {
        if coeffs.len() != self.e as usize {
            return Err(RingError::BadCoefficients {
                expected: self.e as usize,
                got: coeffs.len(),
            });
        }
        Ok(self.pack(coeffs))
    }

    fn pack(&self, coeffs: &[u8]) -> RingElem {
        RingElem(
            coeffs
                .iter()
                .enumerate()
                .fold(0u32, |acc, (k, &c)| acc | (((c % 4) as u32) << (2 * k))),
        )
    }

    pub fn coeffs(&self, a: RingElem) -> Vec<u8> {
        (0..self.e).map(|k| ((a.0 >> (2 * k)) & 3) as u8).collect()
    }

    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        let (alo, blo) = (a.0 & LO, b.0 & LO);
        let (ahi, bhi) = ((a.0 >> 1) & LO, (b.0 >> 1) & LO);
        let lo = alo ^ blo;
        let hi = ahi ^ bhi ^ (alo & blo);
        RingElem(lo | (hi << 1))
    }

    pub fn neg(&self, a: RingElem) -> RingElem {
        let lo = a.0 & LO;
        let hi = (a.0 >> 1) & LO;
        RingElem(lo | ((hi ^ lo) << 1))
    }

    pub fn sub(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add(a, self.neg(b))
    }

    /// 2a.
    pub fn double(&self, a: RingElem) -> RingElem {
        RingElem((a.0 & LO) << 1)
    }

    fn scalar(&self, c: u8, a: RingElem) -> RingElem {
        match c & 3 {
            0 => RingElem(0),
            1 => a,
            2 => self.double(a),
            _ => self.neg(a),
        }
    }

    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        let e = self.e as usize;
        let mut raw = [0u32; 2 * MAX_DEGREE as usize];
        for i in 0..e {
            let ai = (a.0 >> (2 * i)) & 3;
            if ai == 0 {
                continue;
            }
            for j in 0..e {
                raw[i + j] += ai * ((b.0 >> (2 * j)) & 3);
            }
        }
        let mut acc = 0u32;
        for (k, r) in raw.iter().enumerate().take(e) {
            acc |= (r & 3) << (2 * k);
        }
        let mut out = RingElem(acc);
        for (r, &red) in raw[e..2 * e - 1].iter().zip(&self.reduction) {
            let c = (r & 3) as u8;
            if c != 0 {
                out = self.add(out, self.scalar(c, red));
            }
        }
        out
    }

    pub fn pow(&self, a: RingElem, mut k: u64) -> RingElem {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Image in K = R/P as a GF(2) bitmask.
    pub fn residue(&self, a: RingElem) -> usize {
        (0..self.e).fold(0usize, |acc, k| {
            acc | ((((a.0 >> (2 * k)) & 1) as usize) << k)
        })
    }

    pub fn is_unit(&self, a: RingElem) -> bool {
        self.residue(a) != 0
    }

    /// ξ^j.
    pub fn teichmuller(&self, j: u64) -> RingElem {
        self.teich_exp[(j % self.teich_exp.len() as u64) as usize]
    }

    /// j with ξ^j = a, for a ∈ T.
    pub fn teich_log(&self, a: RingElem) -> Option<u32> {
        let r = self.residue(a);
        (r != 0 && self.teich_of_residue[r] == a).then(|| self.log_of_residue[r])
    }

    /// The unique (α₀, α₁) ∈ (T ∪ {0})² with α = α₀ + 2α₁.
    pub fn decompose(&self, a: RingElem) -> (RingElem, RingElem) {
        let a0 = self.teich_of_residue[self.residue(a)];
        let diff = self.sub(a, a0);
        // diff ∈ 2R: its high bits hold the residue of (a − a0)/2
        let a1 = self.teich_of_residue[self.residue(RingElem(diff.0 >> 1))];
        (a0, a1)
    }

    pub fn compose(&self, a0: RingElem, a1: RingElem) -> RingElem {
        self.add(a0, self.double(a1))
    }

    fn teich_square(&self, t: RingElem) -> RingElem {
        match self.teich_log(t) {
            None => RingElem(0),
            Some(j) => self.teichmuller(2 * j as u64),
        }
    }

    /// α^f = α₀² + 2α₁².
    pub fn frobenius(&self, a: RingElem) -> RingElem {
        let (a0, a1) = self.decompose(a);
        self.compose(self.teich_square(a0), self.teich_square(a1))
    }

    /// S(α) = α + α^f + … + α^{f^{e−1}} ∈ Z/4Z.
    pub fn trace(&self, a: RingElem) -> u8 {
        self.trace[a.index()]
    }

    /// k ∈ Z/4Z with χ(α) = i^k, where χ(α) = i^{e·S(α)}.
    pub fn chi_exponent(&self, a: RingElem) -> u8 {
        ((self.e as u8 % 4) * self.trace(a)) % 4
    }

    pub fn chi(&self, a: RingElem) -> GaussInt {
        GaussInt::i_pow(self.chi_exponent(a) as i64)
    }

    /// The additive character β ↦ χ(αβ), precomputed for fast evaluation.
    pub fn character(&self, alpha: RingElem) -> Character {
        let mut traces = [0u8; MAX_DEGREE as usize];
        let mut basis = self.one();
        for t in traces.iter_mut().take(self.e as usize) {
            *t = self.trace(self.mul(alpha, basis));
            basis = self.mul(basis, self.xi());
        }
        Character { e: self.e, traces }
    }

    /// λ_α(A) = Σ_{β∈A} χ(αβ).
    pub fn lambda_sum(&self, alpha: RingElem, set: &ElementSet) -> GaussInt {
        self.character(alpha).sum_over(set)
    }

    /// Sort key placing 0 first, then elements ordered by the Teichmüller logs of
    /// their 2-adic digits (α₀ first).
    pub fn canonical_key(&self, a: RingElem) -> (u32, u32) {
        let (a0, a1) = self.decompose(a);
        let rank = |t: RingElem| self.teich_log(t).map_or(0, |j| j + 1);
        (rank(a0), rank(a1))
    }

    /// `{s·x : x ∈ set}`.
    pub fn scale_set(&self, s: RingElem, set: &ElementSet) -> ElementSet {
        let mut out = ElementSet::new(self.n);
        for x in set.iter() {
            out.insert(self.mul(s, x));
        }
        out
    }

    /// `{−x : x ∈ set}`.
    pub fn negate_set(&self, set: &ElementSet) -> ElementSet {
        let mut out = ElementSet::new(self.n);
        for x in set.iter() {
            out.insert(self.neg(x));
        }
        out
    }

    /// `{a·b : a ∈ lhs, b ∈ rhs}`.
    pub fn product_set(&self, lhs: &ElementSet, rhs: &ElementSet) -> ElementSet {
        let mut out = ElementSet::new(self.n);
        for a in lhs.iter() {
            for b in rhs.iter() {
                out.insert(self.mul(a, b));
            }
        }
        out
    }
}

fn check_lift(phi2: u64, phi4: &[u8], e: u32) -> Result<(), RingError> {
    if phi4.len() != e as usize + 1 || phi4[e as usize] != 1 {
        return Err(RingError::LiftFailed("not monic of degree e".into()));
    }
    if z4poly::from_gf2(phi2)
        .iter()
        .zip(phi4)
        .any(|(&a, &b)| a != b % 2)
    {
        return Err(RingError::LiftFailed("not congruent to φ mod 2".into()));
    }
    let q = (1usize << e) - 1;
    let mut target = vec![0u8; q + 1];
    target[0] = 3;
    target[q] = 1;
    if z4poly::rem_monic(&target, phi4) != vec![0] {
        return Err(RingError::LiftFailed(
            "does not divide x^(2^e−1) − 1".into(),
        ));
    }
    Ok(())
}

/// β ↦ χ(αβ) for a fixed α, evaluated through A-linearity of the trace:
/// S(αβ) = Σ_k β_k S(αξ^k).
#[derive(Clone, Copy, Debug)]
pub struct Character {
    e: u32,
    traces: [u8; MAX_DEGREE as usize],
}

impl Character {
    /// k with χ(αβ) = i^k.
    pub fn exponent(&self, beta: RingElem) -> u8 {
        let mut s = 0u32;
        let mut bits = beta.0;
        for &t in &self.traces[..self.e as usize] {
            s += (bits & 3) * t as u32;
            bits >>= 2;
        }
        ((s * self.e) % 4) as u8
    }

    pub fn sum_over(&self, set: &ElementSet) -> GaussInt {
        let mut counts = [0i64; 4];
        for beta in set.iter() {
            counts[self.exponent(beta) as usize] += 1;
        }
        GaussInt::new(counts[0] - counts[2], counts[1] - counts[3])
    }
}

#[cfg(test)]
mod tests;
