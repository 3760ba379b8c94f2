//! Arithmetic in small finite fields F_q, q = p^e <= 64.
//!
//! Elements are canonical representatives in 0..q: the base-p digit string of
//! the representative, read low digit first, is the coefficient vector of the
//! element as a polynomial over F_p modulo a fixed irreducible. All operations
//! are table-driven after construction, so they are exact and allocation-free.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u32),
    #[error("field size {0} exceeds the supported maximum of 64")]
    UnsupportedSize(u32),
    #[error("inversion of zero")]
    ZeroInversion,
    #[error("no element of order {t}: {t} does not divide q-1 = {units}")]
    NoElementOfOrder { t: u32, units: u32 },
    #[error("representative {rep} out of range for field of size {q}")]
    RepOutOfRange { rep: u32, q: u32 },
}

/// An element of a particular `FieldSpec`, stored as its canonical
/// representative. Elements carry no field pointer; mixing fields is the
/// caller's bug and is caught only by debug assertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u8);

impl FieldElement {
    pub fn rep(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field F_q with q = p^e, q <= 64.
///
/// Construction finds the lexicographically smallest monic irreducible modulus
/// of degree e (coefficients compared low degree first) and tabulates all four
/// arithmetic operations.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus coefficients, constant term first, length e+1.
    modulus: Vec<u32>,
    add_t: Vec<u8>,
    mul_t: Vec<u8>,
    neg_t: Vec<u8>,
    inv_t: Vec<u8>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q into (p, e) with q = p^e and p prime, if possible.
fn prime_power_split(q: u32) -> Option<(u32, u32)> {
    for p in 2..=q {
        if !is_prime(p) {
            continue;
        }
        if q % p != 0 {
            continue;
        }
        let mut rest = q;
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        return if rest == 1 { Some((p, e)) } else { None };
    }
    None
}

/// Polynomials over F_p as coefficient vectors, constant term first.
/// Internal helper for modulus selection and multiplication tables.
mod poly {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of a modulo the monic polynomial m.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        debug_assert_eq!(*m.last().unwrap(), 1);
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + p - (lead * mi) % p) % p;
            }
            trim(&mut r);
        }
        r
    }
}

/// True if the monic polynomial m (constant first) has no monic divisor of
/// degree 1..=deg/2. Exhaustive trial division; fine for the sizes here.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        // all monic candidates of degree d
        let mut counter = vec![0u32; d];
        loop {
            let mut cand = counter.clone();
            cand.push(1);
            if poly::rem(m, &cand, p).is_empty() {
                return false;
            }
            // odometer over the low coefficients
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                counter[i] += 1;
                if counter[i] < p {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree e over F_p, with
/// coefficient vectors compared low degree first.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    if e == 1 {
        return vec![0, 1]; // x itself: reduction mod p
    }
    let mut low = vec![0u32; e];
    // enumerate low-coefficient vectors in lexicographic order, index 0 most
    // significant, by counting with index e-1 fastest
    loop {
        let mut cand = low.clone();
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
        let mut i = e;
        loop {
            debug_assert!(i > 0, "no irreducible of degree {e} over F_{p}");
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
        }
    }
}

impl FieldSpec {
    pub fn new(q: u32) -> Result<FieldSpec, FieldError> {
        if q > 64 {
            return Err(FieldError::UnsupportedSize(q));
        }
        let (p, e) = prime_power_split(q).ok_or(FieldError::NotAPrimePower(q))?;
        let modulus = smallest_irreducible(p, e);

        let qs = q as usize;
        let coeffs = |rep: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            let mut r = rep;
            for _ in 0..e {
                v.push(r % p);
                r /= p;
            }
            v
        };
        let rep_of = |c: &[u32]| -> u32 {
            let mut r = 0;
            for &ci in c.iter().rev() {
                r = r * p + ci;
            }
            r
        };

        let mut add_t = vec![0u8; qs * qs];
        let mut mul_t = vec![0u8; qs * qs];
        let mut neg_t = vec![0u8; qs];
        for a in 0..q {
            let ca = coeffs(a);
            let cn: Vec<u32> = ca.iter().map(|&x| (p - x) % p).collect();
            neg_t[a as usize] = rep_of(&cn) as u8;
            for b in 0..q {
                let cb = coeffs(b);
                let cs: Vec<u32> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % p).collect();
                add_t[(a * q + b) as usize] = rep_of(&cs) as u8;
                let mut prod = poly::mul(&ca, &cb, p);
                prod = poly::rem(&prod, &modulus, p);
                prod.resize(e as usize, 0);
                mul_t[(a * q + b) as usize] = rep_of(&prod) as u8;
            }
        }
        let mut inv_t = vec![0u8; qs];
        for a in 1..q {
            let b = (1..q)
                .find(|&b| mul_t[(a * q + b) as usize] == 1)
                .expect("every nonzero element has an inverse");
            inv_t[a as usize] = b as u8;
        }

        Ok(FieldSpec { p, e, q, modulus, add_t, mul_t, neg_t, inv_t })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.e
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, monic of degree e.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        debug_assert!(self.q >= 2);
        FieldElement(1)
    }

    pub fn element(&self, rep: u32) -> Result<FieldElement, FieldError> {
        if rep < self.q {
            Ok(FieldElement(rep as u8))
        } else {
            Err(FieldError::RepOutOfRange { rep, q: self.q })
        }
    }

    /// All q-1 nonzero elements in increasing canonical representative.
    pub fn units(&self) -> Vec<FieldElement> {
        (1..self.q).map(|r| FieldElement(r as u8)).collect()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.rep() < self.q && b.rep() < self.q);
        FieldElement(self.add_t[(a.rep() * self.q + b.rep()) as usize])
    }

    /// Raw addition table, indexed `a.rep() * q + b.rep()`, for inner loops
    /// that cannot afford per-element method calls.
    pub(crate) fn add_table(&self) -> &[u8] {
        &self.add_t
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.rep() < self.q && b.rep() < self.q);
        FieldElement(self.mul_t[(a.rep() * self.q + b.rep()) as usize])
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg_t[a.rep() as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInversion);
        }
        Ok(FieldElement(self.inv_t[a.rep() as usize]))
    }

    /// a^e by square and multiply; the exponent is reduced mod q-1 for
    /// nonzero bases, and 0^0 = 1.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.is_zero() {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let mut e = e % (self.q as u64 - 1);
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u32, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInversion);
        }
        let mut x = a;
        let mut ord = 1;
        while x != self.one() {
            x = self.mul(x, a);
            ord += 1;
        }
        Ok(ord)
    }

    /// The element of exact multiplicative order t with the smallest canonical
    /// representative. Exists iff t divides q-1 (the unit group is cyclic).
    pub fn element_of_order(&self, t: u32) -> Result<FieldElement, FieldError> {
        let units = self.q - 1;
        if t == 0 || units % t != 0 {
            return Err(FieldError::NoElementOfOrder { t, units });
        }
        for r in 1..self.q {
            let a = FieldElement(r as u8);
            if self.multiplicative_order(a)? == t {
                return Ok(a);
            }
        }
        unreachable!("cyclic unit group has an element of every dividing order")
    }
}
