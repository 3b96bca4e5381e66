//! Arithmetic context for the finite fields F_p and F_q = F_p[x]/(m(x)).
//!
//! Elements are stored as `u64` indices. For a prime field the index is the
//! residue itself; for an extension of degree α the index encodes the
//! coefficient vector of the reduced representative in base p, so that the
//! indices enumerate exactly the q = p^α field elements.

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin primality test, valid for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This base set decides primality for every n < 2^64.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Prime factors of `n`, ascending, without multiplicity. Trial division;
/// the moduli in play are desk-scale.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d as u128 * d as u128 <= n as u128 {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Arithmetic context for F_q with q = p^α. `modulus` is the monic
/// irreducible polynomial m(x), little-endian, of degree α; for α = 1 it is
/// `x` itself and indices are plain residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqCtx {
    p: u64,
    modulus: Vec<u64>,
}

impl FqCtx {
    /// Context for the prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FqCtx { p, modulus: vec![0, 1] })
    }

    /// Context for F_p[x]/(m(x)). Verifies that `modulus` is monic of degree
    /// ≥ 1 and irreducible over F_p.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::DegenerateModulus("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::DegenerateModulus("coefficient out of range".into()));
        }
        let alpha = modulus.len() - 1;
        if alpha > 1 && !poly_is_irreducible(p, &modulus) {
            return Err(Error::NotIrreducible);
        }
        // q must fit an index space; keep q < 2^63.
        let mut q: u128 = 1;
        for _ in 0..alpha {
            q *= p as u128;
            if q >= 1u128 << 63 {
                return Err(Error::DegenerateModulus("q does not fit 63 bits".into()));
            }
        }
        Ok(FqCtx { p, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn alpha(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.alpha() == 1
    }

    /// Field order q = p^α.
    pub fn q(&self) -> u64 {
        let mut q = 1u64;
        for _ in 0..self.alpha() {
            q *= self.p;
        }
        q
    }

    fn decode(&self, mut idx: u64) -> Vec<u64> {
        let mut coeffs = vec![0u64; self.alpha()];
        for c in coeffs.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        coeffs
    }

    fn encode(&self, coeffs: &[u64]) -> u64 {
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.is_prime_field() {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (x, y) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = x
            .iter()
            .zip(&y)
            .map(|(&u, &v)| {
                let s = u + v;
                if s >= self.p { s - self.p } else { s }
            })
            .collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.is_prime_field() {
            return if a == 0 { 0 } else { self.p - a };
        }
        let x = self.decode(a);
        let neg: Vec<u64> = x.iter().map(|&u| if u == 0 { 0 } else { self.p - u }).collect();
        self.encode(&neg)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.is_prime_field() {
            return mul_mod(a, b, self.p);
        }
        let (x, y) = (self.decode(a), self.decode(b));
        let alpha = self.alpha();
        let mut prod = vec![0u64; 2 * alpha - 1];
        for (i, &u) in x.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(u, v, self.p)) % self.p;
            }
        }
        // reduce modulo m(x): x^alpha = -(m - x^alpha)
        for i in (alpha..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..alpha {
                let t = mul_mod(c, self.modulus[j], self.p);
                let cur = prod[i - alpha + j];
                prod[i - alpha + j] = if cur >= t { cur - t } else { cur + self.p - t };
            }
        }
        prod.truncate(alpha);
        self.encode(&prod)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.is_prime_field() {
            return Ok(pow_mod(a, self.p - 2, self.p));
        }
        // a^(q-2) = a^{-1} in F_q
        let mut exp = self.q() - 2;
        let mut base = a;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        Ok(acc)
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    /// Canonical residue for an integer literal (also accepts negatives via i128).
    pub fn from_int(&self, n: i128) -> u64 {
        let p = self.p as i128;
        let r = ((n % p) + p) % p;
        r as u64
    }
}

fn poly_deg(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn poly_mod_p(p: u64, f: &[u64], g: &[u64]) -> Vec<u64> {
    // remainder of f by monic-leading g over F_p
    let gd = poly_deg(g).expect("nonzero divisor");
    let lead_inv = pow_mod(g[gd], p - 2, p);
    let mut r: Vec<u64> = f.to_vec();
    while let Some(rd) = poly_deg(&r) {
        if rd < gd {
            break;
        }
        let c = mul_mod(r[rd], lead_inv, p);
        for j in 0..=gd {
            let t = mul_mod(c, g[j], p);
            let cur = r[rd - gd + j];
            r[rd - gd + j] = if cur >= t { cur - t } else { cur + p - t };
        }
    }
    r.truncate(poly_deg(&r).map_or(0, |d| d + 1));
    r
}

/// Irreducibility over F_p by trial division against every monic polynomial
/// of degree at most deg(f)/2. Exponential in the degree, which is fine at
/// the degrees this crate ever sees.
pub fn poly_is_irreducible(p: u64, f: &[u64]) -> bool {
    let d = match poly_deg(f) {
        Some(d) => d,
        None => return false,
    };
    if d == 1 {
        return true;
    }
    for dd in 1..=d / 2 {
        // enumerate monic polynomials of degree dd
        let mut count = 1u128;
        for _ in 0..dd {
            count *= p as u128;
        }
        for idx in 0..count {
            let mut g = vec![0u64; dd + 1];
            let mut k = idx;
            for c in g.iter_mut().take(dd) {
                *c = (k % p as u128) as u64;
                k /= p as u128;
            }
            g[dd] = 1;
            if poly_mod_p(p, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree α over
/// F_p, where candidates are ordered by the base-p integer encoding of their
/// non-leading coefficients.
pub fn irreducible_poly(p: u64, alpha: usize) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if alpha == 0 {
        return Err(Error::DegenerateModulus("degree must be >= 1".into()));
    }
    if alpha == 1 {
        return Ok(vec![0, 1]); // x
    }
    let mut count = 1u128;
    for _ in 0..alpha {
        count *= p as u128;
    }
    for idx in 0..count {
        let mut f = vec![0u64; alpha + 1];
        let mut k = idx;
        for c in f.iter_mut().take(alpha) {
            *c = (k % p as u128) as u64;
            k /= p as u128;
        }
        f[alpha] = 1;
        if poly_is_irreducible(p, &f) {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

/// Smallest generator of F_p^*, verified by checking g^((p-1)/ℓ) ≠ 1 for
/// every prime ℓ dividing p − 1.
pub fn find_generator(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 3 {
        return Err(Error::PreconditionFailed("generator search needs p >= 3".into()));
    }
    let factors = prime_factors(p - 1);
    'cand: for g in 2..p {
        for &l in &factors {
            if pow_mod(g, (p - 1) / l, p) == 1 {
                continue 'cand;
            }
        }
        return Ok(g);
    }
    unreachable!("F_p^* is cyclic for prime p")
}
