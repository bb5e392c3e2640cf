//! Exact arithmetic in GF(q) for prime powers q <= 1024.
//!
//! Elements are carried as indices in `[0, q)`. For prime fields the index is
//! the residue mod p; for extension fields the base-p digits of the index are
//! the coefficients of the polynomial representative (digit i holds the
//! coefficient of x^i). Multiplication goes through precomputed log/antilog
//! tables so every operation is O(1) after construction.

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1024;

/// An element of a fixed `FieldSpec`, carried as its canonical index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct FieldElement(pub(crate) u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// GF(q) with q = p^k, fixed modulus and multiplication tables.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// k+1 coefficients of the monic irreducible modulus, lowest degree first.
    /// For k = 1 this is the trivial `[0, 1]` (x - 0 shifted: unused).
    modulus: Vec<u32>,
    /// exp[i] = index of g^i for the chosen primitive g, length 2(q-1).
    exp: Vec<u16>,
    /// log[a] defined for a != 0.
    log: Vec<u16>,
    /// Full addition table (q*q) for k > 1; empty for prime fields.
    add_table: Vec<u16>,
    /// Negation table, length q.
    neg_table: Vec<u16>,
}

fn factor_prime_power(q: u64) -> std::result::Result<(u32, u32), String> {
    if q < 2 {
        return Err(format!("{q} < 2"));
    }
    let mut m = q;
    let mut p = 0u64;
    for d in 2..=q {
        if d * d > m && p == 0 {
            p = m; // m is prime
            break;
        }
        if m % d == 0 {
            p = d;
            break;
        }
    }
    let mut k = 0u32;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m != 1 {
        return Err(format!("{q} = {p}^{k} * {m}"));
    }
    Ok((p as u32, k))
}

/// True for primes; trial division is plenty for the sizes we accept.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Polynomial helpers over GF(p), used only during construction.
// Coefficients are stored lowest degree first with no trailing zeros.

fn poly_trim(c: &mut Vec<u32>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        if factor != 0 {
            for i in 0..=db {
                let idx = dr - db + i;
                let sub = (factor as u64 * b[i] as u64 % p as u64) as u32;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is a small prime; Fermat is fine.
    mod_pow(a, p as u64 - 2, p)
}

fn mod_pow(b: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = b as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// A monic polynomial is irreducible over GF(p) iff it has no monic divisor
/// of degree 1..=deg/2. Degrees here are tiny, so trial division is exact
/// and fast.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        // All monic polynomials of degree d.
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                div.push((c % p as u64) as u32);
                c /= p as u64;
            }
            div.push(1);
            if poly_rem(poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree k
/// over GF(p), coefficients compared lowest degree first.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let k = k as usize;
    let mut coeffs = vec![0u32; k];
    loop {
        let mut poly = coeffs.clone();
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
        // Odometer with c_0 most significant (c_{k-1} varies fastest).
        let mut i = k;
        loop {
            assert!(i > 0, "no irreducible polynomial found (impossible)");
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

impl FieldSpec {
    /// Build GF(q), rejecting anything that is not a prime power <= 1024.
    pub fn new(q: u64) -> Result<FieldSpec> {
        let (p, k) = factor_prime_power(q)
            .map_err(|factorization| Error::NotPrimePower { q, factorization })?;
        if q > MAX_ORDER as u64 {
            return Err(Error::FieldTooLarge { q, max: MAX_ORDER as u64 });
        }
        let q = q as u32;
        let modulus = if k == 1 { vec![0, 1] } else { smallest_irreducible(p, k) };

        // Raw multiplication on index-encoded elements via the modulus.
        let raw_mul = |a: u32, b: u32| -> u32 {
            if k == 1 {
                return (a as u64 * b as u64 % p as u64) as u32;
            }
            let digits = |mut v: u32| -> Vec<u32> {
                let mut d = Vec::with_capacity(k as usize);
                for _ in 0..k {
                    d.push(v % p);
                    v /= p;
                }
                d
            };
            let da = digits(a);
            let db = digits(b);
            let mut prod = vec![0u32; 2 * k as usize - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                }
            }
            poly_trim(&mut prod);
            let rem = if prod.is_empty() { prod } else { poly_rem(&prod, &modulus, p) };
            let mut out = 0u32;
            for (i, &c) in rem.iter().enumerate() {
                out += c * p.pow(i as u32);
            }
            out
        };

        // Find a primitive element and fill the log/antilog tables.
        let mut exp = vec![0u16; 2 * (q as usize - 1)];
        let mut log = vec![0u16; q as usize];
        let mut found = false;
        for g in 2..q.max(3) {
            if g >= q {
                break;
            }
            // Powers of g cycle back to 1 after ord(g) steps.
            let mut acc = 1u32;
            let mut order = 0u32;
            loop {
                acc = raw_mul(acc, g);
                order += 1;
                if acc == 1 {
                    break;
                }
            }
            if order == q - 1 {
                let mut acc = 1u32;
                for i in 0..(q - 1) as usize {
                    exp[i] = acc as u16;
                    exp[i + (q as usize - 1)] = acc as u16;
                    log[acc as usize] = i as u16;
                    acc = raw_mul(acc, g);
                }
                found = true;
                break;
            }
        }
        // GF(2) has no g >= 2; its multiplicative group is trivial.
        if q == 2 {
            exp = vec![1, 1];
            log = vec![0, 0];
            found = true;
        }
        assert!(found, "no primitive element found for q = {q}");

        let neg_table: Vec<u16> = (0..q)
            .map(|a| {
                if k == 1 {
                    ((p - a % p) % p) as u16
                } else {
                    let mut v = a;
                    let mut out = 0u32;
                    let mut place = 1u32;
                    for _ in 0..k {
                        out += ((p - v % p) % p) * place;
                        v /= p;
                        place *= p;
                    }
                    out as u16
                }
            })
            .collect();

        let add_table: Vec<u16> = if k == 1 {
            Vec::new()
        } else {
            let mut t = vec![0u16; q as usize * q as usize];
            for a in 0..q {
                for b in 0..q {
                    let mut va = a;
                    let mut vb = b;
                    let mut out = 0u32;
                    let mut place = 1u32;
                    for _ in 0..k {
                        out += ((va % p + vb % p) % p) * place;
                        va /= p;
                        vb /= p;
                        place *= p;
                    }
                    t[(a * q + b) as usize] = out as u16;
                }
            }
            t
        };

        Ok(FieldSpec { p, k, q, modulus, exp, log, add_table, neg_table })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, lowest degree first (length k+1, monic).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The element with the given canonical index.
    #[inline]
    pub fn element(&self, index: u32) -> FieldElement {
        assert!(index < self.q, "index {index} out of range for GF({})", self.q);
        FieldElement(index as u16)
    }

    /// All q elements in index order, starting at 0.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|i| FieldElement(i as u16))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            let s = a.0 as u32 + b.0 as u32;
            FieldElement(if s >= self.p { (s - self.p) as u16 } else { s as u16 })
        } else {
            self.add_table[a.0 as usize * self.q as usize + b.0 as usize].into()
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg_table[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero { q: self.q });
        }
        let l = self.log[a.0 as usize] as usize;
        Ok(FieldElement(self.exp[(self.q as usize - 1 - l) % (self.q as usize - 1)]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e with e >= 0; 0^0 = 1.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let l = self.log[a.0 as usize] as u64;
        let idx = (l % (self.q as u64 - 1)) * (e % (self.q as u64 - 1)) % (self.q as u64 - 1);
        FieldElement(self.exp[idx as usize])
    }

    /// FNV-1a digest of the log table; pins the whole multiplicative
    /// structure for reproducibility checks.
    pub fn table_digest(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        for &v in &self.log {
            for byte in v.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
        h
    }
}

impl From<u16> for FieldElement {
    fn from(v: u16) -> Self {
        FieldElement(v)
    }
}
