//! Arithmetic in GF(2^kappa), kappa <= 64.
//!
//! Elements are stored as the bit pattern of their residue polynomial modulo a
//! fixed irreducible polynomial (the numerically least irreducible of each
//! degree). Fields up to 2^16 elements also carry log/antilog tables, which is
//! the fast path for everything the solver does.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Low bits (everything below `x^kappa`) of the least irreducible polynomial of
/// degree `kappa`, indexed by `kappa - 1`.
const LEAST_IRREDUCIBLE_LOW: [u64; 64] = [
    0x0, 0x3, 0x3, 0x3, 0x5, 0x3, 0x3, 0x1b, 0x3, 0x9, 0x5, 0x9, 0x1b, 0x21, 0x3, 0x2b, 0x9, 0x9, 0x27, 0x9, 0x5, 0x3,
    0x21, 0x1b, 0x9, 0x1b, 0x27, 0x3, 0x5, 0x3, 0x9, 0x8d, 0x4b, 0x1b, 0x5, 0x35, 0x3f, 0x63, 0x11, 0x39, 0x9, 0x27,
    0x59, 0x21, 0x1b, 0x3, 0x21, 0x2d, 0x71, 0x1d, 0x4b, 0x9, 0x47, 0x7d, 0x47, 0x95, 0x11, 0x63, 0x7b, 0x3, 0x27,
    0x69, 0x3, 0x1b,
];

const MAX_TABLE_KAPPA: u32 = 16;

/// An element of GF(2^kappa) in polynomial-residue representation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw bit pattern. The caller is responsible for it being below
    /// the field order; use [`FieldCtx::element`] for a checked constructor.
    #[inline]
    pub const fn new(bits: u64) -> Self {
        FieldElement(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

struct LogTables {
    log: Vec<u32>,
    /// Antilog table, doubled so that `log a + log b` never needs a reduction.
    exp: Vec<u64>,
    order_minus_one: u32,
}

/// The field GF(2^kappa) together with its modulus. Cheap to clone.
#[derive(Clone)]
pub struct FieldCtx {
    kappa: u32,
    modulus_low: u64,
    mask: u64,
    tables: Option<Arc<LogTables>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("kappa", &self.kappa)
            .field("modulus", &format_args!("{:#x}", self.modulus()))
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.kappa == other.kappa && self.modulus_low == other.modulus_low
    }
}

impl Eq for FieldCtx {}

/// `1 + ceil(log2 n)`.
pub fn kappa_for_order(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::invalid("field_for_order needs n >= 1"));
    }
    if n > 1 << 63 {
        return Err(Error::invalid(format!("n = {n} needs a field wider than 64 bits")));
    }
    let ceil_log2 = if n == 1 { 0 } else { 64 - (n - 1).leading_zeros() };
    Ok(1 + ceil_log2)
}

impl FieldCtx {
    /// The field GF(2^(1 + ceil(log2 n))) used for an n-vertex graph.
    pub fn for_order(n: u64) -> Result<Self> {
        Self::with_kappa(kappa_for_order(n)?)
    }

    pub fn with_kappa(kappa: u32) -> Result<Self> {
        if !(1..=64).contains(&kappa) {
            return Err(Error::invalid(format!("kappa must be in 1..=64, got {kappa}")));
        }
        Ok(Self::with_modulus_unchecked(
            kappa,
            LEAST_IRREDUCIBLE_LOW[kappa as usize - 1],
        ))
    }

    /// Builds the residue ring modulo `x^kappa + low` without checking
    /// irreducibility. Used by the irreducibility test itself.
    pub(crate) fn with_modulus_unchecked(kappa: u32, modulus_low: u64) -> Self {
        let mask = if kappa == 64 { u64::MAX } else { (1u64 << kappa) - 1 };
        let mut ctx = FieldCtx {
            kappa,
            modulus_low,
            mask,
            tables: None,
        };
        if kappa <= MAX_TABLE_KAPPA && modulus_low == LEAST_IRREDUCIBLE_LOW[kappa as usize - 1] {
            ctx.tables = Some(Arc::new(ctx.build_tables()));
        }
        ctx
    }

    #[inline]
    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    /// Number of elements, 2^kappa.
    pub fn size(&self) -> u128 {
        1u128 << self.kappa
    }

    /// The full modulus polynomial including its leading `x^kappa` term.
    pub fn modulus(&self) -> u128 {
        (1u128 << self.kappa) | self.modulus_low as u128
    }

    pub fn element(&self, bits: u64) -> Result<FieldElement> {
        if bits & !self.mask != 0 {
            return Err(Error::invalid(format!(
                "{bits:#x} is not an element of GF(2^{})",
                self.kappa
            )));
        }
        Ok(FieldElement(bits))
    }

    #[inline]
    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 & !self.mask == 0
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_clmul(a, b),
        }
    }

    /// Carry-less product reduced modulo the field polynomial; the table-free
    /// reference path.
    pub fn mul_clmul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut acc: u128 = 0;
        let wide = a.0 as u128;
        let mut rest = b.0;
        let mut shift = 0;
        while rest != 0 {
            if rest & 1 == 1 {
                acc ^= wide << shift;
            }
            rest >>= 1;
            shift += 1;
        }
        FieldElement(self.reduce(acc))
    }

    fn reduce(&self, mut value: u128) -> u64 {
        let kappa = self.kappa;
        let modulus = self.modulus();
        let mut top = 127 - value.leading_zeros().min(127) as i64;
        while value >> kappa != 0 {
            while (value >> top) & 1 == 0 {
                top -= 1;
            }
            value ^= modulus << (top as u32 - kappa);
        }
        value as u64
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, mut exp: u128) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while exp != 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `a^(2^kappa - 2)`.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero { kappa: self.kappa });
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                FieldElement(t.exp[((t.order_minus_one - l) % t.order_minus_one) as usize])
            }
            None => self.pow(a, self.size() - 2),
        })
    }

    /// Uniform sample over all 2^kappa elements.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen::<u64>() & self.mask)
    }

    /// `dst[i] += factor * src[i]`.
    #[inline]
    pub fn axpy(&self, dst: &mut [FieldElement], factor: FieldElement, src: &[FieldElement]) {
        debug_assert_eq!(dst.len(), src.len());
        if factor.is_zero() {
            return;
        }
        match &self.tables {
            Some(t) => {
                let lf = t.log[factor.0 as usize] as usize;
                for (d, s) in dst.iter_mut().zip(src) {
                    if s.0 != 0 {
                        d.0 ^= t.exp[lf + t.log[s.0 as usize] as usize];
                    }
                }
            }
            None => {
                for (d, s) in dst.iter_mut().zip(src) {
                    d.0 ^= self.mul_clmul(factor, *s).0;
                }
            }
        }
    }

    /// `row[i] *= factor`.
    pub fn scale(&self, row: &mut [FieldElement], factor: FieldElement) {
        for x in row.iter_mut() {
            *x = self.mul(*x, factor);
        }
    }

    fn build_tables(&self) -> LogTables {
        let q = 1usize << self.kappa;
        let order = q - 1;
        let generator = self.find_generator();
        let mut log = vec![0u32; q];
        let mut exp = vec![0u64; 2 * order.max(1)];
        let mut x = FieldElement::ONE;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            *slot = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_clmul(x, generator);
        }
        for i in order..exp.len() {
            exp[i] = exp[i - order];
        }
        LogTables {
            log,
            exp,
            order_minus_one: order as u32,
        }
    }

    fn find_generator(&self) -> FieldElement {
        let order = (1u128 << self.kappa) - 1;
        let factors = prime_factors(order as u64);
        (1..=self.mask)
            .map(FieldElement)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&p| self.pow_clmul(g, order / p as u128) != FieldElement::ONE)
            })
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn pow_clmul(&self, a: FieldElement, mut exp: u128) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while exp != 0 {
            if exp & 1 == 1 {
                acc = self.mul_clmul(acc, base);
            }
            base = self.mul_clmul(base, base);
            exp >>= 1;
        }
        acc
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn poly_degree(a: u128) -> i32 {
    127 - a.leading_zeros() as i32
}

fn poly_rem(mut a: u128, b: u128) -> u128 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Rabin's irreducibility test for `x^kappa + low` over GF(2).
pub fn is_irreducible(kappa: u32, low: u64) -> bool {
    if kappa == 0 || kappa > 64 {
        return false;
    }
    let ring = FieldCtx::with_modulus_unchecked(kappa, low);
    let modulus = ring.modulus();
    let x = FieldElement(ring.reduce(2));
    let frobenius = |times: u32| {
        let mut r = x;
        for _ in 0..times {
            r = ring.mul_clmul(r, r);
        }
        r
    };
    if frobenius(kappa) != x {
        return false;
    }
    prime_factors(kappa as u64).into_iter().all(|p| {
        let diff = (frobenius(kappa / p as u32).0 ^ x.0) as u128;
        poly_gcd(modulus, diff) == 1
    })
}
