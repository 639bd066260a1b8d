//! Dense polynomials in `W, Y, Z` over GF(2^kappa), truncated at per-variable
//! exponent caps. Products drop every term whose exponent exceeds a cap, which
//! is exact whenever the caller's degree bounds stay within the caps.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2k::{FieldCtx, FieldElement};

/// Maximum retained exponent of `W`, `Y` and `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Caps {
    pub w: usize,
    pub y: usize,
    pub z: usize,
}

impl Caps {
    pub const fn new(w: usize, y: usize, z: usize) -> Self {
        Caps { w, y, z }
    }

    pub const fn uniform(cap: usize) -> Self {
        Caps { w: cap, y: cap, z: cap }
    }

    fn len(self) -> usize {
        (self.w + 1) * (self.y + 1) * (self.z + 1)
    }

    fn contains(self, dw: usize, dy: usize, dz: usize) -> bool {
        dw <= self.w && dy <= self.y && dz <= self.z
    }
}

#[derive(Clone, PartialEq)]
pub struct TriPoly {
    ctx: FieldCtx,
    caps: Caps,
    /// Row-major over `(dw, dy, dz)`, `dz` fastest.
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|((dw, dy, dz), c)| format!("{c}*W^{dw}Y^{dy}Z^{dz}"))
            .collect();
        if terms.is_empty() {
            write!(f, "TriPoly(0)")
        } else {
            write!(f, "TriPoly({})", terms.join(" + "))
        }
    }
}

impl TriPoly {
    pub fn zero(ctx: &FieldCtx, caps: Caps) -> Self {
        TriPoly {
            ctx: ctx.clone(),
            caps,
            coeffs: vec![FieldElement::ZERO; caps.len()],
        }
    }

    pub fn one(ctx: &FieldCtx, caps: Caps) -> Self {
        let mut p = Self::zero(ctx, caps);
        p.coeffs[0] = FieldElement::ONE;
        p
    }

    pub fn constant(ctx: &FieldCtx, caps: Caps, c: FieldElement) -> Self {
        let mut p = Self::zero(ctx, caps);
        p.coeffs[0] = c;
        p
    }

    /// `coeff * W^dw * Y^dy * Z^dz`.
    pub fn monomial(ctx: &FieldCtx, caps: Caps, coeff: FieldElement, dw: usize, dy: usize, dz: usize) -> Result<Self> {
        if !caps.contains(dw, dy, dz) {
            return Err(Error::invalid(format!(
                "monomial W^{dw}Y^{dy}Z^{dz} exceeds caps {caps:?}"
            )));
        }
        let mut p = Self::zero(ctx, caps);
        let idx = p.index(dw, dy, dz);
        p.coeffs[idx] = coeff;
        Ok(p)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    #[inline]
    fn index(&self, dw: usize, dy: usize, dz: usize) -> usize {
        (dw * (self.caps.y + 1) + dy) * (self.caps.z + 1) + dz
    }

    fn check_compatible(&self, other: &TriPoly) -> Result<()> {
        if self.caps != other.caps {
            return Err(Error::invalid(format!(
                "caps mismatch: {:?} vs {:?}",
                self.caps, other.caps
            )));
        }
        if self.ctx != other.ctx {
            return Err(Error::invalid("polynomials over different fields"));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &TriPoly) -> Result<TriPoly> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &TriPoly) -> Result<()> {
        self.check_compatible(other)?;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = FieldElement::new(a.bits() ^ b.bits());
        }
        Ok(())
    }

    /// Truncated product.
    pub fn mul(&self, other: &TriPoly) -> Result<TriPoly> {
        self.check_compatible(other)?;
        let caps = self.caps;
        let zlen = caps.z + 1;
        let mut out = TriPoly::zero(&self.ctx, caps);
        for dw in 0..=caps.w {
            for dy in 0..=caps.y {
                let base = self.index(dw, dy, 0);
                for dz in 0..zlen {
                    let a = self.coeffs[base + dz];
                    if a.is_zero() {
                        continue;
                    }
                    for ew in 0..=caps.w - dw {
                        for ey in 0..=caps.y - dy {
                            let src = other.index(ew, ey, 0);
                            let dst = out.index(dw + ew, dy + ey, dz);
                            let span = zlen - dz;
                            self.ctx
                                .axpy(&mut out.coeffs[dst..dst + span], a, &other.coeffs[src..src + span]);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: FieldElement) -> TriPoly {
        let mut out = self.clone();
        self.ctx.scale(&mut out.coeffs, c);
        out
    }

    /// `[W^dw Y^dy Z^dz] p`.
    pub fn coeff(&self, dw: usize, dy: usize, dz: usize) -> Result<FieldElement> {
        if !self.caps.contains(dw, dy, dz) {
            return Err(Error::invalid(format!(
                "coefficient W^{dw}Y^{dy}Z^{dz} outside caps {:?}",
                self.caps
            )));
        }
        Ok(self.coeffs[self.index(dw, dy, dz)])
    }

    /// `[W^t] p` as a polynomial in `Y, Z` (returned with a `W` cap of 0).
    pub fn coeff_slice_w(&self, t: usize) -> Result<TriPoly> {
        if t > self.caps.w {
            return Err(Error::invalid(format!("W exponent {t} outside cap {}", self.caps.w)));
        }
        let caps = Caps::new(0, self.caps.y, self.caps.z);
        let start = self.index(t, 0, 0);
        let len = caps.len();
        Ok(TriPoly {
            ctx: self.ctx.clone(),
            caps,
            coeffs: self.coeffs[start..start + len].to_vec(),
        })
    }

    /// Nonzero terms as `((dw, dy, dz), coeff)`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize, usize), FieldElement)> + '_ {
        let ylen = self.caps.y + 1;
        let zlen = self.caps.z + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| ((i / (ylen * zlen), (i / zlen) % ylen, i % zlen), *c))
    }

    /// Evaluates at `(w, y, z)`.
    pub fn evaluate(&self, w: FieldElement, y: FieldElement, z: FieldElement) -> FieldElement {
        let f = &self.ctx;
        self.terms().fold(FieldElement::ZERO, |acc, ((dw, dy, dz), c)| {
            let term = f.mul(
                c,
                f.mul(f.pow(w, dw as u128), f.mul(f.pow(y, dy as u128), f.pow(z, dz as u128))),
            );
            f.add(acc, term)
        })
    }

    /// Re-embeds into larger caps (or truncates into smaller ones).
    pub fn with_caps(&self, caps: Caps) -> TriPoly {
        let mut out = TriPoly::zero(&self.ctx, caps);
        for ((dw, dy, dz), c) in self.terms() {
            if caps.contains(dw, dy, dz) {
                let idx = out.index(dw, dy, dz);
                out.coeffs[idx] = c;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field() -> FieldCtx {
        FieldCtx::with_kappa(4).unwrap()
    }

    fn var(dw: usize, dy: usize, dz: usize, caps: Caps) -> TriPoly {
        TriPoly::monomial(&field(), caps, FieldElement::ONE, dw, dy, dz).unwrap()
    }

    #[test]
    fn constructors() {
        let caps = Caps::uniform(3);
        let w = var(1, 0, 0, caps);
        assert_eq!(w.coeff(1, 0, 0).unwrap(), FieldElement::ONE);
        assert_eq!(w.terms().count(), 1);
        assert!(TriPoly::monomial(&field(), caps, FieldElement::ONE, 4, 0, 0).is_err());
        assert!(TriPoly::zero(&field(), caps).is_zero());
    }

    #[test]
    fn addition_examples() {
        let caps = Caps::uniform(2);
        let w = var(1, 0, 0, caps);
        let y = var(0, 1, 0, caps);
        let z = var(0, 0, 1, caps);
        let lhs = w.add(&y).unwrap();
        let rhs = y.add(&z).unwrap();
        assert_eq!(lhs.add(&rhs).unwrap(), w.add(&z).unwrap());
        assert!(lhs.add(&lhs).unwrap().is_zero());
        assert_eq!(lhs.add(&TriPoly::zero(&field(), caps)).unwrap(), lhs);
    }

    #[test]
    fn product_examples() {
        let caps = Caps::uniform(2);
        let y = var(0, 1, 0, caps);
        let z = var(0, 0, 1, caps);
        assert_eq!(y.mul(&z).unwrap(), var(0, 1, 1, caps));

        let w1 = var(1, 0, 0, caps).add(&TriPoly::one(&field(), caps)).unwrap();
        let expected = var(2, 0, 0, caps).add(&TriPoly::one(&field(), caps)).unwrap();
        assert_eq!(w1.mul(&w1).unwrap(), expected);

        let top = var(2, 0, 0, caps);
        assert!(top.mul(&var(1, 0, 0, caps)).unwrap().is_zero());
    }

    #[test]
    fn mismatched_caps_are_rejected() {
        let a = TriPoly::one(&field(), Caps::uniform(2));
        let b = TriPoly::one(&field(), Caps::uniform(3));
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn coefficient_queries() {
        let caps = Caps::uniform(2);
        let yz = var(0, 1, 1, caps);
        assert_eq!(yz.coeff(0, 1, 1).unwrap(), FieldElement::ONE);
        assert_eq!(yz.coeff(1, 0, 0).unwrap(), FieldElement::ZERO);
        assert!(yz.coeff(3, 0, 0).is_err());

        let p = var(1, 1, 0, caps).add(&var(0, 0, 1, caps)).unwrap();
        let slice = p.coeff_slice_w(1).unwrap();
        assert_eq!(slice, var(0, 1, 0, Caps::new(0, 2, 2)));
        assert!(p.coeff_slice_w(3).is_err());
    }

    fn arb_poly(caps: Caps) -> impl Strategy<Value = TriPoly> {
        prop::collection::vec((0..=caps.w, 0..=caps.y, 0..=caps.z, 1u64..16), 0..6).prop_map(move |terms| {
            let f = field();
            let mut p = TriPoly::zero(&f, caps);
            for (dw, dy, dz, c) in terms {
                let m = TriPoly::monomial(&f, caps, FieldElement::new(c), dw, dy, dz).unwrap();
                p.add_assign(&m).unwrap();
            }
            p
        })
    }

    proptest! {
        #[test]
        fn product_commutes(p in arb_poly(Caps::uniform(3)), q in arb_poly(Caps::uniform(3))) {
            prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        }

        #[test]
        fn identities(p in arb_poly(Caps::uniform(3))) {
            let caps = Caps::uniform(3);
            prop_assert_eq!(TriPoly::one(&field(), caps).mul(&p).unwrap(), p.clone());
            prop_assert_eq!(TriPoly::zero(&field(), caps).add(&p).unwrap(), p);
        }

        // Truncating after the fact agrees with truncating every product.
        #[test]
        fn truncation_matches_wide_arithmetic(
            p in arb_poly(Caps::uniform(2)),
            q in arb_poly(Caps::uniform(2)),
            r in arb_poly(Caps::uniform(2)),
        ) {
            let narrow = p.mul(&q).unwrap().mul(&r).unwrap().add(&p).unwrap();
            let wide_caps = Caps::uniform(6);
            let (pw, qw, rw) = (p.with_caps(wide_caps), q.with_caps(wide_caps), r.with_caps(wide_caps));
            let wide = pw.mul(&qw).unwrap().mul(&rw).unwrap().add(&pw).unwrap();
            prop_assert_eq!(narrow, wide.with_caps(Caps::uniform(2)));
        }

        #[test]
        fn ring_axioms_within_caps(
            p in arb_poly(Caps::new(1, 1, 1)),
            q in arb_poly(Caps::new(1, 1, 1)),
            r in arb_poly(Caps::new(1, 1, 1)),
        ) {
            let caps = Caps::uniform(3);
            let (p, q, r) = (p.with_caps(caps), q.with_caps(caps), r.with_caps(caps));
            prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
            prop_assert_eq!(
                p.mul(&q.add(&r).unwrap()).unwrap(),
                p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap()
            );
        }

        #[test]
        fn evaluation_is_a_homomorphism(
            p in arb_poly(Caps::new(1, 1, 1)),
            q in arb_poly(Caps::new(1, 1, 1)),
            w in 0u64..16, y in 0u64..16, z in 0u64..16,
        ) {
            let caps = Caps::uniform(2);
            let (p, q) = (p.with_caps(caps), q.with_caps(caps));
            let f = field();
            let (w, y, z) = (FieldElement::new(w), FieldElement::new(y), FieldElement::new(z));
            prop_assert_eq!(
                p.mul(&q).unwrap().evaluate(w, y, z),
                f.mul(p.evaluate(w, y, z), q.evaluate(w, y, z))
            );
        }
    }
}
