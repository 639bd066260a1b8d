//! Commutative rings of characteristic 2, the setting for every determinant
//! and permanent in this crate. Subtraction coincides with addition there, so
//! the trait only asks for `add` and `mul`.

use std::fmt::Debug;

use crate::gf2k::{FieldCtx, FieldElement};
use crate::poly::{Caps, TriPoly};

pub trait Char2Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

impl Char2Ring for FieldCtx {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldCtx::add(self, *a, *b)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldCtx::mul(self, *a, *b)
    }
}

/// `F[W, Y, Z]` truncated at fixed per-variable caps.
#[derive(Clone, Debug, PartialEq)]
pub struct TriPolyRing {
    pub ctx: FieldCtx,
    pub caps: Caps,
}

impl TriPolyRing {
    pub fn new(ctx: FieldCtx, caps: Caps) -> Self {
        TriPolyRing { ctx, caps }
    }
}

impl Char2Ring for TriPolyRing {
    type Elem = TriPoly;

    fn zero(&self) -> TriPoly {
        TriPoly::zero(&self.ctx, self.caps)
    }

    fn one(&self) -> TriPoly {
        TriPoly::one(&self.ctx, self.caps)
    }

    fn add(&self, a: &TriPoly, b: &TriPoly) -> TriPoly {
        a.add(b).expect("operands built in the same ring")
    }

    fn mul(&self, a: &TriPoly, b: &TriPoly) -> TriPoly {
        a.mul(b).expect("operands built in the same ring")
    }

    fn is_zero(&self, a: &TriPoly) -> bool {
        a.is_zero()
    }
}
