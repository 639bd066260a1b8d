//! Dense linear algebra in characteristic 2.
//!
//! Two families live here: a division-free Berkowitz characteristic
//! polynomial that works over any [`Char2Ring`] (used for polynomial
//! matrices), and field-only routines (elimination, Hessenberg reduction,
//! interpolation) that back the evaluation path of the sieve.

use crate::error::{Error, Result};
use crate::gf2k::{FieldCtx, FieldElement};
use crate::ring::Char2Ring;

/// Square matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<E> {
    dim: usize,
    data: Vec<E>,
}

impl<E: Clone> SquareMatrix<E> {
    pub fn filled(dim: usize, value: E) -> Self {
        SquareMatrix {
            dim,
            data: vec![value; dim * dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid(
                "matrix rows must all have length equal to the row count",
            ));
        }
        Ok(SquareMatrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        SquareMatrix { dim, data }
    }
}

impl<E> SquareMatrix<E> {
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.data[i * self.dim + j] = value;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[E]> {
        self.data.chunks(self.dim.max(1))
    }
}

/// Characteristic polynomial `det(x I + M)` (ascending coefficients) by
/// Berkowitz's division-free algorithm, O(n^4) ring multiplications.
pub fn berkowitz_charpoly<R: Char2Ring>(ring: &R, m: &SquareMatrix<R::Elem>) -> Vec<R::Elem> {
    let n = m.dim();
    let mul_add = |acc: &mut R::Elem, a: &R::Elem, b: &R::Elem| {
        if !ring.is_zero(a) && !ring.is_zero(b) {
            *acc = ring.add(acc, &ring.mul(a, b));
        }
    };

    // descending coefficients of the leading r x r block
    let mut poly = vec![ring.one()];
    for r in 0..n {
        // first column of the Toeplitz factor: 1, m_rr, R C, R A C, ..., R A^(r-1) C
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(ring.one());
        toeplitz.push(m.get(r, r).clone());
        let mut v: Vec<R::Elem> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for step in 0..r {
            let mut acc = ring.zero();
            for (j, vj) in v.iter().enumerate() {
                mul_add(&mut acc, m.get(r, j), vj);
            }
            toeplitz.push(acc);
            if step + 1 < r {
                v = (0..r)
                    .map(|i| {
                        let mut acc = ring.zero();
                        for (j, vj) in v.iter().enumerate() {
                            mul_add(&mut acc, m.get(i, j), vj);
                        }
                        acc
                    })
                    .collect();
            }
        }
        let mut next = vec![ring.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in poly.iter().enumerate().take(i + 1) {
                mul_add(slot, &toeplitz[i - j], pj);
            }
        }
        poly = next;
    }
    poly.reverse();
    poly
}

/// Determinant (equal to the permanent in characteristic 2), division free.
pub fn berkowitz_det<R: Char2Ring>(ring: &R, m: &SquareMatrix<R::Elem>) -> R::Elem {
    berkowitz_charpoly(ring, m).swap_remove(0)
}

/// Determinant over the field by Gaussian elimination.
pub fn det_field(ctx: &FieldCtx, m: &SquareMatrix<FieldElement>) -> FieldElement {
    let n = m.dim();
    let mut a = m.data.clone();
    let mut det = FieldElement::ONE;
    let mut pivot_row = vec![FieldElement::ZERO; n];
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
            return FieldElement::ZERO;
        };
        if p != c {
            for j in 0..n {
                a.swap(p * n + j, c * n + j);
            }
        }
        let pivot = a[c * n + c];
        det = ctx.mul(det, pivot);
        let inv = ctx.inv(pivot).expect("pivot is nonzero");
        pivot_row[c..].copy_from_slice(&a[c * n + c..(c + 1) * n]);
        ctx.scale(&mut pivot_row[c..], inv);
        for r in c + 1..n {
            let f = a[r * n + c];
            if !f.is_zero() {
                ctx.axpy(&mut a[r * n + c..(r + 1) * n], f, &pivot_row[c..]);
            }
        }
    }
    det
}

/// Returns `(det K, K^-1 B)` or `None` when `K` is singular.
pub fn solve_field(
    ctx: &FieldCtx,
    k: &SquareMatrix<FieldElement>,
    b: &SquareMatrix<FieldElement>,
) -> Option<(FieldElement, SquareMatrix<FieldElement>)> {
    let n = k.dim();
    assert_eq!(n, b.dim());
    let width = 2 * n;
    let mut aug = vec![FieldElement::ZERO; n * width];
    for i in 0..n {
        aug[i * width..i * width + n].copy_from_slice(k.row(i));
        aug[i * width + n..(i + 1) * width].copy_from_slice(b.row(i));
    }
    let mut det = FieldElement::ONE;
    let mut pivot_row = vec![FieldElement::ZERO; width];
    for c in 0..n {
        let p = (c..n).find(|&r| !aug[r * width + c].is_zero())?;
        if p != c {
            for j in c..width {
                aug.swap(p * width + j, c * width + j);
            }
        }
        let pivot = aug[c * width + c];
        det = ctx.mul(det, pivot);
        let inv = ctx.inv(pivot).expect("pivot is nonzero");
        ctx.scale(&mut aug[c * width + c..(c + 1) * width], inv);
        pivot_row[c..].copy_from_slice(&aug[c * width + c..(c + 1) * width]);
        for r in 0..n {
            if r == c {
                continue;
            }
            let f = aug[r * width + c];
            if !f.is_zero() {
                ctx.axpy(&mut aug[r * width + c..(r + 1) * width], f, &pivot_row[c..]);
            }
        }
    }
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        data.extend_from_slice(&aug[i * width + n..(i + 1) * width]);
    }
    Some((det, SquareMatrix { dim: n, data }))
}

/// Characteristic polynomial `det(x I + M)` over the field, ascending, via
/// reduction to upper Hessenberg form. O(n^3).
pub fn charpoly_field(ctx: &FieldCtx, m: &SquareMatrix<FieldElement>) -> Vec<FieldElement> {
    let n = m.dim();
    let mut h = m.data.clone();
    let mut pivot_row = vec![FieldElement::ZERO; n];
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| !h[i * n + j].is_zero()) else {
            continue;
        };
        let q = j + 1;
        if p != q {
            for c in 0..n {
                h.swap(p * n + c, q * n + c);
            }
            for r in 0..n {
                h.swap(r * n + p, r * n + q);
            }
        }
        let inv = ctx.inv(h[q * n + j]).expect("pivot is nonzero");
        for r in q + 1..n {
            let f = ctx.mul(h[r * n + j], inv);
            if f.is_zero() {
                continue;
            }
            // row_r += f row_q, then column_q += f column_r (a similarity in char 2)
            pivot_row[j..].copy_from_slice(&h[q * n + j..(q + 1) * n]);
            ctx.axpy(&mut h[r * n + j..(r + 1) * n], f, &pivot_row[j..]);
            for i in 0..n {
                let x = h[i * n + r];
                if !x.is_zero() {
                    h[i * n + q] = ctx.add(h[i * n + q], ctx.mul(f, x));
                }
            }
        }
    }

    // p_m = (x + h_mm) p_{m-1} + sum_{i<m} h_im (h_{i+1,i} ... h_{m,m-1}) p_{i-1}
    let mut polys: Vec<Vec<FieldElement>> = Vec::with_capacity(n + 1);
    polys.push(vec![FieldElement::ONE]);
    for mm in 0..n {
        let prev = &polys[mm];
        let mut next = vec![FieldElement::ZERO; mm + 2];
        next[1..].copy_from_slice(prev);
        ctx.axpy(&mut next[..mm + 1], h[mm * n + mm], prev);
        let mut prod = FieldElement::ONE;
        for i in (0..mm).rev() {
            prod = ctx.mul(prod, h[(i + 1) * n + i]);
            if prod.is_zero() {
                break;
            }
            let coef = ctx.mul(h[i * n + mm], prod);
            let older = &polys[i];
            ctx.axpy(&mut next[..older.len()], coef, older);
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

/// Coefficients (ascending in `T`) of `det(A + T B)`, in O(n^3) field
/// operations: shift `T` until `A + tau B` is invertible, then read the
/// remaining factor off a characteristic polynomial.
pub fn pencil_det(
    ctx: &FieldCtx,
    a: &SquareMatrix<FieldElement>,
    b: &SquareMatrix<FieldElement>,
) -> Result<Vec<FieldElement>> {
    let n = a.dim();
    if n != b.dim() {
        return Err(Error::invalid("pencil matrices must have the same size"));
    }
    let zero_poly = vec![FieldElement::ZERO; n + 1];
    let zero_line = |get: &dyn Fn(&SquareMatrix<FieldElement>, usize) -> FieldElement| {
        (0..n).any(|i| (0..n).all(|j| get(a, i * n + j).is_zero() && get(b, i * n + j).is_zero()))
    };
    if zero_line(&|m, idx| m.data[idx]) || zero_line(&|m, idx| m.data[(idx % n) * n + idx / n]) {
        return Ok(zero_poly);
    }

    // det(A + T B) has degree <= n, so n + 1 singular shifts prove it is zero.
    let needed = n as u128 + 1;
    let candidates = (1..ctx.size()).chain(std::iter::once(0)).take(needed as usize);
    let mut shifted = a.clone();
    for tau_bits in candidates {
        let tau = FieldElement::new(tau_bits as u64);
        for (s, (x, y)) in shifted.data.iter_mut().zip(a.data.iter().zip(&b.data)) {
            *s = ctx.add(*x, ctx.mul(tau, *y));
        }
        let Some((det, kinv_b)) = solve_field(ctx, &shifted, b) else {
            continue;
        };
        // det(A + T B) = det(K) det(I + (T + tau) K^-1 B)
        let chi = charpoly_field(ctx, &kinv_b);
        let q: Vec<FieldElement> = (0..=n).map(|j| chi[n - j]).collect();
        return Ok(taylor_shift(ctx, &q, tau)
            .into_iter()
            .map(|c| ctx.mul(c, det))
            .collect());
    }
    if ctx.size() < needed {
        return Err(Error::invalid(format!(
            "GF(2^{}) is too small to certify a {n}x{n} pencil",
            ctx.kappa()
        )));
    }
    Ok(zero_poly)
}

/// Coefficients of `q(T + tau)`; binomials reduce mod 2 by Lucas' theorem.
fn taylor_shift(ctx: &FieldCtx, q: &[FieldElement], tau: FieldElement) -> Vec<FieldElement> {
    let d = q.len();
    let mut tau_pow = Vec::with_capacity(d);
    let mut acc = FieldElement::ONE;
    for _ in 0..d {
        tau_pow.push(acc);
        acc = ctx.mul(acc, tau);
    }
    (0..d)
        .map(|m| {
            (m..d)
                .filter(|&j| m & !j == 0)
                .fold(FieldElement::ZERO, |s, j| ctx.add(s, ctx.mul(q[j], tau_pow[j - m])))
        })
        .collect()
}

/// Monomial coefficients of the unique polynomial of degree < `xs.len()`
/// through the points `(xs[i], ys[i])`. The `xs` must be distinct.
pub fn interpolate(ctx: &FieldCtx, xs: &[FieldElement], ys: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let d = xs.len();
    if ys.len() != d {
        return Err(Error::invalid("interpolation needs one value per node"));
    }
    // Newton divided differences
    let mut dd = ys.to_vec();
    for level in 1..d {
        for i in (level..d).rev() {
            let num = ctx.add(dd[i], dd[i - 1]);
            let den = ctx.add(xs[i], xs[i - level]);
            dd[i] = ctx.mul(num, ctx.inv(den)?);
        }
    }
    // Horner in the Newton basis
    let mut coeffs = vec![FieldElement::ZERO; d];
    for i in (0..d).rev() {
        // coeffs = coeffs * (x + xs[i]) + dd[i]
        let mut shifted = vec![FieldElement::ZERO; d];
        for j in 0..d {
            if coeffs[j].is_zero() {
                continue;
            }
            if j + 1 < d {
                shifted[j + 1] = ctx.add(shifted[j + 1], coeffs[j]);
            }
            shifted[j] = ctx.add(shifted[j], ctx.mul(coeffs[j], xs[i]));
        }
        shifted[0] = ctx.add(shifted[0], dd[i]);
        coeffs = shifted;
    }
    Ok(coeffs)
}

/// Rank over GF(2) of rows packed as bit masks.
pub fn gf2_rank(rows: &[u64]) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for &row in rows {
        let mut x = row;
        while x != 0 {
            let top = 63 - x.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = x;
                rank += 1;
                break;
            }
            x ^= basis[top];
        }
    }
    rank
}
