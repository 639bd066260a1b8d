//! Field arithmetic in GF(2^kappa), division-free determinants over
//! truncated polynomials, and the determinant/permanent coincidence.
//!
//! cargo run --example determinants

use longcycle::linalg::{berkowitz_det, det_field, SquareMatrix};
use longcycle::oracle::permanent_bruteforce;
use longcycle::poly::{Caps, TriPoly};
use longcycle::ring::TriPolyRing;
use longcycle::FieldCtx;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> longcycle::Result<()> {
    let ctx = FieldCtx::for_order(12)?;
    println!("n=12 needs GF(2^{}), modulus {:#b}", ctx.kappa(), ctx.modulus());
    let a = ctx.element(0b1011)?;
    println!(
        "a = {a:?}, a^-1 = {:?}, a * a^-1 = {:?}",
        ctx.inv(a)?,
        ctx.mul(a, ctx.inv(a)?)
    );

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let m = SquareMatrix::from_fn(5, |_, _| ctx.sample(&mut rng));
    println!(
        "5x5: berkowitz {:?}, elimination {:?}, permanent {:?}",
        berkowitz_det(&ctx, &m),
        det_field(&ctx, &m),
        permanent_bruteforce(&ctx, &m)?
    );

    // [[W, Z], [Y, 1]] has determinant W + YZ
    let caps = Caps::uniform(2);
    let ring = TriPolyRing::new(ctx.clone(), caps);
    let one = ctx.element(1)?;
    let rows = vec![
        vec![
            TriPoly::monomial(&ctx, caps, one, 1, 0, 0)?,
            TriPoly::monomial(&ctx, caps, one, 0, 0, 1)?,
        ],
        vec![TriPoly::monomial(&ctx, caps, one, 0, 1, 0)?, TriPoly::one(&ctx, caps)],
    ];
    let det = berkowitz_det(&ring, &SquareMatrix::from_rows(rows)?);
    for (exps, c) in det.terms() {
        println!("det term W^{} Y^{} Z^{}: {c:?}", exps.0, exps.1, exps.2);
    }
    Ok(())
}
