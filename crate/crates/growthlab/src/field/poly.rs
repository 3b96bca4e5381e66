//! Polynomials in t over F_q, the building block of rational functions.
//!
//! A polynomial is a little-endian coefficient vector of F_q indices with no
//! trailing zero; the zero polynomial is the empty vector.

use super::fq::FqCtx;
use crate::error::{Error, Result};

pub type Poly = Vec<u64>;

pub fn deg(f: &Poly) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn trim(mut f: Poly) -> Poly {
    while let Some(&0) = f.last() {
        f.pop();
    }
    f
}

pub fn add(ctx: &FqCtx, f: &Poly, g: &Poly) -> Poly {
    let n = f.len().max(g.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        *o = ctx.add(a, b);
    }
    trim(out)
}

pub fn neg(ctx: &FqCtx, f: &Poly) -> Poly {
    f.iter().map(|&c| ctx.neg(c)).collect()
}

pub fn sub(ctx: &FqCtx, f: &Poly, g: &Poly) -> Poly {
    add(ctx, f, &neg(ctx, g))
}

pub fn mul(ctx: &FqCtx, f: &Poly, g: &Poly) -> Poly {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
        }
    }
    trim(out)
}

pub fn scale(ctx: &FqCtx, f: &Poly, c: u64) -> Poly {
    trim(f.iter().map(|&a| ctx.mul(a, c)).collect())
}

/// Quotient and remainder of f by nonzero g.
pub fn divmod(ctx: &FqCtx, f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
    let gd = deg(g).ok_or(Error::DivisionByZero)?;
    let lead_inv = ctx.inv(g[gd])?;
    let mut r = f.clone();
    let mut q = vec![0u64; f.len().saturating_sub(gd)];
    while let Some(rd) = deg(&r) {
        if rd < gd {
            break;
        }
        let c = ctx.mul(r[rd], lead_inv);
        q[rd - gd] = c;
        for j in 0..=gd {
            r[rd - gd + j] = ctx.sub(r[rd - gd + j], ctx.mul(c, g[j]));
        }
        r = trim(r);
    }
    Ok((trim(q), r))
}

/// Monic greatest common divisor.
pub fn gcd(ctx: &FqCtx, f: &Poly, g: &Poly) -> Poly {
    let (mut a, mut b) = (trim(f.clone()), trim(g.clone()));
    while !b.is_empty() {
        let (_, r) = divmod(ctx, &a, &b).expect("b nonzero");
        a = b;
        b = r;
    }
    make_monic(ctx, &a)
}

pub fn make_monic(ctx: &FqCtx, f: &Poly) -> Poly {
    match deg(f) {
        None => vec![],
        Some(d) => {
            let inv = ctx.inv(f[d]).expect("leading coefficient nonzero");
            scale(ctx, f, inv)
        }
    }
}

pub fn constant(c: u64) -> Poly {
    if c == 0 {
        vec![]
    } else {
        vec![c]
    }
}

pub fn one() -> Poly {
    vec![1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divmod_roundtrip() {
        let ctx = FqCtx::prime(5).unwrap();
        let f = vec![1, 2, 3, 4]; // 4t^3+3t^2+2t+1
        let g = vec![2, 1]; // t+2
        let (q, r) = divmod(&ctx, &f, &g).unwrap();
        let back = add(&ctx, &mul(&ctx, &q, &g), &r);
        assert_eq!(back, f);
        assert!(deg(&r) < deg(&g));
    }

    #[test]
    fn gcd_is_monic_and_divides() {
        let ctx = FqCtx::prime(3).unwrap();
        // t^2+1 is irreducible over F_3 and t+2 does not divide it
        let f = mul(&ctx, &vec![1, 1], &vec![1, 0, 1]);
        let g = mul(&ctx, &vec![1, 1], &vec![2, 1]);
        let d = gcd(&ctx, &f, &g);
        assert_eq!(d, vec![1, 1]);
        assert!(divmod(&ctx, &f, &d).unwrap().1.is_empty());
        assert!(divmod(&ctx, &g, &d).unwrap().1.is_empty());
    }
}
