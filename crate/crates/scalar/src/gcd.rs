use dashu_base::{Gcd, Signed, SquareRoot, UnsignedAbs};
use dashu_int::IBig;

use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::rational::IBigExt;
use crate::var::Var;

const HEU_ATTEMPTS: usize = 6;
const HEU_MAX_BITS: usize = 60_000;

/// Greatest common divisor in Z[vars], normalized to a positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    gcd_cofactors(a, b).0
}

/// Returns `(g, a/g, b/g)` with `g = gcd(a, b)` having positive leading coefficient.
pub fn gcd_cofactors(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    if a.is_zero() && b.is_zero() {
        return (Poly::zero(), Poly::zero(), Poly::zero());
    }
    if a.is_zero() {
        let s = b.sign_of_lead();
        return (if s < 0 { b.neg() } else { b.clone() }, Poly::zero(), Poly::constant(s as i64));
    }
    if b.is_zero() {
        let s = a.sign_of_lead();
        return (if s < 0 { a.neg() } else { a.clone() }, Poly::constant(s as i64), Poly::zero());
    }
    if a == b {
        let s = a.sign_of_lead();
        let g = if s < 0 { a.neg() } else { a.clone() };
        let c = Poly::constant(s as i64);
        return (g, c.clone(), c);
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let ca = a.content();
    let cb = b.content();
    let m = ma.gcd(&mb);
    let c = IBig::from((&ca).gcd(&cb));
    let ap = a.div_monomial(&ma).div_coeff_exact(&ca);
    let bp = b.div_monomial(&mb).div_coeff_exact(&cb);
    let (h, fa, fb) = gcd_primitive(&ap, &bp);
    let ra = ma.checked_div(&m).unwrap();
    let rb = mb.checked_div(&m).unwrap();
    let g = h.mul_term(&m, &c);
    let cfa = fa.mul_term(&ra, &(&ca / &c));
    let cfb = fb.mul_term(&rb, &(&cb / &c));
    (g, cfa, cfb)
}

fn normalized(p: Poly) -> (Poly, i64) {
    if p.sign_of_lead() < 0 {
        (p.neg(), -1)
    } else {
        (p, 1)
    }
}

/// Gcd of primitive polynomials without monomial factors.
fn gcd_primitive(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    if a.is_constant() || b.is_constant() {
        return (Poly::one(), a.clone(), b.clone());
    }
    if a == b {
        let (g, s) = normalized(a.clone());
        return (g, Poly::constant(s), Poly::constant(s));
    }
    if *a == b.neg() {
        let (g, s) = normalized(a.clone());
        return (g, Poly::constant(s), Poly::constant(-s));
    }
    let mask_a = a.var_mask();
    let mask_b = b.var_mask();
    if mask_a != mask_b {
        let only_a = mask_a & !mask_b;
        let (with_var, other, mask, swapped) =
            if only_a != 0 { (a, b, only_a, false) } else { (b, a, mask_b & !mask_a, true) };
        let v = Var::from_index(mask.trailing_zeros() as usize);
        let mut g = other.clone();
        for (_, coeff) in with_var.coefficients_in(v) {
            g = gcd(&g, &coeff);
            if g.is_constant() {
                return (Poly::one(), a.clone(), b.clone());
            }
        }
        let (g, _) = normalized(g);
        let fw = with_var.div_exact(&g).expect("gcd divides");
        let fo = other.div_exact(&g).expect("gcd divides");
        return if swapped { (g, fo, fw) } else { (g, fw, fo) };
    }
    if b.len() <= a.len() {
        if let Some(q) = a.div_exact(b) {
            let (g, s) = normalized(b.clone());
            return (g, q.scale(&IBig::from(s)), Poly::constant(s));
        }
    } else if let Some(q) = b.div_exact(a) {
        let (g, s) = normalized(a.clone());
        return (g, Poly::constant(s), q.scale(&IBig::from(s)));
    }
    if let Some(r) = heu_gcd(a, b) {
        return r;
    }
    let g = prs_gcd(a, b);
    let fa = a.div_exact(&g).expect("gcd divides");
    let fb = b.div_exact(&g).expect("gcd divides");
    (g, fa, fb)
}

fn isqrt(n: &IBig) -> IBig {
    IBig::from(n.abs_val().unsigned_abs().sqrt())
}

fn heu_gcd(f: &Poly, g: &Poly) -> Option<(Poly, Poly, Poly)> {
    let mask = f.var_mask() | g.var_mask();
    let v = Var::from_index(mask.trailing_zeros() as usize);
    let f_norm = f.max_norm();
    let g_norm = g.max_norm();
    let min_norm = if f_norm < g_norm { f_norm.clone() } else { g_norm.clone() };
    let bound = IBig::from(2) * &min_norm + IBig::from(29);
    let sq = IBig::from(99) * isqrt(&bound);
    let f_lc = f.lead_coeff().abs_val();
    let g_lc = g.lead_coeff().abs_val();
    let ratio = (&f_norm / &f_lc).min(&g_norm / &g_lc);
    let mut xi = bound.clone().min(sq).max(IBig::from(2) * ratio + IBig::from(4));
    xi = xi.max(IBig::from(2) * &min_norm + IBig::from(2));
    let deg = f.degree_in(v).max(g.degree_in(v)) as usize;
    for _ in 0..HEU_ATTEMPTS {
        let bits = xi.bits() * deg + f_norm.bits();
        if bits > HEU_MAX_BITS {
            return None;
        }
        let fe = f.eval_int(v, &xi);
        let ge = g.eval_int(v, &xi);
        if !fe.is_zero() && !ge.is_zero() {
            let (he, cfe, cge) = gcd_cofactors(&fe, &ge);
            let h = interpolate(&he, &xi, v);
            let hc = h.content();
            if !hc.is_zero() {
                let (h, _) = normalized(h.div_coeff_exact(&hc));
                if let Some(cf) = f.div_exact(&h) {
                    if let Some(cg) = g.div_exact(&h) {
                        return Some((h, cf, cg));
                    }
                }
            }
            for (cofactor, this, other, first) in [(cfe, f, g, true), (cge, g, f, false)] {
                let cf = interpolate(&cofactor, &xi, v);
                if cf.is_zero() {
                    continue;
                }
                if let Some(h) = this.div_exact(&cf) {
                    let (h, s) = normalized(h);
                    if let Some(co) = other.div_exact(&h) {
                        let cf = cf.scale(&IBig::from(s));
                        return Some(if first { (h, cf, co) } else { (h, co, cf) });
                    }
                }
            }
        }
        let r = isqrt(&isqrt(&xi));
        xi = IBig::from(73794) * &xi * r / IBig::from(27011);
    }
    None
}

fn interpolate(h: &Poly, xi: &IBig, v: Var) -> Poly {
    let half = xi / IBig::from(2);
    let mut out = Vec::new();
    let mut cur: Vec<(Monomial, IBig)> = h.terms().to_vec();
    let mut i: u16 = 0;
    while !cur.is_empty() {
        let vi = Monomial::var(v, i);
        let mut next = Vec::with_capacity(cur.len());
        for (m, c) in cur {
            let mut d = &c % xi;
            if d.is_negative() {
                d += xi;
            }
            if d > half {
                d -= xi;
            }
            let rest = (&c - &d) / xi;
            if !d.is_zero() {
                out.push((m.mul(&vi), d));
            }
            if !rest.is_zero() {
                next.push((m, rest));
            }
        }
        cur = next;
        i += 1;
    }
    Poly::from_terms(out)
}

fn content_in(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn strip(a: &mut Vec<Poly>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut a = a.to_vec();
    let lb = b.last().unwrap().clone();
    while a.len() >= b.len() && !a.is_empty() {
        let la = a.last().unwrap().clone();
        let shift = a.len() - b.len();
        for (i, ai) in a.iter_mut().enumerate() {
            let mut t = ai.mul(&lb);
            if i >= shift {
                t = t.sub(&la.mul(&b[i - shift]));
            }
            *ai = t;
        }
        strip(&mut a);
    }
    a
}

fn primitive_in(a: &[Poly]) -> Vec<Poly> {
    let c = content_in(a);
    a.iter().map(|p| p.div_exact(&c).expect("content divides")).collect()
}

/// Recursive primitive remainder sequence gcd of primitive polynomials.
#[doc(hidden)]
pub fn prs_gcd(f: &Poly, g: &Poly) -> Poly {
    let mask = f.var_mask() | g.var_mask();
    if mask == 0 {
        return Poly::constant(IBig::from(f.content().gcd(&g.content())));
    }
    let v = Var::from_index(mask.trailing_zeros() as usize);
    let fd = f.to_dense_in(v);
    let gd = g.to_dense_in(v);
    let cf = content_in(&fd);
    let cg = content_in(&gd);
    let c = gcd(&cf, &cg);
    let mut a: Vec<Poly> = fd.iter().map(|p| p.div_exact(&cf).unwrap()).collect();
    let mut b: Vec<Poly> = gd.iter().map(|p| p.div_exact(&cg).unwrap()).collect();
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 {
            return normalized(c).0;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            let h = Poly::from_dense_in(v, &b).mul(&c);
            return normalized(h).0;
        }
        a = b;
        b = primitive_in(&r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, &[(Var, u16)])]) -> Poly {
        Poly::from_terms(terms.iter().map(|(c, e)| (Monomial::from_exponents(e), IBig::from(*c))))
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let x = Var::X;
        let y = Var::Y;
        let f = p(&[(1, &[(x, 2)]), (-1, &[(y, 2)])]);
        let g = p(&[(1, &[(x, 1)]), (-1, &[(y, 1)])]);
        let h = p(&[(1, &[(x, 1)]), (1, &[(y, 1)]), (3, &[])]);
        let a = f.mul(&h);
        let b = g.mul(&h).mul(&h);
        let expected = g.mul(&h);
        assert_eq!(prs_gcd(&a, &b), expected);
        assert_eq!(gcd(&a, &b), expected);
    }

    #[test]
    fn interpolation_roundtrip() {
        let f = p(&[(3, &[(Var::X, 2), (Var::Y, 1)]), (-7, &[(Var::X, 1)]), (2, &[])]);
        let xi = IBig::from(101);
        let e = f.eval_int(Var::X, &xi);
        assert_eq!(interpolate(&e, &xi, Var::X), f);
    }
}
