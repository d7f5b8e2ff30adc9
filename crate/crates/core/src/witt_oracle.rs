//! Independent reference arithmetic for Z_q/p², used only to check `W2`.
//!
//! Everything here is plain integer arithmetic mod p² on pairs (x, y)
//! representing x + y·t with t² = T2 lifted from the residue field modulus.
//! Teichmüller lifts are produced by raising a residue lift to the q-th
//! power, which fixes the lift mod p². No `W2` code path is reused.

use crate::arith::Fq;

/// The ring (Z/p²)[t]/(t² − T2), T2 the integer lift of θ².
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZqModP2 {
    pub p: u64,
    pub t2: u64,
}

pub type Elem = (u64, u64);

impl ZqModP2 {
    pub fn new(p: u64, t2: u64) -> Self {
        ZqModP2 { p, t2 }
    }

    pub fn for_prime<const P: u64>() -> Self {
        ZqModP2 {
            p: P,
            t2: Fq::<P>::THETA_SQ,
        }
    }

    fn m(&self) -> u64 {
        self.p * self.p
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        ((a.0 + b.0) % self.m(), (a.1 + b.1) % self.m())
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let m = self.m() as u128;
        let x = (a.0 as u128 * b.0 as u128 + a.1 as u128 * b.1 as u128 % m * self.t2 as u128) % m;
        let y = (a.0 as u128 * b.1 as u128 + a.1 as u128 * b.0 as u128) % m;
        (x as u64, y as u64)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// σ: t ↦ −t, the ring automorphism inducing x ↦ x^p on the residue field.
    pub fn frobenius(&self, a: Elem) -> Elem {
        (a.0, (self.m() - a.1) % self.m())
    }

    /// Teichmüller lift of the residue (a, b), a, b ∈ F_p.
    pub fn teichmuller(&self, residue: (u64, u64)) -> Elem {
        let lift = (residue.0 % self.p, residue.1 % self.p);
        self.pow(lift, self.p * self.p)
    }

    /// The image of a coordinate pair ((a0), (a1)) as [a0] + p[a1].
    pub fn embed(&self, a0: (u64, u64), a1: (u64, u64)) -> Elem {
        let t0 = self.teichmuller(a0);
        let t1 = self.teichmuller(a1);
        self.add(t0, (t1.0 * self.p % self.m(), t1.1 * self.p % self.m()))
    }
}

/// Embed a `W2` value through its coordinates (interface only; no W2 arithmetic).
pub fn embed_w2<const P: u64>(ring: &ZqModP2, u: crate::arith::W2<P>) -> Elem {
    ring.embed(
        (u.a0.c0 as u64, u.a0.c1 as u64),
        (u.a1.c0 as u64, u.a1.c1 as u64),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn teichmuller_of_two_mod_25() {
        let ring = ZqModP2::new(5, 3);
        assert_eq!(ring.teichmuller((2, 0)), (7, 0));
    }

    #[test]
    fn teichmuller_is_root_of_unity() {
        let ring = ZqModP2::for_prime::<5>();
        for a in 0..5 {
            for b in 0..5 {
                if a == 0 && b == 0 {
                    continue;
                }
                let t = ring.teichmuller((a, b));
                assert_eq!(ring.pow(t, 24), (1, 0), "[{a}+{b}t]^24 != 1");
            }
        }
    }

    #[test]
    fn frobenius_squares_to_identity() {
        let ring = ZqModP2::for_prime::<5>();
        for a in 0..5 {
            for b in 0..5 {
                let t = ring.teichmuller((a, b));
                assert_eq!(ring.frobenius(ring.frobenius(t)), t);
            }
        }
    }
}
