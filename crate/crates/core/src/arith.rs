//! Exact arithmetic in F_p, F_q = F_{p^2} and length-2 Witt vectors Z_q/p^2.
//!
//! F_q is presented as F_p[θ]/(θ² − T2) where x² − T2 is the
//! lexicographically least irreducible monic quadratic over F_p (ordered by
//! the coefficient tuple (c1, c0) of x² + c1·x + c0; for every odd p the
//! winner has c1 = 0). The multiplicative generator g0 is the first element
//! of F_q^× in (c0, c1)-lexicographic order whose order is q − 1. Both are
//! computed at compile time per prime.
//!
//! A Witt vector (a0, a1) represents [a0] + p·[a1] in Z_q/p², where [·] is
//! the Teichmüller lift. Addition carries via the Witt polynomial P(X, Y);
//! fractional exponents are interpreted through t^{1/p} = t^p (F_q perfect).

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const SUPPORTED_PRIMES: [u64; 4] = [5, 7, 11, 13];

const fn is_square_mod(p: u64, a: u64) -> bool {
    let mut i = 1;
    while i <= (p - 1) / 2 {
        if (i * i) % p == a {
            return true;
        }
        i += 1;
    }
    false
}

/// θ² for the fixed modulus x² + c0: the least c0 ≥ 1 with −c0 a non-residue.
const fn theta_sq(p: u64) -> u64 {
    let mut c0 = 1;
    loop {
        let neg = p - c0;
        if neg != 0 && !is_square_mod(p, neg) {
            return neg;
        }
        c0 += 1;
    }
}

const fn fq_mul_raw(p: u64, t2: u64, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    let c0 = (a.0 * b.0 + a.1 * b.1 % p * t2) % p;
    let c1 = (a.0 * b.1 + a.1 * b.0) % p;
    (c0, c1)
}

const fn fq_order_is_full(p: u64, t2: u64, a: (u64, u64)) -> bool {
    let q1 = p * p - 1;
    let mut acc = (1u64, 0u64);
    let mut k = 1;
    while k < q1 {
        acc = fq_mul_raw(p, t2, acc, a);
        if acc.0 == 1 && acc.1 == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// First (c0, c1)-lexicographic generator of F_q^×.
const fn generator(p: u64) -> (u64, u64) {
    let t2 = theta_sq(p);
    let mut c0 = 0;
    while c0 < p {
        let mut c1 = 0;
        while c1 < p {
            if !(c0 == 0 && c1 == 0) && fq_order_is_full(p, t2, (c0, c1)) {
                return (c0, c1);
            }
            c1 += 1;
        }
        c0 += 1;
    }
    // Unreachable for prime p: F_q^× is cyclic.
    (0, 0)
}

/// An element of F_q = F_{p^2}, coordinates (c0, c1) w.r.t. the basis {1, θ}.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fq<const P: u64> {
    pub c0: u8,
    pub c1: u8,
}

impl<const P: u64> Fq<P> {
    pub const THETA_SQ: u64 = theta_sq(P);
    pub const GENERATOR: (u64, u64) = generator(P);
    pub const Q: u64 = P * P;

    pub const ZERO: Self = Fq { c0: 0, c1: 0 };
    pub const ONE: Self = Fq { c0: 1, c1: 0 };

    pub fn new(c0: u64, c1: u64) -> Self {
        Fq {
            c0: (c0 % P) as u8,
            c1: (c1 % P) as u8,
        }
    }

    pub fn from_base(a: u64) -> Self {
        Self::new(a, 0)
    }

    pub fn theta() -> Self {
        Self::new(0, 1)
    }

    /// The fixed generator g0 of F_q^×.
    pub fn gen0() -> Self {
        Self::new(Self::GENERATOR.0, Self::GENERATOR.1)
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    /// Lies in the prime field F_p ⊂ F_q.
    pub fn is_base(&self) -> bool {
        self.c1 == 0
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotAUnit);
        }
        Ok(self.pow(Self::Q - 2))
    }

    /// x ↦ x^p, the nontrivial element of Gal(F_q/F_p).
    pub fn frobenius(&self) -> Self {
        self.pow(P)
    }

    /// Enumeration index in 0..q, ordered by (c0, c1).
    pub fn index(&self) -> usize {
        self.c0 as usize * P as usize + self.c1 as usize
    }

    pub fn from_index(i: usize) -> Self {
        let p = P as usize;
        Fq {
            c0: (i / p) as u8,
            c1: (i % p) as u8,
        }
    }

    pub fn all() -> impl Iterator<Item = Self> {
        (0..(P * P) as usize).map(Self::from_index)
    }

    pub fn units() -> impl Iterator<Item = Self> {
        Self::all().filter(|x| !x.is_zero())
    }

    pub fn random(rng: &mut SplitMix64) -> Self {
        Self::from_index(rng.below(P * P) as usize)
    }

    /// Discrete log base g0; None for zero.
    pub fn dlog(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let g = Self::gen0();
        let mut acc = Self::ONE;
        for k in 0..(Self::Q - 1) {
            if acc == *self {
                return Some(k);
            }
            acc = acc * g;
        }
        None
    }
}

impl<const P: u64> Add for Fq<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fq {
            c0: ((self.c0 as u64 + o.c0 as u64) % P) as u8,
            c1: ((self.c1 as u64 + o.c1 as u64) % P) as u8,
        }
    }
}

impl<const P: u64> Sub for Fq<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fq {
            c0: ((P + self.c0 as u64 - o.c0 as u64) % P) as u8,
            c1: ((P + self.c1 as u64 - o.c1 as u64) % P) as u8,
        }
    }
}

impl<const P: u64> Neg for Fq<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::ZERO - self
    }
}

impl<const P: u64> Mul for Fq<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (c0, c1) = fq_mul_raw(
            P,
            Self::THETA_SQ,
            (self.c0 as u64, self.c1 as u64),
            (o.c0 as u64, o.c1 as u64),
        );
        Fq {
            c0: c0 as u8,
            c1: c1 as u8,
        }
    }
}

impl<const P: u64> fmt::Debug for Fq<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1 == 0 {
            write!(f, "{}", self.c0)
        } else if self.c0 == 0 {
            write!(f, "{}θ", self.c1)
        } else {
            write!(f, "{}+{}θ", self.c0, self.c1)
        }
    }
}

impl<const P: u64> fmt::Display for Fq<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Coefficients c_s = binom(p, s)/p mod p of the Witt polynomial, s = 1..p−1.
fn witt_coeffs<const P: u64>() -> Vec<Fq<P>> {
    let mut out = Vec::with_capacity(P as usize - 1);
    let mut binom: u128 = 1; // binom(p, s) built incrementally
    for s in 1..P {
        binom = binom * (P - s + 1) as u128 / s as u128;
        let c = (binom / P as u128) % P as u128;
        out.push(Fq::from_base(c as u64));
    }
    out
}

/// The Witt carry polynomial P(X, Y) = Σ_{s=1}^{p−1} (binom(p,s)/p) X^{(p−s)/p} Y^{s/p},
/// with t^{1/p} read as t^p.
pub fn witt_poly_p<const P: u64>(x: Fq<P>, y: Fq<P>) -> Fq<P> {
    let xr = x.frobenius();
    let yr = y.frobenius();
    let mut acc = Fq::ZERO;
    for (s, c) in (1..P).zip(witt_coeffs::<P>()) {
        acc = acc + c * xr.pow(P - s) * yr.pow(s);
    }
    acc
}

/// A length-2 Witt vector [a0] + p[a1] over F_q, i.e. an element of Z_q/p².
#[derive(Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct W2<const P: u64> {
    pub a0: Fq<P>,
    pub a1: Fq<P>,
}

impl<const P: u64> W2<P> {
    pub const ZERO: Self = W2 {
        a0: Fq::ZERO,
        a1: Fq::ZERO,
    };
    pub const ONE: Self = W2 {
        a0: Fq::ONE,
        a1: Fq::ZERO,
    };

    pub fn new(a0: Fq<P>, a1: Fq<P>) -> Self {
        W2 { a0, a1 }
    }

    /// Teichmüller lift [λ].
    pub fn teichmuller(l: Fq<P>) -> Self {
        W2 {
            a0: l,
            a1: Fq::ZERO,
        }
    }

    /// p·[λ].
    pub fn p_times(l: Fq<P>) -> Self {
        W2 {
            a0: Fq::ZERO,
            a1: l,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !self.a0.is_zero()
    }

    pub fn frobenius(&self) -> Self {
        W2 {
            a0: self.a0.frobenius(),
            a1: self.a1.frobenius(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        // ([a0](1 + p[a1/a0]))^{-1} = [a0^{-1}](1 − p[a1/a0])
        let a0i = self.a0.inv()?;
        Ok(W2 {
            a0: a0i,
            a1: -(self.a1 * a0i * a0i),
        })
    }

    pub fn random(rng: &mut SplitMix64) -> Self {
        W2 {
            a0: Fq::random(rng),
            a1: Fq::random(rng),
        }
    }
}

impl<const P: u64> Add for W2<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        // [a] + [b] = [a+b] − p[P(a,b)]
        W2 {
            a0: self.a0 + o.a0,
            a1: self.a1 + o.a1 - witt_poly_p(self.a0, o.a0),
        }
    }
}

impl<const P: u64> Neg for W2<P> {
    type Output = Self;
    fn neg(self) -> Self {
        // [−1] = −1 in Z_q, so −u = [−1]·u
        W2 {
            a0: -self.a0,
            a1: -self.a1,
        }
    }
}

impl<const P: u64> Sub for W2<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const P: u64> Mul for W2<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        W2 {
            a0: self.a0 * o.a0,
            a1: self.a0 * o.a1 + self.a1 * o.a0,
        }
    }
}

impl<const P: u64> fmt::Debug for W2<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}]+p[{:?}]", self.a0, self.a1)
    }
}

/// Runtime description of the compiled arithmetic for a prime, for reports
/// and recipe files.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PrimeParams {
    pub p: u64,
    /// Coefficients (c0, c1) of the modulus x² + c1·x + c0.
    pub modulus: (u64, u64),
    /// Coordinates (c0, c1) of the generator g0 of F_q^×.
    pub generator: (u64, u64),
}

impl PrimeParams {
    pub fn new(p: u64) -> Result<Self> {
        match p {
            5 => Ok(Self::describe::<5>()),
            7 => Ok(Self::describe::<7>()),
            11 => Ok(Self::describe::<11>()),
            13 => Ok(Self::describe::<13>()),
            _ => Err(Error::UnsupportedPrime(p)),
        }
    }

    pub fn describe<const P: u64>() -> Self {
        PrimeParams {
            p: P,
            modulus: ((P - Fq::<P>::THETA_SQ) % P, 0),
            generator: Fq::<P>::GENERATOR,
        }
    }

    pub fn q(&self) -> u64 {
        self.p * self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fixed_constants_p5() {
        // modulus x² + 2 (θ² = 3), generator 1 + θ
        assert_eq!(Fq::<5>::THETA_SQ, 3);
        assert_eq!(Fq::<5>::GENERATOR, (1, 1));
        assert_eq!(
            PrimeParams::new(5).unwrap(),
            PrimeParams {
                p: 5,
                modulus: (2, 0),
                generator: (1, 1)
            }
        );
    }

    #[test]
    fn fixed_constants_p7() {
        // modulus x² + 1 (θ² = 6)
        assert_eq!(Fq::<7>::THETA_SQ, 6);
        let g = Fq::<7>::gen0();
        let mut acc = Fq::<7>::ONE;
        let mut ord = 0;
        loop {
            acc = acc * g;
            ord += 1;
            if acc == Fq::<7>::ONE {
                break;
            }
        }
        assert_eq!(ord, 48);
    }

    #[test]
    fn generator_order_full_p5() {
        let g = Fq::<5>::gen0();
        for k in 1..24 {
            assert_ne!(g.pow(k), Fq::<5>::ONE, "order divides {k}");
        }
        assert_eq!(g.pow(24), Fq::<5>::ONE);
    }

    #[test]
    fn fermat_exhaustive_p5() {
        for x in Fq::<5>::all() {
            assert_eq!(x.pow(25), x);
        }
    }

    #[test]
    fn frobenius_is_involutive_ring_hom() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..100 {
            let x = Fq::<5>::random(&mut rng);
            let y = Fq::<5>::random(&mut rng);
            assert_eq!(x.frobenius().frobenius(), x);
            assert_eq!((x * y).frobenius(), x.frobenius() * y.frobenius());
            assert_eq!((x + y).frobenius(), x.frobenius() + y.frobenius());
        }
    }

    #[test]
    fn witt_poly_zero_and_one() {
        // P(x, 0) = 0: every summand carries a positive power of y.
        for x in Fq::<5>::all() {
            assert_eq!(witt_poly_p(x, Fq::ZERO), Fq::ZERO);
            assert_eq!(witt_poly_p(Fq::ZERO, x), Fq::ZERO);
        }
        // P(1, 1) = Σ binom(5,s)/5 = 1 + 2 + 2 + 1 = 6 ≡ 1 (mod 5).
        assert_eq!(witt_poly_p(Fq::<5>::ONE, Fq::<5>::ONE), Fq::from_base(1));
    }

    #[test]
    fn witt_poly_symmetric() {
        let mut rng = SplitMix64::new(2024);
        for _ in 0..50 {
            let x = Fq::<5>::random(&mut rng);
            let y = Fq::<5>::random(&mut rng);
            assert_eq!(witt_poly_p(x, y), witt_poly_p(y, x));
        }
    }

    #[test]
    fn teichmuller_multiplicative() {
        for l in Fq::<5>::all() {
            for m in Fq::<5>::all() {
                assert_eq!(
                    W2::teichmuller(l) * W2::teichmuller(m),
                    W2::teichmuller(l * m)
                );
            }
        }
    }

    #[test]
    fn teichmuller_addition_rule() {
        // [μ] + [λ] = [μ+λ] − p[P(μ,λ)]
        let mut rng = SplitMix64::new(5);
        for _ in 0..200 {
            let l = Fq::<5>::random(&mut rng);
            let m = Fq::<5>::random(&mut rng);
            let s = W2::teichmuller(l) + W2::teichmuller(m);
            assert_eq!(s.a0, l + m);
            assert_eq!(s.a1, -witt_poly_p(l, m));
        }
    }

    #[test]
    fn one_unit_inverse() {
        // (1 + p[c])^{-1} = 1 − p[c]
        for c in Fq::<5>::all() {
            let u = W2::ONE + W2::p_times(c);
            let v = u.inv().unwrap();
            assert_eq!(v, W2::ONE - W2::p_times(c));
            assert_eq!(u * v, W2::ONE);
        }
    }

    #[test]
    fn inv_of_non_unit_fails() {
        assert!(W2::<5>::p_times(Fq::ONE).inv().is_err());
    }

    #[test]
    fn distributivity_exhaustive_base_p5() {
        // all of W2(F_p)^3
        let base: Vec<W2<5>> = (0..5)
            .flat_map(|a| (0..5).map(move |b| W2::new(Fq::from_base(a), Fq::from_base(b))))
            .collect();
        for &u in &base {
            for &v in &base {
                for &w in &base {
                    assert_eq!(u * (v + w), u * v + u * w);
                }
            }
        }
    }

    #[test]
    fn ring_axioms_seeded_fq() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..1000 {
            let u = W2::<5>::random(&mut rng);
            let v = W2::<5>::random(&mut rng);
            let w = W2::<5>::random(&mut rng);
            assert_eq!((u + v) + w, u + (v + w));
            assert_eq!(u + v, v + u);
            assert_eq!(u * (v * w), (u * v) * w);
            assert_eq!(u * v, v * u);
            assert_eq!(u * (v + w), u * v + u * w);
            assert_eq!(u + W2::ZERO, u);
            assert_eq!(u * W2::ONE, u);
            assert_eq!(u - u, W2::ZERO);
        }
    }

    #[test]
    fn witt_frobenius_ring_endo() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..100 {
            let u = W2::<5>::random(&mut rng);
            let v = W2::<5>::random(&mut rng);
            assert_eq!((u * v).frobenius(), u.frobenius() * v.frobenius());
            assert_eq!((u + v).frobenius(), u.frobenius() + v.frobenius());
            assert_eq!(u.frobenius().frobenius(), u);
        }
    }

    #[test]
    fn unit_inverses_seeded() {
        let mut rng = SplitMix64::new(17);
        let mut n = 0;
        while n < 200 {
            let u = W2::<7>::random(&mut rng);
            if !u.is_unit() {
                continue;
            }
            n += 1;
            assert_eq!(u * u.inv().unwrap(), W2::ONE);
        }
    }

    proptest! {
        #[test]
        fn fq_field_axioms(ai in 0usize..25, bi in 0usize..25, ci in 0usize..25) {
            let a = Fq::<5>::from_index(ai);
            let b = Fq::<5>::from_index(bi);
            let c = Fq::<5>::from_index(ci);
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            if !a.is_zero() {
                prop_assert_eq!(a * a.inv().unwrap(), Fq::ONE);
            }
        }
    }
}
