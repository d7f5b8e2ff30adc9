//! The truncated quaternion order O_D/p²O_D and the finite group
//! Γ = O_D^× / (Z_D¹ · U_D^{2N}) at truncation level N = 2.
//!
//! An element a + ϖ_D·b is stored by its two Witt-vector components. The
//! multiplication rule follows from ϖ_D² = p and ϖ_D⁻¹ a ϖ_D = σ(a):
//!
//!   (a + ϖb)(c + ϖd) = (ac + p·σ(b)d) + ϖ(σ(a)d + bc).
//!
//! Group elements are kept in the canonical form [t]·A(μ₁, μ₂, μ₃) with
//! A(μ₁,μ₂,μ₃) = 1 + ϖ[μ₁] + p[μ₂] + pϖ[μ₃], where the coefficient of 1 in
//! the F_p-expansion of μ₂ is normalized to zero; multiplying by the central
//! 1 + p[c] (c ∈ F_p) shifts (μ₂, μ₃) ↦ (μ₂ + c, μ₃ + c·μ₁), so this pins a
//! unique representative of each Z_D¹-coset.

use crate::arith::{witt_poly_p, Fq, W2};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Mul;

/// An element of O_D/p²O_D.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuatElem<const P: u64> {
    pub a: W2<P>,
    pub b: W2<P>,
}

impl<const P: u64> QuatElem<P> {
    pub const ONE: Self = QuatElem {
        a: W2::ONE,
        b: W2::ZERO,
    };

    pub fn new(a: W2<P>, b: W2<P>) -> Self {
        QuatElem { a, b }
    }

    pub fn varpi() -> Self {
        QuatElem {
            a: W2::ZERO,
            b: W2::ONE,
        }
    }

    pub fn scalar(a: W2<P>) -> Self {
        QuatElem { a, b: W2::ZERO }
    }

    pub fn is_unit(&self) -> bool {
        self.a.is_unit()
    }

    /// ϖ⁻¹ x ϖ, i.e. componentwise Frobenius.
    pub fn conj_by_varpi(&self) -> Self {
        QuatElem {
            a: self.a.frobenius(),
            b: self.b.frobenius(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        // x·(σ(a) − ϖb) = aσ(a) − p·σ(b)b is central (σ-fixed), so
        // x⁻¹ = (σ(a) − ϖb)·N⁻¹.
        let norm = self.a * self.a.frobenius()
            - W2::p_times((self.b.frobenius() * self.b).a0);
        let ninv = norm.inv()?;
        Ok(QuatElem {
            a: self.a.frobenius() * ninv,
            b: -(self.b * ninv),
        })
    }

    pub fn random_unit(rng: &mut SplitMix64) -> Self {
        loop {
            let x = QuatElem {
                a: W2::random(rng),
                b: W2::random(rng),
            };
            if x.is_unit() {
                return x;
            }
        }
    }
}

impl<const P: u64> Mul for QuatElem<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let carry = self.b.frobenius() * o.b;
        QuatElem {
            a: self.a * o.a + W2::p_times(carry.a0),
            b: self.a.frobenius() * o.b + self.b * o.a,
        }
    }
}

impl<const P: u64> fmt::Debug for QuatElem<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + ϖ({:?})", self.a, self.b)
    }
}

/// How deep an element sits in the congruence filtration, modulo Z_D¹.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SubgroupLevel {
    L0,
    L1,
    L2,
    L3,
    Infinity,
}

/// Canonical-form element of Γ = O_D^×/(Z_D¹·U_D^{2N}), N = 2.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElem<const P: u64> {
    pub teich: Fq<P>,
    pub mu1: Fq<P>,
    pub mu2: Fq<P>,
    pub mu3: Fq<P>,
    pub level: u8,
}

pub const LEVEL: u8 = 2;

impl<const P: u64> GroupElem<P> {
    pub fn new(teich: Fq<P>, mu1: Fq<P>, mu2: Fq<P>, mu3: Fq<P>, level: u8) -> Result<Self> {
        if level != LEVEL {
            return Err(Error::UnsupportedLevel(level));
        }
        if teich.is_zero() {
            return Err(Error::NotAUnit);
        }
        let mut g = GroupElem {
            teich,
            mu1,
            mu2,
            mu3,
            level,
        };
        g.canonicalize();
        Ok(g)
    }

    pub fn identity() -> Self {
        GroupElem {
            teich: Fq::ONE,
            mu1: Fq::ZERO,
            mu2: Fq::ZERO,
            mu3: Fq::ZERO,
            level: LEVEL,
        }
    }

    /// [t] for t ∈ F_q^×.
    pub fn from_teich(t: Fq<P>) -> Self {
        Self::new(t, Fq::ZERO, Fq::ZERO, Fq::ZERO, LEVEL).expect("nonzero teich")
    }

    /// A(μ₁, μ₂, μ₃).
    pub fn a_elem(mu1: Fq<P>, mu2: Fq<P>, mu3: Fq<P>) -> Self {
        Self::new(Fq::ONE, mu1, mu2, mu3, LEVEL).expect("unit")
    }

    /// 1 + ϖ[λ].
    pub fn u1_elem(l: Fq<P>) -> Self {
        Self::a_elem(l, Fq::ZERO, Fq::ZERO)
    }

    fn canonicalize(&mut self) {
        let c = Fq::from_base(self.mu2.c0 as u64);
        if !c.is_zero() {
            self.mu2 = self.mu2 - c;
            self.mu3 = self.mu3 - c * self.mu1;
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn to_quat(&self) -> QuatElem<P> {
        let t = self.teich;
        let tp = t.frobenius();
        QuatElem {
            a: W2::new(t, t * self.mu2),
            b: W2::new(tp * self.mu1, tp * self.mu3),
        }
    }

    pub fn from_quat(x: QuatElem<P>) -> Result<Self> {
        let (t, u) = to_a_coords(x)?;
        Self::new(t, u.mu1, u.mu2, u.mu3, LEVEL)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_quat(self.to_quat() * o.to_quat()).expect("product of units")
    }

    pub fn inv(&self) -> Self {
        Self::from_quat(self.to_quat().inv().expect("unit")).expect("unit")
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::identity();
        let mut base = *self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// ϖ⁻¹ g ϖ on canonical forms.
    pub fn conj_by_varpi(&self) -> Self {
        Self::new(
            self.teich.frobenius(),
            self.mu1.frobenius(),
            self.mu2.frobenius(),
            self.mu3.frobenius(),
            LEVEL,
        )
        .expect("unit")
    }

    /// Largest n with g ∈ U_D^n·Z_D¹ (Infinity for the identity coset).
    pub fn subgroup_level(&self) -> SubgroupLevel {
        if self.teich != Fq::ONE {
            return SubgroupLevel::L0;
        }
        if !self.mu1.is_zero() {
            return SubgroupLevel::L1;
        }
        if !self.mu2.is_zero() {
            return SubgroupLevel::L2;
        }
        if !self.mu3.is_zero() {
            return SubgroupLevel::L3;
        }
        SubgroupLevel::Infinity
    }

    pub fn random(rng: &mut SplitMix64) -> Self {
        Self::from_quat(QuatElem::random_unit(rng)).expect("unit")
    }

    /// Order of Γ at this truncation: (q−1)·q·p·q.
    pub fn group_order() -> u64 {
        let q = P * P;
        (q - 1) * q * P * q
    }
}

impl<const P: u64> fmt::Debug for GroupElem<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:?}]A({:?},{:?},{:?})",
            self.teich, self.mu1, self.mu2, self.mu3
        )
    }
}

/// Factor a unit as [x̄]·u with u ∈ U_D¹ in A-coordinates (not Z_D¹-reduced:
/// the returned GroupElem is the canonical representative of u's coset).
pub fn to_a_coords<const P: u64>(x: QuatElem<P>) -> Result<(Fq<P>, GroupElem<P>)> {
    if !x.is_unit() {
        return Err(Error::NotAUnit);
    }
    let t = x.a.a0;
    let ti = t.inv()?;
    let tpi = ti.frobenius();
    let mu2 = x.a.a1 * ti;
    let mu1 = x.b.a0 * tpi;
    let mu3 = x.b.a1 * tpi;
    Ok((t, GroupElem::new(Fq::ONE, mu1, mu2, mu3, LEVEL)?))
}

/// The factorization data of A(μ₁,μ₂,μ₃)·(1 + ϖ[λ]) as
/// (1 + ϖ[μ₁+λ])·(1 + p[μ₂+μ₁^pλ] + pϖ[X]).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LemmaProduct<const P: u64> {
    /// 1 + ϖ[μ₁+λ]
    pub leading: GroupElem<P>,
    /// μ₂ + μ₁^p λ
    pub mu2_part: Fq<P>,
    /// X = μ₃ + μ₂^p λ − (μ₁+λ)(μ₂+μ₁^pλ) − P(μ₁, λ)
    pub x: Fq<P>,
}

pub fn lemma_product<const P: u64>(
    mu1: Fq<P>,
    mu2: Fq<P>,
    mu3: Fq<P>,
    l: Fq<P>,
) -> LemmaProduct<P> {
    let lead = mu1 + l;
    let m2 = mu2 + mu1.frobenius() * l;
    let x = mu3 + mu2.frobenius() * l - lead * m2 - witt_poly_p(mu1, l);
    LemmaProduct {
        leading: GroupElem::u1_elem(lead),
        mu2_part: m2,
        x,
    }
}

/// Generating atoms of Γ: one semisimple generator [g₀] and the six
/// unipotent coset generators over the F_p-basis {1, θ} of F_q.
#[derive(Copy, Clone, PartialEq, Eq, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Atom {
    /// [g₀]
    Semisimple,
    /// 1 + ϖ[1], 1 + ϖ[θ]
    U1(u8),
    /// 1 + p[1], 1 + p[θ]  (the first is central and trivial in Γ)
    U2(u8),
    /// 1 + pϖ[1], 1 + pϖ[θ]
    U3(u8),
}

pub const ATOMS: [Atom; 7] = [
    Atom::Semisimple,
    Atom::U1(0),
    Atom::U1(1),
    Atom::U2(0),
    Atom::U2(1),
    Atom::U3(0),
    Atom::U3(1),
];

/// Atoms generating the subgroup U_D²·H.
pub const U2H_ATOMS: [Atom; 5] = [
    Atom::Semisimple,
    Atom::U2(0),
    Atom::U2(1),
    Atom::U3(0),
    Atom::U3(1),
];

impl Atom {
    fn basis_elem<const P: u64>(i: u8) -> Fq<P> {
        if i == 0 {
            Fq::ONE
        } else {
            Fq::theta()
        }
    }

    pub fn element<const P: u64>(&self) -> GroupElem<P> {
        match *self {
            Atom::Semisimple => GroupElem::from_teich(Fq::gen0()),
            Atom::U1(i) => GroupElem::u1_elem(Self::basis_elem(i)),
            Atom::U2(i) => GroupElem::a_elem(Fq::ZERO, Self::basis_elem(i), Fq::ZERO),
            Atom::U3(i) => GroupElem::a_elem(Fq::ZERO, Fq::ZERO, Self::basis_elem(i)),
        }
    }

    pub fn index(&self) -> usize {
        match *self {
            Atom::Semisimple => 0,
            Atom::U1(i) => 1 + i as usize,
            Atom::U2(i) => 3 + i as usize,
            Atom::U3(i) => 5 + i as usize,
        }
    }

    pub fn is_unipotent(&self) -> bool {
        !matches!(self, Atom::Semisimple)
    }
}

/// Canonical atom word for g: [g₀]^k (1+ϖ[1])^u (1+ϖ[θ])^v (1+p[θ])^c
/// (1+pϖ[1])^d (1+pϖ[θ])^e. Exponents may be zero; the word evaluates to g.
pub fn factor<const P: u64>(g: &GroupElem<P>) -> Vec<(Atom, u64)> {
    let k = g.teich.dlog().expect("teich nonzero");
    let mut word = vec![(Atom::Semisimple, k)];
    let rest = GroupElem::from_teich(g.teich.pow(P * P - 2))
        .mul(g);
    debug_assert_eq!(rest.teich, Fq::ONE);
    let u = rest.mu1.c0 as u64;
    let v = rest.mu1.c1 as u64;
    word.push((Atom::U1(0), u));
    word.push((Atom::U1(1), v));
    let w = Atom::U1(0)
        .element::<P>()
        .pow(u)
        .mul(&Atom::U1(1).element::<P>().pow(v));
    let rest2 = w.inv().mul(&rest);
    debug_assert!(rest2.mu1.is_zero());
    debug_assert_eq!(rest2.mu2.c0, 0);
    let c = rest2.mu2.c1 as u64;
    let d = rest2.mu3.c0 as u64;
    let e = rest2.mu3.c1 as u64;
    word.push((Atom::U2(1), c));
    word.push((Atom::U3(0), d));
    word.push((Atom::U3(1), e));
    word
}

/// Like `factor` but for elements of U_D²·H (μ₁ must vanish).
pub fn factor_u2h<const P: u64>(g: &GroupElem<P>) -> Result<Vec<(Atom, u64)>> {
    if !g.mu1.is_zero() {
        return Err(Error::BadAction(format!(
            "element {:?} is not in U_D^2 H",
            g
        )));
    }
    let k = g.teich.dlog().expect("teich nonzero");
    Ok(vec![
        (Atom::Semisimple, k),
        (Atom::U2(1), g.mu2.c1 as u64),
        (Atom::U3(0), g.mu3.c0 as u64),
        (Atom::U3(1), g.mu3.c1 as u64),
    ])
}

/// Evaluate an atom word as a group element.
pub fn eval_word<const P: u64>(word: &[(Atom, u64)]) -> GroupElem<P> {
    let mut acc = GroupElem::identity();
    for &(atom, e) in word {
        acc = acc.mul(&atom.element::<P>().pow(e));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = GroupElem<5>;
    type Q = QuatElem<5>;

    fn fq(c0: u64, c1: u64) -> Fq<5> {
        Fq::new(c0, c1)
    }

    #[test]
    fn quat_ring_unit_inverse() {
        let mut rng = SplitMix64::new(1);
        for _ in 0..300 {
            let x = Q::random_unit(&mut rng);
            let xi = x.inv().unwrap();
            assert_eq!(x * xi, Q::ONE);
            assert_eq!(xi * x, Q::ONE);
        }
    }

    #[test]
    fn varpi_squared_is_p() {
        let w = Q::varpi();
        let p = Q::scalar(W2::p_times(Fq::ONE));
        assert_eq!(w * w, p);
    }

    #[test]
    fn sigma_relation() {
        // a·ϖ = ϖ·σ(a)
        let mut rng = SplitMix64::new(2);
        for _ in 0..100 {
            let a = Q::scalar(W2::random(&mut rng));
            let w = Q::varpi();
            assert_eq!(a * w, w * Q::scalar(a.a.frobenius()));
        }
    }

    #[test]
    fn atoms_have_inverses() {
        for atom in ATOMS {
            let g = atom.element::<5>();
            assert!(g.mul(&g.inv()).is_identity());
        }
    }

    #[test]
    fn group_associativity_seeded() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..10_000 {
            let a = G::random(&mut rng);
            let b = G::random(&mut rng);
            let c = G::random(&mut rng);
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }

    #[test]
    fn central_factor_canonicalizes_away() {
        // x and x·(1+p[c]) with c ∈ F_p give equal canonical forms
        let mut rng = SplitMix64::new(9);
        for _ in 0..200 {
            let x = Q::random_unit(&mut rng);
            for c in 0..5 {
                let z = Q::scalar(W2::ONE + W2::p_times(Fq::from_base(c)));
                assert_eq!(G::from_quat(x).unwrap(), G::from_quat(x * z).unwrap());
            }
        }
    }

    #[test]
    fn roundtrip_up_to_center() {
        let mut rng = SplitMix64::new(10);
        for _ in 0..200 {
            let x = Q::random_unit(&mut rng);
            let g = G::from_quat(x).unwrap();
            let y = g.to_quat();
            // y⁻¹·x must be central of the form 1 + p[c], c ∈ F_p
            let z = y.inv().unwrap() * x;
            assert!(z.b.is_zero());
            assert_eq!(z.a.a0, Fq::ONE);
            assert!(z.a.a1.is_base());
        }
        // and from_quat ∘ to_quat is the identity on canonical forms
        for _ in 0..200 {
            let g = G::random(&mut rng);
            assert_eq!(G::from_quat(g.to_quat()).unwrap(), g);
        }
    }

    #[test]
    fn teich_normalizes_u1_cosets() {
        // [μ]·(1+ϖ[λ]) = (1+ϖ[μ^{p−1}λ])·[μ], exhaustively
        for mu in Fq::<5>::units() {
            for l in Fq::<5>::all() {
                let lhs = G::from_teich(mu).mul(&G::u1_elem(l));
                let rhs = G::u1_elem(mu.pow(4) * l).mul(&G::from_teich(mu));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn lemma_product_against_quaternion_mult() {
        let mut rng = SplitMix64::new(12);
        for _ in 0..1000 {
            let m1 = Fq::<5>::random(&mut rng);
            let m2 = Fq::<5>::random(&mut rng);
            let m3 = Fq::<5>::random(&mut rng);
            let l = Fq::<5>::random(&mut rng);
            let lp = lemma_product(m1, m2, m3, l);
            // both sides as literal products in O_D/p² (no Z_D¹ reduction)
            let direct = quat_a(m1, m2, m3) * quat_a(l, Fq::ZERO, Fq::ZERO);
            let factored = lp.leading.to_quat() * quat_a(Fq::ZERO, lp.mu2_part, lp.x);
            assert_eq!(direct, factored, "m1={m1:?} m2={m2:?} m3={m3:?} l={l:?}");
        }
    }

    // The literal quaternion A(μ₁, μ₂, μ₃) = 1 + ϖ[μ₁] + p[μ₂] + pϖ[μ₃].
    fn quat_a(m1: Fq<5>, m2: Fq<5>, m3: Fq<5>) -> Q {
        Q::new(W2::ONE + W2::p_times(m2), W2::new(m1, m3))
    }

    #[test]
    fn lemma_product_specializations() {
        let mut rng = SplitMix64::new(13);
        for _ in 0..200 {
            let m1 = Fq::<5>::random(&mut rng);
            let m3 = Fq::<5>::random(&mut rng);
            let l = Fq::<5>::random(&mut rng);
            // (μ₁,0,0; λ): X = −(μ₁+λ)μ₁^pλ − P(μ₁,λ)
            let lp = lemma_product(m1, Fq::ZERO, Fq::ZERO, l);
            assert_eq!(
                lp.x,
                -((m1 + l) * (m1.frobenius() * l)) - witt_poly_p(m1, l)
            );
            // (0,0,μ₃; λ): X = μ₃
            let lp = lemma_product(Fq::ZERO, Fq::ZERO, m3, l);
            assert_eq!(lp.x, m3);
        }
    }

    #[test]
    fn conj_by_varpi_properties() {
        let mut rng = SplitMix64::new(14);
        for l in Fq::<5>::all() {
            assert_eq!(
                G::u1_elem(l).conj_by_varpi(),
                G::u1_elem(l.frobenius())
            );
        }
        for _ in 0..500 {
            let g = G::random(&mut rng);
            let h = G::random(&mut rng);
            assert_eq!(g.conj_by_varpi().conj_by_varpi(), g);
            assert_eq!(
                g.mul(&h).conj_by_varpi(),
                g.conj_by_varpi().mul(&h.conj_by_varpi())
            );
            // agrees with quaternion-side conjugation
            assert_eq!(
                g.conj_by_varpi(),
                G::from_quat(g.to_quat().conj_by_varpi()).unwrap()
            );
        }
    }

    #[test]
    fn subgroup_levels() {
        assert_eq!(
            G::from_teich(Fq::gen0()).subgroup_level(),
            SubgroupLevel::L0
        );
        assert_eq!(G::u1_elem(fq(1, 0)).subgroup_level(), SubgroupLevel::L1);
        assert_eq!(
            G::a_elem(Fq::ZERO, fq(0, 1), Fq::ZERO).subgroup_level(),
            SubgroupLevel::L2
        );
        assert_eq!(
            G::a_elem(Fq::ZERO, Fq::ZERO, fq(1, 2)).subgroup_level(),
            SubgroupLevel::L3
        );
        assert_eq!(G::identity().subgroup_level(), SubgroupLevel::Infinity);
        // central elements 1+p[c], c ∈ F_p, are trivial in Γ
        assert_eq!(
            G::a_elem(Fq::ZERO, fq(3, 0), Fq::ZERO).subgroup_level(),
            SubgroupLevel::Infinity
        );
    }

    #[test]
    fn factorization_reconstructs() {
        let mut rng = SplitMix64::new(15);
        for _ in 0..1000 {
            let g = G::random(&mut rng);
            let word = factor(&g);
            assert_eq!(eval_word::<5>(&word), g);
        }
        // U_D²H factorization
        for _ in 0..200 {
            let g = G::new(
                Fq::<5>::random(&mut rng),
                Fq::ZERO,
                Fq::<5>::random(&mut rng),
                Fq::<5>::random(&mut rng),
                LEVEL,
            );
            let Ok(g) = g else { continue };
            let word = factor_u2h(&g).unwrap();
            assert_eq!(eval_word::<5>(&word), g);
        }
        assert!(factor_u2h(&G::u1_elem(fq(1, 0))).is_err());
    }

    #[test]
    fn group_order_value() {
        assert_eq!(G::group_order(), 75_000);
    }
}
