//! W2 arithmetic against the independent integer oracle for Z_q/p².

use qmodrep_core::arith::{Fq, W2};
use qmodrep_core::rng::SplitMix64;
use qmodrep_core::witt_oracle::{embed_w2, ZqModP2};

fn base_elements<const P: u64>() -> Vec<W2<P>> {
    (0..P)
        .flat_map(|a| (0..P).map(move |b| W2::new(Fq::from_base(a), Fq::from_base(b))))
        .collect()
}

fn check_pair<const P: u64>(ring: &ZqModP2, u: W2<P>, v: W2<P>) {
    assert_eq!(
        embed_w2(ring, u + v),
        ring.add(embed_w2(ring, u), embed_w2(ring, v)),
        "add mismatch at {u:?}, {v:?}"
    );
    assert_eq!(
        embed_w2(ring, u * v),
        ring.mul(embed_w2(ring, u), embed_w2(ring, v)),
        "mul mismatch at {u:?}, {v:?}"
    );
}

#[test]
fn exhaustive_base_ring_p5() {
    let ring = ZqModP2::for_prime::<5>();
    let base = base_elements::<5>();
    for &u in &base {
        for &v in &base {
            check_pair(&ring, u, v);
        }
    }
    // The embedding W2(F_p) -> Z/p^2 is bijective.
    let mut images: Vec<u64> = base.iter().map(|&u| embed_w2(&ring, u).0).collect();
    images.sort_unstable();
    images.dedup();
    assert_eq!(images.len(), 25);
    for &u in &base {
        assert_eq!(embed_w2(&ring, u).1, 0);
    }
}

#[test]
fn exhaustive_base_ring_p7() {
    let ring = ZqModP2::for_prime::<7>();
    let base = base_elements::<7>();
    for &u in &base {
        for &v in &base {
            check_pair(&ring, u, v);
        }
    }
}

#[test]
fn seeded_full_ring_p5() {
    let ring = ZqModP2::for_prime::<5>();
    let mut rng = SplitMix64::new(0x1770);
    for _ in 0..10_000 {
        let u = W2::<5>::random(&mut rng);
        let v = W2::<5>::random(&mut rng);
        check_pair(&ring, u, v);
    }
}

#[test]
fn frobenius_matches_oracle_p5() {
    let mut rng = SplitMix64::new(31);
    let ring = ZqModP2::for_prime::<5>();
    for _ in 0..500 {
        let u = W2::<5>::random(&mut rng);
        assert_eq!(embed_w2(&ring, u.frobenius()), ring.frobenius(embed_w2(&ring, u)));
    }
}

#[test]
fn embedding_injective_p5() {
    let mut seen = std::collections::HashSet::new();
    let ring = ZqModP2::for_prime::<5>();
    for i in 0..25usize {
        for j in 0..25usize {
            let u = W2::<5>::new(Fq::from_index(i), Fq::from_index(j));
            assert!(seen.insert(embed_w2(&ring, u)), "collision at {u:?}");
        }
    }
    assert_eq!(seen.len(), 625);
}
