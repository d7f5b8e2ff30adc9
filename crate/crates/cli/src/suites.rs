//! The named verification suites. Each reproduces one finite statement at
//! desk scale and reports per-case pass/fail results with certificates.
//!
//! Suites whose statements are intrinsically about the level-2 truncation
//! of a profinite computation (the Ext tables, the U_D²-hom space, the
//! nonexistence replay, the tower obstruction) report
//! `certified-level-2-only`; purely arithmetic or commutative-algebra
//! suites report `certified`.

use crate::report::{CaseResult, SuiteBuilder, SuiteReport};
use qmodrep_core::arith::{Fq, W2};
use qmodrep_core::constructions::{
    self, digit_leq, e_minus, e_plus, e_tower, induced_rep, tower_layers,
    u2_elements,
};
use qmodrep_core::error::Error;
use qmodrep_core::gabber::{
    gabber_filtration, grade_growth, grade_resolution, higher_grade_submodule, is_cm_r,
    is_pure_mod, rees, rees_quotient_matches_gr, tamely_close, Ambient, FilteredModule, PolyH,
    RPres,
};
use qmodrep_core::graded_a::{
    classify_mu2, expand_std, expected_graded, ext1_a, prime_filtration, serre_weight_ideal,
    IdealTag, Mu2Class, Presentation, PrimeQuot,
};
use qmodrep_core::grlambda::{
    check_h_tilde_symmetry, classify_pure_mu2, j_filtration_multiplicity,
    left_ideal_quotient, GrElem, GrModule, PureMu2,
};
use qmodrep_core::grouprep::{char_rep, find_isomorphism, intertwiners, Character, SmoothRep};
use qmodrep_core::homalg::{
    boundary_composition_vanishes, boundary_entries_in_augmentation_ideal, ext1,
    ext1_induced_map, frattini_rank_oracle, h1, minimal_resolution, tower_via_ext, ExtMap,
    PGroup, PKind, PModule,
};
use qmodrep_core::linalg::{Matrix, Subspace};
use qmodrep_core::quat::{lemma_product, GroupElem};
use qmodrep_core::rng::SplitMix64;
use qmodrep_core::witt_oracle::{embed_w2, ZqModP2};
use rayon::prelude::*;
use serde_json::json;

pub const SUITE_IDS: [&str; 15] = [
    "witt-oracle",
    "lemma-product",
    "ind-socle",
    "tower-bound",
    "p-plus-1",
    "ext-char-table",
    "ext-tower-table",
    "hom-u2",
    "gr-ann",
    "A-ext-table",
    "prime-filt",
    "h-tilde",
    "nonexist-replay",
    "gabber",
    "weight-shape",
];

pub fn run_suite(id: &str, p: u64, seed: u64, level: u8) -> Option<SuiteReport> {
    match p {
        5 => run_suite_for::<5>(id, seed, level),
        7 => run_suite_for::<7>(id, seed, level),
        11 => run_suite_for::<11>(id, seed, level),
        13 => run_suite_for::<13>(id, seed, level),
        _ => Some(
            SuiteBuilder::new(id, p, level, seed, false)
                .error(format!("unsupported prime {p}")),
        ),
    }
}

fn run_suite_for<const P: u64>(id: &str, seed: u64, level: u8) -> Option<SuiteReport> {
    if level != 2 {
        return Some(
            SuiteBuilder::new(id, P, level, seed, false).error(format!(
                "truncation level {level} is not computable over Z_q/p²; only level 2 is built"
            )),
        );
    }
    let report = match id {
        "witt-oracle" => witt_oracle::<P>(seed),
        "lemma-product" => lemma_product_suite::<P>(seed),
        "ind-socle" => ind_socle::<P>(seed),
        "tower-bound" => tower_bound::<P>(seed),
        "p-plus-1" => p_plus_1::<P>(seed),
        "ext-char-table" => ext_char_table::<P>(seed),
        "ext-tower-table" => ext_tower_table::<P>(seed),
        "hom-u2" => hom_u2::<P>(seed),
        "gr-ann" => gr_ann::<P>(seed),
        "A-ext-table" => a_ext_table::<P>(seed),
        "prime-filt" => prime_filt::<P>(seed),
        "h-tilde" => h_tilde::<P>(seed),
        "nonexist-replay" => nonexist_replay::<P>(seed),
        "gabber" => gabber_suite::<P>(seed),
        "weight-shape" => weight_shape::<P>(seed),
        _ => return None,
    };
    Some(report)
}

// ---------------------------------------------------------------- 1

fn witt_oracle<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("witt-oracle", P, 2, seed, false);
    let ring = ZqModP2::for_prime::<P>();
    let base: Vec<W2<P>> = (0..P)
        .flat_map(|x| (0..P).map(move |y| W2::new(Fq::from_base(x), Fq::from_base(y))))
        .collect();
    let mut ok = true;
    for &u in &base {
        for &v in &base {
            ok &= embed_w2(&ring, u + v) == ring.add(embed_w2(&ring, u), embed_w2(&ring, v));
            ok &= embed_w2(&ring, u * v) == ring.mul(embed_w2(&ring, u), embed_w2(&ring, v));
        }
    }
    b.case(format!("exhaustive W2(F_{P}) pairs"), ok);
    let mut rng = SplitMix64::new(seed);
    let mut ok = true;
    for _ in 0..10_000 {
        let u = W2::<P>::random(&mut rng);
        let v = W2::<P>::random(&mut rng);
        ok &= embed_w2(&ring, u + v) == ring.add(embed_w2(&ring, u), embed_w2(&ring, v));
        ok &= embed_w2(&ring, u * v) == ring.mul(embed_w2(&ring, u), embed_w2(&ring, v));
        ok &= embed_w2(&ring, u.frobenius()) == ring.frobenius(embed_w2(&ring, u));
    }
    b.case("10^4 seeded W2(F_q) pairs", ok);
    b.case(
        "Teichmüller of 2 in Z/25",
        P != 5 || ZqModP2::new(5, 3).teichmuller((2, 0)) == (7, 0),
    );
    b.finish()
}

// ---------------------------------------------------------------- 2

fn lemma_product_suite<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("lemma-product", P, 2, seed, false);
    let mut rng = SplitMix64::new(seed);
    let quat_a = |m1: Fq<P>, m2: Fq<P>, m3: Fq<P>| {
        qmodrep_core::quat::QuatElem::new(W2::ONE + W2::p_times(m2), W2::new(m1, m3))
    };
    let mut ok = true;
    for _ in 0..10_000 {
        let m1 = Fq::<P>::random(&mut rng);
        let m2 = Fq::<P>::random(&mut rng);
        let m3 = Fq::<P>::random(&mut rng);
        let l = Fq::<P>::random(&mut rng);
        let lp = lemma_product(m1, m2, m3, l);
        let direct = quat_a(m1, m2, m3) * quat_a(l, Fq::ZERO, Fq::ZERO);
        let factored = lp.leading.to_quat() * quat_a(Fq::ZERO, lp.mu2_part, lp.x);
        ok &= direct == factored;
    }
    b.case("10^4 seeded factorizations", ok);
    // the two specializations of the displayed formula
    let mut ok_spec = true;
    for _ in 0..500 {
        let m1 = Fq::<P>::random(&mut rng);
        let m3 = Fq::<P>::random(&mut rng);
        let l = Fq::<P>::random(&mut rng);
        let lp = lemma_product(m1, Fq::ZERO, Fq::ZERO, l);
        ok_spec &= lp.x
            == -((m1 + l) * (m1.frobenius() * l)) - qmodrep_core::arith::witt_poly_p(m1, l);
        let lp = lemma_product(Fq::ZERO, Fq::ZERO, m3, l);
        ok_spec &= lp.x == m3;
    }
    b.case("specializations (μ₂=μ₃=0) and (μ₁=μ₂=0)", ok_spec);
    b.finish()
}

// ---------------------------------------------------------------- 3

fn ind_socle<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("ind-socle", P, 2, seed, false);
    let q = P * P;
    let reps = [0i64, 1, 2, 7, (q as i64 - 1) / 2];
    let results: Vec<CaseResult> = reps
        .par_iter()
        .map(|&a| {
            let chi = Character::<P>::new(a);
            let ind = induced_rep(&chi);
            let mut pass = true;
            // socle = F f_0
            let soc = ind.rep.m_socle();
            pass &= soc.dim() == 1 && soc.contains(&ind.f_vector(0, 0));
            // lattice of f-submodules
            for k in 0..q {
                let gen = ind.rep.submodule_generated(&[ind.f_vector(k, 0)]);
                let expect = Subspace::from_vectors(
                    ind.dim(),
                    (0..q)
                        .filter(|&kp| digit_leq::<P>(kp, k))
                        .map(|kp| ind.f_vector(kp, 0)),
                );
                pass &= gen == expect;
            }
            CaseResult {
                case: format!("chi = xi^{a}"),
                pass,
                detail: None,
            }
        })
        .collect();
    b.cases(results);
    b.finish()
}

// ---------------------------------------------------------------- 4

fn tower_bound<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("tower-bound", P, 2, seed, true);
    let pg = PGroup::<P>::new(PKind::U1Level);
    let qm1 = (P * P - 1) as i64;
    let results: Vec<CaseResult> = (0..qm1)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&a| {
            let chi = Character::<P>::new(a);
            let mut pass = true;
            let mut detail = json!({});
            for n in 0..P {
                match e_tower(false, &chi, n) {
                    Ok(t) => {
                        pass &= t.is_uniserial();
                        let layers = t.socle_layers();
                        let expect = tower_layers(false, &chi, n);
                        pass &= layers
                            .iter()
                            .zip(&expect)
                            .all(|(l, &e)| l.chars == vec![e]);
                    }
                    Err(_) => pass = false,
                }
            }
            // uniqueness: the ext-chain reconstruction is isomorphic
            match tower_via_ext(&pg, &chi, P - 1) {
                Ok(alt) => {
                    pass &= find_isomorphism(&alt, &e_tower(false, &chi, P - 1).unwrap())
                        .is_some();
                }
                Err(e) => {
                    pass = false;
                    detail = json!({ "ext_chain_error": e.to_string() });
                }
            }
            // the n = p step is obstructed, with a certificate
            match e_tower(false, &chi, P) {
                Err(Error::Obstruction(msg)) => {
                    detail["obstruction"] = json!(msg);
                }
                _ => pass = false,
            }
            // and the Ext-route obstruction: the unique class of
            // Ext¹(χα, E⁻(χ, p−1)) realizes a non-uniserial module
            let top = e_tower(false, &chi, P - 1).unwrap();
            match ext1(&pg, &char_rep(&chi.times_alpha(1)), &top) {
                Ok(e) => {
                    pass &= e.dim == 1;
                    pass &= !e.classes[0].is_uniserial();
                }
                Err(_) => pass = false,
            }
            CaseResult {
                case: format!("chi = xi^{a}"),
                pass,
                detail: Some(detail),
            }
        })
        .collect();
    b.cases(results);
    b.finish()
}

// ---------------------------------------------------------------- 5

fn p_plus_1<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("p-plus-1", P, 2, seed, false);
    let qm1 = (P * P - 1) as i64;
    let results: Vec<(CaseResult, serde_json::Value)> = (0..qm1)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&a| {
            let chi = Character::<P>::new(a);
            let (pass, cert) = match constructions::search_uniserial_p_plus_1(&chi) {
                Ok(cert) => (
                    cert.holds(),
                    serde_json::to_value(&cert).unwrap_or(json!(null)),
                ),
                Err(e) => (false, json!({ "error": e.to_string() })),
            };
            (
                CaseResult {
                    case: format!("chi = xi^{a}"),
                    pass,
                    detail: None,
                },
                cert,
            )
        })
        .collect();
    for (c, cert) in results {
        b.certificate(cert);
        b.cases(vec![c]);
    }
    b.finish()
}

// ---------------------------------------------------------------- 6

fn ext_char_table<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("ext-char-table", P, 2, seed, true);
    let pg = PGroup::<P>::new(PKind::U1Level);
    let qm1 = (P * P - 1) as i64;
    let pairs: Vec<(i64, i64)> = (0..qm1)
        .flat_map(|x| (0..qm1).map(move |y| (x, y)))
        .collect();
    let results: Vec<(i64, i64, usize, bool)> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let psi = Character::<P>::new(x);
            let chi = Character::<P>::new(y);
            let d = ext1(&pg, &char_rep(&psi), &char_rep(&chi))
                .map(|e| e.dim)
                .unwrap_or(usize::MAX);
            let is_alpha = psi.a == chi.times_alpha(1).a || psi.a == chi.times_alpha(-1).a;
            let expect = usize::from(is_alpha);
            (x, y, d, d == expect)
        })
        .collect();
    let bad: Vec<_> = results.iter().filter(|r| !r.3).collect();
    b.case_detail(
        format!("{} ordered character pairs", results.len()),
        bad.is_empty(),
        json!({ "failures": bad.iter().map(|r| json!([r.0, r.1, r.2])).collect::<Vec<_>>() }),
    );
    // full dimension matrix, rows ψ and columns χ by character exponent
    let mut matrix = vec![vec![0usize; qm1 as usize]; qm1 as usize];
    for &(x, y, d, _) in &results {
        matrix[x as usize][y as usize] = d;
    }
    b.certificate(json!({ "ext1_dim_matrix": matrix }));
    // five-term exactness spot checks on a seeded sample
    let mut rng = SplitMix64::new(seed);
    let mut ok5 = true;
    for _ in 0..10 {
        let chi = Character::<P>::new(rng.below(qm1 as u64) as i64);
        let psi = Character::<P>::new(rng.below(qm1 as u64) as i64);
        ok5 &= five_term_exactness(&pg, &psi, &chi);
    }
    b.case("five-term exactness (10 seeded pairs)", ok5);
    b.finish()
}

fn five_term_exactness<const P: u64>(
    pg: &PGroup<P>,
    psi: &Character<P>,
    chi: &Character<P>,
) -> bool {
    // 0 → Hom(ψ, χα⁻¹) → Ext¹(ψ,χ) →f Ext¹(ψ,E⁻(χ)) →g Ext¹(ψ,χα⁻¹)
    let em = e_minus(chi);
    let src = match ext1(pg, &char_rep(psi), &char_rep(chi)) {
        Ok(e) => e,
        Err(_) => return false,
    };
    let mid = match ext1(pg, &char_rep(psi), &em) {
        Ok(e) => e,
        Err(_) => return false,
    };
    let quo = match ext1(pg, &char_rep(psi), &char_rep(&chi.times_alpha(-1))) {
        Ok(e) => e,
        Err(_) => return false,
    };
    // inclusion χ ↪ E⁻(χ) and projection E⁻(χ) ↠ χα⁻¹ in the chosen bases
    let incl = Matrix::from_rows(vec![vec![Fq::<P>::ONE], vec![Fq::ZERO]]);
    let proj = Matrix::from_rows(vec![vec![Fq::<P>::ZERO, Fq::ONE]]);
    let f = match ext1_induced_map(&src, &mid, &incl, ExtMap::Push) {
        Some(m) => m,
        None => return false,
    };
    let g = match ext1_induced_map(&mid, &quo, &proj, ExtMap::Push) {
        Some(m) => m,
        None => return false,
    };
    // dim ker f = dim Hom(ψ, χα⁻¹)
    let hom_dim = usize::from(psi.a == chi.times_alpha(-1).a);
    let ker_f = if f.rows == 0 {
        src.dim
    } else {
        src.dim - f.rank()
    };
    if ker_f != hom_dim {
        return false;
    }
    // exactness at the middle: im f = ker g
    let im_f: Vec<Vec<Fq<P>>> = (0..src.dim)
        .map(|j| {
            let mut e = vec![Fq::ZERO; src.dim];
            e[j] = Fq::ONE;
            f.apply(&e)
        })
        .collect();
    let im_space = Subspace::from_vectors(mid.dim, im_f);
    let ker_space = if g.rows == 0 {
        Subspace::full(mid.dim)
    } else {
        Subspace::kernel_of(&g)
    };
    im_space == ker_space
}

// ---------------------------------------------------------------- 7

fn ext_tower_table<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("ext-tower-table", P, 2, seed, true);
    let pg = PGroup::<P>::new(PKind::U1Level);
    let qm1 = (P * P - 1) as i64;
    // two representative characters
    for &c in &[2i64, 0] {
        let chi = Character::<P>::new(c);
        // base row: Ext¹(ψ, E⁻(χ)) supported on {χ, χα, χα⁻²}
        let em = e_minus(&chi);
        let row: Vec<(i64, usize)> = (0..qm1)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&x| {
                let psi = Character::<P>::new(x);
                (
                    x,
                    ext1(&pg, &char_rep(&psi), &em).map(|e| e.dim).unwrap_or(9),
                )
            })
            .collect();
        let mut ok = true;
        for &(x, d) in &row {
            let inset = [chi.a, chi.times_alpha(1).a, chi.times_alpha(-2).a]
                .contains(&(x as u32));
            ok &= d == usize::from(inset);
        }
        b.case(format!("Ext(psi, E-(xi^{c})) support"), ok);
        // tower rows for 2 ≤ n ≤ p−1
        for n in 2..P {
            let t = e_tower(false, &chi, n).unwrap();
            let support: Vec<u32> = if n == P - 1 {
                vec![chi.a, chi.times_alpha(1).a]
            } else {
                vec![
                    chi.a,
                    chi.times_alpha(1).a,
                    chi.times_alpha(-(n as i64) - 1).a,
                ]
            };
            let row: Vec<(i64, usize, bool)> = (0..qm1)
                .collect::<Vec<_>>()
                .par_iter()
                .map(|&x| {
                    let psi = Character::<P>::new(x);
                    let e = ext1(&pg, &char_rep(&psi), &t).map(|e| e.dim).unwrap_or(9);
                    // natural map from Ext¹(ψ, E⁻(χ)) when both sides live
                    let iso_ok = if e > 0 {
                        natural_map_rank(&pg, &psi, &chi, n) == Some(true)
                    } else {
                        true
                    };
                    (x, e, iso_ok)
                })
                .collect();
            let mut ok = true;
            for &(x, d, iso_ok) in &row {
                let expect = usize::from(support.contains(&(x as u32)));
                ok &= d == expect && iso_ok;
            }
            b.case(format!("Ext(psi, E-(xi^{c},{n})) support and maps"), ok);
        }
        // Ext¹(E⁺(ψ), E⁻(χ)) = 0 for ψ ∈ {χ, χα⁻²}, and 1-dim at ψ = χα
        let mut ok = true;
        for (k, expect) in [(0i64, 0usize), (-2, 0), (1, 1)] {
            let psi = chi.times_alpha(k);
            let d = ext1(&pg, &e_plus(&psi), &em).map(|e| e.dim).unwrap_or(9);
            ok &= d == expect;
        }
        b.case(format!("Ext(E+(psi), E-(xi^{c})) pattern"), ok);
    }
    b.finish()
}

/// For nonzero Ext¹(ψ, E⁻(χ, n)): is the natural map from Ext¹(ψ, E⁻(χ))
/// an isomorphism exactly unless ψ = χα^{−n−1} (n < p−1)?
fn natural_map_rank<const P: u64>(
    pg: &PGroup<P>,
    psi: &Character<P>,
    chi: &Character<P>,
    n: u64,
) -> Option<bool> {
    let em = e_minus(chi);
    let t = e_tower(false, chi, n).ok()?;
    let incl_basis = intertwiners(&em, &t);
    if incl_basis.len() != 1 {
        return Some(false);
    }
    let src = ext1(pg, &char_rep(psi), &em).ok()?;
    let dst = ext1(pg, &char_rep(psi), &t).ok()?;
    let map = ext1_induced_map(&src, &dst, &incl_basis[0], ExtMap::Push)?;
    let rank = if map.rows == 0 || map.cols == 0 {
        0
    } else {
        map.rank()
    };
    let is_iso = rank == src.dim && rank == dst.dim;
    let exceptional = n < P - 1 && psi.a == chi.times_alpha(-(n as i64) - 1).a;
    Some(if exceptional { !is_iso } else { is_iso })
}

// ---------------------------------------------------------------- 8

fn hom_u2<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("hom-u2", P, 2, seed, true);
    let pg = PGroup::<P>::new(PKind::U2Level);
    let v = PModule::trivial(&pg);
    let space = h1(&pg, &v);
    b.case("dim Hom(U_D^2/Z_D^1, F) = 3", space.dim_h1_full() == 3);
    // the κ₂, κ₂′, ε₂ value vectors on the generators span Z¹
    let vals = |f: &dyn Fn(&GroupElem<P>) -> Fq<P>| -> Vec<Fq<P>> {
        pg.gens.iter().map(|g| f(g)).collect()
    };
    let k2 = vals(&|g| constructions::kappa2(g).unwrap());
    let k2p = vals(&|g| constructions::kappa2_prime(g).unwrap());
    let e2 = vals(&|g| constructions::eps2(g).unwrap());
    let mut all_in = true;
    for c in [&k2, &k2p, &e2] {
        all_in &= space.z1.contains(c);
    }
    b.case("kappa2, kappa2', eps2 are cocycles", all_in);
    let span = Subspace::from_vectors(
        pg.rank(),
        vec![k2.clone(), k2p.clone(), e2.clone()],
    );
    b.case("they form a basis", span.dim() == 3 && space.b1.dim() == 0);
    // H-characters: α⁻¹, α, 1
    let alpha = Character::<P>::alpha();
    let mut chars_ok = true;
    for (c, expect) in [
        (&k2, alpha.inverse().a),
        (&k2p, alpha.a),
        (&e2, Character::<P>::trivial().a),
    ] {
        let img = space.t_matrix.apply(c);
        let scalar = Fq::<P>::gen0().pow(expect as u64);
        let scaled: Vec<Fq<P>> = c.iter().map(|&x| x * scalar).collect();
        chars_ok &= img == scaled;
    }
    b.case("H-characters (alpha^-1, alpha, 1)", chars_ok);
    // cross-check with the minimal resolution rank
    let res = minimal_resolution(&pg);
    b.case("resolution first rank = 3", res.r1 == 3);
    b.case(
        "Frattini oracle agrees",
        frattini_rank_oracle(&pg) == 3,
    );
    b.case(
        "boundary conditions",
        boundary_composition_vanishes(&pg, &res)
            && boundary_entries_in_augmentation_ideal(&res, 3),
    );
    // cocycle homomorphism identities over all of U_D²/Z_D¹
    let u2 = u2_elements::<P>();
    let mut hom_ok = true;
    for g in &u2 {
        for h in u2.iter().take(20) {
            let gh = g.mul(h);
            hom_ok &= constructions::kappa2(&gh).unwrap()
                == constructions::kappa2(g).unwrap() + constructions::kappa2(h).unwrap();
            hom_ok &= constructions::eps2(&gh).unwrap()
                == constructions::eps2(g).unwrap() + constructions::eps2(h).unwrap();
        }
    }
    b.case("additivity on U_D^2", hom_ok);
    b.finish()
}

// ---------------------------------------------------------------- 9

fn gr_ann<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("gr-ann", P, 2, seed, false);
    type E<const P: u64> = GrElem<P>;
    let y = E::<P>::y();
    let z = E::<P>::z();
    for (name, gens, want_basis_deg1) in [
        ("(y^2, z)", vec![E::<P>::mono((2, 0, 0), Fq::ONE), z.clone()], (1usize, 0usize, 0usize)),
        ("(y, z^2)", vec![y.clone(), E::<P>::mono((0, 0, 2), Fq::ONE)], (0, 0, 1)),
    ] {
        let q6 = left_ideal_quotient::<P>(&gens, 6).unwrap();
        let q7 = left_ideal_quotient::<P>(&gens, 7).unwrap();
        b.case(format!("{name}: dimension 3"), q6.dim == 3);
        b.case(
            format!("{name}: stable across bounds 6 and 7"),
            q6.stable && q7.stable && q7.dim == 3,
        );
        let deg1_ok = q6.basis[1].1 == vec![want_basis_deg1];
        b.case(format!("{name}: degree-1 basis"), q6.basis[0].1 == vec![(0, 0, 0)] && deg1_ok);
    }
    // membership identities and the classes of zy, yz
    let q = left_ideal_quotient::<P>(&[E::<P>::mono((2, 0, 0), Fq::ONE), z.clone()], 6).unwrap();
    let two_yzy = y.mul(&z).mul(&y).scale(Fq::from_base(2));
    let rhs = y.mul(&y).mul(&z).add(&z.mul(&y).mul(&y));
    b.case("2yzy = y²z + zy²", two_yzy == rhs);
    let zzy = z.mul(&z).mul(&y);
    let rhs2 = z
        .mul(&y)
        .scale(Fq::from_base(2))
        .add(&y.mul(&z).scale(-Fq::<P>::ONE))
        .mul(&z);
    b.case("z²y = (2zy − yz)z", zzy == rhs2);
    b.case(
        "yzy and z²y lie in (y², z)",
        q.class_of(&y.mul(&z).mul(&y))
            .unwrap()
            .iter()
            .all(|c| c.is_zero())
            && q.class_of(&zzy).unwrap().iter().all(|c| c.is_zero()),
    );
    let zy_class = q.class_of(&z.mul(&y)).unwrap();
    b.case("class of zy spans the degree-2 piece", zy_class.iter().any(|c| !c.is_zero()));
    b.finish()
}

// ---------------------------------------------------------------- 10

fn a_ext_table<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("A-ext-table", P, 2, seed, false);
    let f = Presentation::<P>::f_shift(0);
    let fy = Presentation::<P>::fy_shift(0);
    let fz = Presentation::<P>::fz_shift(0);
    // the corrected 3×3 table: the (F[y], F) and (F[z], F) cells are 1,
    // witnessed below by explicit non-split extensions
    let table: [(&str, &Presentation<P>, &Presentation<P>, usize); 9] = [
        ("(F, F)", &f, &f, 2),
        ("(F[y], F)", &fy, &f, 1),
        ("(F[z], F)", &fz, &f, 1),
        ("(F, F[y])", &f, &fy, 1),
        ("(F[y], F[y])", &fy, &fy, 0),
        ("(F[z], F[y])", &fz, &fy, 1),
        ("(F, F[z])", &f, &fz, 1),
        ("(F[y], F[z])", &fy, &fz, 1),
        ("(F[z], F[z])", &fz, &fz, 0),
    ];
    let mut values = Vec::new();
    for (name, n, npr, expect) in table {
        let got = ext1_a(n, npr);
        let pass = got.as_ref().map(|&d| d == expect).unwrap_or(false);
        values.push(json!({ "cell": name, "dim": got.clone().ok() }));
        b.case(format!("Ext¹{name} = {expect}"), pass);
    }
    b.certificate(json!({ "table": values }));
    // the ✻Ext generator 0 → F[y](−1) → A → F[z] → 0: A is a non-split
    // extension with the stated sub and quotient
    let a = expand_std(&Presentation::<P>::a_shift(0));
    let ker = Subspace::kernel_of(&a.z[1]);
    let sub = a.submodule(&[(1, ker.basis()[0].to_vec())]);
    let q = a.quotient(&sub);
    b.case(
        "star-Ext generator realizes A",
        sub.dims()[1..4] == [1, 1, 1] && q.dims[..3] == [1, 1, 1] && q.y[1].is_zero(),
    );
    // witness for the corrected cells: A/(z²) is non-split 0 → F(−1) → X → F[y] → 0
    let mut x = Presentation::<P>::free(&[0]);
    x.relations
        .push(vec![qmodrep_core::graded_a::AHomog::z_pow(2, Fq::ONE)]);
    let m = expand_std(&x);
    let junk = Subspace::kernel_of(&m.y[1].vstack(&m.z[1]));
    let sub = m.submodule(&[(1, junk.basis()[0].to_vec())]);
    let quo = m.quotient(&sub);
    b.case(
        "corrected cell witness A/(z²)",
        junk.dim() == 1 && quo.dims[..3] == [1, 1, 1] && quo.z[0].is_zero() && !m.z[0].is_zero(),
    );
    b.finish()
}

// ---------------------------------------------------------------- 11

fn prime_filt<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("prime-filt", P, 2, seed, false);
    let mut rng = SplitMix64::new(seed);
    let mut valid = 0usize;
    let mut classified = 0usize;
    let mut failures = Vec::new();
    for t in 0..100 {
        // random direct sum of shifts, then a random submodule (still CM)
        let mut pres = match rng.below(3) {
            0 => Presentation::<P>::a_shift(rng.below(3) as i64 - 1),
            1 => Presentation::<P>::fy_shift(rng.below(3) as i64 - 1),
            _ => Presentation::<P>::fz_shift(rng.below(3) as i64 - 1),
        };
        for _ in 0..rng.below(3) {
            let r = rng.below(3) as i64 - 1;
            pres = match rng.below(3) {
                0 => pres.direct_sum(&Presentation::a_shift(r)),
                1 => pres.direct_sum(&Presentation::fy_shift(r)),
                _ => pres.direct_sum(&Presentation::fz_shift(r)),
            };
        }
        let parent = pres.expand(pres.max_degree() + 14);
        let mut gens = Vec::new();
        for _ in 0..1 + rng.below(3) {
            let i = rng.below(4) as usize;
            if parent.dims[i] == 0 {
                continue;
            }
            let v: Vec<Fq<P>> = (0..parent.dims[i]).map(|_| Fq::random(&mut rng)).collect();
            gens.push((parent.min_deg + i as i64, v));
        }
        if gens.is_empty() {
            continue;
        }
        let sub = parent.submodule(&gens);
        let m = parent.sub_module(&sub);
        if m.total_dim() == 0 {
            continue;
        }
        let mu = match m.mu() {
            Ok(v) => v,
            Err(e) => {
                failures.push(json!({"case": t, "error": e.to_string()}));
                continue;
            }
        };
        if mu == 0 {
            continue;
        }
        match prime_filtration(&m) {
            Ok(steps) => {
                if steps.len() == mu {
                    valid += 1;
                } else {
                    failures.push(json!({"case": t, "len": steps.len(), "mu": mu}));
                }
                // balanced μ = 2 pure modules classify
                let (m0, m1) = m.multiplicity().unwrap_or((9, 9));
                if (m0, m1) == (1, 1) && m.is_pure() {
                    match classify_mu2(&m) {
                        Ok(Mu2Class::AShift { .. }) | Ok(Mu2Class::Split { .. }) => {
                            classified += 1
                        }
                        Err(e) => failures.push(json!({"case": t, "classify": e.to_string()})),
                    }
                }
            }
            Err(e) => failures.push(json!({"case": t, "filtration": e.to_string()})),
        }
    }
    b.case_detail(
        format!("{valid} filtrations valid with length = mu"),
        failures.is_empty() && valid > 40,
        json!({ "failures": failures, "classified_mu2": classified }),
    );
    // fixed instances from the classification statement
    let steps = prime_filtration(&expand_std(&Presentation::<P>::a_shift(0))).unwrap();
    let tags: Vec<PrimeQuot> = steps.iter().map(|s| s.tag).collect();
    b.case(
        "A filters with one layer of each type",
        steps.len() == 2 && tags.contains(&PrimeQuot::FY) && tags.contains(&PrimeQuot::FZ),
    );
    match classify_mu2(&expand_std(&Presentation::<P>::a_shift(2))).unwrap() {
        Mu2Class::AShift { r } => b.case("A(2) classifies as A-type", r == 2),
        _ => b.case("A(2) classifies as A-type", false),
    }
    let split = Presentation::<P>::fy_shift(0).direct_sum(&Presentation::fz_shift(1));
    match classify_mu2(&expand_std(&split)).unwrap() {
        Mu2Class::Split { r, s } => b.case("split shape classifies", (r, s) == (0, 1)),
        _ => b.case("split shape classifies", false),
    }
    b.finish()
}

// ---------------------------------------------------------------- 12

fn h_tilde<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("h-tilde", P, 2, seed, false);
    let mut rng = SplitMix64::new(seed);
    let qm1 = P * P - 1;
    let mut all_ok = true;
    let mut even_ok = true;
    let mut count = 0;
    let mut failures = Vec::new();
    while count < 50 {
        count += 1;
        let kind = rng.below(3);
        let m = match kind {
            0 => {
                // (χ^∨⊗F[y]) ⊕ conj, possibly truncated equally
                let chi = rng.below(qm1) as u32;
                let len = if rng.below(2) == 0 {
                    None
                } else {
                    Some(2 + rng.below(6) as usize)
                };
                GrModule::<P>::swap_varpi(&GrModule::chain(true, chi, len, 14))
            }
            1 => GrModule::<P>::gr_mod_j(14, true),
            _ => {
                // sum of two swap-symmetrized chains
                let a = GrModule::<P>::swap_varpi(&GrModule::chain(
                    true,
                    rng.below(qm1) as u32,
                    None,
                    14,
                ));
                let bm = GrModule::<P>::swap_varpi(&GrModule::chain(
                    true,
                    rng.below(qm1) as u32,
                    Some(1 + rng.below(5) as usize),
                    14,
                ));
                let mut s = a.direct_sum(&bm);
                // block-diagonal varpi
                let va = a.varpi.as_ref().unwrap();
                let vb = bm.varpi.as_ref().unwrap();
                s.varpi = Some(
                    (0..s.len())
                        .map(|i| va[i].block_diag(&vb[i]))
                        .collect(),
                );
                s
            }
        };
        match check_h_tilde_symmetry(&m, 8) {
            Ok(true) => {}
            Ok(false) => {
                all_ok = false;
                failures.push(json!({"case": count, "kind": kind, "balanced": false}));
            }
            Err(e) => {
                all_ok = false;
                failures.push(json!({"case": count, "kind": kind, "error": e.to_string()}));
            }
        }
        if let Ok(f) = j_filtration_multiplicity(&m, 8) {
            even_ok &= f.mu % 2 == 0;
        }
    }
    b.case_detail(
        "m_p0 = m_p1 on 50 seeded varpi-instances",
        all_ok,
        json!({ "failures": failures }),
    );
    b.case("mu lies in 2Z", even_ok);
    // classification of the pure μ = 2 shapes
    let split = GrModule::<P>::swap_varpi(&GrModule::chain(true, 7, None, 14));
    b.case(
        "split shape classifies",
        matches!(classify_pure_mu2(&split, 8), Ok(PureMu2::Split { .. })),
    );
    let atype = GrModule::<P>::gr_mod_j(14, false);
    b.case(
        "A-type shape classifies with sigma-fixed character",
        matches!(
            classify_pure_mu2(&atype, 8),
            Ok(PureMu2::AType { chi: Some(0), .. })
        ),
    );
    b.case("generated in degree 0", atype.generated_in_lowest_degree());
    b.finish()
}

// ---------------------------------------------------------------- 13

fn nonexist_replay<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("nonexist-replay", P, 2, seed, true);
    let pg = PGroup::<P>::new(PKind::U1Level);
    let qm1 = (P * P - 1) as i64;
    let pp1 = (P + 1) as i64;
    let generic: Vec<i64> = (0..qm1)
        .filter(|&c| c.rem_euclid(pp1) != 0 && c.rem_euclid(pp1) != 1)
        .collect();
    b.case(
        format!("{} generic characters", generic.len()),
        generic.len() == ((P as usize * P as usize - 1) / (P as usize + 1)) * (P as usize - 1),
    );
    let results: Vec<CaseResult> = generic
        .par_iter()
        .map(|&c| {
            let chi = Character::<P>::new(c);
            let mut pass = true;
            let mut notes = Vec::new();
            for n in 1..P {
                let vn = match e_tower(false, &chi, n) {
                    Ok(t) => t,
                    Err(_) => {
                        pass = false;
                        break;
                    }
                };
                let psi_sigma = chi.sigma().times_alpha(n as i64 + 1);
                // branch c = 0: extension of ψ^σ by E⁺(χ^σ, n)
                let eplus_n = e_tower(true, &chi.sigma(), n).unwrap();
                match ext1(&pg, &char_rep(&psi_sigma), &eplus_n) {
                    Ok(e) => {
                        if n < P - 1 {
                            // must produce E⁺(χ^σ, n+1), with dim V'[Z] = 1
                            let expected_next = e_tower(true, &chi.sigma(), n + 1).unwrap();
                            let produced = e.dim == 1
                                && e.classes[0].is_uniserial()
                                && find_isomorphism(&e.classes[0], &expected_next).is_some()
                                && Subspace::kernel_of(&e.classes[0].operator_z()).dim() == 1;
                            if !produced {
                                pass = false;
                                notes.push(json!({"n": n, "branch": "c=0", "ok": false}));
                            }
                        } else {
                            // n = p−1: every class is non-uniserial
                            let refuted =
                                e.dim >= 1 && e.classes.iter().all(|x| !x.is_uniserial());
                            if !refuted {
                                pass = false;
                                notes.push(json!({"n": n, "branch": "c=0 terminal", "ok": false}));
                            }
                        }
                    }
                    Err(_) => pass = false,
                }
                // branch c ≠ 0, n < p−1: the E⁺-pullback map is nonzero only
                // at ψ^σ = χα
                if n < P - 1 {
                    let support = [chi.a, chi.times_alpha(1).a, chi.times_alpha(-(n as i64) - 1).a];
                    for &sa in &support {
                        let psis = Character::<P>::new(sa as i64);
                        let ok = eplus_pullback_nonzero(&pg, &psis, &vn);
                        let expect = sa == chi.times_alpha(1).a;
                        if ok != Some(expect) {
                            pass = false;
                            notes.push(json!({"n": n, "branch": "c!=0", "psi": sa, "ok": false}));
                        }
                    }
                    // when the character equation χ^σ α^{n+1} = χα is solvable,
                    // the splitting lemma applies and produces the next tower
                    if psi_sigma.a == chi.times_alpha(1).a {
                        let ok = verify_split1(&pg, &chi, n);
                        if !ok {
                            pass = false;
                            notes.push(json!({"n": n, "branch": "split1", "ok": false}));
                        }
                    }
                } else {
                    // n = p−1 terminal: genericity excludes ψ^σ = χ
                    let sigma_alpha_p = chi.sigma().times_alpha(P as i64);
                    if sigma_alpha_p.a == chi.a {
                        pass = false;
                        notes.push(json!({"n": n, "branch": "genericity", "ok": false}));
                    }
                }
            }
            CaseResult {
                case: format!("chi = xi^{c}"),
                pass,
                detail: if notes.is_empty() {
                    None
                } else {
                    Some(json!(notes))
                },
            }
        })
        .collect();
    b.cases(results);
    // the reduction of the (p+3)-shape to the (p+2)-shape on the graded side
    let mut ok_reduction = true;
    for c in (0..qm1).filter(|&c| c.rem_euclid(pp1) == 0 || c.rem_euclid(pp1) == 1) {
        let chi = Character::<P>::new(c);
        let shape = |len: usize, ch: &Character<P>| -> GrModule<P> {
            GrModule::<P>::chain(true, ch.inverse().a, Some(len), 14).direct_sum(
                &GrModule::chain(false, ch.sigma().inverse().a, Some(len), 14),
            )
        };
        let n = shape(P as usize + 3, &chi);
        // m·N with the degrees shifted by one
        let shifted = GrModule::<P> {
            min_deg: 0,
            dims: n.dims[1..].to_vec(),
            y: n.y[1..].to_vec(),
            z: n.z[1..].to_vec(),
            chars: n.chars.as_ref().map(|cs| cs[1..].to_vec()),
            varpi: None,
        };
        let chi_prime = chi.times_alpha(-1);
        let expect = shape(P as usize + 2, &chi_prime);
        let w = shifted.dims.len().min(expect.dims.len());
        ok_reduction &= shifted.dims[..w] == expect.dims[..w];
        // characters match after the shift
        ok_reduction &= shifted.chars.as_ref().map(|cs| cs[0].clone())
            == expect.chars.as_ref().map(|cs| cs[0].clone());
        // χ′ is generic
        let cp = chi_prime.a as i64;
        ok_reduction &= cp.rem_euclid(pp1) != 0 && cp.rem_euclid(pp1) != 1;
    }
    b.case("shift-by-one reduction on the graded side", ok_reduction);
    b.finish()
}

fn eplus_pullback_nonzero<const P: u64>(
    pg: &PGroup<P>,
    psi: &Character<P>,
    vn: &SmoothRep<P>,
) -> Option<bool> {
    let ep = e_plus(psi);
    let src = ext1(pg, &ep, vn).ok()?;
    let dst = ext1(pg, &char_rep(psi), vn).ok()?;
    if src.dim == 0 {
        return Some(false);
    }
    // pullback along ψ ↪ E⁺(ψ): the socle line of our E⁺ model is the
    // first basis vector
    let incl = Matrix::from_rows(vec![vec![Fq::<P>::ONE], vec![Fq::ZERO]]);
    let map = ext1_induced_map(&src, &dst, &incl, ExtMap::Pull)?;
    Some(!map.is_zero())
}

/// All extension classes V of χ^σα^{n+1} by χ ⊕ E⁺(χ^σ, n) whose socle
/// filtration keeps χ ⊕ E⁺(χ^σ, n) in depth n+1 split as χ ⊕ E⁺(χ^σ, n+1).
fn verify_split1<const P: u64>(pg: &PGroup<P>, chi: &Character<P>, n: u64) -> bool {
    let top = chi.sigma().times_alpha(n as i64 + 1);
    let base = char_rep(chi).direct_sum(&e_tower(true, &chi.sigma(), n).unwrap());
    let Ok(e) = ext1(pg, &char_rep(&top), &base) else {
        return false;
    };
    if e.dim == 0 {
        return true;
    }
    let expect = char_rep(chi).direct_sum(&e_tower(true, &chi.sigma(), n + 1).unwrap());
    // scan every line of the Ext space: each extension datum up to scalar
    let mut lines: Vec<Vec<Fq<P>>> = Vec::new();
    if e.dim == 1 {
        lines.push(vec![Fq::ONE]);
    } else {
        for i in 0..e.dim {
            let mut v = vec![Fq::<P>::ZERO; e.dim];
            v[i] = Fq::ONE;
            for c in Fq::<P>::all() {
                let mut w = v.clone();
                for j in 0..i {
                    w[j] = c;
                }
                if !lines.contains(&w) {
                    lines.push(w);
                }
            }
        }
    }
    let base_dim = n as usize + 2;
    let base_block = Subspace::from_vectors(
        base_dim + 1,
        (0..base_dim).map(|j| {
            let mut v = vec![Fq::<P>::ZERO; base_dim + 1];
            v[j] = Fq::ONE;
            v
        }),
    );
    for coeffs in lines {
        let Ok(x) = e.realize_combination(pg, &char_rep(&top), &base, &coeffs) else {
            return false;
        };
        let chain = x.socle_filtration();
        let idx = n as usize;
        if idx >= chain.len() {
            continue;
        }
        // hypothesis: V[m^{n+1}] is exactly the base block
        if chain[idx].dim() != base_dim || !chain[idx].contains_space(&base_block) {
            continue;
        }
        if find_isomorphism(&x, &expect).is_none() {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------- 14

fn gabber_suite<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("gabber", P, 2, seed, false);
    let mut rng = SplitMix64::new(seed);
    // R-side corpus
    let poly_z = PolyH::<P>::mono(0, 1, Fq::ONE);
    let poly_y = PolyH::<P>::mono(1, 0, Fq::ONE);
    let mut corpus: Vec<(String, FilteredModule<P>)> = Vec::new();
    {
        let fy = RPres::<P>::cyclic(&[poly_z.clone()]);
        let pieces = fy.expand(10);
        let gen = (0i64, vec![Fq::<P>::ONE], 0i64);
        corpus.push((
            "F[y] standard".into(),
            FilteredModule::from_generator_levels(Ambient::PolyRing, &pieces, &[gen.clone()], 10)
                .unwrap(),
        ));
        // redundant deep generator: promotable plateau filtration
        corpus.push((
            "F[y] plateau".into(),
            FilteredModule::from_generator_levels(
                Ambient::PolyRing,
                &pieces,
                &[gen, (1, vec![Fq::ONE], 3)],
                10,
            )
            .unwrap(),
        ));
        let fz = RPres::<P>::cyclic(&[poly_y.clone()]);
        let pz = fz.expand(10);
        corpus.push((
            "F[z] standard".into(),
            FilteredModule::from_generator_levels(
                Ambient::PolyRing,
                &pz,
                &[(0, vec![Fq::ONE], 0)],
                10,
            )
            .unwrap(),
        ));
        let free = RPres::<P>::free(&[0]);
        let pf = free.expand(10);
        corpus.push((
            "F[y,z] free".into(),
            FilteredModule::from_generator_levels(
                Ambient::PolyRing,
                &pf,
                &[(0, vec![Fq::ONE], 0)],
                10,
            )
            .unwrap(),
        ));
        let ideal = RPres::<P>::ideal_y2_z();
        let pi = ideal.expand(12);
        let g1 = {
            let mut v = vec![Fq::<P>::ZERO; pi.dims[1]];
            v[0] = Fq::ONE;
            (2i64, v, 0i64)
        };
        let g2 = {
            let mut v = vec![Fq::<P>::ZERO; pi.dims[0]];
            v[0] = Fq::ONE;
            (1i64, v, 0i64)
        };
        corpus.push((
            "(y²,z) naive".into(),
            FilteredModule::from_generator_levels(
                Ambient::PolyRing,
                &pi,
                &[g1.clone(), g2.clone()],
                10,
            )
            .unwrap(),
        ));
        corpus.push((
            "(y²,z) half-graded".into(),
            FilteredModule::from_generator_levels(
                Ambient::PolyRing,
                &pi,
                &[(2, g1.1.clone(), 1), (1, g2.1.clone(), 0)],
                10,
            )
            .unwrap(),
        ));
    }
    // A-side corpus
    {
        let shapes = [
            ("A over A", Presentation::<P>::a_shift(0)),
            ("F[y] over A", Presentation::<P>::fy_shift(0)),
            (
                "F[y]+F[z] over A",
                Presentation::<P>::fy_shift(0).direct_sum(&Presentation::fz_shift(0)),
            ),
        ];
        for (name, pres) in shapes {
            let pieces = pres.expand(pres.max_degree() + 10);
            let gens: Vec<(i64, Vec<Fq<P>>, i64)> = (0..pieces.dims[0])
                .map(|j| {
                    let mut v = vec![Fq::<P>::ZERO; pieces.dims[0]];
                    v[j] = Fq::ONE;
                    (0i64, v, 0i64)
                })
                .collect();
            corpus.push((
                name.into(),
                FilteredModule::from_generator_levels(Ambient::QuotA, &pieces, &gens, 10)
                    .unwrap(),
            ));
            // a plateau variant with a redundant deep generator
            let mut gens2 = gens.clone();
            let i1 = 1usize;
            if pieces.dims[i1] > 0 {
                let mut v = vec![Fq::<P>::ZERO; pieces.dims[i1]];
                v[0] = Fq::ONE;
                gens2.push((pieces.min_deg + 1, v, 2 + rng.below(2) as i64));
                corpus.push((
                    format!("{name} plateau"),
                    FilteredModule::from_generator_levels(Ambient::QuotA, &pieces, &gens2, 10)
                        .unwrap(),
                ));
            }
        }
    }
    b.case(format!("corpus of {} filtered modules", corpus.len()), corpus.len() >= 10);
    for (name, fm) in &corpus {
        let mut pass = true;
        let mut note = json!({});
        // Rees identity
        match rees(fm) {
            Ok(rm) => pass &= rees_quotient_matches_gr(fm, &rm),
            Err(e) => {
                pass = false;
                note["rees"] = json!(e.to_string());
            }
        }
        match gabber_filtration(fm) {
            Ok(out) => {
                // (b) input ≤ output
                pass &= fm.contained_in(&out);
                // (a) output gr pure
                let gr = out.gr().as_piece_module();
                let j = grade_growth(&fm.pieces, fm.ambient);
                let ji = match fm.ambient {
                    Ambient::PolyRing => j,
                    Ambient::QuotA => j.saturating_sub(2),
                };
                let junk = higher_grade_submodule(&gr, fm.ambient, ji);
                pass &= junk
                    .iter()
                    .take(gr.len().saturating_sub(3))
                    .all(|s| s.dim() == 0);
                // (c) kernel of gr(F) → gr(G) equals the higher-grade part
                pass &= gr_kernel_is_higher_grade(fm, &out, ji);
                // (d) idempotence
                match gabber_filtration(&out) {
                    Ok(again) => pass &= again.same_filtration(&out),
                    Err(_) => pass = false,
                }
                // (e) tame inputs give the same output
                if let Ok(true) = tamely_close(fm, &out) {
                    // also: sum with the output stays in class and re-runs
                    let sum = fm.sum(&out);
                    if let Ok(out2) = gabber_filtration(&sum) {
                        pass &= out2.same_filtration(&out);
                    } else {
                        pass = false;
                    }
                } else {
                    pass = false;
                    note["tame"] = json!("output not tamely close to input");
                }
                // the induced map gr_F → gr_G is nonzero
                pass &= gr_map_nonzero(fm, &out);
            }
            Err(e) => {
                pass = false;
                note["gabber"] = json!(e.to_string());
            }
        }
        b.case_detail(format!("instance: {name}"), pass, note);
    }
    // tame equivalence is an equivalence relation on seeded pairs
    let fy = RPres::<P>::cyclic(&[poly_z]);
    let pieces = fy.expand(10);
    let mk = |lvl: i64| {
        FilteredModule::from_generator_levels(
            Ambient::PolyRing,
            &pieces,
            &[(0, vec![Fq::ONE], 0), (1, vec![Fq::ONE], lvl)],
            10,
        )
        .unwrap()
    };
    let f1 = mk(1);
    let f2 = mk(2);
    let f3 = mk(3);
    let mut eq_ok = tamely_close(&f1, &f1).unwrap_or(false);
    let t12 = tamely_close(&f1, &f2).unwrap_or(false);
    let t21 = tamely_close(&f2, &f1).unwrap_or(false);
    eq_ok &= t12 == t21;
    if t12 && tamely_close(&f2, &f3).unwrap_or(false) {
        eq_ok &= tamely_close(&f1, &f3).unwrap_or(false);
    }
    b.case("tame closeness is reflexive, symmetric, transitive", eq_ok);
    // the grade machinery: resolution route agrees with growth route
    let mut grades_ok = true;
    for pres in [
        RPres::<P>::free(&[0]),
        RPres::<P>::cyclic(&[PolyH::mono(0, 1, Fq::ONE)]),
        RPres::<P>::cyclic(&[PolyH::mono(1, 0, Fq::ONE), PolyH::mono(0, 1, Fq::ONE)]),
        RPres::<P>::ideal_y2_z(),
    ] {
        let g1 = grade_resolution(&pres).unwrap_or(99);
        let g2 = grade_growth(&pres.expand(pres.max_degree() + 10), Ambient::PolyRing);
        grades_ok &= g1 == g2;
    }
    b.case("grade: dual-complex route = growth route", grades_ok);
    // purity lemma on a seeded grade-1 corpus: pure of grade d−1 is CM,
    // verified through the Ext-vanishing profile on R-presentations
    let mut cm_ok = true;
    for _ in 0..50 {
        // random sum of y/z-chains as an F[y,z]-presentation
        let count = 1 + rng.below(3) as usize;
        let mut gen_degrees = Vec::new();
        let mut relations: Vec<Vec<PolyH<P>>> = Vec::new();
        for _ in 0..count {
            gen_degrees.push(rng.below(3) as i64);
        }
        for (i, _) in gen_degrees.iter().enumerate() {
            let killer = if rng.below(2) == 0 {
                PolyH::mono(0, 1, Fq::ONE)
            } else {
                PolyH::mono(1, 0, Fq::ONE)
            };
            let mut rel = vec![PolyH::zero(1); gen_degrees.len()];
            rel[i] = killer;
            relations.push(rel);
        }
        let pres = RPres::<P> {
            gen_degrees,
            relations,
        };
        let m = pres.expand(pres.max_degree() + 10);
        let pure = is_pure_mod(&m, Ambient::PolyRing);
        let grade_one = grade_growth(&m, Ambient::PolyRing) == 1;
        let cm = is_cm_r(&pres).unwrap_or(false);
        cm_ok &= pure && grade_one && cm;
    }
    b.case("pure grade-1 corpus is Cohen-Macaulay (Ext profile)", cm_ok);
    // a non-CM control: the ideal (y², z) has two nonvanishing Ext spots
    b.case(
        "(y²,z) is not Cohen-Macaulay",
        !is_cm_r(&RPres::<P>::ideal_y2_z()).unwrap_or(true),
    );
    b.finish()
}

fn gr_kernel_is_higher_grade<const P: u64>(
    f: &FilteredModule<P>,
    g: &FilteredModule<P>,
    ji: usize,
) -> bool {
    // kernel of gr_F(M) → gr_G(M) at (level n, degree i):
    // (F^n ∩ G^{n+1}) / F^{n+1}; the higher-grade submodule of gr_F is
    // computed blockwise by the same detectors
    let gr_f = f.gr();
    let pieces = gr_f.as_piece_module();
    let junk = higher_grade_submodule(&pieces, f.ambient, ji);
    let nl = f.n_levels().min(g.n_levels());
    let margin = 3;
    for n in 0..nl.saturating_sub(margin) {
        // dimension of the kernel at level n
        let mut kdim = 0;
        for i in 0..f.pieces.len() {
            let fn_cap_gn1 = f.filt[n][i].intersect(&g.filt[n + 1][i]);
            let lower = &f.filt[n + 1][i];
            kdim += fn_cap_gn1.sum(lower).dim() - lower.dim();
        }
        if kdim != junk[n].dim() {
            return false;
        }
    }
    true
}

fn gr_map_nonzero<const P: u64>(f: &FilteredModule<P>, g: &FilteredModule<P>) -> bool {
    // the induced gr_F(M) → gr_G(M) is nonzero: some F^n-class survives
    let nl = f.n_levels().min(g.n_levels());
    for n in 0..nl.saturating_sub(1) {
        for i in 0..f.pieces.len() {
            // image of F^n in G^n/G^{n+1} nonzero?
            for v in f.filt[n][i].basis() {
                if g.filt[n][i].contains(v) && !g.filt[n + 1][i].contains(v) {
                    return true;
                }
            }
        }
    }
    false
}

// ---------------------------------------------------------------- 15

fn weight_shape<const P: u64>(seed: u64) -> SuiteReport {
    let mut b = SuiteBuilder::new("weight-shape", P, 2, seed, false);
    let chi = Character::<P>::new(2);
    // α-adjacent pair ideals
    let w = vec![chi, chi.times_alpha(-1)];
    b.case(
        "a(chi) = (y) when chi·alpha^{-1} is a weight",
        serre_weight_ideal(&w, &chi) == IdealTag::Y,
    );
    b.case(
        "a(chi·alpha^{-1}) = (z)",
        serre_weight_ideal(&w, &chi.times_alpha(-1)) == IdealTag::Z,
    );
    // generic configuration: two α-adjacent pairs, μ = 4, pure, generated
    // in degree 0
    let chi2 = chi.times_alpha(3);
    let generic = vec![chi, chi.times_alpha(-1), chi2, chi2.times_alpha(-1)];
    match expected_graded(&generic) {
        Ok(pres) => {
            let m = expand_std(&pres);
            let mu = m.mu().unwrap_or(0);
            b.case("generic weight set: mu = 4", mu == 4);
            b.case("generic weight set: pure", m.is_pure());
            let gens: Vec<(i64, Vec<Fq<P>>)> = (0..m.dims[0])
                .map(|j| {
                    let mut v = vec![Fq::<P>::ZERO; m.dims[0]];
                    v[j] = Fq::ONE;
                    (0, v)
                })
                .collect();
            let sub = m.submodule(&gens);
            b.case("generated in degree 0", sub.dims() == m.dims);
            b.certificate(json!({
                "weights": generic.iter().map(|c| c.a).collect::<Vec<_>>(),
                "mu": mu,
                "hilbert": m.dims,
            }));
        }
        Err(e) => {
            b.case("generic weight set builds", false);
            b.certificate(json!({ "error": e.to_string() }));
        }
    }
    // four isolated weights: μ = 8
    let spread: Vec<Character<P>> = vec![
        Character::new(0),
        Character::new(1),
        Character::new(2),
        Character::new(3),
    ];
    match expected_graded(&spread) {
        Ok(pres) => {
            let mu = expand_std(&pres).mu().unwrap_or(0);
            b.case("isolated weight set: mu = 8", mu == 8);
        }
        Err(_) => b.case("isolated weight set: mu = 8", false),
    }
    b.finish()
}
