//! The graded ring gr(Λ) ≅ U(𝔤) with [y, z] = h central, deg y = deg z = 1,
//! deg h = 2 (forced by h = yz − zy); left-ideal quotients at bounded degree;
//! graded modules with H̃-action; the J-adic layer multiplicity; and the
//! extraction of gr_{m_D}(π^∨) from a smooth representation.

use crate::arith::Fq;
use crate::error::{Error, Result};
use crate::graded_a::PieceModule;
use crate::grouprep::{Character, SmoothRep};
use crate::linalg::{Matrix, Subspace};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// PBW monomial y^a h^b z^c.
pub type Mono = (usize, usize, usize);

pub fn mono_degree(m: Mono) -> usize {
    m.0 + 2 * m.1 + m.2
}

/// An element of gr(Λ) as an F-combination of PBW monomials.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GrElem<const P: u64> {
    pub terms: BTreeMap<Mono, Fq<P>>,
}

impl<const P: u64> GrElem<P> {
    pub fn zero() -> Self {
        GrElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn mono(m: Mono, c: Fq<P>) -> Self {
        let mut e = Self::zero();
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    pub fn y() -> Self {
        Self::mono((1, 0, 0), Fq::ONE)
    }

    pub fn z() -> Self {
        Self::mono((0, 0, 1), Fq::ONE)
    }

    pub fn h() -> Self {
        Self::mono((0, 1, 0), Fq::ONE)
    }

    pub fn one() -> Self {
        Self::mono((0, 0, 0), Fq::ONE)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: Fq<P>) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert(Fq::ZERO);
        *e = *e + c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&m, &c) in &o.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn scale(&self, c: Fq<P>) -> Self {
        let mut out = Self::zero();
        for (&m, &v) in &self.terms {
            out.add_term(m, v * c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (&m1, &c1) in &self.terms {
            for (&m2, &c2) in &o.terms {
                let prod = mono_mul::<P>(m1, m2);
                for (&m, &c) in &prod.terms {
                    out.add_term(m, c * c1 * c2);
                }
            }
        }
        out
    }

    /// Homogeneous of a single degree?
    pub fn degree(&self) -> Option<usize> {
        let mut d = None;
        for &m in self.terms.keys() {
            let md = mono_degree(m);
            match d {
                None => d = Some(md),
                Some(x) if x == md => {}
                _ => return None,
            }
        }
        d
    }

    /// H-character exponent shift α^{a−c}, when the element is H-homogeneous.
    pub fn h_weight(&self) -> Option<i64> {
        let mut w = None;
        for &(a, _, c) in self.terms.keys() {
            let mw = a as i64 - c as i64;
            match w {
                None => w = Some(mw),
                Some(x) if x == mw => {}
                _ => return None,
            }
        }
        w
    }
}

/// z^c·y^a straightened into normal order: z y^a = y^a z − a·h·y^{a−1}.
fn z_pow_y_pow<const P: u64>(c: usize, a: usize) -> GrElem<P> {
    if c == 0 || a == 0 {
        return GrElem::mono((a, 0, c), Fq::ONE);
    }
    // z^c y^a = z^{c−1}·(z y^a) = z^{c−1}(y^a z − a h y^{a−1})
    let first = z_pow_y_pow::<P>(c - 1, a); // z^{c−1} y^a
    let mut out = GrElem::zero();
    for (&(ya, hb, zc), &coeff) in &first.terms {
        out.add_term((ya, hb, zc + 1), coeff);
    }
    let second = z_pow_y_pow::<P>(c - 1, a - 1); // z^{c−1} y^{a−1}
    let amod = Fq::from_base(a as u64 % P);
    for (&(ya, hb, zc), &coeff) in &second.terms {
        out.add_term((ya, hb + 1, zc), -(coeff * amod));
    }
    out
}

fn mono_mul<const P: u64>(m1: Mono, m2: Mono) -> GrElem<P> {
    // (y^a1 h^b1 z^c1)(y^a2 h^b2 z^c2) = y^a1 h^{b1+b2} (z^{c1} y^{a2}) z^{c2}
    let mid = z_pow_y_pow::<P>(m1.2, m2.0);
    let mut out = GrElem::zero();
    for (&(a, b, c), &coeff) in &mid.terms {
        out.add_term((m1.0 + a, m1.1 + m2.1 + b, c + m2.2), coeff);
    }
    out
}

/// PBW monomials of a given degree, ordered.
pub fn gr_basis(d: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    for b in 0..=(d / 2) {
        for a in 0..=(d - 2 * b) {
            let c = d - 2 * b - a;
            out.push((a, b, c));
        }
    }
    out.sort_unstable();
    out
}

/// Quotient of gr(Λ) by a left ideal, truncated at a degree bound.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealQuotient<const P: u64> {
    pub dim: usize,
    /// surviving PBW monomials per degree
    pub basis: Vec<(usize, Vec<Mono>)>,
    /// true when the top two degrees contribute nothing
    pub stable: bool,
    pub bound: usize,
    #[serde(skip)]
    pub rel_spaces: Vec<Subspace<P>>,
}

/// dim gr(Λ)/(left ideal generated by gens), degree-truncated.
pub fn left_ideal_quotient<const P: u64>(
    gens: &[GrElem<P>],
    bound: usize,
) -> Result<IdealQuotient<P>> {
    for g in gens {
        if g.degree().is_none() {
            return Err(Error::PreconditionFailed(
                "ideal generators must be homogeneous".into(),
            ));
        }
    }
    let mut dim = 0;
    let mut basis = Vec::new();
    let mut top_two = 0;
    let mut rel_spaces = Vec::new();
    for d in 0..=bound {
        let mons = gr_basis(d);
        let pos: BTreeMap<Mono, usize> = mons.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut space = Subspace::zero(mons.len());
        for g in gens {
            let gd = g.degree().unwrap_or(0);
            if gd > d {
                continue;
            }
            for m in gr_basis(d - gd) {
                // left multiple m·g
                let prod = GrElem::mono(m, Fq::ONE).mul(g);
                let mut v = vec![Fq::ZERO; mons.len()];
                for (&t, &c) in &prod.terms {
                    v[pos[&t]] = v[pos[&t]] + c;
                }
                space.insert(v);
            }
        }
        let comp = space.complement_positions();
        let surviving: Vec<Mono> = comp.iter().map(|&i| mons[i]).collect();
        dim += surviving.len();
        if d + 2 > bound {
            top_two += surviving.len();
        }
        basis.push((d, surviving));
        rel_spaces.push(space);
    }
    Ok(IdealQuotient {
        dim,
        basis,
        stable: top_two == 0,
        bound,
        rel_spaces,
    })
}

impl<const P: u64> IdealQuotient<P> {
    /// The class of a homogeneous element in the truncated quotient,
    /// in coordinates on the surviving monomials of its degree.
    pub fn class_of(&self, e: &GrElem<P>) -> Option<Vec<Fq<P>>> {
        let d = e.degree()?;
        if d > self.bound {
            return None;
        }
        let mons = gr_basis(d);
        let pos: BTreeMap<Mono, usize> = mons.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut v = vec![Fq::ZERO; mons.len()];
        for (&t, &c) in &e.terms {
            v[pos[&t]] = v[pos[&t]] + c;
        }
        let red = self.rel_spaces[d].reduce(v);
        let comp = self.rel_spaces[d].complement_positions();
        Some(comp.iter().map(|&i| red[i]).collect())
    }
}

/// A graded gr(Λ)-module held as pieces with y- and z-maps (h = yz − zy
/// derived), an optional H-character tag per basis vector, and an optional
/// degree-preserving ϖ_D-map intertwining y ↔ z.
#[derive(Clone, Debug)]
pub struct GrModule<const P: u64> {
    pub min_deg: i64,
    pub dims: Vec<usize>,
    pub y: Vec<Matrix<P>>,
    pub z: Vec<Matrix<P>>,
    pub chars: Option<Vec<Vec<u32>>>,
    pub varpi: Option<Vec<Matrix<P>>>,
}

impl<const P: u64> GrModule<P> {
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// h-map N_i → N_{i+2}.
    pub fn h_map(&self, i: usize) -> Matrix<P> {
        &(&self.y[i + 1] * &self.z[i]) - &(&self.z[i + 1] * &self.y[i])
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n.saturating_sub(1) {
            if self.y[i].rows != self.dims[i + 1] || self.y[i].cols != self.dims[i] {
                return Err(Error::DimError {
                    expected: self.dims[i + 1],
                    got: self.y[i].rows,
                });
            }
        }
        // h central: h commutes with y and z
        for i in 0..n.saturating_sub(3) {
            let hy = &self.h_map(i + 1) * &self.y[i];
            let yh = &self.y[i + 2] * &self.h_map(i);
            if hy != yh {
                return Err(Error::BadAction("h does not commute with y".into()));
            }
            let hz = &self.h_map(i + 1) * &self.z[i];
            let zh = &self.z[i + 2] * &self.h_map(i);
            if hz != zh {
                return Err(Error::BadAction("h does not commute with z".into()));
            }
        }
        if let Some(chars) = &self.chars {
            // y shifts the character by α, z by α⁻¹
            let alpha = (P - 1) as i64;
            let q1 = (P * P - 1) as i64;
            for i in 0..n.saturating_sub(1) {
                for (maps, shift) in [(&self.y[i], alpha), (&self.z[i], -alpha)] {
                    for r in 0..maps.rows {
                        for c in 0..maps.cols {
                            if !maps[(r, c)].is_zero() {
                                let want = (chars[i][c] as i64 + shift).rem_euclid(q1) as u32;
                                if chars[i + 1][r] != want {
                                    return Err(Error::BadAction(
                                        "maps violate the H-character grading".into(),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        if let Some(w) = &self.varpi {
            for i in 0..n {
                if w[i].rows != self.dims[i] || w[i].cols != self.dims[i] {
                    return Err(Error::BadAction("varpi map has wrong shape".into()));
                }
                if w[i].rank() != self.dims[i] {
                    return Err(Error::BadAction("varpi map not invertible".into()));
                }
            }
            // w∘y = z∘w and w∘z = y∘w
            for i in 0..n.saturating_sub(1) {
                if &w[i + 1] * &self.y[i] != &self.z[i] * &w[i]
                    || &w[i + 1] * &self.z[i] != &self.y[i] * &w[i]
                {
                    return Err(Error::BadAction(
                        "varpi does not intertwine y and z".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Forget the gr(Λ)-structure down to A = gr(Λ)/J on a J-killed module.
    pub fn as_a_module(&self) -> PieceModule<P> {
        PieceModule {
            min_deg: self.min_deg,
            dims: self.dims.clone(),
            y: self.y.clone(),
            z: self.z.clone(),
            chars: self.chars.clone(),
        }
    }

    pub fn pad_to(&self, len: usize) -> GrModule<P> {
        let mut out = self.clone();
        while out.dims.len() < len {
            let last = *out.dims.last().unwrap_or(&0);
            let _ = last;
            out.y.push(Matrix::zero(0, *out.dims.last().unwrap()));
            out.z.push(Matrix::zero(0, *out.dims.last().unwrap()));
            out.dims.push(0);
            if let Some(c) = &mut out.chars {
                c.push(Vec::new());
            }
            if let Some(w) = &mut out.varpi {
                w.push(Matrix::zero(0, 0));
            }
        }
        out
    }

    /// χ^∨ ⊗ F[y]/(y^len) (or the z-side), with optional truncation; chars
    /// are the dual-convention exponents starting at `chi_dual_exp`.
    pub fn chain(
        yside: bool,
        chi_dual_exp: u32,
        len: Option<usize>,
        window: usize,
    ) -> GrModule<P> {
        let n = window;
        let alive = |i: usize| -> bool {
            match len {
                Some(l) => i < l,
                None => true,
            }
        };
        let dims: Vec<usize> = (0..n).map(|i| if alive(i) { 1 } else { 0 }).collect();
        let mk = |on: bool, i: usize| -> Matrix<P> {
            if on && alive(i) && alive(i + 1) {
                Matrix::identity(1)
            } else {
                Matrix::zero(if alive(i + 1) { 1 } else { 0 }, if alive(i) { 1 } else { 0 })
            }
        };
        let y: Vec<Matrix<P>> = (0..n - 1).map(|i| mk(yside, i)).collect();
        let z: Vec<Matrix<P>> = (0..n - 1).map(|i| mk(!yside, i)).collect();
        let q1 = (P * P - 1) as i64;
        let alpha = (P - 1) as i64;
        let chars = Some(
            (0..n)
                .map(|i| {
                    if alive(i) {
                        let shift = if yside { alpha } else { -alpha };
                        vec![(chi_dual_exp as i64 + shift * i as i64).rem_euclid(q1) as u32]
                    } else {
                        Vec::new()
                    }
                })
                .collect(),
        );
        GrModule {
            min_deg: 0,
            dims,
            y,
            z,
            chars,
            varpi: None,
        }
    }

    /// gr(Λ)/J ≅ A as a graded gr(Λ)-module (trivial character), with the
    /// y↔z swap as ϖ-map.
    pub fn gr_mod_j(window: usize, with_varpi: bool) -> GrModule<P> {
        // pieces: degree 0: {1}; degree d ≥ 1: {y^d, z^d}
        let dims: Vec<usize> = (0..window).map(|d| if d == 0 { 1 } else { 2 }).collect();
        let mut y = Vec::new();
        let mut z = Vec::new();
        for d in 0..window - 1 {
            if d == 0 {
                y.push(Matrix::from_rows(vec![vec![Fq::ONE], vec![Fq::ZERO]]));
                z.push(Matrix::from_rows(vec![vec![Fq::ZERO], vec![Fq::ONE]]));
            } else {
                y.push(Matrix::from_rows(vec![
                    vec![Fq::ONE, Fq::ZERO],
                    vec![Fq::ZERO, Fq::ZERO],
                ]));
                z.push(Matrix::from_rows(vec![
                    vec![Fq::ZERO, Fq::ZERO],
                    vec![Fq::ZERO, Fq::ONE],
                ]));
            }
        }
        let q1 = (P * P - 1) as i64;
        let alpha = (P - 1) as i64;
        let chars = Some(
            (0..window)
                .map(|d| {
                    if d == 0 {
                        vec![0]
                    } else {
                        vec![
                            (alpha * d as i64).rem_euclid(q1) as u32,
                            (-alpha * d as i64).rem_euclid(q1) as u32,
                        ]
                    }
                })
                .collect(),
        );
        let varpi = with_varpi.then(|| {
            (0..window)
                .map(|d| {
                    if d == 0 {
                        Matrix::identity(1)
                    } else {
                        // swap y^d ↔ z^d
                        Matrix::from_rows(vec![
                            vec![Fq::ZERO, Fq::ONE],
                            vec![Fq::ONE, Fq::ZERO],
                        ])
                    }
                })
                .collect()
        });
        let m = GrModule {
            min_deg: 0,
            dims,
            y,
            z,
            chars: if with_varpi { None } else { chars },
            varpi,
        };
        debug_assert!(m.validate().is_ok());
        m
    }

    pub fn direct_sum(&self, other: &GrModule<P>) -> GrModule<P> {
        assert_eq!(self.min_deg, other.min_deg);
        let n = self.len().min(other.len());
        GrModule {
            min_deg: self.min_deg,
            dims: (0..n).map(|i| self.dims[i] + other.dims[i]).collect(),
            y: (0..n - 1)
                .map(|i| self.y[i].block_diag(&other.y[i]))
                .collect(),
            z: (0..n - 1)
                .map(|i| self.z[i].block_diag(&other.z[i]))
                .collect(),
            chars: match (&self.chars, &other.chars) {
                (Some(a), Some(b)) => Some(
                    (0..n)
                        .map(|i| {
                            let mut v = a[i].clone();
                            v.extend(&b[i]);
                            v
                        })
                        .collect(),
                ),
                _ => None,
            },
            varpi: None,
        }
    }

    /// Add a ϖ-map that swaps the two summands of M ⊕ M^σ, where the second
    /// carries the conjugate structure (y ↔ z swapped).
    pub fn swap_varpi(m: &GrModule<P>) -> GrModule<P> {
        // build M ⊕ M^conj with the swap map
        let n = m.len();
        let conj = GrModule {
            min_deg: m.min_deg,
            dims: m.dims.clone(),
            y: m.z.clone(),
            z: m.y.clone(),
            chars: m.chars.as_ref().map(|cs| {
                cs.iter()
                    .map(|v| {
                        v.iter()
                            .map(|&a| ((a as u64 * P) % (P * P - 1)) as u32)
                            .collect()
                    })
                    .collect()
            }),
            varpi: None,
        };
        let mut sum = m.direct_sum(&conj);
        let varpi = (0..n)
            .map(|i| {
                let d = m.dims[i];
                Matrix::from_fn(2 * d, 2 * d, |r, c| {
                    if r < d && c >= d && r == c - d {
                        Fq::ONE
                    } else if r >= d && c < d && r - d == c {
                        Fq::ONE
                    } else {
                        Fq::ZERO
                    }
                })
            })
            .collect();
        sum.varpi = Some(varpi);
        sum.chars = None;
        debug_assert!(sum.validate().is_ok());
        sum
    }

    /// The gr(Λ)-submodule generated by given homogeneous vectors, as
    /// per-degree subspaces (closure under y and z).
    pub fn submodule_spaces(&self, gens: &[(i64, Vec<Fq<P>>)]) -> Vec<Subspace<P>> {
        let mut spaces: Vec<Subspace<P>> =
            self.dims.iter().map(|&d| Subspace::zero(d)).collect();
        let mut queue = Vec::new();
        for (d, v) in gens {
            let i = (d - self.min_deg) as usize;
            if spaces[i].insert(v.clone()) {
                queue.push((i, v.clone()));
            }
        }
        while let Some((i, v)) = queue.pop() {
            if i + 1 < self.len() {
                for m in [&self.y[i], &self.z[i]] {
                    let w = m.apply(&v);
                    if spaces[i + 1].insert(w.clone()) {
                        queue.push((i + 1, w));
                    }
                }
            }
        }
        spaces
    }

    /// J·S for a family of per-degree subspaces S (J = (yz, zy)).
    fn j_image(&self, spaces: &[Subspace<P>]) -> Vec<Subspace<P>> {
        let mut gens = Vec::new();
        for i in 0..self.len().saturating_sub(2) {
            for b in spaces[i].basis() {
                let yz = self.y[i + 1].apply(&self.z[i].apply(b));
                let zy = self.z[i + 1].apply(&self.y[i].apply(b));
                gens.push(((self.min_deg + i as i64 + 2), yz));
                gens.push(((self.min_deg + i as i64 + 2), zy));
            }
        }
        self.submodule_spaces(&gens)
    }

    /// Is the module generated by its degree-(min occupied) piece?
    pub fn generated_in_lowest_degree(&self) -> bool {
        let Some(i0) = self.dims.iter().position(|&d| d > 0) else {
            return true;
        };
        let gens: Vec<(i64, Vec<Fq<P>>)> = (0..self.dims[i0])
            .map(|j| {
                let mut v = vec![Fq::ZERO; self.dims[i0]];
                v[j] = Fq::ONE;
                (self.min_deg + i0 as i64, v)
            })
            .collect();
        let spaces = self.submodule_spaces(&gens);
        let margin = 2;
        spaces
            .iter()
            .enumerate()
            .take(self.len().saturating_sub(margin))
            .all(|(i, s)| s.dim() == self.dims[i])
    }
}

/// The report of a J-adic multiplicity computation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JFiltration {
    pub m_p0: usize,
    pub m_p1: usize,
    pub mu: usize,
    /// smallest n with J^n·N = 0 (within the window)
    pub n_j: usize,
}

/// Multiplicity through the J-adic layers: each J^iN/J^{i+1}N is an
/// A-module and is measured by the stable-rank multiplicity.
pub fn j_filtration_multiplicity<const P: u64>(
    n: &GrModule<P>,
    n_max: usize,
) -> Result<JFiltration> {
    let full: Vec<Subspace<P>> = n.dims.iter().map(|&d| Subspace::full(d)).collect();
    let mut filt = vec![full];
    loop {
        let next = n.j_image(filt.last().unwrap());
        let zero = next.iter().all(|s| s.dim() == 0);
        filt.push(next);
        if zero {
            break;
        }
        if filt.len() > n_max {
            return Err(Error::NotInCategoryC { n_max });
        }
    }
    let n_j = filt.len() - 1;
    let mut m0 = 0;
    let mut m1 = 0;
    let min_window = 10;
    for w in filt.windows(2) {
        // layer = w[0]/w[1] as an A-module
        let layer = layer_between(n, &w[0], &w[1]);
        let layer = pad_piece(&layer, n.len().max(min_window));
        if !layer.check_yz_zero() {
            return Err(Error::BadAction("J-layer not killed by yz, zy".into()));
        }
        let (a, b) = layer.multiplicity()?;
        m0 += a;
        m1 += b;
    }
    Ok(JFiltration {
        m_p0: m0,
        m_p1: m1,
        mu: m0 + m1,
        n_j,
    })
}

fn layer_between<const P: u64>(
    n: &GrModule<P>,
    outer: &[Subspace<P>],
    inner: &[Subspace<P>],
) -> PieceModule<P> {
    // coordinates: basis of outer, quotient by inner-inside-outer
    let k = n.len();
    let mut inner_in_outer = Vec::with_capacity(k);
    for i in 0..k {
        let coords = inner[i]
            .basis()
            .iter()
            .map(|v| outer[i].coordinates(v).expect("inner ⊆ outer"));
        inner_in_outer.push(Subspace::from_vectors(outer[i].dim(), coords));
    }
    let dims: Vec<usize> = (0..k)
        .map(|i| outer[i].dim() - inner_in_outer[i].dim())
        .collect();
    let map = |ms: &Vec<Matrix<P>>| -> Vec<Matrix<P>> {
        (0..k.saturating_sub(1))
            .map(|i| {
                let comp_s = inner_in_outer[i].complement_positions();
                let comp_d = inner_in_outer[i + 1].complement_positions();
                let mut out = Matrix::zero(comp_d.len(), comp_s.len());
                for (col, &cs) in comp_s.iter().enumerate() {
                    let v = outer[i].basis()[cs].clone();
                    let img = ms[i].apply(&v);
                    let coords = outer[i + 1]
                        .coordinates(&img)
                        .expect("outer closed under maps");
                    let red = inner_in_outer[i + 1].reduce(coords);
                    for (row, &cd) in comp_d.iter().enumerate() {
                        out[(row, col)] = red[cd];
                    }
                }
                out
            })
            .collect()
    };
    PieceModule {
        min_deg: n.min_deg,
        dims,
        y: map(&n.y),
        z: map(&n.z),
        chars: None,
    }
}

fn pad_piece<const P: u64>(m: &PieceModule<P>, len: usize) -> PieceModule<P> {
    let mut out = m.clone();
    while out.dims.len() < len {
        out.y.push(Matrix::zero(0, *out.dims.last().unwrap()));
        out.z.push(Matrix::zero(0, *out.dims.last().unwrap()));
        out.dims.push(0);
        if let Some(c) = &mut out.chars {
            c.push(Vec::new());
        }
    }
    out
}

/// m_{p₀} = m_{p₁} for modules carrying a compatible ϖ_D-map.
pub fn check_h_tilde_symmetry<const P: u64>(n: &GrModule<P>, n_max: usize) -> Result<bool> {
    if n.varpi.is_none() {
        return Err(Error::BadAction("no varpi map present".into()));
    }
    n.validate()?;
    let f = j_filtration_multiplicity(n, n_max)?;
    Ok(f.m_p0 == f.m_p1)
}

/// The classification of a pure μ = 2 module with H̃-action.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum PureMu2 {
    /// (χ ⊗ F[y]) ⊕ (χ^σ ⊗ F[z]), shifts equal by the grading
    Split { chi: Option<u32>, shift: i64 },
    /// χ ⊗ F[y,z]/(yz) with χ = χ^σ
    AType { chi: Option<u32>, shift: i64 },
}

/// Classify a pure module with μ = 2 and balanced multiplicities; first
/// certifies that h, yz and zy annihilate it (the proof's reduction).
pub fn classify_pure_mu2<const P: u64>(n: &GrModule<P>, n_max: usize) -> Result<PureMu2> {
    let f = j_filtration_multiplicity(n, n_max)?;
    if (f.m_p0, f.m_p1) != (1, 1) {
        return Err(Error::PreconditionFailed(format!(
            "multiplicities ({}, {}) are not (1, 1)",
            f.m_p0, f.m_p1
        )));
    }
    // h, yz, zy must act by zero
    for i in 0..n.len().saturating_sub(2) {
        let yz = &n.y[i + 1] * &n.z[i];
        let zy = &n.z[i + 1] * &n.y[i];
        if !yz.is_zero() || !zy.is_zero() {
            return Err(Error::PreconditionFailed(
                "J does not annihilate the module".into(),
            ));
        }
    }
    let a = n.as_a_module();
    if !a.is_pure() {
        return Err(Error::PreconditionFailed("module is not pure".into()));
    }
    let class = crate::graded_a::classify_mu2(&a)?;
    let i0 = n.dims.iter().position(|&d| d > 0).unwrap();
    let chi = n.chars.as_ref().map(|c| c[i0][0]);
    Ok(match class {
        crate::graded_a::Mu2Class::AShift { r } => {
            // the σ-fixedness χ = χ^σ when a character is attached
            if let Some(c) = chi {
                if (c as u64 * P) % (P * P - 1) != c as u64 {
                    return Err(Error::PreconditionFailed(
                        "A-type with non-σ-fixed character".into(),
                    ));
                }
            }
            PureMu2::AType { chi, shift: r }
        }
        crate::graded_a::Mu2Class::Split { r, .. } => PureMu2::Split { chi, shift: r },
    })
}

/// gr_{m_D}(π^∨): graded pieces are the duals of the socle-filtration
/// layers, y and z act by the transposes of Y and Z, the H-characters are
/// dualized, and a ϖ_D-action (when present on π) descends to the layers.
pub fn graded_module<const P: u64>(rep: &SmoothRep<P>) -> GrModule<P> {
    let chain = rep.socle_filtration();
    let ymat = rep.operator_y();
    let zmat = rep.operator_z();
    let steps: Vec<Subspace<P>> = chain;
    let nlayers = steps.len();
    // adapted bases: per layer an H-eigenbasis of step/prev
    let mut layer_bases: Vec<Vec<(u32, Vec<Fq<P>>)>> = Vec::with_capacity(nlayers);
    let semis = rep.atom_matrix(crate::quat::Atom::Semisimple).clone();
    let g0 = Fq::<P>::gen0();
    let mut prev: Option<&Subspace<P>> = None;
    for step in &steps {
        // eigenvectors of the semisimple generator on step, reduced mod prev
        let restricted = step.restrict(&semis).expect("H-stable");
        let prev_in_step = match prev {
            None => Subspace::zero(step.dim()),
            Some(p) => Subspace::from_vectors(
                step.dim(),
                p.basis().iter().map(|v| step.coordinates(v).unwrap()),
            ),
        };
        let mut basis = Vec::new();
        for a in 0..Character::<P>::QM1 {
            let shift = &restricted - &Matrix::scalar(step.dim(), g0.pow(a as u64));
            let eig = Subspace::kernel_of(&shift);
            for v in eig.basis() {
                let red = prev_in_step.reduce(v.clone());
                if red.iter().all(|x| x.is_zero()) {
                    continue;
                }
                // ambient coordinates of the layer representative
                let mut amb = vec![Fq::ZERO; rep.dim];
                for (c, b) in v.iter().zip(step.basis()) {
                    for t in 0..rep.dim {
                        let s = b[t] * *c;
                        amb[t] = amb[t] + s;
                    }
                }
                // keep only an independent set per layer
                basis.push((a, amb));
            }
        }
        // prune to an independent set modulo prev
        let mut kept: Vec<(u32, Vec<Fq<P>>)> = Vec::new();
        let mut span = match prev {
            None => Subspace::zero(rep.dim),
            Some(p) => p.clone(),
        };
        for (a, v) in basis {
            if span.insert(v.clone()) {
                kept.push((a, v));
            }
        }
        layer_bases.push(kept);
        prev = Some(step);
    }
    // maps between layers: Y: L_{i+1} → L_i expressed in the adapted bases,
    // then transposed for the dual side
    let dims: Vec<usize> = layer_bases.iter().map(|b| b.len()).collect();
    let mut y_gr = Vec::new();
    let mut z_gr = Vec::new();
    for i in 0..nlayers.saturating_sub(1) {
        let to_layer_coords = |w: &[Fq<P>], layer: usize| -> Vec<Fq<P>> {
            // coordinates of w in (basis of layer) modulo lower steps
            let lower: Subspace<P> = if layer == 0 {
                Subspace::zero(rep.dim)
            } else {
                steps[layer - 1].clone()
            };
            let mut span = lower.clone();
            let mut cols: Vec<Vec<Fq<P>>> = Vec::new();
            for (_, b) in &layer_bases[layer] {
                cols.push(b.clone());
                span.insert(b.clone());
            }
            // solve w = Σ c_j b_j + lower
            let mut mat_cols: Vec<Vec<Fq<P>>> = cols;
            for lb in lower.basis() {
                mat_cols.push(lb.to_vec());
            }
            let m = Matrix::from_fn(rep.dim, mat_cols.len(), |r, c| mat_cols[c][r]);
            let sol = m.solve(w).expect("Y, Z map into the lower filtration step");
            sol[..layer_bases[layer].len()].to_vec()
        };
        let build = |op: &Matrix<P>| -> Matrix<P> {
            // op: L_{i+1} → L_i; transpose gives gr_i → gr_{i+1}
            let mut m = Matrix::zero(dims[i], dims[i + 1]);
            for (col, (_, b)) in layer_bases[i + 1].iter().enumerate() {
                let w = op.apply(b);
                let coords = to_layer_coords(&w, i);
                for row in 0..dims[i] {
                    m[(row, col)] = coords[row];
                }
            }
            m.transpose()
        };
        y_gr.push(build(&ymat));
        z_gr.push(build(&zmat));
    }
    // dual characters
    let q1 = Character::<P>::QM1 as i64;
    let chars = Some(
        layer_bases
            .iter()
            .map(|b| {
                b.iter()
                    .map(|(a, _)| (-(*a as i64)).rem_euclid(q1) as u32)
                    .collect()
            })
            .collect(),
    );
    // varpi on layers, dualized
    let varpi = rep.varpi.as_ref().map(|w| {
        (0..nlayers)
            .map(|i| {
                let mut m = Matrix::zero(dims[i], dims[i]);
                for (col, (_, b)) in layer_bases[i].iter().enumerate() {
                    let img = w.apply(b);
                    // coordinates in the same layer basis
                    let lower: Subspace<P> = if i == 0 {
                        Subspace::zero(rep.dim)
                    } else {
                        steps[i - 1].clone()
                    };
                    let mut cols: Vec<Vec<Fq<P>>> =
                        layer_bases[i].iter().map(|(_, b)| b.clone()).collect();
                    for lb in lower.basis() {
                        cols.push(lb.to_vec());
                    }
                    let mat = Matrix::from_fn(rep.dim, cols.len(), |r, c| cols[c][r]);
                    let sol = mat.solve(&img).expect("varpi preserves the filtration");
                    for row in 0..dims[i] {
                        m[(row, col)] = sol[row];
                    }
                }
                m.inverse().expect("varpi invertible on layers").transpose()
            })
            .collect()
    });
    let g = GrModule {
        min_deg: 0,
        dims,
        y: y_gr,
        z: z_gr,
        chars,
        varpi,
    };
    debug_assert!(g.validate().is_ok(), "graded module validation");
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{e_minus, e_tower};
    use crate::grouprep::char_rep;
    use crate::rng::SplitMix64;

    type Chr = Character<5>;

    #[test]
    fn pbw_dimension_and_weights() {
        assert_eq!(gr_basis(0).len(), 1);
        assert_eq!(gr_basis(1).len(), 2);
        let b2 = gr_basis(2);
        assert_eq!(b2.len(), 4);
        // H-weights α², 1, 1, α⁻²
        let mut weights: Vec<i64> = b2.iter().map(|&(a, _, c)| a as i64 - c as i64).collect();
        weights.sort_unstable();
        assert_eq!(weights, vec![-2, 0, 0, 2]);
    }

    #[test]
    fn straightening_and_center() {
        type E = GrElem<5>;
        let y = E::y();
        let z = E::z();
        let h = E::h();
        // zy = yz − h
        let zy = z.mul(&y);
        let yz_minus_h = y.mul(&z).add(&h.scale(-Fq::ONE));
        assert_eq!(zy, yz_minus_h);
        // h central
        assert_eq!(h.mul(&y), y.mul(&h));
        assert_eq!(h.mul(&z), z.mul(&h));
        // degree additivity + associativity on seeded triples
        let mut rng = SplitMix64::new(0xB0B);
        let rand_elem = |rng: &mut SplitMix64| -> E {
            let mut e = E::zero();
            for _ in 0..3 {
                let m = (
                    rng.below(3) as usize,
                    rng.below(2) as usize,
                    rng.below(3) as usize,
                );
                e.add_term(m, Fq::random(rng));
            }
            e
        };
        for _ in 0..200 {
            let a = rand_elem(&mut rng);
            let b = rand_elem(&mut rng);
            let c = rand_elem(&mut rng);
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }

    #[test]
    fn membership_identities() {
        type E = GrElem<5>;
        let y = E::y();
        let z = E::z();
        // 2yzy = y²z + zy²
        let lhs = y.mul(&z).mul(&y).scale(Fq::from_base(2));
        let rhs = y.mul(&y).mul(&z).add(&z.mul(&y).mul(&y));
        assert_eq!(lhs, rhs);
        // z²y = (2zy − yz)z
        let lhs = z.mul(&z).mul(&y);
        let rhs = z.mul(&y).scale(Fq::from_base(2)).add(&y.mul(&z).scale(-Fq::ONE)).mul(&z);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ideal_quotients_dimension_three() {
        type E = GrElem<5>;
        let q = left_ideal_quotient::<5>(
            &[E::mono((2, 0, 0), Fq::ONE), E::z()],
            6,
        )
        .unwrap();
        assert_eq!(q.dim, 3);
        assert!(q.stable);
        // basis: 1, y in degrees 0, 1; the degree-2 class is spanned by h,
        // i.e. by the class of zy (zy = yz − h ≡ −h since yz ∈ the ideal)
        assert_eq!(q.basis[0].1, vec![(0, 0, 0)]);
        assert_eq!(q.basis[1].1, vec![(1, 0, 0)]);
        assert_eq!(q.basis[2].1.len(), 1);
        let zy_class = q.class_of(&E::z().mul(&E::y())).unwrap();
        assert!(zy_class.iter().any(|c| !c.is_zero()));
        // mirror ideal
        let q2 = left_ideal_quotient::<5>(
            &[E::y(), E::mono((0, 0, 2), Fq::ONE)],
            6,
        )
        .unwrap();
        assert_eq!(q2.dim, 3);
        assert!(q2.stable);
        // membership: yzy and z²y lie in (y², z)
        let yzy = E::y().mul(&E::z()).mul(&E::y());
        assert!(q.class_of(&yzy).unwrap().iter().all(|c| c.is_zero()));
        let zzy = E::z().mul(&E::z()).mul(&E::y());
        assert!(q.class_of(&zzy).unwrap().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn graded_module_of_towers() {
        let chi = Chr::new(2);
        for n in 1..=4u64 {
            let t = e_tower(false, &chi, n).unwrap();
            let g = graded_module(&t);
            assert_eq!(g.dims, vec![1; n as usize + 1]);
            // z acts by zero, y is an isomorphism along the chain
            for i in 0..n as usize {
                assert!(g.z[i].is_zero());
                assert_eq!(g.y[i].rank(), 1);
            }
            // dual characters: χ^∨ α^i
            let chars = g.chars.as_ref().unwrap();
            for (i, c) in chars.iter().enumerate() {
                let expect = chi.inverse().times_alpha(i as i64).a;
                assert_eq!(c, &vec![expect]);
            }
        }
        // a character alone: one piece, trivial maps
        let g = graded_module(&char_rep(&chi));
        assert_eq!(g.dims, vec![1]);
        assert_eq!(g.chars.as_ref().unwrap()[0], vec![chi.inverse().a]);
    }

    #[test]
    fn graded_module_is_cyclic_when_socle_is_line() {
        let chi = Chr::new(1);
        let ind = crate::constructions::induced_rep(&chi);
        let g = graded_module(&ind.rep);
        assert!(g.generated_in_lowest_degree());
        // Lemma annihilator (i): χα does not occur in layer 1 of a minus
        // tower, so z annihilates the graded module — verified above; here
        // check the E⁻(χ) case directly
        let g2 = graded_module(&e_minus(&chi));
        assert!(g2.z[0].is_zero());
    }

    #[test]
    fn j_filtration_examples() {
        // χ^∨⊗F[y] with z, h acting by zero: (1, 0, 1, n_J = 1)
        let m = GrModule::<5>::chain(true, 3, None, 12);
        let f = j_filtration_multiplicity(&m, 6).unwrap();
        assert_eq!((f.m_p0, f.m_p1, f.mu, f.n_j), (1, 0, 1, 1));
        // finite length: μ = 0
        let t = e_tower(false, &Chr::new(2), 3).unwrap();
        let g = graded_module(&t).pad_to(12);
        let f = j_filtration_multiplicity(&g, 6).unwrap();
        assert_eq!(f.mu, 0);
        assert_eq!(f.n_j, 1);
        // gr(Λ)/J: (1, 1, 2, 1)
        let a = GrModule::<5>::gr_mod_j(12, false);
        let f = j_filtration_multiplicity(&a, 6).unwrap();
        assert_eq!((f.m_p0, f.m_p1, f.mu, f.n_j), (1, 1, 2, 1));
    }

    #[test]
    fn h_tilde_symmetry_instances() {
        // χ^∨⊗F[y] ⊕ (χ^σ)^∨⊗F[z] with the swap map
        let m = GrModule::<5>::chain(true, 7, None, 12);
        let sym = GrModule::swap_varpi(&m);
        assert!(check_h_tilde_symmetry(&sym, 6).unwrap());
        // gr(Λ)/J with the swap
        let a = GrModule::<5>::gr_mod_j(12, true);
        assert!(check_h_tilde_symmetry(&a, 6).unwrap());
        // missing varpi is rejected
        assert!(check_h_tilde_symmetry(&m, 6).is_err());
    }

    #[test]
    fn classify_pure_mu2_shapes() {
        let m = GrModule::<5>::chain(true, 2, None, 12);
        let sym = GrModule::swap_varpi(&m);
        match classify_pure_mu2(&sym, 6).unwrap() {
            PureMu2::Split { .. } => {}
            other => panic!("expected split, got {other:?}"),
        }
        // χ⊗A with trivial character (σ-fixed)
        let a = GrModule::<5>::gr_mod_j(12, false);
        match classify_pure_mu2(&a, 6).unwrap() {
            PureMu2::AType { chi, shift } => {
                assert_eq!(chi, Some(0));
                assert_eq!(shift, 0);
            }
            other => panic!("expected A-type, got {other:?}"),
        }
        // generation by the degree-0 piece
        assert!(a.generated_in_lowest_degree());
    }
}
