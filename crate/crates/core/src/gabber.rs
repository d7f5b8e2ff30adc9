//! Appendix machinery at desk scale: grades, purity, Cohen–Macaulayness,
//! good filtrations, Rees modules, tamely-close equivalence, and the Gabber
//! (pure) filtration. Instantiated over the filtered ring F[y, z] with the
//! (y, z)-adic filtration (gr = F[y, z] itself) and over A = F[y,z]/(yz).
//!
//! Modules are graded with monomial-prime support, so the higher-grade
//! submodule detectors are plain kernels: torsion is killed by a power of
//! yz, finite length by powers of y and z separately. Grade thresholds are
//! parametrized by the ambient dimension: honest d = 2 for F[y, z], and the
//! d = 3 normalization of gr(Λ) for A-modules (grade tags 2 and 3).

use crate::arith::Fq;
use crate::error::{Error, Result};
use crate::graded_a::PieceModule;
use crate::linalg::{Matrix, Subspace};
use serde::{Deserialize, Serialize};

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Ambient {
    /// F[y, z]: regular of global dimension 2.
    PolyRing,
    /// A = F[y,z]/(yz), with grades reported in the gr(Λ)-normalization
    /// (d = 3: grade 2 for μ ≠ 0, grade 3 for finite length).
    QuotA,
}

impl Ambient {
    pub fn global_dim(&self) -> usize {
        match self {
            Ambient::PolyRing => 2,
            Ambient::QuotA => 3,
        }
    }
}

/// A homogeneous polynomial Σ coeffs[j]·y^{d−j} z^j of degree d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyH<const P: u64> {
    pub degree: usize,
    pub coeffs: Vec<Fq<P>>,
}

impl<const P: u64> PolyH<P> {
    pub fn zero(d: usize) -> Self {
        PolyH {
            degree: d,
            coeffs: vec![Fq::ZERO; d + 1],
        }
    }

    pub fn scalar(c: Fq<P>) -> Self {
        PolyH {
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn mono(a: usize, b: usize, c: Fq<P>) -> Self {
        let mut p = Self::zero(a + b);
        p.coeffs[b] = c;
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }
}

/// Finite presentation of a graded F[y, z]-module.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RPres<const P: u64> {
    pub gen_degrees: Vec<i64>,
    pub relations: Vec<Vec<PolyH<P>>>,
}

impl<const P: u64> RPres<P> {
    pub fn free(degrees: &[i64]) -> Self {
        RPres {
            gen_degrees: degrees.to_vec(),
            relations: Vec::new(),
        }
    }

    /// R/(z)(−r) etc. via a single relation.
    pub fn cyclic(rel_polys: &[PolyH<P>]) -> Self {
        RPres {
            gen_degrees: vec![0],
            relations: rel_polys.iter().map(|p| vec![p.clone()]).collect(),
        }
    }

    /// The ideal (y², z) ⊂ F[y,z] as a module: generators in degrees 2, 1
    /// with the Koszul-type syzygy z·g₁ − y²·g₂ = 0.
    pub fn ideal_y2_z() -> Self {
        RPres {
            gen_degrees: vec![2, 1],
            relations: vec![vec![
                PolyH::mono(0, 1, Fq::ONE),
                PolyH::mono(2, 0, -Fq::<P>::ONE),
            ]],
        }
    }

    pub fn max_degree(&self) -> i64 {
        let g = self.gen_degrees.iter().copied().max().unwrap_or(0);
        let r = self
            .relations
            .iter()
            .flat_map(|rel| {
                rel.iter().zip(&self.gen_degrees).filter_map(|(c, &d)| {
                    if c.is_zero() {
                        None
                    } else {
                        Some(d + c.degree as i64)
                    }
                })
            })
            .max()
            .unwrap_or(0);
        g.max(r)
    }

    /// Expand to graded pieces with commuting y-, z-maps.
    pub fn expand(&self, bound: i64) -> PieceModule<P> {
        let lo = self.gen_degrees.iter().copied().min().unwrap_or(0);
        let n = (bound - lo + 1) as usize;
        // free basis at degree d: (gen i, (a, b)) with a + b = d − d_i
        let basis_at = |d: i64| -> Vec<(usize, usize, usize)> {
            let mut out = Vec::new();
            for (i, &gd) in self.gen_degrees.iter().enumerate() {
                let k = d - gd;
                if k < 0 {
                    continue;
                }
                for b in 0..=(k as usize) {
                    out.push((i, k as usize - b, b));
                }
            }
            out
        };
        let rel_degree = |rel: &Vec<PolyH<P>>| -> Option<i64> {
            rel.iter()
                .zip(&self.gen_degrees)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, &d)| d + c.degree as i64)
                .max()
        };
        let mut rel_spaces: Vec<Subspace<P>> = Vec::with_capacity(n);
        let mut bases = Vec::with_capacity(n);
        for step in 0..n {
            let d = lo + step as i64;
            let basis = basis_at(d);
            let pos = |gi: usize, a: usize, b: usize| -> Option<usize> {
                basis.iter().position(|&(i, x, y)| (i, x, y) == (gi, a, b))
            };
            let mut space = Subspace::zero(basis.len());
            for rel in &self.relations {
                let Some(rd) = rel_degree(rel) else { continue };
                let k = d - rd;
                if k < 0 {
                    continue;
                }
                // multiply by every monomial y^{k−t} z^t
                for t in 0..=(k as usize) {
                    let (ma, mb) = (k as usize - t, t);
                    let mut v = vec![Fq::ZERO; basis.len()];
                    for (gi, c) in rel.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (j, &cc) in c.coeffs.iter().enumerate() {
                            if cc.is_zero() {
                                continue;
                            }
                            // monomial y^{deg−j} z^j of the coefficient
                            let (ca, cb) = (c.degree - j, j);
                            if let Some(t) = pos(gi, ma + ca, mb + cb) {
                                v[t] = v[t] + cc;
                            }
                        }
                    }
                    space.insert(v);
                }
            }
            rel_spaces.push(space);
            bases.push(basis);
        }
        let mut dims = Vec::with_capacity(n);
        for step in 0..n {
            dims.push(rel_spaces[step].complement_positions().len());
        }
        let mut y_maps = Vec::new();
        let mut z_maps = Vec::new();
        for step in 0..n.saturating_sub(1) {
            let src = &bases[step];
            let dst = &bases[step + 1];
            let comp_s = rel_spaces[step].complement_positions();
            let comp_d = rel_spaces[step + 1].complement_positions();
            let build = |yside: bool| -> Matrix<P> {
                let mut m = Matrix::zero(comp_d.len(), comp_s.len());
                for (col, &cs) in comp_s.iter().enumerate() {
                    let (gi, a, b) = src[cs];
                    let target = if yside { (gi, a + 1, b) } else { (gi, a, b + 1) };
                    let Some(pos) = dst.iter().position(|&t| t == target) else {
                        continue;
                    };
                    let mut v = vec![Fq::ZERO; dst.len()];
                    v[pos] = Fq::ONE;
                    let red = rel_spaces[step + 1].reduce(v);
                    for (row, &cd) in comp_d.iter().enumerate() {
                        m[(row, col)] = red[cd];
                    }
                }
                m
            };
            y_maps.push(build(true));
            z_maps.push(build(false));
        }
        PieceModule {
            min_deg: lo,
            dims,
            y: y_maps,
            z: z_maps,
            chars: None,
        }
    }
}

/// Krull dimension from stable Hilbert growth: 0 (eventually zero pieces),
/// 1 (eventually constant nonzero), 2 (growing).
pub fn dimension_growth<const P: u64>(m: &PieceModule<P>) -> usize {
    let n = m.len();
    let tail: Vec<usize> = m.dims[n.saturating_sub(4)..].to_vec();
    if tail.iter().all(|&d| d == 0) {
        0
    } else if tail.windows(2).all(|w| w[0] == w[1]) {
        1
    } else {
        2
    }
}

/// Grade j(M) = d − dim(M) in the ambient normalization.
pub fn grade_growth<const P: u64>(m: &PieceModule<P>, ambient: Ambient) -> usize {
    let dim = dimension_growth(m);
    match ambient {
        Ambient::PolyRing => 2 - dim,
        // A-modules have Krull dimension ≤ 1; the gr(Λ)-normalized grade is
        // 2 for dimension 1 and 3 for finite length
        Ambient::QuotA => {
            assert!(dim <= 1, "A-modules have dimension at most 1");
            3 - dim
        }
    }
}

/// The largest submodule of grade > j, blockwise per degree, for modules
/// with monomial support. Over F[y,z] at j = 0 this is the (yz)-power
/// torsion; at j ≥ 1 (and always over A) it is the finite-length part.
pub fn higher_grade_submodule<const P: u64>(
    m: &PieceModule<P>,
    ambient: Ambient,
    j: usize,
) -> Vec<Subspace<P>> {
    let n = m.len();
    let torsion_kind = matches!(ambient, Ambient::PolyRing) && j == 0;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if m.dims[i] == 0 {
            out.push(Subspace::zero(0));
            continue;
        }
        if torsion_kind {
            // ker (yz)^K
            let k = (n - 1 - i) / 2;
            if k == 0 {
                out.push(Subspace::zero(m.dims[i]));
                continue;
            }
            // (yz)^k as alternating z-then-y steps, staying in range
            let mut c2 = Matrix::identity(m.dims[i]);
            let mut pos = i;
            for _ in 0..k {
                if pos + 2 > n - 1 {
                    break;
                }
                c2 = &m.y[pos + 1] * &(&m.z[pos] * &c2);
                pos += 2;
            }
            out.push(Subspace::kernel_of(&c2));
        } else {
            let k = n - 1 - i;
            let ky = {
                let mut c = Matrix::identity(m.dims[i]);
                for t in 0..k {
                    c = &m.y[i + t] * &c;
                }
                c
            };
            let kz = {
                let mut c = Matrix::identity(m.dims[i]);
                for t in 0..k {
                    c = &m.z[i + t] * &c;
                }
                c
            };
            out.push(Subspace::kernel_of(&ky.vstack(&kz)));
        }
    }
    out
}

pub fn is_pure_mod<const P: u64>(m: &PieceModule<P>, ambient: Ambient) -> bool {
    let j = grade_growth(m, ambient);
    let margin = 3;
    let s = higher_grade_submodule(m, ambient, j_internal(ambient, j));
    s.iter()
        .take(m.len().saturating_sub(margin))
        .all(|x| x.dim() == 0)
}

fn j_internal(ambient: Ambient, j: usize) -> usize {
    match ambient {
        Ambient::PolyRing => j,
        // A-side normalized grades 2, 3 map to internal 0, 1
        Ambient::QuotA => j.saturating_sub(2),
    }
}

/// Which of Ext⁰, Ext¹, Ext²(M, R) are nonzero, over F[y, z], via a graded
/// free resolution and the dual complex Hom(F•, R).
pub fn ext_profile<const P: u64>(pres: &RPres<P>) -> Result<(bool, bool, bool)> {
    let bound = pres.max_degree() + 8;
    let (f1, d1, k1_rels) = r_syzygies(&pres.gen_degrees, &pres.relations, bound);
    let (f2, d2, k2_rels) = r_syzygies(&f1, &k1_rels, bound);
    // Hilbert syzygy: projective dimension ≤ 2, so the resolution stops
    let (f3, _, _) = r_syzygies(&f2, &k2_rels, bound);
    if !f3.is_empty() {
        return Err(Error::NeedLargerBound {
            bound: bound as usize,
            reason: "resolution does not stop at length 2".into(),
        });
    }
    // Ext⁰ ≠ 0 ⟺ Hom(M, R) ≠ 0 ⟺ M has a rank (dimension 2)
    let pieces = pres.expand(bound);
    let ext0 = dimension_growth(&pieces) == 2;
    let lo_e = -(bound + 4);
    let hi_e = bound + 4;
    let mut ext1 = false;
    for e in lo_e..=hi_e {
        if r_ext_at(&pres.gen_degrees, &f1, &f2, &d1, &d2, e) > 0 {
            ext1 = true;
            break;
        }
    }
    // Ext² = coker(Hom(F1, R) → Hom(F2, R)); finite length, so the window
    // must end in zeros
    let mut ext2 = false;
    let mut top_hits = 0usize;
    for e in lo_e..=hi_e {
        let c = r_ext2_at(&f1, &f2, &d2, e);
        if c > 0 {
            ext2 = true;
            if e >= hi_e - 1 {
                top_hits += c;
            }
        }
    }
    if top_hits > 0 {
        return Err(Error::NeedLargerBound {
            bound: bound as usize,
            reason: "Ext² classes at the top of the degree window".into(),
        });
    }
    Ok((ext0, ext1, ext2))
}

/// Grade via the dual complex: the first index with Ext^i(M, R) ≠ 0
/// (`grade_growth` is the independent oracle).
pub fn grade_resolution<const P: u64>(pres: &RPres<P>) -> Result<usize> {
    let (e0, e1, e2) = ext_profile(pres)?;
    Ok(if e0 {
        0
    } else if e1 {
        1
    } else if e2 {
        2
    } else {
        3 // the zero module
    })
}

/// Cohen–Macaulay over F[y, z]: Ext^i(M, R) vanishes away from i = j(M).
pub fn is_cm_r<const P: u64>(pres: &RPres<P>) -> Result<bool> {
    let (e0, e1, e2) = ext_profile(pres)?;
    Ok(usize::from(e0) + usize::from(e1) + usize::from(e2) <= 1)
}

/// Cohen–Macaulay for A-side piece modules: with Krull dimension ≤ 1 this
/// coincides with purity (pure of grade d−1), finite length being CM.
pub fn is_cm_mod<const P: u64>(m: &PieceModule<P>, ambient: Ambient) -> bool {
    match ambient {
        Ambient::QuotA => {
            grade_growth(m, ambient) == 3 || is_pure_mod(m, ambient)
        }
        Ambient::PolyRing => {
            // modules of dimension ≤ 1 only (the piecewise carrier cannot
            // certify freeness); grade 2 is finite length, grade 1 is CM
            // exactly when pure
            match grade_growth(m, ambient) {
                2 => true,
                1 => is_pure_mod(m, ambient),
                _ => panic!("piecewise CM test needs a presentation for dimension-2 modules"),
            }
        }
    }
}

/// Minimal generators of the submodule of ⊕R(−d_i) generated by the given
/// relations, together with the syzygies among them.
type RSyz<const P: u64> = (Vec<i64>, Vec<Vec<(usize, PolyH<P>)>>, Vec<Vec<PolyH<P>>>);

fn r_syzygies<const P: u64>(
    free_degrees: &[i64],
    relations: &[Vec<PolyH<P>>],
    bound: i64,
) -> RSyz<P> {
    let lo = free_degrees.iter().copied().min().unwrap_or(0);
    let basis_at = |d: i64| -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, &gd) in free_degrees.iter().enumerate() {
            let k = d - gd;
            if k < 0 {
                continue;
            }
            for b in 0..=(k as usize) {
                out.push((i, k as usize - b, b));
            }
        }
        out
    };
    let rel_degree = |rel: &Vec<PolyH<P>>| -> Option<i64> {
        rel.iter()
            .zip(free_degrees)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, &d)| d + c.degree as i64)
            .max()
    };
    let rel_to_vec = |rel: &Vec<PolyH<P>>, (ma, mb): (usize, usize), basis: &[(usize, usize, usize)]| -> Vec<Fq<P>> {
        let mut v = vec![Fq::ZERO; basis.len()];
        for (gi, c) in rel.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &cc) in c.coeffs.iter().enumerate() {
                if cc.is_zero() {
                    continue;
                }
                let (ca, cb) = (c.degree - j, j);
                if let Some(t) = basis
                    .iter()
                    .position(|&(i, a, b)| (i, a, b) == (gi, ma + ca, mb + cb))
                {
                    v[t] = v[t] + cc;
                }
            }
        }
        v
    };
    let mut new_degrees = Vec::new();
    let mut new_exprs: Vec<Vec<(usize, PolyH<P>)>> = Vec::new();
    let mut gen_data: Vec<(i64, Vec<PolyH<P>>)> = Vec::new();
    let mut syzygies: Vec<Vec<PolyH<P>>> = Vec::new();
    for d in lo..=bound {
        let basis = basis_at(d);
        if basis.is_empty() {
            continue;
        }
        // span of everything generated so far at this degree
        let mut span = Subspace::zero(basis.len());
        for (gd, grel) in &gen_data {
            let k = d - gd;
            if k < 0 {
                continue;
            }
            for t in 0..=(k as usize) {
                span.insert(rel_to_vec(grel, (k as usize - t, t), &basis));
            }
        }
        let established = span.clone();
        for rel in relations {
            let Some(rd) = rel_degree(rel) else { continue };
            if rd != d {
                continue;
            }
            let v = rel_to_vec(rel, (0, 0), &basis);
            if !established.contains(&v) && span.insert(v) {
                new_degrees.push(d);
                new_exprs.push(
                    rel.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| (i, c.clone()))
                        .collect(),
                );
                gen_data.push((d, rel.clone()));
            }
        }
        // syzygies among chosen generators at this degree
        let mut cols: Vec<(usize, PolyH<P>, Vec<Fq<P>>)> = Vec::new();
        for (gi, (gd, grel)) in gen_data.iter().enumerate() {
            let k = d - gd;
            if k < 0 {
                continue;
            }
            for t in 0..=(k as usize) {
                let mono = PolyH::mono(k as usize - t, t, Fq::ONE);
                // monomial · relation, as instances shifted by the monomial
                let shifted: Vec<PolyH<P>> = grel
                    .iter()
                    .map(|c| {
                        if c.is_zero() {
                            return PolyH::zero(c.degree + k as usize);
                        }
                        let mut p = PolyH::zero(c.degree + k as usize);
                        for (j, &cc) in c.coeffs.iter().enumerate() {
                            if !cc.is_zero() {
                                p.coeffs[j + t] = p.coeffs[j + t] + cc;
                            }
                        }
                        p
                    })
                    .collect();
                cols.push((gi, mono, rel_to_vec(&shifted, (0, 0), &basis)));
            }
        }
        if !cols.is_empty() {
            let m = Matrix::from_fn(basis.len(), cols.len(), |i, j| cols[j].2[i]);
            for kvec in m.kernel() {
                let mut rel: Vec<PolyH<P>> = gen_data
                    .iter()
                    .map(|(gd, _)| PolyH::zero((d - gd).max(0) as usize))
                    .collect();
                let mut nonzero = false;
                for (jj, c) in kvec.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (gi, ref mono, _) = cols[jj];
                    let t = mono.coeffs.iter().position(|x| !x.is_zero()).unwrap();
                    rel[gi].coeffs[t] = rel[gi].coeffs[t] + *c;
                    nonzero = true;
                }
                if nonzero {
                    syzygies.push(rel);
                }
            }
        }
    }
    (new_degrees, new_exprs, syzygies)
}

fn r_ext2_at<const P: u64>(
    f1: &[i64],
    f2: &[i64],
    d2: &[Vec<(usize, PolyH<P>)>],
    e: i64,
) -> usize {
    let rdim = |d: i64| -> usize {
        if d < 0 {
            0
        } else {
            d as usize + 1
        }
    };
    let c1: Vec<usize> = f1.iter().map(|&d| rdim(e + d)).collect();
    let c2: Vec<usize> = f2.iter().map(|&d| rdim(e + d)).collect();
    let total2: usize = c2.iter().sum();
    if total2 == 0 {
        return 0;
    }
    let m1 = r_dual_map(&c1, f1, &c2, d2, e);
    total2 - m1.rank()
}

fn r_dual_map<const P: u64>(
    cols: &[usize],
    cols_deg: &[i64],
    rows: &[usize],
    boundary: &[Vec<(usize, PolyH<P>)>],
    e: i64,
) -> Matrix<P> {
    let rdim = |d: i64| -> usize {
        if d < 0 {
            0
        } else {
            d as usize + 1
        }
    };
    let nr: usize = rows.iter().sum();
    let nc: usize = cols.iter().sum();
    let mut m = Matrix::zero(nr, nc);
    let off = |v: &[usize]| -> Vec<usize> {
        v.iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect()
    };
    let co = off(cols);
    let ro = off(rows);
    for (j, col) in boundary.iter().enumerate() {
        for &(i, ref a) in col {
            let src = rdim(e + cols_deg[i]);
            let dst = rdim(e + cols_deg[i] + a.degree as i64);
            let mut act = Matrix::zero(dst, src);
            for j_src in 0..src {
                for (jj, &c) in a.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let t = j_src + jj;
                    if t < dst {
                        act[(t, j_src)] = act[(t, j_src)] + c;
                    }
                }
            }
            for r in 0..act.rows.min(rows[j]) {
                for c in 0..act.cols {
                    if !act[(r, c)].is_zero() {
                        m[(ro[j] + r, co[i] + c)] = m[(ro[j] + r, co[i] + c)] + act[(r, c)];
                    }
                }
            }
        }
    }
    m
}

fn r_ext_at<const P: u64>(
    f0: &[i64],
    f1: &[i64],
    f2: &[i64],
    d1: &[Vec<(usize, PolyH<P>)>],
    d2: &[Vec<(usize, PolyH<P>)>],
    e: i64,
) -> usize {
    // Hom(F_k, R)_e components: R_{e + d}, of dimension e + d + 1 when ≥ 0
    let rdim = |d: i64| -> usize {
        if d < 0 {
            0
        } else {
            d as usize + 1
        }
    };
    let comp = |degs: &[i64]| -> Vec<usize> { degs.iter().map(|&d| rdim(e + d)).collect() };
    let c0 = comp(f0);
    let c1 = comp(f1);
    let c2 = comp(f2);
    // multiplication by a homogeneous poly on R-pieces: R_a → R_{a+k},
    // monomial coordinates y^{a−j}z^j ↦ shifted
    let mul_mat = |a: i64, p: &PolyH<P>| -> Matrix<P> {
        let src = rdim(a);
        let dst = rdim(a + p.degree as i64);
        let mut m = Matrix::zero(dst, src);
        if src == 0 {
            return m;
        }
        for j_src in 0..src {
            for (j, &c) in p.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t = j_src + j;
                if t < dst {
                    m[(t, j_src)] = m[(t, j_src)] + c;
                }
            }
        }
        m
    };
    let build = |cols: &Vec<usize>,
                 cols_deg: &[i64],
                 rows: &Vec<usize>,
                 rows_deg: &[i64],
                 boundary: &[Vec<(usize, PolyH<P>)>]|
     -> Matrix<P> {
        let nr: usize = rows.iter().sum();
        let nc: usize = cols.iter().sum();
        let mut m = Matrix::zero(nr, nc);
        let off = |v: &Vec<usize>| -> Vec<usize> {
            v.iter()
                .scan(0, |acc, &d| {
                    let o = *acc;
                    *acc += d;
                    Some(o)
                })
                .collect()
        };
        let co = off(cols);
        let ro = off(rows);
        for (j, col) in boundary.iter().enumerate() {
            for &(i, ref a) in col {
                let act = mul_mat(e + cols_deg[i], a);
                let _ = rows_deg;
                for r in 0..act.rows {
                    for c in 0..act.cols {
                        if !act[(r, c)].is_zero() {
                            m[(ro[j] + r, co[i] + c)] = m[(ro[j] + r, co[i] + c)] + act[(r, c)];
                        }
                    }
                }
            }
        }
        m
    };
    let m0 = build(&c0, f0, &c1, f1, d1);
    let m1 = build(&c1, f1, &c2, f2, d2);
    let z = if m1.rows == 0 {
        c1.iter().sum::<usize>()
    } else {
        Subspace::kernel_of(&m1).dim()
    };
    z - m0.rank()
}

/// A module with a descending good filtration, held as explicit per-(level,
/// degree) subspaces. Levels run 0..n_levels with F⁰ = M.
#[derive(Clone)]
pub struct FilteredModule<const P: u64> {
    pub ambient: Ambient,
    pub pieces: PieceModule<P>,
    /// filt[n][i] ⊆ F^{dims[i]}: the degree-(min_deg+i) part of F^n M
    pub filt: Vec<Vec<Subspace<P>>>,
}

impl<const P: u64> FilteredModule<P> {
    /// Build the good filtration with the given levels on the given
    /// homogeneous generators: F^n = Σ_i m^{n−l_i}·R·g_i.
    pub fn from_generator_levels(
        ambient: Ambient,
        pieces: &PieceModule<P>,
        gens: &[(i64, Vec<Fq<P>>, i64)],
        n_levels: usize,
    ) -> Result<Self> {
        let nd = pieces.len();
        // cyclic spans per generator
        let spans: Vec<Vec<Subspace<P>>> = gens
            .iter()
            .map(|(d, v, _)| {
                pieces
                    .submodule(&[(*d, v.clone())])
                    .spaces
                    .iter()
                    .cloned()
                    .collect()
            })
            .collect();
        // the generators must generate
        {
            let all: Vec<(i64, Vec<Fq<P>>)> =
                gens.iter().map(|(d, v, _)| (*d, v.clone())).collect();
            let total = pieces.submodule(&all);
            let margin = 3;
            for (i, s) in total.spaces.iter().enumerate().take(nd.saturating_sub(margin)) {
                if s.dim() != pieces.dims[i] {
                    return Err(Error::NotGood(
                        "generators do not generate the module".into(),
                    ));
                }
            }
        }
        let mut filt = Vec::with_capacity(n_levels);
        for n in 0..n_levels {
            let mut level = Vec::with_capacity(nd);
            for i in 0..nd {
                let d = pieces.min_deg + i as i64;
                let mut s = Subspace::zero(pieces.dims[i]);
                for ((gd, _, gl), span) in gens.iter().zip(&spans) {
                    if d - gd >= (n as i64 - gl).max(0) {
                        s = s.sum(&span[i]);
                    }
                }
                level.push(s);
            }
            filt.push(level);
        }
        let fm = FilteredModule {
            ambient,
            pieces: pieces.clone(),
            filt,
        };
        fm.check_good()?;
        Ok(fm)
    }

    pub fn n_levels(&self) -> usize {
        self.filt.len()
    }

    /// Descending, F⁰ = M, m·F^n ⊆ F^{n+1}, with equality for n ≫ 0.
    pub fn check_good(&self) -> Result<()> {
        let nd = self.pieces.len();
        let nl = self.n_levels();
        let margin = 3;
        for i in 0..nd {
            if self.filt[0][i].dim() != self.pieces.dims[i] {
                return Err(Error::NotGood("F^0 is not the whole module".into()));
            }
        }
        for n in 0..nl - 1 {
            for i in 0..nd {
                if !self.filt[n][i].contains_space(&self.filt[n + 1][i]) {
                    return Err(Error::NotGood("filtration not descending".into()));
                }
            }
            // m·F^n ⊆ F^{n+1}
            for i in 0..nd.saturating_sub(1) {
                for map in [&self.pieces.y[i], &self.pieces.z[i]] {
                    let img = self.filt[n][i].image(map);
                    if !self.filt[n + 1][i + 1].contains_space(&img) {
                        return Err(Error::NotGood("m·F^n ⊄ F^{n+1}".into()));
                    }
                }
            }
        }
        // stabilization: F^{n+1} = m·F^n for large n (within the window)
        let check_from = nl.saturating_sub(3);
        for n in check_from..nl - 1 {
            for i in 0..nd.saturating_sub(margin + 1) {
                let mut img = self.filt[n][i].image(&self.pieces.y[i]);
                img = img.sum(&self.filt[n][i].image(&self.pieces.z[i]));
                // contributions entering at this degree only matter below
                // generator degrees; compare within the window
                if img.dim() < self.filt[n + 1][i + 1].dim()
                    && self.filt[n + 1][i].dim() == 0
                {
                    return Err(Error::NotGood(format!(
                        "F^{} not generated by m·F^{} at degree index {}",
                        n + 1,
                        n,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// dim gr^n at (level, degree index).
    pub fn gr_dim(&self, n: usize, i: usize) -> usize {
        let a = self.filt[n][i].dim();
        let b = if n + 1 < self.n_levels() {
            self.filt[n + 1][i].dim()
        } else {
            0
        };
        a - b
    }

    /// The associated graded module as a level-graded module over gr(R);
    /// each level piece is the concatenation over internal degrees.
    pub fn gr(&self) -> GrOfFiltered<P> {
        GrOfFiltered::new(self)
    }

    /// Pointwise sum and intersection of filtrations on the same module.
    pub fn sum(&self, other: &FilteredModule<P>) -> FilteredModule<P> {
        self.combine(other, true)
    }

    pub fn intersect_filt(&self, other: &FilteredModule<P>) -> FilteredModule<P> {
        self.combine(other, false)
    }

    fn combine(&self, other: &FilteredModule<P>, is_sum: bool) -> FilteredModule<P> {
        let nl = self.n_levels().min(other.n_levels());
        let nd = self.pieces.len();
        let mut filt = Vec::with_capacity(nl);
        for n in 0..nl {
            let mut level = Vec::with_capacity(nd);
            for i in 0..nd {
                let s = if is_sum {
                    self.filt[n][i].sum(&other.filt[n][i])
                } else {
                    self.filt[n][i].intersect(&other.filt[n][i])
                };
                level.push(s);
            }
            filt.push(level);
        }
        FilteredModule {
            ambient: self.ambient,
            pieces: self.pieces.clone(),
            filt,
        }
    }

    pub fn same_filtration(&self, other: &FilteredModule<P>) -> bool {
        let nl = self.n_levels().min(other.n_levels());
        for n in 0..nl {
            for i in 0..self.pieces.len() {
                if self.filt[n][i] != other.filt[n][i] {
                    return false;
                }
            }
        }
        true
    }

    /// F ≤ G pointwise (F^n ⊆ G^n).
    pub fn contained_in(&self, other: &FilteredModule<P>) -> bool {
        let nl = self.n_levels().min(other.n_levels());
        for n in 0..nl {
            for i in 0..self.pieces.len() {
                if !other.filt[n][i].contains_space(&self.filt[n][i]) {
                    return false;
                }
            }
        }
        true
    }
}

/// The associated graded module of a filtration, with the bigraded data
/// retained for promotions and reports.
pub struct GrOfFiltered<const P: u64> {
    /// per level: flattened module piece (concatenated over internal degree)
    pub level_dims: Vec<usize>,
    /// per (level, degree index): the block dimension
    pub block_dims: Vec<Vec<usize>>,
    /// y, z: level n → n+1
    pub y: Vec<Matrix<P>>,
    pub z: Vec<Matrix<P>>,
    /// representatives: per (level, degree) a basis of F^n_d mod F^{n+1}_d,
    /// in ambient coordinates of the module piece
    pub reps: Vec<Vec<Vec<Vec<Fq<P>>>>>,
}

impl<const P: u64> GrOfFiltered<P> {
    fn new(fm: &FilteredModule<P>) -> Self {
        let nl = fm.n_levels();
        let nd = fm.pieces.len();
        // choose representatives per (n, d): complement of F^{n+1}_d in F^n_d
        let mut reps: Vec<Vec<Vec<Vec<Fq<P>>>>> = Vec::with_capacity(nl);
        for n in 0..nl {
            let mut per_level = Vec::with_capacity(nd);
            for i in 0..nd {
                let lower = if n + 1 < nl {
                    fm.filt[n + 1][i].clone()
                } else {
                    Subspace::zero(fm.pieces.dims[i])
                };
                let mut chosen = Vec::new();
                let mut span = lower.clone();
                for b in fm.filt[n][i].basis() {
                    if span.insert(b.to_vec()) {
                        chosen.push(b.to_vec());
                    }
                }
                per_level.push(chosen);
            }
            reps.push(per_level);
        }
        let block_dims: Vec<Vec<usize>> = reps
            .iter()
            .map(|l| l.iter().map(|b| b.len()).collect())
            .collect();
        let level_dims: Vec<usize> = block_dims.iter().map(|l| l.iter().sum()).collect();
        // maps: y sends (n, d) reps into F^{n+1}_{d+1}; express in reps of
        // level n+1 modulo F^{n+2}
        let mut ymaps = Vec::new();
        let mut zmaps = Vec::new();
        for n in 0..nl.saturating_sub(1) {
            let rows = level_dims[n + 1];
            let cols = level_dims[n];
            let mut ym = Matrix::zero(rows, cols);
            let mut zm = Matrix::zero(rows, cols);
            let col_off: Vec<usize> = block_dims[n]
                .iter()
                .scan(0, |acc, &d| {
                    let o = *acc;
                    *acc += d;
                    Some(o)
                })
                .collect();
            let row_off: Vec<usize> = block_dims[n + 1]
                .iter()
                .scan(0, |acc, &d| {
                    let o = *acc;
                    *acc += d;
                    Some(o)
                })
                .collect();
            for i in 0..nd.saturating_sub(1) {
                for (bi, rep) in reps[n][i].iter().enumerate() {
                    for (maps, mat) in [(&fm.pieces.y[i], &mut ym), (&fm.pieces.z[i], &mut zm)] {
                        let img = maps.apply(rep);
                        // coordinates in reps[n+1][i+1] modulo F^{n+2}_{i+1}
                        let lower = if n + 2 < nl {
                            fm.filt[n + 2][i + 1].clone()
                        } else {
                            Subspace::zero(fm.pieces.dims[i + 1])
                        };
                        let mut cols_m: Vec<Vec<Fq<P>>> = reps[n + 1][i + 1].clone();
                        for lb in lower.basis() {
                            cols_m.push(lb.to_vec());
                        }
                        if cols_m.is_empty() {
                            continue;
                        }
                        let sys = Matrix::from_fn(fm.pieces.dims[i + 1], cols_m.len(), |r, c| {
                            cols_m[c][r]
                        });
                        let sol = sys
                            .solve(&img)
                            .expect("m·F^n ⊆ F^{n+1}: image expressible");
                        for (ri, &c) in sol[..reps[n + 1][i + 1].len()].iter().enumerate() {
                            mat[(row_off[i + 1] + ri, col_off[i] + bi)] = c;
                        }
                    }
                }
            }
            ymaps.push(ym);
            zmaps.push(zm);
        }
        GrOfFiltered {
            level_dims,
            block_dims,
            y: ymaps,
            z: zmaps,
            reps,
        }
    }

    pub fn as_piece_module(&self) -> PieceModule<P> {
        PieceModule {
            min_deg: 0,
            dims: self.level_dims.clone(),
            y: self.y.clone(),
            z: self.z.clone(),
            chars: None,
        }
    }
}

/// The Rees module ⊕_n F^n M·T^{-n}-style data: level pieces with the
/// T-inclusion maps, checked T-torsion-free, with M_F/TM_F ≅ gr_F(M).
pub struct ReesModule<const P: u64> {
    /// dims of F^n per level
    pub level_dims: Vec<usize>,
    /// T: level n+1 piece → level n piece (the inclusion F^{n+1} ⊆ F^n)
    pub t_maps: Vec<Matrix<P>>,
}

pub fn rees<const P: u64>(fm: &FilteredModule<P>) -> Result<ReesModule<P>> {
    fm.check_good()?;
    let nl = fm.n_levels();
    let nd = fm.pieces.len();
    let mut level_dims = Vec::with_capacity(nl);
    let mut bases: Vec<Vec<(usize, Vec<Fq<P>>)>> = Vec::with_capacity(nl);
    for n in 0..nl {
        let mut basis = Vec::new();
        for i in 0..nd {
            for b in fm.filt[n][i].basis() {
                basis.push((i, b.to_vec()));
            }
        }
        level_dims.push(basis.len());
        bases.push(basis);
    }
    let mut t_maps = Vec::with_capacity(nl.saturating_sub(1));
    for n in 0..nl - 1 {
        // inclusion F^{n+1} → F^n expressed in the chosen bases
        let rows = level_dims[n];
        let cols = level_dims[n + 1];
        let mut m = Matrix::zero(rows, cols);
        for (cj, (i, v)) in bases[n + 1].iter().enumerate() {
            // solve v = Σ coeffs · basis of F^n at degree block i
            let block: Vec<&(usize, Vec<Fq<P>>)> =
                bases[n].iter().filter(|(bi, _)| bi == i).collect();
            let offsets: Vec<usize> = bases[n]
                .iter()
                .enumerate()
                .filter(|(_, (bi, _))| bi == i)
                .map(|(idx, _)| idx)
                .collect();
            if block.is_empty() {
                return Err(Error::NotGood("T-map target missing".into()));
            }
            let sys = Matrix::from_fn(fm.pieces.dims[*i], block.len(), |r, c| block[c].1[r]);
            let sol = sys.solve(v).ok_or_else(|| {
                Error::NotGood("filtration not descending at T-map".into())
            })?;
            for (k, &c) in sol.iter().enumerate() {
                m[(offsets[k], cj)] = c;
            }
        }
        // T-torsion-freeness: the inclusion is injective
        if m.rank() != cols {
            return Err(Error::NotGood("Rees module has T-torsion".into()));
        }
        t_maps.push(m);
    }
    Ok(ReesModule { level_dims, t_maps })
}

/// dim-by-dim verification of M_F/T·M_F ≅ gr_F(M).
pub fn rees_quotient_matches_gr<const P: u64>(
    fm: &FilteredModule<P>,
    rm: &ReesModule<P>,
) -> bool {
    let nl = fm.n_levels();
    for n in 0..nl - 1 {
        // (M_F)_n / T(M_F)_{n+1}: dimension = dim F^n − dim F^{n+1}
        let quotient = rm.level_dims[n] - rm.t_maps[n].rank();
        let gr: usize = (0..fm.pieces.len()).map(|i| fm.gr_dim(n, i)).sum();
        if quotient != gr {
            return false;
        }
    }
    true
}

/// Tamely close: j_{R_Λ}(M_{F+F′}/M_{F∩F′}) ≥ j_Λ(M) + 2, decided through
/// the growth of the per-degree dimensions of the quotient.
pub fn tamely_close<const P: u64>(
    f: &FilteredModule<P>,
    fp: &FilteredModule<P>,
) -> Result<bool> {
    f.check_good()?;
    fp.check_good()?;
    let j = grade_growth(&f.pieces, f.ambient);
    let sum = f.sum(fp);
    let cap = f.intersect_filt(fp);
    // h(d) = Σ_n dim (F+F')^n_d / (F∩F')^n_d
    let nd = f.pieces.len();
    let nl = sum.n_levels().min(cap.n_levels());
    // only degrees whose relevant levels fit inside the level window are
    // meaningful; beyond that the difference profile is truncated
    let usable = nd.min(nl.saturating_sub(3));
    let h: Vec<usize> = (0..usable)
        .map(|i| {
            (0..nl)
                .map(|n| sum.filt[n][i].dim() - cap.filt[n][i].dim())
                .sum()
        })
        .collect();
    let nd = usable;
    // dimension of the quotient Rees module from the growth of h, compared
    // against the threshold dim ≤ (d_ambient + 1) − (j + 2)
    let tail = &h[nd.saturating_sub(4)..];
    let qdim: usize = if tail.iter().all(|&x| x == 0) {
        if h.iter().all(|&x| x == 0) {
            return Ok(true); // Q = 0: infinite grade
        }
        0
    } else if tail.windows(2).all(|w| w[0] == w[1]) {
        1
    } else {
        2
    };
    let d_rees = f.ambient.global_dim() + 1;
    let threshold = d_rees as i64 - (j as i64 + 2);
    Ok((qdim as i64) <= threshold)
}

/// The Gabber filtration: enlarge along the largest higher-grade submodule
/// of the associated graded until it is pure.
pub fn gabber_filtration<const P: u64>(fm: &FilteredModule<P>) -> Result<FilteredModule<P>> {
    // the module itself must be pure
    if !is_pure_mod(&fm.pieces, fm.ambient) {
        return Err(Error::NotPure("module has a higher-grade submodule".into()));
    }
    let j = grade_growth(&fm.pieces, fm.ambient);
    let ji = j_internal(fm.ambient, j);
    let mut current = fm.clone();
    for _round in 0..64 {
        let gr = current.gr();
        let gr_pieces = gr.as_piece_module();
        let junk = higher_grade_submodule(&gr_pieces, fm.ambient, ji);
        let margin = 3;
        let checked_levels = gr_pieces.len().saturating_sub(margin);
        let total_junk: usize = junk
            .iter()
            .take(checked_levels)
            .map(|s| s.dim())
            .sum();
        if total_junk == 0 {
            current.check_good()?;
            return Ok(current);
        }
        // promote: for each junk vector at (level n, degree d), its ambient
        // representative in F^n_d is added to F^{n+1}_d
        let mut next = current.clone();
        for n in 0..checked_levels {
            if junk[n].dim() == 0 {
                continue;
            }
            // decompose flattened kernel vectors into degree blocks
            let offsets: Vec<usize> = gr
                .block_dims[n]
                .iter()
                .scan(0, |acc, &d| {
                    let o = *acc;
                    *acc += d;
                    Some(o)
                })
                .collect();
            for v in junk[n].basis() {
                for (i, &off) in offsets.iter().enumerate() {
                    let bd = gr.block_dims[n][i];
                    if bd == 0 {
                        continue;
                    }
                    // ambient representative of the degree-i component
                    let mut amb = vec![Fq::ZERO; current.pieces.dims[i]];
                    let mut nonzero = false;
                    for (k, rep) in gr.reps[n][i].iter().enumerate() {
                        let c = v[off + k];
                        if c.is_zero() {
                            continue;
                        }
                        nonzero = true;
                        for t in 0..amb.len() {
                            let s = rep[t] * c;
                            amb[t] = amb[t] + s;
                        }
                    }
                    if !nonzero {
                        continue;
                    }
                    if n + 1 < next.n_levels() {
                        next.filt[n + 1][i].insert(amb);
                    }
                }
            }
        }
        // re-close: m·F^n ⊆ F^{n+1} by propagating promotions forward
        for n in 0..next.n_levels() - 1 {
            for i in 0..next.pieces.len() - 1 {
                for map in [&next.pieces.y[i], &next.pieces.z[i]] {
                    let img = next.filt[n][i].image(map);
                    for b in img.basis() {
                        next.filt[n + 1][i + 1].insert(b.to_vec());
                    }
                }
            }
        }
        if next.same_filtration(&current) {
            return Err(Error::PreconditionFailed(
                "promotion stalled without reaching purity".into(),
            ));
        }
        current = next;
    }
    Err(Error::PreconditionFailed(
        "Gabber promotion did not terminate".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_a::Presentation;

    type RP = RPres<5>;

    fn poly_z() -> PolyH<5> {
        PolyH::mono(0, 1, Fq::ONE)
    }

    fn poly_y() -> PolyH<5> {
        PolyH::mono(1, 0, Fq::ONE)
    }

    #[test]
    fn expansion_dims() {
        let r = RP::free(&[0]).expand(6);
        assert_eq!(&r.dims[..4], &[1, 2, 3, 4]);
        let fy = RP::cyclic(&[poly_z()]).expand(8);
        assert_eq!(&fy.dims[..4], &[1, 1, 1, 1]);
        let f = RP::cyclic(&[poly_y(), poly_z()]).expand(8);
        assert_eq!(&f.dims[..3], &[1, 0, 0]);
        let ideal = RP::ideal_y2_z().expand(8);
        // (y², z): degree 1: z only; degree d ≥ 2: all d+1 monomials
        assert_eq!(&ideal.dims[..5], &[1, 3, 4, 5, 6]);
    }

    #[test]
    fn grades_both_routes() {
        let cases: Vec<(RP, usize)> = vec![
            (RP::free(&[0]), 0),
            (RP::cyclic(&[poly_z()]), 1),
            (RP::cyclic(&[poly_y(), poly_z()]), 2),
            (RP::ideal_y2_z(), 0),
        ];
        for (pres, expect) in cases {
            let growth = grade_growth(&pres.expand(pres.max_degree() + 10), Ambient::PolyRing);
            assert_eq!(growth, expect);
            let resolved = grade_resolution(&pres).unwrap();
            assert_eq!(resolved, expect, "resolution route");
        }
    }

    #[test]
    fn purity_over_both_ambients() {
        assert!(is_pure_mod(&RP::free(&[0]).expand(10), Ambient::PolyRing));
        assert!(is_pure_mod(
            &RP::ideal_y2_z().expand(12),
            Ambient::PolyRing
        ));
        // F ⊕ F[y] over A: not pure, witness of normalized grade 3
        let bad = Presentation::<5>::f_shift(0).direct_sum(&Presentation::fy_shift(0));
        let m = crate::graded_a::expand_std(&bad);
        assert!(!is_pure_mod(&m, Ambient::QuotA));
        assert_eq!(grade_growth(&m, Ambient::QuotA), 2);
        let junk_only = crate::graded_a::expand_std(&Presentation::<5>::f_shift(0));
        assert_eq!(grade_growth(&junk_only, Ambient::QuotA), 3);
    }

    #[test]
    fn cm_profile_over_r() {
        // free: Ext⁰ only; F[y]: Ext¹ only; F: Ext² only; all CM
        assert!(is_cm_r(&RP::free(&[0, 1])).unwrap());
        assert!(is_cm_r(&RP::cyclic(&[poly_z()])).unwrap());
        assert!(is_cm_r(&RP::cyclic(&[poly_y(), poly_z()])).unwrap());
        // the ideal (y², z): torsion-free of dimension 2 with a syzygy, so
        // Ext⁰ and Ext¹ are both nonzero: not Cohen-Macaulay
        assert!(!is_cm_r(&RP::ideal_y2_z()).unwrap());
        assert_eq!(ext_profile(&RP::ideal_y2_z()).unwrap(), (true, true, false));
        // mixed dimension: F[y] ⊕ F is impure of grade 1: not CM
        let mixed = RPres::<5> {
            gen_degrees: vec![0, 0],
            relations: vec![
                vec![poly_z(), PolyH::zero(1)],
                vec![PolyH::zero(1), poly_y()],
                vec![PolyH::zero(1), poly_z()],
            ],
        };
        assert!(!is_cm_r(&mixed).unwrap());
        // A-side piecewise route
        let fy = crate::graded_a::expand_std(&Presentation::<5>::fy_shift(0));
        assert!(is_cm_mod(&fy, Ambient::QuotA));
        let junky = crate::graded_a::expand_std(
            &Presentation::<5>::f_shift(0).direct_sum(&Presentation::fy_shift(0)),
        );
        assert!(!is_cm_mod(&junky, Ambient::QuotA));
    }

    #[test]
    fn pure_grade_one_is_cm_on_corpus() {
        // over F[y,z]: pure of grade d−1 = 1 means no finite-length part;
        // on a seeded corpus of grade-1 modules both detectors agree
        let mut rng = crate::rng::SplitMix64::new(0x6ABBE);
        for _ in 0..50 {
            let mut pres = Presentation::<5>::fy_shift(rng.below(3) as i64 - 1);
            for _ in 0..rng.below(3) {
                let r = rng.below(3) as i64 - 1;
                pres = if rng.below(2) == 0 {
                    pres.direct_sum(&Presentation::fy_shift(r))
                } else {
                    pres.direct_sum(&Presentation::fz_shift(r))
                };
            }
            let m = crate::graded_a::expand_std(&pres);
            // these are y/z-chains: grade 1 over F[y,z], pure, and CM
            assert_eq!(grade_growth(&m, Ambient::PolyRing), 1);
            assert!(is_pure_mod(&m, Ambient::PolyRing));
        }
    }

    fn standard_filtration(pres: &RP, window: i64, levels: usize) -> FilteredModule<5> {
        let pieces = pres.expand(window);
        // generators in their natural degrees at level = degree
        let gens: Vec<(i64, Vec<Fq<5>>, i64)> = pres
            .gen_degrees
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                // the k-th generator vector at degree d: the expansion puts
                // generator monomial (k, 0, 0) first among that degree's
                // basis; reconstruct by expanding a unit vector presentation
                let i = (d - pieces.min_deg) as usize;
                let mut v = vec![Fq::<5>::ZERO; pieces.dims[i]];
                // locate the generator's coset: it is the image of the free
                // basis vector (k, One); with no relations in low degree the
                // complement ordering keeps generator order
                let mut count = 0;
                for (kk, &dd) in pres.gen_degrees.iter().enumerate() {
                    if dd == d && kk <= k {
                        count += 1;
                    }
                }
                v[count - 1] = Fq::ONE;
                (d, v, d)
            })
            .collect();
        FilteredModule::from_generator_levels(Ambient::PolyRing, &pieces, &gens, 10).unwrap()
            .tap_levels(levels)
    }

    impl FilteredModule<5> {
        fn tap_levels(self, _levels: usize) -> Self {
            self
        }
    }

    #[test]
    fn rees_and_gr_consistency() {
        let pres = RP::cyclic(&[poly_z()]); // F[y]
        let fm = standard_filtration(&pres, 10, 10);
        let rm = rees(&fm).unwrap();
        assert!(rees_quotient_matches_gr(&fm, &rm));
    }

    #[test]
    fn gabber_fixes_standard_filtration_on_fy() {
        let pres = RP::cyclic(&[poly_z()]);
        let fm = standard_filtration(&pres, 10, 10);
        let g = gabber_filtration(&fm).unwrap();
        assert!(fm.same_filtration(&g));
    }

    #[test]
    fn tame_examples() {
        let pres = RP::cyclic(&[poly_z()]); // F[y], grade 1
        let pieces = pres.expand(10);
        let gen = {
            let mut v = vec![Fq::<5>::ZERO; 1];
            v[0] = Fq::ONE;
            (0i64, v, 0i64)
        };
        let f =
            FilteredModule::from_generator_levels(Ambient::PolyRing, &pieces, &[gen.clone()], 10)
                .unwrap();
        // reflexivity
        assert!(tamely_close(&f, &f).unwrap());
        // shift by one: NOT tame at the grade threshold
        let shifted = FilteredModule::from_generator_levels(
            Ambient::PolyRing,
            &pieces,
            &[(0, vec![Fq::ONE], 1)],
            10,
        )
        .unwrap();
        assert!(!tamely_close(&f, &shifted).unwrap());
    }

    #[test]
    fn gabber_enlarges_naive_filtration_on_ideal() {
        let pres = RP::ideal_y2_z();
        let pieces = pres.expand(12);
        // naive filtration: both generators at level 0 (F^n = m^n·M)
        let g1 = {
            let i = (2 - pieces.min_deg) as usize;
            let mut v = vec![Fq::<5>::ZERO; pieces.dims[i]];
            v[0] = Fq::ONE;
            (2i64, v, 0i64)
        };
        let g2 = {
            let i = (1 - pieces.min_deg) as usize;
            let mut v = vec![Fq::<5>::ZERO; pieces.dims[i]];
            v[0] = Fq::ONE;
            (1i64, v, 0i64)
        };
        let naive = FilteredModule::from_generator_levels(
            Ambient::PolyRing,
            &pieces,
            &[g1.clone(), g2.clone()],
            10,
        )
        .unwrap();
        // the naive gr has (yz)-torsion, so Gabber strictly enlarges
        let out = gabber_filtration(&naive).unwrap();
        assert!(naive.contained_in(&out));
        assert!(!out.same_filtration(&naive));
        // output gr is pure
        let gr = out.gr().as_piece_module();
        let junk = higher_grade_submodule(&gr, Ambient::PolyRing, 0);
        assert!(junk
            .iter()
            .take(gr.len().saturating_sub(3))
            .all(|s| s.dim() == 0));
        // idempotence
        let again = gabber_filtration(&out).unwrap();
        assert!(again.same_filtration(&out));
        // the pure member of this tame class puts y² one level up and z at
        // level 0; its gr is the ideal module itself, which is torsion-free
        let expected = FilteredModule::from_generator_levels(
            Ambient::PolyRing,
            &pieces,
            &[(2, g1.1.clone(), 1), (1, g2.1.clone(), 0)],
            10,
        )
        .unwrap();
        assert!(tamely_close(&naive, &expected).unwrap());
        assert!(out.same_filtration(&expected));
        // the degree-level filtration is also pure but lies in a different
        // tame class (it is a global level shift away)
        let degree_filt = FilteredModule::from_generator_levels(
            Ambient::PolyRing,
            &pieces,
            &[(2, g1.1.clone(), 2), (1, g2.1.clone(), 1)],
            10,
        )
        .unwrap();
        assert!(!tamely_close(&naive, &degree_filt).unwrap());
    }
}
