//! Graded modules over A = F[y,z]/(yz): Hilbert data, multiplicities at the
//! two minimal primes, graded Ext¹, prime filtrations, purity, and the
//! Serre-weight graded shapes.
//!
//! A module enters either as a finite presentation (generators with degrees
//! and homogeneous relations — the canonical I/O form) or as expanded graded
//! pieces with y- and z-maps. All computations are degreewise within a
//! window, with explicit stabilization checks; m_{p₀} is the stable rank of
//! the y-multiplication chain and m_{p₁} of the z-chain.

use crate::arith::Fq;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use serde::{Deserialize, Serialize};

/// A homogeneous element a·y^k + b·z^k of A (or a scalar for k = 0).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AHomog<const P: u64> {
    pub degree: usize,
    pub y_coeff: Fq<P>,
    pub z_coeff: Fq<P>,
}

impl<const P: u64> AHomog<P> {
    pub fn scalar(c: Fq<P>) -> Self {
        AHomog {
            degree: 0,
            y_coeff: c,
            z_coeff: c,
        }
    }

    pub fn y_pow(k: usize, c: Fq<P>) -> Self {
        if k == 0 {
            return Self::scalar(c);
        }
        AHomog {
            degree: k,
            y_coeff: c,
            z_coeff: Fq::ZERO,
        }
    }

    pub fn z_pow(k: usize, c: Fq<P>) -> Self {
        if k == 0 {
            return Self::scalar(c);
        }
        AHomog {
            degree: k,
            y_coeff: Fq::ZERO,
            z_coeff: c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.y_coeff.is_zero() && self.z_coeff.is_zero()
    }
}

/// A generator of a graded module presentation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresGen {
    pub degree: i64,
    /// optional H-character exponent tag
    pub character: Option<u32>,
}

/// A homogeneous relation: one coefficient per generator.
pub type Relation<const P: u64> = Vec<AHomog<P>>;

/// Finite presentation of a graded A-module.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Presentation<const P: u64> {
    pub gens: Vec<PresGen>,
    pub relations: Vec<Relation<P>>,
}

impl<const P: u64> Presentation<P> {
    pub fn free(degrees: &[i64]) -> Self {
        Presentation {
            gens: degrees
                .iter()
                .map(|&d| PresGen {
                    degree: d,
                    character: None,
                })
                .collect(),
            relations: Vec::new(),
        }
    }

    /// A(r): one generator in degree −r (so pieces start at −r).
    pub fn a_shift(r: i64) -> Self {
        Self::free(&[-r])
    }

    /// F[y](r) = (A/(z))(r).
    pub fn fy_shift(r: i64) -> Self {
        let mut p = Self::free(&[-r]);
        p.relations.push(vec![AHomog::z_pow(1, Fq::ONE)]);
        p
    }

    /// F[z](r) = (A/(y))(r).
    pub fn fz_shift(r: i64) -> Self {
        let mut p = Self::free(&[-r]);
        p.relations.push(vec![AHomog::y_pow(1, Fq::ONE)]);
        p
    }

    /// F(r): the simple module in degree −r.
    pub fn f_shift(r: i64) -> Self {
        let mut p = Self::free(&[-r]);
        p.relations.push(vec![AHomog::y_pow(1, Fq::ONE)]);
        p.relations.push(vec![AHomog::z_pow(1, Fq::ONE)]);
        p
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.clone());
        let mut relations = Vec::new();
        for r in &self.relations {
            let mut row = r.clone();
            row.extend(vec![AHomog::scalar(Fq::ZERO); other.gens.len()]);
            relations.push(row);
        }
        for r in &other.relations {
            let mut row = vec![AHomog::scalar(Fq::ZERO); self.gens.len()];
            row.extend(r.clone());
            relations.push(row);
        }
        Presentation { gens, relations }
    }

    pub fn max_degree(&self) -> i64 {
        let g = self.gens.iter().map(|g| g.degree).max().unwrap_or(0);
        let r = self
            .relations
            .iter()
            .flat_map(|rel| {
                rel.iter().zip(&self.gens).filter_map(|(c, g)| {
                    if c.is_zero() {
                        None
                    } else {
                        Some(g.degree + c.degree as i64)
                    }
                })
            })
            .max()
            .unwrap_or(0);
        g.max(r)
    }

    pub fn min_degree(&self) -> i64 {
        self.gens.iter().map(|g| g.degree).min().unwrap_or(0)
    }

    /// Expand to graded pieces up to internal degree `bound`.
    pub fn expand(&self, bound: i64) -> PieceModule<P> {
        let lo = self.min_degree();
        assert!(bound >= lo);
        let n = (bound - lo + 1) as usize;
        // free-module basis at degree d: (gen i, monomial) with monomial in
        // {1} if d == deg_i, {y^k, z^k} if d − deg_i = k > 0
        #[derive(Clone, Copy, PartialEq)]
        enum Mon {
            One,
            Y(usize),
            Z(usize),
        }
        let basis_at = |d: i64| -> Vec<(usize, Mon)> {
            let mut out = Vec::new();
            for (i, g) in self.gens.iter().enumerate() {
                let k = d - g.degree;
                if k < 0 {
                    continue;
                }
                if k == 0 {
                    out.push((i, Mon::One));
                } else {
                    out.push((i, Mon::Y(k as usize)));
                    out.push((i, Mon::Z(k as usize)));
                }
            }
            out
        };
        // relation subspace at degree d: monomial multiples of each relation
        let mut rel_spaces: Vec<Subspace<P>> = Vec::with_capacity(n);
        let mut free_bases: Vec<Vec<(usize, Mon)>> = Vec::with_capacity(n);
        for step in 0..n {
            let d = lo + step as i64;
            let basis = basis_at(d);
            let pos = |gi: usize, m: Mon| -> Option<usize> {
                basis.iter().position(|&(i, bm)| {
                    i == gi
                        && match (bm, m) {
                            (Mon::One, Mon::One) => true,
                            (Mon::Y(a), Mon::Y(b)) => a == b,
                            (Mon::Z(a), Mon::Z(b)) => a == b,
                            _ => false,
                        }
                })
            };
            let mut space = Subspace::zero(basis.len());
            for rel in &self.relations {
                let rel_deg = rel
                    .iter()
                    .zip(&self.gens)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, g)| g.degree + c.degree as i64)
                    .max();
                let Some(rel_deg) = rel_deg else { continue };
                let k = d - rel_deg;
                if k < 0 {
                    continue;
                }
                // multiply the relation by 1, y^k, z^k
                let mults: Vec<AHomog<P>> = if k == 0 {
                    vec![AHomog::scalar(Fq::ONE)]
                } else {
                    vec![
                        AHomog::y_pow(k as usize, Fq::ONE),
                        AHomog::z_pow(k as usize, Fq::ONE),
                    ]
                };
                for m in mults {
                    let mut v = vec![Fq::ZERO; basis.len()];
                    let mut ok = true;
                    for (gi, c) in rel.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        // coefficient degree within this relation instance
                        let cdeg = (rel_deg - self.gens[gi].degree) as usize;
                        debug_assert!(cdeg == c.degree || c.is_zero());
                        // m · c as an element of A of degree cdeg + k
                        let prod_y;
                        let prod_z;
                        if m.degree == 0 {
                            prod_y = m.y_coeff * c.y_coeff;
                            prod_z = m.z_coeff * c.z_coeff;
                        } else if c.degree == 0 {
                            prod_y = m.y_coeff * c.y_coeff;
                            prod_z = m.z_coeff * c.z_coeff;
                        } else {
                            // y^a·y^b survives, y^a·z^b = 0
                            prod_y = m.y_coeff * c.y_coeff;
                            prod_z = m.z_coeff * c.z_coeff;
                        }
                        let total = c.degree + m.degree;
                        if total == 0 {
                            if let Some(t) = pos(gi, Mon::One) {
                                v[t] = v[t] + prod_y;
                            } else {
                                ok = false;
                            }
                        } else {
                            if !prod_y.is_zero() {
                                match pos(gi, Mon::Y(total)) {
                                    Some(t) => v[t] = v[t] + prod_y,
                                    None => ok = false,
                                }
                            }
                            if !prod_z.is_zero() {
                                match pos(gi, Mon::Z(total)) {
                                    Some(t) => v[t] = v[t] + prod_z,
                                    None => ok = false,
                                }
                            }
                        }
                    }
                    if ok {
                        space.insert(v);
                    }
                }
            }
            rel_spaces.push(space);
            free_bases.push(basis);
        }
        // quotient pieces and maps
        let mut dims = Vec::with_capacity(n);
        let mut chars: Vec<Vec<u32>> = Vec::with_capacity(n);
        let has_chars = self.gens.iter().all(|g| g.character.is_some());
        for step in 0..n {
            let comp = rel_spaces[step].complement_positions();
            dims.push(comp.len());
            if has_chars {
                let alpha = (P - 1) as i64;
                chars.push(
                    comp.iter()
                        .map(|&c| {
                            let (gi, m) = free_bases[step][c];
                            let base = self.gens[gi].character.unwrap() as i64;
                            let shift = match m {
                                Mon::One => 0,
                                Mon::Y(k) => alpha * k as i64,
                                Mon::Z(k) => -alpha * (k as i64),
                            };
                            (base + shift).rem_euclid((P * P - 1) as i64) as u32
                        })
                        .collect(),
                );
            }
        }
        let mut y_maps = Vec::with_capacity(n.saturating_sub(1));
        let mut z_maps = Vec::with_capacity(n.saturating_sub(1));
        for step in 0..n.saturating_sub(1) {
            let d = lo + step as i64;
            let src = &free_bases[step];
            let dst = &free_bases[step + 1];
            let comp_s = rel_spaces[step].complement_positions();
            let comp_d = rel_spaces[step + 1].complement_positions();
            let mul_map = |yside: bool| -> Matrix<P> {
                let mut m = Matrix::zero(comp_d.len(), comp_s.len());
                for (col, &cs) in comp_s.iter().enumerate() {
                    let (gi, mon) = src[cs];
                    // y·(gen, mon) or z·(gen, mon)
                    let target: Option<(usize, Mon)> = match (yside, mon) {
                        (true, Mon::One) => Some((gi, Mon::Y(1))),
                        (true, Mon::Y(k)) => Some((gi, Mon::Y(k + 1))),
                        (true, Mon::Z(_)) => None,
                        (false, Mon::One) => Some((gi, Mon::Z(1))),
                        (false, Mon::Z(k)) => Some((gi, Mon::Z(k + 1))),
                        (false, Mon::Y(_)) => None,
                    };
                    let Some((tg, tm)) = target else { continue };
                    let pos = dst.iter().position(|&(i, bm)| {
                        i == tg
                            && match (bm, tm) {
                                (Mon::One, Mon::One) => true,
                                (Mon::Y(a), Mon::Y(b)) => a == b,
                                (Mon::Z(a), Mon::Z(b)) => a == b,
                                _ => false,
                            }
                    });
                    let Some(pos) = pos else { continue };
                    let mut v = vec![Fq::ZERO; dst.len()];
                    v[pos] = Fq::ONE;
                    let red = rel_spaces[step + 1].reduce(v);
                    for (row, &cd) in comp_d.iter().enumerate() {
                        m[(row, col)] = red[cd];
                    }
                    let _ = d;
                }
                m
            };
            y_maps.push(mul_map(true));
            z_maps.push(mul_map(false));
        }
        PieceModule {
            min_deg: lo,
            dims,
            y: y_maps,
            z: z_maps,
            chars: if has_chars { Some(chars) } else { None },
        }
    }
}

/// A graded A-module held as explicit pieces with multiplication maps.
#[derive(Clone, Debug)]
pub struct PieceModule<const P: u64> {
    pub min_deg: i64,
    pub dims: Vec<usize>,
    /// y[i]: piece i → piece i+1
    pub y: Vec<Matrix<P>>,
    pub z: Vec<Matrix<P>>,
    pub chars: Option<Vec<Vec<u32>>>,
}

impl<const P: u64> PieceModule<P> {
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn hilbert(&self) -> &[usize] {
        &self.dims
    }

    /// yz and zy must vanish on every piece.
    pub fn check_yz_zero(&self) -> bool {
        for i in 0..self.len().saturating_sub(2) {
            let yz = &self.y[i + 1] * &self.z[i];
            let zy = &self.z[i + 1] * &self.y[i];
            if !yz.is_zero() || !zy.is_zero() {
                return false;
            }
        }
        true
    }

    /// Composite y^k map out of piece i.
    fn y_composite(&self, i: usize, k: usize) -> Matrix<P> {
        let mut m = Matrix::identity(self.dims[i]);
        for j in 0..k {
            m = &self.y[i + j] * &m;
        }
        m
    }

    fn z_composite(&self, i: usize, k: usize) -> Matrix<P> {
        let mut m = Matrix::identity(self.dims[i]);
        for j in 0..k {
            m = &self.z[i + j] * &m;
        }
        m
    }

    /// (m_{p₀}, m_{p₁}) via stable ranks of the y- and z-chains.
    pub fn multiplicity(&self) -> Result<(usize, usize)> {
        let w = 3usize;
        let n = self.len();
        if n < 2 * w + 2 {
            return Err(Error::NeedLargerBound {
                bound: n,
                reason: "window too small for stable ranks".into(),
            });
        }
        let probe = |yside: bool| -> Result<usize> {
            let mut last = None;
            // ranks of the length-w composite starting at the final degrees
            for i in (n - w - 3)..(n - w) {
                let m = if yside {
                    self.y_composite(i, w)
                } else {
                    self.z_composite(i, w)
                };
                let r = m.rank();
                if let Some(prev) = last {
                    if prev != r {
                        return Err(Error::NeedLargerBound {
                            bound: n,
                            reason: format!(
                                "{}-rank not stabilized: {} vs {}",
                                if yside { "y" } else { "z" },
                                prev,
                                r
                            ),
                        });
                    }
                }
                last = Some(r);
            }
            Ok(last.unwrap())
        };
        Ok((probe(true)?, probe(false)?))
    }

    pub fn mu(&self) -> Result<usize> {
        let (a, b) = self.multiplicity()?;
        Ok(a + b)
    }

    /// Finite-length-submodule detector: a nonzero homogeneous v with
    /// y^K v = z^K v = 0 within the window. Returns a witness (degree, vector).
    pub fn finite_length_witness(&self) -> Option<(i64, Vec<Fq<P>>)> {
        let n = self.len();
        let margin = 3.min(n.saturating_sub(1));
        for i in 0..n.saturating_sub(margin) {
            let k = (n - 1 - i).min(n - 1);
            if self.dims[i] == 0 {
                continue;
            }
            let ky = self.y_composite(i, k);
            let kz = self.z_composite(i, k);
            let ker = Subspace::kernel_of(&ky.vstack(&kz));
            if ker.dim() > 0 {
                return Some((self.min_deg + i as i64, ker.basis()[0].to_vec()));
            }
        }
        None
    }

    pub fn is_pure(&self) -> bool {
        !self.is_empty() && self.finite_length_witness().is_none()
    }

    /// Submodule generated by homogeneous vectors (degree, coordinates).
    pub fn submodule(&self, gens: &[(i64, Vec<Fq<P>>)]) -> SubPieces<P> {
        let mut spaces: Vec<Subspace<P>> = self.dims.iter().map(|&d| Subspace::zero(d)).collect();
        let mut queue: Vec<(usize, Vec<Fq<P>>)> = Vec::new();
        for (d, v) in gens {
            let i = (d - self.min_deg) as usize;
            if spaces[i].insert(v.clone()) {
                queue.push((i, v.clone()));
            }
        }
        while let Some((i, v)) = queue.pop() {
            if i + 1 < self.len() {
                for (m, _) in [(&self.y[i], 0), (&self.z[i], 1)] {
                    let w = m.apply(&v);
                    if spaces[i + 1].insert(w.clone()) {
                        queue.push((i + 1, w));
                    }
                }
            }
        }
        SubPieces { spaces }
    }

    /// The sub- and quotient modules along a piecewise subspace.
    pub fn quotient(&self, sub: &SubPieces<P>) -> PieceModule<P> {
        let n = self.len();
        let dims = (0..n)
            .map(|i| self.dims[i] - sub.spaces[i].dim())
            .collect::<Vec<_>>();
        let maps = |ms: &Vec<Matrix<P>>| -> Vec<Matrix<P>> {
            (0..n.saturating_sub(1))
                .map(|i| {
                    let comp_s = sub.spaces[i].complement_positions();
                    let comp_d = sub.spaces[i + 1].complement_positions();
                    let mut out = Matrix::zero(comp_d.len(), comp_s.len());
                    for (col, &cs) in comp_s.iter().enumerate() {
                        let mut e = vec![Fq::ZERO; self.dims[i]];
                        e[cs] = Fq::ONE;
                        let img = sub.spaces[i + 1].reduce(ms[i].apply(&e));
                        for (row, &cd) in comp_d.iter().enumerate() {
                            out[(row, col)] = img[cd];
                        }
                    }
                    out
                })
                .collect()
        };
        PieceModule {
            min_deg: self.min_deg,
            dims,
            y: maps(&self.y),
            z: maps(&self.z),
            chars: None,
        }
    }

    pub fn sub_module(&self, sub: &SubPieces<P>) -> PieceModule<P> {
        let n = self.len();
        let dims = sub.spaces.iter().map(|s| s.dim()).collect::<Vec<_>>();
        let maps = |ms: &Vec<Matrix<P>>| -> Vec<Matrix<P>> {
            (0..n.saturating_sub(1))
                .map(|i| {
                    let mut out = Matrix::zero(sub.spaces[i + 1].dim(), sub.spaces[i].dim());
                    for (col, b) in sub.spaces[i].basis().iter().enumerate() {
                        let img = ms[i].apply(b);
                        let coords = sub.spaces[i + 1]
                            .coordinates(&img)
                            .expect("subspaces closed under maps");
                        for (row, &c) in coords.iter().enumerate() {
                            out[(row, col)] = c;
                        }
                    }
                    out
                })
                .collect()
        };
        PieceModule {
            min_deg: self.min_deg,
            dims,
            y: maps(&self.y),
            z: maps(&self.z),
            chars: None,
        }
    }

    pub fn direct_sum(&self, other: &PieceModule<P>) -> PieceModule<P> {
        assert_eq!(self.min_deg, other.min_deg);
        let n = self.len().min(other.len());
        PieceModule {
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
                            let mut c = a[i].clone();
                            c.extend(&b[i]);
                            c
                        })
                        .collect(),
                ),
                _ => None,
            },
        }
    }
}

/// Aligned per-degree subspaces of a PieceModule (a graded submodule).
#[derive(Clone, Debug)]
pub struct SubPieces<const P: u64> {
    pub spaces: Vec<Subspace<P>>,
}

impl<const P: u64> SubPieces<P> {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }

    pub fn contains(&self, other: &SubPieces<P>) -> bool {
        self.spaces
            .iter()
            .zip(&other.spaces)
            .all(|(a, b)| a.contains_space(b))
    }
}

/// Which shape a prime-filtration layer has.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum PrimeQuot {
    /// F[y] = A/(z)
    FY,
    /// F[z] = A/(y)
    FZ,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiltStep {
    pub tag: PrimeQuot,
    /// the layer is (A/q)(r)
    pub shift: i64,
}

/// A prime filtration of a CM module of dimension 1: a chain of graded
/// submodules with successive quotients A/p₀ or A/p₁ up to shift. The
/// absorption step of the proof (a finite-length layer appearing in a
/// quotient) is handled by saturating each layer against the junk of its
/// quotient, which bumps the layer's shift by one each time.
pub fn prime_filtration<const P: u64>(n: &PieceModule<P>) -> Result<Vec<FiltStep>> {
    if let Some((deg, _)) = n.finite_length_witness() {
        return Err(Error::NotCohenMacaulay {
            degree: (deg - n.min_deg) as usize,
        });
    }
    let margin = 3usize;
    let mut steps = Vec::new();
    let mut current = n.clone();
    let mut guard = 0;
    loop {
        let checked = current.len().saturating_sub(margin);
        if current.dims[..checked].iter().all(|&d| d == 0) {
            if current.dims.iter().any(|&d| d > 0) && current.total_dim() > 0 {
                // only the unchecked tail is nonzero; for a genuine module
                // this cannot happen because submodule closures fill forward
                return Err(Error::NeedLargerBound {
                    bound: current.len(),
                    reason: "residue concentrated in the window tail".into(),
                });
            }
            break;
        }
        guard += 1;
        if guard > 64 {
            return Err(Error::PreconditionFailed(
                "prime filtration did not terminate".into(),
            ));
        }
        let Some((tag, i, v)) = find_clean_vector(&current, margin) else {
            let i0 = current.dims.iter().position(|&d| d > 0).unwrap();
            return Err(Error::NotCohenMacaulay { degree: i0 });
        };
        let d_pick = current.min_deg + i as i64;
        let mut layer_gens = vec![(d_pick, v)];
        let mut layer = current.submodule(&layer_gens);
        // saturate against finite-length junk in the quotient
        loop {
            let q = current.quotient(&layer);
            let Some((jd, wbar)) = q.finite_length_witness() else {
                break;
            };
            let ji = (jd - current.min_deg) as usize;
            // lift the witness along the complement coordinates
            let comp = layer.spaces[ji].complement_positions();
            let mut w = vec![Fq::ZERO; current.dims[ji]];
            for (pos, &c) in comp.iter().enumerate() {
                w[c] = wbar[pos];
            }
            layer_gens.push((jd, w));
            layer = current.submodule(&layer_gens);
        }
        // verify the layer has the dims of (A/q)(−d₁) in the checked window
        let d1_idx = layer
            .spaces
            .iter()
            .position(|s| s.dim() > 0)
            .expect("nonzero layer");
        for (j, s) in layer.spaces.iter().enumerate().take(checked) {
            let expect = if j >= d1_idx { 1 } else { 0 };
            if s.dim() != expect {
                return Err(Error::PreconditionFailed(format!(
                    "prime filtration layer has dimension {} at window index {j}",
                    s.dim()
                )));
            }
        }
        steps.push(FiltStep {
            tag,
            shift: -(current.min_deg + d1_idx as i64),
        });
        current = current.quotient(&layer);
    }
    Ok(steps)
}

/// Lowest-degree homogeneous vector with annihilator exactly (z) (an
/// F[y]-chain head) or exactly (y) (an F[z]-chain head).
fn find_clean_vector<const P: u64>(
    m: &PieceModule<P>,
    margin: usize,
) -> Option<(PrimeQuot, usize, Vec<Fq<P>>)> {
    let checked = m.len().saturating_sub(margin);
    for i in 0..checked {
        if m.dims[i] == 0 {
            continue;
        }
        let k = m.len() - 1 - i;
        for (tag, kill_map_exists) in [(PrimeQuot::FY, true), (PrimeQuot::FZ, false)] {
            let kill = if i + 1 < m.len() {
                let map = if kill_map_exists { &m.z[i] } else { &m.y[i] };
                Subspace::kernel_of(map)
            } else {
                Subspace::full(m.dims[i])
            };
            if kill.dim() == 0 {
                continue;
            }
            let alive = if kill_map_exists {
                m.y_composite(i, k)
            } else {
                m.z_composite(i, k)
            };
            // if some vector of `kill` survives, some basis vector does
            for b in kill.basis() {
                if !alive.apply(b).iter().all(|x| x.is_zero()) {
                    return Some((tag, i, b.to_vec()));
                }
            }
        }
    }
    None
}

/// Classification of a pure module with m_{p₀} = m_{p₁} = 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Mu2Class {
    AShift { r: i64 },
    Split { r: i64, s: i64 },
}

pub fn classify_mu2<const P: u64>(n: &PieceModule<P>) -> Result<Mu2Class> {
    if !n.is_pure() {
        return Err(Error::PreconditionFailed("module is not pure".into()));
    }
    let (m0, m1) = n.multiplicity()?;
    if (m0, m1) != (1, 1) {
        return Err(Error::PreconditionFailed(format!(
            "multiplicities ({m0},{m1}) are not (1,1)"
        )));
    }
    let i0 = n.dims.iter().position(|&d| d > 0).unwrap();
    let d0 = n.min_deg + i0 as i64;
    let margin = 3usize;
    if n.dims[i0] == 1 {
        // cyclic candidate: generated by the lowest piece ⇒ A(−d0)
        let mut e = vec![Fq::ZERO; 1];
        e[0] = Fq::ONE;
        let gen = n.submodule(&[(d0, e)]);
        let full = gen
            .spaces
            .iter()
            .enumerate()
            .all(|(j, s)| j >= n.len() - margin || s.dim() == n.dims[j]);
        if full {
            // dims must match A(−d0): 1, 2, 2, …
            for (j, &d) in n.dims.iter().enumerate() {
                if j >= n.len() - margin {
                    break;
                }
                let expect = if (n.min_deg + j as i64) < d0 {
                    0
                } else if (n.min_deg + j as i64) == d0 {
                    1
                } else {
                    2
                };
                if d != expect {
                    return Err(Error::PreconditionFailed(format!(
                        "cyclic μ=2 module with unexpected Hilbert value {d}"
                    )));
                }
            }
            return Ok(Mu2Class::AShift { r: -d0 });
        }
    }
    // split type: find the two chains
    let find_chain = |yside: bool| -> Option<i64> {
        for i in i0..n.len().saturating_sub(margin) {
            if n.dims[i] == 0 {
                continue;
            }
            let kill = if yside {
                Subspace::kernel_of(&n.z[i])
            } else {
                Subspace::kernel_of(&n.y[i])
            };
            let k = n.len() - 1 - i;
            let alive = if yside {
                n.y_composite(i, k)
            } else {
                n.z_composite(i, k)
            };
            for b in kill.basis() {
                if !alive.apply(b).iter().all(|x| x.is_zero()) {
                    return Some(n.min_deg + i as i64);
                }
            }
        }
        None
    };
    let ry = find_chain(true);
    let rz = find_chain(false);
    match (ry, rz) {
        (Some(dy), Some(dz)) => Ok(Mu2Class::Split { r: -dy, s: -dz }),
        _ => Err(Error::PreconditionFailed(
            "balanced pure module without split chains".into(),
        )),
    }
}

/// Graded Ext¹_A(N, N′): total dimension over all internal degrees.
pub fn ext1_a<const P: u64>(n: &Presentation<P>, nprime: &Presentation<P>) -> Result<usize> {
    // three-step graded free resolution of N by degreewise syzygy extraction
    let bound = n.max_degree() + 8;
    let res = resolve(n, bound)?;
    let npr = nprime.expand(nprime.max_degree() + 16);
    // Internal degrees are scanned only where every Hom-component lies
    // inside the expanded window of N′, so no truncation artifacts arise.
    let max_fgen = res
        .gen_degrees
        .iter()
        .flat_map(|v| v.iter().copied())
        .max()
        .unwrap_or(0);
    let npr_top = npr.min_deg + npr.len() as i64 - 1;
    let lo_e = npr.min_deg - max_fgen - 2;
    let hi_e = npr_top - max_fgen - 1;
    let mut total = 0usize;
    let mut top_hits = 0usize;
    for e in lo_e..=hi_e {
        let d = ext1_at_degree(&res, &npr, e)?;
        if d > 0 && e >= hi_e - 1 {
            top_hits += d;
        }
        total += d;
    }
    if top_hits > 0 {
        return Err(Error::NeedLargerBound {
            bound: bound as usize,
            reason: "Ext classes at the top of the degree window".into(),
        });
    }
    Ok(total)
}

struct GradedResolution<const P: u64> {
    /// generator degrees of F0, F1, F2
    gen_degrees: [Vec<i64>; 3],
    /// boundary ∂1: columns over F1-gens, each a vector of (F0-gen, AHomog)
    d1: Vec<Vec<(usize, AHomog<P>)>>,
    d2: Vec<Vec<(usize, AHomog<P>)>>,
}

fn resolve<const P: u64>(n: &Presentation<P>, bound: i64) -> Result<GradedResolution<P>> {
    let f0: Vec<i64> = n.gens.iter().map(|g| g.degree).collect();
    // K1 = kernel of F0 → N is the submodule generated by the relations;
    // but for Ext we need a free cover of K1: its minimal generators are
    // found degreewise inside the free module F0.
    let (f1, d1, k1_free) = syzygy_generators(&f0, &n.relations, bound)?;
    let (f2, d2, _) = syzygy_generators(&f1, &k1_free, bound)?;
    Ok(GradedResolution {
        gen_degrees: [f0, f1.clone(), f2],
        d1,
        d2,
    })
}

/// Given a free module with generator degrees and a set of homogeneous
/// module elements (relations), find minimal generators of the submodule
/// they generate AND the syzygies among those generators:
/// returns (new gen degrees, expressions of new gens, relation set among them).
type Syzygies<const P: u64> = (Vec<i64>, Vec<Vec<(usize, AHomog<P>)>>, Vec<Relation<P>>);

fn syzygy_generators<const P: u64>(
    free_degrees: &[i64],
    relations: &[Relation<P>],
    bound: i64,
) -> Result<Syzygies<P>> {
    // The submodule K of F generated by `relations`; minimal generators are
    // new relation instances not in A₊·(previous gens).
    // Work degreewise with dense bases of F.
    let lo = free_degrees.iter().copied().min().unwrap_or(0);
    let rel_degree = |rel: &Relation<P>| -> Option<i64> {
        rel.iter()
            .zip(free_degrees)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, &d)| d + c.degree as i64)
            .max()
    };
    // basis of F at degree d, as in Presentation::expand
    #[derive(Clone, Copy, PartialEq)]
    enum Mon {
        One,
        Y(usize),
        Z(usize),
    }
    let basis_at = |d: i64| -> Vec<(usize, Mon)> {
        let mut out = Vec::new();
        for (i, &gd) in free_degrees.iter().enumerate() {
            let k = d - gd;
            if k < 0 {
                continue;
            }
            if k == 0 {
                out.push((i, Mon::One));
            } else {
                out.push((i, Mon::Y(k as usize)));
                out.push((i, Mon::Z(k as usize)));
            }
        }
        out
    };
    let rel_to_vec = |rel: &Relation<P>, d: i64, basis: &[(usize, Mon)]| -> Option<Vec<Fq<P>>> {
        // rel viewed in degree d must be homogeneous of degree d
        let rd = rel_degree(rel)?;
        if rd != d {
            return None;
        }
        let mut v = vec![Fq::ZERO; basis.len()];
        for (gi, c) in rel.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = (d - free_degrees[gi]) as usize;
            debug_assert_eq!(k, c.degree);
            if k == 0 {
                let t = basis.iter().position(|&(i, m)| i == gi && matches!(m, Mon::One))?;
                v[t] = v[t] + c.y_coeff;
            } else {
                if !c.y_coeff.is_zero() {
                    let t = basis
                        .iter()
                        .position(|&(i, m)| i == gi && matches!(m, Mon::Y(a) if a == k))?;
                    v[t] = v[t] + c.y_coeff;
                }
                if !c.z_coeff.is_zero() {
                    let t = basis
                        .iter()
                        .position(|&(i, m)| i == gi && matches!(m, Mon::Z(a) if a == k))?;
                    v[t] = v[t] + c.z_coeff;
                }
            }
        }
        Some(v)
    };
    // multiply a free-module vector by y or z (dense coords degree d → d+1)
    let mul_vec = |v: &[Fq<P>], d: i64, yside: bool| -> Vec<Fq<P>> {
        let src = basis_at(d);
        let dst = basis_at(d + 1);
        let mut out = vec![Fq::ZERO; dst.len()];
        for (t, &(gi, m)) in src.iter().enumerate() {
            if v[t].is_zero() {
                continue;
            }
            let tm = match (yside, m) {
                (true, Mon::One) => Some(Mon::Y(1)),
                (true, Mon::Y(k)) => Some(Mon::Y(k + 1)),
                (true, Mon::Z(_)) => None,
                (false, Mon::One) => Some(Mon::Z(1)),
                (false, Mon::Z(k)) => Some(Mon::Z(k + 1)),
                (false, Mon::Y(_)) => None,
            };
            let Some(tm) = tm else { continue };
            let pos = dst.iter().position(|&(i, bm)| {
                i == gi
                    && match (bm, tm) {
                        (Mon::Y(a), Mon::Y(b)) => a == b,
                        (Mon::Z(a), Mon::Z(b)) => a == b,
                        _ => false,
                    }
            });
            if let Some(p) = pos {
                out[p] = out[p] + v[t];
            }
        }
        out
    };
    // sweep degrees, maintaining the span of A·(chosen generators)
    let mut new_degrees: Vec<i64> = Vec::new();
    let mut new_exprs: Vec<Vec<(usize, AHomog<P>)>> = Vec::new();
    // chosen generator vectors per degree for syzygy extraction
    let mut gen_vectors: Vec<(i64, Vec<Fq<P>>)> = Vec::new();
    let mut span_prev: Vec<(i64, Subspace<P>)> = Vec::new();
    let mut syzygies: Vec<Relation<P>> = Vec::new();
    for d in lo..=bound {
        let basis = basis_at(d);
        if basis.is_empty() {
            span_prev.push((d, Subspace::zero(0)));
            continue;
        }
        // span of A₊·previous: y and z images of degree d−1 span
        let mut span = Subspace::zero(basis.len());
        if let Some((pd, ps)) = span_prev.last() {
            if *pd == d - 1 {
                for b in ps.basis() {
                    span.insert(mul_vec(b, d - 1, true));
                    span.insert(mul_vec(b, d - 1, false));
                }
            }
        }
        let amb_span = span.clone();
        // add relation instances of this degree; new generators are those
        // outside A₊·(everything before)
        for rel in relations {
            if let Some(v) = rel_to_vec(rel, d, &basis) {
                if !amb_span.contains(&v) && span.insert(v.clone()) {
                    // record as a new generator of K
                    new_degrees.push(d);
                    let mut expr = Vec::new();
                    for (gi, c) in rel.iter().enumerate() {
                        if !c.is_zero() {
                            expr.push((gi, c.clone()));
                        }
                    }
                    new_exprs.push(expr);
                    gen_vectors.push((d, v));
                } else {
                    span.insert(v);
                }
            }
        }
        // syzygies: linear dependencies among monomial multiples of the
        // chosen generators at this degree
        let mut cols: Vec<(usize, AHomog<P>, Vec<Fq<P>>)> = Vec::new();
        for (gi, (gd, gv)) in gen_vectors.iter().enumerate() {
            let k = d - gd;
            if k < 0 {
                continue;
            }
            if k == 0 {
                cols.push((gi, AHomog::scalar(Fq::ONE), gv.clone()));
            } else {
                let mut vy = gv.clone();
                let mut vz = gv.clone();
                for step in 0..k {
                    vy = mul_vec(&vy, gd + step, true);
                    vz = mul_vec(&vz, gd + step, false);
                }
                cols.push((gi, AHomog::y_pow(k as usize, Fq::ONE), vy));
                cols.push((gi, AHomog::z_pow(k as usize, Fq::ONE), vz));
            }
        }
        if !cols.is_empty() {
            let m = Matrix::from_fn(basis.len(), cols.len(), |i, j| cols[j].2[i]);
            for kvec in m.kernel() {
                // a syzygy: Σ kvec[j]·(monomial_j · gen_{gi_j}) = 0
                let mut rel: Relation<P> = vec![AHomog::scalar(Fq::ZERO); gen_vectors.len()];
                for (j, c) in kvec.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (gi, ref mon, _) = cols[j];
                    let add = AHomog {
                        degree: mon.degree,
                        y_coeff: mon.y_coeff * *c,
                        z_coeff: mon.z_coeff * *c,
                    };
                    let cur = &rel[gi];
                    rel[gi] = if cur.is_zero() {
                        add
                    } else {
                        debug_assert_eq!(cur.degree, add.degree);
                        AHomog {
                            degree: add.degree,
                            y_coeff: cur.y_coeff + add.y_coeff,
                            z_coeff: cur.z_coeff + add.z_coeff,
                        }
                    };
                }
                if rel.iter().any(|c| !c.is_zero()) {
                    syzygies.push(rel);
                }
            }
        }
        span_prev.push((d, span));
    }
    Ok((new_degrees, new_exprs, syzygies))
}

fn ext1_at_degree<const P: u64>(
    res: &GradedResolution<P>,
    npr: &PieceModule<P>,
    e: i64,
) -> Result<usize> {
    let piece_dim = |d: i64| -> usize {
        let i = d - npr.min_deg;
        if i < 0 || i as usize >= npr.len() {
            0
        } else {
            npr.dims[i as usize]
        }
    };
    // C^k_e = ⊕_j N′_{deg(Fk gen j) + e}
    let dims: Vec<Vec<usize>> = res
        .gen_degrees
        .iter()
        .map(|degs| degs.iter().map(|&d| piece_dim(d + e)).collect())
        .collect();
    let total = |v: &Vec<usize>| -> usize { v.iter().sum() };
    // d0*: C0 → C1 via ∂1; d1*: C1 → C2 via ∂2
    let build = |cols_from: &Vec<usize>,
                 cols_deg: &Vec<i64>,
                 rows: &Vec<usize>,
                 rows_deg: &Vec<i64>,
                 boundary: &Vec<Vec<(usize, AHomog<P>)>>|
     -> Matrix<P> {
        let nr = total(rows);
        let nc = total(cols_from);
        let mut m = Matrix::zero(nr, nc);
        let col_off: Vec<usize> = cols_from
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let row_off: Vec<usize> = rows
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        // (φ∘∂)(gen_j) = Σ_{(i, a)} a·φ(gen_i), a ∈ A homogeneous
        for (j, col) in boundary.iter().enumerate() {
            for &(i, ref a) in col {
                // action of a on N′ pieces: from degree cols_deg[i] + e
                let src_d = cols_deg[i] + e;
                let dst_d = rows_deg[j] + e;
                debug_assert_eq!(src_d + a.degree as i64, dst_d);
                let si = src_d - npr.min_deg;
                if si < 0 || piece_dim(src_d) == 0 || piece_dim(dst_d) == 0 {
                    continue;
                }
                let si = si as usize;
                let mut my = Matrix::identity(piece_dim(src_d));
                let mut mz = my.clone();
                for t in 0..a.degree {
                    my = &npr.y[si + t] * &my;
                    mz = &npr.z[si + t] * &mz;
                }
                let act = if a.degree == 0 {
                    my.scale(a.y_coeff)
                } else {
                    &my.scale(a.y_coeff) + &mz.scale(a.z_coeff)
                };
                for r in 0..act.rows {
                    for c in 0..act.cols {
                        let v = act[(r, c)];
                        if !v.is_zero() {
                            m[(row_off[j] + r, col_off[i] + c)] =
                                m[(row_off[j] + r, col_off[i] + c)] + v;
                        }
                    }
                }
            }
        }
        m
    };
    let d0 = build(
        &dims[0],
        &res.gen_degrees[0],
        &dims[1],
        &res.gen_degrees[1],
        &res.d1,
    );
    let d1 = build(
        &dims[1],
        &res.gen_degrees[1],
        &dims[2],
        &res.gen_degrees[2],
        &res.d2,
    );
    let z = if d1.rows == 0 {
        total(&dims[1])
    } else {
        Subspace::kernel_of(&d1).dim()
    };
    let b = d0.rank();
    Ok(z - b)
}

/// Serre-weight annihilator ideal tag.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum IdealTag {
    /// p₀ = (y), quotient F[z]
    Y,
    /// p₁ = (z), quotient F[y]
    Z,
    Zero,
}

/// 𝔞(χ) from a weight set: (y) if χα⁻¹ ∈ W, (z) if χα ∈ W, else (0).
/// When both neighbors are present (a non-generic configuration) the first
/// clause wins.
pub fn serre_weight_ideal<const P: u64>(
    wset: &[crate::grouprep::Character<P>],
    chi: &crate::grouprep::Character<P>,
) -> IdealTag {
    let down = chi.times_alpha(-1);
    let up = chi.times_alpha(1);
    if wset.iter().any(|w| w.a == down.a) {
        IdealTag::Y
    } else if wset.iter().any(|w| w.a == up.a) {
        IdealTag::Z
    } else {
        IdealTag::Zero
    }
}

/// ⊕_{χ∈W} χ^∨ ⊗ A/𝔞(χ) as a presentation with character tags.
pub fn expected_graded<const P: u64>(
    wset: &[crate::grouprep::Character<P>],
) -> Result<Presentation<P>> {
    if wset.is_empty() {
        return Err(Error::PreconditionFailed("empty weight set".into()));
    }
    let mut gens = Vec::new();
    let mut relations = Vec::new();
    for chi in wset {
        let gi = gens.len();
        gens.push(PresGen {
            degree: 0,
            character: Some(chi.inverse().a),
        });
        let rel = match serre_weight_ideal(wset, chi) {
            IdealTag::Y => Some(AHomog::y_pow(1, Fq::ONE)),
            IdealTag::Z => Some(AHomog::z_pow(1, Fq::ONE)),
            IdealTag::Zero => None,
        };
        if let Some(r) = rel {
            let mut row = vec![AHomog::scalar(Fq::ZERO); wset.len()];
            row[gi] = r;
            relations.push(row);
        }
    }
    // pad relation rows to the full generator count
    for r in relations.iter_mut() {
        r.resize(gens.len(), AHomog::scalar(Fq::ZERO));
    }
    Ok(Presentation { gens, relations })
}

pub const DEFAULT_BOUND_MARGIN: i64 = 10;

/// Expand a presentation with the standard stable-rank margin.
pub fn expand_std<const P: u64>(p: &Presentation<P>) -> PieceModule<P> {
    p.expand(p.max_degree() + DEFAULT_BOUND_MARGIN + 2 * p.gens.len() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::Character;
    use crate::rng::SplitMix64;

    type Pres = Presentation<5>;

    #[test]
    fn hilbert_of_basic_modules() {
        let a = expand_std(&Pres::a_shift(0));
        assert_eq!(&a.dims[..4], &[1, 2, 2, 2]);
        let fy = expand_std(&Pres::fy_shift(0));
        assert_eq!(&fy.dims[..4], &[1, 1, 1, 1]);
        let f = expand_std(&Pres::f_shift(0));
        assert_eq!(&f.dims[..3], &[1, 0, 0]);
        assert!(a.check_yz_zero());
    }

    #[test]
    fn multiplicities() {
        assert_eq!(expand_std(&Pres::a_shift(0)).multiplicity().unwrap(), (1, 1));
        assert_eq!(
            expand_std(&Pres::fy_shift(3)).multiplicity().unwrap(),
            (1, 0)
        );
        assert_eq!(
            expand_std(&Pres::fz_shift(-2)).multiplicity().unwrap(),
            (0, 1)
        );
        assert_eq!(expand_std(&Pres::f_shift(0)).multiplicity().unwrap(), (0, 0));
        let sum = Pres::a_shift(1).direct_sum(&Pres::fy_shift(0));
        assert_eq!(expand_std(&sum).multiplicity().unwrap(), (2, 1));
    }

    #[test]
    fn purity_detection() {
        assert!(expand_std(&Pres::a_shift(0)).is_pure());
        assert!(expand_std(&Pres::fy_shift(2)).is_pure());
        let with_junk = Pres::f_shift(0).direct_sum(&Pres::fy_shift(0));
        let m = expand_std(&with_junk);
        assert!(!m.is_pure());
        let (deg, _) = m.finite_length_witness().unwrap();
        assert_eq!(deg, 0);
    }

    #[test]
    fn ext_table_values() {
        // the 3×3 table for N, N′ ∈ {F, F[y], F[z]}
        let f = Pres::f_shift(0);
        let fy = Pres::fy_shift(0);
        let fz = Pres::fz_shift(0);
        // The (F[y], F) and (F[z], F) cells are 1, witnessed by the
        // non-split extensions A/(z²) and A/(y²); see the witness test.
        let table = [
            (&f, &f, 2),
            (&fy, &f, 1),
            (&fz, &f, 1),
            (&f, &fy, 1),
            (&fy, &fy, 0),
            (&fz, &fy, 1),
            (&f, &fz, 1),
            (&fy, &fz, 1),
            (&fz, &fz, 0),
        ];
        for (n, npr, expect) in table {
            assert_eq!(
                ext1_a(n, npr).unwrap(),
                expect,
                "Ext¹({:?} gens, {:?} gens)",
                n.gens.len(),
                npr.gens.len()
            );
        }
    }

    #[test]
    fn ext_fy_f_witness() {
        // X = A/(z²) is a non-split extension 0 → F(−1) → X → F[y] → 0,
        // certifying Ext¹(F[y], F) ≠ 0.
        let mut x = Pres::free(&[0]);
        x.relations.push(vec![AHomog::z_pow(2, Fq::ONE)]);
        let m = expand_std(&x);
        assert_eq!(&m.dims[..4], &[1, 2, 1, 1]);
        // the z-line is a finite-length submodule F(−1)
        let zvec_pos = {
            // degree-1 piece has basis {y, z}; find the z-killed one... the
            // z-vector is killed by both maps out of degree 1
            let ker = Subspace::kernel_of(&m.y[1].vstack(&m.z[1]));
            assert_eq!(ker.dim(), 1);
            ker.basis()[0].to_vec()
        };
        let sub = m.submodule(&[(1, zvec_pos)]);
        assert_eq!(sub.dims().iter().sum::<usize>(), 1);
        let q = m.quotient(&sub);
        // quotient ≅ F[y]: dims 1,1,1,… with z acting as zero
        assert_eq!(&q.dims[..4], &[1, 1, 1, 1]);
        assert!(q.z[0].is_zero());
        assert!(!q.y[0].is_zero());
        // non-split: X has no finite-length QUOTIENT complementing F[y];
        // equivalently no degree-1 vector maps onto the junk and is killed
        // by y — the junk witness z is hit by z from degree 0
        assert!(!m.z[0].is_zero());
    }

    #[test]
    fn star_ext_generator_realizes_a() {
        // 0 → F[y](−1) →y→ A → F[z] → 0: the middle term A is the non-split
        // extension class generating Ext¹(F[z], F[y])
        let a = expand_std(&Pres::a_shift(0));
        // submodule generated by y ∈ A_1 spans the F[y](−1) chain
        let y_idx = 0usize; // A_1 basis: y, z in expansion order
        let mut v = vec![Fq::ZERO; 2];
        v[y_idx] = Fq::ONE;
        let sub = a.submodule(&[(1, v)]);
        assert_eq!(sub.dims()[1..5], [1, 1, 1, 1]);
        let q = a.quotient(&sub);
        // quotient is F[z]: dims 1,1,1,… with y acting as 0
        assert_eq!(&q.dims[..4], &[1, 1, 1, 1]);
        assert!(q.y[1].is_zero());
        assert!(!q.z[1].is_zero());
    }

    #[test]
    fn prime_filtration_of_a() {
        let a = expand_std(&Pres::a_shift(0));
        let steps = prime_filtration(&a).unwrap();
        assert_eq!(steps.len(), 2);
        // one layer of each type
        let tags: Vec<PrimeQuot> = steps.iter().map(|s| s.tag).collect();
        assert!(tags.contains(&PrimeQuot::FY) && tags.contains(&PrimeQuot::FZ));
    }

    #[test]
    fn prime_filtration_of_shifted_line() {
        let m = expand_std(&Pres::fy_shift(4));
        let steps = prime_filtration(&m).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].tag, PrimeQuot::FY);
        assert_eq!(steps[0].shift, 4);
    }

    #[test]
    fn prime_filtration_rejects_junk() {
        let with_junk = Pres::f_shift(0).direct_sum(&Pres::fz_shift(0));
        assert!(matches!(
            prime_filtration(&expand_std(&with_junk)),
            Err(Error::NotCohenMacaulay { .. })
        ));
    }

    #[test]
    fn classify_shapes() {
        match classify_mu2(&expand_std(&Pres::a_shift(3))).unwrap() {
            Mu2Class::AShift { r } => assert_eq!(r, 3),
            other => panic!("expected A-type, got {other:?}"),
        }
        let split = Pres::fy_shift(0).direct_sum(&Pres::fz_shift(1));
        match classify_mu2(&expand_std(&split)).unwrap() {
            Mu2Class::Split { r, s } => {
                assert_eq!((r, s), (0, 1));
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn mu_additive_on_seeded_subquotients() {
        let mut rng = SplitMix64::new(0xAD17);
        for _ in 0..200 {
            // random direct sum of shifts
            let mut pres = Pres::a_shift(rng.below(3) as i64);
            for _ in 0..rng.below(3) {
                let r = rng.below(3) as i64 - 1;
                pres = match rng.below(3) {
                    0 => pres.direct_sum(&Pres::a_shift(r)),
                    1 => pres.direct_sum(&Pres::fy_shift(r)),
                    _ => pres.direct_sum(&Pres::fz_shift(r)),
                };
            }
            let m = pres.expand(pres.max_degree() + 14);
            // random homogeneous generators for a submodule
            let mut gens = Vec::new();
            for _ in 0..1 + rng.below(2) {
                let i = rng.below(4) as usize;
                if m.dims[i] == 0 {
                    continue;
                }
                let v: Vec<Fq<5>> = (0..m.dims[i]).map(|_| Fq::random(&mut rng)).collect();
                gens.push((m.min_deg + i as i64, v));
            }
            if gens.is_empty() {
                continue;
            }
            let sub = m.submodule(&gens);
            let s = m.sub_module(&sub);
            let q = m.quotient(&sub);
            let (a0, a1) = m.multiplicity().unwrap();
            let (s0, s1) = s.multiplicity().unwrap();
            let (q0, q1) = q.multiplicity().unwrap();
            assert_eq!((a0, a1), (s0 + q0, s1 + q1));
        }
    }

    #[test]
    fn weight_ideals_and_expected_graded() {
        type Chr = Character<5>;
        let chi = Chr::new(2);
        let w = vec![chi, chi.times_alpha(-1)];
        assert_eq!(serre_weight_ideal(&w, &chi), IdealTag::Y);
        assert_eq!(serre_weight_ideal(&w, &chi.times_alpha(-1)), IdealTag::Z);
        // 4 weights, no α-neighbors: μ = 8
        let spread: Vec<Chr> = vec![
            Chr::new(0),
            Chr::new(1),
            Chr::new(2),
            Chr::new(3),
        ];
        let pres = expected_graded(&spread).unwrap();
        assert_eq!(expand_std(&pres).mu().unwrap(), 8);
        // two α-adjacent pairs: μ = 4
        let chi2 = chi.times_alpha(3);
        let generic = vec![chi, chi.times_alpha(-1), chi2, chi2.times_alpha(-1)];
        let pres = expected_graded(&generic).unwrap();
        let m = expand_std(&pres);
        assert_eq!(m.mu().unwrap(), 4);
        assert!(m.is_pure());
        // generated in degree 0: all pieces reachable from degree 0
        let gens: Vec<(i64, Vec<Fq<5>>)> = (0..m.dims[0])
            .map(|j| {
                let mut v = vec![Fq::ZERO; m.dims[0]];
                v[j] = Fq::ONE;
                (0, v)
            })
            .collect();
        let sub = m.submodule(&gens);
        assert_eq!(sub.dims(), m.dims);
    }
}
