//! Finite-level group cohomology: Ext¹ between smooth representations of Γ,
//! computed as H¹(P, Hom(M, N)) followed by H-invariants, where P is the
//! p-Sylow U_D¹/(Z_D¹U_D^{2N}) (or its subgroup U_D²/(Z_D¹U_D^{2N})).
//!
//! H¹(P, V) is computed on generator values: a 1-cocycle is determined by
//! its values on a Frattini-minimal generating set, and the condition that
//! the values extend consistently along the left-multiplication Cayley graph
//! is a finite linear system (one block of rows per non-tree edge). Minimal
//! free resolutions use the same graph: the kernel of the first boundary is
//! the cycle space of the right-multiplication Cayley graph, with a
//! fundamental-cycle basis from a BFS spanning tree.

use crate::arith::Fq;
use crate::error::{Error, Result};
use crate::grouprep::{GroupKind, SmoothRep};
use crate::linalg::{Matrix, Subspace};
use crate::quat::{Atom, GroupElem, ATOMS};
use serde::{Deserialize, Serialize};

/// Which p-group the cohomology is taken over.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum PKind {
    /// P = U_D¹/(Z_D¹U_D⁴), order q·p·q; Frattini rank 2.
    U1Level,
    /// P = U_D²/(Z_D¹U_D⁴), order p³, elementary abelian; Frattini rank 3.
    U2Level,
}

/// The finite p-group with its Cayley data.
pub struct PGroup<const P: u64> {
    pub kind: PKind,
    pub elems: Vec<GroupElem<P>>,
    pub gens: Vec<GroupElem<P>>,
    /// left_mul[i][h] = index of gens[i]·elems[h]
    pub left_mul: Vec<Vec<u32>>,
    /// right_mul[i][h] = index of elems[h]·gens[i]
    pub right_mul: Vec<Vec<u32>>,
    /// BFS tree over left multiplication: elems[h] = gens[i]·elems[parent]
    pub bfs_parent: Vec<Option<(u32, u8)>>,
    /// conj[h] = index of t⁻¹·elems[h]·t for t = [g₀]
    pub conj_by_t: Vec<u32>,
}

impl<const P: u64> PGroup<P> {
    pub fn new(kind: PKind) -> Self {
        let q = (P * P) as usize;
        let p = P as usize;
        let (elems, gens): (Vec<GroupElem<P>>, Vec<GroupElem<P>>) = match kind {
            PKind::U1Level => {
                let mut elems = Vec::with_capacity(q * p * q);
                for m1 in 0..q {
                    for c in 0..p {
                        for m3 in 0..q {
                            elems.push(GroupElem::a_elem(
                                Fq::from_index(m1),
                                Fq::new(0, c as u64),
                                Fq::from_index(m3),
                            ));
                        }
                    }
                }
                let gens = vec![
                    GroupElem::u1_elem(Fq::ONE),
                    GroupElem::u1_elem(Fq::theta()),
                ];
                (elems, gens)
            }
            PKind::U2Level => {
                let mut elems = Vec::with_capacity(p * q);
                for c in 0..p {
                    for m3 in 0..q {
                        elems.push(GroupElem::a_elem(
                            Fq::ZERO,
                            Fq::new(0, c as u64),
                            Fq::from_index(m3),
                        ));
                    }
                }
                let gens = vec![
                    Atom::U2(1).element::<P>(),
                    Atom::U3(0).element::<P>(),
                    Atom::U3(1).element::<P>(),
                ];
                (elems, gens)
            }
        };
        let index = |g: &GroupElem<P>| -> usize {
            debug_assert_eq!(g.teich, Fq::ONE);
            match kind {
                PKind::U1Level => {
                    (g.mu1.index() * p + g.mu2.c1 as usize) * q + g.mu3.index()
                }
                PKind::U2Level => {
                    debug_assert!(g.mu1.is_zero());
                    g.mu2.c1 as usize * q + g.mu3.index()
                }
            }
        };
        let n = elems.len();
        let r = gens.len();
        let mut left_mul = vec![vec![0u32; n]; r];
        let mut right_mul = vec![vec![0u32; n]; r];
        for (h, e) in elems.iter().enumerate() {
            for (i, g) in gens.iter().enumerate() {
                left_mul[i][h] = index(&g.mul(e)) as u32;
                right_mul[i][h] = index(&e.mul(g)) as u32;
            }
        }
        // BFS over left multiplication from the identity
        let id = index(&GroupElem::identity());
        let mut bfs_parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[id] = true;
        let mut queue = std::collections::VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            for i in 0..r {
                let t = left_mul[i][h] as usize;
                if !seen[t] {
                    seen[t] = true;
                    bfs_parent[t] = Some((h as u32, i as u8));
                    queue.push_back(t);
                }
            }
        }
        assert!(seen.iter().all(|&s| s), "generators do not generate");
        let t = GroupElem::from_teich(Fq::gen0());
        let ti = t.inv();
        let conj_by_t = elems
            .iter()
            .map(|e| index(&ti.mul(e).mul(&t)) as u32)
            .collect();
        PGroup {
            kind,
            elems,
            gens,
            left_mul,
            right_mul,
            bfs_parent,
            conj_by_t,
        }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    fn identity_index(&self) -> usize {
        self.bfs_parent
            .iter()
            .position(|x| x.is_none())
            .expect("root exists")
    }
}

/// A P-module: action matrices of the P-group generators on V, plus the
/// action of the semisimple generator [g₀] for H-descent.
pub struct PModule<const P: u64> {
    pub gen_actions: Vec<Matrix<P>>,
    pub t_action: Matrix<P>,
    pub dim: usize,
}

impl<const P: u64> PModule<P> {
    /// Hom(M, N) with g·φ = N(g) φ M(g)⁻¹.
    pub fn hom(pg: &PGroup<P>, m: &SmoothRep<P>, n: &SmoothRep<P>) -> Result<Self> {
        let dm = m.dim;
        let dn = n.dim;
        let dim = dm * dn;
        let build = |g: &GroupElem<P>| -> Result<Matrix<P>> {
            let ng = n.act_matrix(g)?;
            let mginv = m
                .act_matrix(g)?
                .inverse()
                .expect("group element acts invertibly");
            // φ index (i, j) ↦ i·dm + j; (g·φ)[(i,j)] = Σ N[(i,k)] φ[(k,l)] Minv[(l,j)]
            Ok(Matrix::from_fn(dim, dim, |row, col| {
                let (i, j) = (row / dm, row % dm);
                let (k, l) = (col / dm, col % dm);
                ng[(i, k)] * mginv[(l, j)]
            }))
        };
        let gen_actions = pg.gens.iter().map(&build).collect::<Result<Vec<_>>>()?;
        let t_action = build(&GroupElem::from_teich(Fq::gen0()))?;
        Ok(PModule {
            gen_actions,
            t_action,
            dim,
        })
    }

    /// The trivial module F.
    pub fn trivial(pg: &PGroup<P>) -> Self {
        PModule {
            gen_actions: vec![Matrix::identity(1); pg.rank()],
            t_action: Matrix::identity(1),
            dim: 1,
        }
    }
}

/// H¹(P, V) with its H-action, in generator-value coordinates V^r.
pub struct H1Space<const P: u64> {
    pub z1: Subspace<P>,
    pub b1: Subspace<P>,
    /// cocycle lifts of a basis of H¹(P,V)^H
    pub fixed_class_lifts: Vec<Vec<Fq<P>>>,
    /// the matrix of t on Z¹-coordinates (ambient r·dim)
    pub t_matrix: Matrix<P>,
    pub module_dim: usize,
    pub rank: usize,
}

impl<const P: u64> H1Space<P> {
    pub fn dim_h1_full(&self) -> usize {
        self.z1.dim() - self.b1.dim()
    }

    pub fn dim_h1_fixed(&self) -> usize {
        self.fixed_class_lifts.len()
    }

    /// Coordinates of a cocycle in the fixed-class basis modulo B¹;
    /// None if it is not in span(fixed classes) + B¹.
    pub fn class_coords(&self, z: &[Fq<P>]) -> Option<Vec<Fq<P>>> {
        let d = self.fixed_class_lifts.len();
        let ambient = self.module_dim * self.rank;
        let mut cols: Vec<Vec<Fq<P>>> = Vec::new();
        for l in &self.fixed_class_lifts {
            cols.push(l.clone());
        }
        for b in self.b1.basis() {
            cols.push(b.to_vec());
        }
        if cols.is_empty() {
            return if z.iter().all(|x| x.is_zero()) {
                Some(vec![])
            } else {
                None
            };
        }
        let m = Matrix::from_fn(ambient, cols.len(), |i, j| cols[j][i]);
        let x = m.solve(z)?;
        Some(x[..d].to_vec())
    }
}

/// Compute H¹(P, V) and its H-fixed part.
pub fn h1<const P: u64>(pg: &PGroup<P>, v: &PModule<P>) -> H1Space<P> {
    let n = pg.order();
    let r = pg.rank();
    let m = v.dim;
    let ambient = r * m;
    // L[h]: V^r → V, the linear expansion of c(elems[h]) in generator values
    let mut l: Vec<Matrix<P>> = vec![Matrix::zero(m, ambient); n];
    // BFS order: parents come before children
    let mut order: Vec<usize> = Vec::with_capacity(n);
    {
        let root = pg.identity_index();
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(h) = queue.pop_front() {
            order.push(h);
            for i in 0..r {
                let t = pg.left_mul[i][h] as usize;
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    let iota = |i: usize| -> Matrix<P> {
        Matrix::from_fn(m, ambient, |row, col| {
            if col == i * m + row {
                Fq::ONE
            } else {
                Fq::ZERO
            }
        })
    };
    for &h in &order {
        if let Some((parent, i)) = pg.bfs_parent[h] {
            let ix = iota(i as usize);
            l[h] = &ix + &(&v.gen_actions[i as usize] * &l[parent as usize]);
        }
    }
    // conditions from non-tree edges: L[x·h] = ι_x + A_x·L[h]
    let mut row_space: Subspace<P> = Subspace::zero(ambient);
    for i in 0..r {
        let ix = iota(i);
        for h in 0..n {
            let target = pg.left_mul[i][h] as usize;
            if pg.bfs_parent[target] == Some((h as u32, i as u8)) {
                continue; // tree edge, identity by construction
            }
            let lhs = &l[target] - &(&ix + &(&v.gen_actions[i] * &l[h]));
            for row in 0..m {
                let rowvec: Vec<Fq<P>> = (0..ambient).map(|c| lhs[(row, c)]).collect();
                if rowvec.iter().any(|x| !x.is_zero()) {
                    row_space.insert(rowvec);
                }
            }
        }
    }
    let z1 = if row_space.dim() == 0 {
        Subspace::full(ambient)
    } else {
        Subspace::kernel_of(&Matrix::from_rows(
            row_space.basis().iter().map(|v| v.to_vec()).collect(),
        ))
    };
    // coboundaries δv = ((A_x − 1)v)_x
    let mut b1 = Subspace::zero(ambient);
    for j in 0..m {
        let mut e = vec![Fq::ZERO; m];
        e[j] = Fq::ONE;
        let mut w = vec![Fq::ZERO; ambient];
        for (i, a) in v.gen_actions.iter().enumerate() {
            let img = a.apply(&e);
            for row in 0..m {
                w[i * m + row] = img[row] - e[row];
            }
        }
        b1.insert(w);
    }
    debug_assert!(z1.contains_space(&b1));
    // t-action on generator-value coordinates:
    // (t·c)(x) = A_t · L[t⁻¹xt](values)
    let gen_index: Vec<usize> = pg
        .gens
        .iter()
        .map(|g| {
            pg.elems
                .iter()
                .position(|e| e == g)
                .expect("generators are elements")
        })
        .collect();
    let mut t_matrix = Matrix::zero(ambient, ambient);
    for (i, &gi) in gen_index.iter().enumerate() {
        let hx = pg.conj_by_t[gi] as usize;
        let block = &v.t_action * &l[hx];
        for row in 0..m {
            for col in 0..ambient {
                t_matrix[(i * m + row, col)] = block[(row, col)];
            }
        }
    }
    // H-fixed classes: kernel of (T̄ − 1) on Z¹/B¹
    let zdim = z1.dim();
    let fixed_class_lifts = if zdim == b1.dim() {
        Vec::new()
    } else {
        // coordinates: basis of Z¹; compute T on those coordinates
        let zbasis = z1.basis().to_vec();
        let mut t_on_z = Matrix::zero(zdim, zdim);
        for (j, zb) in zbasis.iter().enumerate() {
            let img = t_matrix.apply(zb);
            let coords = z1.coordinates(&img).expect("Z¹ is t-stable");
            for i in 0..zdim {
                t_on_z[(i, j)] = coords[i];
            }
        }
        // B¹ in Z¹-coordinates
        let b_in_z = Subspace::from_vectors(
            zdim,
            b1.basis()
                .iter()
                .map(|b| z1.coordinates(b).expect("B¹ ⊆ Z¹")),
        );
        let tq = b_in_z.quotient_action(&t_on_z);
        let k = tq.rows;
        let fixed = Subspace::kernel_of(&(&tq - &Matrix::identity(k)));
        // lift quotient coordinates back to cocycles
        let comp = b_in_z.complement_positions();
        fixed
            .basis()
            .iter()
            .map(|qc| {
                let mut zc = vec![Fq::ZERO; zdim];
                for (pos, &cp) in comp.iter().enumerate() {
                    zc[cp] = qc[pos];
                }
                // zc are Z¹-coordinates; expand to ambient
                let mut w = vec![Fq::ZERO; ambient];
                for (c, zb) in zc.iter().zip(&zbasis) {
                    for t in 0..ambient {
                        let s = zb[t] * *c;
                        w[t] = w[t] + s;
                    }
                }
                w
            })
            .collect()
    };
    H1Space {
        z1,
        b1,
        fixed_class_lifts,
        t_matrix,
        module_dim: m,
        rank: r,
    }
}

/// The result of an Ext¹ computation between full-group representations.
pub struct Ext1<const P: u64> {
    pub dim: usize,
    /// realized non-split extensions, one per basis class
    pub classes: Vec<SmoothRep<P>>,
    pub h1: H1Space<P>,
    sub_dim: usize,
    quot_dim: usize,
}

impl<const P: u64> Ext1<P> {
    pub fn sub_dim(&self) -> usize {
        self.sub_dim
    }
    pub fn quot_dim(&self) -> usize {
        self.quot_dim
    }

    /// Realize the class Σ coeffs[i]·(basis class i) as an extension rep.
    pub fn realize_combination(
        &self,
        pg: &PGroup<P>,
        m: &SmoothRep<P>,
        n: &SmoothRep<P>,
        coeffs: &[Fq<P>],
    ) -> Result<SmoothRep<P>> {
        assert_eq!(coeffs.len(), self.dim);
        let ambient = self.h1.module_dim * self.h1.rank;
        let mut lift = vec![Fq::<P>::ZERO; ambient];
        for (c, l) in coeffs.iter().zip(&self.h1.fixed_class_lifts) {
            for t in 0..ambient {
                let s = l[t] * *c;
                lift[t] = lift[t] + s;
            }
        }
        realize_extension(pg, m, n, &self.h1, &lift)
    }
}

/// Ext¹_Γ(M, N) = H¹(P, Hom(M, N))^H, with explicit extension
/// representations 0 → N → X → M → 0 realizing each basis class.
pub fn ext1<const P: u64>(
    pg: &PGroup<P>,
    m: &SmoothRep<P>,
    n: &SmoothRep<P>,
) -> Result<Ext1<P>> {
    if m.level != n.level {
        return Err(Error::UnsupportedLevel(m.level.max(n.level)));
    }
    assert!(matches!(pg.kind, PKind::U1Level));
    let v = PModule::hom(pg, m, n)?;
    let space = h1(pg, &v);
    let classes = space
        .fixed_class_lifts
        .iter()
        .map(|lift| realize_extension(pg, m, n, &space, lift))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ext1 {
        dim: space.dim_h1_fixed(),
        classes,
        h1: space,
        sub_dim: n.dim,
        quot_dim: m.dim,
    })
}

/// Average a fixed-class cocycle over H and assemble the block-triangular
/// extension representation.
fn realize_extension<const P: u64>(
    pg: &PGroup<P>,
    m: &SmoothRep<P>,
    n: &SmoothRep<P>,
    space: &H1Space<P>,
    lift: &[Fq<P>],
) -> Result<SmoothRep<P>> {
    let ambient = space.module_dim * space.rank;
    let q1 = P * P - 1;
    // c' = |H|⁻¹ Σ_k t^k·c
    let mut acc = vec![Fq::<P>::ZERO; ambient];
    let mut cur = lift.to_vec();
    for _ in 0..q1 {
        for i in 0..ambient {
            acc[i] = acc[i] + cur[i];
        }
        cur = space.t_matrix.apply(&cur);
    }
    let inv = Fq::<P>::from_base(q1 % P).inv().expect("q−1 invertible mod p");
    for x in acc.iter_mut() {
        *x = *x * inv;
    }
    // evaluate the averaged cocycle on the unipotent atoms via L-expansion;
    // rebuild L lazily only at the atom elements by walking BFS words
    let eval = |g: &GroupElem<P>| -> Vec<Fq<P>> {
        // expand c(g) along the BFS word of g
        let idx = pg
            .elems
            .iter()
            .position(|e| e == g)
            .expect("atom element lies in P");
        // walking up the tree yields letters leftmost-first: elems[h] =
        // g_i·elems[parent], matching L[g_i·h] = ι_i + A_i·L[h]
        let mut letters = Vec::new();
        let mut cur = idx;
        while let Some((parent, i)) = pg.bfs_parent[cur] {
            letters.push(i as usize);
            cur = parent as usize;
        }
        // c(x1 x2 … xk) = v_{x1} + x1·v_{x2} + …
        let mdim = space.module_dim;
        let mut val = vec![Fq::<P>::ZERO; mdim];
        let mut prefix: Option<Matrix<P>> = None;
        // we need the Hom-action of prefixes; rebuild incrementally
        for &i in &letters {
            let vx = &acc[i * mdim..(i + 1) * mdim];
            let contrib = match &prefix {
                None => vx.to_vec(),
                Some(pm) => pm.apply(vx),
            };
            for t in 0..mdim {
                val[t] = val[t] + contrib[t];
            }
            let a = &pgmodule_gen(pg, m, n, i);
            prefix = Some(match prefix {
                None => a.clone(),
                Some(pm) => &pm * a,
            });
        }
        val
    };
    let dm = m.dim;
    let dn = n.dim;
    let dim = dm + dn;
    let mut atoms = Vec::with_capacity(ATOMS.len());
    for atom in ATOMS {
        let g = atom.element::<P>();
        let mm = m.act_matrix(&g)?;
        let nm = n.act_matrix(&g)?;
        let c = if atom.is_unipotent() {
            eval(&g)
        } else {
            vec![Fq::ZERO; dm * dn]
        };
        // X(g) = [[N(g), C·M(g)], [0, M(g)]] with C the Hom-matrix of c
        let cm = Matrix::from_fn(dn, dm, |i, j| c[i * dm + j]);
        let top_right = &cm * &mm;
        atoms.push(Matrix::from_fn(dim, dim, |i, j| {
            if i < dn && j < dn {
                nm[(i, j)]
            } else if i < dn {
                top_right[(i, j - dn)]
            } else if j >= dn {
                mm[(i - dn, j - dn)]
            } else {
                Fq::ZERO
            }
        }));
    }
    SmoothRep::new(GroupKind::Full, atoms, None)
}

// Hom-module action of a single generator (rebuilt on demand; small dims).
fn pgmodule_gen<const P: u64>(
    pg: &PGroup<P>,
    m: &SmoothRep<P>,
    n: &SmoothRep<P>,
    i: usize,
) -> Matrix<P> {
    let g = &pg.gens[i];
    let dm = m.dim;
    let ng = n.act_matrix(g).expect("gen");
    let mginv = m.act_matrix(g).expect("gen").inverse().expect("invertible");
    let dim = dm * n.dim;
    Matrix::from_fn(dim, dim, |row, col| {
        let (i1, j1) = (row / dm, row % dm);
        let (k, l) = (col / dm, col % dm);
        ng[(i1, k)] * mginv[(l, j1)]
    })
}

/// The linear map Ext¹(M, N) → Ext¹(M, N′) induced by a hom ι: N → N′
/// (pushforward), or Ext¹(M′, N) → Ext¹(M, N) induced by ι: M → M′
/// (pullback), expressed in the fixed-class bases.
pub enum ExtMap {
    Push,
    Pull,
}

pub fn ext1_induced_map<const P: u64>(
    source: &Ext1<P>,
    target: &Ext1<P>,
    iota: &Matrix<P>,
    dir: ExtMap,
) -> Option<Matrix<P>> {
    let sd = source.dim;
    let td = target.dim;
    let mut cols = Vec::with_capacity(sd);
    for lift in &source.h1.fixed_class_lifts {
        // map each generator-value block through composition with ι
        let sm = source.h1.module_dim;
        let r = source.h1.rank;
        let (sdn, sdm) = (source.sub_dim, source.quot_dim);
        let mut out = Vec::with_capacity(target.h1.module_dim * r);
        for i in 0..r {
            let block = &lift[i * sm..(i + 1) * sm];
            let phi = Matrix::from_fn(sdn, sdm, |a, b| block[a * sdm + b]);
            let mapped = match dir {
                ExtMap::Push => iota * &phi,
                ExtMap::Pull => &phi * iota,
            };
            for a in 0..mapped.rows {
                for b in 0..mapped.cols {
                    out.push(mapped[(a, b)]);
                }
            }
        }
        let coords = target.h1.class_coords(&out)?;
        cols.push(coords);
    }
    Some(Matrix::from_fn(td, sd, |i, j| cols[j][i]))
}

/// Rebuild the uniserial tower by iterated one-dimensional extension
/// realization; at each step Ext¹(χα^{−i}, previous) must be a line.
pub fn tower_via_ext<const P: u64>(
    pg: &PGroup<P>,
    chi: &crate::grouprep::Character<P>,
    n: u64,
) -> Result<SmoothRep<P>> {
    let mut t = crate::grouprep::char_rep(chi);
    for i in 1..=n {
        let psi = chi.times_alpha(-(i as i64));
        let e = ext1(pg, &crate::grouprep::char_rep(&psi), &t)?;
        if e.dim != 1 {
            return Err(Error::Obstruction(format!(
                "Ext¹ has dimension {} at tower step {i}",
                e.dim
            )));
        }
        t = e.classes[0].clone();
    }
    Ok(t)
}

/// One step of a free resolution over F[P]: a boundary matrix with
/// group-algebra entries, stored sparsely per column.
#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub rank: usize,
    /// boundary[j] = the j-th column: entries ((component, element index), coeff)
    pub boundary: Vec<Vec<((usize, usize), i64)>>,
}

/// F ← F[P] ← F[P]^{r₁} ← F[P]^{r₂}, minimal in the sense that all boundary
/// entries lie in the augmentation ideal. The second boundary is a
/// fundamental-cycle basis of the cycle space of the right-multiplication
/// Cayley graph; for the elementary-abelian U2-level group it is further
/// reduced to a minimal generating set.
pub struct MinimalResolution<const P: u64> {
    pub kind: PKind,
    pub r1: usize,
    pub steps: Vec<ResolutionStep>,
}

pub fn minimal_resolution<const P: u64>(pg: &PGroup<P>) -> MinimalResolution<P> {
    let n = pg.order();
    let r = pg.rank();
    // step 1: columns (i, g) ↦ g·g_i − g; encode as r columns of FP-entries
    // conceptually; we store it as the rank and defer to the graph below.
    let step1 = ResolutionStep {
        rank: r,
        boundary: (0..r)
            .map(|i| {
                // the column e_i ↦ (g_i − 1) ∈ FP
                let gi = pg
                    .elems
                    .iter()
                    .position(|e| *e == pg.gens[i])
                    .expect("generator in P");
                let id = pg.identity_index();
                vec![((0, gi), 1), ((0, id), -1)]
            })
            .collect(),
    };
    // spanning tree over RIGHT multiplication for the kernel of d₁
    let root = pg.identity_index();
    let mut parent: Vec<Option<(u32, u8)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut tree_edges = std::collections::BTreeSet::new();
    while let Some(h) = queue.pop_front() {
        for i in 0..r {
            let t = pg.right_mul[i][h] as usize;
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((h as u32, i as u8));
                tree_edges.insert((i, h));
                queue.push_back(t);
            }
        }
    }
    // signed edge path root → v through tree parents
    let path_to = |v: usize| -> Vec<((usize, usize), i64)> {
        let mut out = Vec::new();
        let mut cur = v;
        while let Some((p, i)) = parent[cur] {
            // edge (i, p): p → p·g_i = cur, sign +1 走 root→v direction
            out.push(((i as usize, p as usize), 1));
            cur = p as usize;
        }
        out
    };
    let mut columns = Vec::new();
    for i in 0..r {
        for h in 0..n {
            if tree_edges.contains(&(i, h)) {
                continue;
            }
            // cycle = e − path(h·g_i) + path(h)
            let mut acc: std::collections::BTreeMap<(usize, usize), i64> =
                std::collections::BTreeMap::new();
            *acc.entry((i, h)).or_insert(0) += 1;
            for (e, s) in path_to(pg.right_mul[i][h] as usize) {
                *acc.entry(e).or_insert(0) -= s;
            }
            for (e, s) in path_to(h) {
                *acc.entry(e).or_insert(0) += s;
            }
            let col: Vec<((usize, usize), i64)> = acc
                .into_iter()
                .filter(|&(_, c)| c.rem_euclid(P as i64) != 0)
                .collect();
            columns.push(col);
        }
    }
    let step2 = ResolutionStep {
        rank: columns.len(),
        boundary: columns,
    };
    let mut res = MinimalResolution {
        kind: pg.kind,
        r1: r,
        steps: vec![step1, step2],
    };
    if matches!(pg.kind, PKind::U2Level) {
        reduce_step2_minimal(pg, &mut res);
    }
    res
}

/// For the small elementary-abelian group, reduce the cycle basis to a
/// minimal generating set of ker d₁ by quotienting by m_P·K.
fn reduce_step2_minimal<const P: u64>(pg: &PGroup<P>, res: &mut MinimalResolution<P>) {
    let n = pg.order();
    let r = pg.rank();
    let ambient = r * n;
    let to_vec = |col: &Vec<((usize, usize), i64)>| -> Vec<Fq<P>> {
        let mut v = vec![Fq::<P>::ZERO; ambient];
        for &((i, h), c) in col {
            v[i * n + h] = v[i * n + h] + Fq::from_base(c.rem_euclid(P as i64) as u64);
        }
        v
    };
    let cycles: Vec<Vec<Fq<P>>> = res.steps[1].boundary.iter().map(to_vec).collect();
    // left action of g on FP^r-vectors permutes each component
    let act = |gi: usize, v: &[Fq<P>]| -> Vec<Fq<P>> {
        let mut out = vec![Fq::<P>::ZERO; ambient];
        for i in 0..r {
            for h in 0..n {
                let t = pg.left_mul[gi][h] as usize;
                out[i * n + t] = v[i * n + h];
            }
        }
        out
    };
    // m_P·K = FP-closure of {(g_j − 1)·k}
    let mut mk: Subspace<P> = Subspace::zero(ambient);
    let mut queue = Vec::new();
    for k in &cycles {
        for j in 0..r {
            let shifted = act(j, k);
            let w: Vec<Fq<P>> = shifted
                .iter()
                .zip(k)
                .map(|(&a, &b)| a - b)
                .collect();
            if mk.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    while let Some(v) = queue.pop() {
        for j in 0..r {
            let w = act(j, &v);
            if mk.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    // pick cycles extending m_P·K to all of K
    let mut span = mk.clone();
    let mut minimal = Vec::new();
    for (c, v) in cycles.iter().enumerate() {
        if span.insert(v.clone()) {
            minimal.push(res.steps[1].boundary[c].clone());
        }
    }
    res.steps[1] = ResolutionStep {
        rank: minimal.len(),
        boundary: minimal,
    };
}

/// d₁ ∘ d₂ as group-algebra elements (must vanish).
pub fn boundary_composition_vanishes<const P: u64>(
    pg: &PGroup<P>,
    res: &MinimalResolution<P>,
) -> bool {
    let n = pg.order();
    for col in &res.steps[1].boundary {
        // Σ_{(i,h)} c·(h·g_i − h) must cancel
        let mut acc = vec![0i64; n];
        for &((i, h), c) in col {
            acc[pg.right_mul[i][h] as usize] += c;
            acc[h] -= c;
        }
        if acc.iter().any(|&x| x.rem_euclid(P as i64) != 0) {
            return false;
        }
    }
    true
}

/// Each boundary entry lies in the augmentation ideal (coefficients of each
/// group-algebra entry sum to 0 mod p).
pub fn boundary_entries_in_augmentation_ideal<const P: u64>(
    res: &MinimalResolution<P>,
    r: usize,
) -> bool {
    for step in &res.steps {
        for col in &step.boundary {
            let mut sums = vec![0i64; r.max(1)];
            for &((i, _), c) in col {
                sums[i] += c;
            }
            if sums.iter().any(|&s| s.rem_euclid(P as i64) != 0) {
                return false;
            }
        }
    }
    true
}

/// Independent oracle for the Frattini rank: |P / N| where N is the normal
/// closure of the generator p-th powers and pairwise commutators.
pub fn frattini_rank_oracle<const P: u64>(pg: &PGroup<P>) -> usize {
    let mut gens: Vec<GroupElem<P>> = Vec::new();
    for g in &pg.gens {
        gens.push(g.pow(P));
    }
    for a in &pg.gens {
        for b in &pg.gens {
            gens.push(a.inv().mul(&b.inv()).mul(a).mul(b));
        }
    }
    // normal closure under conjugation by the group generators, then subgroup closure
    let mut set = std::collections::BTreeSet::new();
    set.insert(GroupElem::identity());
    let mut queue: Vec<GroupElem<P>> = gens.clone();
    while let Some(x) = queue.pop() {
        if set.contains(&x) {
            continue;
        }
        // close under multiplication with current subgroup and conjugation
        let mut add = vec![x];
        while let Some(y) = add.pop() {
            if !set.insert(y) {
                continue;
            }
            for g in &pg.gens {
                add.push(g.inv().mul(&y).mul(g));
            }
            let snapshot: Vec<GroupElem<P>> = set.iter().copied().collect();
            for s in snapshot {
                add.push(s.mul(&y));
            }
        }
    }
    let quotient = pg.order() / set.len();
    // rank = log_p of the quotient order
    let mut k = 0;
    let mut m = quotient;
    while m > 1 {
        assert_eq!(m % P as usize, 0);
        m /= P as usize;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{e_minus, e_tower};
    use crate::grouprep::{char_rep, splits, Character};

    type Chr = Character<5>;

    #[test]
    fn pgroup_orders() {
        let p1 = PGroup::<5>::new(PKind::U1Level);
        assert_eq!(p1.order(), 3125);
        assert_eq!(p1.rank(), 2);
        let p2 = PGroup::<5>::new(PKind::U2Level);
        assert_eq!(p2.order(), 125);
        assert_eq!(p2.rank(), 3);
    }

    #[test]
    fn hom_u2_is_three_dimensional() {
        let pg = PGroup::<5>::new(PKind::U2Level);
        let v = PModule::trivial(&pg);
        let space = h1(&pg, &v);
        // Hom(P₂, F) = H¹(P₂, F): dimension 3 over F
        assert_eq!(space.dim_h1_full(), 3);
        assert_eq!(space.b1.dim(), 0);
    }

    #[test]
    fn ext_characters_match_alpha_pattern() {
        let pg = PGroup::<5>::new(PKind::U1Level);
        let chi = Chr::new(3);
        for k in -3i64..=3 {
            let psi = chi.times_alpha(k);
            let e = ext1(&pg, &char_rep(&psi), &char_rep(&chi)).unwrap();
            let expected = if k == 1 || k == -1 { 1 } else { 0 };
            assert_eq!(e.dim, expected, "alpha power {k}");
        }
        // a non-alpha twist
        let psi = Chr::new(chi.a as i64 + 1);
        let e = ext1(&pg, &char_rep(&psi), &char_rep(&chi)).unwrap();
        assert_eq!(e.dim, 0);
    }

    #[test]
    fn realized_extension_is_nonsplit_and_uniserial() {
        let pg = PGroup::<5>::new(PKind::U1Level);
        let chi = Chr::new(2);
        let psi = chi.times_alpha(-1);
        let e = ext1(&pg, &char_rep(&psi), &char_rep(&chi)).unwrap();
        assert_eq!(e.dim, 1);
        let x = &e.classes[0];
        assert_eq!(x.dim, 2);
        // socle = χ only: non-split
        let layers = x.socle_layers();
        assert_eq!(layers.len(), 2);
        assert_eq!(layers[0].chars, vec![chi.a]);
        // matches E⁻(χ)
        assert!(crate::grouprep::find_isomorphism(x, &e_minus(&chi)).is_some());
        // the N-part is a stable subspace; the extension does not split
        let sub = crate::linalg::Subspace::from_vectors(2, vec![vec![Fq::ONE, Fq::ZERO]]);
        assert!(!splits(x, &sub));
    }

    #[test]
    fn ext_with_e_minus_support() {
        let pg = PGroup::<5>::new(PKind::U1Level);
        let chi = Chr::new(4);
        let em = e_minus(&chi);
        for k in -3i64..=3 {
            let psi = chi.times_alpha(k);
            let e = ext1(&pg, &char_rep(&psi), &em).unwrap();
            let expected = if k == 0 || k == 1 || k == -2 { 1 } else { 0 };
            assert_eq!(e.dim, expected, "alpha power {k}");
        }
    }

    #[test]
    fn ext_tower_realizes_next_tower() {
        let pg = PGroup::<5>::new(PKind::U1Level);
        let chi = Chr::new(1);
        let t2 = e_tower(false, &chi, 2).unwrap();
        let psi = chi.times_alpha(-3);
        let e = ext1(&pg, &char_rep(&psi), &t2).unwrap();
        assert_eq!(e.dim, 1);
        let x = &e.classes[0];
        assert!(x.is_uniserial());
        assert!(
            crate::grouprep::find_isomorphism(x, &e_tower(false, &chi, 3).unwrap()).is_some()
        );
    }

    #[test]
    fn resolution_ranks_and_exactness() {
        let pg2 = PGroup::<5>::new(PKind::U2Level);
        let res2 = minimal_resolution(&pg2);
        assert_eq!(res2.r1, 3);
        assert!(boundary_composition_vanishes(&pg2, &res2));
        assert!(boundary_entries_in_augmentation_ideal(&res2, 3));
        // elementary abelian of rank 3: minimal second syzygy has rank 6
        assert_eq!(res2.steps[1].rank, 6);
        assert_eq!(frattini_rank_oracle(&pg2), 3);
    }

    #[test]
    fn resolution_big_group() {
        let pg = PGroup::<5>::new(PKind::U1Level);
        let res = minimal_resolution(&pg);
        assert_eq!(res.r1, 2);
        assert_eq!(frattini_rank_oracle(&pg), 2);
        assert!(boundary_composition_vanishes(&pg, &res));
        assert!(boundary_entries_in_augmentation_ideal(&res, 2));
        // cycle space dimension = r·|P| − |P| + 1
        assert_eq!(res.steps[1].rank, 2 * 3125 - 3125 + 1);
    }
}
