//! Finite-dimensional smooth representations of Γ (and of U_D²H), stored by
//! action matrices on the atom generators. Socle filtrations are computed
//! from the group-algebra operators Y and Z, which generate the maximal
//! ideal of F[[U_D¹/Z_D¹]].

use crate::arith::Fq;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::quat::{factor, factor_u2h, Atom, GroupElem, ATOMS, LEVEL, U2H_ATOMS};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A smooth character ξ^a of O_D^× (trivial on U_D¹ and Z_D¹), optionally
/// extended to D^× by a nonzero value at ϖ_D.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character<const P: u64> {
    /// exponent a of ξ^a, reduced mod q − 1
    pub a: u32,
    pub wd: Option<Fq<P>>,
}

impl<const P: u64> Character<P> {
    pub const QM1: u32 = (P * P - 1) as u32;

    pub fn new(a: i64) -> Self {
        Character {
            a: a.rem_euclid(Self::QM1 as i64) as u32,
            wd: None,
        }
    }

    pub fn with_wd(a: i64, wd: Fq<P>) -> Self {
        Character {
            wd: Some(wd),
            ..Self::new(a)
        }
    }

    pub fn trivial() -> Self {
        Self::new(0)
    }

    /// α = ξ^{p−1}, the fundamental twist; has order p + 1.
    pub fn alpha() -> Self {
        Self::new(P as i64 - 1)
    }

    /// χ·α^k.
    pub fn times_alpha(&self, k: i64) -> Self {
        Character {
            a: Self::new(self.a as i64 + k * (P as i64 - 1)).a,
            wd: self.wd,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Character {
            a: Self::new(self.a as i64 + o.a as i64).a,
            wd: match (self.wd, o.wd) {
                (Some(x), Some(y)) => Some(x * y),
                (x, None) => x,
                (None, y) => y,
            },
        }
    }

    pub fn inverse(&self) -> Self {
        Character {
            a: Self::new(-(self.a as i64)).a,
            wd: self.wd.map(|x| x.inv().expect("wd nonzero")),
        }
    }

    /// χ^σ = χ(ϖ⁻¹·ϖ): exponent multiplied by p.
    pub fn sigma(&self) -> Self {
        Character {
            a: Self::new(self.a as i64 * P as i64).a,
            wd: self.wd,
        }
    }

    /// Value on λ ∈ F_q^×.
    pub fn eval_unit(&self, l: Fq<P>) -> Fq<P> {
        l.pow(self.a as u64)
    }

    /// Value on a group element (depends only on the H-part).
    pub fn eval(&self, g: &GroupElem<P>) -> Fq<P> {
        self.eval_unit(g.teich)
    }

    pub fn all() -> impl Iterator<Item = Self> {
        (0..Self::QM1).map(|a| Self::new(a as i64))
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum GroupKind {
    /// All of Γ = O_D^×/(Z_D¹U_D^{2N}).
    Full,
    /// The subgroup U_D²·H.
    U2H,
}

impl GroupKind {
    pub fn atoms(&self) -> &'static [Atom] {
        match self {
            GroupKind::Full => &ATOMS,
            GroupKind::U2H => &U2H_ATOMS,
        }
    }
}

/// A socle layer: dimension and H-characters (exponents, sorted, with
/// multiplicity).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Layer {
    pub dim: usize,
    pub chars: Vec<u32>,
}

#[derive(Clone)]
pub struct SmoothRep<const P: u64> {
    pub group: GroupKind,
    pub dim: usize,
    pub level: u8,
    /// action matrices indexed by `Atom::index()`
    atoms: Vec<Matrix<P>>,
    /// cached powers: atom_pows[i][e] = atoms[i]^e
    atom_pows: Vec<Vec<Matrix<P>>>,
    pub varpi: Option<Matrix<P>>,
}

impl<const P: u64> SmoothRep<P> {
    /// Build and validate a representation from its atom matrices.
    pub fn new(
        group: GroupKind,
        atoms: Vec<Matrix<P>>,
        varpi: Option<Matrix<P>>,
    ) -> Result<Self> {
        assert_eq!(atoms.len(), ATOMS.len());
        let dim = atoms[0].rows;
        for m in &atoms {
            if m.rows != dim || m.cols != dim {
                return Err(Error::DimError {
                    expected: dim,
                    got: m.rows,
                });
            }
        }
        let mut rep = SmoothRep {
            group,
            dim,
            level: LEVEL,
            atom_pows: Self::power_cache(&atoms, group),
            atoms,
            varpi,
        };
        rep.validate()?;
        Ok(rep)
    }

    /// Build from an arbitrary action function evaluated on atoms.
    pub fn from_action(
        group: GroupKind,
        dim: usize,
        f: impl Fn(&GroupElem<P>) -> Matrix<P>,
    ) -> Result<Self> {
        let mut atoms = Vec::with_capacity(ATOMS.len());
        for atom in ATOMS {
            let use_atom = group.atoms().contains(&atom);
            let m = if use_atom {
                f(&atom.element::<P>())
            } else {
                Matrix::identity(dim)
            };
            atoms.push(m);
        }
        Self::new(group, atoms, None)
    }

    fn power_cache(atoms: &[Matrix<P>], group: GroupKind) -> Vec<Vec<Matrix<P>>> {
        let q1 = (P * P - 1) as usize;
        atoms
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let _ = group;
                let max = if i == 0 { q1 } else { P as usize };
                let mut pows = Vec::with_capacity(max);
                pows.push(Matrix::identity(m.rows));
                for e in 1..max {
                    pows.push(&pows[e - 1] * m);
                }
                pows
            })
            .collect()
    }

    fn validate(&mut self) -> Result<()> {
        let dim = self.dim;
        let id = Matrix::identity(dim);
        let q1 = P * P - 1;
        for &atom in self.group.atoms() {
            let m = &self.atoms[atom.index()];
            if atom.is_unipotent() {
                // unipotent: M^{p²} = 1 and (M − 1)^dim = 0
                if m.pow(P * P) != id {
                    return Err(Error::BadAction(format!("{atom:?} has wrong order")));
                }
                if !(m - &id).pow(dim as u64).is_zero() {
                    return Err(Error::BadAction(format!("{atom:?} not unipotent")));
                }
            } else if m.pow(q1) != id {
                return Err(Error::BadAction("[g0] order does not divide q−1".into()));
            }
        }
        // homomorphism property over atom pairs
        for &x in self.group.atoms() {
            for &y in self.group.atoms() {
                let prod = x.element::<P>().mul(&y.element::<P>());
                let lhs = &self.atoms[x.index()] * &self.atoms[y.index()];
                let rhs = self.act_matrix(&prod)?;
                if lhs != rhs {
                    return Err(Error::BadAction(format!(
                        "atom pair ({x:?}, {y:?}) violates the group law"
                    )));
                }
            }
        }
        if let Some(w) = &self.varpi {
            if w.rows != dim || w.cols != dim {
                return Err(Error::DimError {
                    expected: dim,
                    got: w.rows,
                });
            }
            let w2 = w * w;
            // ϖ² = p is central: must act by a scalar
            let c = w2[(0, 0)];
            if w2 != Matrix::scalar(dim, c) || c.is_zero() {
                return Err(Error::BadAction("varpi² is not a nonzero scalar".into()));
            }
            let winv = w.inverse().ok_or_else(|| {
                Error::BadAction("varpi matrix not invertible".into())
            })?;
            for &atom in self.group.atoms() {
                let g = atom.element::<P>();
                let lhs = &(w * &self.act_matrix(&g)?) * &winv;
                let rhs = self.act_matrix(&g.conj_by_varpi())?;
                if lhs != rhs {
                    return Err(Error::BadAction(format!(
                        "varpi does not intertwine conj_by_varpi at {atom:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn atom_matrix(&self, atom: Atom) -> &Matrix<P> {
        &self.atoms[atom.index()]
    }

    /// The matrix of g, via the canonical atom factorization.
    pub fn act_matrix(&self, g: &GroupElem<P>) -> Result<Matrix<P>> {
        let word = match self.group {
            GroupKind::Full => factor(g),
            GroupKind::U2H => factor_u2h(g)?,
        };
        let mut acc = Matrix::identity(self.dim);
        for (atom, e) in word {
            if e == 0 {
                continue;
            }
            acc = &acc * &self.atom_pows[atom.index()][e as usize];
        }
        Ok(acc)
    }

    pub fn act(&self, g: &GroupElem<P>, v: &[Fq<P>]) -> Result<Vec<Fq<P>>> {
        if v.len() != self.dim {
            return Err(Error::DimError {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(self.act_matrix(g)?.apply(v))
    }

    /// Y = Σ_{λ∈F_q^×} λ⁻¹ (1 + ϖ[λ]).
    pub fn operator_y(&self) -> Matrix<P> {
        self.sum_over_u1(|l| l.inv().unwrap())
    }

    /// Z = Σ_{λ∈F_q^×} λ^{−p} (1 + ϖ[λ]).
    pub fn operator_z(&self) -> Matrix<P> {
        self.sum_over_u1(|l| l.inv().unwrap().frobenius())
    }

    fn sum_over_u1(&self, coeff: impl Fn(Fq<P>) -> Fq<P>) -> Matrix<P> {
        assert!(
            matches!(self.group, GroupKind::Full),
            "Y and Z live in F[U_D^1]"
        );
        let mut acc = Matrix::zero(self.dim, self.dim);
        for l in Fq::<P>::units() {
            let m = self
                .act_matrix(&GroupElem::u1_elem(l))
                .expect("full group");
            acc = &acc + &m.scale(coeff(l));
        }
        acc
    }

    /// π[m_D] = ker Y ∩ ker Z.
    pub fn m_socle(&self) -> Subspace<P> {
        let y = self.operator_y();
        let z = self.operator_z();
        Subspace::kernel_of(&y.vstack(&z))
    }

    /// Ascending chain π[m_D] ⊂ π[m_D²] ⊂ … ⊂ π (each Γ-stable).
    pub fn socle_filtration(&self) -> Vec<Subspace<P>> {
        let y = self.operator_y();
        let z = self.operator_z();
        let mut chain: Vec<Subspace<P>> = Vec::new();
        let mut current = Subspace::zero(self.dim);
        while current.dim() < self.dim {
            // {v : Yv ∈ current and Zv ∈ current}
            let py = Subspace::preimage(&y, &current);
            let pz = Subspace::preimage(&z, &current);
            let next = py.intersect(&pz);
            assert!(next.dim() > current.dim(), "socle filtration stalled");
            chain.push(next.clone());
            current = next;
        }
        chain
    }

    /// Socle layers with their H-characters.
    pub fn socle_layers(&self) -> Vec<Layer> {
        let chain = self.socle_filtration();
        let mut layers = Vec::new();
        let mut prev = Subspace::zero(self.dim);
        let s = self.atom_matrix(Atom::Semisimple).clone();
        for step in chain {
            let ldim = step.dim() - prev.dim();
            // induced semisimple action on step/prev
            let chars = layer_characters::<P>(&s, &step, &prev);
            assert_eq!(chars.len(), ldim);
            layers.push(Layer {
                dim: ldim,
                chars,
            });
            prev = step;
        }
        layers
    }

    pub fn is_uniserial(&self) -> bool {
        self.socle_layers().iter().all(|l| l.dim == 1)
    }

    /// Closure of the given vectors under the group action.
    pub fn submodule_generated(&self, vectors: &[Vec<Fq<P>>]) -> Subspace<P> {
        // closure under the atom actions; the group is finite, so forward
        // closure under generators is closure under the group
        let mut space = Subspace::zero(self.dim);
        let mut queue: Vec<Vec<Fq<P>>> = Vec::new();
        for v in vectors {
            if space.insert(v.clone()) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for &atom in self.group.atoms() {
                let w = self.atoms[atom.index()].apply(&v);
                if space.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        space
    }

    /// The subrepresentation on a stable subspace.
    pub fn sub_rep(&self, space: &Subspace<P>) -> Result<SmoothRep<P>> {
        let mut atoms = Vec::with_capacity(ATOMS.len());
        for atom in ATOMS {
            if self.group.atoms().contains(&atom) {
                let m = space
                    .restrict(&self.atoms[atom.index()])
                    .ok_or(Error::NotSubmodule)?;
                atoms.push(m);
            } else {
                atoms.push(Matrix::identity(space.dim()));
            }
        }
        let varpi = match &self.varpi {
            Some(w) => Some(space.restrict(w).ok_or(Error::NotSubmodule)?),
            None => None,
        };
        SmoothRep::new(self.group, atoms, varpi)
    }

    /// The quotient representation on ambient/space.
    pub fn quotient_rep(&self, space: &Subspace<P>) -> Result<SmoothRep<P>> {
        // stability check
        for &atom in self.group.atoms() {
            let img = space.image(&self.atoms[atom.index()]);
            if !space.contains_space(&img) {
                return Err(Error::NotSubmodule);
            }
        }
        let mut atoms = Vec::with_capacity(ATOMS.len());
        for atom in ATOMS {
            if self.group.atoms().contains(&atom) {
                atoms.push(space.quotient_action(&self.atoms[atom.index()]));
            } else {
                atoms.push(Matrix::identity(self.dim - space.dim()));
            }
        }
        let varpi = self.varpi.as_ref().map(|w| space.quotient_action(w));
        SmoothRep::new(self.group, atoms, varpi)
    }

    /// Contragredient: g acts by the inverse-transpose.
    pub fn dual(&self) -> SmoothRep<P> {
        let atoms = self
            .atoms
            .iter()
            .map(|m| m.inverse().expect("atom invertible").transpose())
            .collect();
        let varpi = self
            .varpi
            .as_ref()
            .map(|w| w.inverse().expect("varpi invertible").transpose());
        SmoothRep::new(self.group, atoms, varpi).expect("dual of a valid rep")
    }

    /// π ⊗ χ.
    pub fn twist(&self, chi: &Character<P>) -> SmoothRep<P> {
        let mut atoms = self.atoms.clone();
        let c = chi.eval_unit(Fq::gen0());
        atoms[Atom::Semisimple.index()] = atoms[Atom::Semisimple.index()].scale(c);
        let varpi = self.varpi.as_ref().map(|w| match chi.wd {
            Some(x) => w.scale(x),
            None => w.clone(),
        });
        SmoothRep::new(self.group, atoms, varpi).expect("twist of a valid rep")
    }

    /// The conjugate representation g ↦ π(ϖ⁻¹gϖ).
    pub fn conj_rep(&self) -> SmoothRep<P> {
        let atoms = ATOMS
            .iter()
            .map(|atom| {
                if self.group.atoms().contains(atom) {
                    self.act_matrix(&atom.element::<P>().conj_by_varpi())
                        .expect("conjugate stays in subgroup")
                } else {
                    Matrix::identity(self.dim)
                }
            })
            .collect();
        SmoothRep::new(self.group, atoms, self.varpi.clone()).expect("conjugate rep")
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &SmoothRep<P>) -> SmoothRep<P> {
        assert_eq!(self.group, other.group);
        let atoms = self
            .atoms
            .iter()
            .zip(&other.atoms)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        let varpi = match (&self.varpi, &other.varpi) {
            (Some(a), Some(b)) => Some(a.block_diag(b)),
            _ => None,
        };
        SmoothRep::new(self.group, atoms, varpi).expect("sum of valid reps")
    }

    /// H-eigenspace decomposition, keyed by character exponent.
    pub fn h_eigenspaces(&self) -> BTreeMap<u32, Subspace<P>> {
        let s = self.atom_matrix(Atom::Semisimple);
        let g0 = Fq::<P>::gen0();
        let mut out = BTreeMap::new();
        for a in 0..Character::<P>::QM1 {
            let shift = s - &Matrix::scalar(self.dim, g0.pow(a as u64));
            let ker = Subspace::kernel_of(&shift);
            if ker.dim() > 0 {
                out.insert(a, ker);
            }
        }
        out
    }

    /// The restriction to U_D²H (forgets the U_D¹ atoms).
    pub fn restrict_to_u2h(&self) -> SmoothRep<P> {
        assert!(matches!(self.group, GroupKind::Full));
        let mut atoms = self.atoms.clone();
        atoms[Atom::U1(0).index()] = Matrix::identity(self.dim);
        atoms[Atom::U1(1).index()] = Matrix::identity(self.dim);
        SmoothRep::new(GroupKind::U2H, atoms, None).expect("restriction")
    }
}

fn layer_characters<const P: u64>(
    s: &Matrix<P>,
    step: &Subspace<P>,
    prev: &Subspace<P>,
) -> Vec<u32> {
    // induced action of the semisimple generator on step/prev
    let restricted = step.restrict(s).expect("socle step is H-stable");
    let prev_in_step = Subspace::from_vectors(
        step.dim(),
        prev.basis()
            .iter()
            .map(|v| step.coordinates(v).expect("prev ⊆ step")),
    );
    let m = prev_in_step.quotient_action(&restricted);
    let g0 = Fq::<P>::gen0();
    let mut chars = Vec::new();
    for a in 0..Character::<P>::QM1 {
        let shift = &m - &Matrix::scalar(m.rows, g0.pow(a as u64));
        for _ in 0..Subspace::kernel_of(&shift).dim() {
            chars.push(a);
        }
    }
    chars.sort_unstable();
    chars
}

/// A character as a 1-dimensional representation.
pub fn char_rep<const P: u64>(chi: &Character<P>) -> SmoothRep<P> {
    let one = Matrix::identity(1);
    let mut atoms = vec![one; ATOMS.len()];
    atoms[Atom::Semisimple.index()] = Matrix::scalar(1, chi.eval_unit(Fq::gen0()));
    let varpi = chi.wd.map(|x| Matrix::scalar(1, x));
    SmoothRep::new(GroupKind::Full, atoms, varpi).expect("character rep")
}

/// Basis of the intertwiner space Hom_Γ(A, B).
pub fn intertwiners<const P: u64>(a: &SmoothRep<P>, b: &SmoothRep<P>) -> Vec<Matrix<P>> {
    assert_eq!(a.group, b.group);
    // T·M_A(x) = M_B(x)·T for every atom x: a linear system in the entries
    // of T (dim_B × dim_A), T[(i,j)] at index i*dim_A + j.
    let (da, db) = (a.dim, b.dim);
    let mut rows = Vec::new();
    for &atom in a.group.atoms() {
        let ma = a.atom_matrix(atom);
        let mb = b.atom_matrix(atom);
        for i in 0..db {
            for j in 0..da {
                let mut row = vec![Fq::ZERO; da * db];
                // (T·MA)[(i,j)] = Σ_k T[(i,k)] MA[(k,j)]
                for k in 0..da {
                    row[i * da + k] = row[i * da + k] + ma[(k, j)];
                }
                // −(MB·T)[(i,j)] = −Σ_k MB[(i,k)] T[(k,j)]
                for k in 0..db {
                    row[k * da + j] = row[k * da + j] - mb[(i, k)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        // every matrix intertwines (only for zero atom sets, practically unreachable)
        return (0..da * db)
            .map(|t| Matrix::from_fn(db, da, |i, j| if i * da + j == t { Fq::ONE } else { Fq::ZERO }))
            .collect();
    }
    let sys = Matrix::from_rows(rows);
    sys.kernel()
        .into_iter()
        .map(|v| Matrix::from_fn(db, da, |i, j| v[i * da + j]))
        .collect()
}

/// An explicit isomorphism A ≅ B, if one exists.
pub fn find_isomorphism<const P: u64>(a: &SmoothRep<P>, b: &SmoothRep<P>) -> Option<Matrix<P>> {
    if a.dim != b.dim {
        return None;
    }
    let basis = intertwiners(a, b);
    if basis.is_empty() {
        return None;
    }
    // Scan lines in the Hom-space for small dimensions; the invertible locus
    // is Zariski-open, so for dim ≤ 2 this is exhaustive over projective
    // lines and otherwise a deterministic sample suffices for our uses.
    if basis.len() == 1 {
        return basis[0].inverse().is_some().then(|| basis[0].clone());
    }
    if basis.len() == 2 {
        for c in Fq::<P>::all() {
            let t = &basis[0] + &basis[1].scale(c);
            if t.inverse().is_some() {
                return Some(t);
            }
        }
        if basis[1].inverse().is_some() {
            return Some(basis[1].clone());
        }
        return None;
    }
    let mut rng = crate::rng::SplitMix64::new(0xA11CE);
    for _ in 0..200 {
        let mut t = Matrix::zero(b.dim, a.dim);
        for m in &basis {
            t = &t + &m.scale(Fq::random(&mut rng));
        }
        if t.inverse().is_some() {
            return Some(t);
        }
    }
    None
}

/// Whether a subrepresentation N ⊆ X (given by a stable subspace) splits off:
/// is there a Γ-equivariant section of X ↠ X/N whose image complements N?
pub fn splits<const P: u64>(x: &SmoothRep<P>, sub: &Subspace<P>) -> bool {
    let q = x.quotient_rep(sub).expect("stable subspace");
    // sections: T: quotient → X with proj∘T = id and T equivariant
    let comp = sub.complement_positions();
    let dq = q.dim;
    // unknowns: T (x.dim × dq); equivariance rows as in intertwiners, plus
    // projection condition proj(T e_j) = e_j.
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &atom in x.group.atoms() {
        let mx = x.atom_matrix(atom);
        let mq = q.atom_matrix(atom);
        for i in 0..x.dim {
            for j in 0..dq {
                let mut row = vec![Fq::ZERO; x.dim * dq];
                for k in 0..dq {
                    row[i * dq + k] = row[i * dq + k] + mq[(k, j)];
                }
                for k in 0..x.dim {
                    row[k * dq + j] = row[k * dq + j] - mx[(i, k)];
                }
                rows.push(row);
                rhs.push(Fq::ZERO);
            }
        }
    }
    // projection: quotient_coords(T e_j) = e_j
    for j in 0..dq {
        for (qi, &_ci) in comp.iter().enumerate() {
            // row computing coordinate qi of proj(T e_j)
            let mut row = vec![Fq::ZERO; x.dim * dq];
            // proj is linear: proj(v)[qi] = Σ_k Pmat[qi][k] v[k]
            for k in 0..x.dim {
                let mut e = vec![Fq::ZERO; x.dim];
                e[k] = Fq::ONE;
                let pc = sub.quotient_coords(&e);
                row[k * dq + j] = pc[qi];
            }
            rows.push(row);
            rhs.push(if qi == j { Fq::ONE } else { Fq::ZERO });
        }
    }
    let sys = Matrix::from_rows(rows);
    sys.solve(&rhs).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    type Chr = Character<5>;
    type G = GroupElem<5>;

    #[test]
    fn alpha_has_order_p_plus_one() {
        let alpha = Chr::alpha();
        let mut acc = Chr::trivial();
        for k in 1..=6 {
            acc = acc.mul(&alpha);
            if k < 6 {
                assert_ne!(acc, Chr::trivial());
            }
        }
        assert_eq!(acc, Chr::trivial());
    }

    #[test]
    fn sigma_involution() {
        for chi in Chr::all() {
            assert_eq!(chi.sigma().sigma(), chi);
        }
        // α^σ = α^{-1} = α^p
        assert_eq!(Chr::alpha().sigma(), Chr::alpha().inverse());
    }

    #[test]
    fn char_rep_valid_and_acts() {
        let chi = Chr::new(7);
        let rep = char_rep(&chi);
        let mut rng = SplitMix64::new(4);
        for _ in 0..100 {
            let g = G::random(&mut rng);
            let m = rep.act_matrix(&g).unwrap();
            assert_eq!(m[(0, 0)], chi.eval(&g));
        }
    }

    #[test]
    fn y_kills_one_dimensional() {
        // Σ_{λ∈F_q^×} λ^{-1} = 0 in F_q
        let rep = char_rep(&Chr::new(3));
        assert!(rep.operator_y().is_zero());
        assert!(rep.operator_z().is_zero());
    }

    #[test]
    fn act_is_homomorphism_seeded() {
        let chi = Chr::new(5);
        let rep = char_rep(&chi);
        let mut rng = SplitMix64::new(21);
        for _ in 0..200 {
            let g = G::random(&mut rng);
            let h = G::random(&mut rng);
            let lhs = rep.act_matrix(&g.mul(&h)).unwrap();
            let rhs = &rep.act_matrix(&g).unwrap() * &rep.act_matrix(&h).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn socle_of_char_sum() {
        let a = char_rep(&Chr::new(1));
        let b = char_rep(&Chr::new(2));
        let sum = a.direct_sum(&b);
        let chain = sum.socle_filtration();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain[0].dim(), 2);
        let layers = sum.socle_layers();
        assert_eq!(layers[0].chars, vec![1, 2]);
    }

    #[test]
    fn dual_and_twist_of_characters() {
        let chi = Chr::new(9);
        let rep = char_rep(&chi);
        let dual = rep.dual();
        let expect = char_rep(&chi.inverse());
        assert!(find_isomorphism(&dual, &expect).is_some());
        let tw = rep.twist(&Chr::new(4));
        assert!(find_isomorphism(&tw, &char_rep(&Chr::new(13))).is_some());
    }

    #[test]
    fn h_eigenspaces_of_sum() {
        let rep = char_rep(&Chr::new(1)).direct_sum(&char_rep(&Chr::new(1)));
        let eig = rep.h_eigenspaces();
        assert_eq!(eig.len(), 1);
        assert_eq!(eig[&1].dim(), 2);
    }
}
