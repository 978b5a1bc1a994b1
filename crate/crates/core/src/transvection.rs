//! Transvections 1 + v⊗φ and their one-parameter groups.
//!
//! A transvection is stored as the pair (v, φ) with φ(v) = 0; the matrix
//! form is 1 + v·φ. The projective pair (⟨v⟩, ⟨φ⟩) determines the
//! transvection group {1 + λ v⊗φ : λ ∈ K}; [`TransvectionGroup`] stores a
//! canonical representative of that pair so equality and deduplication are
//! structural.

use std::collections::BTreeSet;

use crate::error::TvError;
use crate::field::Field;
use crate::linalg::{normalize_leading, Covector, Matrix, Vector};

/// A proper transvection 1 + v⊗φ with v ≠ 0, φ ≠ 0, φ(v) = 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Transvection<F: Field> {
    pub v: Vector<F>,
    pub phi: Covector<F>,
    pub field: F,
}

/// Result of matrix recognition: the identity is the non-proper
/// transvection and is kept distinct from proper ones.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Recognized<F: Field> {
    Identity,
    Proper(Transvection<F>),
    NotTransvection,
}

impl<F: Field> Recognized<F> {
    pub fn proper(self) -> Option<Transvection<F>> {
        match self {
            Recognized::Proper(t) => Some(t),
            _ => None,
        }
    }
}

impl<F: Field> Transvection<F> {
    pub fn new(field: &F, v: Vector<F>, phi: Covector<F>) -> Result<Self, TvError> {
        if v.is_zero(field) {
            return Err(TvError::InvalidPair("v = 0"));
        }
        if phi.is_zero(field) {
            return Err(TvError::InvalidPair("phi = 0"));
        }
        if v.len() != phi.len() {
            return Err(TvError::InvalidPair("dimension mismatch"));
        }
        if !field.is_zero(&phi.apply(field, &v)) {
            return Err(TvError::InvalidPair("phi(v) != 0"));
        }
        Ok(Transvection {
            v,
            phi,
            field: field.clone(),
        })
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    /// The nilpotent part ν = v·φ.
    pub fn nu(&self) -> Matrix<F> {
        Matrix::outer(&self.field, &self.v, &self.phi)
    }

    /// Matrix form 1 + v·φ.
    pub fn matrix(&self) -> Matrix<F> {
        Matrix::identity(&self.field, self.n()).add(&self.nu())
    }

    pub fn inverse(&self) -> Transvection<F> {
        // (1 + ν)^{-1} = 1 - ν
        Transvection {
            v: self.v.scale(&self.field, &self.field.from_i64(-1)),
            phi: self.phi.clone(),
            field: self.field.clone(),
        }
    }

    /// t^λ = 1 + λν; `None` encodes the identity (λ = 0).
    pub fn power(&self, lambda: &F::Elem) -> Option<Transvection<F>> {
        if self.field.is_zero(lambda) {
            return None;
        }
        Some(Transvection {
            v: self.v.scale(&self.field, lambda),
            phi: self.phi.clone(),
            field: self.field.clone(),
        })
    }

    /// g t g^{-1} = 1 + (g·v)⊗(g·φ) where g·φ = φ∘g^{-1}.
    pub fn conjugate_by(&self, g: &Matrix<F>) -> Result<Transvection<F>, TvError> {
        let gv = g.apply(&self.v);
        let gphi = g
            .dual_action(&self.phi)
            .map_err(|_| TvError::Precondition("conjugator is singular".into()))?;
        Transvection::new(&self.field, gv, gphi)
    }

    /// φ_self(v_other): nonzero iff there is an edge other → self.
    pub fn pairing_from(&self, other: &Transvection<F>) -> F::Elem {
        self.phi.apply(&self.field, &other.v)
    }

    /// Transpose: (1 + v⊗φ)ᵀ = 1 + φᵀ⊗vᵀ.
    pub fn transpose(&self) -> Transvection<F> {
        Transvection {
            v: Vector::new(self.phi.coords.clone()),
            phi: Covector::new(self.v.coords.clone()),
            field: self.field.clone(),
        }
    }

    pub fn group(&self) -> TransvectionGroup<F> {
        TransvectionGroup::from_pair(&self.field, &self.v, &self.phi)
            .expect("proper transvection always has a group")
            .0
    }
}

/// Edge test at transvection granularity: edge a → b iff φ_b(v_a) ≠ 0.
pub fn has_edge<F: Field>(a: &Transvection<F>, b: &Transvection<F>) -> bool {
    !a.field.is_zero(&b.pairing_from(a))
}

/// Recognize a matrix as identity, proper transvection, or neither.
///
/// For a proper result the representative is normalized so the first
/// nonzero coordinate of v equals one.
pub fn recognize<F: Field>(m: &Matrix<F>) -> Recognized<F> {
    let f = &m.field;
    let n = m.n;
    if m.is_identity() {
        return Recognized::Identity;
    }
    let nu = m.sub(&Matrix::identity(f, n));
    // ν must be rank one with trace zero: ν = v⊗φ, φ(v) = 0.
    // Find the first nonzero column to extract v.
    let mut v: Option<(usize, Vec<F::Elem>)> = None;
    'cols: for c in 0..n {
        for r in 0..n {
            if !f.is_zero(nu.get(r, c)) {
                let col: Vec<F::Elem> = (0..n).map(|r| nu.get(r, c).clone()).collect();
                v = Some((c, col));
                break 'cols;
            }
        }
    }
    let Some((_, col)) = v else {
        return Recognized::NotTransvection;
    };
    let Some((vnorm, _)) = normalize_leading(f, &col) else {
        return Recognized::NotTransvection;
    };
    // With v normalized, φ is the row of ν at v's leading index.
    let lead = vnorm.iter().position(|c| !f.is_zero(c)).unwrap();
    let phi: Vec<F::Elem> = (0..n).map(|c| nu.get(lead, c).clone()).collect();
    let vv = Vector::new(vnorm);
    let pp = Covector::new(phi);
    if pp.is_zero(f) {
        return Recognized::NotTransvection;
    }
    // Verify ν = v⊗φ exactly and φ(v) = 0.
    if Matrix::outer(f, &vv, &pp) != nu {
        return Recognized::NotTransvection;
    }
    if !f.is_zero(&pp.apply(f, &vv)) {
        return Recognized::NotTransvection;
    }
    Recognized::Proper(Transvection {
        v: vv,
        phi: pp,
        field: f.clone(),
    })
}

/// Which closed-form identity of the basic toolkit to apply.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Lemma21 {
    /// r2 r1 r2^{-1} = 1 + (v1 + φ2(v1)·v2) ⊗ (φ1 − φ1(v2)·φ2)
    ConjA,
    /// [r2, r1] = 1 + φ2(v1)·v2 ⊗ φ1, requires φ1(v2) = 0
    CommB,
    /// r1 r2 = 1 + (v1 + v2) ⊗ φ1, requires φ1 = φ2
    ProdC,
}

/// The closed-form conjugation/commutator/product identities.
pub fn lemma21<F: Field>(
    r1: &Transvection<F>,
    r2: &Transvection<F>,
    which: Lemma21,
) -> Result<Recognized<F>, TvError> {
    let f = &r1.field;
    match which {
        Lemma21::ConjA => {
            let c = r2.phi.apply(f, &r1.v); // φ2(v1)
            let d = r1.phi.apply(f, &r2.v); // φ1(v2)
            let v = r1.v.add(f, &r2.v.scale(f, &c));
            let phi = r1.phi.sub(f, &r2.phi.scale(f, &d));
            Ok(Recognized::Proper(
                Transvection::new(f, v, phi).expect("conjugate of a transvection"),
            ))
        }
        Lemma21::CommB => {
            let d = r1.phi.apply(f, &r2.v);
            if !f.is_zero(&d) {
                return Err(TvError::Precondition("comm_b requires phi1(v2) = 0".into()));
            }
            let c = r2.phi.apply(f, &r1.v);
            if f.is_zero(&c) {
                return Ok(Recognized::Identity);
            }
            let v = r2.v.scale(f, &c);
            Ok(Recognized::Proper(
                Transvection::new(f, v, r1.phi.clone()).expect("commutator transvection"),
            ))
        }
        Lemma21::ProdC => {
            if r1.phi != r2.phi {
                return Err(TvError::Precondition("prod_c requires phi1 = phi2".into()));
            }
            let v = r1.v.add(f, &r2.v);
            if v.is_zero(f) {
                return Ok(Recognized::Identity);
            }
            Ok(Recognized::Proper(
                Transvection::new(f, v, r1.phi.clone()).expect("product transvection"),
            ))
        }
    }
}

/// Canonical representative of the projective pair (⟨v⟩, ⟨φ⟩).
///
/// Both coordinate lists are normalized so their first nonzero entry is
/// one; two groups are equal iff they represent the same pair. The
/// canonical generator of the group is t₀ = 1 + line⊗functional, and the
/// member at parameter λ is 1 + λ·line⊗functional.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TransvectionGroup<F: Field> {
    pub line: Vec<F::Elem>,
    pub functional: Vec<F::Elem>,
}

impl<F: Field> PartialOrd for TransvectionGroup<F> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> Ord for TransvectionGroup<F> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.line
            .cmp(&other.line)
            .then_with(|| self.functional.cmp(&other.functional))
    }
}

impl<F: Field> TransvectionGroup<F> {
    /// Canonicalize (v, φ); the returned scale c satisfies
    /// v⊗φ = c · line⊗functional.
    pub fn from_pair(
        field: &F,
        v: &Vector<F>,
        phi: &Covector<F>,
    ) -> Result<(Self, F::Elem), TvError> {
        let (line, cv) =
            normalize_leading(field, &v.coords).ok_or(TvError::InvalidPair("v = 0"))?;
        let (functional, cp) =
            normalize_leading(field, &phi.coords).ok_or(TvError::InvalidPair("phi = 0"))?;
        let group = TransvectionGroup { line, functional };
        if !field.is_zero(&crate::linalg::dot(field, &group.functional, &group.line)) {
            return Err(TvError::InvalidPair("phi(v) != 0"));
        }
        Ok((group, field.mul(&cv, &cp)))
    }

    pub fn of(t: &Transvection<F>) -> (Self, F::Elem) {
        Self::from_pair(&t.field, &t.v, &t.phi).expect("transvection pair is valid")
    }

    pub fn n(&self) -> usize {
        self.line.len()
    }

    /// Canonical generator t₀ = 1 + line⊗functional.
    pub fn rep(&self, field: &F) -> Transvection<F> {
        Transvection::new(
            field,
            Vector::new(self.line.clone()),
            Covector::new(self.functional.clone()),
        )
        .expect("canonical pair is a valid transvection")
    }

    /// Member t₀^λ; `None` is the identity.
    pub fn member(&self, field: &F, lambda: &F::Elem) -> Option<Transvection<F>> {
        self.rep(field).power(lambda)
    }

    /// ν₀ = line⊗functional as a matrix.
    pub fn nu0(&self, field: &F) -> Matrix<F> {
        Matrix::outer(
            field,
            &Vector::new(self.line.clone()),
            &Covector::new(self.functional.clone()),
        )
    }

    /// Matrix of the member at parameter λ: 1 + λ·ν₀.
    pub fn member_matrix(&self, field: &F, lambda: &F::Elem) -> Matrix<F> {
        Matrix::identity(field, self.n()).add(&self.nu0(field).scale(lambda))
    }

    /// The parameter of `t` within this group, when t's pair matches.
    pub fn parameter_of(&self, _field: &F, t: &Transvection<F>) -> Option<F::Elem> {
        let (g, c) = TransvectionGroup::of(t);
        if g == *self {
            Some(c)
        } else {
            None
        }
    }

    /// Group-level pairing: functional_self(line_other); nonzero iff
    /// there is an edge other → self between any proper members.
    pub fn pairing_from(&self, field: &F, other: &TransvectionGroup<F>) -> F::Elem {
        crate::linalg::dot(field, &self.functional, &other.line)
    }

    /// The transposed group, with the scale c relating parameters:
    /// the member of the transpose at λ equals (member of self at λ·c)ᵀ.
    pub fn transpose(&self, field: &F) -> (TransvectionGroup<F>, F::Elem) {
        let v = Vector::new(self.functional.clone());
        let phi = Covector::new(self.line.clone());
        let (tg, c) = TransvectionGroup::from_pair(field, &v, &phi)
            .expect("transpose of a valid pair is valid");
        // ν₀ᵀ = c·ν₀', so (1 + μ·c·ν₀')ᵀ-relation gives member'(λ) =
        // (member(λ/c))ᵀ... stored as: transpose-member(λ) = (member(λ·inv_c))ᵀ
        let inv_c = field.inv(&c).expect("normalization scale is nonzero");
        (tg, inv_c)
    }
}

/// Deduplicated set of transvection groups spanned by the inputs.
pub fn k_closure<F: Field>(ts: &[Transvection<F>]) -> BTreeSet<TransvectionGroup<F>> {
    ts.iter().map(|t| t.group()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn tv(field: &PrimeField, v: [i64; 3], phi: [i64; 3]) -> Transvection<PrimeField> {
        Transvection::new(
            field,
            Vector::new(v.iter().map(|&x| field.from_i64(x)).collect()),
            Covector::new(phi.iter().map(|&x| field.from_i64(x)).collect()),
        )
        .unwrap()
    }

    #[test]
    fn recognize_identity_and_elementary() {
        let f = f5();
        let id = Matrix::identity(&f, 3);
        assert_eq!(recognize(&id), Recognized::Identity);

        // 1 + 3·E_13
        let mut m = Matrix::identity(&f, 3);
        m.set(0, 2, 3);
        match recognize(&m) {
            Recognized::Proper(t) => {
                assert_eq!(t.v.coords, vec![1, 0, 0]);
                assert_eq!(t.phi.coords, vec![0, 0, 3]);
            }
            other => panic!("expected proper transvection, got {other:?}"),
        }

        // diag(2, 3, 1) is not a transvection.
        let d = Matrix::from_rows(&f, vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(recognize(&d), Recognized::NotTransvection);
    }

    #[test]
    fn recognize_round_trip() {
        let f = f5();
        let t = tv(&f, [1, 2, 0], [0, 0, 3]);
        let m = t.matrix();
        assert!(m.is_identity() == false);
        assert_eq!(m.det(), 1);
        // (M - 1)^2 = 0
        let nu = t.nu();
        assert!(nu.mul(&nu) == Matrix::zero(&f, 3));
        let r = recognize(&m).proper().unwrap();
        assert_eq!(r.matrix(), m);
    }

    #[test]
    fn conjugation_matches_matrix_product() {
        let f = PrimeField::new(3).unwrap();
        // g = 1 + E_21, t = 1 + E_12
        let mut g = Matrix::identity(&f, 3);
        g.set(1, 0, 1);
        let t = Transvection::new(
            &f,
            Vector::basis(&f, 3, 0),
            Covector::basis(&f, 3, 1),
        )
        .unwrap();
        let conj = t.conjugate_by(&g).unwrap();
        let direct = g.mul(&t.matrix()).mul(&g.inverse().unwrap());
        assert_eq!(conj.matrix(), direct);
    }

    #[test]
    fn lemma21_examples() {
        let f = f5();
        // conj_a: r1 = (e1, e2*), r2 = (e2, e3*) → 1 + e1⊗(e2* − e3*)
        let r1 = tv(&f, [1, 0, 0], [0, 1, 0]);
        let r2 = tv(&f, [0, 1, 0], [0, 0, 1]);
        let out = lemma21(&r1, &r2, Lemma21::ConjA).unwrap().proper().unwrap();
        let direct = r2.matrix().mul(&r1.matrix()).mul(&r2.inverse().matrix());
        assert_eq!(out.matrix(), direct);
        assert_eq!(out.v.coords, vec![1, 0, 0]);
        assert_eq!(out.phi.coords, vec![0, 1, 4]);

        // comm_b: r1 = (e2, e3*), r2 = (e1, e2*) → 1 + e1⊗e3*
        let r1 = tv(&f, [0, 1, 0], [0, 0, 1]);
        let r2 = tv(&f, [1, 0, 0], [0, 1, 0]);
        let out = lemma21(&r1, &r2, Lemma21::CommB).unwrap().proper().unwrap();
        let m2 = r2.matrix();
        let m1 = r1.matrix();
        let direct = m2
            .mul(&m1)
            .mul(&m2.inverse().unwrap())
            .mul(&m1.inverse().unwrap());
        assert_eq!(out.matrix(), direct);
        assert_eq!(out.v.coords, vec![1, 0, 0]);
        assert_eq!(out.phi.coords, vec![0, 0, 1]);

        // prod_c: r1 = (e1, e3*), r2 = (e2, e3*) → 1 + (e1+e2)⊗e3*
        let r1 = tv(&f, [1, 0, 0], [0, 0, 1]);
        let r2 = tv(&f, [0, 1, 0], [0, 0, 1]);
        let out = lemma21(&r1, &r2, Lemma21::ProdC).unwrap().proper().unwrap();
        assert_eq!(out.matrix(), r1.matrix().mul(&r2.matrix()));
        assert_eq!(out.v.coords, vec![1, 1, 0]);
    }

    #[test]
    fn power_law() {
        let f = f5();
        let t = tv(&f, [1, 0, 0], [0, 1, 0]);
        assert_eq!(t.power(&1).unwrap(), t);
        assert!(t.power(&0).is_none());
        // t^3 = t·t·t
        let t3 = t.power(&3).unwrap();
        let m = t.matrix();
        assert_eq!(t3.matrix(), m.mul(&m).mul(&m));
    }

    #[test]
    fn group_canonicalization_and_closure() {
        let f = f5();
        let a = tv(&f, [1, 0, 0], [0, 1, 0]); // 1 + E_12
        let b = tv(&f, [1, 0, 0], [0, 2, 0]); // 1 + 2 E_12
        let c = tv(&f, [0, 1, 0], [1, 0, 0]); // 1 + E_21
        let set = k_closure(&[a.clone(), b.clone()]);
        assert_eq!(set.len(), 1);
        let set2 = k_closure(&[a.clone(), c.clone()]);
        assert_eq!(set2.len(), 2);
        assert!(k_closure::<PrimeField>(&[]).is_empty());

        // enumerating members of one group yields p−1 proper elements
        let (g, scale) = TransvectionGroup::of(&b);
        assert_eq!(g.member_matrix(&f, &scale), b.matrix());
        let members: Vec<_> = (1..5).map(|l| g.member(&f, &l).unwrap()).collect();
        assert_eq!(members.len(), 4);
    }

    #[test]
    fn transpose_scale_relation() {
        let f = f5();
        let t = tv(&f, [0, 2, 0], [3, 0, 1]);
        let (g, _) = TransvectionGroup::of(&t);
        let (tg, inv_c) = g.transpose(&f);
        for lam in 1..5u64 {
            let lhs = tg.member_matrix(&f, &lam);
            let rhs = g
                .member_matrix(&f, &f.mul(&lam, &inv_c))
                .transpose();
            assert_eq!(lhs, rhs);
        }
    }
}
