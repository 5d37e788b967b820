//! Dickson invariants of an elementary abelian group V of rank m.
//!
//! k[V*] is the polynomial algebra on x1..xm, all of degree 2 for every p.
//! The Dickson invariants are read off the coefficients of
//! `f_V(X) = prod_{v in V} (X - v) = sum_s (-1)^s D_s X^{p^(m-s)}`,
//! which is expanded literally.

mod packed;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::fplinalg::{Fp, FpMatrix};
use crate::graded::{AlgebraMap, Element, FreeAlgebra, PresentedAlgebra};

pub(crate) use packed::{lucas_support, PackedPoly};

/// Default bound on |V| = p^m for literal expansions.
pub const DEFAULT_CAP: u64 = 81;

fn check_cap(p: u32, m: usize, cap: u64) -> Result<u64> {
    let size = (p as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
    if size > cap {
        return Err(Error::CapExceeded {
            what: format!("|V| = {p}^{m}"),
            value: size,
            cap,
        });
    }
    Ok(size)
}

/// k[V*] with generators x1..xm of degree 2.
#[derive(Clone, Debug, PartialEq)]
pub struct DualSpaceAlgebra {
    p: u32,
    rank: usize,
    ring: Arc<FreeAlgebra>,
}

impl DualSpaceAlgebra {
    pub fn new(p: u32, rank: usize) -> Result<Self> {
        let names: Vec<String> = (1..=rank).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        Ok(DualSpaceAlgebra {
            p,
            rank,
            ring: FreeAlgebra::polynomial(p, &refs, 2)?,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ring(&self) -> &Arc<FreeAlgebra> {
        &self.ring
    }

    /// The linear form `sum_i v_i x_i`.
    pub fn linear_form(&self, v: &[u32]) -> Element {
        let mut out = self.ring.zero();
        for (i, &c) in v.iter().enumerate() {
            out = &out + &self.ring.generator(i).scale(c);
        }
        out
    }

    /// Every vector of F_p^m, in lexicographic order of coordinates.
    pub fn all_vectors(&self) -> Vec<Vec<u32>> {
        all_vectors(self.p, self.rank)
    }

    /// For p = 2: F_2[t1..tm] with degree-1 generators, the classical grading.
    pub fn classical_ring(&self) -> Result<Arc<FreeAlgebra>> {
        if self.p != 2 {
            return Err(Error::Invalid("the degree-1 view exists only for p = 2".into()));
        }
        let names: Vec<String> = (1..=self.rank).map(|i| format!("t{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        FreeAlgebra::polynomial(2, &refs, 1)
    }

    /// Relabels x_i as t_i, halving all degrees.
    pub fn to_classical(&self, e: &Element) -> Result<Element> {
        let target = self.classical_ring()?;
        let positions: Vec<usize> = (0..self.rank).collect();
        Ok(e.embed(&target, &positions))
    }
}

pub(crate) fn all_vectors(p: u32, m: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(m)];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// The expanded polynomial f_V, grouped by powers of X.
#[derive(Clone, Debug)]
pub struct FvExpansion {
    space: DualSpaceAlgebra,
    /// `(exponent of X, coefficient in k[V*])`, ascending exponent.
    terms: Vec<(u64, Element)>,
}

impl FvExpansion {
    pub fn space(&self) -> &DualSpaceAlgebra {
        &self.space
    }

    pub fn terms(&self) -> &[(u64, Element)] {
        &self.terms
    }

    pub fn x_exponents(&self) -> Vec<u64> {
        self.terms.iter().map(|(e, _)| *e).collect()
    }

    pub fn coefficient(&self, exponent: u64) -> Element {
        self.terms
            .iter()
            .find(|(e, _)| *e == exponent)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.space.ring.zero())
    }

    pub fn exponents_are_p_powers(&self) -> bool {
        let p = self.space.p as u64;
        self.terms.iter().all(|&(mut e, _)| {
            if e == 0 {
                return false;
            }
            while e % p == 0 {
                e /= p;
            }
            e == 1
        })
    }

    /// The coefficient of the top power X^{p^m} is 1.
    pub fn is_monic(&self) -> bool {
        let top = (self.space.p as u64).pow(self.space.rank as u32);
        self.coefficient(top) == self.space.ring.one()
    }

    /// `D_s = (-1)^s * coefficient of X^{p^(m-s)}`, for s = 0..=m.
    pub fn dickson(&self) -> Vec<Element> {
        let (p, m) = (self.space.p as u64, self.space.rank);
        (0..=m)
            .map(|s| {
                let c = self.coefficient(p.pow((m - s) as u32));
                if s % 2 == 1 {
                    -&c
                } else {
                    c
                }
            })
            .collect()
    }

    /// Sum of all coefficients, i.e. f_V evaluated at X = 1.
    pub fn at_one(&self) -> Element {
        let mut out = self.space.ring.zero();
        for (_, c) in &self.terms {
            out = &out + c;
        }
        out
    }
}

/// Expands `prod_{v in V} (X - v)`.
///
/// The product is taken over V in the order of a flag V_0 < V_1 < ... < V_m:
/// the factors for V_k are those for V_{k-1} shifted by each multiple of x_k,
/// so f_{V_k}(X) is the product over c in F_p of f_{V_{k-1}}(X - c*x_k), each
/// substitution being expanded binomially.
pub fn expand_fv(p: u32, m: usize, cap: u64) -> Result<FvExpansion> {
    check_cap(p, m, cap)?;
    let space = DualSpaceAlgebra::new(p, m)?;
    let field = Fp::new(p)?;
    let xvar = m;
    let mut f = PackedPoly::zero(field, m + 1)?;
    f = f.add(&PackedPoly::linear(field, &unit(m + 1, xvar))?);
    for k in 0..m {
        let mut prod = PackedPoly::one(field, m + 1)?;
        for c in 0..p {
            let shifted = f.transvect(xvar, k, field.neg(c));
            prod = prod.mul(&shifted)?;
        }
        f = prod;
    }
    let terms = f
        .collect_by(xvar)
        .into_iter()
        .map(|(e, coef)| (e as u64, coef.with_nvars(m).to_element(&space.ring)))
        .collect();
    Ok(FvExpansion { space, terms })
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// D_1..D_m for one (p, m), with D_0 = 1 kept at index 0.
#[derive(Clone, Debug)]
pub struct DicksonSet {
    space: DualSpaceAlgebra,
    invariants: Vec<Element>,
}

impl DicksonSet {
    pub fn from_expansion(fv: &FvExpansion) -> Result<Self> {
        if !fv.exponents_are_p_powers() || !fv.is_monic() {
            return Err(Error::Invalid(format!(
                "f_V for p = {}, m = {} does not have the p-polynomial shape",
                fv.space.p, fv.space.rank
            )));
        }
        Ok(DicksonSet {
            space: fv.space.clone(),
            invariants: fv.dickson(),
        })
    }

    pub fn space(&self) -> &DualSpaceAlgebra {
        &self.space
    }

    pub fn p(&self) -> u32 {
        self.space.p
    }

    pub fn rank(&self) -> usize {
        self.space.rank
    }

    /// D_s; s = 0 gives 1.
    pub fn get(&self, s: usize) -> &Element {
        &self.invariants[s]
    }

    /// D_1..D_m.
    pub fn invariants(&self) -> &[Element] {
        &self.invariants[1..]
    }

    /// 2(p^m - p^(m-s)).
    pub fn degree(&self, s: usize) -> u64 {
        let p = self.space.p as u64;
        2 * (p.pow(self.rank() as u32) - p.pow((self.rank() - s) as u32))
    }

    /// D_s copied into `ring`, whose generators at `positions` play x1..xm.
    pub fn embed(&self, s: usize, ring: &Arc<FreeAlgebra>, positions: &[usize]) -> Element {
        self.invariants[s].embed(ring, positions)
    }
}

/// Cached Dickson invariants under the default cap.
pub fn dickson_set(p: u32, m: usize) -> Result<Arc<DicksonSet>> {
    dickson_set_with_cap(p, m, DEFAULT_CAP)
}

pub fn dickson_set_with_cap(p: u32, m: usize, cap: u64) -> Result<Arc<DicksonSet>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Arc<DicksonSet>>>> = OnceLock::new();
    check_cap(p, m, cap)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().expect("dickson cache poisoned").get(&(p, m)) {
        return Ok(Arc::clone(d));
    }
    let set = Arc::new(DicksonSet::from_expansion(&expand_fv(p, m, cap)?)?);
    cache
        .lock()
        .expect("dickson cache poisoned")
        .insert((p, m), Arc::clone(&set));
    Ok(set)
}

/// An elementary matrix, acting on k[V*] by the substitution it induces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// Exchange x_i and x_j.
    Swap(usize, usize),
    /// x_i -> a * x_i.
    Scale(usize, u32),
    /// x_row -> x_row + c * x_from; the matrix I + c e_{row,from}.
    AddMultiple { row: usize, from: usize, c: u32 },
}

impl Elementary {
    pub fn matrix(&self, p: u32, m: usize) -> Result<FpMatrix> {
        let mut g = FpMatrix::identity(p, m)?;
        match *self {
            Elementary::Swap(i, j) => {
                g.set(i, i, 0);
                g.set(j, j, 0);
                g.set(i, j, 1);
                g.set(j, i, 1);
            }
            Elementary::Scale(i, a) => g.set(i, i, a),
            Elementary::AddMultiple { row, from, c } => g.set(row, from, c),
        }
        Ok(g)
    }

    fn act(&self, f: &PackedPoly) -> PackedPoly {
        match *self {
            Elementary::Swap(i, j) => f.swap_vars(i, j),
            Elementary::Scale(i, a) => f.scale_var(i, a),
            Elementary::AddMultiple { row, from, c } => f.transvect(row, from, c),
        }
    }
}

/// Writes an invertible g as a product E_1 E_2 ... E_k of elementary matrices.
pub fn elementary_decomposition(g: &FpMatrix) -> Result<Vec<Elementary>> {
    let n = g.rows();
    if g.cols() != n {
        return Err(Error::Dimension(format!("{}x{} matrix is not square", n, g.cols())));
    }
    let f = g.field();
    let mut a = g.clone();
    let mut out = Vec::new();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a.get(r, col) != 0)
            .ok_or_else(|| Error::Invalid("matrix is singular".into()))?;
        if pivot != col {
            for c in 0..n {
                let (x, y) = (a.get(pivot, c), a.get(col, c));
                a.set(pivot, c, y);
                a.set(col, c, x);
            }
            out.push(Elementary::Swap(pivot, col));
        }
        let lead = a.get(col, col);
        if lead != 1 {
            let inv = f.inv(lead);
            for c in 0..n {
                a.set(col, c, f.mul(a.get(col, c), inv));
            }
            out.push(Elementary::Scale(col, lead));
        }
        for r in 0..n {
            let b = a.get(r, col);
            if r == col || b == 0 {
                continue;
            }
            for c in 0..n {
                let v = f.sub(a.get(r, c), f.mul(b, a.get(col, c)));
                a.set(r, c, v);
            }
            out.push(Elementary::AddMultiple { row: r, from: col, c: b });
        }
    }
    Ok(out)
}

/// The substitution x_i -> sum_j g[i][j] x_j applied to `e`.
///
/// Since substituting by g and then by h is substituting by hg, the factors of
/// g = E_1 ... E_k are applied starting from E_1.
pub fn substitute_linear(e: &Element, g: &FpMatrix) -> Result<Element> {
    if g.rows() != e.ring().ngens() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix acting on {} generators",
            g.rows(),
            g.cols(),
            e.ring().ngens()
        )));
    }
    let ops = elementary_decomposition(g)?;
    let mut f = PackedPoly::from_element(e)?;
    for op in &ops {
        f = op.act(&f);
    }
    Ok(f.to_element(e.ring()))
}

pub fn random_invertible<R: Rng + ?Sized>(p: u32, m: usize, rng: &mut R) -> Result<FpMatrix> {
    loop {
        let rows: Vec<Vec<i64>> = (0..m)
            .map(|_| (0..m).map(|_| rng.gen_range(0..p) as i64).collect())
            .collect();
        let g = if m == 0 {
            FpMatrix::zeros(p, 0, 0)?
        } else {
            FpMatrix::from_rows(p, &rows)?
        };
        if g.rank() == m {
            return Ok(g);
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GlVerdict {
    Invariant { trials: usize },
    Counterexample { matrix: Vec<Vec<u32>>, s: usize },
}

impl GlVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, GlVerdict::Invariant { .. })
    }
}

/// The first s with g.D_s != D_s, if any.
pub fn first_non_invariant(set: &DicksonSet, g: &FpMatrix) -> Result<Option<usize>> {
    for s in 1..=set.rank() {
        if substitute_linear(set.get(s), g)? != *set.get(s) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

pub fn check_gl_invariance<R: Rng + ?Sized>(
    set: &DicksonSet,
    trials: usize,
    rng: &mut R,
) -> Result<GlVerdict> {
    for _ in 0..trials {
        let g = random_invertible(set.p(), set.rank(), rng)?;
        if let Some(s) = first_non_invariant(set, &g)? {
            return Ok(GlVerdict::Counterexample {
                matrix: g.row_vectors(),
                s,
            });
        }
    }
    Ok(GlVerdict::Invariant { trials })
}

#[derive(Clone, Debug)]
pub struct RestrictionRow {
    pub s: usize,
    pub image: Element,
    pub expected: Element,
}

impl RestrictionRow {
    pub fn matches(&self) -> bool {
        self.image == self.expected
    }
}

/// Images of D_s(V) under k[V*] -> k[U*], U* spanned by the first m - l duals.
#[derive(Clone, Debug)]
pub struct RestrictionTable {
    pub p: u32,
    pub m: usize,
    pub l: usize,
    pub rows: Vec<RestrictionRow>,
}

impl RestrictionTable {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(RestrictionRow::matches)
    }
}

/// The projection k[V*] -> k[U*] killing the last `l` generators.
pub fn projection_map(p: u32, m: usize, l: usize) -> Result<AlgebraMap> {
    if l > m {
        return Err(Error::Invalid(format!("codimension {l} exceeds rank {m}")));
    }
    let v = DualSpaceAlgebra::new(p, m)?;
    let u = DualSpaceAlgebra::new(p, m - l)?;
    let images = (0..m)
        .map(|i| {
            if i < m - l {
                u.ring.generator(i)
            } else {
                u.ring.zero()
            }
        })
        .collect();
    AlgebraMap::new(
        Arc::new(PresentedAlgebra::free_algebra(Arc::clone(&v.ring))),
        Arc::new(PresentedAlgebra::free_algebra(Arc::clone(&u.ring))),
        images,
    )
}

pub fn restrict_dickson(p: u32, m: usize, l: usize) -> Result<RestrictionTable> {
    let proj = projection_map(p, m, l)?;
    let v = dickson_set(p, m)?;
    let u = dickson_set(p, m - l)?;
    let power = (p as u64).pow(l as u32);
    let rows = (1..=m)
        .map(|s| {
            let image = proj.apply(v.get(s))?;
            let expected = if s <= m - l {
                u.get(s).pow(power)
            } else {
                u.space().ring().zero()
            };
            Ok(RestrictionRow { s, image, expected })
        })
        .collect::<Result<_>>()?;
    Ok(RestrictionTable { p, m, l, rows })
}

/// A total Chern class `prod (1 + lambda)` in a polynomial algebra on
/// degree-2 generators; Chern index i lives in degree 2i.
#[derive(Clone, Debug, PartialEq)]
pub struct TotalChern {
    total: Element,
}

impl TotalChern {
    pub fn total(&self) -> &Element {
        &self.total
    }

    pub fn class(&self, index: u64) -> Element {
        self.total.component((2 * index) as u32)
    }
}

/// `prod_i (1 + lambda_i)` for linear characters given as coordinate vectors.
pub fn chern_of_character_sum(ring: &Arc<FreeAlgebra>, chars: &[Vec<u32>]) -> Result<TotalChern> {
    if ring.generators().iter().any(|g| g.degree != 2) {
        return Err(Error::Invalid(
            "Chern classes need the degree-2 generator convention".into(),
        ));
    }
    let mut total = ring.one();
    for v in chars {
        if v.len() != ring.ngens() {
            return Err(Error::Dimension(format!(
                "character of length {} in rank {}",
                v.len(),
                ring.ngens()
            )));
        }
        let mut lam = ring.one();
        for (i, &c) in v.iter().enumerate() {
            lam = &lam + &ring.generator(i).scale(c);
        }
        total = &total * &lam;
    }
    Ok(TotalChern { total })
}

/// The Chern classes of the regular representation of C, computed twice.
#[derive(Clone, Debug)]
pub struct MilgramCheck {
    pub p: u32,
    pub z: usize,
    /// `c_{p^z - p^(z-i)}` read off f_{C*}(1), i = 0..=z.
    pub from_fv: Vec<Element>,
    /// Same classes from the product over all characters.
    pub from_product: Vec<Element>,
    /// `(-1)^i D_i(C*)`.
    pub signed_dickson: Vec<Element>,
    /// Nonzero Chern classes of the product outside the indices above.
    pub stray_classes: usize,
}

impl MilgramCheck {
    pub fn holds(&self) -> bool {
        self.stray_classes == 0
            && self.from_fv == self.signed_dickson
            && self.from_product == self.signed_dickson
    }
}

pub fn regular_rep_chern(p: u32, z: usize, cap: u64) -> Result<MilgramCheck> {
    let fv = expand_fv(p, z, cap)?;
    let set = DicksonSet::from_expansion(&fv)?;
    let ring = Arc::clone(fv.space().ring());
    let at_one = fv.at_one();
    let chern = chern_of_character_sum(&ring, &fv.space().all_vectors())?;
    let pz = (p as u64).pow(z as u32);
    let indices: Vec<u64> = (0..=z).map(|i| pz - (p as u64).pow((z - i) as u32)).collect();
    let from_fv = indices.iter().map(|&k| at_one.component((2 * k) as u32)).collect();
    let from_product = indices.iter().map(|&k| chern.class(k)).collect();
    let signed_dickson = (0..=z)
        .map(|i| if i % 2 == 1 { -set.get(i) } else { set.get(i).clone() })
        .collect();
    let stray_classes = chern
        .total()
        .components()
        .keys()
        .filter(|&&d| !indices.contains(&(d as u64 / 2)))
        .count();
    Ok(MilgramCheck {
        p,
        z,
        from_fv,
        from_product,
        signed_dickson,
        stray_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// f_V multiplied out one vector at a time with the generic element type.
    fn brute_dickson(p: u32, m: usize) -> Vec<Element> {
        let mut names: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
        names.push("X".into());
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let r = FreeAlgebra::polynomial(p, &refs, 2).unwrap();
        let mut f = r.one();
        for v in all_vectors(p, m) {
            let mut factor = r.generator(m);
            for (i, &c) in v.iter().enumerate() {
                factor = &factor - &r.generator(i).scale(c);
            }
            f = &f * &factor;
        }
        let space = DualSpaceAlgebra::new(p, m).unwrap();
        (0..=m)
            .map(|s| {
                let e = (p as u32).pow((m - s) as u32);
                let mut coef = space.ring().zero();
                for (mono, &c) in f.terms() {
                    if mono.0[m] == e {
                        let mut exps = mono.0.clone();
                        exps.pop();
                        coef.add_term(crate::graded::Monomial(exps), c);
                    }
                }
                if s % 2 == 1 {
                    -&coef
                } else {
                    coef
                }
            })
            .collect()
    }

    #[test]
    fn small_cases_by_hand() {
        let d = dickson_set(2, 1).unwrap();
        assert_eq!(d.get(1).to_string(), "x1");
        let d = dickson_set(3, 1).unwrap();
        assert_eq!(d.get(1).to_string(), "x1^2");
        let fv = expand_fv(3, 1, DEFAULT_CAP).unwrap();
        assert_eq!(fv.coefficient(1).to_string(), "2*x1^2");
        let d = dickson_set(2, 2).unwrap();
        let r = d.space().ring();
        assert_eq!(*d.get(1), r.parse("x1^2+x1*x2+x2^2").unwrap());
        assert_eq!(*d.get(2), r.parse("x1^2*x2+x1*x2^2").unwrap());
        assert_eq!(*d.get(0), r.one());
    }

    #[test]
    fn grouped_expansion_matches_brute_force() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)] {
            let d = dickson_set(p, m).unwrap();
            let brute = brute_dickson(p, m);
            for s in 0..=m {
                assert_eq!(*d.get(s), brute[s], "p={p} m={m} s={s}");
            }
        }
    }

    #[test]
    fn shape_and_degrees() {
        for (p, m) in [(2, 3), (3, 3), (5, 2), (11, 1)] {
            let fv = expand_fv(p, m, DEFAULT_CAP).unwrap();
            assert!(fv.exponents_are_p_powers());
            assert!(fv.is_monic());
            let d = DicksonSet::from_expansion(&fv).unwrap();
            for s in 1..=m {
                assert_eq!(d.get(s).degree().unwrap(), Some(d.degree(s) as u32));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            expand_fv(3, 5, DEFAULT_CAP),
            Err(Error::CapExceeded { value: 243, .. })
        ));
        assert!(expand_fv(3, 4, DEFAULT_CAP).is_ok());
        assert!(expand_fv(2, 6, DEFAULT_CAP).unwrap().exponents_are_p_powers());
    }

    #[test]
    fn classical_view_for_p2() {
        let d = dickson_set(2, 2).unwrap();
        let c = d.space().to_classical(d.get(1)).unwrap();
        assert_eq!(c.to_string(), "t1^2+t1*t2+t2^2");
        assert_eq!(c.degree().unwrap(), Some(2));
        assert!(dickson_set(3, 1).unwrap().space().classical_ring().is_err());
    }

    fn direct_substitution(e: &Element, g: &FpMatrix) -> Element {
        let r = e.ring();
        let images: Vec<Element> = (0..g.rows())
            .map(|i| {
                let mut img = r.zero();
                for j in 0..g.cols() {
                    img = &img + &r.generator(j).scale(g.get(i, j));
                }
                img
            })
            .collect();
        let a = Arc::new(PresentedAlgebra::free_algebra(Arc::clone(r)));
        AlgebraMap::new(Arc::clone(&a), a, images)
            .unwrap()
            .apply(e)
            .unwrap()
    }

    #[test]
    fn decomposition_recomposes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, m) in [(2, 4), (3, 3), (5, 2)] {
            for _ in 0..20 {
                let g = random_invertible(p, m, &mut rng).unwrap();
                let ops = elementary_decomposition(&g).unwrap();
                let mut prod = FpMatrix::identity(p, m).unwrap();
                for op in &ops {
                    prod = prod.mul(&op.matrix(p, m).unwrap()).unwrap();
                }
                assert_eq!(prod, g);
            }
        }
    }

    #[test]
    fn substitution_matches_direct_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, m) in [(2, 3), (3, 2), (5, 2)] {
            let r = DualSpaceAlgebra::new(p, m).unwrap();
            let e = &r.ring().generator(0).pow(3) * &r.ring().generator(m - 1);
            let e = &e + &r.ring().generator(1).pow(4);
            for _ in 0..10 {
                let g = random_invertible(p, m, &mut rng).unwrap();
                assert_eq!(substitute_linear(&e, &g).unwrap(), direct_substitution(&e, &g));
            }
        }
    }

    #[test]
    fn gl_invariance_examples() {
        let d = dickson_set(2, 2).unwrap();
        let id = FpMatrix::identity(2, 2).unwrap();
        assert_eq!(first_non_invariant(&d, &id).unwrap(), None);
        let swap = FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(first_non_invariant(&d, &swap).unwrap(), None);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d3 = dickson_set(3, 2).unwrap();
        assert!(check_gl_invariance(&d3, 100, &mut rng).unwrap().holds());
        // a non-invariant element is caught
        let r = d3.space().ring();
        let fake = DicksonSet {
            space: d3.space().clone(),
            invariants: vec![r.one(), r.parse("x1^2").unwrap(), d3.get(2).clone()],
        };
        assert!(!check_gl_invariance(&fake, 20, &mut rng).unwrap().holds());
    }

    #[test]
    fn restriction_examples() {
        let t = restrict_dickson(2, 2, 0).unwrap();
        assert!(t.all_match());
        let t = restrict_dickson(2, 2, 1).unwrap();
        assert_eq!(t.rows[0].image.to_string(), "x1^2");
        assert!(t.rows[1].image.is_zero());
        assert!(t.all_match());
        let t = restrict_dickson(3, 2, 1).unwrap();
        assert!(t.all_match());
        assert_eq!(t.rows[0].image.to_string(), "x1^6");
        assert!(restrict_dickson(2, 3, 3).unwrap().all_match());
    }

    #[test]
    fn milgram_small_cases() {
        let c = regular_rep_chern(2, 1, DEFAULT_CAP).unwrap();
        assert!(c.holds());
        assert_eq!(c.from_fv[1].to_string(), "x1");
        let c = regular_rep_chern(3, 1, DEFAULT_CAP).unwrap();
        assert!(c.holds());
        assert_eq!(c.from_fv[1].to_string(), "2*x1^2");
        assert_eq!(c.from_fv[0].to_string(), "1");
        assert!(regular_rep_chern(2, 3, DEFAULT_CAP).unwrap().holds());
    }

    #[test]
    fn chern_of_characters() {
        let r = DualSpaceAlgebra::new(3, 2).unwrap();
        let c = chern_of_character_sum(r.ring(), &[]).unwrap();
        assert_eq!(*c.total(), r.ring().one());
        let c = chern_of_character_sum(r.ring(), &[vec![1, 0]]).unwrap();
        assert_eq!(c.total().to_string(), "x1+1");
        let all = chern_of_character_sum(r.ring(), &r.all_vectors()).unwrap();
        let mut top = r.ring().one();
        for v in r.all_vectors().into_iter().filter(|v| v.iter().any(|&c| c != 0)) {
            top = &top * &r.linear_form(&v);
        }
        assert_eq!(all.class(8), top);
        let d = dickson_set(3, 2).unwrap();
        assert_eq!(all.class(6), -d.get(1));
        assert_eq!(all.class(8), *d.get(2));
    }

    #[test]
    fn dickson_sequence_is_regular_by_hilbert_series() {
        for (p, m, bound) in [(2u32, 2usize, 24u32), (3, 2, 40), (2, 3, 30)] {
            let d = dickson_set(p, m).unwrap();
            let free = PresentedAlgebra::free_algebra(Arc::clone(d.space().ring()));
            let q = free.quotient(d.invariants()).unwrap();
            let mut expect: Vec<i64> = free.hilbert_series(bound).iter().map(|&x| x as i64).collect();
            for s in 1..=m {
                let e = d.degree(s) as usize;
                for i in (e..expect.len()).rev() {
                    expect[i] -= expect[i - e];
                }
            }
            let got: Vec<i64> = q.hilbert_series(bound).iter().map(|&x| x as i64).collect();
            assert_eq!(got, expect, "p={p} m={m}");
        }
    }
}
