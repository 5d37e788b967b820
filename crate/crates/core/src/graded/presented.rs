//! Homogeneous presented quotients of free graded-commutative algebras.
//!
//! The degree-d piece of the ideal is spanned by all products of degree-d
//! monomials with relations; row reduction over the monomials (largest first)
//! leaves the smaller monomials as a basis of the quotient. Pieces are
//! memoized per degree.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::{Element, FreeAlgebra, GeneratorSpec, Monomial};
use crate::error::{Error, Result};
use crate::fplinalg::{Fp, FpMatrix, Subspace};

/// Degree-d piece of a presented algebra.
#[derive(Debug)]
pub struct DegreePiece {
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ideal: Subspace,
    basis_columns: Vec<usize>,
}

impl DegreePiece {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Every monomial of the free algebra in this degree.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    /// Monomials whose classes form a basis of the quotient.
    pub fn basis_monomials(&self) -> Vec<&Monomial> {
        self.basis_columns.iter().map(|&c| &self.monomials[c]).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis_columns.len()
    }

    /// Change of basis from monomial coordinates to quotient coordinates.
    pub fn reduction_matrix(&self) -> FpMatrix {
        let f = self.ideal.field();
        let rows = (0..self.basis_columns.len())
            .map(|_| vec![0u32; self.monomials.len()])
            .collect::<Vec<_>>();
        let mut rows = rows;
        for col in 0..self.monomials.len() {
            let mut v = vec![0u32; self.monomials.len()];
            v[col] = 1;
            let q = self.quotient_coords_of_vector(&v);
            for (r, &c) in q.iter().enumerate() {
                rows[r][col] = c;
            }
        }
        FpMatrix::from_residue_rows(f, self.monomials.len(), rows).expect("well-formed")
    }

    fn monomial_vector(&self, e: &Element) -> Result<Vec<u32>> {
        let mut v = vec![0u32; self.monomials.len()];
        for (m, &c) in e.terms() {
            let i = *self.index.get(m).ok_or_else(|| {
                Error::DegreeMismatch(format!(
                    "term of {e} does not have degree {}",
                    self.degree
                ))
            })?;
            v[i] = c;
        }
        Ok(v)
    }

    fn quotient_coords_of_vector(&self, v: &[u32]) -> Vec<u32> {
        let r = self.ideal.reduce(v);
        self.basis_columns.iter().map(|&c| r[c]).collect()
    }

    /// Coordinates of a homogeneous element of this degree in the quotient basis.
    pub fn coords(&self, e: &Element) -> Result<Vec<u32>> {
        Ok(self.quotient_coords_of_vector(&self.monomial_vector(e)?))
    }

    pub fn in_ideal(&self, e: &Element) -> Result<bool> {
        Ok(self.ideal.contains(&self.monomial_vector(e)?))
    }

    /// Element represented by quotient coordinates.
    pub fn element(&self, ring: &Arc<FreeAlgebra>, coords: &[u32]) -> Element {
        let mut e = ring.zero();
        for (&col, &c) in self.basis_columns.iter().zip(coords) {
            e.add_term(self.monomials[col].clone(), c);
        }
        e
    }
}

/// Free graded-commutative algebra modulo a homogeneous ideal.
pub struct PresentedAlgebra {
    free: Arc<FreeAlgebra>,
    relations: Vec<Element>,
    pieces: RwLock<HashMap<u32, Arc<DegreePiece>>>,
}

impl Clone for PresentedAlgebra {
    fn clone(&self) -> Self {
        PresentedAlgebra {
            free: Arc::clone(&self.free),
            relations: self.relations.clone(),
            pieces: RwLock::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for PresentedAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self
            .free
            .generators()
            .iter()
            .map(|g| format!("{}({})", g.name, g.degree))
            .collect();
        let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        write!(
            f,
            "F_{}[{}]/({})",
            self.free.p(),
            gens.join(", "),
            rels.join(", ")
        )
    }
}

impl PartialEq for PresentedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.free == other.free && self.relations == other.relations
    }
}

impl PresentedAlgebra {
    pub fn new(free: Arc<FreeAlgebra>, relations: Vec<Element>) -> Result<Self> {
        let mut kept = Vec::new();
        for r in relations {
            if r.ring().as_ref() != free.as_ref() {
                return Err(Error::HostMismatch);
            }
            match r.degree()? {
                None => continue,
                Some(0) => {
                    return Err(Error::Invalid(format!(
                        "relation {r} has degree 0; the quotient would not be connected"
                    )))
                }
                Some(_) => kept.push(r.rehost(&free)?),
            }
        }
        Ok(PresentedAlgebra {
            free,
            relations: kept,
            pieces: RwLock::new(HashMap::new()),
        })
    }

    pub fn free_algebra(free: Arc<FreeAlgebra>) -> Self {
        PresentedAlgebra {
            free,
            relations: Vec::new(),
            pieces: RwLock::new(HashMap::new()),
        }
    }

    /// Builds an algebra from generator specs and relation poly-strings.
    pub fn from_strings(p: u32, generators: Vec<GeneratorSpec>, relations: &[&str]) -> Result<Self> {
        let free = FreeAlgebra::new(p, generators)?;
        let rels = relations
            .iter()
            .map(|s| free.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(free, rels)
    }

    pub fn free(&self) -> &Arc<FreeAlgebra> {
        &self.free
    }

    pub fn p(&self) -> u32 {
        self.free.p()
    }

    pub fn field(&self) -> Fp {
        self.free.field()
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.relations
            .iter()
            .filter_map(|r| r.degree().ok().flatten())
            .max()
            .unwrap_or(0)
    }

    pub fn parse(&self, s: &str) -> Result<Element> {
        self.free.parse(s)
    }

    pub fn gen(&self, name: &str) -> Result<Element> {
        self.free.gen(name)
    }

    /// Basis data for the degree-d piece (memoized).
    pub fn graded_basis(&self, d: u32) -> Arc<DegreePiece> {
        if let Some(p) = self.pieces.read().expect("basis cache poisoned").get(&d) {
            return Arc::clone(p);
        }
        let piece = Arc::new(self.compute_piece(d));
        let mut cache = self.pieces.write().expect("basis cache poisoned");
        Arc::clone(cache.entry(d).or_insert(piece))
    }

    fn compute_piece(&self, d: u32) -> DegreePiece {
        let f = self.field();
        let monomials = self.free.monomials_of_degree(d);
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut rows = Vec::new();
        for r in &self.relations {
            let rd = r.degree().ok().flatten().expect("relations are homogeneous");
            if rd > d {
                continue;
            }
            for m in self.free.monomials_of_degree(d - rd) {
                let mut v = vec![0u32; monomials.len()];
                let mut any = false;
                for (rm, &c) in r.terms() {
                    if let Some((prod, negative)) = self.free.mul_monomials(&m, rm) {
                        let i = index[&prod];
                        let c = if negative { f.neg(c) } else { c };
                        v[i] = f.add(v[i], c);
                        any = true;
                    }
                }
                if any && v.iter().any(|&e| e != 0) {
                    rows.push(v);
                }
            }
        }
        let ideal = Subspace::span(f, monomials.len(), rows);
        let mut is_pivot = vec![false; monomials.len()];
        for &c in ideal.pivots() {
            is_pivot[c] = true;
        }
        let basis_columns = (0..monomials.len()).filter(|&c| !is_pivot[c]).collect();
        DegreePiece {
            degree: d,
            monomials,
            index,
            ideal,
            basis_columns,
        }
    }

    pub fn dim(&self, d: u32) -> usize {
        self.graded_basis(d).dim()
    }

    /// `[dim A_0, ..., dim A_bound]`.
    pub fn hilbert_series(&self, bound: u32) -> Vec<usize> {
        (0..=bound).map(|d| self.dim(d)).collect()
    }

    /// Canonical representative: each component reduced against the ideal.
    pub fn normal_form(&self, e: &Element) -> Result<Element> {
        if !e.same_ring(&self.free.zero()) {
            return Err(Error::HostMismatch);
        }
        let mut out = self.free.zero();
        for (d, comp) in e.components() {
            let piece = self.graded_basis(d);
            let coords = piece.coords(&comp)?;
            let nf = piece.element(&self.free, &coords);
            for (m, c) in nf.terms() {
                out.add_term(m.clone(), *c);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self, e: &Element) -> Result<bool> {
        Ok(self.normal_form(e)?.is_zero())
    }

    pub fn coords(&self, e: &Element, d: u32) -> Result<Vec<u32>> {
        self.graded_basis(d).coords(e)
    }

    pub fn element_from_coords(&self, d: u32, coords: &[u32]) -> Element {
        self.graded_basis(d).element(&self.free, coords)
    }

    /// Quotient by further homogeneous elements.
    pub fn quotient(&self, gens: &[Element]) -> Result<PresentedAlgebra> {
        let mut rels = self.relations.clone();
        for g in gens {
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(g.to_string()));
            }
            rels.push(g.clone());
        }
        PresentedAlgebra::new(Arc::clone(&self.free), rels)
    }

    /// Tensor product; right-hand generator names that collide get a `'` suffix.
    pub fn tensor(&self, other: &PresentedAlgebra) -> Result<PresentedAlgebra> {
        if self.p() != other.p() {
            return Err(Error::ModulusMismatch(self.p(), other.p()));
        }
        let mut gens: Vec<GeneratorSpec> = self.free.generators().to_vec();
        for g in other.free.generators() {
            let mut g = g.clone();
            while gens.iter().any(|h| h.name == g.name) {
                g.name.push('\'');
            }
            gens.push(g);
        }
        let free = FreeAlgebra::new(self.p(), gens)?;
        let left = self.free.ngens();
        let mut rels = Vec::new();
        for r in &self.relations {
            rels.push(shift_element(r, &free, 0));
        }
        for r in &other.relations {
            rels.push(shift_element(r, &free, left));
        }
        PresentedAlgebra::new(free, rels)
    }

    /// Matrix of multiplication by a homogeneous `theta` from degree d to d + deg(theta),
    /// in quotient coordinates.
    pub fn multiplication_matrix(&self, theta: &Element, d: u32) -> Result<FpMatrix> {
        let e = theta
            .degree()?
            .ok_or_else(|| Error::Invalid("multiplication by zero has no degree".into()))?;
        let src = self.graded_basis(d);
        let dst = self.graded_basis(d + e);
        let mut cols = Vec::with_capacity(src.dim());
        for m in src.basis_monomials() {
            let prod = &self.free.monomial(m.clone(), 1) * theta;
            cols.push(dst.coords(&prod)?);
        }
        let t = FpMatrix::from_residue_rows(self.field(), dst.dim(), cols)?;
        Ok(if src.dim() == 0 {
            FpMatrix::zeros(self.p(), dst.dim(), 0)?
        } else {
            t.transpose()
        })
    }
}

/// Re-embeds an element into a larger free algebra, shifting generator indices.
pub(crate) fn shift_element(e: &Element, target: &Arc<FreeAlgebra>, offset: usize) -> Element {
    let n = target.ngens();
    let mut out = target.zero();
    for (m, &c) in e.terms() {
        let mut exps = vec![0u32; n];
        exps[offset..offset + m.0.len()].copy_from_slice(&m.0);
        out.add_term(Monomial(exps), c);
    }
    out
}
