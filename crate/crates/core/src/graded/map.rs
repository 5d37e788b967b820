//! Degree-preserving algebra homomorphisms between presented algebras.

use std::collections::HashMap;
use std::sync::Arc;

use super::presented::shift_element;
use super::{Element, PresentedAlgebra};
use crate::error::{Error, Result};
use crate::fplinalg::{FpMatrix, Subspace};

/// Homomorphism given by the image of each source generator.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Arc<PresentedAlgebra>,
    target: Arc<PresentedAlgebra>,
    images: Vec<Element>,
}

impl AlgebraMap {
    /// Checks that every image is homogeneous of its generator's degree.
    /// Relations are checked separately by [`AlgebraMap::verify_relations`].
    pub fn new(
        source: Arc<PresentedAlgebra>,
        target: Arc<PresentedAlgebra>,
        images: Vec<Element>,
    ) -> Result<Self> {
        if source.p() != target.p() {
            return Err(Error::ModulusMismatch(source.p(), target.p()));
        }
        let gens = source.free().generators();
        if images.len() != gens.len() {
            return Err(Error::Dimension(format!(
                "{} images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let mut rehosted = Vec::with_capacity(images.len());
        for (g, img) in gens.iter().zip(images) {
            let img = img.rehost(target.free())?;
            match img.degree() {
                Err(_) => {
                    return Err(Error::DegreeMismatch(format!(
                        "image of generator {} is not homogeneous: {img}",
                        g.name
                    )))
                }
                Ok(Some(d)) if d != g.degree => {
                    return Err(Error::DegreeMismatch(format!(
                        "image of generator {} has degree {d}, expected {}",
                        g.name, g.degree
                    )))
                }
                _ => {}
            }
            rehosted.push(img);
        }
        Ok(AlgebraMap {
            source,
            target,
            images: rehosted,
        })
    }

    /// Map given by poly-strings keyed by source generator name; missing
    /// generators map to zero.
    pub fn from_strings(
        source: Arc<PresentedAlgebra>,
        target: Arc<PresentedAlgebra>,
        images: &[(&str, &str)],
    ) -> Result<Self> {
        let mut imgs = vec![target.free().zero(); source.free().ngens()];
        for (name, poly) in images {
            let i = source.free().generator_index(name).ok_or_else(|| {
                Error::Invalid(format!("map image given for unknown generator {name}"))
            })?;
            imgs[i] = target.parse(poly)?;
        }
        Self::new(source, target, imgs)
    }

    pub fn identity(a: Arc<PresentedAlgebra>) -> Self {
        let images = (0..a.free().ngens()).map(|i| a.free().generator(i)).collect();
        AlgebraMap {
            source: Arc::clone(&a),
            target: a,
            images,
        }
    }

    pub fn source(&self) -> &Arc<PresentedAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PresentedAlgebra> {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Substitution of generator images without reducing in the target.
    pub fn apply_unreduced(&self, x: &Element) -> Result<Element> {
        if !x.same_ring(&self.source.free().zero()) {
            return Err(Error::HostMismatch);
        }
        let tf = self.target.free();
        let mut powers: HashMap<(usize, u32), Element> = HashMap::new();
        let mut out = tf.zero();
        for (m, &c) in x.terms() {
            let mut term = tf.scalar(c as i64);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| self.images[i].pow(e as u64));
                term = &term * pw;
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Image of `x`, in normal form in the target.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.target.normal_form(&self.apply_unreduced(x)?)
    }

    /// Every source relation of degree <= `bound` maps to zero in the target.
    pub fn verify_relations(&self, bound: u32) -> std::result::Result<(), Vec<String>> {
        let mut errors = Vec::new();
        for r in self.source.relations() {
            let d = r.degree().ok().flatten().unwrap_or(0);
            if d > bound {
                continue;
            }
            match self.apply(r) {
                Ok(img) if img.is_zero() => {}
                Ok(img) => errors.push(format!("relation {r} maps to nonzero {img}")),
                Err(e) => errors.push(format!("relation {r}: {e}")),
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgebraMap) -> Result<AlgebraMap> {
        if *self.target != *other.source {
            return Err(Error::Invalid("composition of maps with mismatched algebras".into()));
        }
        let images = self
            .images
            .iter()
            .map(|img| other.apply_unreduced(&img.rehost(other.source.free())?))
            .collect::<Result<Vec<_>>>()?;
        AlgebraMap::new(Arc::clone(&self.source), Arc::clone(&other.target), images)
    }

    /// Same generator images between other presentations of the same free algebras.
    pub fn with_algebras(
        &self,
        source: Arc<PresentedAlgebra>,
        target: Arc<PresentedAlgebra>,
    ) -> Result<AlgebraMap> {
        if *source.free() != *self.source.free() || *target.free() != *self.target.free() {
            return Err(Error::HostMismatch);
        }
        AlgebraMap::new(source, target, self.images.clone())
    }

    /// Induced map `source/(ideal) -> target/(f(ideal))`.
    pub fn modulo(&self, ideal: &[Element]) -> Result<AlgebraMap> {
        let images = ideal
            .iter()
            .map(|x| self.apply_unreduced(x))
            .collect::<Result<Vec<_>>>()?;
        let s = Arc::new(self.source.quotient(ideal)?);
        let t = Arc::new(self.target.quotient(&images)?);
        self.with_algebras(s, t)
    }

    /// `f ⊗ g : A ⊗ B -> A' ⊗ B'`.
    pub fn tensor(&self, other: &AlgebraMap) -> Result<AlgebraMap> {
        let source = Arc::new(self.source.tensor(&other.source)?);
        let target = Arc::new(self.target.tensor(&other.target)?);
        let tf = target.free();
        let offset = self.target.free().ngens();
        let mut images: Vec<Element> = self.images.iter().map(|e| shift_element(e, tf, 0)).collect();
        images.extend(other.images.iter().map(|e| shift_element(e, tf, offset)));
        AlgebraMap::new(source, target, images)
    }

    /// Matrix of the induced linear map in degree `d`, in quotient coordinates
    /// (rows: target basis, columns: source basis).
    pub fn matrix_in_degree(&self, d: u32) -> Result<FpMatrix> {
        let src = self.source.graded_basis(d);
        let dst = self.target.graded_basis(d);
        let mut m = FpMatrix::zeros(self.source.p(), dst.dim(), src.dim())?;
        for (j, mono) in src.basis_monomials().into_iter().enumerate() {
            let img = self.apply_unreduced(&self.source.free().monomial(mono.clone(), 1))?;
            for (i, c) in dst.coords(&img)?.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    /// Kernel of the degree-d piece of the map, in source quotient coordinates.
    pub fn kernel_in_degree(&self, d: u32) -> Result<Subspace> {
        Ok(self.matrix_in_degree(d)?.kernel_basis())
    }
}

/// Left and right inclusions `A -> A ⊗ B`, `B -> A ⊗ B` into `a.tensor(b)`.
pub fn tensor_inclusions(
    a: &Arc<PresentedAlgebra>,
    b: &Arc<PresentedAlgebra>,
    ab: &Arc<PresentedAlgebra>,
) -> Result<(AlgebraMap, AlgebraMap)> {
    let tf = ab.free();
    let na = a.free().ngens();
    let left = (0..na).map(|i| tf.generator(i)).collect();
    let right = (0..b.free().ngens()).map(|i| tf.generator(na + i)).collect();
    Ok((
        AlgebraMap::new(Arc::clone(a), Arc::clone(ab), left)?,
        AlgebraMap::new(Arc::clone(b), Arc::clone(ab), right)?,
    ))
}

/// Kernel of the product of maps sharing a source, in source coordinates.
pub fn joint_kernel_in_degree(maps: &[AlgebraMap], source: &PresentedAlgebra, d: u32) -> Result<Subspace> {
    let n = source.dim(d);
    let f = source.field();
    let mut rows = Vec::new();
    for m in maps {
        let mat = m.matrix_in_degree(d)?;
        rows.extend(mat.row_vectors());
    }
    if rows.is_empty() {
        return Ok(Subspace::full(f, n));
    }
    Ok(FpMatrix::from_residue_rows(f, n, rows)?.kernel_basis())
}
