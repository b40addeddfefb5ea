use std::sync::Arc;

use super::ForgeError;
use crate::autact::OrbitRecord;
use crate::finquot::FiniteHom;
use crate::perm::{PermGroup, Permutation};

/// The image of `ρ₁ × … × ρ_k` in the product of the targets: factor `j`
/// acts on the points `j·m .. (j+1)·m`, where `m` is the target degree.
#[derive(Clone, Debug)]
pub struct SubdirectImage {
    factors: Vec<FiniteHom>,
    generators: Vec<Permutation>,
    group: Option<Arc<PermGroup>>,
}

impl SubdirectImage {
    /// Checks every factor for surjectivity and builds the stabilizer chain
    /// of `G` when the point count is at most `point_cap`.
    pub fn from_homs(factors: Vec<FiniteHom>, point_cap: usize) -> Result<Self, ForgeError> {
        let first = factors.first().ok_or(ForgeError::EmptyCollection)?;
        let (genus, kind) = (first.genus(), first.target().kind());
        for (j, f) in factors.iter().enumerate() {
            if f.genus() != genus || f.target().kind() != kind {
                return Err(ForgeError::MixedFactors(j));
            }
            if !f.is_surjective() {
                return Err(ForgeError::FactorNotSurjective(j));
            }
        }
        let m = first.target().degree();
        let degree = m * factors.len();
        let images: Vec<Vec<Permutation>> = factors.iter().map(|f| f.image_perms()).collect();
        let generators: Vec<Permutation> = (0..2 * genus)
            .map(|x| {
                let mut out = Vec::with_capacity(degree);
                for (j, im) in images.iter().enumerate() {
                    out.extend(im[x].images().iter().map(|&y| y + (j * m) as u32));
                }
                Permutation::from_images(out).expect("blocks are bijections")
            })
            .collect();
        let group = if degree <= point_cap {
            Some(Arc::new(PermGroup::with_degree(degree, generators.clone())?))
        } else {
            None
        };
        Ok(SubdirectImage {
            factors,
            generators,
            group,
        })
    }

    pub fn factors(&self) -> &[FiniteHom] {
        &self.factors
    }

    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn block_size(&self) -> usize {
        self.factors[0].target().degree()
    }

    pub fn degree(&self) -> usize {
        self.block_size() * self.k()
    }

    /// Images of `a₁, b₁, …, b_g`.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// `G`, if it was within the point cap.
    pub fn group(&self) -> Option<&Arc<PermGroup>> {
        self.group.as_ref()
    }
}

/// `G` for all members of an orbit record.
pub fn build_subdirect_image(rec: &OrbitRecord, point_cap: usize) -> Result<SubdirectImage, ForgeError> {
    SubdirectImage::from_homs(rec.members().to_vec(), point_cap)
}
