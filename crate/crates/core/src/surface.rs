//! Generator and object inventories: the surface groupoid `π₁(Σ_{g,n+1}, V)`
//! and the one-object tensor algebra `T(W)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Generator, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSignature {
    genus: u32,
    boundaries: u32,
}

/// `Σ_{g,n+1}` with objects `0..=n` and generators `α_i, β_i` (`i ≤ g`),
/// `γ_j, δ_j` (`j ≤ n`).
pub fn make_surface(genus: u32, boundaries: u32) -> Result<SurfaceSignature> {
    if genus == 0 && boundaries == 0 {
        return Err(Error::DegenerateSurface { genus, boundaries });
    }
    Ok(SurfaceSignature { genus, boundaries })
}

impl SurfaceSignature {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// `n`, the number of boundary components besides `∂₀`.
    pub fn boundaries(&self) -> u32 {
        self.boundaries
    }

    pub fn objects(&self) -> Vec<u32> {
        (0..=self.boundaries).collect()
    }

    pub fn generators(&self) -> Vec<Generator> {
        let g = 1..=self.genus;
        let n = 1..=self.boundaries;
        g.clone()
            .map(Generator::alpha)
            .chain(g.map(Generator::beta))
            .chain(n.clone().map(Generator::gamma))
            .chain(n.map(Generator::delta))
            .collect()
    }

    pub fn contains(&self, gen: Generator) -> bool {
        let bound = match gen.kind {
            Kind::Alpha | Kind::Beta => self.genus,
            Kind::Gamma | Kind::Delta => self.boundaries,
            Kind::Free => 0,
        };
        (1..=bound).contains(&gen.index)
    }
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ_{{{},{}}}", self.genus, self.boundaries + 1)
    }
}

/// The free generating data an algebra is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Presentation {
    Surface(SurfaceSignature),
    /// `T(W)` with `dim W = dim`, letters `w1..w{dim}`.
    Tensor { dim: usize },
}

pub const MAX_TENSOR_DIM: usize = 26;

impl Presentation {
    pub fn tensor(dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_TENSOR_DIM {
            return Err(Error::BadDimension(dim));
        }
        Ok(Presentation::Tensor { dim })
    }

    pub fn objects(&self) -> Vec<u32> {
        match self {
            Presentation::Surface(s) => s.objects(),
            Presentation::Tensor { .. } => vec![0],
        }
    }

    pub fn generators(&self) -> Vec<Generator> {
        match self {
            Presentation::Surface(s) => s.generators(),
            Presentation::Tensor { dim } => (1..=*dim as u32).map(Generator::free).collect(),
        }
    }

    pub fn contains(&self, gen: Generator) -> bool {
        match self {
            Presentation::Surface(s) => s.contains(gen),
            Presentation::Tensor { dim } => gen.kind == Kind::Free && (1..=*dim as u32).contains(&gen.index),
        }
    }

    pub fn contains_object(&self, v: u32) -> bool {
        self.objects().contains(&v)
    }
}

impl From<SurfaceSignature> for Presentation {
    fn from(s: SurfaceSignature) -> Self {
        Presentation::Surface(s)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Presentation::Surface(s) => write!(f, "{s}"),
            Presentation::Tensor { dim } => write!(f, "T(W), dim W = {dim}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &SurfaceSignature) -> Vec<String> {
        s.generators().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn torus_with_two_boundaries() {
        let s = make_surface(1, 1).unwrap();
        assert_eq!(s.objects(), vec![0, 1]);
        assert_eq!(names(&s), ["a1", "b1", "g1", "d1"]);
    }

    #[test]
    fn genus_zero_has_no_alpha_beta() {
        let s = make_surface(0, 2).unwrap();
        assert_eq!(names(&s), ["g1", "g2", "d1", "d2"]);
    }

    #[test]
    fn disc_is_rejected() {
        assert_eq!(
            make_surface(0, 0),
            Err(Error::DegenerateSurface { genus: 0, boundaries: 0 })
        );
    }

    #[test]
    fn tensor_dimension_bounds() {
        assert!(Presentation::tensor(0).is_err());
        assert!(Presentation::tensor(27).is_err());
        assert_eq!(Presentation::tensor(3).unwrap().generators().len(), 3);
    }
}
