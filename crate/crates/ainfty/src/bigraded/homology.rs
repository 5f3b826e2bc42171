use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bigraded::bidegree::Bidegree;
use crate::bigraded::space::{BigradedSpace, GradedMap};
use crate::error::{Error, Result};
use crate::exactla::{rank_kernel_image, Echelon, Field, SparseVec};

/// Homology data for one bidegree of `V`.
///
/// `V = B ⊕ H' ⊕ C` where `B` is spanned by images `d_in(c)` of standard basis
/// vectors `c` of the previous block, `H'` by the representatives and `C` by
/// standard basis vectors whose `d_out` images are independent.
#[derive(Clone, Debug)]
pub struct HomologyBlock<F: Field> {
    pub reps: Vec<SparseVec<F::Elem>>,
    /// Standard basis indices `c` in the source of `d_in` with `B = span d_in(c)`.
    pub boundary_sources: Vec<usize>,
    pub complement: Vec<usize>,
    dim_boundaries: usize,
    decomposition: Echelon<F>,
}

impl<F: Field> HomologyBlock<F> {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of `x` on (boundaries, representatives, complement).
    fn coordinates(&self, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.decomposition.solve(x).expect("block basis spans the whole block")
    }

    /// Class of `x` in terms of the representatives (only meaningful on cycles).
    pub fn project(&self, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let nb = self.dim_boundaries;
        let nh = self.reps.len();
        let f = self.decomposition.field();
        SparseVec::from_terms(
            f,
            self.coordinates(x).iter().filter(|(i, _)| *i >= nb && *i < nb + nh).map(|(i, v)| (i - nb, v.clone())),
        )
    }

    /// Chain homotopy `h`, valued in the previous block: `d_in(e_c) ↦ e_c`, zero on representatives and complement.
    pub fn homotopy(&self, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let nb = self.dim_boundaries;
        let f = self.decomposition.field();
        SparseVec::from_terms(
            f,
            self.coordinates(x).iter().filter(|(i, _)| *i < nb).map(|(i, v)| (self.boundary_sources[*i], v.clone())),
        )
    }

    pub fn is_boundary(&self, x: &SparseVec<F::Elem>) -> bool {
        let nb = self.dim_boundaries;
        self.coordinates(x).iter().all(|(i, _)| *i < nb)
    }
}

/// Homology of `V` at the middle of `d_in: U → V`, `d_out: V → W`.
#[derive(Clone, Debug)]
pub struct Homology<F: Field> {
    pub space: BigradedSpace,
    pub blocks: BTreeMap<Bidegree, HomologyBlock<F>>,
}

impl<F: Field> Homology<F> {
    pub fn dims(&self) -> BTreeMap<Bidegree, usize> {
        self.space.dims()
    }

    pub fn dim(&self, d: Bidegree) -> usize {
        self.space.dim(d)
    }

    pub fn block(&self, d: Bidegree) -> Option<&HomologyBlock<F>> {
        self.blocks.get(&d)
    }
}

/// Per-bidegree homology with representatives and splitting data.
pub fn homology<F: Field>(field: &F, d_in: &GradedMap<F>, d_out: &GradedMap<F>) -> Result<Homology<F>> {
    if d_in.target != d_out.source {
        return Err(Error::Malformed("homology of maps that do not compose".into()));
    }
    if !d_out.compose(field, d_in)?.is_zero() {
        return Err(Error::IdentityFailure("d∘d ≠ 0".into()));
    }
    let v = &d_out.source;
    let degrees: Vec<Bidegree> = v.bidegrees().collect();
    let computed: Vec<(Bidegree, HomologyBlock<F>, Vec<String>)> = degrees
        .par_iter()
        .map(|&d| {
            let n = v.dim(d);
            let prev = d - d_in.degree;
            let dec_in = rank_kernel_image(field, &d_in.block(prev));
            let dec_out = rank_kernel_image(field, &d_out.block(d));
            let mut e = Echelon::new(field.clone());
            let mut id = 0;
            for b in &dec_in.image {
                e.insert(b, id);
                id += 1;
            }
            let mut reps = Vec::new();
            let mut labels = Vec::new();
            for z in &dec_out.kernel {
                if let crate::exactla::Insert::Independent(_) = e.insert(z, id) {
                    id += 1;
                    let top = z.max_index().expect("nonzero kernel vector");
                    let mut l = v.labels(d)[top].clone();
                    while labels.contains(&l) {
                        l.push('\'');
                    }
                    labels.push(l);
                    reps.push(z.clone());
                }
            }
            for &c in &dec_out.pivot_columns {
                let ins = e.insert(&SparseVec::unit(field, c), id);
                debug_assert!(matches!(ins, crate::exactla::Insert::Independent(_)));
                id += 1;
            }
            debug_assert_eq!(id, n);
            let block = HomologyBlock {
                reps,
                boundary_sources: dec_in.pivot_columns.clone(),
                complement: dec_out.pivot_columns.clone(),
                dim_boundaries: dec_in.rank,
                decomposition: e,
            };
            (d, block, labels)
        })
        .collect();
    let mut space = BigradedSpace::new();
    let mut blocks = BTreeMap::new();
    for (d, block, labels) in computed {
        for l in labels {
            space.push(d, l)?;
        }
        blocks.insert(d, block);
    }
    Ok(Homology { space, blocks })
}
