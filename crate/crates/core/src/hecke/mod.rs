//! Flag varieties over prime fields and the Hecke algebras they carry.

pub mod algebra;
pub mod braids;
pub mod field;
pub mod flags;
pub mod reference;
pub mod relations;

pub use algebra::{
    check_intertwiners, composition_matrix, hecke_composition_span, hecke_hom, intertwiner_basis, structure_constants,
    verify_main_claim, MainClaimReport,
};
pub use flags::{generator_span, FlagComplex, GeneratorSpan, DEFAULT_MAX_FLAGS};
pub use braids::{yang_baxter_report, zamolodchikov_check, BraidContext, YangBaxterReport, ZamolodchikovReport};
pub use reference::{coxeter_check, coxeter_oracle, reference_matrix_check, reference_matrices, CoxeterData, ReferenceMatrixReport};
pub use relations::{verify_hecke_relations, HeckeReport, RelationCheck};

/// Coxeter diagram of type `A_rank`: `m[d][d'] = 3` for adjacent dots, 2 otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinA {
    pub rank: usize,
    pub m: Vec<Vec<u8>>,
}

impl DynkinA {
    pub fn new(rank: usize) -> DynkinA {
        let m = (0..rank)
            .map(|i| (0..rank).map(|j| if i == j { 1 } else if i.abs_diff(j) == 1 { 3 } else { 2 }).collect())
            .collect();
        DynkinA { rank, m }
    }

    /// `m` for dots numbered from 1.
    pub fn m(&self, d: usize, e: usize) -> u8 {
        self.m[d - 1][e - 1]
    }
}
