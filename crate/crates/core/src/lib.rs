//! Lower bounds for the dimensions of projective indecomposable modules of
//! finite groups of Lie type in defining characteristic.

pub mod degrees;
pub mod rootdata;
pub mod charlattice;
pub mod weights;
pub mod caseanalysis;
pub mod bounds;
