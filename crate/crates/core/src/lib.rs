//! Tensor maps between symmetry-graded vector spaces.
//!
//! Sectors (abelian groups, SU(2), fermion parity, Fibonacci and Ising
//! anyons, and their products) supply fusion rules and topological data;
//! fusion trees index the symmetry-allowed blocks of a tensor map; index
//! manipulations act on trees through F- and R-moves, while contractions and
//! factorizations act independently on each coupled-charge block.
//!
//! ```
//! use symtensor::*;
//!
//! let kind = SectorKind::su2();
//! let v = GradedSpace::parse("SU2[0:1, 1/2:2]").unwrap();
//! let cod = ProductSpace::new(kind.clone(), vec![v.clone(), v.clone()]).unwrap();
//! let dom = ProductSpace::new(kind, vec![v.clone(), v]).unwrap();
//! let t = TensorMap::random(HomSpace::new(cod, dom).unwrap(), 42);
//!
//! let p = t.permute(&[1, 0], &[3, 2]).unwrap();
//! assert!((p.norm() - t.norm()).abs() < 1e-12);
//! let (u, s, vh, report) = t.svd(&[0, 1], &[2, 3], TruncationScheme::MaxTotalDim(4.0)).unwrap();
//! assert!(report.total_dim() <= 4.0);
//! let approx = u.compose(&s).unwrap().compose(&vh).unwrap();
//! assert!(t.sub(&approx).unwrap().norm() <= report.truncation_error + 1e-12);
//! ```

pub mod error;
pub mod sector;
pub mod zoo;

pub use error::{Result, SymError};
pub use sector::{BraidingStyle, FArray, FusionStyle, Label, RMatrix, SectorDescriptor, C64};
pub use zoo::SectorKind;
pub mod factorizations;
pub mod flops;
pub mod fusion_trees;
pub mod linalg;
pub mod spaces;
pub mod tensor;

pub use fusion_trees::{FusionTree, PairCoefficientMap, TreeCoefficientMap};
pub use spaces::{GradedSpace, HomSpace, ProductSpace};
pub use tensor::{ncon, DenseTensor, TensorMap};
pub use factorizations::{PolarSide, SpectrumReport, TruncationScheme};
