//! Concrete indexed categories over finite sets and the lens categories they
//! produce: dependent lenses, classic lenses, prisms and coslices.
//!
//! Slice objects are stored as families of fibers rather than as bundle maps
//! so that reindexing is functorial on the nose; [`bundle_to_family`] and
//! [`family_to_bundle`] translate between the two forms.

mod classic;
mod coslice;
mod deplens;
mod prism;
mod slice;

pub use classic::{
    check_classic_embedding, classic_lens_category, embed_classic, embed_classic_mor,
    embedding_functor, ClassicLensCategory, ClassicLensMor, ClassicLensOb, EmbeddingReport,
};
pub use coslice::{check_twisted_iso, coslice_indexed, Coslice, CosliceMor};
pub use deplens::{check_dep_interchange, composable_pairs, DepLens};
pub use prism::{check_prism_direct, prism_category, InterfaceLabels, PrismCategory, PrismMor};
pub use slice::{
    bundle_to_family, check_adjoint_triple, dep_prod, dep_sum, families_up_to, family_homs,
    family_to_bundle, prod_transpose, prod_untranspose, pullback_coherent, slice_indexed,
    slice_indexed_with, sum_transpose, sum_untranspose, tensor_families, tensor_maps,
    FiberFamily, SliceFiber, SliceIndexed, SliceLaxator,
};
