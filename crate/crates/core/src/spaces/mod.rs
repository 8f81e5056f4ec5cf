//! Finitely presented points of Baire space and operations on streams.

mod descriptor;
mod stream;

pub use descriptor::{DescriptorError, Partial, SeqDescriptor, Tail};
pub(crate) use descriptor::split_fields;
pub use stream::{
    finite_project, name_at_stage, pair_literals, pair_streams, project, stream_get,
    tuple_streams, unpair_literal, ConvergingName, Family, StreamView,
};
