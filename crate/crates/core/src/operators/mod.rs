//! Collocated operators over (channel x alpha x rho) coefficient space: the
//! kinetic Kronecker-sum factors, the diagonal potential, the evaluation
//! rows and the rearrangement-coupling kernel.

pub mod assembly;
pub mod channels;
pub mod kernel;

pub use assembly::{assemble_k, assemble_t, assemble_v, FullOperator, KernelOp, KineticFactors};
pub use channels::{nd_doublet, recoupling_matrix, wigner_6j, Channel, ChannelSet};
pub use kernel::{jacobi_transform_swave, kernel_matrix_single, kernel_matrix_total};
