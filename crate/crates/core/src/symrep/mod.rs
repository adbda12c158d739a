//! Representation theory of S_n: partitions, hook-length dimensions,
//! Murnaghan-Nakayama characters, Young's orthogonal form, the
//! unbalanced-diagram family Lambda_c and empirical character-decay reports.

mod audit;
mod characters;
mod partition;
mod yor;

pub use audit::{
    lambda_c_audit, lambda_c_membership, roichman_report, support, LambdaCAudit, LambdaCConfig, RoichmanRow,
};
pub use characters::{class_size, mn_character, sn_character_table};
pub use partition::{dimension, partition_count, partitions, partitions_capped, Partition, DEFAULT_PARTITION_CAP};
pub use yor::{standard_tableaux, yor_matrices, YoungOrthogonal, DEFAULT_YOR_DIM_CAP};
