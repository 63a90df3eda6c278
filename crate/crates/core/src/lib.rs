//! Exact-arithmetic workbench for character tables, Kronecker coefficients,
//! and induced multiplicities of finite groups.

pub mod error;
pub mod perm;
pub mod group;
pub mod families;
pub mod embed;
pub mod cyclotomic;
pub mod chartab;
pub mod scan;
pub mod mult;
pub mod stats;
pub mod symmetric;
pub mod tableio;
pub mod verify;

pub use chartab::{character_table, CharacterTable};
pub use cyclotomic::Cyclotomic;
pub use embed::{class_fusion, embed, embed_in_square, ClassFusion, SubgroupEmbedding, SubgroupPair};
pub use error::{ConsistencyError, Error, GroupError, MultError, ParseError, VerifyError};
pub use families::{group_from_generator_lines, Family};
pub use group::{ConjugacyClass, FiniteGroup, DEFAULT_ELEMENT_CAP};
pub use mult::{
    a_from_centralizers, epsilon, induced_matrix, induced_max, induced_sum_squares, kron_analysis,
    kron_refined_max, kron_symmetry_check, kronecker, lr_rhs, InducedMatrix, Kron, KronCube,
    KronStats, KRON_CUBE_CAP,
};
pub use perm::Permutation;
pub use scan::ScanTable;
pub use stats::{group_stats, GroupStats};
pub use symmetric::{
    hardy_ramanujan, hook_degree, involution_count, partition_count, partitions,
    sn_character_table, sn_degree_stats, vk_window, Partition, SnStats, SN_STATS_CAP,
    SN_TABLE_CAP,
};
pub use tableio::{
    parse_class_data, parse_table, read_class_data, read_table, write_class_data, write_table,
    write_table_file, ClassData,
};
pub use verify::{
    battery_core, counterexample_scan, exit_code, monster_report, run_suite, to_csv, to_json,
    to_text, CheckResult, SuiteCounts, SuiteReport, Verdict, CHECK_NAMES,
};
