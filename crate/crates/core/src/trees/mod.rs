//! Local trees `T_p` of lattice classes and the separation algorithm.

pub mod lattice;
pub mod separate;

pub use lattice::{bfs_distance, local_class, tree_distance, GL2QElement, LatticeClass, QMat, ZMat};
pub use separate::{
    bad_directions, exact_j_zero_test, j_vanishes_at, j_vanishes_numerically, separate, witness_point,
    SeparationWitness,
};
