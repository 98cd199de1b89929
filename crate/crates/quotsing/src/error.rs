use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not special linear: generator weights {weights:?} sum to {sum} != 0 mod {order}")]
    NotSpecialLinear {
        weights: Vec<i64>,
        sum: i64,
        order: u64,
    },
    #[error("generator order must be positive")]
    NonPositiveOrder,
    #[error("group closure exceeds the order bound {bound}")]
    GroupTooLarge { bound: u64 },
    #[error("enumeration box of {points} lattice points exceeds the bound {bound}")]
    BoxTooLarge { points: u128, bound: u128 },
    #[error("monomial {0:?} is not invariant")]
    NotInvariant(Vec<u32>),
    #[error("weight mismatch between module and element")]
    WeightMismatch,
    #[error("coordinate set {0:?} is not closed under the stabilizer correspondence")]
    NotClosed(Vec<usize>),
    #[error("character subset must be nonempty")]
    EmptySubset,
    #[error("oracle scale exceeded: requires |G| <= {max_order} and degree <= {max_degree}")]
    ScaleExceeded { max_order: u64, max_degree: u32 },
    #[error("per-monomial consistency check failed at {monomial:?}: {live} live blocks, expected {expected}")]
    CenterConsistency {
        monomial: Vec<u32>,
        live: usize,
        expected: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for bad input, 3 for resource bounds,
    /// 1 for a failed mathematical check.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::MalformedInput(_)
            | Error::DimensionMismatch { .. }
            | Error::NotSpecialLinear { .. }
            | Error::NonPositiveOrder
            | Error::NotInvariant(_)
            | Error::WeightMismatch
            | Error::NotClosed(_)
            | Error::EmptySubset => 2,
            Error::GroupTooLarge { .. }
            | Error::BoxTooLarge { .. }
            | Error::ScaleExceeded { .. } => 3,
            Error::CenterConsistency { .. } => 1,
        }
    }
}

/// Resource bounds shared by the enumeration routines. All of them are
/// overridable from the CLI.
#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    /// Largest allowed group order when closing a generating set.
    pub max_group_order: u64,
    /// Largest allowed lattice-point count for a box enumeration.
    pub max_box_points: u128,
    /// Largest group order accepted by the dense center oracle.
    pub oracle_max_order: u64,
    /// Largest degree accepted by the dense center oracle.
    pub oracle_max_degree: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_group_order: 10_000,
            max_box_points: 100_000_000,
            oracle_max_order: 6,
            oracle_max_degree: 6,
        }
    }
}
