use std::fmt;

use num_bigint::BigUint;

/// A single change to a maintained instance, or a query.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ChangeOp {
    InsE(usize, usize),
    DelE(usize, usize),
    IncK,
    DecK,
    /// Replace profit and weight of a knapsack item.
    SetItem {
        item: usize,
        profit: BigUint,
        weight: BigUint,
    },
    SetB(BigUint),
    SetT(BigUint),
    /// Toggle bit `bit` (0 = least significant) of coordinate `dim` of point `point`.
    FlipBit {
        point: usize,
        dim: usize,
        bit: usize,
    },
    Enable(usize),
    Disable(usize),
    /// Define string `index` of a closest-string instance.
    SetString(usize, String),
    Query,
}

impl ChangeOp {
    /// Short tag used in benchmark output.
    pub fn kind(&self) -> &'static str {
        match self {
            ChangeOp::InsE(..) => "ins",
            ChangeOp::DelE(..) => "del",
            ChangeOp::IncK => "k+",
            ChangeOp::DecK => "k-",
            ChangeOp::SetItem { .. } => "setitem",
            ChangeOp::SetB(_) => "setB",
            ChangeOp::SetT(_) => "setT",
            ChangeOp::FlipBit { .. } => "flip",
            ChangeOp::Enable(_) => "enable",
            ChangeOp::Disable(_) => "disable",
            ChangeOp::SetString(..) => "str",
            ChangeOp::Query => "query",
        }
    }
}

/// Formats the op as a line of the change-script language.
impl fmt::Display for ChangeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChangeOp::InsE(u, v) => write!(f, "ins {u} {v}"),
            ChangeOp::DelE(u, v) => write!(f, "del {u} {v}"),
            ChangeOp::IncK => f.write_str("k+"),
            ChangeOp::DecK => f.write_str("k-"),
            ChangeOp::SetItem {
                item,
                profit,
                weight,
            } => write!(f, "setitem {item} {profit} {weight}"),
            ChangeOp::SetB(b) => write!(f, "setB {b}"),
            ChangeOp::SetT(t) => write!(f, "setT {t}"),
            ChangeOp::FlipBit { point, dim, bit } => write!(f, "flip {point} {dim} {bit}"),
            ChangeOp::Enable(i) => write!(f, "enable {i}"),
            ChangeOp::Disable(i) => write!(f, "disable {i}"),
            ChangeOp::SetString(i, s) => write!(f, "str {i} {s}"),
            ChangeOp::Query => f.write_str("query"),
        }
    }
}
