use serde::Serialize;

use super::{GerstenError, TwistTag};

/// One cell `H^i(𝔸^{n+1} ∖ 0, G^j)` with the reasoning that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub i: usize,
    pub value: String,
    pub twist: Option<String>,
    pub notes: Vec<String>,
}

/// Cohomology of `G^j` on punctured `(n+1)`-space via the localization sequence
/// and homotopy invariance; only degrees `0` and `n` survive.
pub fn punctured_table(n: i64, j: i64) -> Result<Vec<TableEntry>, GerstenError> {
    if n < 1 {
        return Err(GerstenError::BadDimension(n));
    }
    let n = n as usize;
    let shift = j - n as i64 - 1;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let entry = if i == 0 {
            TableEntry {
                i,
                value: format!("G^{j}(k)"),
                twist: None,
                notes: vec![
                    "homotopy invariance gives H^0 of affine space as G^j(k)".into(),
                    "a point has codimension n+1 > 1, so restriction to the complement is an isomorphism".into(),
                ],
            }
        } else if i < n {
            TableEntry {
                i,
                value: "0".into(),
                twist: None,
                notes: vec![
                    format!("H^{i} and H^{} of affine space vanish", i + 1),
                    "the origin only contributes in degree n+1".into(),
                ],
            }
        } else {
            let mut value = format!("G̃^{shift}(k)");
            let mut notes = vec![
                "localization: H^n(complement) maps isomorphically onto H^{n+1}_0(affine space)".into(),
                "purity identifies the latter with the twisted group of the point".into(),
                "the residue of xi is a generator".into(),
            ];
            if shift < 0 {
                value.push_str(" = W(k)");
                notes.push("negative degree: the group is the Witt group".into());
            }
            TableEntry { i, value, twist: Some(TwistTag::koszul(1..=n + 1).to_string()), notes }
        };
        out.push(entry);
    }
    Ok(out)
}
