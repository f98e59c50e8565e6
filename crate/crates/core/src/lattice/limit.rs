use super::{evaluate, CellKind, LatticeSpec, Method};
use crate::algebra::{limit_at_infinity, Scalar};
use crate::error::{Error, Result};

/// `lim (Π v_k) Z` with the variables of `labels` sent to infinity one at a
/// time: `labels[0]` is the outermost limit, the last label the innermost.
/// Each step is an exact interpolation using the crossing structure for its
/// denominator. Lines carrying two limit variables may not interact.
pub fn sequential_limit(spec: &LatticeSpec, labels: &[&str], method: Method) -> Result<Scalar> {
    check_independent(spec, labels)?;
    limit_rec(spec, labels, method)
}

fn limit_rec(spec: &LatticeSpec, labels: &[&str], method: Method) -> Result<Scalar> {
    let Some((first, rest)) = labels.split_first() else {
        return Ok(evaluate(spec, method)?.value);
    };
    let roots = spec.denominator_roots(first)?;
    limit_at_infinity(|v| limit_rec(&spec.with_label_value(first, v), rest, method), &roots)
}

fn check_independent(spec: &LatticeSpec, labels: &[&str]) -> Result<()> {
    let hit = |l: &Option<String>| l.as_deref().is_some_and(|l| labels.contains(&l));
    for (r, row) in spec.rows.iter().enumerate() {
        for (c, col) in spec.cols.iter().enumerate() {
            let interacting = matches!(spec.cell_kind(r, c), CellKind::Std | CellKind::Down);
            if interacting && hit(&row.label) && hit(&col.label) {
                return Err(Error::Invalid(format!(
                    "limit variables {:?} and {:?} cross at row {r}, column {c}",
                    row.label.as_deref().unwrap(),
                    col.label.as_deref().unwrap()
                )));
            }
        }
    }
    Ok(())
}
