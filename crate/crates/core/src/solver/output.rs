use std::io::Write;

use super::{ConvergenceRow, Field};
use crate::error::Result;
use crate::powerlaw::format_plain;
use crate::scalar::Scalar;

/// `t,x,u,reference,abs_error`, row-major in t then x. Values use the
/// shortest round-trip decimal; missing reference columns are empty.
pub fn write_field_csv<T: Scalar, W: Write>(field: &Field<T>, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["t", "x", "u", "reference", "abs_error"])?;
    for (n, row) in field.u.iter().enumerate() {
        for (i, &u) in row.iter().enumerate() {
            let (r, e) = match &field.reference {
                Some(r) => {
                    let r = r[n][i];
                    (
                        format_plain(r.as_f64()),
                        format_plain((u - r).abs().as_f64()),
                    )
                }
                None => (String::new(), String::new()),
            };
            out.write_record([
                format_plain(field.t[n].as_f64()),
                format_plain(field.x[i].as_f64()),
                format_plain(u.as_f64()),
                r,
                e,
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// `nt,nx,max_error,l2_error,observed_order`; the last order is empty.
pub fn write_convergence_csv<T: Scalar, W: Write>(rows: &[ConvergenceRow<T>], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["nt", "nx", "max_error", "l2_error", "observed_order"])?;
    for r in rows {
        out.write_record([
            r.nt.to_string(),
            r.nx.to_string(),
            format_plain(r.max_error.as_f64()),
            format_plain(r.l2_error.as_f64()),
            r.observed_order
                .map(|o| format_plain(o.as_f64()))
                .unwrap_or_default(),
        ])?;
    }
    out.flush()?;
    Ok(())
}
