//! Plot-ready CSV output.

use std::io::Write;

use crate::error::{Error, Result};
use crate::wigner::{SagnacReading, WignerGrid};

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Format(format!("{other:?}")),
    }
}

/// One row per sample: `x,p,W` in one dimension, `x1,x2,p1,p2,W` in two.
pub fn write_wigner_csv(w: &WignerGrid, out: impl Write) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    let d = w.ndim();
    let header: Vec<String> = match d {
        1 => vec!["x".into(), "p".into(), "W".into()],
        _ => (1..=d)
            .map(|a| format!("x{a}"))
            .chain((1..=d).map(|a| format!("p{a}")))
            .chain(["W".to_string()])
            .collect(),
    };
    wtr.write_record(&header).map_err(csv_err)?;
    let shape = w.shape();
    let axes: Vec<&[f64]> = (0..d).map(|a| w.xs(a)).chain((0..d).map(|a| w.ps(a))).collect();
    for (flat, value) in w.values().iter().enumerate() {
        let mut rem = flat;
        let mut coords = vec![0.0; 2 * d];
        for a in (0..2 * d).rev() {
            coords[a] = axes[a][rem % shape[a]];
            rem /= shape[a];
        }
        let mut row: Vec<String> = coords.iter().map(|v| v.to_string()).collect();
        row.push(value.to_string());
        wtr.write_record(&row).map_err(csv_err)?;
    }
    wtr.flush()?;
    Ok(())
}

/// `x0,p0,rate,derived_W` rows of a one-axis scan (extra axes as `x0_2`, `p0_2`).
pub fn write_scan_csv(rows: &[(Vec<f64>, Vec<f64>, SagnacReading)], out: impl Write) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    let d = rows.first().map_or(1, |r| r.0.len());
    let mut header = vec!["x0".to_string(), "p0".to_string()];
    for a in 2..=d {
        header.push(format!("x0_{a}"));
        header.push(format!("p0_{a}"));
    }
    header.extend(["rate".to_string(), "derived_W".to_string()]);
    wtr.write_record(&header).map_err(csv_err)?;
    for (x0, p0, reading) in rows {
        let mut row = Vec::with_capacity(header.len());
        for a in 0..d {
            row.push(x0[a].to_string());
            row.push(p0[a].to_string());
        }
        row.push(reading.rate.to_string());
        row.push(reading.derived_w.to_string());
        wtr.write_record(&row).map_err(csv_err)?;
    }
    wtr.flush()?;
    Ok(())
}
