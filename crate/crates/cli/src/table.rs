//! Sweep rows, the CSV contract and number formatting.

use std::io::{Read, Write};

use fredkin_zeno::Model;

use crate::error::{CliError, Result};

pub const CSV_HEADER: [&str; 8] = [
    "model",
    "kappa_over_g",
    "gamma_over_g",
    "omega_over_g",
    "delta_over_g",
    "t_gate_g",
    "fidelity",
    "success_probability",
];

/// Rounds to `digits` significant digits and prints the shortest decimal
/// that parses back to the rounded value.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("scientific notation round-trips");
    format!("{rounded}")
}

/// Fixed-point with `digits` significant digits, for human reports.
pub fn format_human(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub model: Model,
    pub kappa_over_g: f64,
    pub gamma_over_g: f64,
    pub omega_over_g: f64,
    /// Empty for the resonant model.
    pub delta_over_g: Option<f64>,
    pub t_gate_g: f64,
    pub fidelity: f64,
    pub success_probability: f64,
}

impl SweepRow {
    fn record(&self) -> [String; 8] {
        const DIGITS: usize = 12;
        [
            self.model.to_string(),
            format_sig(self.kappa_over_g, DIGITS),
            format_sig(self.gamma_over_g, DIGITS),
            format_sig(self.omega_over_g, DIGITS),
            self.delta_over_g.map(|d| format_sig(d, DIGITS)).unwrap_or_default(),
            format_sig(self.t_gate_g, DIGITS),
            format_sig(self.fidelity, DIGITS),
            format_sig(self.success_probability, DIGITS),
        ]
    }
}

pub fn write_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(CliError::CsvRow {
            row: 0,
            message: format!("unexpected header {header:?}"),
        });
    }
    r.records()
        .enumerate()
        .map(|(i, rec)| {
            let rec = rec?;
            let row = i + 1;
            let bad = |message: String| CliError::CsvRow { row, message };
            let num = |k: usize| -> Result<f64> {
                rec[k]
                    .parse()
                    .map_err(|_| bad(format!("{} = `{}` is not a number", CSV_HEADER[k], &rec[k])))
            };
            Ok(SweepRow {
                model: rec[0].parse().map_err(bad)?,
                kappa_over_g: num(1)?,
                gamma_over_g: num(2)?,
                omega_over_g: num(3)?,
                delta_over_g: if rec[4].is_empty() { None } else { Some(num(4)?) },
                t_gate_g: num(5)?,
                fidelity: num(6)?,
                success_probability: num(7)?,
            })
        })
        .collect()
}
