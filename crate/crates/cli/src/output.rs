use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use crate::commands::CliError;
use crate::OutputArgs;

/// A table written as CSV (to a file or stdout) and optionally as a gnuplot
/// data file.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn write(&self, out: &OutputArgs) -> Result<(), CliError> {
        match &out.out {
            Some(p) => self.write_csv(File::create(p).map_err(|e| io_error(p, e))?)?,
            None => self.write_csv(io::stdout().lock())?,
        }
        if let Some(p) = &out.gnuplot {
            let mut f = File::create(p).map_err(|e| io_error(p, e))?;
            let body = self.gnuplot();
            f.write_all(body.as_bytes()).map_err(|e| io_error(p, e))?;
        }
        Ok(())
    }

    fn write_csv<W: Write>(&self, w: W) -> Result<(), CliError> {
        let mut wtr = csv::Writer::from_writer(w);
        let fail = |e: csv::Error| CliError::Validation(format!("writing CSV: {e}"));
        wtr.write_record(&self.header).map_err(fail)?;
        for r in &self.rows {
            wtr.write_record(r).map_err(fail)?;
        }
        wtr.flush()
            .map_err(|e| CliError::Validation(format!("writing CSV: {e}")))
    }

    fn gnuplot(&self) -> String {
        let mut s = format!("# {}\n", self.header.join(" "));
        for r in &self.rows {
            let cells: Vec<&str> = r
                .iter()
                .map(|c| if c.is_empty() { "NaN" } else { c.as_str() })
                .collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }
}

pub fn io_error(path: &Path, e: io::Error) -> CliError {
    CliError::Validation(format!("{}: {e}", path.display()))
}

pub fn num(x: f64) -> String {
    format!("{x:?}")
}
