//! Spectrum files: CSV with header `xi,re,im`, one row per nonzero
//! frequency, frequencies strictly increasing. Absent frequencies are zero.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::spectral::SpectralFunction;

/// Raw rows of a spectrum file, before a grid is chosen.
pub fn read_rows<R: Read>(reader: R) -> Result<Vec<(f64, Complex64)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    let names: Vec<&str> = headers.iter().collect();
    if names != ["xi", "re", "im"] {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header `xi,re,im`, found `{}`", names.join(",")),
        });
    }
    let mut rows = Vec::new();
    let mut last: Option<f64> = None;
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map(|p| p.line()).unwrap_or(0),
            message: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected 3 fields, found {}", record.len()),
            });
        }
        let field = |k: usize| -> Result<f64> {
            record[k].parse::<f64>().map_err(|e| Error::Parse {
                line,
                message: format!("field {} (`{}`): {e}", k + 1, &record[k]),
            })
        };
        let (xi, re, im) = (field(0)?, field(1)?, field(2)?);
        if !(xi.is_finite() && re.is_finite() && im.is_finite()) {
            return Err(Error::Parse {
                line,
                message: "non-finite value".into(),
            });
        }
        if let Some(prev) = last {
            if xi <= prev {
                return Err(Error::Parse {
                    line,
                    message: format!("frequencies must be strictly increasing ({xi} after {prev})"),
                });
            }
        }
        last = Some(xi);
        rows.push((xi, Complex64::new(re, im)));
    }
    Ok(rows)
}

/// Places parsed rows on `grid`; every frequency must lie on the lattice.
pub fn rows_to_function(grid: FrequencyGrid, rows: &[(f64, Complex64)]) -> Result<SpectralFunction> {
    let mut entries = Vec::with_capacity(rows.len());
    for (k, &(xi, c)) in rows.iter().enumerate() {
        let j = grid.index_of(xi).ok_or_else(|| Error::Parse {
            line: k as u64 + 2,
            message: format!("frequency {xi} is not on the grid lattice"),
        })?;
        if !grid.contains(j) {
            return Err(Error::Parse {
                line: k as u64 + 2,
                message: format!("frequency {xi} exceeds the grid cutoff {}", grid.cutoff()),
            });
        }
        entries.push((j, c));
    }
    SpectralFunction::from_entries(grid, entries)
}

pub fn read_spectrum<R: Read>(reader: R, grid: FrequencyGrid) -> Result<SpectralFunction> {
    rows_to_function(grid, &read_rows(reader)?)
}

pub fn read_spectrum_file(path: &Path, grid: FrequencyGrid) -> Result<SpectralFunction> {
    read_spectrum(std::fs::File::open(path)?, grid)
}

/// Writes every nonzero coefficient. Values use the shortest round-trip
/// formatting, so reading the file back is bit-exact.
pub fn write_spectrum<W: Write>(writer: W, f: &SpectralFunction) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["xi", "re", "im"]).map_err(io)?;
    for &(j, c) in f.entries() {
        let xi = f.grid().frequency(j);
        w.write_record([xi.to_string(), c.re.to_string(), c.im.to_string()])
            .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_spectrum_file(path: &Path, f: &SpectralFunction) -> Result<()> {
    write_spectrum(std::fs::File::create(path)?, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let g = FrequencyGrid::line(4, 8).unwrap();
        let text = "xi,re,im\n-0.125,0.3,-1e-3\n0,1,0\n2.5,0.1,0.2\n";
        let f = read_spectrum(text.as_bytes(), g).unwrap();
        assert_eq!(f.coeff(-1), Complex64::new(0.3, -1e-3));
        assert_eq!(f.coeff(20), Complex64::new(0.1, 0.2));
        let mut buf = Vec::new();
        write_spectrum(&mut buf, &f).unwrap();
        assert_eq!(read_spectrum(buf.as_slice(), g).unwrap(), f);
    }

    #[test]
    fn reports_line_numbers() {
        let g = FrequencyGrid::torus(8).unwrap();
        let err = read_spectrum("xi,re,im\n0,1,0\n2,x,0\n".as_bytes(), g).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = read_spectrum("xi,re,im\n1,1,0\n1,1,0\n".as_bytes(), g).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = read_spectrum("freq,re,im\n".as_bytes(), g).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = read_spectrum("xi,re,im\n0.5,1,0\n".as_bytes(), g).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = read_spectrum("xi,re,im\n9,1,0\n".as_bytes(), g).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
