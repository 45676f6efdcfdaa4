//! CSV readers and writers. Floats are written with 17 significant digits so
//! a read-back reproduces them bit for bit; `#` lines are comments.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use ss_asymptotics::scattering::{InitialProfile, ReflectionTable, Row2};

use crate::error::{CliError, Result};

pub const PROFILE_HEADER: [&str; 3] = ["x", "re_u0", "im_u0"];
pub const REFLECTION_HEADER: [&str; 6] = [
    "k",
    "re_rho1",
    "im_rho1",
    "re_rho2",
    "im_rho2",
    "rho_norm_sq",
];
pub const CURVE_HEADER: [&str; 6] = ["t", "x", "zeta", "re_u_as", "im_u_as", "abs_u_leading"];
pub const SNAPSHOT_HEADER: [&str; 4] = ["t", "x", "re_u", "im_u"];
pub const COMPARISON_HEADER: [&str; 6] = [
    "t",
    "zeta",
    "x",
    "abs_u_num",
    "abs_u_as_over_sqrt_t",
    "abs_err",
];
pub const MODELCHECK_HEADER: [&str; 3] = ["nu", "r", "jump_residual"];
pub const SIGNATURE_HEADER: [&str; 3] = ["re_k", "im_k", "sign"];

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_err(path: &Path, msg: impl Into<String>) -> CliError {
    CliError::Csv {
        path: path.to_path_buf(),
        msg: msg.into(),
    }
}

/// Rows of a numeric CSV with exactly the given header.
fn read_table<R: Read>(reader: R, path: &Path, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let found = rdr
        .headers()
        .map_err(|e| csv_err(path, e.to_string()))?
        .clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(csv_err(
            path,
            format!(
                "expected header {}, got {}",
                header.join(","),
                found.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }
    let mut rows = vec![];
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| csv_err(path, e.to_string()))?;
        let row = rec
            .iter()
            .map(|f| match f.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(csv_err(
                    path,
                    format!("data row {}: bad number {f:?}", i + 1),
                )),
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Parses a `x,re_u0,im_u0` profile on a uniform grid.
pub fn parse_profile<R: Read>(reader: R, path: &Path, decay_tol: f64) -> Result<InitialProfile> {
    let rows = read_table(reader, path, &PROFILE_HEADER)?;
    let x: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let u: Vec<Complex64> = rows.iter().map(|r| Complex64::new(r[1], r[2])).collect();
    Ok(InitialProfile::from_samples(&x, u, decay_tol)?)
}

pub fn read_profile(path: &Path, decay_tol: f64) -> Result<InitialProfile> {
    let f = File::open(path).map_err(|e| CliError::io(path, e))?;
    parse_profile(f, path, decay_tol)
}

/// Parses a reflection table; the `rho_norm_sq` column must agree with the
/// ρ columns.
pub fn parse_reflection<R: Read>(reader: R, path: &Path) -> Result<ReflectionTable> {
    let rows = read_table(reader, path, &REFLECTION_HEADER)?;
    let mut k = Vec::with_capacity(rows.len());
    let mut rho = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let v = Row2::new(Complex64::new(r[1], r[2]), Complex64::new(r[3], r[4]));
        let n = v.norm_squared();
        if (n - r[5]).abs() > 1e-12 * (1.0 + n) {
            return Err(csv_err(
                path,
                format!("data row {}: rho_norm_sq {} != {n}", i + 1, r[5]),
            ));
        }
        k.push(r[0]);
        rho.push(v);
    }
    Ok(ReflectionTable::new(k, rho)?)
}

pub fn read_reflection(path: &Path) -> Result<ReflectionTable> {
    let f = File::open(path).map_err(|e| CliError::io(path, e))?;
    parse_reflection(f, path)
}

/// A CSV file with an optional `#` comment block above the header.
pub struct CsvOut {
    path: PathBuf,
    w: csv::Writer<BufWriter<File>>,
}

impl CsvOut {
    pub fn create(path: &Path, comments: &[String], header: &[&str]) -> Result<Self> {
        let io = |e| CliError::io(path, e);
        let mut buf = BufWriter::new(File::create(path).map_err(io)?);
        for c in comments {
            writeln!(buf, "# {c}").map_err(io)?;
        }
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(header)
            .map_err(|e| csv_err(path, e.to_string()))?;
        Ok(Self {
            path: path.to_path_buf(),
            w,
        })
    }

    pub fn row(&mut self, values: &[f64]) -> Result<()> {
        let rec: Vec<String> = values.iter().map(|&v| fmt_f64(v)).collect();
        self.w
            .write_record(&rec)
            .map_err(|e| csv_err(&self.path, e.to_string()))
    }

    pub fn finish(mut self) -> Result<()> {
        self.w.flush().map_err(|e| CliError::io(&self.path, e))
    }
}

pub fn write_profile(path: &Path, profile: &InitialProfile) -> Result<()> {
    let mut out = CsvOut::create(path, &[], &PROFILE_HEADER)?;
    for (x, u) in profile.abscissae().iter().zip(profile.samples()) {
        out.row(&[*x, u.re, u.im])?;
    }
    out.finish()
}

pub fn write_reflection(path: &Path, table: &ReflectionTable, comments: &[String]) -> Result<()> {
    let mut out = CsvOut::create(path, comments, &REFLECTION_HEADER)?;
    for (k, r) in table.k_nodes().iter().zip(table.rho()) {
        out.row(&[*k, r[0].re, r[0].im, r[1].re, r[1].im, r.norm_squared()])?;
    }
    out.finish()
}
