use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;
use std::thread;

use hjplumb::cfrac::CfString;
use hjplumb::lisca::{
    fillings_with_euler, min_filling_euler, two_replaceable_witnesses, LensSpace,
};
use hjplumb::zerostrings::ZeroString;

use crate::CliError;

pub const HEADER: &str = "p,q,dual,min_euler,witness,form,one_replaceable";

/// Largest `--pmax` the census accepts.
pub const PMAX_CAP: i64 = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub p: i64,
    pub q: i64,
    pub dual: CfString,
    pub min_euler: i64,
    /// Zero string of a filling with the requested Euler characteristic.
    pub witness: Option<ZeroString>,
    pub form: Option<u8>,
    pub one_replaceable: bool,
}

impl CensusRow {
    pub fn compute(lens: &LensSpace, k: i64) -> Result<Self, CliError> {
        let (witness, form) = if k == 2 {
            match two_replaceable_witnesses(lens)?.into_iter().next() {
                Some(w) => (Some(w.zero_string), Some(w.form.number())),
                None => (None, None),
            }
        } else {
            let w = fillings_with_euler(lens, k).into_iter().next();
            (w.map(|f| f.zero_string), None)
        };
        let min_euler = min_filling_euler(lens);
        Ok(CensusRow {
            p: lens.p(),
            q: lens.q(),
            dual: lens.dual_string(),
            min_euler,
            witness,
            form,
            one_replaceable: min_euler == 1,
        })
    }
}

impl fmt::Display for CensusRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{},{}",
            self.p,
            self.q,
            self.dual.join("-"),
            self.min_euler,
            self.witness
                .as_ref()
                .map(|z| z.as_cf().join("-"))
                .unwrap_or_default(),
            self.form.map(|x| x.to_string()).unwrap_or_default(),
            u8::from(self.one_replaceable)
        )
    }
}

impl FromStr for CensusRow {
    type Err = CliError;

    fn from_str(line: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("malformed census row: {line}"));
        let fields: Vec<&str> = line.trim_end().split(',').collect();
        let [p, q, dual, min_euler, witness, form, one] = fields[..] else {
            return Err(bad());
        };
        let int = |s: &str| s.parse::<i64>().map_err(|_| bad());
        let string = |s: &str| -> Result<Vec<i64>, CliError> { s.split('-').map(int).collect() };
        let witness = match witness {
            "" => None,
            w => Some(ZeroString::new(CfString::new(string(w)?))?),
        };
        Ok(CensusRow {
            p: int(p)?,
            q: int(q)?,
            dual: CfString::new(string(dual)?),
            min_euler: int(min_euler)?,
            witness,
            form: match form {
                "" => None,
                f => Some(f.parse().map_err(|_| bad())?),
            },
            one_replaceable: match one {
                "0" => false,
                "1" => true,
                _ => return Err(bad()),
            },
        })
    }
}

fn lens_spaces(pmax: i64) -> Vec<LensSpace> {
    (2..=pmax)
        .flat_map(|p| (1..p).filter_map(move |q| LensSpace::new(p, q).ok()))
        .collect()
}

/// Every row for `2 <= p <= pmax`, ordered by `(p, q)`.
pub fn census(pmax: i64, k: i64, jobs: usize) -> Result<Vec<CensusRow>, CliError> {
    if !(2..=PMAX_CAP).contains(&pmax) {
        return Err(CliError::Usage(format!(
            "--pmax must lie in 2..={PMAX_CAP}, got {pmax}"
        )));
    }
    let all = lens_spaces(pmax);
    let jobs = jobs.max(1);
    let chunks: Vec<Vec<LensSpace>> = (0..jobs)
        .map(|j| all.iter().skip(j).step_by(jobs).copied().collect())
        .collect();
    let mut rows = thread::scope(|s| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                s.spawn(move || {
                    chunk
                        .iter()
                        .map(|l| CensusRow::compute(l, k))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("census worker panicked"))
            .collect::<Result<Vec<_>, _>>()
    })?;
    rows.sort_by_key(|r| (r.p, r.q));
    Ok(rows)
}

/// Writes the CSV, removing the file again if anything fails.
pub fn write_csv(path: &Path, rows: &[CensusRow]) -> Result<(), CliError> {
    let write = || -> std::io::Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "{HEADER}")?;
        for r in rows {
            writeln!(w, "{r}")?;
        }
        w.flush()
    };
    write().map_err(|source| {
        let _ = std::fs::remove_file(path);
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_round_trip() {
        for r in census(30, 2, 3).unwrap() {
            assert_eq!(r.to_string().parse::<CensusRow>().unwrap(), r);
        }
    }

    #[test]
    fn seed_row() {
        let r = CensusRow::compute(&LensSpace::new(45, 26).unwrap(), 2).unwrap();
        assert_eq!(r.to_string(), "45,26,3-2-3-2-3,2,3-1-3-1-3,3,0");
    }

    #[test]
    fn worker_count_does_not_change_output() {
        assert_eq!(census(40, 2, 1).unwrap(), census(40, 2, 4).unwrap());
    }
}
