//! Family files: a header line `n k l`, then one vector per line.
//! Blank lines and lines starting with `#` are ignored.

use std::io::{BufRead, Write};

use signfam_core::{Profile, SignedVector, VectorFamily};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing `n k l` header")]
    MissingHeader,
}

fn parse_err(line: usize, message: impl ToString) -> FileError {
    FileError::Parse {
        line,
        message: message.to_string(),
    }
}

pub fn read_family<R: BufRead>(reader: R) -> Result<VectorFamily, FileError> {
    let mut profile: Option<Profile> = None;
    let mut members = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        match profile {
            None => {
                let nums: Vec<usize> = text
                    .split_whitespace()
                    .map(str::parse)
                    .collect::<Result<_, _>>()
                    .map_err(|e| parse_err(i + 1, e))?;
                let [n, k, l] = nums[..] else {
                    return Err(parse_err(i + 1, "header must be `n k l`"));
                };
                profile = Some(Profile::new(n, k, l).map_err(|e| parse_err(i + 1, e))?);
            }
            Some(p) => {
                let v: SignedVector = text.parse().map_err(|e| parse_err(i + 1, e))?;
                if !v.satisfies(&p) {
                    return Err(parse_err(i + 1, format!("{v} is not in {p}")));
                }
                members.push(v);
            }
        }
    }
    let p = profile.ok_or(FileError::MissingHeader)?;
    VectorFamily::new(p, members).map_err(|e| parse_err(0, e))
}

pub fn write_family<W: Write>(fam: &VectorFamily, mut out: W) -> std::io::Result<()> {
    let p = fam.profile();
    writeln!(out, "{} {} {}", p.n, p.k, p.l)?;
    for v in fam {
        writeln!(out, "{v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use signfam_core::enumerate_all;

    #[test]
    fn round_trip() {
        let fam = enumerate_all(Profile::new(4, 2, 1).unwrap());
        let mut buf = Vec::new();
        write_family(&fam, &mut buf).unwrap();
        assert_eq!(read_family(&buf[..]).unwrap(), fam);
    }

    #[test]
    fn bad_input() {
        assert!(matches!(read_family(&b""[..]), Err(FileError::MissingHeader)));
        assert!(matches!(
            read_family(&b"4 2\n"[..]),
            Err(FileError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_family(&b"4 2 1\n+-+-\n"[..]),
            Err(FileError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_family(&b"# c\n4 2 1\n++x0\n"[..]),
            Err(FileError::Parse { line: 3, .. })
        ));
    }
}
