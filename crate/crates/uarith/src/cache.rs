//! Binary table cache.
//!
//! Layout: magic "UARF", format version u16, kind tag u16, N u64,
//! value_kind u8 (0 int / 1 real / 2 complex), then N values little-endian
//! (i64, f64 or f64 pairs). Files are written temp-then-rename so partial
//! writes never land under the final name.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::functions::{build_classical, Kind};
use crate::table::{FunctionTable, ValueKind, Values};

pub const MAGIC: &[u8; 4] = b"UARF";
pub const FORMAT_VERSION: u16 = 1;

/// Canonical cache file name, addressed by (kind, N, format version).
pub fn file_name(kind: Kind, n: usize) -> String {
    format!(
        "{}_N{}_v{}.uarf",
        kind.label().replace('^', "p"),
        n,
        FORMAT_VERSION
    )
}

pub fn write_table(path: &Path, kind: Kind, table: &FunctionTable) -> Result<()> {
    let tmp = path.with_extension("uarf.tmp");
    {
        let mut w = BufWriter::new(File::create(&tmp)?);
        w.write_all(MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&kind.tag().to_le_bytes())?;
        w.write_all(&(table.len() as u64).to_le_bytes())?;
        let vk = match table.kind() {
            ValueKind::ExactInt => 0u8,
            ValueKind::Real => 1,
            ValueKind::Complex => 2,
        };
        w.write_all(&[vk])?;
        match table.values() {
            Values::Int(v) => {
                for x in v {
                    w.write_all(&x.to_le_bytes())?;
                }
            }
            Values::Real(v) => {
                for x in v {
                    w.write_all(&x.to_le_bytes())?;
                }
            }
            Values::Complex(v) => {
                for z in v {
                    w.write_all(&z.re.to_le_bytes())?;
                    w.write_all(&z.im.to_le_bytes())?;
                }
            }
        }
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_table(path: &Path) -> Result<(Kind, FunctionTable)> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format(format!("bad magic in {}", path.display())));
    }
    let mut b2 = [0u8; 2];
    r.read_exact(&mut b2)?;
    let version = u16::from_le_bytes(b2);
    if version != FORMAT_VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    r.read_exact(&mut b2)?;
    let tag = u16::from_le_bytes(b2);
    let kind = Kind::from_tag(tag)
        .ok_or_else(|| Error::Format(format!("unknown kind tag {tag}")))?;
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8)?;
    let n = u64::from_le_bytes(b8) as usize;
    let mut b1 = [0u8; 1];
    r.read_exact(&mut b1)?;
    let table = match b1[0] {
        0 => {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                r.read_exact(&mut b8)?;
                v.push(i64::from_le_bytes(b8));
            }
            FunctionTable::from_int(kind.label(), v)
        }
        1 => {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                r.read_exact(&mut b8)?;
                v.push(f64::from_le_bytes(b8));
            }
            FunctionTable::from_real(kind.label(), v)?
        }
        2 => {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                r.read_exact(&mut b8)?;
                let re = f64::from_le_bytes(b8);
                r.read_exact(&mut b8)?;
                v.push(Complex64::new(re, f64::from_le_bytes(b8)));
            }
            FunctionTable::from_complex(kind.label(), v)?
        }
        k => return Err(Error::Format(format!("unknown value kind {k}"))),
    };
    Ok((kind, table))
}

/// Build the table, reading it from `cache_dir` when a matching file
/// exists and writing it there otherwise.
pub fn load_or_build(cache_dir: Option<&Path>, kind: Kind, n: usize) -> Result<FunctionTable> {
    let Some(dir) = cache_dir else {
        return build_classical(kind, n);
    };
    let path: PathBuf = dir.join(file_name(kind, n));
    if path.exists() {
        let (k, t) = read_table(&path)?;
        if k == kind && t.len() == n {
            return Ok(t);
        }
    }
    let t = build_classical(kind, n)?;
    fs::create_dir_all(dir)?;
    write_table(&path, kind, &t)?;
    Ok(t)
}
