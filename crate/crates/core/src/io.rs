//! On-disk formats: the `QMH1` binary matrix file and the benchmark CSV.
//!
//! `QMH1` layout, all little-endian:
//!
//! ```text
//! b"QMH1" | n: u64 | A[n*n] f64 | B[n*n] f64 | C[n*n] f64 | D[n*n] f64
//! ```
//!
//! Planes are row-major and the file is exactly `12 + 32 n^2` bytes.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::flops::FlopCounter;
use crate::invert::AlgorithmId;
use crate::matrix::{QuatMatrix, RealMatrix};
use crate::model::BenchmarkRecord;

pub const QMAT_MAGIC: &[u8; 4] = b"QMH1";
const HEADER_LEN: usize = 12;

/// Byte length of a `QMH1` file holding an `n x n` matrix, if it fits in
/// `usize`.
pub fn qmat_len(n: u64) -> Option<usize> {
    let n = usize::try_from(n).ok()?;
    n.checked_mul(n)?.checked_mul(32)?.checked_add(HEADER_LEN)
}

pub fn encode_qmat(z: &QuatMatrix) -> Result<Vec<u8>> {
    if !z.is_square() {
        return Err(Error::NotSquare { op: "QMH1 encode", rows: z.rows(), cols: z.cols() });
    }
    let n = z.rows();
    let mut out = Vec::with_capacity(HEADER_LEN + 32 * n * n);
    out.extend_from_slice(QMAT_MAGIC);
    out.extend_from_slice(&(n as u64).to_le_bytes());
    for plane in z.planes() {
        for v in plane.data() {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    Ok(out)
}

pub fn decode_qmat(bytes: &[u8]) -> Result<QuatMatrix> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Format(format!("QMH1 file too short: {} bytes", bytes.len())));
    }
    if &bytes[..4] != QMAT_MAGIC {
        return Err(Error::Format(format!("bad magic {:?}, expected \"QMH1\"", &bytes[..4])));
    }
    let n = u64::from_le_bytes(bytes[4..12].try_into().expect("8 bytes"));
    let expected = qmat_len(n).ok_or_else(|| Error::Format(format!("matrix size {n} is too large")))?;
    if bytes.len() != expected {
        return Err(Error::Format(format!(
            "QMH1 payload for n = {n} must be {expected} bytes, found {}",
            bytes.len()
        )));
    }
    let n = n as usize;
    let body = &bytes[HEADER_LEN..];
    let plane_bytes = 8 * n * n;
    let planes: Vec<RealMatrix> = body
        .chunks_exact(plane_bytes.max(1))
        .take(4)
        .map(|chunk| {
            let data = chunk.chunks_exact(8).map(|b| f64::from_le_bytes(b.try_into().expect("8 bytes"))).collect();
            RealMatrix::new(n, n, data).expect("chunk holds n*n values")
        })
        .collect();
    if n == 0 {
        return Ok(QuatMatrix::zeros(0, 0));
    }
    let [a, b, c, d]: [RealMatrix; 4] = planes.try_into().expect("four planes");
    QuatMatrix::new(a, b, c, d)
}

pub fn read_qmat(path: impl AsRef<Path>) -> Result<QuatMatrix> {
    let mut bytes = Vec::new();
    fs::File::open(path)?.read_to_end(&mut bytes)?;
    decode_qmat(&bytes)
}

pub fn write_qmat(path: impl AsRef<Path>, z: &QuatMatrix) -> Result<()> {
    let bytes = encode_qmat(z)?;
    fs::File::create(path)?.write_all(&bytes)?;
    Ok(())
}

/// Column names of the benchmark CSV, in order.
pub const CSV_HEADER: [&str; 9] =
    ["alg", "n", "trial", "seed", "wall_time_s", "residual", "real_mults", "real_adds", "real_divs"];

/// Writes the header and one row per record. Floats use the shortest
/// representation that parses back to the same bits; failed rows carry
/// `NaN` as the residual.
pub fn write_csv<W: Write>(out: W, records: &[BenchmarkRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for r in records {
        write_csv_row(&mut w, r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv_row<W: Write>(w: &mut csv::Writer<W>, r: &BenchmarkRecord) -> Result<()> {
    w.write_record([
        r.algorithm.code().to_string(),
        r.n.to_string(),
        r.trial.to_string(),
        r.seed.to_string(),
        r.wall_time.to_string(),
        r.residual.to_string(),
        r.flops.real_mults.to_string(),
        r.flops.real_adds.to_string(),
        r.flops.real_divs.to_string(),
    ])
    .map_err(csv_error)
}

/// Row-at-a-time CSV writer for long sweeps; the header goes out on
/// construction.
pub struct CsvSink<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(out: W) -> Result<Self> {
        let mut inner = csv::Writer::from_writer(out);
        inner.write_record(CSV_HEADER).map_err(csv_error)?;
        Ok(Self { inner })
    }

    /// Writes and flushes one row, so a partial sweep is still readable.
    pub fn write(&mut self, record: &BenchmarkRecord) -> Result<()> {
        write_csv_row(&mut self.inner, record)?;
        self.inner.flush()?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<W> {
        self.inner.flush()?;
        self.inner.into_inner().map_err(|e| Error::Io(e.into_error()))
    }
}

/// Parses a benchmark CSV. The header must match [`CSV_HEADER`] exactly.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchmarkRecord>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = rd.headers().map_err(csv_error)?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Format(format!("unexpected CSV header `{}`", header.iter().collect::<Vec<_>>().join(","))));
    }
    let mut records = Vec::new();
    for (line, row) in rd.records().enumerate() {
        let row = row.map_err(csv_error)?;
        records.push(parse_row(&row).map_err(|e| Error::Format(format!("row {}: {e}", line + 1)))?);
    }
    Ok(records)
}

fn parse_row(row: &csv::StringRecord) -> std::result::Result<BenchmarkRecord, String> {
    if row.len() != CSV_HEADER.len() {
        return Err(format!("expected {} fields, found {}", CSV_HEADER.len(), row.len()));
    }
    fn field<T: std::str::FromStr>(row: &csv::StringRecord, i: usize) -> std::result::Result<T, String> {
        row[i].trim().parse().map_err(|_| format!("bad {} `{}`", CSV_HEADER[i], &row[i]))
    }
    let code: u8 = field(row, 0)?;
    let algorithm = AlgorithmId::from_code(code).map_err(|e| e.to_string())?;
    let wall_time: f64 = field(row, 4)?;
    let residual: f64 = field(row, 5)?;
    if !(wall_time >= 0.0) {
        return Err(format!("wall time must be nonnegative, found {wall_time}"));
    }
    if residual < 0.0 {
        return Err(format!("residual must be nonnegative, found {residual}"));
    }
    let mut flops = FlopCounter::new();
    flops.real_mults = field(row, 6)?;
    flops.real_adds = field(row, 7)?;
    flops.real_divs = field(row, 8)?;
    Ok(BenchmarkRecord {
        algorithm,
        n: field(row, 1)?,
        trial: field(row, 2)?,
        seed: field(row, 3)?,
        wall_time,
        residual,
        flops,
        failure: residual.is_nan().then(|| "failed".to_owned()),
    })
}

fn csv_error(e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            _ => unreachable!("checked is_io_error"),
        }
    } else {
        Error::Format(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::gen_random;

    #[test]
    fn qmat_round_trip_is_bit_exact() {
        for n in [0usize, 1, 3, 8] {
            let mut z = gen_random(n.max(1), n as u64);
            if n == 0 {
                z = QuatMatrix::zeros(0, 0);
            }
            let bytes = encode_qmat(&z).unwrap();
            assert_eq!(bytes.len(), 12 + 32 * n * n);
            assert!(decode_qmat(&bytes).unwrap().bit_eq(&z));
        }
    }

    #[test]
    fn qmat_layout() {
        let mut z = QuatMatrix::zeros(1, 1);
        z.set(0, 0, crate::Quaternion::new(1.0, 2.0, 3.0, 4.0));
        let bytes = encode_qmat(&z).unwrap();
        assert_eq!(&bytes[..4], b"QMH1");
        assert_eq!(&bytes[4..12], &[1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(&bytes[12..20], &1.0f64.to_le_bytes());
        assert_eq!(&bytes[36..44], &4.0f64.to_le_bytes());
    }

    #[test]
    fn qmat_rejects_malformed_input() {
        let good = encode_qmat(&gen_random(2, 1)).unwrap();
        let mut bad_magic = good.clone();
        bad_magic[0] = b'X';
        assert!(matches!(decode_qmat(&bad_magic), Err(Error::Format(_))));
        for cut in [0, 5, 11, 12, good.len() - 1] {
            assert!(matches!(decode_qmat(&good[..cut]), Err(Error::Format(_))), "cut {cut}");
        }
        let mut long = good.clone();
        long.push(0);
        assert!(decode_qmat(&long).is_err());
        let mut huge = b"QMH1".to_vec();
        huge.extend_from_slice(&u64::MAX.to_le_bytes());
        assert!(decode_qmat(&huge).is_err());
        assert!(encode_qmat(&QuatMatrix::zeros(2, 3)).is_err());
    }

    fn sample() -> Vec<BenchmarkRecord> {
        let mut flops = FlopCounter::new();
        flops.real_mults = 123;
        flops.real_adds = 456;
        flops.real_divs = 7;
        vec![
            BenchmarkRecord {
                algorithm: AlgorithmId::RealFrobenius,
                n: 64,
                trial: 3,
                seed: u64::MAX,
                wall_time: 0.1 + 0.2,
                residual: 1.234_567_890_123e-15,
                flops,
                failure: None,
            },
            BenchmarkRecord {
                algorithm: AlgorithmId::QtfmRecursive,
                n: 2,
                trial: 0,
                seed: 1,
                wall_time: 1e-6,
                residual: f64::NAN,
                flops: FlopCounter::new(),
                failure: Some("not generic".into()),
            },
        ]
    }

    #[test]
    fn csv_round_trip() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &sample()).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("alg,n,trial,seed,wall_time_s,residual,real_mults,real_adds,real_divs\n"));
        let back = read_csv(buf.as_slice()).unwrap();
        let orig = sample();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].wall_time.to_bits(), orig[0].wall_time.to_bits());
        assert_eq!(back[0].residual.to_bits(), orig[0].residual.to_bits());
        assert_eq!(back[0].seed, u64::MAX);
        assert_eq!(back[0].flops.total(), 123 + 456 + 7);
        assert!(back[1].is_failure());

        let mut sink = CsvSink::new(Vec::new()).unwrap();
        for r in &orig {
            sink.write(r).unwrap();
        }
        assert_eq!(sink.finish().unwrap(), buf);
    }

    #[test]
    fn csv_rejects_malformed_input() {
        assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
        let h = CSV_HEADER.join(",");
        for row in ["9,2,0,1,0.1,0,0,0,0", "1,2,0,1,0.1,0,0,0", "1,x,0,1,0.1,0,0,0,0", "1,2,0,1,-1,0,0,0,0"] {
            assert!(read_csv(format!("{h}\n{row}\n").as_bytes()).is_err(), "{row}");
        }
        assert!(read_csv(format!("{h}\n").as_bytes()).unwrap().is_empty());
    }
}
