use std::fmt;

use num_rational::Ratio;

use crate::codes::PirCode;

/// Storage and communication figures for serving a database of `s` parts
/// of `L` bits through a PIR code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverheadReport {
    pub dimension: usize,
    pub length: usize,
    pub k: usize,
    pub part_len: usize,
    pub database_bits: usize,
    pub coded_bits: usize,
    /// `n / s = (s + r) / s`, reduced.
    pub overhead: Ratio<usize>,
    /// Storage overhead of keeping `k` full replicas.
    pub replication_overhead: usize,
    /// Bits sent to the servers in one session (`n` queries of `L` bits).
    pub upload_bits: usize,
    /// Bits returned in one session (one per server).
    pub download_bits: usize,
}

pub fn overhead_report(code: &PirCode, part_len: usize) -> OverheadReport {
    let s = code.dimension();
    let n = code.length();
    OverheadReport {
        dimension: s,
        length: n,
        k: code.k(),
        part_len,
        database_bits: s * part_len,
        coded_bits: n * part_len,
        overhead: Ratio::new(n, s),
        replication_overhead: code.k(),
        upload_bits: n * part_len,
        download_bits: n,
    }
}

impl fmt::Display for OverheadReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "storage: {} coded bits for {} database bits",
            self.coded_bits, self.database_bits
        )?;
        writeln!(
            f,
            "overhead: {}/{} = {} (replication: {})",
            self.length, self.dimension, self.overhead, self.replication_overhead
        )?;
        write!(
            f,
            "per session: {} bits up, {} bits down",
            self.upload_bits, self.download_bits
        )
    }
}
