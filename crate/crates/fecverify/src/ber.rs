//! Parallel BER curves on top of [`Simulator::run_with`].

use std::str::FromStr;

use fecverify_core::sim::{BerRow, SimCode, Simulator, Tally};
use rayon::prelude::*;

use crate::error::{HarnessError, Result};

/// Frame length used for `conv75` when none is given.
pub const DEFAULT_CONV_INFO_BITS: usize = 64;

/// `uncoded`, `hamming74`, `conv75` or `conv75:N` with `N` information bits per frame.
pub fn parse_code(s: &str) -> Result<SimCode> {
    let bad = || HarnessError::UnknownCode(s.to_string());
    match s.split_once(':') {
        None => match s {
            "uncoded" => Ok(SimCode::Uncoded),
            "hamming74" => Ok(SimCode::Hamming74),
            "conv75" => Ok(SimCode::Conv75 {
                info_bits: DEFAULT_CONV_INFO_BITS,
            }),
            _ => Err(bad()),
        },
        Some(("conv75", n)) => Ok(SimCode::Conv75 {
            info_bits: usize::from_str(n).map_err(|_| bad())?,
        }),
        _ => Err(bad()),
    }
}

/// Every batch's trials evaluated across the pool and summed. Tallies are
/// integer counts, so the result does not depend on the width.
pub fn run_parallel(sim: &Simulator, threads: usize) -> Result<Vec<BerRow>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    Ok(pool.install(|| {
        sim.run_with(|s, point, range| {
            range
                .into_par_iter()
                .map(|t| s.trial(point, t))
                .reduce(Tally::default, Tally::merge)
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fecverify_core::sim::{ChannelKind, SimConfig};

    #[test]
    fn code_names() {
        assert_eq!(parse_code("conv75:16").unwrap(), SimCode::Conv75 { info_bits: 16 });
        assert_eq!(parse_code("uncoded").unwrap(), SimCode::Uncoded);
        assert!(parse_code("golay").is_err());
        assert!(parse_code("conv75:x").is_err());
    }

    #[test]
    fn parallel_equals_serial() {
        let cfg = SimConfig::new(ChannelKind::Bsc, SimCode::Hamming74, vec![0.02, 0.1], 5000, 3);
        let sim = Simulator::new(cfg).unwrap();
        let serial = sim.run();
        assert_eq!(run_parallel(&sim, 3).unwrap(), serial);
    }
}
