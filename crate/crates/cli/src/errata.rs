//! The frozen list of chain-classifier disagreements (`S(1) = 0`, `n ≤ 10⁴`).

use std::io::Write;

use kempner::moebius::SClosedErratum;
use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const FROZEN_LIMIT: u64 = 10_000;

const FROZEN_CSV: &str = include_str!("../data/s_closed_errata_s1_0_n10000.csv");

#[derive(Serialize, Deserialize)]
struct Row {
    n: u64,
    closed: i64,
    inversion: i64,
}

pub fn frozen_s_closed() -> Result<Vec<SClosedErratum>> {
    read_errata(FROZEN_CSV)
}

pub fn read_errata(csv_text: &str) -> Result<Vec<SClosedErratum>> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    reader
        .deserialize::<Row>()
        .map(|row| {
            let Row { n, closed, inversion } = row?;
            Ok(SClosedErratum { n, closed, inversion })
        })
        .collect()
}

pub fn write_errata<W: Write>(out: W, errata: &[SClosedErratum]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for e in errata {
        writer.serialize(Row {
            n: e.n,
            closed: e.closed,
            inversion: e.inversion,
        })?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_list_parses_and_round_trips() {
        let list = frozen_s_closed().unwrap();
        assert_eq!(list.len(), 662);
        assert!(list.windows(2).all(|w| w[0].n < w[1].n));
        let mut buf = Vec::new();
        write_errata(&mut buf, &list).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), FROZEN_CSV);
    }
}
