use std::io;

use serde::{Deserialize, Serialize};

use super::StatsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Choice {
    A,
    B,
}

/// One annotator's judgement on one design pair. `choice` names the design
/// judged less complex (the preferred one).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub pair_id: usize,
    pub design_a: String,
    pub design_b: String,
    pub annotator_id: String,
    pub choice: Choice,
    pub time_a_ms: i64,
    pub time_b_ms: i64,
    pub total_ms: i64,
    /// Milliseconds since the Unix epoch, as reported by the client.
    pub timestamp: u64,
}

pub const RECORD_CSV_HEADER: [&str; 9] = [
    "pair_id",
    "design_a",
    "design_b",
    "annotator_id",
    "choice",
    "time_a_ms",
    "time_b_ms",
    "total_ms",
    "timestamp",
];

impl ComparisonRecord {
    pub fn chosen(&self) -> &str {
        match self.choice {
            Choice::A => &self.design_a,
            Choice::B => &self.design_b,
        }
    }

    pub fn rejected(&self) -> &str {
        match self.choice {
            Choice::A => &self.design_b,
            Choice::B => &self.design_a,
        }
    }

    /// Order-independent key of the compared pair.
    pub fn pair_key(&self) -> (&str, &str) {
        if self.design_a <= self.design_b {
            (&self.design_a, &self.design_b)
        } else {
            (&self.design_b, &self.design_a)
        }
    }

    pub fn validate(&self) -> Result<(), StatsError> {
        if self.design_a == self.design_b {
            return Err(StatsError::InvalidRecord(format!(
                "design_a and design_b are both `{}`",
                self.design_a
            )));
        }
        for (name, t) in [
            ("time_a_ms", self.time_a_ms),
            ("time_b_ms", self.time_b_ms),
            ("total_ms", self.total_ms),
        ] {
            if t < 0 {
                return Err(StatsError::InvalidRecord(format!("{name} is negative ({t})")));
            }
        }
        Ok(())
    }
}

/// Reads annotation CSV; the header row must match [`RECORD_CSV_HEADER`].
pub fn read_records_csv<R: io::Read>(reader: R) -> Result<Vec<ComparisonRecord>, StatsError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.iter().ne(RECORD_CSV_HEADER) {
        return Err(StatsError::Csv(format!(
            "expected header `{}`, found `{}`",
            RECORD_CSV_HEADER.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = Vec::new();
    for row in rdr.deserialize() {
        let record: ComparisonRecord = row?;
        record.validate()?;
        out.push(record);
    }
    Ok(out)
}

pub fn write_records_csv<W: io::Write>(
    writer: W,
    records: &[ComparisonRecord],
) -> Result<(), StatsError> {
    let mut w = csv::Writer::from_writer(writer);
    if records.is_empty() {
        w.write_record(RECORD_CSV_HEADER)?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| StatsError::Csv(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(choice: Choice) -> ComparisonRecord {
        ComparisonRecord {
            pair_id: 3,
            design_a: "x".into(),
            design_b: "y, z".into(),
            annotator_id: "ann1".into(),
            choice,
            time_a_ms: 1200,
            time_b_ms: 800,
            total_ms: 2500,
            timestamp: 1_700_000_000_000,
        }
    }

    #[test]
    fn csv_round_trip() {
        let records = vec![record(Choice::A), record(Choice::B)];
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &records).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(&RECORD_CSV_HEADER.join(",")));
        assert_eq!(read_records_csv(buf.as_slice()).unwrap(), records);
    }

    #[test]
    fn header_is_required() {
        let err = read_records_csv("1,a,b,x,A,1,1,2,0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, StatsError::Csv(_)));
        assert!(read_records_csv("".as_bytes()).is_err());
        let header_only = format!("{}\n", RECORD_CSV_HEADER.join(","));
        assert_eq!(read_records_csv(header_only.as_bytes()).unwrap(), vec![]);
    }

    #[test]
    fn invalid_rows_are_rejected() {
        let h = RECORD_CSV_HEADER.join(",");
        let neg = format!("{h}\n1,a,b,x,A,-1,1,2,0\n");
        assert!(matches!(read_records_csv(neg.as_bytes()), Err(StatsError::InvalidRecord(_))));
        let same = format!("{h}\n1,a,a,x,A,1,1,2,0\n");
        assert!(matches!(read_records_csv(same.as_bytes()), Err(StatsError::InvalidRecord(_))));
        let bad_choice = format!("{h}\n1,a,b,x,C,1,1,2,0\n");
        assert!(matches!(read_records_csv(bad_choice.as_bytes()), Err(StatsError::Csv(_))));
    }

    #[test]
    fn chosen_and_key() {
        let r = record(Choice::B);
        assert_eq!(r.chosen(), "y, z");
        assert_eq!(r.rejected(), "x");
        assert_eq!(r.pair_key(), ("x", "y, z"));
    }
}
