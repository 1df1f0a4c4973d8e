use std::io::Write;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One output row. Every value is a string so CSV and JSON lines carry
/// identical content.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub function: String,
    pub args: String,
    pub value: String,
    /// `s1=0` or `s1=1` when the value depends on the `S(1)` convention.
    pub convention: Option<String>,
    /// A second, independently computed value or a diagnostic.
    pub check: Option<String>,
}

impl OutputRecord {
    pub fn new(function: impl Into<String>, args: impl Into<String>, value: impl Into<String>) -> Self {
        Self {
            function: function.into(),
            args: args.into(),
            value: value.into(),
            convention: None,
            check: None,
        }
    }

    pub fn convention(mut self, s1: u64) -> Self {
        self.convention = Some(format!("s1={s1}"));
        self
    }

    pub fn check(mut self, check: impl Into<String>) -> Self {
        self.check = Some(check.into());
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
}

pub enum RecordWriter<W: Write> {
    Csv(csv::Writer<W>),
    Jsonl(W),
}

impl<W: Write> RecordWriter<W> {
    pub fn new(format: Format, out: W) -> Self {
        match format {
            Format::Csv => RecordWriter::Csv(csv::Writer::from_writer(out)),
            Format::Jsonl => RecordWriter::Jsonl(out),
        }
    }

    pub fn write(&mut self, record: &OutputRecord) -> Result<()> {
        match self {
            RecordWriter::Csv(w) => w.serialize(record)?,
            RecordWriter::Jsonl(w) => {
                serde_json::to_writer(&mut *w, record)?;
                w.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<()> {
        match self {
            RecordWriter::Csv(mut w) => w.flush()?,
            RecordWriter::Jsonl(mut w) => w.flush()?,
        }
        Ok(())
    }
}

pub fn write_all<W: Write>(format: Format, out: W, records: &[OutputRecord]) -> Result<()> {
    let mut writer = RecordWriter::new(format, out);
    for r in records {
        writer.write(r)?;
    }
    writer.finish()
}

/// Parses output produced by [`write_all`].
pub fn read_all(format: Format, input: &str) -> Result<Vec<OutputRecord>> {
    match format {
        Format::Csv => {
            let mut reader = csv::Reader::from_reader(input.as_bytes());
            Ok(reader.deserialize().collect::<std::result::Result<_, _>>()?)
        }
        Format::Jsonl => input
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| Ok(serde_json::from_str(l)?))
            .collect(),
    }
}
