//! Radio environment map: spectrum-occupancy observations keyed by grid cell
//! and channel, queried for a least-occupied-first channel list.
//!
//! The on-disk store is an append-only CSV with header
//! `cell_x,cell_y,channel,occupancy,timestamp_s`; opening a store replays
//! it into memory.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::{PoisonError, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::PlanarPoint;

pub const INGEST_HEADER: [&str; 5] = ["cell_x", "cell_y", "channel", "occupancy", "timestamp_s"];
pub const QUERY_HEADER: [&str; 3] = ["channel", "mean_occupancy", "samples"];

pub const DEFAULT_CELL_SIZE_M: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CellId {
    pub x: i64,
    pub y: i64,
}

impl CellId {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// Cell containing `p` on a square grid of side `cell_size_m`.
    pub fn from_position(p: &PlanarPoint, cell_size_m: f64) -> Result<Self> {
        if !(cell_size_m > 0.0 && cell_size_m.is_finite()) {
            return Err(Error::domain(format!(
                "cell size must be positive, got {cell_size_m}"
            )));
        }
        if !p.is_finite() {
            return Err(Error::domain("position must be finite"));
        }
        Ok(Self {
            x: (p.x_m / cell_size_m).floor() as i64,
            y: (p.y_m / cell_size_m).floor() as i64,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemRecord {
    pub cell: CellId,
    pub channel: u32,
    pub occupancy: f64,
    pub timestamp_s: f64,
}

impl RemRecord {
    pub fn is_valid(&self) -> bool {
        (0.0..=1.0).contains(&self.occupancy)
            && self.timestamp_s >= 0.0
            && self.timestamp_s.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelPriority {
    pub channel: u32,
    pub mean_occupancy: f64,
    pub samples: usize,
}

/// Ascending by mean occupancy, then by channel index.
pub type ChannelPriorityList = Vec<ChannelPriority>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct IngestOutcome {
    pub accepted: usize,
    pub skipped: usize,
}

/// In-memory occupancy index.
#[derive(Debug, Default, Clone)]
pub struct RemStore {
    samples: BTreeMap<(CellId, u32), Vec<f64>>,
}

impl RemStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.samples.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Appends valid records; invalid ones are counted and skipped.
    pub fn ingest<I>(&mut self, records: I) -> IngestOutcome
    where
        I: IntoIterator<Item = RemRecord>,
    {
        let mut out = IngestOutcome::default();
        for r in records {
            if r.is_valid() {
                self.samples
                    .entry((r.cell, r.channel))
                    .or_default()
                    .push(r.occupancy);
                out.accepted += 1;
            } else {
                out.skipped += 1;
            }
        }
        out
    }

    pub fn cells(&self) -> Vec<CellId> {
        let mut cells: Vec<CellId> = self.samples.keys().map(|(c, _)| *c).collect();
        cells.dedup();
        cells
    }

    /// Per-channel mean occupancy over the given cells.
    pub fn prioritized_channels(&self, cells: &[CellId]) -> ChannelPriorityList {
        let mut per_channel: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
        for ((cell, ch), occ) in &self.samples {
            if cells.contains(cell) {
                per_channel.entry(*ch).or_default().extend_from_slice(occ);
            }
        }
        rank(per_channel)
    }

    pub fn prioritized_channels_all(&self) -> ChannelPriorityList {
        let mut per_channel: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
        for ((_, ch), occ) in &self.samples {
            per_channel.entry(*ch).or_default().extend_from_slice(occ);
        }
        rank(per_channel)
    }
}

fn rank(per_channel: BTreeMap<u32, Vec<f64>>) -> ChannelPriorityList {
    let mut out: Vec<ChannelPriority> = per_channel
        .into_iter()
        .map(|(channel, mut occ)| {
            // Summing in sorted order makes the mean independent of ingest order.
            occ.sort_by(f64::total_cmp);
            let n = occ.len();
            ChannelPriority {
                channel,
                mean_occupancy: occ.iter().sum::<f64>() / n as f64,
                samples: n,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.mean_occupancy
            .total_cmp(&b.mean_occupancy)
            .then(a.channel.cmp(&b.channel))
    });
    out
}

/// Parses ingest CSV. Rows that parse but violate record ranges are
/// returned too; [`RemStore::ingest`] filters them. Structural problems
/// (wrong header, wrong column count, unparsable numbers) abort with the
/// offending line.
pub fn parse_records<R: Read>(reader: R, source_name: &str) -> Result<Vec<RemRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(reader);
    let malformed = |line: u64, message: String| Error::Malformed {
        source_name: source_name.to_string(),
        line,
        message,
    };
    let headers = rdr
        .headers()
        .map_err(|e| malformed(1, e.to_string()))?
        .clone();
    if headers.iter().ne(INGEST_HEADER.iter().copied()) {
        return Err(malformed(
            1,
            format!("expected header `{}`", INGEST_HEADER.join(",")),
        ));
    }
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |i: usize| row.get(i).unwrap_or("").trim();
        let bad = |i: usize| {
            malformed(
                line,
                format!("cannot parse {} `{}`", INGEST_HEADER[i], field(i)),
            )
        };
        let x: i64 = field(0).parse().map_err(|_| bad(0))?;
        let y: i64 = field(1).parse().map_err(|_| bad(1))?;
        let channel: u32 = field(2).parse().map_err(|_| bad(2))?;
        let occupancy: f64 = field(3).parse().map_err(|_| bad(3))?;
        let timestamp_s: f64 = field(4).parse().map_err(|_| bad(4))?;
        out.push(RemRecord {
            cell: CellId::new(x, y),
            channel,
            occupancy,
            timestamp_s,
        });
    }
    Ok(out)
}

fn record_line(r: &RemRecord) -> String {
    format!(
        "{},{},{},{},{}\n",
        r.cell.x, r.cell.y, r.channel, r.occupancy, r.timestamp_s
    )
}

/// Writes a priority list as CSV with the query header. Floats use
/// [`crate::format::sig6`].
pub fn write_priority_csv<W: Write>(mut w: W, list: &[ChannelPriority]) -> std::io::Result<()> {
    writeln!(w, "{}", QUERY_HEADER.join(","))?;
    for p in list {
        writeln!(
            w,
            "{},{},{}",
            p.channel,
            crate::format::sig6(p.mean_occupancy),
            p.samples
        )?;
    }
    Ok(())
}

/// A file-backed store. Readers share the index; ingestion takes the write
/// lock for the whole batch, so a reader never sees half a batch.
#[derive(Debug)]
pub struct RemDatabase {
    path: PathBuf,
    store: RwLock<RemStore>,
}

impl RemDatabase {
    /// Opens (or creates) the CSV store at `path` and replays it.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut store = RemStore::new();
        if path.exists() {
            let file = std::fs::File::open(&path).map_err(|e| Error::io(&path, e))?;
            let records = parse_records(file, &path.display().to_string())?;
            store.ingest(records);
        } else {
            let mut f = OpenOptions::new()
                .create_new(true)
                .write(true)
                .open(&path)
                .map_err(|e| Error::io(&path, e))?;
            writeln!(f, "{}", INGEST_HEADER.join(",")).map_err(|e| Error::io(&path, e))?;
        }
        Ok(Self {
            path,
            store: RwLock::new(store),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Validates a batch, appends the accepted records to disk, then
    /// publishes them to readers.
    pub fn ingest(&self, records: Vec<RemRecord>) -> Result<IngestOutcome> {
        let mut guard = self.store.write().unwrap_or_else(PoisonError::into_inner);
        let (valid, invalid): (Vec<_>, Vec<_>) = records.into_iter().partition(RemRecord::is_valid);
        let text: String = valid.iter().map(record_line).collect();
        let mut f = OpenOptions::new()
            .append(true)
            .open(&self.path)
            .map_err(|e| Error::io(&self.path, e))?;
        f.write_all(text.as_bytes())
            .and_then(|_| f.flush())
            .map_err(|e| Error::io(&self.path, e))?;
        let mut out = guard.ingest(valid);
        out.skipped += invalid.len();
        Ok(out)
    }

    pub fn ingest_csv<R: Read>(&self, reader: R, source_name: &str) -> Result<IngestOutcome> {
        let records = parse_records(reader, source_name)?;
        self.ingest(records)
    }

    pub fn prioritized_channels(&self, cells: Option<&[CellId]>) -> ChannelPriorityList {
        let guard = self.store.read().unwrap_or_else(PoisonError::into_inner);
        match cells {
            Some(c) => guard.prioritized_channels(c),
            None => guard.prioritized_channels_all(),
        }
    }

    pub fn len(&self) -> usize {
        self.store
            .read()
            .unwrap_or_else(PoisonError::into_inner)
            .len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
