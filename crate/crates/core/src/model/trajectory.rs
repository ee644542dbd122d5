use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub t: f64,
    pub s: u64,
    pub i: u64,
    pub r: u64,
}

impl Record {
    pub fn total(&self) -> u64 {
        self.s + self.i + self.r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    Infection,
    Recovery,
    Birth,
    DeathS,
    DeathI,
    DeathR,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub t: f64,
    pub kind: EventKind,
}

/// Time-stamped `(S, I, R)` path of one run, read as a right-continuous step
/// function of time.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub records: Vec<Record>,
    pub events: Option<Vec<Event>>,
}

impl Trajectory {
    pub fn new(with_events: bool) -> Self {
        Self {
            records: Vec::new(),
            events: with_events.then(Vec::new),
        }
    }

    pub fn from_records(records: Vec<Record>) -> Self {
        Self {
            records,
            events: None,
        }
    }

    /// Appends a record. A record at the same time as the last one replaces it,
    /// which keeps times strictly increasing when events coincide.
    pub fn push(&mut self, t: f64, s: u64, i: u64, r: u64) {
        let rec = Record { t, s, i, r };
        match self.records.last_mut() {
            Some(last) if last.t == t => *last = rec,
            _ => self.records.push(rec),
        }
    }

    pub fn log(&mut self, t: f64, kind: EventKind) {
        if let Some(events) = self.events.as_mut() {
            events.push(Event { t, kind });
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn first(&self) -> Option<&Record> {
        self.records.first()
    }

    pub fn last(&self) -> Option<&Record> {
        self.records.last()
    }

    /// State in force at time `t` (the last record with time `<= t`).
    pub fn state_at(&self, t: f64) -> Option<&Record> {
        let idx = self.records.partition_point(|r| r.t <= t);
        idx.checked_sub(1).map(|k| &self.records[k])
    }

    /// True when record times are strictly increasing.
    pub fn times_increasing(&self) -> bool {
        self.records.windows(2).all(|w| w[0].t < w[1].t)
    }

    /// Time average of `f(record)` over `[from, to]`, treating the path as a
    /// step function.
    pub fn time_average<F: Fn(&Record) -> f64>(&self, from: f64, to: f64, f: F) -> Option<f64> {
        if to <= from || self.records.is_empty() || self.records[0].t > from {
            return None;
        }
        let start = self.records.partition_point(|r| r.t <= from) - 1;
        let mut acc = 0.0;
        for (k, rec) in self.records.iter().enumerate().skip(start) {
            let a = rec.t.max(from);
            if a >= to {
                break;
            }
            let b = self.records.get(k + 1).map_or(to, |next| next.t.min(to));
            acc += f(rec) * (b - a);
        }
        Some(acc / (to - from))
    }
}
