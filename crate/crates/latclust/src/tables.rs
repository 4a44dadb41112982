//! CSV tables: the distance cache `id1,id2,num,den` and the error curve
//! `iteration,rse,root_sum_sq`.

use latclust_core::{Distance, PatternId};
use serde::{Deserialize, Serialize};

use crate::FormatError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceRow {
    pub id1: u32,
    pub id2: u32,
    pub num: u64,
    pub den: u64,
}

impl DistanceRow {
    pub fn new(a: PatternId, b: PatternId, d: Distance) -> Self {
        DistanceRow { id1: a.0, id2: b.0, num: d.ratio().numer(), den: d.ratio().denom() }
    }

    pub fn distance(&self) -> Result<Distance, FormatError> {
        Distance::new(self.num, self.den)
            .ok_or_else(|| FormatError::Invalid(format!("{}/{} is not a distance in [0, 1]", self.num, self.den)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub iteration: u64,
    pub rse: f64,
    pub root_sum_sq: f64,
}

pub(crate) fn write_rows<T: Serialize>(rows: &[T], header: &[&str]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

fn read_rows<T: for<'de> Deserialize<'de>>(text: &str, header: &[&str]) -> Result<Vec<T>, FormatError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    if r.headers()?.iter().ne(header.iter().copied()) {
        return Err(FormatError::Invalid(format!("expected header {}", header.join(","))));
    }
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

const DISTANCE_HEADER: [&str; 4] = ["id1", "id2", "num", "den"];
const CURVE_HEADER: [&str; 3] = ["iteration", "rse", "root_sum_sq"];

pub fn write_distances(rows: &[DistanceRow]) -> String {
    write_rows(rows, &DISTANCE_HEADER)
}

pub fn parse_distances(text: &str) -> Result<Vec<DistanceRow>, FormatError> {
    let rows: Vec<DistanceRow> = read_rows(text, &DISTANCE_HEADER)?;
    for r in &rows {
        r.distance()?;
    }
    Ok(rows)
}

pub fn write_curve(points: &[CurvePoint]) -> String {
    write_rows(points, &CURVE_HEADER)
}

pub fn parse_curve(text: &str) -> Result<Vec<CurvePoint>, FormatError> {
    read_rows(text, &CURVE_HEADER)
}
