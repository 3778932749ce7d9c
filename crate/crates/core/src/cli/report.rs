//! Result of one run, printable as plain text or JSON.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::exactlin::Int;
use crate::geometry::Hyperplane;

/// An integer written as a JSON number when it fits in 64 bits and as a
/// decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct JsonInt(pub Int);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(x) => s.serialize_i64(x),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, x: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(Int::from(x)))
            }
            fn visit_u64<E: de::Error>(self, x: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(Int::from(x)))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<JsonInt, E> {
                Int::from_str(s).map(JsonInt).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

pub fn json_ints(v: &[Int]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneOut {
    pub normal: Vec<JsonInt>,
    pub offset: JsonInt,
}

impl From<&Hyperplane> for HyperplaneOut {
    fn from(h: &Hyperplane) -> Self {
        HyperplaneOut {
            normal: json_ints(&h.normal),
            offset: JsonInt(h.offset.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichOut {
    pub volume_inner: String,
    pub volume_outer: String,
    pub ratio: String,
    pub threshold: String,
    pub outer_vertices: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsOut {
    pub oracle_calls: u64,
    pub init_calls: u64,
    pub calls_after_init: u64,
    /// Number of vertices plus number of facets.
    pub call_bound: u64,
    pub cache_enabled: bool,
    pub cache_entries: usize,
    pub minor_hits: u64,
    pub minor_misses: u64,
    pub cache_clears: u64,
    pub predicate_micros: u64,
    pub wall_micros: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub mode: String,
    pub n: usize,
    /// Number of Cayley points after preprocessing.
    pub points: usize,
    /// `(support, point)` for each projection coordinate.
    pub coordinates: Vec<(usize, usize)>,
    /// Specialized points dropped by preprocessing, as `(support, point)`.
    pub removed: Vec<(usize, usize)>,
    pub dimension: usize,
    pub resultant_dimension: i64,
    pub vertices: Vec<Vec<JsonInt>>,
    pub facets: Vec<HyperplaneOut>,
    /// Equations of the affine hull when it is not the whole space.
    pub affine_hull: Vec<HyperplaneOut>,
    pub volume: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_vector: Option<Vec<usize>>,
    /// Full exponent vectors over all Cayley points, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unprojected: Option<Vec<Vec<JsonInt>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sandwich: Option<SandwichOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsOut>,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn join_json(v: &[JsonInt]) -> String {
    v.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(" ")
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_plain(&self) -> String {
        let mut o = String::new();
        let coords: Vec<String> = self.coordinates.iter().map(|(b, p)| format!("{b}:{p}")).collect();
        let _ = writeln!(o, "mode {}", self.mode);
        let _ = writeln!(o, "coordinates {}", coords.join(" "));
        if !self.removed.is_empty() {
            let r: Vec<String> = self.removed.iter().map(|(b, p)| format!("{b}:{p}")).collect();
            let _ = writeln!(o, "removed {}", r.join(" "));
        }
        let _ = writeln!(
            o,
            "dimension {} (ambient {}, resultant polytope {})",
            self.dimension,
            self.coordinates.len(),
            self.resultant_dimension
        );
        let _ = writeln!(o, "vertices {}", self.vertices.len());
        for v in &self.vertices {
            let _ = writeln!(o, "  {}", join_json(v));
        }
        let _ = writeln!(o, "facets {}", self.facets.len());
        for h in &self.facets {
            let _ = writeln!(o, "  {} <= {}", join_json(&h.normal), h.offset.0);
        }
        if !self.affine_hull.is_empty() {
            let _ = writeln!(o, "affine hull {}", self.affine_hull.len());
            for h in &self.affine_hull {
                let _ = writeln!(o, "  {} = {}", join_json(&h.normal), h.offset.0);
            }
        }
        let _ = writeln!(o, "volume {}", self.volume);
        if let Some(fv) = &self.f_vector {
            let _ = writeln!(o, "f-vector {}", join(fv));
        }
        if let Some(full) = &self.unprojected {
            let _ = writeln!(o, "unprojected {}", full.len());
            for v in full {
                let _ = writeln!(o, "  {}", join_json(v));
            }
        }
        if let Some(note) = &self.note {
            let _ = writeln!(o, "note {note}");
        }
        if let Some(s) = &self.sandwich {
            let _ = writeln!(
                o,
                "sandwich inner {} outer {} ratio {} threshold {}",
                s.volume_inner, s.volume_outer, s.ratio, s.threshold
            );
            let _ = writeln!(o, "outer vertices {}", s.outer_vertices.len());
            for v in &s.outer_vertices {
                let _ = writeln!(o, "  {}", v.join(" "));
            }
        }
        if let Some(s) = &self.stats {
            let _ = writeln!(
                o,
                "stats oracle calls {} (init {}, after init {}, bound {})",
                s.oracle_calls, s.init_calls, s.calls_after_init, s.call_bound
            );
            let _ = writeln!(
                o,
                "stats minors cached {} hits {} misses {} clears {} (cache {})",
                s.cache_entries,
                s.minor_hits,
                s.minor_misses,
                s.cache_clears,
                if s.cache_enabled { "on" } else { "off" }
            );
            let _ = writeln!(
                o,
                "stats predicate time {} us, wall time {} us",
                s.predicate_micros, s.wall_micros
            );
        }
        o
    }
}
