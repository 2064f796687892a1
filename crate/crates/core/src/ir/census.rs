use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Circuit, Gate, GateKind, IrError};
use crate::cost::CostModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CensusKey {
    /// Z rotation with k ≥ 3 controls.
    Mcrz(usize),
    /// X with k ≥ 3 controls.
    Mcx(usize),
    Ccrz,
    Ccx,
    Rccx,
    Crz,
    Cx,
    Cz,
    Cy,
    /// CS and CS† together.
    Cs,
}

impl CensusKey {
    pub fn of(g: &Gate) -> Option<CensusKey> {
        Some(match g.kind() {
            GateKind::Mcrz => CensusKey::Mcrz(g.num_controls()),
            GateKind::Mcx => CensusKey::Mcx(g.num_controls()),
            GateKind::Ccrz => CensusKey::Ccrz,
            GateKind::Ccx => CensusKey::Ccx,
            GateKind::Rccx => CensusKey::Rccx,
            GateKind::Crz => CensusKey::Crz,
            GateKind::Cx => CensusKey::Cx,
            GateKind::Cz => CensusKey::Cz,
            GateKind::Cy => CensusKey::Cy,
            GateKind::Cs | GateKind::Csdg => CensusKey::Cs,
            _ => return None,
        })
    }

    /// CX cost of one gate under this key.
    pub fn cx_cost(self, model: &CostModel) -> usize {
        match self {
            CensusKey::Mcrz(k) => model.gate(GateKind::Mcrz, k),
            CensusKey::Mcx(k) => model.gate(GateKind::Mcx, k),
            CensusKey::Ccrz => model.gate(GateKind::Ccrz, 2),
            CensusKey::Ccx => model.gate(GateKind::Ccx, 2),
            CensusKey::Rccx => model.gate(GateKind::Rccx, 2),
            CensusKey::Crz => model.gate(GateKind::Crz, 1),
            CensusKey::Cx => 1,
            CensusKey::Cz => 1,
            CensusKey::Cy => 1,
            CensusKey::Cs => model.gate(GateKind::Cs, 1),
        }
    }
}

impl fmt::Display for CensusKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusKey::Mcrz(k) => write!(f, "C{k}RZ"),
            CensusKey::Mcx(k) => write!(f, "C{k}X"),
            CensusKey::Ccrz => f.write_str("CCRZ"),
            CensusKey::Ccx => f.write_str("CCX"),
            CensusKey::Rccx => f.write_str("RCCX"),
            CensusKey::Crz => f.write_str("CRZ"),
            CensusKey::Cx => f.write_str("CX"),
            CensusKey::Cz => f.write_str("CZ"),
            CensusKey::Cy => f.write_str("CY"),
            CensusKey::Cs => f.write_str("CS"),
        }
    }
}

impl FromStr for CensusKey {
    type Err = IrError;

    fn from_str(s: &str) -> Result<CensusKey, IrError> {
        let fixed = match s {
            "CCRZ" => Some(CensusKey::Ccrz),
            "CCX" => Some(CensusKey::Ccx),
            "RCCX" => Some(CensusKey::Rccx),
            "CRZ" => Some(CensusKey::Crz),
            "CX" => Some(CensusKey::Cx),
            "CZ" => Some(CensusKey::Cz),
            "CY" => Some(CensusKey::Cy),
            "CS" => Some(CensusKey::Cs),
            _ => None,
        };
        if let Some(k) = fixed {
            return Ok(k);
        }
        let unknown = || IrError::UnknownCensusKey(s.to_string());
        let body = s.strip_prefix('C').ok_or_else(unknown)?;
        let (digits, make): (&str, fn(usize) -> CensusKey) =
            if let Some(d) = body.strip_suffix("RZ") {
                (d, CensusKey::Mcrz)
            } else if let Some(d) = body.strip_suffix('X') {
                (d, CensusKey::Mcx)
            } else {
                return Err(unknown());
            };
        match digits.parse::<usize>() {
            Ok(k) if k >= 3 && !digits.starts_with('0') => Ok(make(k)),
            _ => Err(unknown()),
        }
    }
}

/// Entangling-gate counts by key. Zero counts are never stored, so two
/// censuses compare equal iff every count matches.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GateCensus {
    counts: BTreeMap<CensusKey, usize>,
}

impl GateCensus {
    pub fn of(c: &Circuit) -> GateCensus {
        let mut census = GateCensus::default();
        for key in c.gates().iter().filter_map(CensusKey::of) {
            *census.counts.entry(key).or_insert(0) += 1;
        }
        census
    }

    pub fn from_counts(pairs: impl IntoIterator<Item = (CensusKey, usize)>) -> GateCensus {
        let mut census = GateCensus::default();
        for (k, v) in pairs {
            if v > 0 {
                *census.counts.entry(k).or_insert(0) += v;
            }
        }
        census
    }

    pub fn get(&self, key: CensusKey) -> usize {
        self.counts.get(&key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (CensusKey, usize)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// CX count after lowering every gate with its fixed decomposition.
    pub fn total_cx_after_naive_lowering(&self) -> usize {
        self.naive_cx(&CostModel)
    }

    pub fn naive_cx(&self, model: &CostModel) -> usize {
        self.iter().map(|(k, v)| k.cx_cost(model) * v).sum()
    }
}

impl Add for GateCensus {
    type Output = GateCensus;
    fn add(mut self, rhs: GateCensus) -> GateCensus {
        self += rhs;
        self
    }
}

impl AddAssign for GateCensus {
    fn add_assign(&mut self, rhs: GateCensus) {
        for (k, v) in rhs.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
    }
}

impl Serialize for GateCensus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.iter().map(|(k, v)| (k.to_string(), v)))
    }
}

impl<'de> Deserialize<'de> for GateCensus {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<GateCensus, D::Error> {
        let raw = BTreeMap::<String, usize>::deserialize(d)?;
        let mut pairs = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            pairs.push((k.parse::<CensusKey>().map_err(D::Error::custom)?, v));
        }
        Ok(GateCensus::from_counts(pairs))
    }
}

impl fmt::Display for GateCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
