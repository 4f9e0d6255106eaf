//! Host and sender nation records and host×sender pair observations.
//!
//! Wages are 2019 monthly manufacturing wages in 2017 PPP dollars and are
//! used without further deflation. Shares are the 2019 secondary-industry
//! share of GDP in percent. Cells that were filled from other survey years
//! keep their source values; the substitution is recorded in `provenance`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Host,
    Sender,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Region {
    Naoc,
    We,
    Ne,
    Se,
    Ea,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Typology {
    Traditional,
    Pioneer,
    Latecomer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Total,
    Male,
    Female,
}

/// A regression group: every host region plus the pooled `ALL`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Group {
    All,
    Naoc,
    We,
    Ne,
    Se,
    Ea,
}

impl Region {
    pub const ALL: [Region; 5] = [Region::Naoc, Region::We, Region::Ne, Region::Se, Region::Ea];

    pub fn typology(self) -> Typology {
        match self {
            Region::Naoc => Typology::Traditional,
            Region::We | Region::Ne => Typology::Pioneer,
            Region::Se | Region::Ea => Typology::Latecomer,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Region::Naoc => "NAOC",
            Region::We => "WE",
            Region::Ne => "NE",
            Region::Se => "SE",
            Region::Ea => "EA",
        }
    }
}

impl Gender {
    pub const ALL: [Gender; 3] = [Gender::Total, Gender::Male, Gender::Female];

    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Total => "total",
            Gender::Male => "male",
            Gender::Female => "female",
        }
    }

    /// Row-label suffix used in regression tables.
    pub fn suffix(self) -> &'static str {
        match self {
            Gender::Total => "TOTAL",
            Gender::Male => "M",
            Gender::Female => "F",
        }
    }
}

impl Group {
    pub const ALL: [Group; 6] = [Group::All, Group::Naoc, Group::We, Group::Ne, Group::Se, Group::Ea];

    pub fn region(self) -> Option<Region> {
        match self {
            Group::All => None,
            Group::Naoc => Some(Region::Naoc),
            Group::We => Some(Region::We),
            Group::Ne => Some(Region::Ne),
            Group::Se => Some(Region::Se),
            Group::Ea => Some(Region::Ea),
        }
    }

    pub fn as_str(self) -> &'static str {
        self.region().map_or("ALL", Region::as_str)
    }
}

impl From<Region> for Group {
    fn from(r: Region) -> Self {
        match r {
            Region::Naoc => Group::Naoc,
            Region::We => Group::We,
            Region::Ne => Group::Ne,
            Region::Se => Group::Se,
            Region::Ea => Group::Ea,
        }
    }
}

impl Typology {
    pub fn as_str(self) -> &'static str {
        match self {
            Typology::Traditional => "traditional",
            Typology::Pioneer => "pioneer",
            Typology::Latecomer => "latecomer",
        }
    }
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Host => "host",
            Role::Sender => "sender",
        }
    }
}

macro_rules! display_via_as_str {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    )*};
}
display_via_as_str!(Role, Region, Typology, Gender, Group);

fn unknown(kind: &'static str, token: &str) -> Error {
    Error::UnknownToken { kind, token: token.to_string() }
}

impl FromStr for Role {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "host" => Ok(Role::Host),
            "sender" => Ok(Role::Sender),
            _ => Err(unknown("role", s)),
        }
    }
}

impl FromStr for Region {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "NAOC" => Ok(Region::Naoc),
            "WE" => Ok(Region::We),
            "NE" => Ok(Region::Ne),
            "SE" => Ok(Region::Se),
            "EA" => Ok(Region::Ea),
            _ => Err(unknown("region", s)),
        }
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("ALL") {
            return Ok(Group::All);
        }
        s.parse::<Region>().map(Group::from).map_err(|_| unknown("group", s))
    }
}

impl FromStr for Gender {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "total" | "t" => Ok(Gender::Total),
            "male" | "m" => Ok(Gender::Male),
            "female" | "f" => Ok(Gender::Female),
            _ => Err(unknown("gender", s)),
        }
    }
}

/// One row of the nation tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NationRecord {
    pub iso3: String,
    pub name: String,
    pub role: Role,
    pub region: Option<Region>,
    pub typology: Option<Typology>,
    pub secondary_share_pct: f64,
    pub wage_total: f64,
    pub wage_male: f64,
    pub wage_female: f64,
    pub provenance: String,
}

impl NationRecord {
    pub fn wage(&self, gender: Gender) -> f64 {
        match gender {
            Gender::Total => self.wage_total,
            Gender::Male => self.wage_male,
            Gender::Female => self.wage_female,
        }
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.iso3.len() != 3 || !self.iso3.chars().all(|c| c.is_ascii_uppercase()) {
            return Err(format!("iso3 {:?} is not a 3-letter upper-case code", self.iso3));
        }
        if !(self.secondary_share_pct > 0.0 && self.secondary_share_pct < 100.0) {
            return Err(format!("secondary_share_pct {} outside (0, 100)", self.secondary_share_pct));
        }
        for g in Gender::ALL {
            let w = self.wage(g);
            if !(w > 0.0 && w.is_finite()) {
                return Err(format!("wage_{} must be positive, got {w}", g.as_str()));
            }
        }
        match (self.role, self.region) {
            (Role::Host, None) => return Err(format!("host {} has no region", self.iso3)),
            (Role::Sender, Some(r)) => return Err(format!("sender {} must not carry a region, got {r}", self.iso3)),
            _ => {}
        }
        if self.typology != self.region.map(Region::typology) {
            return Err(format!("typology of {} does not match its region", self.iso3));
        }
        Ok(())
    }
}

#[allow(clippy::too_many_arguments)]
fn nation(
    iso3: &str,
    name: &str,
    region: Option<Region>,
    share: f64,
    total: f64,
    male: f64,
    female: f64,
    provenance: &str,
) -> NationRecord {
    NationRecord {
        iso3: iso3.to_string(),
        name: name.to_string(),
        role: if region.is_some() { Role::Host } else { Role::Sender },
        region,
        typology: region.map(Region::typology),
        secondary_share_pct: share,
        wage_total: total,
        wage_male: male,
        wage_female: female,
        provenance: provenance.to_string(),
    }
}

/// The 15 host and 12 sender nations, hosts first.
pub fn canonical_nations() -> Vec<NationRecord> {
    use Region::*;
    let h = |iso, name, r, s, t, m, f, p| nation(iso, name, Some(r), s, t, m, f, p);
    let s = |iso, name, sh, t, m, f, p| nation(iso, name, None, sh, t, m, f, p);
    vec![
        h("USA", "United States", Naoc, 18.3, 4778.4, 5081.0, 4031.1, ""),
        h("CAN", "Canada", Naoc, 24.6, 3611.2, 3811.8, 3101.3, "share: 2018 statistics"),
        h("AUS", "Australia", Naoc, 25.3, 3743.8, 4105.1, 2906.3, "wage_total: 2018 statistics"),
        h("GBR", "United Kingdom", We, 18.0, 3658.3, 3889.4, 2893.0, ""),
        h("FRA", "France", We, 17.4, 3381.2, 3534.7, 2976.2, "wages: 2014 ES statistics"),
        h("DEU", "Germany", We, 27.0, 4812.7, 5112.4, 3847.8, ""),
        h("SWE", "Sweden", Ne, 21.9, 3914.8, 3956.6, 3810.4, ""),
        h("NOR", "Norway", Ne, 29.0, 4630.1, 4707.6, 4346.9, ""),
        h("FIN", "Finland", Ne, 23.9, 3799.7, 3897.1, 3512.9, ""),
        h("ITA", "Italy", Se, 21.5, 3942.3, 4239.9, 3164.4, "wage_male, wage_female: 2013 EU-SILC statistics"),
        h("GRC", "Greece", Se, 14.1, 2211.5, 2361.7, 1860.2, ""),
        h("ESP", "Spain", Se, 20.1, 3239.6, 3433.7, 3194.4, ""),
        h("KOR", "South Korea", Ea, 32.7, 4073.0, 4411.7, 2992.1, ""),
        h("HKG", "Hong Kong", Ea, 6.1, 2383.5, 2542.4, 1779.7, "share: 2020 official estimate; wages: 2016 statistics"),
        h("SGP", "Singapore", Ea, 24.1, 4778.4, 4786.0, 3946.0, ""),
        s("PHL", "Philippines", 30.3, 673.2, 692.7, 641.1, ""),
        s("MNG", "Mongolia", 38.1, 1220.0, 1316.8, 1104.7, ""),
        s("LKA", "Sri Lanka", 27.2, 537.5, 658.8, 409.0, ""),
        s("VNM", "Vietnam", 33.72, 830.4, 902.0, 774.2, "wage_male, wage_female: official estimates"),
        s("THA", "Thailand", 33.6, 1123.1, 1198.5, 1037.1, ""),
        s("PAK", "Pakistan", 19.6, 529.4, 571.7, 221.4, ""),
        s("KHM", "Cambodia", 34.2, 687.2, 705.7, 678.0, ""),
        s("CHN", "China", 38.6, 1207.8, 1356.36, 1059.24, "wages: 2016 statistics"),
        s("BGD", "Bangladesh", 32.9, 382.5, 406.0, 331.8, "wages: 2017 statistics"),
        s("NPL", "Nepal", 13.0, 571.5, 601.6, 401.1, "wages: 2017 statistics"),
        s(
            "TLS",
            "Timor-Leste",
            30.2,
            770.1,
            838.0,
            556.0,
            "wage_total: 2016 statistics; wage_male, wage_female: 2013 statistics",
        ),
        s("LAO", "Laos", 31.5, 583.2, 703.1, 479.6, "wages: 2017 statistics"),
    ]
}

pub const NATIONS_CSV_HEADER: [&str; 9] =
    ["iso3", "name", "role", "region", "secondary_share_pct", "wage_total", "wage_male", "wage_female", "provenance"];

/// Parses and validates a nations CSV. Row numbers in diagnostics count
/// data rows from 1.
pub fn load_nations<R: std::io::Read>(source: R) -> Result<Vec<NationRecord>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(source);
    let header = reader.headers()?.clone();
    if header.iter().ne(NATIONS_CSV_HEADER) {
        return Err(Error::Csv(format!(
            "expected header {}, got {}",
            NATIONS_CSV_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record?;
        let bad = |message: String| Error::InvalidRecord { row, message };
        let field = |j: usize| record.get(j).unwrap_or("");
        let number = |j: usize| -> Result<f64> {
            field(j)
                .parse::<f64>()
                .map_err(|_| bad(format!("{} {:?} is not a number", NATIONS_CSV_HEADER[j], field(j))))
        };

        let role: Role = field(2).parse().map_err(|e: Error| bad(e.to_string()))?;
        let region = match field(3) {
            "" => None,
            token => Some(token.parse::<Region>().map_err(|e| bad(e.to_string()))?),
        };
        let rec = NationRecord {
            iso3: field(0).to_string(),
            name: field(1).to_string(),
            role,
            region,
            typology: region.map(Region::typology),
            secondary_share_pct: number(4)?,
            wage_total: number(5)?,
            wage_male: number(6)?,
            wage_female: number(7)?,
            provenance: field(8).to_string(),
        };
        rec.validate().map_err(bad)?;
        if !seen.insert(rec.iso3.clone()) {
            return Err(bad(format!("duplicate iso3 {}", rec.iso3)));
        }
        out.push(rec);
    }
    Ok(out)
}

/// Serializes records in the [`load_nations`] schema.
pub fn nations_to_csv(records: &[NationRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(NATIONS_CSV_HEADER).expect("in-memory write");
    for r in records {
        w.write_record([
            r.iso3.clone(),
            r.name.clone(),
            r.role.to_string(),
            r.region.map(|g| g.to_string()).unwrap_or_default(),
            r.secondary_share_pct.to_string(),
            r.wage_total.to_string(),
            r.wage_male.to_string(),
            r.wage_female.to_string(),
            r.provenance.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

/// Splits records into (hosts, senders), preserving order.
pub fn partition(records: &[NationRecord]) -> (Vec<NationRecord>, Vec<NationRecord>) {
    records.iter().cloned().partition(|r| r.role == Role::Host)
}

/// One regression data point.
///
/// `iv` is sender share minus host share, proxying `δ = s0 - s1`; `dv` is
/// host wage minus sender wage for `gender`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairObservation {
    pub host_iso3: String,
    pub sender_iso3: String,
    pub region: Region,
    pub gender: Gender,
    pub iv: f64,
    pub dv: f64,
}

/// Every host×sender pair, sorted by host then sender code.
pub fn build_pairs(hosts: &[NationRecord], senders: &[NationRecord], gender: Gender) -> Result<Vec<PairObservation>> {
    if hosts.is_empty() || senders.is_empty() {
        return Err(Error::RoleMismatch("need at least one host and one sender".into()));
    }
    if let Some(r) = hosts.iter().find(|r| r.role != Role::Host) {
        return Err(Error::RoleMismatch(format!("{} listed as host but is a sender", r.iso3)));
    }
    if let Some(r) = senders.iter().find(|r| r.role != Role::Sender) {
        return Err(Error::RoleMismatch(format!("{} listed as sender but is a host", r.iso3)));
    }

    let mut pairs = Vec::with_capacity(hosts.len() * senders.len());
    for h in hosts {
        let region = h.region.ok_or_else(|| Error::RoleMismatch(format!("host {} has no region", h.iso3)))?;
        for s in senders {
            pairs.push(PairObservation {
                host_iso3: h.iso3.clone(),
                sender_iso3: s.iso3.clone(),
                region,
                gender,
                iv: s.secondary_share_pct - h.secondary_share_pct,
                dv: h.wage(gender) - s.wage(gender),
            });
        }
    }
    pairs.sort_by(|a, b| (&a.host_iso3, &a.sender_iso3).cmp(&(&b.host_iso3, &b.sender_iso3)));
    Ok(pairs)
}

/// Observations whose host lies in `group`; [`Group::All`] keeps everything.
pub fn filter_region(pairs: &[PairObservation], group: Group) -> Vec<PairObservation> {
    match group.region() {
        None => pairs.to_vec(),
        Some(region) => pairs.iter().filter(|p| p.region == region).cloned().collect(),
    }
}

pub const PAIRS_CSV_HEADER: [&str; 6] = ["host", "sender", "region", "gender", "iv", "dv"];

pub fn pairs_to_csv(pairs: &[PairObservation]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(PAIRS_CSV_HEADER).expect("in-memory write");
    for p in pairs {
        w.write_record([
            p.host_iso3.clone(),
            p.sender_iso3.clone(),
            p.region.to_string(),
            p.gender.to_string(),
            p.iv.to_string(),
            p.dv.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}
