//! JSON interchange formats.
//!
//! Writers emit compact JSON with fixed key order and canonical event order,
//! so equal structures serialize to identical bytes. Readers accept events
//! and blocks in any order, re-canonicalize, and reject duplicates,
//! out-of-range points and inconsistent index maps.
//!
//! | document        | shape                                                        |
//! |-----------------|--------------------------------------------------------------|
//! | family          | `{"universe":n,"events":[[i,..],..]}`                        |
//! | partition       | `{"universe":n,"blocks":[[i,..],..]}`                        |
//! | state set       | `{"somp_hash":h,"states":[[0,1,..],..]}`                     |
//! | quotient        | `{"source_hash":h,"partition":..,"quotient":..,"map_f":[..]}`|
//! | representation  | `{"base_hash":h,"states":..,"rep":..,"map_e":[..]}`          |
//! | morphism        | `{"source_hash":h,"target_hash":h,"table":[..]}`             |
//! | transversal     | `{"representatives":[..],"somp":..}`                         |

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::event::Event;
use crate::morphism::MorphismTable;
use crate::quotient::{Partition, QuotientResult, TransversalCopy};
use crate::somp::{Somp, MAX_UNIVERSE};
use crate::states::{StateSet, TwoValuedState};
use crate::stone::StoneResult;

/// Bound on `universe × events` accepted from a single document, to keep
/// hostile inputs from forcing huge allocations.
pub const MAX_DOCUMENT_BITS: usize = 1 << 28;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SompDoc {
    universe: usize,
    events: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionDoc {
    universe: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateSetDoc {
    somp_hash: String,
    states: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuotientDoc {
    source_hash: String,
    partition: PartitionDoc,
    quotient: SompDoc,
    map_f: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StoneDoc {
    base_hash: String,
    states: StateSetDoc,
    rep: SompDoc,
    map_e: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransversalDoc {
    representatives: Vec<usize>,
    somp: SompDoc,
}

/// Serialized morphism table; bind it to concrete families with
/// [`MorphismDoc::bind`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub source_hash: String,
    pub target_hash: String,
    pub table: Vec<usize>,
}

impl MorphismDoc {
    pub fn from_table(m: &MorphismTable<'_>) -> Self {
        MorphismDoc {
            source_hash: content_hash(m.source()),
            target_hash: content_hash(m.target()),
            table: m.table().to_vec(),
        }
    }

    /// Attaches the table to `source` and `target` after checking hashes.
    pub fn bind<'a>(&self, source: &'a Somp, target: &'a Somp) -> Result<MorphismTable<'a>> {
        crate::quotient::check_hash(&self.source_hash, source)?;
        crate::quotient::check_hash(&self.target_hash, target)?;
        MorphismTable::new(source, target, self.table.clone())
    }

    pub fn to_json(&self) -> String {
        to_string(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn to_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("document types always serialize")
}

fn check_universe(n: usize, rows: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    if n > MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge {
            universe_size: n,
            max: MAX_UNIVERSE,
        });
    }
    if n.saturating_mul(rows.max(1)) > MAX_DOCUMENT_BITS {
        return Err(Error::Malformed(format!(
            "{rows} rows over {n} points exceed the document size bound"
        )));
    }
    Ok(())
}

fn event_from_list(n: usize, list: &[usize]) -> Result<Event> {
    let e = Event::from_members(n, list.iter().copied())?;
    if e.len() != list.len() {
        return Err(Error::Malformed(format!("repeated point in {list:?}")));
    }
    Ok(e)
}

fn event_lists(events: &[Event]) -> Vec<Vec<usize>> {
    events.iter().map(Event::to_vec).collect()
}

/// SHA-256 of the canonical family serialization, as lowercase hex.
pub fn content_hash(s: &Somp) -> String {
    Sha256::digest(somp_to_json(s).as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn somp_doc(s: &Somp) -> SompDoc {
    SompDoc {
        universe: s.universe_size(),
        events: event_lists(s.events()),
    }
}

pub fn somp_to_json(s: &Somp) -> String {
    to_string(&somp_doc(s))
}

/// An unvalidated family as read from a document: possibly with duplicates
/// or missing events, for `validate` and `closure`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawFamily {
    pub universe_size: usize,
    pub events: Vec<Event>,
}

fn raw_from_doc(doc: &SompDoc) -> Result<RawFamily> {
    check_universe(doc.universe, doc.events.len())?;
    let events = doc
        .events
        .iter()
        .map(|l| event_from_list(doc.universe, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(RawFamily {
        universe_size: doc.universe,
        events,
    })
}

pub fn parse_raw_family(text: &str) -> Result<RawFamily> {
    raw_from_doc(&serde_json::from_str(text)?)
}

fn somp_from_doc(doc: &SompDoc) -> Result<Somp> {
    let raw = raw_from_doc(doc)?;
    let mut seen = HashSet::new();
    for e in &raw.events {
        if !seen.insert(e) {
            return Err(Error::DuplicateEvent(e.to_string()));
        }
    }
    Somp::from_events(raw.universe_size, raw.events)
}

pub fn somp_from_json(text: &str) -> Result<Somp> {
    somp_from_doc(&serde_json::from_str(text)?)
}

fn partition_doc(p: &Partition) -> PartitionDoc {
    PartitionDoc {
        universe: p.universe_size(),
        blocks: event_lists(p.blocks()),
    }
}

fn partition_from_doc(doc: &PartitionDoc) -> Result<Partition> {
    check_universe(doc.universe, doc.blocks.len())?;
    let blocks = doc
        .blocks
        .iter()
        .map(|l| event_from_list(doc.universe, l))
        .collect::<Result<Vec<_>>>()?;
    Partition::new(doc.universe, blocks)
}

pub fn partition_to_json(p: &Partition) -> String {
    to_string(&partition_doc(p))
}

pub fn partition_from_json(text: &str) -> Result<Partition> {
    partition_from_doc(&serde_json::from_str(text)?)
}

fn state_set_doc(ss: &StateSet) -> StateSetDoc {
    StateSetDoc {
        somp_hash: ss.somp_hash.clone(),
        states: ss
            .iter()
            .map(|st| st.values().iter().map(|&b| u8::from(b)).collect())
            .collect(),
    }
}

fn state_set_from_doc(doc: &StateSetDoc) -> Result<StateSet> {
    if let Some(first) = doc.states.first() {
        check_universe(first.len().max(1), doc.states.len())?;
    }
    let states = doc
        .states
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| match v {
                    0 => Ok(false),
                    1 => Ok(true),
                    other => Err(Error::Malformed(format!(
                        "state value {other} is not 0 or 1"
                    ))),
                })
                .collect::<Result<Vec<bool>>>()
                .map(TwoValuedState::from_values)
        })
        .collect::<Result<Vec<_>>>()?;
    let set = StateSet::from_parts(doc.somp_hash.clone(), states)?;
    if set.len() != doc.states.len() {
        return Err(Error::Malformed("duplicate state vectors".into()));
    }
    Ok(set)
}

pub fn state_set_to_json(ss: &StateSet) -> String {
    to_string(&state_set_doc(ss))
}

pub fn state_set_from_json(text: &str) -> Result<StateSet> {
    state_set_from_doc(&serde_json::from_str(text)?)
}

pub fn quotient_to_json(q: &QuotientResult) -> String {
    to_string(&QuotientDoc {
        source_hash: q.source_hash.clone(),
        partition: partition_doc(&q.partition),
        quotient: somp_doc(&q.quotient),
        map_f: q.map_f.clone(),
    })
}

fn quotient_from_doc(doc: &QuotientDoc) -> Result<QuotientResult> {
    let q = QuotientResult {
        source_hash: doc.source_hash.clone(),
        partition: partition_from_doc(&doc.partition)?,
        quotient: somp_from_doc(&doc.quotient)?,
        map_f: doc.map_f.clone(),
    };
    q.check_shape()?;
    Ok(q)
}

pub fn quotient_from_json(text: &str) -> Result<QuotientResult> {
    quotient_from_doc(&serde_json::from_str(text)?)
}

pub fn stone_to_json(r: &StoneResult) -> String {
    to_string(&StoneDoc {
        base_hash: r.base_hash.clone(),
        states: state_set_doc(&r.states),
        rep: somp_doc(&r.rep),
        map_e: r.map_e.clone(),
    })
}

fn stone_from_doc(doc: &StoneDoc) -> Result<StoneResult> {
    let r = StoneResult {
        base_hash: doc.base_hash.clone(),
        states: state_set_from_doc(&doc.states)?,
        rep: somp_from_doc(&doc.rep)?,
        map_e: doc.map_e.clone(),
    };
    r.check_shape()?;
    Ok(r)
}

pub fn stone_from_json(text: &str) -> Result<StoneResult> {
    stone_from_doc(&serde_json::from_str(text)?)
}

pub fn transversal_to_json(t: &TransversalCopy) -> String {
    to_string(&TransversalDoc {
        representatives: t.representatives.clone(),
        somp: somp_doc(&t.somp),
    })
}

fn transversal_from_doc(doc: &TransversalDoc) -> Result<TransversalCopy> {
    let somp = somp_from_doc(&doc.somp)?;
    if doc.representatives.len() != somp.universe_size() {
        return Err(Error::Malformed(
            "one representative per point is required".into(),
        ));
    }
    if doc.representatives.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Malformed(
            "representatives must be strictly increasing".into(),
        ));
    }
    Ok(TransversalCopy {
        representatives: doc.representatives.clone(),
        somp,
    })
}

pub fn transversal_from_json(text: &str) -> Result<TransversalCopy> {
    transversal_from_doc(&serde_json::from_str(text)?)
}

/// Any document this crate writes, recognized by its keys.
#[derive(Debug, Clone)]
pub enum Document {
    Somp(Somp),
    Partition(Partition),
    StateSet(StateSet),
    Quotient(QuotientResult),
    Stone(StoneResult),
    Morphism(MorphismDoc),
    Transversal(TransversalCopy),
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Malformed("expected a JSON object".into()))?;
        let has = |k: &str| obj.contains_key(k);
        let doc = if has("map_f") {
            Document::Quotient(quotient_from_doc(&serde_json::from_value(value)?)?)
        } else if has("map_e") {
            Document::Stone(stone_from_doc(&serde_json::from_value(value)?)?)
        } else if has("table") {
            Document::Morphism(serde_json::from_value(value)?)
        } else if has("representatives") {
            Document::Transversal(transversal_from_doc(&serde_json::from_value(value)?)?)
        } else if has("somp_hash") {
            Document::StateSet(state_set_from_doc(&serde_json::from_value(value)?)?)
        } else if has("blocks") {
            Document::Partition(partition_from_doc(&serde_json::from_value(value)?)?)
        } else if has("events") {
            Document::Somp(somp_from_doc(&serde_json::from_value(value)?)?)
        } else {
            return Err(Error::Malformed("unrecognized document".into()));
        };
        Ok(doc)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Somp(_) => "family",
            Document::Partition(_) => "partition",
            Document::StateSet(_) => "state set",
            Document::Quotient(_) => "quotient",
            Document::Stone(_) => "representation",
            Document::Morphism(_) => "morphism",
            Document::Transversal(_) => "transversal",
        }
    }

    /// The family carried by the document: the quotient of a quotient
    /// result, the representation of a Stone result, or the family itself.
    pub fn into_somp(self) -> Result<Somp> {
        match self {
            Document::Somp(s) => Ok(s),
            Document::Quotient(q) => Ok(q.quotient),
            Document::Stone(r) => Ok(r.rep),
            Document::Transversal(t) => Ok(t.somp),
            Document::Partition(p) => crate::quotient::partition_boolean(&p),
            other => Err(Error::Malformed(format!(
                "a {} does not carry a family",
                other.kind()
            ))),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Document::Somp(s) => somp_to_json(s),
            Document::Partition(p) => partition_to_json(p),
            Document::StateSet(ss) => state_set_to_json(ss),
            Document::Quotient(q) => quotient_to_json(q),
            Document::Stone(r) => stone_to_json(r),
            Document::Morphism(m) => m.to_json(),
            Document::Transversal(t) => transversal_to_json(t),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::somp::make_even;

    #[test]
    fn somp_format_is_compact_and_canonical() {
        let s = crate::somp::make_powerset(2).unwrap();
        assert_eq!(
            somp_to_json(&s),
            r#"{"universe":2,"events":[[],[0],[1],[0,1]]}"#
        );
    }

    #[test]
    fn reader_recanonicalizes() {
        let s = somp_from_json(r#"{"universe":2,"events":[[1,0],[1],[],[0]]}"#).unwrap();
        assert_eq!(
            somp_to_json(&s),
            r#"{"universe":2,"events":[[],[0],[1],[0,1]]}"#
        );
    }

    #[test]
    fn reader_rejections() {
        let dup = r#"{"universe":2,"events":[[],[0],[0],[1],[0,1]]}"#;
        assert!(matches!(somp_from_json(dup), Err(Error::DuplicateEvent(_))));
        let missing = r#"{"universe":2,"events":[[],[0],[0,1]]}"#;
        assert!(matches!(
            somp_from_json(missing),
            Err(Error::InvalidFamily(_))
        ));
        let range = r#"{"universe":2,"events":[[2]]}"#;
        assert!(matches!(
            somp_from_json(range),
            Err(Error::PointOutOfRange { .. })
        ));
        let repeated = r#"{"universe":2,"events":[[0,0]]}"#;
        assert!(matches!(somp_from_json(repeated), Err(Error::Malformed(_))));
        let zero = r#"{"universe":0,"events":[]}"#;
        assert!(matches!(somp_from_json(zero), Err(Error::EmptyUniverse)));
        let huge = r#"{"universe":99999999999,"events":[]}"#;
        assert!(matches!(
            somp_from_json(huge),
            Err(Error::UniverseTooLarge { .. })
        ));
        let extra = r#"{"universe":1,"events":[[],[0]],"x":1}"#;
        assert!(matches!(somp_from_json(extra), Err(Error::Json(_))));
    }

    #[test]
    fn hash_is_stable_hex() {
        let h = content_hash(&make_even(4).unwrap());
        assert_eq!(h.len(), 64);
        assert!(h
            .chars()
            .all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
        assert_eq!(h, content_hash(&make_even(4).unwrap()));
        assert_ne!(h, content_hash(&make_even(6).unwrap()));
    }

    #[test]
    fn state_values_must_be_bits() {
        let bad = r#"{"somp_hash":"ab","states":[[0,2]]}"#;
        assert!(matches!(state_set_from_json(bad), Err(Error::Malformed(_))));
        let dup = r#"{"somp_hash":"ab","states":[[0,1],[0,1]]}"#;
        assert!(matches!(state_set_from_json(dup), Err(Error::Malformed(_))));
    }

    #[test]
    fn document_dispatch() {
        let s = make_even(4).unwrap();
        let text = somp_to_json(&s);
        assert!(matches!(Document::parse(&text).unwrap(), Document::Somp(_)));
        assert!(Document::parse("[]").is_err());
        assert!(Document::parse(r#"{"foo":1}"#).is_err());
    }
}
