//! JSON documents for towers, germs, divisors and degree data.
//!
//! Integers are written as decimal strings; on input either strings or JSON
//! numbers are accepted.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use toric_towers::lattice::rational::Q;
use toric_towers::tower::{validate_tower, Move, TowerSpec};
use toric_towers::{BigInt, BigRational};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// An arbitrary-precision integer in a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;
        impl Visitor<'_> for IntVisitor {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Int, E> {
                Err(E::invalid_value(de::Unexpected::Float(v), &self))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(Int)
                    .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }
        d.deserialize_any(IntVisitor)
    }
}

/// A rational written as `"p/q"`, `"p"` or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RationalVisitor;
        impl Visitor<'_> for RationalVisitor {
            type Value = Rational;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a string \"p/q\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational(Q::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational(Q::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                let bad = || E::invalid_value(de::Unexpected::Str(v), &self);
                let (num, den) = match v.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (v.trim(), "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den == BigInt::from(0) {
                    return Err(bad());
                }
                Ok(Rational(BigRational::new(num, den)))
            }
        }
        d.deserialize_any(RationalVisitor)
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

fn unwrap_ints(v: Vec<Int>) -> Vec<BigInt> {
    v.into_iter().map(|i| i.0).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDocument {
    #[serde(default = "default_version")]
    pub format_version: u32,
    pub base_dim: usize,
    #[serde(default)]
    pub moves: Vec<MoveDocument>,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Product,
    Node,
}

/// `{"type":"product"}` or
/// `{"type":"node","alpha_exponents":[...],"t_exponents":[...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveDocument {
    #[serde(rename = "type")]
    pub kind: MoveKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_exponents: Option<Vec<Int>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_exponents: Option<Vec<Int>>,
}

impl From<&TowerSpec> for TowerDocument {
    fn from(spec: &TowerSpec) -> Self {
        TowerDocument {
            format_version: FORMAT_VERSION,
            base_dim: spec.base_dim,
            moves: spec
                .moves
                .iter()
                .map(|m| match m {
                    Move::Product => MoveDocument {
                        kind: MoveKind::Product,
                        alpha_exponents: None,
                        t_exponents: None,
                    },
                    Move::Node {
                        alpha_exponents,
                        t_exponents,
                    } => MoveDocument {
                        kind: MoveKind::Node,
                        alpha_exponents: Some(ints(alpha_exponents)),
                        t_exponents: Some(ints(t_exponents)),
                    },
                })
                .collect(),
        }
    }
}

impl TryFrom<TowerDocument> for TowerSpec {
    type Error = CliError;

    fn try_from(doc: TowerDocument) -> Result<Self, CliError> {
        if doc.format_version != FORMAT_VERSION {
            return Err(CliError::Schema(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                doc.format_version
            )));
        }
        let mut moves = Vec::with_capacity(doc.moves.len());
        for (k, m) in doc.moves.into_iter().enumerate() {
            moves.push(match (m.kind, m.alpha_exponents, m.t_exponents) {
                (MoveKind::Product, None, None) => Move::Product,
                (MoveKind::Product, _, _) => {
                    return Err(CliError::Schema(format!(
                        "move {k}: a product move takes no exponents"
                    )))
                }
                (MoveKind::Node, Some(a), Some(t)) => Move::Node {
                    alpha_exponents: unwrap_ints(a),
                    t_exponents: unwrap_ints(t),
                },
                (MoveKind::Node, _, _) => {
                    return Err(CliError::Schema(format!(
                        "move {k}: a node move needs alpha_exponents and t_exponents"
                    )))
                }
            });
        }
        Ok(TowerSpec::new(doc.base_dim, moves))
    }
}

/// Deserializes `text`, reporting the field path and position on failure.
pub fn parse_document<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse {
            line: inner.line(),
            column: inner.column(),
            field: path,
            message: inner.to_string(),
        }
    })?;
    de.end().map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        field: ".".into(),
        message: e.to_string(),
    })?;
    Ok(value)
}

/// Parses and validates a tower document.
pub fn parse_tower(text: &str) -> Result<TowerSpec, CliError> {
    let doc: TowerDocument = parse_document(text)?;
    let spec = TowerSpec::try_from(doc)?;
    let report = validate_tower(&spec);
    if !report.is_valid() {
        let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(CliError::Schema(msgs.join("; ")));
    }
    Ok(spec)
}

/// Pretty-printed tower document with a trailing newline.
pub fn emit_tower(spec: &TowerSpec) -> String {
    let mut s = serde_json::to_string_pretty(&TowerDocument::from(spec)).expect("serializable");
    s.push('\n');
    s
}

/// Degree data `D` on `P^n x Z` with polarization `a·H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeDocument {
    pub fiber_dim: usize,
    #[serde(default)]
    pub horizontal: Vec<Rational>,
    #[serde(default)]
    pub vertical: Vec<Rational>,
    pub polarization: Int,
}

/// Input of `volume`: either explicit points or a divisor on `P^n` given by
/// its coefficients on the rays `e_1, ..., e_n, -(e_1 + ... + e_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum VolumeDocument {
    Points {
        ambient_dim: usize,
        points: Vec<Vec<Rational>>,
    },
    ProjectiveDivisor {
        projective_space: usize,
        coefficients: Vec<Rational>,
    },
}
