//! JSON body files, reports and step logs.
//!
//! Every number is written with 17 significant digits, which round-trips any
//! binary64 value exactly.

use std::io;

use serde::ser::Serialize;
use serde::{Deserialize, Serialize as SerializeDerive};
use serde_json::ser::{CompactFormatter, Formatter};

use crate::approx::StepRecord;
use crate::body::{BoundaryPiece, ConvexBody, Polytope};
use crate::error::{Error, Result};
use crate::sphere::{GreatArc, SmallCircleArc, UnitVector};

/// Either representation of a body, as stored on disk.
#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    Polytope(Polytope),
    Body(ConvexBody),
}

impl Shape {
    pub fn to_body(&self) -> Result<ConvexBody> {
        match self {
            Shape::Polytope(p) => p.to_body(),
            Shape::Body(b) => Ok(b.clone()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Shape::Polytope(p) => p.ensure_valid(),
            Shape::Body(b) => b.ensure_valid(),
        }
    }

    /// Polar dual, staying a polytope when the input is one.
    pub fn polar_dual(&self) -> Result<Shape> {
        match self {
            Shape::Polytope(p) => p.polar_dual().map(Shape::Polytope),
            Shape::Body(b) => b.polar_dual().map(Shape::Body),
        }
    }
}

#[derive(SerializeDerive, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum ShapeFile {
    Polytope { vertices: Vec<UnitVector> },
    PcBody { interior: UnitVector, pieces: Vec<PieceFile> },
}

#[derive(SerializeDerive, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
enum PieceFile {
    Great { from: UnitVector, to: UnitVector },
    Circle { center: UnitVector, radius: f64, az_from: f64, az_to: f64 },
}

impl From<&Shape> for ShapeFile {
    fn from(shape: &Shape) -> Self {
        match shape {
            Shape::Polytope(p) => ShapeFile::Polytope { vertices: p.vertices().to_vec() },
            Shape::Body(b) => ShapeFile::PcBody {
                interior: b.interior(),
                pieces: b
                    .pieces()
                    .iter()
                    .map(|piece| match piece {
                        BoundaryPiece::Great(g) => PieceFile::Great { from: g.from, to: g.to },
                        BoundaryPiece::Circle(c) => PieceFile::Circle {
                            center: c.center,
                            radius: c.radius,
                            az_from: c.az_from,
                            az_to: c.az_to,
                        },
                    })
                    .collect(),
            },
        }
    }
}

impl TryFrom<ShapeFile> for Shape {
    type Error = Error;

    fn try_from(file: ShapeFile) -> Result<Self> {
        Ok(match file {
            ShapeFile::Polytope { vertices } => Shape::Polytope(Polytope::new(vertices)),
            ShapeFile::PcBody { interior, pieces } => {
                let pieces = pieces
                    .into_iter()
                    .map(|p| match p {
                        PieceFile::Great { from, to } => GreatArc::new(from, to).map(BoundaryPiece::Great),
                        PieceFile::Circle { center, radius, az_from, az_to } => {
                            SmallCircleArc::new(center, radius, az_from, az_to).map(BoundaryPiece::Circle)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Shape::Body(ConvexBody::new(pieces, interior))
            }
        })
    }
}

/// Compact JSON with 17 significant digits per number.
#[derive(Clone, Copy, Debug, Default)]
pub struct SignificantDigits;

impl Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        CompactFormatter.write_f32(writer, value)
    }
}

/// Renders a finite `value` with 17 significant digits, dropping trailing zeros.
///
/// Positional notation is used for decimal exponents in `[-5, 17)`,
/// scientific notation otherwise.
pub fn format_f64(value: f64) -> String {
    if value == 0.0 {
        return if value.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    let sci = format!("{value:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    if !(-5..17).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        let tail = if tail.is_empty() { "0" } else { tail };
        return format!("{sign}{head}.{tail}e{exp}");
    }
    if exp < 0 {
        let zeros = "0".repeat((-exp - 1) as usize);
        return format!("{sign}0.{zeros}{digits}");
    }
    let int_len = exp as usize + 1;
    if digits.len() <= int_len {
        format!("{sign}{digits}{}.0", "0".repeat(int_len - digits.len()))
    } else {
        let (int, frac) = digits.split_at(int_len);
        format!("{sign}{int}.{frac}")
    }
}

/// Serializes any value with the 17-significant-digit formatter.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigits);
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

pub fn shape_to_json(shape: &Shape) -> String {
    to_json(&ShapeFile::from(shape))
}

/// Parses a body file. The result is not validated.
pub fn parse_shape(text: &str) -> Result<Shape> {
    let file: ShapeFile =
        serde_json::from_str(text).map_err(|e| Error::InvalidBody(format!("malformed body file: {e}")))?;
    Shape::try_from(file)
}

/// Step log as JSON lines, one record per line.
pub fn step_log(steps: &[StepRecord]) -> String {
    let mut out = String::new();
    for s in steps {
        out.push_str(&to_json(s));
        out.push('\n');
    }
    out
}

pub fn parse_step_log(text: &str) -> Result<Vec<StepRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::InvalidBody(format!("malformed step record: {e}"))))
        .collect()
}
