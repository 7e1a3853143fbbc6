use std::collections::HashMap;

use super::ShellError;
use crate::kernel::ExactPoint;
use crate::scalar::ExactScalar;

/// Input points as exact integers: each coordinate is the decimal input
/// multiplied by `10^scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet<T: ExactScalar> {
    pub points: Vec<ExactPoint<T>>,
    pub scale: u32,
    /// Where the points came from, for messages.
    pub source: Option<String>,
}

impl<T: ExactScalar> PointSet<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Parses whitespace-separated triples of decimal numbers, one point per
/// line. Blank lines and text after `#` are ignored. Each number may have at
/// most `scale` digits after the decimal point.
pub fn parse_points<T: ExactScalar>(text: &str, scale: u32) -> Result<PointSet<T>, ShellError> {
    let mut points = Vec::new();
    let mut seen: HashMap<[T; 3], usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
        if fields.len() != 3 {
            return Err(ShellError::Malformed { line, reason: format!("expected 3 numbers, found {}", fields.len()) });
        }
        let mut c: Vec<T> = Vec::with_capacity(3);
        for f in fields {
            c.push(parse_fixed(f, scale).map_err(|reason| ShellError::Malformed { line, reason })?);
        }
        let coords: [T; 3] = [c[0].clone(), c[1].clone(), c[2].clone()];
        if let Some(&first) = seen.get(&coords) {
            return Err(ShellError::DuplicatePoint { line, first });
        }
        seen.insert(coords.clone(), line);
        points.push(ExactPoint::new(points.len() as u32 + 1, coords));
    }
    if points.len() < 4 {
        return Err(ShellError::TooFewPoints(points.len()));
    }
    Ok(PointSet { points, scale, source: None })
}

/// `s * 10^scale` as an integer, for a decimal string `s`.
fn parse_fixed<T: ExactScalar>(s: &str, scale: u32) -> Result<T, String> {
    let (neg, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(format!("not a decimal number: {s:?}"));
    }
    let frac = frac.trim_end_matches('0');
    if frac.len() > scale as usize {
        return Err(format!("{s} has more than {scale} decimal places; raise --scale"));
    }
    let digits = format!("{int}{frac}{}", "0".repeat(scale as usize - frac.len()));
    let digits = digits.trim_start_matches('0');
    let v = if digits.is_empty() {
        T::zero()
    } else {
        T::from_str_radix(digits, 10).map_err(|_| format!("{s} does not fit the coordinate type"))?
    };
    Ok(if neg { -v } else { v })
}
