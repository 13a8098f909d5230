// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest dimension whose vertex ids fit in a `u32`.
pub const MAX_DIM: usize = 15;

/// A vertex of `BH_n`: `n` base-4 digits, inner index first.
///
/// The digits are packed as `id = a_0 + 4 a_1 + ... + 4^(n-1) a_(n-1)`, so
/// comparing ids is the same as comparing `(a_(n-1), ..., a_1, a_0)`
/// lexicographically. That order is the canonical order used for every
/// tie-break in the crate, and it is what `Ord` implements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    dim: u8,
    id: u32,
}

/// Bipartition class. `V0` holds even inner indices ("white"), `V1` odd ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ColorClass {
    V0,
    V1,
}

impl ColorClass {
    pub fn opposite(self) -> ColorClass {
        match self {
            ColorClass::V0 => ColorClass::V1,
            ColorClass::V1 => ColorClass::V0,
        }
    }
}

impl fmt::Display for ColorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorClass::V0 => f.write_str("V0"),
            ColorClass::V1 => f.write_str("V1"),
        }
    }
}

impl Vertex {
    pub fn new(coords: &[u8]) -> Result<Vertex> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(Error::MalformedVertex(format!(
                "expected 1..={MAX_DIM} digits, got {}",
                coords.len()
            )));
        }
        let mut id = 0u32;
        for (i, &c) in coords.iter().enumerate() {
            if c > 3 {
                return Err(Error::MalformedVertex(format!("digit {c} at position {i} is not in 0..=3")));
            }
            id |= (c as u32) << (2 * i);
        }
        Ok(Vertex { dim: coords.len() as u8, id })
    }

    pub fn from_id(dim: usize, id: u32) -> Result<Vertex> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::DimensionOutOfRange { dim, min: 1, max: MAX_DIM });
        }
        if (id as u64) >= 1u64 << (2 * dim) {
            return Err(Error::MalformedVertex(format!("id {id} out of range for dimension {dim}")));
        }
        Ok(Vertex::from_raw(dim, id))
    }

    #[inline]
    pub(crate) fn from_raw(dim: usize, id: u32) -> Vertex {
        debug_assert!((1..=MAX_DIM).contains(&dim));
        Vertex { dim: dim as u8, id }
    }

    #[inline]
    pub fn dim(self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn id(self) -> u32 {
        self.id
    }

    /// The inner index `a_0`.
    #[inline]
    pub fn inner(self) -> u8 {
        (self.id & 3) as u8
    }

    /// The `i`-th digit; `digit(0)` is the inner index.
    #[inline]
    pub fn digit(self, i: usize) -> u8 {
        debug_assert!(i < self.dim());
        ((self.id >> (2 * i)) & 3) as u8
    }

    pub fn digits(self) -> Vec<u8> {
        (0..self.dim()).map(|i| self.digit(i)).collect()
    }

    #[inline]
    pub fn color(self) -> ColorClass {
        if self.id & 1 == 0 {
            ColorClass::V0
        } else {
            ColorClass::V1
        }
    }

    #[inline]
    pub fn is_white(self) -> bool {
        self.id & 1 == 0
    }

    /// `((a_0 + 2) mod 4, a_1, ..., a_(n-1))`, the vertex with the same
    /// neighborhood.
    #[inline]
    pub fn backup(self) -> Vertex {
        Vertex { dim: self.dim, id: self.id ^ 2 }
    }

    #[inline]
    pub(crate) fn with_digit(self, i: usize, value: u8) -> Vertex {
        let shift = 2 * i;
        Vertex { dim: self.dim, id: (self.id & !(3 << shift)) | ((value as u32 & 3) << shift) }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.dim() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.digit(i))?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Vertex> {
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::MalformedVertex(format!("expected \"(a0,...)\", got {s:?}")))?;
        let digits = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::MalformedVertex(format!("bad digit {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Vertex::new(&digits)
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.digits().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let digits = Vec::<u8>::deserialize(deserializer)?;
        Vertex::new(&digits).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_round_trip() {
        let v = Vertex::new(&[2, 0, 1]).unwrap();
        assert_eq!(v.digits(), vec![2, 0, 1]);
        assert_eq!(v.id(), 2 + 16);
        assert_eq!(v.to_string(), "(2,0,1)");
        assert_eq!("(2, 0, 1)".parse::<Vertex>().unwrap(), v);
    }

    #[test]
    fn rejects_bad_digits() {
        assert!(Vertex::new(&[0, 4]).is_err());
        assert!(Vertex::new(&[]).is_err());
        assert!("(0,x)".parse::<Vertex>().is_err());
        assert!("0,1".parse::<Vertex>().is_err());
    }

    #[test]
    fn color_examples() {
        assert_eq!(Vertex::new(&[2, 3]).unwrap().color(), ColorClass::V0);
        assert_eq!(Vertex::new(&[1, 0, 0]).unwrap().color(), ColorClass::V1);
        assert_eq!(Vertex::new(&[0]).unwrap().color(), ColorClass::V0);
    }

    #[test]
    fn backup_examples() {
        assert_eq!(Vertex::new(&[1, 2]).unwrap().backup(), Vertex::new(&[3, 2]).unwrap());
        assert_eq!(Vertex::new(&[3]).unwrap().backup(), Vertex::new(&[1]).unwrap());
        let v = Vertex::new(&[0, 3, 1]).unwrap();
        assert_eq!(v.backup().backup(), v);
        assert_ne!(v.backup(), v);
    }

    #[test]
    fn canonical_order_is_reverse_lexicographic() {
        // (3,0) < (0,1) because the outer digit dominates.
        let a = Vertex::new(&[3, 0]).unwrap();
        let b = Vertex::new(&[0, 1]).unwrap();
        assert!(a < b);
    }

    #[test]
    fn json_form() {
        let v = Vertex::new(&[2, 0, 1]).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), "[2,0,1]");
        let back: Vertex = serde_json::from_str("[2,0,1]").unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<Vertex>("[2,5]").is_err());
    }
}
