//! Scalar algebras: commutative semirings and quantales with exact carriers.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// A value of some [`ScalarAlgebra`].
///
/// The variant in use is fixed by the algebra kind; mixing variants across
/// algebras is an [`AlgebraError::ForeignScalar`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Bool(bool),
    /// Naturals and integers.
    Int(BigInt),
    /// Residue in `0..n` for the integers modulo `n`.
    Mod(u64),
    /// Min-plus value; `None` is `+inf`, the tropical zero.
    Trop(Option<BigInt>),
    /// Rational in `[0, 1]` for the Goedel and Viterbi quantales.
    Rat(BigRational),
    /// Element index of a finite operation table.
    Elem(u32),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Bool(b) => write!(f, "{}", u8::from(*b)),
            Scalar::Int(n) => write!(f, "{n}"),
            Scalar::Mod(n) => write!(f, "{n}"),
            Scalar::Trop(None) => write!(f, "inf"),
            Scalar::Trop(Some(n)) => write!(f, "{n}"),
            Scalar::Rat(q) => write!(f, "{q}"),
            Scalar::Elem(e) => write!(f, "#{e}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A finite carrier with explicit addition (join) and multiplication tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteTable {
    /// Optional element names; indices are used when absent.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
    /// `add[a][b]`; for quantale tables this is the binary join.
    pub add: Vec<Vec<u32>>,
    pub mul: Vec<Vec<u32>>,
    pub zero: u32,
    pub one: u32,
}

impl FiniteTable {
    pub fn size(&self) -> usize {
        self.add.len()
    }

    /// Checks that both tables are square and closed over the carrier.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.add.len();
        if n == 0 {
            return Err(AlgebraError::Table("empty carrier".into()));
        }
        if !self.elements.is_empty() && self.elements.len() != n {
            return Err(AlgebraError::Table(format!(
                "{} element names for a carrier of size {n}",
                self.elements.len()
            )));
        }
        for (name, table) in [("add", &self.add), ("mul", &self.mul)] {
            if table.len() != n {
                return Err(AlgebraError::Table(format!("{name} table has {} rows, expected {n}", table.len())));
            }
            for (a, row) in table.iter().enumerate() {
                if row.len() != n {
                    return Err(AlgebraError::Table(format!(
                        "{name} row {a} has {} cells, expected {n}",
                        row.len()
                    )));
                }
                if let Some((b, v)) = row.iter().enumerate().find(|(_, v)| **v as usize >= n) {
                    return Err(AlgebraError::NotClosed { op: name.into(), row: a, col: b, value: *v as u64 });
                }
            }
        }
        for (name, v) in [("zero", self.zero), ("one", self.one)] {
            if v as usize >= n {
                return Err(AlgebraError::Table(format!("{name} = {v} is outside the carrier")));
            }
        }
        Ok(())
    }

    pub fn element_index(&self, name: &str) -> Option<u32> {
        self.elements.iter().position(|e| e == name).map(|i| i as u32)
    }
}

/// Which scalar algebra is in use.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// `({0,1}, or, and)`; also a quantale.
    Boolean,
    Naturals,
    Integers,
    IntegersMod(u64),
    /// `(N u {inf}, min, +)`; a quantale under the reversed order.
    Tropical,
    QuantaleTable(Arc<FiniteTable>),
    /// `([0,1] n Q, max, min)`.
    RationalGoedel,
    /// `([0,1] n Q, max, *)`.
    RationalViterbi,
}

/// A commutative semiring (or quantale) with decidable equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarAlgebra {
    kind: AlgebraKind,
}

impl ScalarAlgebra {
    pub fn boolean() -> Self {
        Self { kind: AlgebraKind::Boolean }
    }

    pub fn naturals() -> Self {
        Self { kind: AlgebraKind::Naturals }
    }

    pub fn integers() -> Self {
        Self { kind: AlgebraKind::Integers }
    }

    pub fn integers_mod(modulus: u64) -> Result<Self, AlgebraError> {
        if modulus < 2 {
            return Err(AlgebraError::Descriptor(format!("modulus must be at least 2, got {modulus}")));
        }
        Ok(Self { kind: AlgebraKind::IntegersMod(modulus) })
    }

    pub fn tropical() -> Self {
        Self { kind: AlgebraKind::Tropical }
    }

    pub fn rational_goedel() -> Self {
        Self { kind: AlgebraKind::RationalGoedel }
    }

    pub fn rational_viterbi() -> Self {
        Self { kind: AlgebraKind::RationalViterbi }
    }

    /// Builds a finite algebra from operation tables. Closure is validated;
    /// the semiring laws are not (see [`super::check_algebra_laws`]).
    pub fn quantale_table(table: FiniteTable) -> Result<Self, AlgebraError> {
        table.validate()?;
        Ok(Self { kind: AlgebraKind::QuantaleTable(Arc::new(table)) })
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            AlgebraKind::Boolean => "boolean",
            AlgebraKind::Naturals => "naturals",
            AlgebraKind::Integers => "integers",
            AlgebraKind::IntegersMod(_) => "integers-mod-n",
            AlgebraKind::Tropical => "tropical",
            AlgebraKind::QuantaleTable(_) => "quantale-table",
            AlgebraKind::RationalGoedel => "rational-goedel",
            AlgebraKind::RationalViterbi => "rational-viterbi",
        }
    }

    /// Quantale kinds have joins of arbitrary subsets; every finite
    /// subset is what matters here.
    pub fn is_quantale(&self) -> bool {
        matches!(
            self.kind,
            AlgebraKind::Boolean
                | AlgebraKind::Tropical
                | AlgebraKind::QuantaleTable(_)
                | AlgebraKind::RationalGoedel
                | AlgebraKind::RationalViterbi
        )
    }

    pub fn is_finite(&self) -> bool {
        self.carrier_size().is_some()
    }

    pub fn carrier_size(&self) -> Option<usize> {
        match &self.kind {
            AlgebraKind::Boolean => Some(2),
            AlgebraKind::IntegersMod(n) => usize::try_from(*n).ok(),
            AlgebraKind::QuantaleTable(t) => Some(t.size()),
            _ => None,
        }
    }

    /// All carrier elements, for finite algebras.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match &self.kind {
            AlgebraKind::Boolean => Some(vec![Scalar::Bool(false), Scalar::Bool(true)]),
            AlgebraKind::IntegersMod(n) => Some((0..*n).map(Scalar::Mod).collect()),
            AlgebraKind::QuantaleTable(t) => Some((0..t.size() as u32).map(Scalar::Elem).collect()),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match &self.kind {
            AlgebraKind::Boolean => Scalar::Bool(false),
            AlgebraKind::Naturals | AlgebraKind::Integers => Scalar::Int(BigInt::zero()),
            AlgebraKind::IntegersMod(_) => Scalar::Mod(0),
            AlgebraKind::Tropical => Scalar::Trop(None),
            AlgebraKind::QuantaleTable(t) => Scalar::Elem(t.zero),
            AlgebraKind::RationalGoedel | AlgebraKind::RationalViterbi => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match &self.kind {
            AlgebraKind::Boolean => Scalar::Bool(true),
            AlgebraKind::Naturals | AlgebraKind::Integers => Scalar::Int(BigInt::one()),
            AlgebraKind::IntegersMod(_) => Scalar::Mod(1),
            AlgebraKind::Tropical => Scalar::Trop(Some(BigInt::zero())),
            AlgebraKind::QuantaleTable(t) => Scalar::Elem(t.one),
            AlgebraKind::RationalGoedel | AlgebraKind::RationalViterbi => Scalar::Rat(BigRational::one()),
        }
    }

    /// Whether `s` lies in the carrier.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (&self.kind, s) {
            (AlgebraKind::Boolean, Scalar::Bool(_)) => true,
            (AlgebraKind::Naturals, Scalar::Int(n)) => !n.is_negative(),
            (AlgebraKind::Integers, Scalar::Int(_)) => true,
            (AlgebraKind::IntegersMod(m), Scalar::Mod(r)) => r < m,
            (AlgebraKind::Tropical, Scalar::Trop(v)) => v.as_ref().is_none_or(|n| !n.is_negative()),
            (AlgebraKind::QuantaleTable(t), Scalar::Elem(e)) => (*e as usize) < t.size(),
            (AlgebraKind::RationalGoedel | AlgebraKind::RationalViterbi, Scalar::Rat(q)) => {
                !q.is_negative() && *q <= BigRational::one()
            }
            _ => false,
        }
    }

    pub fn check(&self, s: &Scalar) -> Result<(), AlgebraError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(AlgebraError::ForeignScalar { algebra: self.kind_name().into(), value: s.to_string() })
        }
    }

    /// Addition, or binary join for quantales.
    ///
    /// # Panics
    /// If either operand is not in the carrier.
    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.kind, a, b) {
            (AlgebraKind::Boolean, Scalar::Bool(x), Scalar::Bool(y)) => Scalar::Bool(*x || *y),
            (AlgebraKind::Naturals | AlgebraKind::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (AlgebraKind::IntegersMod(m), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 + *y as u128) % *m as u128) as u64)
            }
            (AlgebraKind::Tropical, Scalar::Trop(x), Scalar::Trop(y)) => Scalar::Trop(match (x, y) {
                (None, v) | (v, None) => v.clone(),
                (Some(x), Some(y)) => Some(x.min(y).clone()),
            }),
            (AlgebraKind::QuantaleTable(t), Scalar::Elem(x), Scalar::Elem(y)) => {
                Scalar::Elem(t.add[*x as usize][*y as usize])
            }
            (AlgebraKind::RationalGoedel | AlgebraKind::RationalViterbi, Scalar::Rat(x), Scalar::Rat(y)) => {
                Scalar::Rat(x.max(y).clone())
            }
            _ => panic!("scalars {a} and {b} are not in the {} carrier", self.kind_name()),
        }
    }

    /// Multiplication.
    ///
    /// # Panics
    /// If either operand is not in the carrier.
    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.kind, a, b) {
            (AlgebraKind::Boolean, Scalar::Bool(x), Scalar::Bool(y)) => Scalar::Bool(*x && *y),
            (AlgebraKind::Naturals | AlgebraKind::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (AlgebraKind::IntegersMod(m), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % *m as u128) as u64)
            }
            (AlgebraKind::Tropical, Scalar::Trop(x), Scalar::Trop(y)) => Scalar::Trop(match (x, y) {
                (Some(x), Some(y)) => Some(x + y),
                _ => None,
            }),
            (AlgebraKind::QuantaleTable(t), Scalar::Elem(x), Scalar::Elem(y)) => {
                Scalar::Elem(t.mul[*x as usize][*y as usize])
            }
            (AlgebraKind::RationalGoedel, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x.min(y).clone()),
            (AlgebraKind::RationalViterbi, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalars {a} and {b} are not in the {} carrier", self.kind_name()),
        }
    }

    /// Finite sum (join); the empty sum is zero.
    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// The quantale order `a <= b` iff `a v b = b`. Meaningful for quantale kinds.
    pub fn leq(&self, a: &Scalar, b: &Scalar) -> bool {
        self.add(a, b) == *b
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        *s == self.zero()
    }

    /// Whether `s` has a multiplicative inverse in the carrier.
    pub fn is_invertible(&self, s: &Scalar) -> bool {
        let one = self.one();
        match (&self.kind, s) {
            (AlgebraKind::Boolean, Scalar::Bool(b)) => *b,
            (AlgebraKind::Naturals, Scalar::Int(n)) => n.is_one(),
            (AlgebraKind::Integers, Scalar::Int(n)) => n.abs().is_one(),
            (AlgebraKind::IntegersMod(m), Scalar::Mod(r)) => num_integer::gcd(*r, *m) == 1,
            (AlgebraKind::Tropical, Scalar::Trop(v)) => v.as_ref().is_some_and(Zero::is_zero),
            (AlgebraKind::QuantaleTable(t), Scalar::Elem(e)) => {
                (0..t.size() as u32).any(|x| self.mul(&Scalar::Elem(*e), &Scalar::Elem(x)) == one)
            }
            (AlgebraKind::RationalGoedel, Scalar::Rat(q)) => q.is_one(),
            (AlgebraKind::RationalViterbi, Scalar::Rat(q)) => q.is_one(),
            _ => false,
        }
    }

    /// Parses a scalar from its JSON form: booleans as `0/1` or `true/false`,
    /// integers as numbers or decimal strings, tropical infinity as `"inf"`,
    /// rationals as `"p/q"` strings or integers, table elements by index or name.
    pub fn parse_scalar(&self, v: &serde_json::Value) -> Result<Scalar, AlgebraError> {
        use serde_json::Value;
        let bad = || AlgebraError::ForeignScalar { algebra: self.kind_name().into(), value: v.to_string() };
        let int = |v: &Value| -> Option<BigInt> {
            match v {
                Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .or_else(|| n.as_u64().map(BigInt::from)),
                Value::String(s) => s.trim().parse().ok(),
                _ => None,
            }
        };
        let s = match &self.kind {
            AlgebraKind::Boolean => match v {
                Value::Bool(b) => Scalar::Bool(*b),
                _ => match int(v) {
                    Some(n) if n.is_zero() => Scalar::Bool(false),
                    Some(n) if n.is_one() => Scalar::Bool(true),
                    _ => return Err(bad()),
                },
            },
            AlgebraKind::Naturals | AlgebraKind::Integers => Scalar::Int(int(v).ok_or_else(bad)?),
            AlgebraKind::IntegersMod(_) => {
                Scalar::Mod(int(v).and_then(|n| u64::try_from(n).ok()).ok_or_else(bad)?)
            }
            AlgebraKind::Tropical => match v {
                Value::String(s) if s == "inf" => Scalar::Trop(None),
                _ => Scalar::Trop(Some(int(v).ok_or_else(bad)?)),
            },
            AlgebraKind::QuantaleTable(t) => match v {
                Value::String(name) => Scalar::Elem(t.element_index(name).ok_or_else(bad)?),
                _ => Scalar::Elem(int(v).and_then(|n| u32::try_from(n).ok()).ok_or_else(bad)?),
            },
            AlgebraKind::RationalGoedel | AlgebraKind::RationalViterbi => match v {
                Value::String(s) => Scalar::Rat(s.trim().parse().map_err(|_| bad())?),
                _ => Scalar::Rat(BigRational::from_integer(int(v).ok_or_else(bad)?)),
            },
        };
        self.check(&s)?;
        Ok(s)
    }

    /// Inverse of [`Self::parse_scalar`]. Integers that fit in `i64` are
    /// written as JSON numbers.
    pub fn scalar_to_json(&self, s: &Scalar) -> serde_json::Value {
        use serde_json::Value;
        let int = |n: &BigInt| match i64::try_from(n) {
            Ok(x) => Value::from(x),
            Err(_) => Value::String(n.to_string()),
        };
        match s {
            Scalar::Bool(b) => Value::from(u8::from(*b)),
            Scalar::Int(n) => int(n),
            Scalar::Mod(r) => Value::from(*r),
            Scalar::Trop(None) => Value::String("inf".into()),
            Scalar::Trop(Some(n)) => int(n),
            Scalar::Rat(q) if q.is_integer() => int(q.numer()),
            Scalar::Rat(q) => Value::String(q.to_string()),
            Scalar::Elem(e) => match &self.kind {
                AlgebraKind::QuantaleTable(t) if !t.elements.is_empty() => Value::String(t.elements[*e as usize].clone()),
                _ => Value::from(*e),
            },
        }
    }

    /// JSON descriptor `{"kind": ..., "modulus": n?, "table": {...}?}`.
    pub fn descriptor(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("kind".into(), self.kind_name().into());
        match &self.kind {
            AlgebraKind::IntegersMod(n) => {
                obj.insert("modulus".into(), (*n).into());
            }
            AlgebraKind::QuantaleTable(t) => {
                obj.insert("table".into(), serde_json::to_value(t.as_ref()).expect("table serializes"));
            }
            _ => {}
        }
        serde_json::Value::Object(obj)
    }

    pub fn from_descriptor(v: &serde_json::Value) -> Result<Self, AlgebraError> {
        let kind = v
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| AlgebraError::Descriptor("missing string field \"kind\"".into()))?;
        match kind {
            "boolean" => Ok(Self::boolean()),
            "naturals" => Ok(Self::naturals()),
            "integers" => Ok(Self::integers()),
            "integers-mod-n" => {
                let m = v
                    .get("modulus")
                    .and_then(|m| m.as_u64())
                    .ok_or_else(|| AlgebraError::Descriptor("integers-mod-n needs a \"modulus\"".into()))?;
                Self::integers_mod(m)
            }
            "tropical" => Ok(Self::tropical()),
            "rational-goedel" => Ok(Self::rational_goedel()),
            "rational-viterbi" => Ok(Self::rational_viterbi()),
            "quantale-table" => {
                let table = v
                    .get("table")
                    .ok_or_else(|| AlgebraError::Descriptor("quantale-table needs a \"table\"".into()))?;
                let table: FiniteTable = serde_json::from_value(table.clone())
                    .map_err(|e| AlgebraError::Descriptor(format!("table: {e}")))?;
                Self::quantale_table(table)
            }
            other => Err(AlgebraError::Descriptor(format!("unknown algebra kind {other:?}"))),
        }
    }
}

impl fmt::Display for ScalarAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AlgebraKind::IntegersMod(n) => write!(f, "integers-mod-{n}"),
            AlgebraKind::QuantaleTable(t) => write!(f, "quantale-table[{}]", t.size()),
            _ => f.write_str(self.kind_name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tropical_operations() {
        let t = ScalarAlgebra::tropical();
        let a = Scalar::Trop(Some(3.into()));
        let b = Scalar::Trop(Some(5.into()));
        assert_eq!(t.add(&a, &b), a);
        assert_eq!(t.mul(&a, &b), Scalar::Trop(Some(8.into())));
        assert_eq!(t.add(&t.zero(), &b), b);
        assert_eq!(t.mul(&t.zero(), &b), t.zero());
        assert_eq!(t.mul(&t.one(), &b), b);
    }

    #[test]
    fn viterbi_and_goedel() {
        let half = Scalar::Rat(BigRational::new(1.into(), 2.into()));
        let two_fifths = Scalar::Rat(BigRational::new(2.into(), 5.into()));
        let v = ScalarAlgebra::rational_viterbi();
        assert_eq!(v.mul(&half, &two_fifths), Scalar::Rat(BigRational::new(1.into(), 5.into())));
        let g = ScalarAlgebra::rational_goedel();
        assert_eq!(g.mul(&half, &two_fifths), two_fifths);
        assert_eq!(g.add(&half, &two_fifths), half);
    }

    #[test]
    fn scalar_json_round_trip() {
        let cases = [
            (ScalarAlgebra::boolean(), json!(1)),
            (ScalarAlgebra::integers(), json!("-123456789012345678901234567890")),
            (ScalarAlgebra::integers_mod(7).unwrap(), json!(6)),
            (ScalarAlgebra::tropical(), json!("inf")),
            (ScalarAlgebra::rational_viterbi(), json!("3/7")),
        ];
        for (alg, v) in cases {
            let s = alg.parse_scalar(&v).unwrap();
            assert_eq!(alg.scalar_to_json(&s), v, "{alg}");
        }
    }

    #[test]
    fn rejects_out_of_carrier_values() {
        assert!(ScalarAlgebra::naturals().parse_scalar(&json!(-1)).is_err());
        assert!(ScalarAlgebra::integers_mod(4).unwrap().parse_scalar(&json!(4)).is_err());
        assert!(ScalarAlgebra::rational_goedel().parse_scalar(&json!("3/2")).is_err());
        assert!(ScalarAlgebra::boolean().parse_scalar(&json!(2)).is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let table = FiniteTable {
            elements: vec!["bot".into(), "top".into()],
            add: vec![vec![0, 1], vec![1, 1]],
            mul: vec![vec![0, 0], vec![0, 1]],
            zero: 0,
            one: 1,
        };
        for alg in [
            ScalarAlgebra::integers_mod(12).unwrap(),
            ScalarAlgebra::quantale_table(table).unwrap(),
            ScalarAlgebra::rational_goedel(),
        ] {
            assert_eq!(ScalarAlgebra::from_descriptor(&alg.descriptor()).unwrap(), alg);
        }
    }

    #[test]
    fn unclosed_table_reports_cell() {
        let table = FiniteTable {
            elements: vec![],
            add: vec![vec![0, 1], vec![1, 2]],
            mul: vec![vec![0, 0], vec![0, 1]],
            zero: 0,
            one: 1,
        };
        match ScalarAlgebra::quantale_table(table) {
            Err(AlgebraError::NotClosed { op, row, col, value }) => {
                assert_eq!((op.as_str(), row, col, value), ("add", 1, 1, 2));
            }
            other => panic!("expected table error, got {other:?}"),
        }
    }
}
