//! The category of free finite-dimensional modules over a scalar algebra.
//!
//! Objects are positive dimensions, morphisms `n -> m` are `m x n` matrices,
//! composition is the semiring matrix product and the tensor product is the
//! Kronecker product. Tensor indices flatten in mixed radix with the left
//! factor most significant, so associators and unitors are identities and
//! only the symmetry is a non-trivial permutation.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, Scalar, ScalarAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("cannot compose: codomain {f_cod} of the first map differs from domain {g_dom} of the second")]
    Composition { f_cod: usize, g_dom: usize },
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },
    #[error("argument error: {0}")]
    Argument(String),
    #[error("dimension 0 is not an object")]
    ZeroDimension,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("matrix json: {0}")]
    Json(String),
}

/// Mixed-radix index arithmetic, most significant digit first.
pub mod radix {
    pub fn digits(mut index: usize, radices: &[usize]) -> Vec<usize> {
        let mut out = vec![0; radices.len()];
        for (slot, r) in out.iter_mut().zip(radices).rev() {
            *slot = index % r;
            index /= r;
        }
        out
    }

    pub fn flatten(digits: &[usize], radices: &[usize]) -> usize {
        digits.iter().zip(radices).fold(0, |acc, (d, r)| acc * r + d)
    }

    /// Sorted prime factorisation by trial division; `1` has the empty word.
    pub fn prime_word(mut n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            while n.is_multiple_of(p) {
                out.push(p);
                n /= p;
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    pub fn is_prime(n: usize) -> bool {
        n >= 2 && prime_word(n).len() == 1
    }
}

/// A positive dimension; dimension 1 is the tensor unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatObject(usize);

impl MatObject {
    pub const UNIT: MatObject = MatObject(1);

    pub fn new(dim: usize) -> Result<Self, MatError> {
        if dim == 0 {
            Err(MatError::ZeroDimension)
        } else {
            Ok(Self(dim))
        }
    }

    pub fn dim(self) -> usize {
        self.0
    }

    pub fn tensor(self, other: MatObject) -> MatObject {
        MatObject(self.0 * other.0)
    }
}

/// Which structural isomorphism to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structural {
    Associator,
    LeftUnitor,
    RightUnitor,
    Symmetry,
}

/// An `S`-matrix `dom -> cod`, stored row-major with `cod` rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatMorphism {
    algebra: ScalarAlgebra,
    dom: usize,
    cod: usize,
    entries: Vec<Scalar>,
}

fn same_algebra(a: &ScalarAlgebra, b: &ScalarAlgebra) -> Result<(), MatError> {
    if a == b {
        Ok(())
    } else {
        Err(MatError::AlgebraMismatch { left: a.to_string(), right: b.to_string() })
    }
}

impl MatMorphism {
    pub fn new(algebra: ScalarAlgebra, dom: usize, cod: usize, entries: Vec<Scalar>) -> Result<Self, MatError> {
        if dom == 0 || cod == 0 {
            return Err(MatError::ZeroDimension);
        }
        if entries.len() != dom * cod {
            return Err(MatError::Argument(format!("{} entries for a {cod}x{dom} matrix", entries.len())));
        }
        for e in &entries {
            algebra.check(e)?;
        }
        Ok(Self { algebra, dom, cod, entries })
    }

    /// Builds `cod x dom` entries from `f(row, col)`; entries must be in the carrier.
    pub fn from_fn(algebra: &ScalarAlgebra, dom: usize, cod: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        assert!(dom > 0 && cod > 0, "dimension 0 is not an object");
        let entries = (0..cod).flat_map(|r| (0..dom).map(move |c| (r, c))).map(|(r, c)| f(r, c)).collect();
        Self { algebra: algebra.clone(), dom, cod, entries }
    }

    pub fn identity(algebra: &ScalarAlgebra, n: usize) -> Self {
        let (zero, one) = (algebra.zero(), algebra.one());
        Self::from_fn(algebra, n, n, |r, c| if r == c { one.clone() } else { zero.clone() })
    }

    pub fn zero(algebra: &ScalarAlgebra, dom: usize, cod: usize) -> Self {
        let z = algebra.zero();
        Self::from_fn(algebra, dom, cod, |_, _| z.clone())
    }

    /// Basis state `|k>` of dimension `p`, a morphism `1 -> p`.
    pub fn ket(algebra: &ScalarAlgebra, p: usize, k: usize) -> Self {
        assert!(k < p, "basis index {k} out of range for dimension {p}");
        let (zero, one) = (algebra.zero(), algebra.one());
        Self::from_fn(algebra, 1, p, |r, _| if r == k { one.clone() } else { zero.clone() })
    }

    /// Basis effect `<k|` of dimension `p`, a morphism `p -> 1`.
    pub fn bra(algebra: &ScalarAlgebra, p: usize, k: usize) -> Self {
        assert!(k < p, "basis index {k} out of range for dimension {p}");
        let (zero, one) = (algebra.zero(), algebra.one());
        Self::from_fn(algebra, p, 1, |_, c| if c == k { one.clone() } else { zero.clone() })
    }

    /// Permutation matrix sending basis vector `i` to `image[i]`.
    pub fn permutation(algebra: &ScalarAlgebra, image: &[usize]) -> Self {
        let (zero, one) = (algebra.zero(), algebra.one());
        Self::from_fn(algebra, image.len(), image.len(), |r, c| if image[c] == r { one.clone() } else { zero.clone() })
    }

    /// Symmetry `p (x) q -> q (x) p`, sending `|i>|j>` to `|j>|i>`.
    pub fn symmetry(algebra: &ScalarAlgebra, p: usize, q: usize) -> Self {
        let image: Vec<usize> = (0..p * q).map(|x| (x % q) * p + x / q).collect();
        Self::permutation(algebra, &image)
    }

    pub fn algebra(&self) -> &ScalarAlgebra {
        &self.algebra
    }

    pub fn dom(&self) -> MatObject {
        MatObject(self.dom)
    }

    pub fn cod(&self) -> MatObject {
        MatObject(self.cod)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.dom + col]
    }

    /// `self . f`: apply `f` first.
    pub fn after(&self, f: &MatMorphism) -> Result<MatMorphism, MatError> {
        compose(self, f)
    }

    /// Entrywise sum (join for quantales).
    pub fn add(&self, other: &MatMorphism) -> Result<MatMorphism, MatError> {
        same_algebra(&self.algebra, &other.algebra)?;
        if (self.dom, self.cod) != (other.dom, other.cod) {
            return Err(MatError::Argument(format!(
                "cannot add {}x{} and {}x{}",
                self.cod, self.dom, other.cod, other.dom
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| self.algebra.add(a, b)).collect();
        Ok(Self { entries, ..self.clone() })
    }

    pub fn scale(&self, s: &Scalar) -> MatMorphism {
        let entries = self.entries.iter().map(|a| self.algebra.mul(s, a)).collect();
        Self { entries, ..self.clone() }
    }

    /// Rebuilds the matrix as `sum_{r,c} M[r][c] |r><c|`.
    pub fn basis_reconstruction(&self) -> MatMorphism {
        let mut acc = MatMorphism::zero(&self.algebra, self.dom, self.cod);
        for r in 0..self.cod {
            let ket = MatMorphism::ket(&self.algebra, self.cod, r);
            for c in 0..self.dom {
                let bra = MatMorphism::bra(&self.algebra, self.dom, c);
                let unit = compose(&ket, &bra).expect("ket/bra compose through the unit");
                acc = acc.add(&unit.scale(self.entry(r, c))).expect("same shape");
            }
        }
        acc
    }

    pub fn is_permutation(&self) -> bool {
        let (zero, one) = (self.algebra.zero(), self.algebra.one());
        self.dom == self.cod
            && (0..self.cod).all(|r| {
                let row = &self.entries[r * self.dom..(r + 1) * self.dom];
                row.iter().filter(|x| **x == one).count() == 1 && row.iter().all(|x| *x == one || *x == zero)
            })
            && (0..self.dom).all(|c| (0..self.cod).filter(|&r| *self.entry(r, c) == one).count() == 1)
    }

    /// Transpose; the inverse of a permutation matrix.
    pub fn transpose(&self) -> MatMorphism {
        MatMorphism::from_fn(&self.algebra, self.cod, self.dom, |r, c| self.entry(c, r).clone())
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.cod)
            .map(|r| Value::Array((0..self.dom).map(|c| self.algebra.scalar_to_json(self.entry(r, c))).collect()))
            .collect();
        json!({"algebra": self.algebra.descriptor(), "dom": self.dom, "cod": self.cod, "entries": rows})
    }

    /// Parses `{"algebra": .., "dom": n, "cod": m, "entries": [[..], ..]}`.
    /// When `algebra` is given it overrides (and must agree with) any descriptor.
    pub fn from_json(v: &Value, algebra: Option<&ScalarAlgebra>) -> Result<Self, MatError> {
        let alg = match (v.get("algebra"), algebra) {
            (Some(d), given) => {
                let parsed = ScalarAlgebra::from_descriptor(d)?;
                if let Some(g) = given {
                    same_algebra(g, &parsed)?;
                }
                parsed
            }
            (None, Some(g)) => g.clone(),
            (None, None) => return Err(MatError::Json("missing \"algebra\"".into())),
        };
        let rows = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| MatError::Json("missing \"entries\" array".into()))?;
        let cod = v.get("cod").and_then(Value::as_u64).map_or(rows.len(), |n| n as usize);
        let dom = match v.get("dom").and_then(Value::as_u64) {
            Some(n) => n as usize,
            None => rows.first().and_then(Value::as_array).map_or(0, Vec::len),
        };
        if rows.len() != cod {
            return Err(MatError::Json(format!("{} rows for codomain {cod}", rows.len())));
        }
        let mut entries = Vec::with_capacity(dom * cod);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| MatError::Json(format!("row {r} is not an array")))?;
            if row.len() != dom {
                return Err(MatError::Json(format!("row {r} has {} entries for domain {dom}", row.len())));
            }
            for x in row {
                entries.push(alg.parse_scalar(x)?);
            }
        }
        MatMorphism::new(alg, dom, cod, entries)
    }
}

impl fmt::Debug for MatMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}]({} -> {})[", self.algebra, self.dom, self.cod)?;
        for r in 0..self.cod {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.dom {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.entry(r, c))?;
            }
        }
        f.write_str("]")
    }
}

/// `g . f`, the semiring matrix product.
pub fn compose(g: &MatMorphism, f: &MatMorphism) -> Result<MatMorphism, MatError> {
    same_algebra(&g.algebra, &f.algebra)?;
    if f.cod != g.dom {
        return Err(MatError::Composition { f_cod: f.cod, g_dom: g.dom });
    }
    let alg = &g.algebra;
    let zero = alg.zero();
    let mut entries = vec![zero.clone(); g.cod * f.dom];
    for i in 0..g.cod {
        for k in 0..g.dom {
            let a = g.entry(i, k);
            if *a == zero {
                continue;
            }
            for j in 0..f.dom {
                let prod = alg.mul(a, f.entry(k, j));
                let slot = &mut entries[i * f.dom + j];
                *slot = alg.add(slot, &prod);
            }
        }
    }
    Ok(MatMorphism { algebra: alg.clone(), dom: f.dom, cod: g.cod, entries })
}

/// Kronecker product, left factor most significant.
pub fn tensor(f: &MatMorphism, g: &MatMorphism) -> Result<MatMorphism, MatError> {
    same_algebra(&f.algebra, &g.algebra)?;
    let alg = &f.algebra;
    Ok(MatMorphism::from_fn(alg, f.dom * g.dom, f.cod * g.cod, |r, c| {
        alg.mul(f.entry(r / g.cod, c / g.dom), g.entry(r % g.cod, c % g.dom))
    }))
}

/// Tensor of a sequence; the empty tensor is the identity on the unit.
pub fn tensor_all<'a>(algebra: &ScalarAlgebra, fs: impl IntoIterator<Item = &'a MatMorphism>) -> Result<MatMorphism, MatError> {
    fs.into_iter().try_fold(MatMorphism::identity(algebra, 1), |acc, f| tensor(&acc, f))
}

/// Structural isomorphisms in strictified form.
///
/// Associators take three dimensions, unitors one, the symmetry two
/// (`sigma_{p,q}: p (x) q -> q (x) p`).
pub fn structural_morphism(kind: Structural, dims: &[usize], algebra: &ScalarAlgebra) -> Result<MatMorphism, MatError> {
    let arity = match kind {
        Structural::Associator => 3,
        Structural::LeftUnitor | Structural::RightUnitor => 1,
        Structural::Symmetry => 2,
    };
    if dims.len() != arity {
        return Err(MatError::Argument(format!("{kind:?} takes {arity} dimensions, got {}", dims.len())));
    }
    if dims.contains(&0) {
        return Err(MatError::ZeroDimension);
    }
    Ok(match kind {
        Structural::Associator => MatMorphism::identity(algebra, dims.iter().product()),
        Structural::LeftUnitor | Structural::RightUnitor => MatMorphism::identity(algebra, dims[0]),
        Structural::Symmetry => MatMorphism::symmetry(algebra, dims[0], dims[1]),
    })
}

/// Every morphism `dom -> cod` over a finite algebra, in lexicographic entry order.
pub fn all_morphisms(algebra: &ScalarAlgebra, dom: usize, cod: usize) -> Option<Vec<MatMorphism>> {
    let elems = algebra.elements()?;
    let n = dom * cod;
    let count = elems.len().checked_pow(n as u32)?;
    Some(
        (0..count)
            .map(|mut code| {
                let mut entries = vec![elems[0].clone(); n];
                for slot in entries.iter_mut().rev() {
                    *slot = elems[code % elems.len()].clone();
                    code /= elems.len();
                }
                MatMorphism { algebra: algebra.clone(), dom, cod, entries }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b() -> ScalarAlgebra {
        ScalarAlgebra::boolean()
    }

    fn bools(m: &MatMorphism) -> Vec<bool> {
        m.entries().iter().map(|s| *s == Scalar::Bool(true)).collect()
    }

    #[test]
    fn identity_is_neutral() {
        for m in all_morphisms(&b(), 2, 3).unwrap() {
            assert_eq!(compose(&MatMorphism::identity(&b(), 3), &m).unwrap(), m);
            assert_eq!(compose(&m, &MatMorphism::identity(&b(), 2)).unwrap(), m);
        }
    }

    #[test]
    fn boolean_product_matches_elementwise_oracle() {
        let all = all_morphisms(&b(), 2, 2).unwrap();
        assert_eq!(all.len(), 16);
        for g in &all {
            for f in &all {
                let (gb, fb) = (bools(g), bools(f));
                let oracle: Vec<bool> = (0..4)
                    .map(|x| {
                        let (i, j) = (x / 2, x % 2);
                        (0..2).any(|k| gb[i * 2 + k] && fb[k * 2 + j])
                    })
                    .collect();
                assert_eq!(bools(&compose(g, f).unwrap()), oracle);
            }
        }
    }

    #[test]
    fn bras_and_kets_are_orthonormal() {
        for p in [2, 3, 5] {
            for i in 0..p {
                for j in 0..p {
                    let s = compose(&MatMorphism::bra(&b(), p, i), &MatMorphism::ket(&b(), p, j)).unwrap();
                    assert_eq!(s.entries(), &[Scalar::Bool(i == j)]);
                }
            }
        }
    }

    #[test]
    fn ket_tensor_follows_index_convention() {
        let z = ScalarAlgebra::integers();
        for (p, q) in [(2, 3), (3, 2), (5, 2)] {
            for i in 0..p {
                for j in 0..q {
                    let t = tensor(&MatMorphism::ket(&z, p, i), &MatMorphism::ket(&z, q, j)).unwrap();
                    assert_eq!(t, MatMorphism::ket(&z, p * q, i * q + j));
                }
            }
        }
    }

    #[test]
    fn unit_dimension_is_tensor_unit() {
        for f in all_morphisms(&b(), 2, 3).unwrap() {
            assert_eq!(tensor(&f, &MatMorphism::identity(&b(), 1)).unwrap(), f);
            assert_eq!(tensor(&MatMorphism::identity(&b(), 1), &f).unwrap(), f);
        }
    }

    #[test]
    fn exchange_law_exhaustive_small() {
        // (f (x) g) . (a (x) b) = (f . a) (x) (g . b), all boolean maps 1..2 dims
        let dims = [1usize, 2];
        for &x in &dims {
            for &y in &dims {
                for &z in &dims {
                    for &u in &dims {
                        for &v in &dims {
                            for &w in &dims {
                                let fs = all_morphisms(&b(), y, z).unwrap();
                                let as_ = all_morphisms(&b(), x, y).unwrap();
                                let gs = all_morphisms(&b(), v, w).unwrap();
                                let bs = all_morphisms(&b(), u, v).unwrap();
                                for f in &fs {
                                    for a in &as_ {
                                        for g in &gs {
                                            for bb in &bs {
                                                let lhs = compose(&tensor(f, g).unwrap(), &tensor(a, bb).unwrap()).unwrap();
                                                let rhs = tensor(&compose(f, a).unwrap(), &compose(g, bb).unwrap()).unwrap();
                                                assert_eq!(lhs, rhs);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn composition_associative_boolean_dims_3() {
        // all 3x3 boolean triples would be 2^27; sweep all f, g with a fixed sample of h
        let all = all_morphisms(&b(), 3, 3).unwrap();
        for h in all.iter().step_by(37) {
            for g in all.iter().step_by(5) {
                for f in all.iter().step_by(11) {
                    let l = compose(&compose(h, g).unwrap(), f).unwrap();
                    let r = compose(h, &compose(g, f).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn symmetry_involutive_and_unit() {
        let s23 = structural_morphism(Structural::Symmetry, &[2, 3], &b()).unwrap();
        let s32 = structural_morphism(Structural::Symmetry, &[3, 2], &b()).unwrap();
        assert_eq!(compose(&s23, &s32).unwrap(), MatMorphism::identity(&b(), 6));
        for n in 1..5 {
            assert_eq!(MatMorphism::symmetry(&b(), 1, n), MatMorphism::identity(&b(), n));
        }
        assert!(s23.is_permutation());
    }

    #[test]
    fn hexagon_instance() {
        // sigma_{A, B(x)C} = (id_B (x) sigma_{A,C}) . (sigma_{A,B} (x) id_C) at (2, 2, 3)
        let alg = b();
        let lhs = MatMorphism::symmetry(&alg, 2, 6);
        let rhs = compose(
            &tensor(&MatMorphism::identity(&alg, 2), &MatMorphism::symmetry(&alg, 2, 3)).unwrap(),
            &tensor(&MatMorphism::symmetry(&alg, 2, 2), &MatMorphism::identity(&alg, 3)).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
        // the oracle: index permutation (a, b, c) -> (b, c, a)
        for a in 0..2 {
            for bb in 0..2 {
                for c in 0..3 {
                    let src = radix::flatten(&[a, bb, c], &[2, 2, 3]);
                    let dst = radix::flatten(&[bb, c, a], &[2, 3, 2]);
                    assert_eq!(*lhs.entry(dst, src), Scalar::Bool(true));
                }
            }
        }
    }

    #[test]
    fn symmetry_is_natural_boolean_dims_2() {
        for p in 1..=2 {
            for p2 in 1..=2 {
                for q in 1..=2 {
                    for q2 in 1..=2 {
                        for f in all_morphisms(&b(), p, q).unwrap() {
                            for g in all_morphisms(&b(), p2, q2).unwrap() {
                                let lhs = compose(&MatMorphism::symmetry(&b(), q, q2), &tensor(&f, &g).unwrap()).unwrap();
                                let rhs = compose(&tensor(&g, &f).unwrap(), &MatMorphism::symmetry(&b(), p, p2)).unwrap();
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn structural_arity_errors() {
        assert!(matches!(structural_morphism(Structural::Symmetry, &[2], &b()), Err(MatError::Argument(_))));
        assert!(matches!(structural_morphism(Structural::Associator, &[2, 2], &b()), Err(MatError::Argument(_))));
        assert_eq!(structural_morphism(Structural::Associator, &[2, 2, 3], &b()).unwrap(), MatMorphism::identity(&b(), 12));
    }

    #[test]
    fn composition_and_algebra_errors() {
        let f = MatMorphism::identity(&b(), 2);
        let g = MatMorphism::identity(&b(), 3);
        assert_eq!(compose(&g, &f), Err(MatError::Composition { f_cod: 2, g_dom: 3 }));
        let z = MatMorphism::identity(&ScalarAlgebra::integers(), 2);
        assert!(matches!(compose(&z, &f), Err(MatError::AlgebraMismatch { .. })));
        assert!(matches!(tensor(&z, &f), Err(MatError::AlgebraMismatch { .. })));
        assert_eq!(MatObject::new(0), Err(MatError::ZeroDimension));
    }

    #[test]
    fn json_round_trip() {
        let alg = ScalarAlgebra::integers_mod(5).unwrap();
        let m = MatMorphism::from_fn(&alg, 3, 2, |r, c| Scalar::Mod(((r * 3 + c) % 5) as u64));
        assert_eq!(MatMorphism::from_json(&m.to_json(), None).unwrap(), m);
        assert!(MatMorphism::from_json(&json!({"algebra": {"kind": "boolean"}, "entries": [[1, 0], [1]]}), None).is_err());
    }

    fn mod_matrix(n: u64) -> impl Strategy<Value = (usize, usize, Vec<u64>)> {
        (1usize..4, 1usize..4).prop_flat_map(move |(d, c)| (Just(d), Just(c), proptest::collection::vec(0..n, d * c)))
    }

    fn build(alg: &ScalarAlgebra, (d, c, v): &(usize, usize, Vec<u64>)) -> MatMorphism {
        MatMorphism::new(alg.clone(), *d, *c, v.iter().map(|x| Scalar::Mod(*x)).collect()).unwrap()
    }

    proptest! {
        #[test]
        fn basis_reconstruction_is_identity(m in mod_matrix(6)) {
            let alg = ScalarAlgebra::integers_mod(6).unwrap();
            let m = build(&alg, &m);
            prop_assert_eq!(m.basis_reconstruction(), m);
        }

        #[test]
        fn exchange_law_sampled_mod_n(f in mod_matrix(7), g in mod_matrix(7), a in 1usize..4, c in 1usize..4, seed in 0u64..1000) {
            let alg = ScalarAlgebra::integers_mod(7).unwrap();
            let (f, g) = (build(&alg, &f), build(&alg, &g));
            let fa = MatMorphism::from_fn(&alg, a, f.dom().dim(), |r, cc| Scalar::Mod((seed + (r * 5 + cc * 3) as u64) % 7));
            let gc = MatMorphism::from_fn(&alg, c, g.dom().dim(), |r, cc| Scalar::Mod((seed * 3 + (r + cc * 2) as u64) % 7));
            let lhs = compose(&tensor(&f, &g).unwrap(), &tensor(&fa, &gc).unwrap()).unwrap();
            let rhs = tensor(&compose(&f, &fa).unwrap(), &compose(&g, &gc).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
