//! Finite-dimensional dg associative and dg Lie algebras, given by
//! structure constants on a graded basis. Differentials have degree `+1`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::qlinalg::{parse_rational, Rational};

pub type Vector = BTreeMap<usize, Rational>;

/// The first structure law found to fail, with the basis elements involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: &'static str,
    pub at: Vec<usize>,
}

fn koszul(a: i64, b: i64) -> Rational {
    Rational::from_integer(if (a * b).rem_euclid(2) == 0 { 1.into() } else { (-1).into() })
}

fn parity(a: i64) -> Rational {
    koszul(a, 1)
}

fn add_scaled(acc: &mut Vector, v: &Vector, c: &Rational) {
    for (k, x) in v {
        let e = acc.entry(*k).or_insert_with(Rational::zero);
        *e += x * c;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

fn sub(a: &Vector, b: &Vector) -> Vector {
    let mut out = a.clone();
    add_scaled(&mut out, b, &Rational::from_integer((-1).into()));
    out
}

fn unit(k: usize) -> Vector {
    Vector::from([(k, Rational::from_integer(1.into()))])
}

/// A bilinear operation with a differential on a graded basis; shared by
/// the associative and Lie cases.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Structure {
    degrees: Vec<i64>,
    differential: Vec<Vector>,
    operation: BTreeMap<(usize, usize), Vector>,
}

impl Structure {
    fn new(degrees: Vec<i64>) -> Self {
        let n = degrees.len();
        Structure { degrees, differential: vec![Vector::new(); n], operation: BTreeMap::new() }
    }

    fn op(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::new();
        for (i, x) in a {
            for (j, y) in b {
                if let Some(v) = self.operation.get(&(*i, *j)) {
                    add_scaled(&mut out, v, &(x * y));
                }
            }
        }
        out
    }

    fn d(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (i, x) in v {
            add_scaled(&mut out, &self.differential[*i], x);
        }
        out
    }

    fn check_degrees(&self) -> Result<(), Violation> {
        let deg = &self.degrees;
        for (i, v) in self.differential.iter().enumerate() {
            if let Some(k) = v.keys().find(|&&k| deg[k] != deg[i] + 1) {
                return Err(Violation { law: "degree", at: vec![i, *k] });
            }
        }
        for (&(i, j), v) in &self.operation {
            if let Some(k) = v.keys().find(|&&k| deg[k] != deg[i] + deg[j]) {
                return Err(Violation { law: "degree", at: vec![i, j, *k] });
            }
        }
        Ok(())
    }

    fn check_d_squared(&self) -> Result<(), Violation> {
        for i in 0..self.degrees.len() {
            if !self.d(&self.differential[i]).is_empty() {
                return Err(Violation { law: "d²", at: vec![i] });
            }
        }
        Ok(())
    }

    /// `d(ab) = (da)b + (−1)^{|a|} a(db)`.
    fn check_derivation(&self) -> Result<(), Violation> {
        let n = self.degrees.len();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (unit(i), unit(j));
                let left = self.d(&self.op(&a, &b));
                let mut right = self.op(&self.d(&a), &b);
                add_scaled(&mut right, &self.op(&a, &self.d(&b)), &parity(self.degrees[i]));
                if left != right {
                    return Err(Violation { law: "leibniz", at: vec![i, j] });
                }
            }
        }
        Ok(())
    }

    fn set_differential(&mut self, i: usize, v: Vector) {
        self.differential[i] = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }

    fn set_operation(&mut self, i: usize, j: usize, v: Vector) {
        let v: Vector = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if v.is_empty() {
            self.operation.remove(&(i, j));
        } else {
            self.operation.insert((i, j), v);
        }
    }
}

/// An associative dg algebra, possibly without unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgAlgebra(Structure);

/// A dg Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgLieAlgebra(Structure);

macro_rules! shared {
    ($t:ty, $op:ident, $set:ident) => {
        impl $t {
            /// Zero structure on a basis with the given degrees.
            pub fn new(degrees: Vec<i64>) -> Self {
                Self(Structure::new(degrees))
            }

            pub fn dim(&self) -> usize {
                self.0.degrees.len()
            }

            pub fn degrees(&self) -> &[i64] {
                &self.0.degrees
            }

            pub fn degree(&self, i: usize) -> i64 {
                self.0.degrees[i]
            }

            /// Image of basis element `i` under the differential.
            pub fn differential_of(&self, i: usize) -> &Vector {
                &self.0.differential[i]
            }

            pub fn set_differential(&mut self, i: usize, v: Vector) {
                self.0.set_differential(i, v)
            }

            pub fn d(&self, v: &Vector) -> Vector {
                self.0.d(v)
            }

            pub fn $op(&self, a: &Vector, b: &Vector) -> Vector {
                self.0.op(a, b)
            }

            pub fn $set(&mut self, i: usize, j: usize, v: Vector) {
                self.0.set_operation(i, j, v)
            }

            /// Structure constants `(i, j) ↦ Σ c_k e_k`.
            pub fn constants(&self) -> &BTreeMap<(usize, usize), Vector> {
                &self.0.operation
            }

            pub fn to_json(&self) -> serde_json::Value {
                let d: Vec<(usize, usize, String)> = self
                    .0
                    .differential
                    .iter()
                    .enumerate()
                    .flat_map(|(i, v)| v.iter().map(move |(k, c)| (i, *k, c.to_string())))
                    .collect();
                let ops: Vec<(usize, usize, usize, String)> = self
                    .0
                    .operation
                    .iter()
                    .flat_map(|(&(i, j), v)| v.iter().map(move |(k, c)| (i, j, *k, c.to_string())))
                    .collect();
                serde_json::json!({ "degrees": self.0.degrees, "differential": d, stringify!($op): ops })
            }

            pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
                #[derive(Deserialize)]
                struct Raw {
                    degrees: Vec<i64>,
                    #[serde(default)]
                    differential: Vec<(usize, usize, String)>,
                    #[serde(default)]
                    $op: Vec<(usize, usize, usize, String)>,
                }
                let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
                let n = raw.degrees.len();
                let mut s = Structure::new(raw.degrees);
                for (i, k, c) in raw.differential {
                    if i >= n || k >= n {
                        return Err(format!("differential index out of range: {i} {k}"));
                    }
                    let c = parse_rational(&c).map_err(|e| e.to_string())?;
                    let mut v = s.differential[i].clone();
                    add_scaled(&mut v, &unit(k), &c);
                    s.set_differential(i, v);
                }
                for (i, j, k, c) in raw.$op {
                    if i >= n || j >= n || k >= n {
                        return Err(format!("structure constant out of range: {i} {j} {k}"));
                    }
                    let c = parse_rational(&c).map_err(|e| e.to_string())?;
                    let mut v = s.operation.get(&(i, j)).cloned().unwrap_or_default();
                    add_scaled(&mut v, &unit(k), &c);
                    s.set_operation(i, j, v);
                }
                Ok(Self(s))
            }
        }
    };
}

shared!(DgAlgebra, product, set_product);
shared!(DgLieAlgebra, bracket, set_bracket);

impl DgAlgebra {
    /// Degrees, `d² = 0`, the Leibniz rule and associativity on basis triples.
    pub fn check(&self) -> Result<(), Violation> {
        let s = &self.0;
        s.check_degrees()?;
        s.check_d_squared()?;
        s.check_derivation()?;
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = s.op(&unit(i), &unit(j));
                for k in 0..n {
                    let left = s.op(&ij, &unit(k));
                    let right = s.op(&unit(i), &s.op(&unit(j), &unit(k)));
                    if left != right {
                        return Err(Violation { law: "associativity", at: vec![i, j, k] });
                    }
                }
            }
        }
        Ok(())
    }

    /// `ab = (−1)^{|a||b|} ba` on basis pairs.
    pub fn commutativity_violation(&self) -> Option<Violation> {
        let s = &self.0;
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let ab = s.op(&unit(i), &unit(j));
                let mut ba = s.op(&unit(j), &unit(i));
                ba.values_mut().for_each(|c| *c *= koszul(s.degrees[i], s.degrees[j]));
                if ab != ba {
                    return Some(Violation { law: "graded commutativity", at: vec![i, j] });
                }
            }
        }
        None
    }

    /// The graded commutator bracket `[a, b] = ab − (−1)^{|a||b|} ba`.
    pub fn commutator_lie(&self) -> DgLieAlgebra {
        let s = &self.0;
        let n = self.dim();
        let mut lie = DgLieAlgebra::new(s.degrees.clone());
        lie.0.differential = s.differential.clone();
        for i in 0..n {
            for j in 0..n {
                let mut ba = s.op(&unit(j), &unit(i));
                ba.values_mut().for_each(|c| *c *= koszul(s.degrees[i], s.degrees[j]));
                lie.0.set_operation(i, j, sub(&s.op(&unit(i), &unit(j)), &ba));
            }
        }
        lie
    }
}

impl DgLieAlgebra {
    /// Degrees, `d² = 0`, graded antisymmetry, graded Jacobi
    /// `[a,[b,c]] = [[a,b],c] + (−1)^{|a||b|}[b,[a,c]]` and `d` a derivation.
    pub fn check(&self) -> Result<(), Violation> {
        let s = &self.0;
        s.check_degrees()?;
        s.check_d_squared()?;
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ab = s.op(&unit(i), &unit(j));
                let mut ba = s.op(&unit(j), &unit(i));
                ba.values_mut().for_each(|c| *c *= -koszul(s.degrees[i], s.degrees[j]));
                if ab != ba {
                    return Err(Violation { law: "antisymmetry", at: vec![i, j] });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (unit(i), unit(j), unit(k));
                    let left = s.op(&a, &s.op(&b, &c));
                    let mut right = s.op(&s.op(&a, &b), &c);
                    add_scaled(&mut right, &s.op(&b, &s.op(&a, &c)), &koszul(s.degrees[i], s.degrees[j]));
                    if left != right {
                        return Err(Violation { law: "jacobi", at: vec![i, j, k] });
                    }
                }
            }
        }
        s.check_derivation().map_err(|v| Violation { law: "derivation", at: v.at })
    }

    /// The abelian Lie algebra on `n` basis elements of degree 0.
    pub fn abelian(n: usize) -> Self {
        Self::new(vec![0; n])
    }
}
