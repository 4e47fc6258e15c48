use super::submodule::SubmoduleBasis;
use super::{AlgebraError, StructureAlgebra};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NilpotencyVerdict {
    Class(u32),
    NotNilpotentWithin(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ResidualVerdict {
    /// T_k lies in p^m Z_p^n for this k.
    Verified { depth: u32 },
    /// T_{k+1} = T_k != 0.
    RefutedAtDepth(u32),
    Inconclusive,
}

/// A = C + Z(A) for a class-2 algebra, with the product of C-basis vectors
/// expressed in centre coordinates.
#[derive(Clone, Debug)]
pub struct Class2Split {
    pub a: usize,
    pub b: usize,
    pub complement: Vec<Vec<i64>>,
    pub centre: SubmoduleBasis,
    /// constants[(i * a + j) * b + k]: coordinate k of c_i * c_j.
    pub constants: Vec<BigRational>,
}

impl Class2Split {
    /// Induced constants reduced modulo p^e (denominators are p-units).
    pub fn constants_mod(&self, p: u64, e: u32) -> Vec<i64> {
        let m = BigInt::from(p).pow(e);
        self.constants
            .iter()
            .map(|c| {
                let den = c.denom().mod_floor_big(&m);
                let inv = crate::exactmath::modp::inv(den.to_i128().unwrap(), m.to_i128().unwrap())
                    .expect("denominator is a unit");
                let num = c.numer().mod_floor_big(&m).to_i128().unwrap();
                (num * inv % m.to_i128().unwrap()) as i64
            })
            .collect()
    }
}

trait ModFloor {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

impl StructureAlgebra {
    /// T_{k+1} = span{x y, y x : x in T_k, y in T_1}.
    fn next_term(&self, t: &SubmoduleBasis) -> Result<SubmoduleBasis, AlgebraError> {
        let n = self.n();
        let mut gens = Vec::new();
        for x in &t.basis {
            for j in 0..n {
                let mut e = vec![0i64; n];
                e[j] = 1;
                gens.push(self.multiply(x, &e));
                gens.push(self.multiply(&e, x));
            }
        }
        SubmoduleBasis::span(n, self.p(), &gens)
    }

    /// Least c with T_{c+1} = 0, searched up to `depth_bound`.
    pub fn nilpotency_class(&self, depth_bound: u32) -> Result<NilpotencyVerdict, AlgebraError> {
        let mut t = SubmoduleBasis::full(self.n(), self.p());
        for k in 1..=depth_bound {
            t = self.next_term(&t)?;
            if t.is_zero() {
                return Ok(NilpotencyVerdict::Class(k));
            }
        }
        Ok(NilpotencyVerdict::NotNilpotentWithin(depth_bound))
    }

    /// Semidecision of the intersection of the chain T_k being zero.
    pub fn is_residually_nilpotent(&self, m: u32, depth_bound: u32) -> Result<ResidualVerdict, AlgebraError> {
        let mut t = SubmoduleBasis::full(self.n(), self.p());
        for k in 1..=depth_bound {
            if t.within_power(m) {
                return Ok(ResidualVerdict::Verified { depth: k });
            }
            let next = self.next_term(&t)?;
            if next.same_module(&t) {
                return Ok(ResidualVerdict::RefutedAtDepth(k));
            }
            t = next;
        }
        Ok(ResidualVerdict::Inconclusive)
    }

    /// Saturated basis of {z : e_i z = z e_i = 0 for all i}.
    pub fn centre(&self) -> Result<SubmoduleBasis, AlgebraError> {
        let n = self.n();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for i in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|j| q(self.c(i, j, k))).collect());
                rows.push((0..n).map(|j| q(self.c(j, i, k))).collect());
            }
        }
        let kernel = nullspace(&rows, n);
        let gens: Vec<Vec<i64>> = kernel
            .iter()
            .map(|v| {
                let mut l = BigInt::one();
                for x in v {
                    l = num_integer::Integer::lcm(&l, x.denom());
                }
                v.iter()
                    .map(|x| (x * q_big(&l)).to_integer().to_i64().ok_or(AlgebraError::Overflow("centre")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        SubmoduleBasis::span(n, self.p(), &gens)?.saturate()
    }

    /// Split along the centre; requires class at most 2.
    pub fn class2_split(&self) -> Result<Class2Split, AlgebraError> {
        match self.nilpotency_class(2)? {
            NilpotencyVerdict::Class(c) if c <= 2 => {}
            _ => return Err(AlgebraError::NotClass2),
        }
        let centre = self.centre()?;
        let complement = centre.complement();
        let (a, b) = (complement.len(), centre.rank());
        let mut constants = Vec::with_capacity(a * a * b);
        for x in &complement {
            for y in &complement {
                let prod = self.multiply(x, y);
                let coords = centre.coordinates(&prod).ok_or(AlgebraError::NotClass2)?;
                constants.extend(coords);
            }
        }
        Ok(Class2Split { a, b, complement, centre, constants })
    }
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn q_big(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Rational nullspace basis of a matrix with `cols` columns.
fn nullspace(rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::catalog;
    use super::*;

    fn alg(name: &str, p: u64) -> StructureAlgebra {
        catalog(name, p).unwrap().algebra
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(alg("abelian-3", 2).nilpotency_class(5).unwrap(), NilpotencyVerdict::Class(1));
        assert_eq!(alg("heisenberg", 2).nilpotency_class(5).unwrap(), NilpotencyVerdict::Class(2));
        assert_eq!(alg("filiform-4", 2).nilpotency_class(5).unwrap(), NilpotencyVerdict::Class(3));
        assert_eq!(
            alg("zp2-componentwise", 3).nilpotency_class(7).unwrap(),
            NilpotencyVerdict::NotNilpotentWithin(7)
        );
        assert_eq!(alg("pi-heisenberg", 2).nilpotency_class(5).unwrap(), NilpotencyVerdict::Class(2));
    }

    #[test]
    fn residual_examples() {
        assert_eq!(
            alg("heisenberg", 2).is_residually_nilpotent(3, 10).unwrap(),
            ResidualVerdict::Verified { depth: 3 }
        );
        assert_eq!(
            alg("zp2-componentwise", 5).is_residually_nilpotent(1, 10).unwrap(),
            ResidualVerdict::RefutedAtDepth(1)
        );
        assert!(matches!(
            alg("pi-zp2-componentwise", 3).is_residually_nilpotent(2, 10).unwrap(),
            ResidualVerdict::Verified { .. }
        ));
    }

    #[test]
    fn centre_examples() {
        let h = alg("heisenberg", 2);
        let z = h.centre().unwrap();
        assert_eq!(z.rank(), 1);
        assert!(z.contains(&[0, 0, 1]) && !z.contains(&[1, 0, 0]));
        assert!(z.saturated);
        assert_eq!(alg("abelian-3", 2).centre().unwrap().rank(), 3);
        assert_eq!(alg("zp2-componentwise", 3).centre().unwrap().rank(), 0);
        for name in ["heisenberg", "filiform-4", "pi-heisenberg"] {
            let a = alg(name, 3);
            for zb in &a.centre().unwrap().basis {
                for i in 0..a.n() {
                    let mut e = vec![0; a.n()];
                    e[i] = 1;
                    assert!(a.multiply(zb, &e).iter().all(|&x| x == 0));
                    assert!(a.multiply(&e, zb).iter().all(|&x| x == 0));
                }
            }
        }
    }

    #[test]
    fn pi_heisenberg_centre_is_saturated() {
        let z = alg("pi-heisenberg", 2).centre().unwrap();
        assert!(z.contains(&[0, 0, 1]));
    }

    #[test]
    fn class2_split_heisenberg() {
        let s = alg("heisenberg", 3).class2_split().unwrap();
        assert_eq!((s.a, s.b), (2, 1));
        assert_eq!(s.constants_mod(3, 2), vec![0, 1, 8, 0]);
        assert_eq!(alg("filiform-4", 3).class2_split().err(), Some(AlgebraError::NotClass2));
        let ab = alg("abelian-2", 2).class2_split().unwrap();
        assert_eq!((ab.a, ab.b), (0, 2));
    }
}
