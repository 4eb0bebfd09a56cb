//! Arithmetic in GF(p^k) for q = p^k <= 2^16.
//!
//! Elements are encoded as integers in `[0, q)`: the base-p digits of the
//! code are the coefficients of the residue polynomial, lowest degree first.
//! Multiplication goes through exp/log tables over the smallest-code
//! primitive element.

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Element of a `GaloisField`, identified by its canonical code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus coefficients, lowest degree first, length k + 1.
    modulus: Vec<u32>,
    primitive: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Sorted divisors of `n`.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

// Polynomials over GF(p) as coefficient vectors, lowest degree first.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m is monic
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    poly_trim(r)
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn code_to_poly(code: u32, p: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut c = code;
    while c > 0 {
        out.push(c % p);
        c /= p;
    }
    out
}

fn poly_to_code(poly: &[u32], p: u32) -> u32 {
    poly.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `index`.
fn monic(index: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut poly = vec![0u32; deg as usize + 1];
    let mut c = index;
    for coeff in poly.iter_mut().take(deg as usize) {
        *coeff = c % p;
        c /= p;
    }
    poly[deg as usize] = 1;
    poly
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = (m.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for index in 0..p.pow(d) {
            if poly_rem(m, &monic(index, d, p), p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// Builds GF(p^k) with the lexicographically smallest monic irreducible
    /// modulus of degree k (coefficients compared from the top down).
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| {
                Error::UnsupportedSize(format!("field order {p}^{k} exceeds {MAX_FIELD_ORDER}"))
            })?;
        let (p, q) = (p as u32, q as u32);
        let modulus = (0..p.pow(k))
            .map(|index| monic(index, k, p))
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists");

        let slow_mul = |a: u32, b: u32| {
            poly_to_code(
                &poly_mul_mod(&code_to_poly(a, p), &code_to_poly(b, p), &modulus, p),
                p,
            )
        };
        let group = (q - 1) as u64;
        let proper: Vec<u64> = divisors(group)
            .into_iter()
            .filter(|&d| d < group)
            .collect();
        let slow_pow = |x: u32, e: u64| {
            let mut acc = 1u32;
            let mut base = x;
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let primitive = (1..q)
            .find(|&x| proper.iter().all(|&d| slow_pow(x, d) != 1))
            .expect("the multiplicative group is cyclic");

        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = slow_mul(cur, primitive);
        }
        debug_assert_eq!(cur, 1);
        Ok(GaloisField {
            p,
            k,
            q,
            modulus,
            primitive: FieldElement(primitive),
            exp,
            log,
        })
    }

    /// Field with `q` elements; `q` must be a prime power.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.q {
            Ok(FieldElement(code))
        } else {
            Err(Error::InvalidArgument(format!(
                "code {code} is not an element of GF({})",
                self.q
            )))
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % (self.q - 1);
        FieldElement(self.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroOrder);
        }
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (e % (self.q as u64 - 1))) % (self.q as u64 - 1)) as usize])
    }

    /// Least `d >= 1` with `x^d = 1`.
    pub fn element_order(&self, x: FieldElement) -> Result<u64> {
        if x.0 == 0 {
            return Err(Error::ZeroOrder);
        }
        let group = (self.q - 1) as u64;
        Ok(divisors(group)
            .into_iter()
            .find(|&d| self.pow(x, d) == FieldElement::ONE)
            .expect("x^(q-1) = 1"))
    }

    /// `g^((q-1)/d)` for the smallest-code primitive element `g`.
    pub fn element_of_order(&self, d: u64) -> Result<FieldElement> {
        let group = (self.q - 1) as u64;
        if d == 0 || group % d != 0 {
            return Err(Error::Divisibility {
                d,
                group_order: group,
            });
        }
        Ok(self.pow(self.primitive, group / d))
    }

    /// `{h, h^2, ..., h^d}` for `h` of order `d`, as a membership table
    /// indexed by code.
    pub fn subgroup_mask(&self, d: u64) -> Result<Vec<bool>> {
        let h = self.element_of_order(d)?;
        let mut mask = vec![false; self.q as usize];
        let mut cur = h;
        for _ in 0..d {
            mask[cur.0 as usize] = true;
            cur = self.mul(cur, h);
        }
        Ok(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(c: u32) -> FieldElement {
        FieldElement(c)
    }

    #[test]
    fn prime_field_and_gf4() {
        let f7 = GaloisField::new(7, 1).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(f7.mul(fe(a), fe(b)), fe(a * b % 7));
                assert_eq!(f7.add(fe(a), fe(b)), fe((a + b) % 7));
            }
        }
        let f4 = GaloisField::new(2, 2).unwrap();
        // x^2 + x + 1, lowest degree first
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let f8 = GaloisField::new(2, 3).unwrap();
        // x^3 + x + 1 is the smallest cubic
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
        let f9 = GaloisField::new(3, 2).unwrap();
        // x^2 + 1 is irreducible over GF(3) and smallest
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn gf9_group_order_exhaustive() {
        let f9 = GaloisField::new(3, 2).unwrap();
        for x in 1..9 {
            // repeated multiplication, not pow
            let mut acc = FieldElement::ONE;
            for _ in 0..8 {
                acc = f9.mul(acc, fe(x));
            }
            assert_eq!(acc, FieldElement::ONE, "x = {x}");
        }
    }

    #[test]
    fn orders() {
        let f7 = GaloisField::new(7, 1).unwrap();
        assert_eq!(f7.element_order(fe(6)).unwrap(), 2);
        assert_eq!(f7.element_order(fe(3)).unwrap(), 6);
        assert_eq!(f7.element_order(fe(0)), Err(Error::ZeroOrder));
        let f4 = GaloisField::new(2, 2).unwrap();
        assert_eq!(f4.element_order(fe(2)).unwrap(), 3);
        assert_eq!(f4.element_order(fe(3)).unwrap(), 3);

        assert_eq!(f7.element_of_order(1).unwrap(), fe(1));
        assert_eq!(f7.element_of_order(2).unwrap(), fe(6));
        assert_eq!(
            f7.element_of_order(4),
            Err(Error::Divisibility { d: 4, group_order: 6 })
        );
        assert_eq!(f7.primitive_element(), fe(3));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(GaloisField::new(6, 1).unwrap_err(), Error::NotPrime(6));
        assert!(matches!(GaloisField::new(2, 17), Err(Error::UnsupportedSize(_))));
        assert_eq!(GaloisField::with_order(12).unwrap_err(), Error::NotPrimePower(12));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [4u64, 8, 9, 25, 27] {
            let f = GaloisField::with_order(q).unwrap();
            let q = q as u32;
            for a in 0..q {
                let a = fe(a);
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                if a.0 != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                }
                for b in 0..q {
                    let b = fe(b);
                    for c in (0..q).step_by(3) {
                        let c = fe(c);
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_is_closed() {
        let f13 = GaloisField::new(13, 1).unwrap();
        for d in divisors(12) {
            let h = f13.element_of_order(d).unwrap();
            assert_eq!(f13.element_order(h).unwrap(), d);
            let mask = f13.subgroup_mask(d).unwrap();
            assert_eq!(mask.iter().filter(|&&m| m).count() as u64, d);
            for x in 0..13 {
                for y in 0..13 {
                    if mask[x] && mask[y] {
                        assert!(mask[f13.mul(fe(x as u32), fe(y as u32)).0 as usize]);
                    }
                }
            }
        }
    }
}
