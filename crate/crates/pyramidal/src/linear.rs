//! Finite fields F_{p^e}, matrices over them, Singer cycles and their lifts
//! to Z/2^l, and conversion of linear/affine actions into permutation groups.

use std::collections::HashSet;

use thiserror::Error;

use crate::arith::is_prime;
use crate::group::{GroupError, PermGroup};
use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinearError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of size {p}^{e} exceeds the supported range")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("{0} is not an odd prime power")]
    NotOddPrimePower(u64),
    #[error("parameter out of the supported range")]
    OutOfRange,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("2^{0} - 1 is not prime")]
    CompositeMersenne(u32),
    #[error("vector space too large for desk scale")]
    SpaceTooLarge,
    #[error(transparent)]
    Group(#[from] GroupError),
}

const FIELD_SIZE_CAP: u64 = 1 << 20;

/// An element of a finite field, stored as its index in `0..q`.
///
/// The index encodes the coefficient vector of the element in the polynomial
/// basis, base-p digits with the constant coefficient least significant.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElement(pub u64);

/// The field F_{p^e} presented as F_p[x] modulo a monic irreducible polynomial.
///
/// The modulus is the first irreducible monic polynomial of degree e in index
/// order (coefficients read as base-p digits, constant term least
/// significant), which makes the construction deterministic without
/// polynomial tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    e: u32,
    q: u64,
    /// low coefficients of the monic modulus: x^e + modulus[e-1] x^(e-1) + ... + modulus[0]
    modulus: Vec<u64>,
}

/// Builds F_{p^e}. Requires p prime and p^e ≤ 2^20.
pub fn make_field(p: u64, e: u32) -> Result<FiniteField, LinearError> {
    if !is_prime(p) {
        return Err(LinearError::NotPrime(p));
    }
    if e == 0 {
        return Err(LinearError::OutOfRange);
    }
    let mut q: u64 = 1;
    for _ in 0..e {
        q = q.checked_mul(p).filter(|&v| v <= FIELD_SIZE_CAP).ok_or(
            LinearError::FieldTooLarge { p, e },
        )?;
    }
    let modulus = first_irreducible(p, e);
    Ok(FiniteField { p, e, q, modulus })
}

fn poly_from_index(mut k: u64, p: u64, e: u32) -> Vec<u64> {
    let mut c = Vec::with_capacity(e as usize);
    for _ in 0..e {
        c.push(k % p);
        k /= p;
    }
    c
}

/// Irreducibility over F_p by absence of roots and of monic factors of
/// degree up to e/2. Degree-one polynomials are always irreducible.
fn poly_is_irreducible(low: &[u64], p: u64) -> bool {
    let e = low.len();
    if e == 1 {
        return true;
    }
    let eval = |x: u64| -> u64 {
        let mut v = pow_mod(x, e as u64, p);
        let mut xp: u64 = 1;
        for &c in low {
            v = (v + c * xp) % p;
            xp = xp * x % p;
        }
        v
    };
    if (0..p).any(|x| eval(x) == 0) {
        return false;
    }
    let mut full: Vec<u64> = low.to_vec();
    full.push(1);
    for d in 2..=e / 2 {
        let count = p.pow(d as u32);
        for k in 0..count {
            let mut g = poly_from_index(k, p, d as u32);
            g.push(1);
            if poly_rem_is_zero(&full, &g, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u64], den: &[u64], p: u64) -> bool {
    let d = den.len() - 1;
    let mut r: Vec<u64> = num.to_vec();
    for i in (d..r.len()).rev() {
        let c = r[i];
        if c != 0 {
            r[i] = 0;
            for j in 0..d {
                r[i - d + j] = (r[i - d + j] + (p - 1) * c % p * den[j]) % p;
            }
        }
    }
    r[..d].iter().all(|&v| v == 0)
}

fn first_irreducible(p: u64, e: u32) -> Vec<u64> {
    let count = p.pow(e);
    for k in 0..count {
        let low = poly_from_index(k, p, e);
        if poly_is_irreducible(&low, p) {
            return low;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn pow_mod(mut b: u64, mut n: u64, m: u64) -> u64 {
    let mut r: u64 = 1 % m;
    b %= m;
    while n > 0 {
        if n & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        n >>= 1;
    }
    r
}

impl FiniteField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.e
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    /// Low coefficients of the monic modulus polynomial.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn element(&self, idx: u64) -> FieldElement {
        debug_assert!(idx < self.q);
        FieldElement(idx)
    }

    /// Embeds an integer via the prime subfield.
    pub fn from_int(&self, n: u64) -> FieldElement {
        FieldElement(n % self.p)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        poly_from_index(a.0, self.p, self.e)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        debug_assert_eq!(coeffs.len(), self.e as usize);
        let mut v: u64 = 0;
        for &c in coeffs.iter().rev() {
            v = v * self.p + c % self.p;
        }
        FieldElement(v)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.from_coeffs(&sum)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let c: Vec<u64> = self.coeffs(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.from_coeffs(&c)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce modulo the monic modulus: x^e = -modulus
        for i in (e..prod.len()).rev() {
            let c = prod[i];
            if c != 0 {
                prod[i] = 0;
                for j in 0..e {
                    prod[i - e + j] =
                        (prod[i - e + j] + (self.p - 1) * c % self.p * self.modulus[j]) % self.p;
                }
            }
        }
        self.from_coeffs(&prod[..e])
    }

    pub fn pow(&self, a: FieldElement, mut n: u64) -> FieldElement {
        let mut r = self.one();
        let mut b = a;
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            n >>= 1;
        }
        r
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, LinearError> {
        if a.0 == 0 {
            return Err(LinearError::SingularMatrix);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn mult_order(&self, a: FieldElement) -> u64 {
        debug_assert!(a.0 != 0);
        let mut x = a;
        let mut n = 1;
        while x != self.one() {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// First multiplicative generator in index order.
    pub fn first_generator(&self) -> FieldElement {
        let target = self.q - 1;
        let factors = crate::arith::factor(target).expect("q > 1");
        'outer: for a in self.elements().skip(1) {
            for &(f, _) in &factors {
                if self.pow(a, target / f) == self.one() {
                    continue 'outer;
                }
            }
            return a;
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }
}

/// A square matrix over a finite field, row major. Vectors act as rows:
/// the matrix maps `v` to `v * A`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FqMatrix {
    n: usize,
    entries: Vec<FieldElement>,
}

impl FqMatrix {
    pub fn new(n: usize, entries: Vec<FieldElement>) -> Self {
        assert_eq!(entries.len(), n * n);
        FqMatrix { n, entries }
    }

    pub fn from_rows(rows: &[Vec<FieldElement>]) -> Self {
        let n = rows.len();
        let entries = rows.iter().flat_map(|r| r.iter().copied()).collect();
        FqMatrix::new(n, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![FieldElement(0); n * n];
        for i in 0..n {
            entries[i * n + i] = FieldElement(1);
        }
        FqMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == FqMatrix::identity(self.n)
    }

    pub fn mul(&self, field: &FiniteField, other: &FqMatrix) -> FqMatrix {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = vec![FieldElement(0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.0 == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = field.mul(a, other.get(k, j));
                    entries[i * n + j] = field.add(entries[i * n + j], t);
                }
            }
        }
        FqMatrix { n, entries }
    }

    pub fn pow(&self, field: &FiniteField, mut k: u64) -> FqMatrix {
        let mut r = FqMatrix::identity(self.n);
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(field, &b);
            }
            b = b.mul(field, &b);
            k >>= 1;
        }
        r
    }

    /// Determinant by fraction-free Gaussian elimination.
    pub fn det(&self, field: &FiniteField) -> FieldElement {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut det = field.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r * n + col].0 != 0);
            let Some(pivot) = pivot else {
                return field.zero();
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                }
                det = field.neg(det);
            }
            let pv = m[col * n + col];
            det = field.mul(det, pv);
            let pinv = field.inv(pv).expect("pivot nonzero");
            for r in col + 1..n {
                let factor = field.mul(m[r * n + col], pinv);
                if factor.0 == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = field.mul(factor, m[col * n + j]);
                    m[r * n + j] = field.sub(m[r * n + j], sub);
                }
            }
        }
        det
    }

    pub fn inverse(&self, field: &FiniteField) -> Result<FqMatrix, LinearError> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut b = FqMatrix::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r * n + col].0 != 0)
                .ok_or(LinearError::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    b.swap(pivot * n + j, col * n + j);
                }
            }
            let pinv = field.inv(a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = field.mul(a[col * n + j], pinv);
                b[col * n + j] = field.mul(b[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col || a[r * n + col].0 == 0 {
                    continue;
                }
                let factor = a[r * n + col];
                for j in 0..n {
                    let s = field.mul(factor, a[col * n + j]);
                    a[r * n + j] = field.sub(a[r * n + j], s);
                    let s = field.mul(factor, b[col * n + j]);
                    b[r * n + j] = field.sub(b[r * n + j], s);
                }
            }
        }
        Ok(FqMatrix { n, entries: b })
    }

    pub fn mult_order(&self, field: &FiniteField) -> u64 {
        let mut x = self.clone();
        let mut n = 1;
        while !x.is_identity() {
            x = x.mul(field, self);
            n += 1;
        }
        n
    }
}

/// Matrix of multiplication by the first multiplicative generator of
/// F_{2^n} in the polynomial basis. Its order is 2^n - 1 and its powers act
/// transitively on the nonzero vectors of F_2^n.
pub fn singer_matrix(n: u32) -> Result<(FiniteField, FqMatrix), LinearError> {
    if !(2..=20).contains(&n) {
        return Err(LinearError::OutOfRange);
    }
    let field = make_field(2, n)?;
    let g = field.first_generator();
    let x = field.element(2);
    let rows: Vec<Vec<FieldElement>> = (0..n as u64)
        .map(|i| {
            let basis = field.pow(x, i);
            let image = field.mul(basis, g);
            field
                .coeffs(image)
                .into_iter()
                .map(FieldElement)
                .collect()
        })
        .collect();
    Ok((field, FqMatrix::from_rows(&rows)))
}

/// The prime field F_2, the coefficient domain of Singer matrices.
pub fn binary_field() -> FiniteField {
    make_field(2, 1).expect("F_2")
}

/// Two verified generators of SL(2,q) for an odd prime power q ≤ 31:
/// the transvection pair x(1) = [[1,1],[0,1]] and y(ζ) = [[1,0],[ζ,1]]
/// with ζ the first multiplicative generator. The pair is certified at
/// construction time by closing the matrix group and checking its order
/// against q(q-1)(q+1).
pub fn sl2(q: u64) -> Result<(FiniteField, Vec<FqMatrix>), LinearError> {
    if q > 31 || q % 2 == 0 {
        return Err(LinearError::NotOddPrimePower(q));
    }
    let factors = crate::arith::factor(q).map_err(|_| LinearError::NotOddPrimePower(q))?;
    if factors.len() != 1 {
        return Err(LinearError::NotOddPrimePower(q));
    }
    let (p, e) = factors[0];
    let field = make_field(p, e)?;
    let zeta = field.first_generator();
    let one = field.one();
    let zero = field.zero();
    let x1 = FqMatrix::from_rows(&[vec![one, one], vec![zero, one]]);
    let yz = FqMatrix::from_rows(&[vec![one, zero], vec![zeta, one]]);
    let gens = vec![x1, yz];
    let expected = q * (q - 1) * (q + 1);
    let size = matrix_closure_size(&field, &gens, expected as usize + 1);
    assert_eq!(
        size, expected as usize,
        "transvection pair failed to generate SL(2,{q})"
    );
    Ok((field, gens))
}

fn matrix_closure_size(field: &FiniteField, gens: &[FqMatrix], cap: usize) -> usize {
    let n = gens[0].dim();
    let identity = FqMatrix::identity(n);
    let mut seen: HashSet<FqMatrix> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = vec![identity];
    while let Some(m) = queue.pop() {
        for g in gens {
            let x = m.mul(field, g);
            if !seen.contains(&x) && seen.len() < cap {
                seen.insert(x.clone());
                queue.push(x);
            }
        }
    }
    seen.len()
}

/// Canonical index of a row vector: base-q digits, coordinate 0 least
/// significant.
pub fn vector_index(field: &FiniteField, v: &[FieldElement]) -> usize {
    let q = field.size();
    let mut idx: u64 = 0;
    for c in v.iter().rev() {
        idx = idx * q + c.0;
    }
    idx as usize
}

pub fn vector_from_index(field: &FiniteField, mut idx: usize, n: usize) -> Vec<FieldElement> {
    let q = field.size() as usize;
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        v.push(FieldElement((idx % q) as u64));
        idx /= q;
    }
    v
}

fn space_size(field: &FiniteField, n: usize) -> Result<usize, LinearError> {
    let mut size: usize = 1;
    for _ in 0..n {
        size = size
            .checked_mul(field.size() as usize)
            .filter(|&s| s <= crate::element_cap())
            .ok_or(LinearError::SpaceTooLarge)?;
    }
    Ok(size)
}

/// Permutation of F_q^n induced by `v -> v * A`.
pub fn matrix_perm(field: &FiniteField, n: usize, a: &FqMatrix) -> Result<Permutation, LinearError> {
    if a.det(field).0 == 0 {
        return Err(LinearError::SingularMatrix);
    }
    let size = space_size(field, n)?;
    let mut images = Vec::with_capacity(size);
    for idx in 0..size {
        let v = vector_from_index(field, idx, n);
        let mut w = vec![FieldElement(0); n];
        for (i, &vi) in v.iter().enumerate() {
            if vi.0 == 0 {
                continue;
            }
            for (j, wj) in w.iter_mut().enumerate() {
                *wj = field.add(*wj, field.mul(vi, a.get(i, j)));
            }
        }
        images.push(vector_index(field, &w) as u32);
    }
    Ok(Permutation::new(images)?)
}

/// Permutation of F_q^n induced by `v -> v + t`.
pub fn translation_perm(
    field: &FiniteField,
    n: usize,
    t: &[FieldElement],
) -> Result<Permutation, LinearError> {
    let size = space_size(field, n)?;
    let mut images = Vec::with_capacity(size);
    for idx in 0..size {
        let v = vector_from_index(field, idx, n);
        let w: Vec<FieldElement> = v.iter().zip(t).map(|(&a, &b)| field.add(a, b)).collect();
        images.push(vector_index(field, &w) as u32);
    }
    Ok(Permutation::new(images)?)
}

/// The standard basis translations of F_q^n as permutations.
pub fn basis_translation_perms(
    field: &FiniteField,
    n: usize,
) -> Result<Vec<Permutation>, LinearError> {
    (0..n)
        .map(|i| {
            let mut t = vec![FieldElement(0); n];
            t[i] = field.one();
            translation_perm(field, n, &t)
        })
        .collect()
}

/// Faithful permutation image of `<mats>` acting on all q^n vectors.
pub fn linear_to_perm(
    field: &FiniteField,
    n: usize,
    mats: &[FqMatrix],
) -> Result<PermGroup, LinearError> {
    let size = space_size(field, n)?;
    let gens = mats
        .iter()
        .map(|a| matrix_perm(field, n, a))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PermGroup::close(size, gens)?)
}

/// Permutation group on q^n points generated by the matrix actions together
/// with the given translations.
pub fn affine_to_perm(
    field: &FiniteField,
    n: usize,
    mats: &[FqMatrix],
    translations: &[Vec<FieldElement>],
) -> Result<PermGroup, LinearError> {
    let size = space_size(field, n)?;
    let mut gens = mats
        .iter()
        .map(|a| matrix_perm(field, n, a))
        .collect::<Result<Vec<_>, _>>()?;
    for t in translations {
        gens.push(translation_perm(field, n, t)?);
    }
    Ok(PermGroup::close(size, gens)?)
}

/// A square integer matrix modulo 2^l.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntModMatrix {
    n: usize,
    l: u32,
    entries: Vec<u64>,
}

impl IntModMatrix {
    pub fn new(n: usize, l: u32, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), n * n);
        let mask = (1u64 << l) - 1;
        IntModMatrix {
            n,
            l,
            entries: entries.into_iter().map(|x| x & mask).collect(),
        }
    }

    pub fn identity(n: usize, l: u32) -> Self {
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        IntModMatrix { n, l, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus_exponent(&self) -> u32 {
        self.l
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == IntModMatrix::identity(self.n, self.l)
    }

    pub fn mul(&self, other: &IntModMatrix) -> IntModMatrix {
        debug_assert_eq!((self.n, self.l), (other.n, other.l));
        let n = self.n;
        let mask = (1u64 << self.l) - 1;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] =
                        (entries[i * n + j] + a * other.get(k, j)) & mask;
                }
            }
        }
        IntModMatrix { n, l: self.l, entries }
    }

    pub fn pow(&self, mut k: u64) -> IntModMatrix {
        let mut r = IntModMatrix::identity(self.n, self.l);
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        r
    }

    /// Entries reduced modulo 2.
    pub fn reduction_mod2(&self) -> Vec<u64> {
        self.entries.iter().map(|&x| x & 1).collect()
    }

    /// Image of a row vector in (Z/2^l)^n.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        let mask = (1u64 << self.l) - 1;
        (0..self.n)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &vi)| (acc + vi * self.get(i, j)) & mask)
            })
            .collect()
    }
}

/// Lift of the Singer cycle to an automorphism γ of (Z/2^l)^n of order
/// m = 2^n - 1 (m must be prime).
///
/// The entry-wise lift τ of the Singer matrix has order m · 2^j; removing
/// the 2-part by taking γ = τ^(2^j) leaves an automorphism of order m whose
/// reduction modulo 2 is a power of the Singer matrix and which moves every
/// nonzero element of the order-2 subgroup.
pub fn singer_lift(l: u32, n: u32) -> Result<IntModMatrix, LinearError> {
    if l == 0 || n < 2 {
        return Err(LinearError::OutOfRange);
    }
    let m = (1u64 << n) - 1;
    if !is_prime(m) {
        return Err(LinearError::CompositeMersenne(n));
    }
    let bits = (n * l) as u64;
    if bits > 20 || (1u64 << bits) > crate::element_cap() as u64 {
        return Err(LinearError::SpaceTooLarge);
    }
    let (field, singer) = singer_matrix(n)?;
    let _ = field;
    let dim = n as usize;
    let entries: Vec<u64> = (0..dim * dim)
        .map(|idx| singer.entries[idx].0)
        .collect();
    let tau = IntModMatrix::new(dim, l, entries);
    // order of tau is m * 2^j; find j from the order of tau^m
    let sigma = tau.pow(m);
    let mut two_part: u64 = 1;
    let mut s = sigma;
    while !s.is_identity() {
        s = s.mul(&s);
        two_part *= 2;
    }
    let gamma = tau.pow(two_part);
    debug_assert!(gamma.pow(m).is_identity());
    // fixed-point-freeness on the order-2 subgroup
    let half = 1u64 << (l - 1);
    for w_mask in 1..(1u64 << n) {
        let w: Vec<u64> = (0..n).map(|i| if w_mask >> i & 1 == 1 { half } else { 0 }).collect();
        assert_ne!(gamma.apply_row(&w), w, "Singer lift fixed an involution");
    }
    Ok(gamma)
}
