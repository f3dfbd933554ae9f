//! Polynomials with exact rational coefficients, graded by an abelian group,
//! and the Cox presentations built from them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cones::FaceOfOrthant;
use crate::error::{Error, Result};
use crate::groups::{GradingMap, GroupElement};
use crate::linalg::{rref, QVec};

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl GradedPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn new(nvars: usize, terms: impl IntoIterator<Item = (BigRational, Exponent)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(c, e);
        }
        Ok(p)
    }

    pub fn monomial(c: BigRational, e: Exponent) -> Self {
        let mut p = Self::zero(e.len());
        p.add_term(c, e);
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(BigRational::one(), e)
    }

    /// Parses sums like `T1*T2 + T3^2 - 1/2*T4*T5` (variables one-based).
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        let mut p = Self::zero(nvars);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(p);
        }
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        chunks.push((neg, cur));
        for (neg, chunk) in chunks {
            let mut coeff = BigRational::one();
            let mut e = vec![0u32; nvars];
            for factor in chunk.split('*') {
                let bad = || Error::Invalid(format!("cannot parse factor '{factor}' in '{s}'"));
                if let Some(rest) = factor.strip_prefix('T') {
                    let (var, pow) = match rest.split_once('^') {
                        Some((v, p)) => (v, p.parse::<u32>().map_err(|_| bad())?),
                        None => (rest, 1),
                    };
                    let i: usize = var.parse().map_err(|_| bad())?;
                    if i == 0 || i > nvars {
                        return Err(bad());
                    }
                    e[i - 1] += pow;
                } else {
                    coeff *= parse_rational(factor).ok_or_else(bad)?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            p.add_term(coeff, e);
        }
        Ok(p)
    }

    fn add_term(&mut self, c: BigRational, e: Exponent) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in decreasing lexicographic order of exponents.
    pub fn terms(&self) -> Vec<(&BigRational, &Exponent)> {
        self.terms.iter().rev().map(|(e, c)| (c, e)).collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.keys().any(|e| e.iter().all(|&x| x == 0))
    }

    pub fn add(&self, other: &GradedPoly) -> GradedPoly {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(c.clone(), e.clone());
        }
        p
    }

    pub fn sub(&self, other: &GradedPoly) -> GradedPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> GradedPoly {
        let mut p = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            p.add_term(x * c, e.clone());
        }
        p
    }

    pub fn mul(&self, other: &GradedPoly) -> GradedPoly {
        let mut p = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(c1 * c2, e);
            }
        }
        p
    }

    pub fn derivative(&self, i: usize) -> GradedPoly {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            p.add_term(c * BigRational::from_integer(BigInt::from(e[i])), e2);
        }
        p
    }

    /// Applies `f` to every exponent vector; the new number of variables is `nvars`.
    pub fn map_exponents(&self, nvars: usize, mut f: impl FnMut(&[u32]) -> Exponent) -> GradedPoly {
        let mut p = Self::zero(nvars);
        for (e, c) in &self.terms {
            p.add_term(c.clone(), f(e));
        }
        p
    }

    /// Like [`GradedPoly::map_exponents`] but `f` may fail.
    pub fn try_map_exponents(&self, nvars: usize, mut f: impl FnMut(&[u32]) -> Result<Exponent>) -> Result<GradedPoly> {
        let mut p = Self::zero(nvars);
        for (e, c) in &self.terms {
            p.add_term(c.clone(), f(e)?);
        }
        Ok(p)
    }

    /// Renames variables: variable `i` of `self` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> GradedPoly {
        self.map_exponents(self.nvars, |e| {
            let mut out = vec![0; e.len()];
            for (i, &x) in e.iter().enumerate() {
                out[perm[i]] = x;
            }
            out
        })
    }

    /// Sets the variables outside `gamma0` to zero.
    pub fn restrict_to_face(&self, gamma0: &FaceOfOrthant) -> GradedPoly {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().enumerate().all(|(i, &x)| x == 0 || gamma0.contains(i)) {
                p.add_term(c.clone(), e.clone());
            }
        }
        p
    }

    /// Common `K`-degree of the terms.
    pub fn k_degree(&self, q: &GradingMap) -> Result<GroupElement> {
        if q.source_rank() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: q.source_rank(),
            });
        }
        let mut first: Option<(&Exponent, GroupElement)> = None;
        for e in self.terms.keys().rev() {
            let x: Vec<BigInt> = e.iter().map(|&v| BigInt::from(v)).collect();
            let d = q.apply(&x);
            match &first {
                None => first = Some((e, d)),
                Some((e0, d0)) if *d0 != d => {
                    return Err(Error::NotHomogeneous {
                        first: fmt_monomial(e0),
                        first_degree: d0.to_string(),
                        second: fmt_monomial(e),
                        second_degree: d.to_string(),
                    })
                }
                _ => {}
            }
        }
        first.map(|(_, d)| d).ok_or(Error::ZeroPolynomial)
    }

    pub fn is_homogeneous(&self, q: &GradingMap) -> bool {
        self.k_degree(q).is_ok()
    }

    /// Splits into parts homogeneous for the `Z`-grading `deg T_i = a_i`,
    /// in increasing degree.
    pub fn aux_grading_decompose(&self, a: &[u64]) -> Vec<(u64, GradedPoly)> {
        let mut parts: BTreeMap<u64, GradedPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k: u64 = e.iter().zip(a).map(|(&x, &ai)| u64::from(x) * ai).sum();
            parts
                .entry(k)
                .or_insert_with(|| Self::zero(self.nvars))
                .add_term(c.clone(), e.clone());
        }
        parts.into_iter().collect()
    }

    fn total_degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().map(|e| e.iter().sum())
    }

    /// Rank of the symmetric matrix of a quadratic form; `None` if some
    /// term is not of total degree 2.
    pub fn quadric_rank(&self) -> Option<usize> {
        if self.is_zero() || self.total_degrees().any(|d| d != 2) {
            return None;
        }
        let n = self.nvars;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut m: Vec<QVec> = vec![vec![BigRational::zero(); n]; n];
        for (e, c) in &self.terms {
            let vars: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
            match vars[..] {
                [i] => m[i][i] += c,
                [i, j] => {
                    m[i][j] += c * &half;
                    m[j][i] += c * &half;
                }
                _ => unreachable!("degree two"),
            }
        }
        Some(rref(m, n).1.len())
    }

    /// A reason why the polynomial is irreducible, when one of the cheap
    /// sufficient criteria applies.
    pub fn irreducibility_evidence(&self) -> Option<String> {
        if self.is_zero() || self.is_monomial() && self.total_degrees().all(|d| d != 1) {
            return None;
        }
        if let Some(rank) = self.quadric_rank() {
            if rank >= 3 {
                return Some(format!("quadratic form of rank {rank}"));
            }
        }
        // f = a·T_j + b with a a monomial coprime to b
        for j in 0..self.nvars {
            if self.terms.keys().any(|e| e[j] > 1) {
                continue;
            }
            let with: Vec<&Exponent> = self.terms.keys().filter(|e| e[j] == 1).collect();
            let without: Vec<&Exponent> = self.terms.keys().filter(|e| e[j] == 0).collect();
            if with.len() != 1 {
                continue;
            }
            let a = with[0];
            if without.is_empty() {
                if a.iter().sum::<u32>() == 1 {
                    return Some(format!("the variable T{}", j + 1));
                }
                continue;
            }
            let common = (0..self.nvars)
                .filter(|&i| i != j && a[i] > 0)
                .any(|i| without.iter().all(|e| e[i] > 0));
            if !common {
                return Some(format!("linear in T{} with coprime coefficients", j + 1));
            }
        }
        None
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// `"p/q"` or `"p"`.
pub fn parse_coefficient(s: &str) -> Result<BigRational> {
    parse_rational(s.trim()).ok_or_else(|| Error::Invalid(format!("bad rational '{s}'")))
}

pub fn fmt_monomial(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| {
            if x == 1 {
                format!("T{}", i + 1)
            } else {
                format!("T{}^{}", i + 1, x)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (c, e)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = fmt_monomial(e);
            if a.is_one() {
                write!(f, "{mono}")?;
            } else if mono == "1" {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Which hypotheses on `R` were supplied rather than verified.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Attestations {
    /// Per generator: `T_i` attested `K`-prime in `R`.
    pub generators_prime: Vec<bool>,
    /// The relation attested `K`-prime.
    pub relation_prime: bool,
    /// The relation came out of an admissible modification of a prime relation.
    pub relation_derived_prime: bool,
    pub factorially_graded: bool,
}

/// `R = K[T_1..T_r]/(f)` with at most one relation, graded by `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxPresentation {
    grading: GradingMap,
    relations: Vec<GradedPoly>,
    pub attestations: Attestations,
}

impl CoxPresentation {
    pub fn new(grading: GradingMap, relations: Vec<GradedPoly>, attestations: Attestations) -> Result<Self> {
        let r = grading.source_rank();
        for f in &relations {
            if f.nvars() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: f.nvars(),
                });
            }
            f.k_degree(&grading)?;
        }
        if relations.len() > 1 {
            return Err(Error::Unsupported(format!(
                "{} relations; at most one defining relation is supported",
                relations.len()
            )));
        }
        let mut attestations = attestations;
        attestations.generators_prime.resize(r, false);
        Ok(Self {
            grading,
            relations,
            attestations,
        })
    }

    pub fn toric(grading: GradingMap) -> Self {
        let r = grading.source_rank();
        let attestations = Attestations {
            generators_prime: vec![true; r],
            ..Default::default()
        };
        Self {
            grading,
            relations: Vec::new(),
            attestations,
        }
    }

    pub fn nvars(&self) -> usize {
        self.grading.source_rank()
    }

    pub fn grading(&self) -> &GradingMap {
        &self.grading
    }

    pub fn relations(&self) -> &[GradedPoly] {
        &self.relations
    }

    pub fn relation(&self) -> Option<&GradedPoly> {
        self.relations.first()
    }

    pub fn is_toric(&self) -> bool {
        self.relations.iter().all(GradedPoly::is_zero)
    }

    /// The same ring with the relation dropped: the ambient polynomial ring.
    pub fn ambient(&self) -> CoxPresentation {
        CoxPresentation::toric(self.grading.clone())
    }

    /// Dimension of the total coordinate space.
    pub fn ring_dim(&self) -> usize {
        self.nvars() - self.relations.iter().filter(|f| !f.is_zero()).count()
    }

    pub fn relation_degree(&self) -> Option<GroupElement> {
        self.relation().and_then(|f| f.k_degree(&self.grading).ok())
    }

    /// Evidence that the relation is prime, if available.
    pub fn relation_prime_evidence(&self) -> Option<String> {
        let f = self.relation()?;
        if let Some(reason) = f.irreducibility_evidence() {
            return Some(format!("irreducible: {reason}"));
        }
        if self.attestations.relation_derived_prime {
            return Some("derived by an admissible modification".into());
        }
        self.attestations.relation_prime.then(|| "attested".into())
    }

    /// Evidence that `T_i` is prime in `R`, if available.
    pub fn generator_prime_evidence(&self, i: usize) -> Option<String> {
        let Some(f) = self.relation() else {
            return Some("polynomial ring".into());
        };
        let rest = f.restrict_to_face(&FaceOfOrthant::full(self.nvars()).without(i));
        if rest.is_zero() {
            return Some(format!("T{} divides the relation", i + 1));
        }
        if let Some(rank) = rest.quadric_rank() {
            if rank >= 3 {
                return Some(format!("quotient by T{} is a rank {rank} quadric", i + 1));
            }
        }
        if !f.involves(i) && self.relation_prime_evidence().is_some() {
            return Some(format!("T{} does not occur in the prime relation", i + 1));
        }
        self.attestations.generators_prime[i].then(|| "attested".into())
    }

    pub fn is_f_face(&self, gamma0: &FaceOfOrthant) -> Result<bool> {
        is_f_face(self, gamma0)
    }

    /// Renames variable `i` to `perm[i]`, moving grading columns along.
    pub fn permute(&self, perm: &[usize]) -> CoxPresentation {
        let r = self.nvars();
        let mut inverse = vec![0; r];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let grading = self.grading.permute(&inverse);
        let relations = self.relations.iter().map(|f| f.permute(perm)).collect();
        let mut att = self.attestations.clone();
        att.generators_prime = inverse.iter().map(|&j| self.attestations.generators_prime[j]).collect();
        CoxPresentation {
            grading,
            relations,
            attestations: att,
        }
    }
}

/// Whether `γ_0` is an F-face: the product of the variables in `γ_0` is
/// nonzero somewhere on the total coordinate space.
///
/// For a single relation `f` this holds iff `f` restricted to `γ_0` is zero
/// or has at least two terms: over an algebraically closed field a Laurent
/// polynomial with two or more terms has a zero on the torus, a monomial has none.
pub fn is_f_face(pres: &CoxPresentation, gamma0: &FaceOfOrthant) -> Result<bool> {
    match pres.relations() {
        [] => Ok(true),
        [f] => Ok(f.restrict_to_face(gamma0).num_terms() != 1),
        rels => Err(Error::Unsupported(format!(
            "multi-relation F-face test requires radical membership ({} relations)",
            rels.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::AbelianGroup;
    use crate::linalg::{zvec, IntMatrix};

    fn delpezzo() -> CoxPresentation {
        let q = GradingMap::free_from_matrix(&IntMatrix::from_i64(&[&[1, -1, 0, -1, 1], &[1, 1, 1, 0, 2]]));
        let f = GradedPoly::parse("T1*T2 + T3^2 + T4*T5", 5).unwrap();
        CoxPresentation::new(q, vec![f], Attestations::default()).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let f = GradedPoly::parse("T1*T2 + T3^2 - 1/2*T4*T5", 5).unwrap();
        assert_eq!(f.to_string(), "T1*T2 + T3^2 - 1/2*T4*T5");
        assert_eq!(f.num_terms(), 3);
        assert!(GradedPoly::parse("T6", 5).is_err());
        assert!(GradedPoly::parse("T1 - T1", 1).unwrap().is_zero());
    }

    #[test]
    fn delpezzo_degree() {
        let p = delpezzo();
        let d = p.relation().unwrap().k_degree(p.grading()).unwrap();
        assert_eq!(d.free(), &zvec(&[0, 2])[..]);
        let t3 = GradedPoly::variable(5, 2);
        assert_eq!(&t3.k_degree(p.grading()).unwrap(), p.grading().column(2));
    }

    #[test]
    fn torsion_degree() {
        let k = AbelianGroup::new(1, zvec(&[3])).unwrap();
        let q = GradingMap::from_rows(k.clone(), &[zvec(&[1; 6])], &[zvec(&[1, 2, 1, 2, 1, 2])]).unwrap();
        let f = GradedPoly::parse("T1*T2 + T3*T4 + T5*T6", 6).unwrap();
        assert_eq!(f.k_degree(&q).unwrap(), k.element_i64(&[2], &[0]).unwrap());
    }

    #[test]
    fn inhomogeneous_is_reported() {
        let p = delpezzo();
        let f = GradedPoly::parse("T1*T2 + T3", 5).unwrap();
        assert!(matches!(f.k_degree(p.grading()), Err(Error::NotHomogeneous { .. })));
        assert_eq!(GradedPoly::zero(5).k_degree(p.grading()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn restriction_examples() {
        let f = delpezzo().relation().unwrap().clone();
        assert_eq!(f.restrict_to_face(&FaceOfOrthant::full(5)), f);
        assert_eq!(f.restrict_to_face(&FaceOfOrthant::new([0, 1])).to_string(), "T1*T2");
        assert!(f.restrict_to_face(&FaceOfOrthant::new([0, 3])).is_zero());
    }

    #[test]
    fn f_faces_of_delpezzo() {
        let p = delpezzo();
        assert!(is_f_face(&p, &FaceOfOrthant::new([0, 3])).unwrap());
        assert!(!is_f_face(&p, &FaceOfOrthant::new([0, 1])).unwrap());
        assert!(!is_f_face(&p, &FaceOfOrthant::new([2])).unwrap());
        assert!(is_f_face(&p.ambient(), &FaceOfOrthant::new([0, 1])).unwrap());
    }

    #[test]
    fn aux_decomposition() {
        let f = delpezzo().relation().unwrap().clone();
        let parts = f.aux_grading_decompose(&[1, 0, 2, 1, 0]);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, 1);
        assert_eq!(parts[0].1.to_string(), "T1*T2 + T4*T5");
        assert_eq!(parts[1].0, 4);
        assert_eq!(parts[1].1.to_string(), "T3^2");
        assert_eq!(f.aux_grading_decompose(&[0; 5]), vec![(0, f.clone())]);
        let sum = parts.iter().fold(GradedPoly::zero(5), |acc, (_, g)| acc.add(g));
        assert_eq!(sum, f);
    }

    #[test]
    fn quadric_ranks() {
        assert_eq!(
            GradedPoly::parse("T1*T2 + T3^2 + T4*T5", 5).unwrap().quadric_rank(),
            Some(5)
        );
        assert_eq!(GradedPoly::parse("T1*T2 + T4*T5", 5).unwrap().quadric_rank(), Some(4));
        assert_eq!(GradedPoly::parse("T1*T2", 2).unwrap().quadric_rank(), Some(2));
        assert_eq!(GradedPoly::parse("T1^2*T2", 2).unwrap().quadric_rank(), None);
    }

    #[test]
    fn irreducibility_checks() {
        let ok = |s: &str, n| GradedPoly::parse(s, n).unwrap().irreducibility_evidence().is_some();
        assert!(ok("T1*T2 + T3^2 + T4*T5", 5));
        assert!(ok("T1*T2 + T3^2*T6 + T4*T5", 6));
        assert!(ok("T1*T2 + T3^2 + T4", 4));
        assert!(!ok("T1*T2", 2));
        assert!(!ok("T1*T2 + T1*T3", 3));
        assert!(!ok("T1^2 - T2^2", 2));
    }

    #[test]
    fn generator_primality() {
        let p = delpezzo();
        for i in 0..5 {
            assert!(p.generator_prime_evidence(i).is_some(), "T{}", i + 1);
        }
    }

    #[test]
    fn degree_is_additive() {
        let p = delpezzo();
        let f = p.relation().unwrap();
        let h = GradedPoly::parse("T4*T5", 5).unwrap();
        let fh = f.mul(&h);
        let expected = p
            .grading()
            .target()
            .add(&f.k_degree(p.grading()).unwrap(), &h.k_degree(p.grading()).unwrap());
        assert_eq!(fh.k_degree(p.grading()).unwrap(), expected);
    }

    #[test]
    fn multi_relation_is_unsupported() {
        let q = GradingMap::free_from_matrix(&IntMatrix::from_i64(&[&[1, 1]]));
        let f = GradedPoly::parse("T1 - T2", 2).unwrap();
        let r = CoxPresentation::new(q, vec![f.clone(), f], Attestations::default());
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }
}
