//! Coxeter matrices, words, linear characters, and the Hecke relation check.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::RatFun;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Order `n(r, s)` of a product of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// Subset of the generators, as a bitmask over declaration indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GenSet(pub u32);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn full(n: usize) -> GenSet {
        GenSet(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn singleton(i: usize) -> GenSet {
        GenSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> GenSet {
        GenSet(self.0 & other.0)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// All subsets of `{0..n}`, ordered by size and then lexicographically by
    /// their sorted index lists.
    pub fn all_subsets(n: usize) -> Vec<GenSet> {
        let mut v: Vec<GenSet> = (0..1u32 << n).map(GenSet).collect();
        v.sort_by_key(|s| s.sort_key());
        v
    }

    pub fn sort_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.indices().collect())
    }
}

/// The Coxeter matrix of `(W, S)`: ordered generator names plus `n(r, s)`
/// for each unordered pair. Entries may be missing or out of range; use
/// [`validate_coxeter_matrix`] before relying on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    generators: Vec<String>,
    orders: BTreeMap<(usize, usize), Order>,
}

/// A problem found by [`validate_coxeter_matrix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoxeterViolation {
    DuplicateGenerator(String),
    MissingOrder(String, String),
    OrderTooSmall(String, String, u32),
    InfiniteOrder(String, String),
}

impl fmt::Display for CoxeterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicateGenerator(g) => write!(f, "duplicate generator {g}"),
            Self::MissingOrder(r, s) => write!(f, "missing order for {r} {s}"),
            Self::OrderTooSmall(r, s, n) => write!(f, "order n({r},{s}) = {n} must be at least 2"),
            Self::InfiniteOrder(r, s) => write!(f, "order n({r},{s}) is infinite"),
        }
    }
}

impl CoxeterMatrix {
    /// Generators with no orders set yet.
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = S>) -> Self {
        CoxeterMatrix { generators: generators.into_iter().map(Into::into).collect(), orders: BTreeMap::new() }
    }

    /// Every pair gets the same order; the dihedral case when `|S| = 2`.
    pub fn uniform<S: Into<String>>(generators: impl IntoIterator<Item = S>, order: Order) -> Self {
        let mut cm = Self::new(generators);
        let n = cm.rank();
        for i in 0..n {
            for j in i + 1..n {
                cm.orders.insert((i, j), order);
            }
        }
        cm
    }

    /// `S = {s}`.
    pub fn a1() -> Self {
        Self::new(["s"])
    }

    /// `S = {s, t}` with `n(s, t) = m`.
    pub fn dihedral(m: u32) -> Self {
        Self::uniform(["s", "t"], Order::Finite(m))
    }

    pub fn set_order(&mut self, r: &str, s: &str, order: Order) -> Result<()> {
        let i = self.index_of(r)?;
        let j = self.index_of(s)?;
        if i == j {
            return Err(Error::Invalid(format!("n({r},{s}) is fixed at 1")));
        }
        self.orders.insert((i.min(j), i.max(j)), order);
        Ok(())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.generators[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.generators.iter().position(|g| g == name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// `n(i, j)`; the diagonal is 1 and a missing pair is `None`.
    pub fn order(&self, i: usize, j: usize) -> Option<Order> {
        if i == j {
            return Some(Order::Finite(1));
        }
        self.orders.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn all_finite(&self) -> bool {
        self.pairs().all(|(i, j)| matches!(self.order(i, j), Some(Order::Finite(_))))
    }

    /// Unordered pairs `i < j` in declaration order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.rank();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    pub fn full_set(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    /// Checks that `j` only names generators of this system.
    pub fn check_subset(&self, j: GenSet) -> Result<()> {
        if j.is_subset(self.full_set()) {
            Ok(())
        } else {
            Err(Error::NotSubset)
        }
    }

    /// Parses a list of generator names into a subset.
    pub fn subset<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<GenSet> {
        let mut set = GenSet::EMPTY;
        for n in names {
            set.insert(self.index_of(n)?);
        }
        Ok(set)
    }

    /// Restriction to the parabolic subsystem `(W_J, J)`. Returns the new
    /// matrix and, for each new generator index, the old index.
    pub fn restrict(&self, j: GenSet) -> Result<(CoxeterMatrix, Vec<usize>)> {
        self.check_subset(j)?;
        let keep: Vec<usize> = j.indices().filter(|&i| i < self.rank()).collect();
        let mut out = CoxeterMatrix::new(keep.iter().map(|&i| self.generators[i].clone()));
        for (a, &i) in keep.iter().enumerate() {
            for (b, &k) in keep.iter().enumerate().skip(a + 1) {
                if let Some(o) = self.order(i, k) {
                    out.orders.insert((a, b), o);
                }
            }
        }
        Ok((out, keep))
    }

    /// `{s,t}`-style rendering with names in declaration order.
    pub fn format_set(&self, j: GenSet) -> String {
        let names: Vec<&str> = j.indices().filter(|&i| i < self.rank()).map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

pub fn validate_coxeter_matrix(cm: &CoxeterMatrix, require_finite: bool) -> Vec<CoxeterViolation> {
    let mut out = Vec::new();
    for (i, g) in cm.generators.iter().enumerate() {
        if cm.generators[..i].contains(g) {
            out.push(CoxeterViolation::DuplicateGenerator(g.clone()));
        }
    }
    for (i, j) in cm.pairs() {
        let (r, s) = (cm.name(i).to_string(), cm.name(j).to_string());
        match cm.order(i, j) {
            None => out.push(CoxeterViolation::MissingOrder(r, s)),
            Some(Order::Finite(n)) if n < 2 => out.push(CoxeterViolation::OrderTooSmall(r, s, n)),
            Some(Order::Infinite) if require_finite => out.push(CoxeterViolation::InfiniteOrder(r, s)),
            _ => {}
        }
    }
    out
}

/// Sequence of generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parse(cm: &CoxeterMatrix, names: &[&str]) -> Result<Self> {
        names.iter().map(|n| cm.index_of(n)).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn render(&self, cm: &CoxeterMatrix) -> String {
        if self.0.is_empty() {
            return "e".to_string();
        }
        self.0.iter().map(|&i| cm.name(i)).collect::<Vec<_>>().join(".")
    }

    /// All words of length at most `max_len`, shortlex order.
    pub fn all_up_to(rank: usize, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..rank).map(move |g| {
                        let mut v = w.0.clone();
                        v.push(g);
                        Word(v)
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

/// The two alternating words `rsrs…` and `srsr…` of length `m`.
pub fn braid_word(r: usize, s: usize, m: usize) -> Result<(Word, Word)> {
    if m < 2 {
        return Err(Error::Invalid(format!("braid length {m} < 2")));
    }
    let alt = |a: usize, b: usize| Word((0..m).map(|k| if k % 2 == 0 { a } else { b }).collect());
    Ok((alt(r, s), alt(s, r)))
}

/// A linear character of H, given by its value on each `T_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearChar {
    pub values: Vec<RatFun>,
}

impl LinearChar {
    /// `T_s ↦ u²`.
    pub fn ind(rank: usize) -> Self {
        LinearChar { values: vec![RatFun::u().pow(2); rank] }
    }

    /// `T_s ↦ -1`.
    pub fn sgn(rank: usize) -> Self {
        LinearChar { values: vec![RatFun::from_int(-1); rank] }
    }
}

pub fn char_on_word(chi: &LinearChar, w: &Word) -> Result<RatFun> {
    w.0.iter().try_fold(RatFun::one(), |acc, &g| {
        let v = chi.values.get(g).ok_or_else(|| Error::UnknownGenerator(format!("#{g}")))?;
        Ok(acc * v)
    })
}

/// Generator images of a module with a chosen basis, in generator
/// declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub dim: usize,
    pub gens: Vec<Matrix>,
}

impl Representation {
    pub fn new(dim: usize, gens: Vec<Matrix>) -> Result<Self> {
        for m in &gens {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator image is {}x{}, module has dimension {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { dim, gens })
    }

    /// Image of `T_{w_1} ⋯ T_{w_k}`.
    pub fn word_matrix(&self, w: &Word) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.dim);
        for &g in &w.0 {
            let m = self.gens.get(g).ok_or_else(|| Error::UnknownGenerator(format!("#{g}")))?;
            acc = acc.checked_mul(m)?;
        }
        Ok(acc)
    }

    /// Images restricted to the generators in `keep` (old indices).
    pub fn restrict(&self, keep: &[usize]) -> Representation {
        Representation { dim: self.dim, gens: keep.iter().map(|&i| self.gens[i].clone()).collect() }
    }

    pub fn eigenspace_dim(&self, chi: &LinearChar) -> Result<usize> {
        crate::linalg::eigenspace_dim(self.dim, &self.gens, &chi.values)
    }
}

pub fn char_trace(rho: &Representation, w: &Word) -> Result<RatFun> {
    Ok(rho.word_matrix(w)?.trace())
}

/// A failed Hecke relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationViolation {
    GeneratorCount { expected: usize, found: usize },
    Shape { generator: String },
    Quadratic { generator: String },
    Braid { r: String, s: String, m: u32 },
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GeneratorCount { expected, found } => {
                write!(f, "expected {expected} generator images, found {found}")
            }
            Self::Shape { generator } => write!(f, "image of T_{generator} has the wrong shape"),
            Self::Quadratic { generator } => {
                write!(f, "quadratic relation (T_{generator}-u^2)(T_{generator}+1)=0 fails")
            }
            Self::Braid { r, s, m } => write!(f, "braid relation of length {m} fails for {r},{s}"),
        }
    }
}

/// Result of [`check_representation`]: violations (at most a few) and the
/// pairs whose braid relation was skipped because `n(r, s) = ∞`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub violations: Vec<RelationViolation>,
    pub unchecked: Vec<(String, String)>,
}

impl RelationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

const MAX_REPORTED: usize = 8;

/// Product of `m` alternating factors `a·b·a·…`.
fn alternating_product(a: &Matrix, b: &Matrix, m: u32, dim: usize) -> Matrix {
    let mut acc = Matrix::identity(dim);
    for k in 0..m {
        acc = &acc * if k % 2 == 0 { a } else { b };
    }
    acc
}

pub fn quadratic_holds(m: &Matrix) -> bool {
    let u2 = RatFun::u().pow(2);
    let lhs = m.shift(&u2).expect("square");
    let rhs = m.shift(&RatFun::from_int(-1)).expect("square");
    (&lhs * &rhs).is_zero()
}

pub fn braid_holds(a: &Matrix, b: &Matrix, m: u32) -> bool {
    let dim = a.rows();
    alternating_product(a, b, m, dim) == alternating_product(b, a, m, dim)
}

/// Checks the quadratic relation for every generator and the braid relation
/// for every pair of finite order.
pub fn check_representation(cm: &CoxeterMatrix, rho: &Representation) -> RelationReport {
    let mut report = RelationReport::default();
    if rho.gens.len() != cm.rank() {
        report.violations.push(RelationViolation::GeneratorCount { expected: cm.rank(), found: rho.gens.len() });
        return report;
    }
    for (i, m) in rho.gens.iter().enumerate() {
        if m.rows() != rho.dim || m.cols() != rho.dim {
            report.violations.push(RelationViolation::Shape { generator: cm.name(i).to_string() });
        }
    }
    if !report.is_ok() {
        return report;
    }
    for (i, m) in rho.gens.iter().enumerate() {
        if !quadratic_holds(m) && report.violations.len() < MAX_REPORTED {
            report.violations.push(RelationViolation::Quadratic { generator: cm.name(i).to_string() });
        }
    }
    for (i, j) in cm.pairs() {
        match cm.order(i, j) {
            Some(Order::Finite(m)) if m >= 2 => {
                if report.violations.len() < MAX_REPORTED && !braid_holds(&rho.gens[i], &rho.gens[j], m) {
                    report.violations.push(RelationViolation::Braid {
                        r: cm.name(i).to_string(),
                        s: cm.name(j).to_string(),
                        m,
                    });
                }
            }
            _ => report.unchecked.push((cm.name(i).to_string(), cm.name(j).to_string())),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    fn solid() -> Matrix {
        Matrix::parse_rows(&[&["0", "u^2"], &["1", "u^2-1"]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_coxeter_matrix(&CoxeterMatrix::dihedral(3), true).is_empty());
        let mut bad = CoxeterMatrix::new(["s", "t"]);
        bad.set_order("s", "t", Order::Finite(1)).unwrap();
        assert_eq!(
            validate_coxeter_matrix(&bad, false),
            vec![CoxeterViolation::OrderTooSmall("s".into(), "t".into(), 1)]
        );
        let inf = CoxeterMatrix::uniform(["s", "t"], Order::Infinite);
        assert!(validate_coxeter_matrix(&inf, false).is_empty());
        assert_eq!(validate_coxeter_matrix(&inf, true), vec![CoxeterViolation::InfiniteOrder("s".into(), "t".into())]);
        let missing = CoxeterMatrix::new(["s", "t", "s"]);
        let v = validate_coxeter_matrix(&missing, false);
        assert!(v.contains(&CoxeterViolation::DuplicateGenerator("s".into())));
        assert!(v.contains(&CoxeterViolation::MissingOrder("s".into(), "t".into())));
    }

    #[test]
    fn braid_words() {
        let cm = CoxeterMatrix::dihedral(5);
        let (a, b) = braid_word(0, 1, 2).unwrap();
        assert_eq!((a.render(&cm), b.render(&cm)), ("s.t".into(), "t.s".into()));
        let (a, b) = braid_word(0, 1, 3).unwrap();
        assert_eq!((a, b), (Word(vec![0, 1, 0]), Word(vec![1, 0, 1])));
        let (a, b) = braid_word(0, 1, 5).unwrap();
        assert_eq!((a, b), (Word(vec![0, 1, 0, 1, 0]), Word(vec![1, 0, 1, 0, 1])));
        assert!(braid_word(0, 1, 1).is_err());
    }

    #[test]
    fn characters_on_words() {
        let w = Word(vec![0, 1, 0]);
        assert_eq!(char_on_word(&LinearChar::ind(2), &w).unwrap(), RatFun::u().pow(6));
        assert_eq!(char_on_word(&LinearChar::sgn(2), &w).unwrap(), RatFun::from_int(-1));
        assert!(char_on_word(&LinearChar::sgn(2), &Word::empty()).unwrap().is_one());
        assert!(char_on_word(&LinearChar::sgn(1), &w).is_err());
        for w in Word::all_up_to(2, 4) {
            let v = char_on_word(&LinearChar::ind(2), &w).unwrap();
            assert_eq!(v.eval(&rational(1, 1)).unwrap(), rational(1, 1));
        }
    }

    #[test]
    fn representation_checks() {
        let cm = CoxeterMatrix::a1();
        let rho = Representation::new(2, vec![solid()]).unwrap();
        assert!(check_representation(&cm, &rho).is_ok());

        let cm2 = CoxeterMatrix::dihedral(2);
        let bad = Representation::new(2, vec![Matrix::scalar(2, &RatFun::u().pow(2)), Matrix::zeros(2, 2)]).unwrap();
        let r = check_representation(&cm2, &bad);
        assert_eq!(r.violations, vec![RelationViolation::Quadratic { generator: "t".into() }]);

        let inf = CoxeterMatrix::uniform(["s", "t"], Order::Infinite);
        let r = check_representation(&inf, &Representation::new(2, vec![solid(), solid()]).unwrap());
        assert!(r.is_ok());
        assert_eq!(r.unchecked, vec![("s".into(), "t".into())]);
    }

    #[test]
    fn traces() {
        let rho = Representation::new(2, vec![solid()]).unwrap();
        assert_eq!(char_trace(&rho, &Word::empty()).unwrap(), RatFun::from_int(2));
        assert_eq!(char_trace(&rho, &Word(vec![0])).unwrap(), "u^2-1".parse().unwrap());
        assert!(char_trace(&rho, &Word(vec![3])).is_err());
    }

    #[test]
    fn genset_ordering() {
        let order: Vec<u32> = GenSet::all_subsets(3).into_iter().map(|s| s.0).collect();
        assert_eq!(order, vec![0, 1, 2, 4, 3, 5, 6, 7]);
        let cm = CoxeterMatrix::dihedral(3);
        assert_eq!(cm.format_set(GenSet(3)), "{s,t}");
        assert_eq!(cm.format_set(GenSet::EMPTY), "{}");
    }
}
