//! Permutation groups: exact order, element-order profiles, and recognition
//! of the small isomorphism types the structure theorems name.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}`; printed in 1-based cycle notation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Validation(format!(
                    "not a permutation: images {images:?}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from 1-based disjoint cycles, e.g. `&[vec![1, 2, 3], vec![4, 5]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for w in 0..cyc.len() {
                let a = cyc[w];
                let b = cyc[(w + 1) % cyc.len()];
                if a == 0 || b == 0 || a > n || b > n {
                    return Err(Error::Validation(format!(
                        "cycle entry out of range 1..={n}: {cyc:?}"
                    )));
                }
                images[a - 1] = b - 1;
            }
        }
        Permutation::from_images(images)
    }

    /// Parse 1-based cycle notation like `"(1 2 3)(4 5)"`; `"()"` is the
    /// identity.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut cur: Option<Vec<usize>> = None;
        let mut num = String::new();
        let flush = |num: &mut String, cur: &mut Option<Vec<usize>>| -> Result<()> {
            if num.is_empty() {
                return Ok(());
            }
            let v: usize = num
                .parse()
                .map_err(|_| Error::Validation(format!("bad cycle entry: {num}")))?;
            num.clear();
            cur.as_mut()
                .ok_or_else(|| Error::Validation("number outside a cycle".into()))?
                .push(v);
            Ok(())
        };
        for ch in s.chars() {
            match ch {
                '(' => {
                    if cur.is_some() {
                        return Err(Error::Validation("nested cycle".into()));
                    }
                    cur = Some(Vec::new());
                }
                ')' => {
                    flush(&mut num, &mut cur)?;
                    let c = cur
                        .take()
                        .ok_or_else(|| Error::Validation("unmatched ')'".into()))?;
                    if !c.is_empty() {
                        cycles.push(c);
                    }
                }
                c if c.is_ascii_digit() => num.push(c),
                ' ' | ',' => flush(&mut num, &mut cur)?,
                c => return Err(Error::Validation(format!("unexpected character '{c}'"))),
            }
        }
        if cur.is_some() {
            return Err(Error::Validation("unterminated cycle".into()));
        }
        Permutation::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Function composition: `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// Disjoint cycles (0-based), fixed points omitted, each cycle starting
    /// at its smallest element, cycles sorted by first element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.images[j];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat(1).take(self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(|c| c.len())
            .fold(1, num_integer::lcm)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            let inner: Vec<String> = cyc.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", inner.join(" "))?;
        }
        Ok(())
    }
}

/// Recognized isomorphism types; `OrderOnly` is the safe fallback.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupClass {
    Cyclic(usize),
    Symmetric(usize),
    D8,
    Q8,
    /// Dihedral of order `2p`, `p` an odd prime.
    D2p { p: usize },
    /// `Z/p x D_2p`, order `2 p^2`, `p` an odd prime.
    ZpCrossD2p { p: usize },
    OrderOnly(usize),
}

impl GroupClass {
    pub fn label(&self) -> String {
        match self {
            GroupClass::Cyclic(n) => format!("Z/{n}"),
            GroupClass::Symmetric(d) => format!("S_{d}"),
            GroupClass::D8 => "D_8".into(),
            GroupClass::Q8 => "Q_8".into(),
            GroupClass::D2p { p } => format!("D_{}", 2 * p),
            GroupClass::ZpCrossD2p { p } => format!("Z/{p} x D_{}", 2 * p),
            GroupClass::OrderOnly(n) => format!("group of order {n}"),
        }
    }
}

/// Cap for exhaustive element enumeration.
pub const ENUMERATION_CAP: usize = 10_000;

/// A permutation group given by generators, with a stabilizer chain for the
/// order and (capped) exhaustive closure for element-level questions.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base: Vec<usize>,
    order: usize,
    /// All elements, present when the closure stayed within the cap.
    elements: Option<Vec<Permutation>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Validation(format!(
                    "generator degree {} differs from group degree {degree}",
                    g.degree()
                )));
            }
        }
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let (base, order) = stabilizer_chain_order(degree, &gens);
        let elements = enumerate_closure(degree, &gens, ENUMERATION_CAP);
        if let Some(els) = &elements {
            // the chain and the closure are independent computations; they
            // must agree wherever the closure is available
            if els.len() != order {
                return Err(Error::Validation(format!(
                    "stabilizer chain order {order} disagrees with closure size {}",
                    els.len()
                )));
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            base,
            order,
            elements,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    pub fn is_transitive(&self) -> bool {
        orbit(self.degree, &self.generators, 0).len() == self.degree
    }

    /// Transitive with order equal to the degree: the covering is Galois.
    pub fn is_regular(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Err(Error::Validation(
                "regularity is asked of transitive groups only".into(),
            ));
        }
        Ok(self.order == self.degree)
    }

    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[..i] {
                if a.compose(b) != b.compose(a) {
                    return false;
                }
            }
        }
        true
    }

    /// Multiset `{order(g) : g in G}` as a map order -> count; `None` when
    /// the group exceeds the enumeration cap.
    pub fn element_order_profile(&self) -> Option<BTreeMap<usize, usize>> {
        let els = self.elements.as_ref()?;
        let mut profile = BTreeMap::new();
        for g in els {
            *profile.entry(g.order()).or_insert(0) += 1;
        }
        Some(profile)
    }

    /// Order of the center; `None` beyond the enumeration cap.
    pub fn center_order(&self) -> Option<usize> {
        let els = self.elements.as_ref()?;
        Some(
            els.iter()
                .filter(|z| self.generators.iter().all(|g| z.compose(g) == g.compose(z)))
                .count(),
        )
    }

    /// Recognize the isomorphism type by invariants: order, abelianness,
    /// element-order profile, involution count, and center order.
    pub fn classify(&self) -> GroupClass {
        let n = self.order;
        if n == 1 {
            return GroupClass::Cyclic(1);
        }
        let Some(profile) = self.element_order_profile() else {
            return GroupClass::OrderOnly(n);
        };
        let max_order = *profile.keys().max().unwrap();
        if max_order == n {
            return GroupClass::Cyclic(n);
        }
        if n == factorial(self.degree) && self.is_transitive() {
            return GroupClass::Symmetric(self.degree);
        }
        let involutions = profile.get(&2).copied().unwrap_or(0);
        if n == 8 && !self.is_abelian() {
            // the two nonabelian groups of order 8 are separated by their
            // involution counts: 5 for D_8, 1 for Q_8
            return match involutions {
                5 => GroupClass::D8,
                1 => GroupClass::Q8,
                _ => GroupClass::OrderOnly(n),
            };
        }
        if n % 2 == 0 && is_odd_prime(n / 2) && !self.is_abelian() {
            let p = n / 2;
            if involutions == p && profile.get(&p).copied().unwrap_or(0) == p - 1 {
                return GroupClass::D2p { p };
            }
        }
        // Z/p x D_2p: order 2p^2, center Z/p, p involutions, p^2 - 1
        // elements of order p, p(p-1) of order 2p
        for p in (3..=isqrt(n / 2)).filter(|&p| is_odd_prime(p)) {
            if n != 2 * p * p {
                continue;
            }
            let ok = !self.is_abelian()
                && self.center_order() == Some(p)
                && involutions == p
                && profile.get(&p).copied().unwrap_or(0) == p * p - 1
                && profile.get(&(2 * p)).copied().unwrap_or(0) == p * (p - 1);
            if ok {
                return GroupClass::ZpCrossD2p { p };
            }
        }
        GroupClass::OrderOnly(n)
    }
}

/// Orbit of a point under generators.
fn orbit(degree: usize, gens: &[Permutation], start: usize) -> Vec<usize> {
    let _ = degree;
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([start]);
    seen.insert(start);
    let mut out = vec![start];
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if seen.insert(y) {
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out
}

/// Orbit with a transversal: for each orbit point, a group element mapping
/// `start` to it.
fn orbit_transversal(
    gens: &[Permutation],
    start: usize,
    degree: usize,
) -> HashMap<usize, Permutation> {
    let mut t: HashMap<usize, Permutation> = HashMap::new();
    t.insert(start, Permutation::identity(degree));
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if !t.contains_key(&y) {
                let rep = g.compose(&t[&x]);
                t.insert(y, rep);
                queue.push_back(y);
            }
        }
    }
    t
}

/// Order via a stabilizer chain with Schreier generators: |G| is the product
/// of orbit lengths down the chain. Returns the base used.
fn stabilizer_chain_order(degree: usize, gens: &[Permutation]) -> (Vec<usize>, usize) {
    let mut base = Vec::new();
    let mut order = 1usize;
    let mut current: Vec<Permutation> = gens.to_vec();
    loop {
        let Some(b) = (0..degree).find(|&i| current.iter().any(|g| g.apply(i) != i)) else {
            break;
        };
        base.push(b);
        let t = orbit_transversal(&current, b, degree);
        order *= t.len();
        // Schreier generators of the stabilizer of b
        let mut stab: Vec<Permutation> = Vec::new();
        let mut seen: HashSet<Permutation> = HashSet::new();
        for (&x, ux) in &t {
            for g in &current {
                let gx = g.apply(x);
                let schreier = t[&gx].inverse().compose(&g.compose(ux));
                debug_assert_eq!(schreier.apply(b), b);
                if !schreier.is_identity() && seen.insert(schreier.clone()) {
                    stab.push(schreier);
                }
            }
        }
        current = stab;
    }
    (base, order)
}

/// Breadth-first closure of the generators, abandoned past the cap.
fn enumerate_closure(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Option<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if out.len() >= cap {
                    return None;
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Some(out)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn is_odd_prime(n: usize) -> bool {
    if n < 3 || n % 2 == 0 {
        return false;
    }
    let mut k = 3;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize + 1;
    while r * r > n {
        r -= 1;
    }
    r
}
