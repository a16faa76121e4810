//! Cell-position groups: finite groups given by a Cayley table and the
//! lattices `Z` and `Z^2`, together with the shift action on configurations
//! and memory-set arithmetic.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::power_size;
use crate::tuple;

/// A finite group stored as its multiplication table. Element `0` is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a Cayley table: closure, associativity (every triple),
    /// identity at index 0, and two-sided inverses.
    pub fn from_table(name: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::parse(0, "group order must be positive"));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::parse(
                    r + 3,
                    format!("row {r} has {} entries, expected {order}", row.len()),
                ));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::OutOfRange {
                        value: v,
                        size: order,
                    });
                }
                mul.push(v);
            }
        }
        let at = |a: usize, b: usize| mul[a * order + b];
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        for g in 0..order {
            if at(0, g) != g || at(g, 0) != g {
                return Err(Error::MissingIdentity(g));
            }
        }
        let mut inv = Vec::with_capacity(order);
        for g in 0..order {
            match (0..order).find(|&h| at(g, h) == 0 && at(h, g) == 0) {
                Some(h) => inv.push(h),
                None => return Err(Error::MissingInverse(g)),
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            order,
            mul,
            inv,
            names: None,
        })
    }

    /// Parses the line-oriented group file format.
    ///
    /// ```text
    /// group C3
    /// order 3
    /// 0 1 2
    /// 1 2 0
    /// 2 0 1
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty group file"))?;
        let name = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["group", name] => name.to_string(),
            _ => return Err(Error::parse(ln, "expected `group <name>`")),
        };
        let (ln, order_line) = lines
            .next()
            .ok_or_else(|| Error::parse(ln + 1, "missing `order <m>`"))?;
        let order: usize = match order_line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["order", m] => m
                .parse()
                .map_err(|_| Error::parse(ln, format!("bad order `{m}`")))?,
            _ => return Err(Error::parse(ln, "expected `order <m>`")),
        };
        let mut rows = Vec::with_capacity(order);
        for (ln, line) in lines.by_ref() {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::parse(ln, format!("bad entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
            if rows.len() == order {
                break;
            }
        }
        if rows.len() != order {
            return Err(Error::parse(
                0,
                format!("expected {order} table rows, found {}", rows.len()),
            ));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing content after table"));
        }
        FiniteGroup::from_table(name, rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("group {}\norder {}\n", self.name, self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.mul(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// The cyclic group `Z_n` with `mul(i, j) = i + j mod n`.
    pub fn cyclic(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::from_table(format!("C{n}"), rows).expect("cyclic table is a group")
    }

    /// `Z_2 x Z_2`, elements encoded as two bits.
    pub fn klein_four() -> Self {
        let rows = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
        FiniteGroup::from_table("K4", rows).expect("Klein table is a group")
    }

    /// The symmetric group on `n` points. Permutations are listed in
    /// lexicographic order (so the identity comes first) and multiplied as
    /// functions: `(s t)(i) = s(t(i))`.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut digits = vec![0; n];
        loop {
            let mut seen = vec![false; n];
            if digits.iter().all(|&d| !std::mem::replace(&mut seen[d], true)) {
                perms.push(digits.clone());
            }
            if !tuple::next_tuple(&mut digits, n.max(1)) {
                break;
            }
        }
        if n == 0 {
            perms = vec![vec![]];
        }
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
        let rows = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&t.iter().map(|&i| s[i]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| p.iter().map(|d| d.to_string()).collect::<String>())
            .collect();
        let mut g = FiniteGroup::from_table(format!("S{n}"), rows).expect("permutation group");
        g.names = Some(names);
        g
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }
}

/// The integer lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lattice {
    Z,
    Z2,
}

impl Lattice {
    pub fn dimension(self) -> usize {
        match self {
            Lattice::Z => 1,
            Lattice::Z2 => 2,
        }
    }
}

/// A group element. The derived order is the canonical order: table index
/// for finite groups, lexicographic coordinates for lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Index(usize),
    Z(i64),
    Z2(i64, i64),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Index(i) => write!(f, "{i}"),
            Element::Z(a) => write!(f, "{a}"),
            Element::Z2(a, b) => write!(f, "{a},{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Group {
    Finite(Arc<FiniteGroup>),
    Lattice(Lattice),
}

impl From<FiniteGroup> for Group {
    fn from(g: FiniteGroup) -> Self {
        Group::Finite(Arc::new(g))
    }
}

impl Group {
    pub fn integers() -> Self {
        Group::Lattice(Lattice::Z)
    }

    pub fn integer_plane() -> Self {
        Group::Lattice(Lattice::Z2)
    }

    pub fn name(&self) -> &str {
        match self {
            Group::Finite(g) => g.name(),
            Group::Lattice(Lattice::Z) => "Z",
            Group::Lattice(Lattice::Z2) => "Z2",
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            Group::Finite(_) => Element::Index(0),
            Group::Lattice(Lattice::Z) => Element::Z(0),
            Group::Lattice(Lattice::Z2) => Element::Z2(0, 0),
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        matches!(
            (self, e),
            (Group::Finite(g), Element::Index(i)) if *i < g.order()
        ) || matches!(
            (self, e),
            (Group::Lattice(Lattice::Z), Element::Z(_)) | (Group::Lattice(Lattice::Z2), Element::Z2(..))
        )
    }

    fn require(&self, e: &Element) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::ElementOutsideGroup(e.to_string(), self.name().to_string()))
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.require(a)?;
        self.require(b)?;
        Ok(match (self, a, b) {
            (Group::Finite(g), Element::Index(i), Element::Index(j)) => Element::Index(g.mul(*i, *j)),
            (_, Element::Z(x), Element::Z(y)) => Element::Z(x + y),
            (_, Element::Z2(x1, x2), Element::Z2(y1, y2)) => Element::Z2(x1 + y1, x2 + y2),
            _ => unreachable!("membership checked"),
        })
    }

    pub fn inv(&self, a: &Element) -> Result<Element> {
        self.require(a)?;
        Ok(match (self, a) {
            (Group::Finite(g), Element::Index(i)) => Element::Index(g.inv(*i)),
            (_, Element::Z(x)) => Element::Z(-x),
            (_, Element::Z2(x1, x2)) => Element::Z2(-x1, -x2),
            _ => unreachable!("membership checked"),
        })
    }

    /// Order of a finite group; `None` for lattices.
    pub fn order(&self) -> Option<usize> {
        match self {
            Group::Finite(g) => Some(g.order()),
            Group::Lattice(_) => None,
        }
    }

    /// All elements of a finite group in canonical order.
    pub fn elements(&self) -> Option<Vec<Element>> {
        self.order().map(|m| (0..m).map(Element::Index).collect())
    }

    /// Parses an element token: an index for finite groups, an integer for
    /// `Z`, an `i,j` pair for `Z2`.
    pub fn parse_element(&self, token: &str) -> Result<Element> {
        let bad = || Error::parse(0, format!("bad group element `{token}` for {}", self.name()));
        let e = match self {
            Group::Finite(_) => Element::Index(token.parse().map_err(|_| bad())?),
            Group::Lattice(Lattice::Z) => Element::Z(token.parse().map_err(|_| bad())?),
            Group::Lattice(Lattice::Z2) => {
                let (a, b) = token
                    .trim_matches(|c| c == '(' || c == ')')
                    .split_once(',')
                    .ok_or_else(bad)?;
                Element::Z2(
                    a.trim().parse().map_err(|_| bad())?,
                    b.trim().parse().map_err(|_| bad())?,
                )
            }
        };
        self.require(&e)?;
        Ok(e)
    }

    /// Checks that `x` is a configuration over this group.
    pub fn check_configuration(&self, x: &Configuration) -> Result<()> {
        match (self, x) {
            (Group::Finite(g), Configuration::Finite(cells)) if cells.len() == g.order() => Ok(()),
            (Group::Lattice(l), Configuration::Periodic { period, .. })
                if period.len() == l.dimension() =>
            {
                Ok(())
            }
            _ => Err(Error::GroupMismatch(format!(
                "configuration does not live over {}",
                self.name()
            ))),
        }
    }

    /// The shift action `(g . x)(h) = x(g^{-1} h)`.
    pub fn shift(&self, g: &Element, x: &Configuration) -> Result<Configuration> {
        self.check_configuration(x)?;
        let g_inv = self.inv(g)?;
        match x {
            Configuration::Finite(cells) => {
                let Element::Index(gi) = g_inv else {
                    unreachable!()
                };
                let Group::Finite(fg) = self else {
                    unreachable!()
                };
                Ok(Configuration::Finite(
                    (0..cells.len()).map(|h| cells[fg.mul(gi, h)]).collect(),
                ))
            }
            Configuration::Periodic { period, cells } => {
                let mut out = vec![0; cells.len()];
                for (idx, slot) in out.iter_mut().enumerate() {
                    let h = x.position(idx);
                    let src = self.mul(&g_inv, &h)?;
                    *slot = cells[x.cell_index(&src)?];
                }
                Ok(Configuration::Periodic {
                    period: period.clone(),
                    cells: out,
                })
            }
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A total assignment of alphabet values: indexed by element index over a
/// finite group, or a periodic pattern over `Z`/`Z^2` (row-major, first
/// coordinate most significant).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Configuration {
    Finite(Vec<usize>),
    Periodic { period: Vec<usize>, cells: Vec<usize> },
}

impl Configuration {
    pub fn periodic(cells: Vec<usize>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::BadConfiguration("period must be at least 1".into()));
        }
        Ok(Configuration::Periodic {
            period: vec![cells.len()],
            cells,
        })
    }

    pub fn periodic_2d(rows: usize, cols: usize, cells: Vec<usize>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::BadConfiguration("period must be at least 1".into()));
        }
        if cells.len() != rows * cols {
            return Err(Error::BadConfiguration(format!(
                "{} cells for a {rows}x{cols} period",
                cells.len()
            )));
        }
        Ok(Configuration::Periodic {
            period: vec![rows, cols],
            cells,
        })
    }

    /// Every configuration over a finite group of order `m` and alphabet
    /// size `q`, in index order.
    pub fn all_finite(m: usize, q: usize) -> impl Iterator<Item = Configuration> {
        let total = power_size(q, m) as usize;
        (0..total).map(move |i| Configuration::Finite(tuple::decode(i, q, m)))
    }

    /// Every periodic configuration over `Z` with the given period.
    pub fn all_periodic(period: usize, q: usize) -> impl Iterator<Item = Configuration> {
        let total = power_size(q, period) as usize;
        (0..total).map(move |i| Configuration::Periodic {
            period: vec![period],
            cells: tuple::decode(i, q, period),
        })
    }

    pub fn cells(&self) -> &[usize] {
        match self {
            Configuration::Finite(c) => c,
            Configuration::Periodic { cells, .. } => cells,
        }
    }

    pub fn len(&self) -> usize {
        self.cells().len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells().is_empty()
    }

    pub fn check_alphabet(&self, q: usize) -> Result<()> {
        match self.cells().iter().find(|&&v| v >= q) {
            Some(&value) => Err(Error::OutOfRange { value, size: q }),
            None => Ok(()),
        }
    }

    /// Representative position of storage slot `idx`.
    pub fn position(&self, idx: usize) -> Element {
        match self {
            Configuration::Finite(_) => Element::Index(idx),
            Configuration::Periodic { period, .. } if period.len() == 1 => Element::Z(idx as i64),
            Configuration::Periodic { period, .. } => {
                Element::Z2((idx / period[1]) as i64, (idx % period[1]) as i64)
            }
        }
    }

    /// Storage slot of position `e`; lattice positions are reduced modulo the
    /// period.
    pub fn cell_index(&self, e: &Element) -> Result<usize> {
        match (self, e) {
            (Configuration::Finite(c), Element::Index(i)) if *i < c.len() => Ok(*i),
            (Configuration::Periodic { period, .. }, Element::Z(a)) if period.len() == 1 => {
                Ok(a.rem_euclid(period[0] as i64) as usize)
            }
            (Configuration::Periodic { period, .. }, Element::Z2(a, b)) if period.len() == 2 => {
                let r = a.rem_euclid(period[0] as i64) as usize;
                let c = b.rem_euclid(period[1] as i64) as usize;
                Ok(r * period[1] + c)
            }
            _ => Err(Error::BadConfiguration(format!(
                "position {e} is not addressable in this configuration"
            ))),
        }
    }

    pub fn at(&self, e: &Element) -> Result<usize> {
        Ok(self.cells()[self.cell_index(e)?])
    }

    /// Same shape, new cell values.
    pub fn with_cells(&self, cells: Vec<usize>) -> Configuration {
        debug_assert_eq!(cells.len(), self.len());
        match self {
            Configuration::Finite(_) => Configuration::Finite(cells),
            Configuration::Periodic { period, .. } => Configuration::Periodic {
                period: period.clone(),
                cells,
            },
        }
    }
}

/// An ordered list of distinct group elements. The listing order fixes the
/// layout of local-rule tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemorySet {
    group: Group,
    elems: Vec<Element>,
}

impl MemorySet {
    pub fn new(group: Group, elems: Vec<Element>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &elems {
            group.require(e)?;
            if !seen.insert(*e) {
                return Err(Error::DuplicateMemory(e.to_string()));
            }
        }
        Ok(MemorySet { group, elems })
    }

    pub fn empty(group: Group) -> Self {
        MemorySet {
            group,
            elems: Vec::new(),
        }
    }

    /// `{lo, ..., hi}` over `Z`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        MemorySet {
            group: Group::integers(),
            elems: (lo..=hi).map(Element::Z).collect(),
        }
    }

    /// The given indices of a finite group.
    pub fn indices(group: Group, idx: &[usize]) -> Result<Self> {
        MemorySet::new(group, idx.iter().map(|&i| Element::Index(i)).collect())
    }

    /// Parses whitespace-separated element tokens.
    pub fn parse(group: Group, text: &str) -> Result<Self> {
        let elems = text
            .split_whitespace()
            .map(|t| group.parse_element(t))
            .collect::<Result<Vec<_>>>()?;
        MemorySet::new(group, elems)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn elems(&self) -> &[Element] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn position(&self, e: &Element) -> Option<usize> {
        self.elems.iter().position(|x| x == e)
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.position(e).is_some()
    }

    pub fn is_subset_of(&self, other: &MemorySet) -> bool {
        self.group == other.group && self.elems.iter().all(|e| other.contains(e))
    }

    pub fn is_canonical(&self) -> bool {
        self.elems.windows(2).all(|w| w[0] < w[1])
    }

    /// The same set listed in canonical order.
    pub fn canonical(&self) -> MemorySet {
        let mut elems = self.elems.clone();
        elems.sort();
        MemorySet {
            group: self.group.clone(),
            elems,
        }
    }

    fn same_group(&self, other: &MemorySet) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!(
                "{} vs {}",
                self.group.name(),
                other.group.name()
            )));
        }
        Ok(())
    }

    /// `{s1 s2 : s1 in self, s2 in other}`, deduplicated, canonical order.
    /// This is the memory set of a composite automaton.
    pub fn product(&self, other: &MemorySet) -> Result<MemorySet> {
        self.same_group(other)?;
        let mut elems = Vec::with_capacity(self.len() * other.len());
        for a in &self.elems {
            for b in &other.elems {
                elems.push(self.group.mul(a, b)?);
            }
        }
        elems.sort();
        elems.dedup();
        Ok(MemorySet {
            group: self.group.clone(),
            elems,
        })
    }

    /// Union in first-appearance order: elements of `self` keep their
    /// positions, new elements of `other` follow in their own order.
    pub fn union(&self, other: &MemorySet) -> Result<MemorySet> {
        self.same_group(other)?;
        let mut elems = self.elems.clone();
        for e in &other.elems {
            if !elems.contains(e) {
                elems.push(*e);
            }
        }
        Ok(MemorySet {
            group: self.group.clone(),
            elems,
        })
    }

    /// Keeps only the listed positions (in the given order).
    pub(crate) fn select(&self, keep: &[usize]) -> MemorySet {
        MemorySet {
            group: self.group.clone(),
            elems: keep.iter().map(|&i| self.elems[i]).collect(),
        }
    }
}

impl fmt::Display for MemorySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}
