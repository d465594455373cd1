//! Explicit maps between finite fields and direct verification of the
//! sum-to-difference equation
//!
//! ```text
//! f((x + y) / (x - y)) = (f(x) + f(y)) / (f(x) - f(y))     for all x != y
//! ```
//!
//! checked in the cleared form `f(x) != f(y)` and
//! `f((x+y)/(x-y)) * (f(x) - f(y)) = f(x) + f(y)`, over all ordered pairs.
//! Collisions are reported ahead of equation failures.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::tables::GfTables;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("map table has {got} images but the domain has {expected} elements")]
    WrongLength { expected: u64, got: usize },
    #[error("image {index} is not an element of the codomain: {source}")]
    BadImage { index: usize, source: FieldError },
    #[error("search budget exceeded: more than {limit} nodes explored")]
    BudgetExceeded { limit: u64 },
    #[error("pruned search needs an odd-characteristic codomain (got characteristic {0})")]
    EvenCodomain(u64),
    #[error("contract violation: {0}")]
    Contract(String),
}

/// A total function between two finite fields, stored as the list of images
/// of the domain elements in canonical order.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMapTable")]
pub struct MapTable {
    domain: FieldSpec,
    codomain: FieldSpec,
    images: Vec<FieldElement>,
}

#[derive(Deserialize)]
struct RawMapTable {
    domain: FieldSpec,
    codomain: FieldSpec,
    images: Vec<Vec<u64>>,
}

impl TryFrom<RawMapTable> for MapTable {
    type Error = MapError;

    fn try_from(raw: RawMapTable) -> Result<Self, Self::Error> {
        let images = raw
            .images
            .iter()
            .enumerate()
            .map(|(index, c)| raw.codomain.element(c).map_err(|source| MapError::BadImage { index, source }))
            .collect::<Result<Vec<_>, _>>()?;
        MapTable::new(raw.domain, raw.codomain, images)
    }
}

impl std::fmt::Debug for MapTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} -> {}: [", self.domain, self.codomain)?;
        for (i, im) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} -> {}", self.domain.element_at(i as u64), im)?;
        }
        f.write_str("]")
    }
}

impl MapTable {
    pub fn new(domain: FieldSpec, codomain: FieldSpec, images: Vec<FieldElement>) -> Result<Self, MapError> {
        if images.len() as u64 != domain.q() {
            return Err(MapError::WrongLength { expected: domain.q(), got: images.len() });
        }
        for (index, im) in images.iter().enumerate() {
            if im.field() != &codomain {
                return Err(MapError::BadImage { index, source: FieldError::SpecMismatch });
            }
        }
        Ok(MapTable { domain, codomain, images })
    }

    /// Builds a table from canonical codomain indices.
    pub fn from_indices(domain: &FieldSpec, codomain: &FieldSpec, indices: &[u32]) -> Result<Self, MapError> {
        let images = indices
            .iter()
            .enumerate()
            .map(|(index, &i)| {
                if (i as u64) < codomain.q() {
                    Ok(codomain.element_at(i as u64))
                } else {
                    Err(MapError::BadImage {
                        index,
                        source: FieldError::InvalidElement(format!("index {i} out of range")),
                    })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        MapTable::new(domain.clone(), codomain.clone(), images)
    }

    pub fn from_fn(
        domain: &FieldSpec,
        codomain: &FieldSpec,
        f: impl Fn(&FieldElement) -> FieldElement,
    ) -> Result<Self, MapError> {
        MapTable::new(domain.clone(), codomain.clone(), domain.elements().map(|x| f(&x)).collect())
    }

    pub fn identity(field: &FieldSpec) -> Self {
        MapTable { domain: field.clone(), codomain: field.clone(), images: field.elements().collect() }
    }

    /// The power map `w -> w^m` on `field`.
    pub fn power_map(field: &FieldSpec, m: u64) -> Self {
        let t = GfTables::new(field);
        let images = (0..field.q()).map(|w| field.element_at(t.pow(w as u32, m) as u64)).collect();
        MapTable { domain: field.clone(), codomain: field.clone(), images }
    }

    pub fn domain(&self) -> &FieldSpec {
        &self.domain
    }

    pub fn codomain(&self) -> &FieldSpec {
        &self.codomain
    }

    pub fn images(&self) -> &[FieldElement] {
        &self.images
    }

    pub fn image_indices(&self) -> Vec<u32> {
        self.images.iter().map(|e| e.index() as u32).collect()
    }

    pub fn apply(&self, x: &FieldElement) -> Result<&FieldElement, FieldError> {
        if x.field() != &self.domain {
            return Err(FieldError::SpecMismatch);
        }
        Ok(&self.images[x.index() as usize])
    }

    /// `self ∘ inner`, i.e. `x -> self(inner(x))`.
    pub fn compose(&self, inner: &MapTable) -> Result<MapTable, MapError> {
        if inner.codomain != self.domain {
            return Err(MapError::Contract("composition of non-matching maps".into()));
        }
        let images = inner.images.iter().map(|y| self.images[y.index() as usize].clone()).collect();
        MapTable::new(inner.domain.clone(), self.codomain.clone(), images)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `f(x) = f(y)` for `x != y`.
    Collision,
    /// `f(z) (f(x) - f(y)) != f(x) + f(y)` with `z = (x+y)/(x-y)`.
    Equation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub x: FieldElement,
    pub y: FieldElement,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SdVerdict {
    pub holds: bool,
    pub witness: Option<Violation>,
}

/// Checks the SD equation on every ordered pair `x != y`, returning the first
/// violation in canonical order.
pub fn is_sd_map(f: &MapTable) -> SdVerdict {
    let dom = GfTables::new(&f.domain);
    let cod = GfTables::new(&f.codomain);
    let img = f.image_indices();
    match first_violation(&dom, &cod, &img) {
        None => SdVerdict { holds: true, witness: None },
        Some((x, y, kind)) => SdVerdict {
            holds: false,
            witness: Some(Violation { x: dom.element(x), y: dom.element(y), kind }),
        },
    }
}

pub(crate) fn first_violation(dom: &GfTables, cod: &GfTables, img: &[u32]) -> Option<(u32, u32, ViolationKind)> {
    let q = dom.order();
    let pairs = || (0..q).flat_map(move |x| (0..q).filter(move |&y| y != x).map(move |y| (x, y)));
    if let Some((x, y)) = pairs().find(|&(x, y)| img[x as usize] == img[y as usize]) {
        return Some((x, y, ViolationKind::Collision));
    }
    pairs()
        .find(|&(x, y)| {
            let (fx, fy) = (img[x as usize], img[y as usize]);
            let z = dom.div(dom.add(x, y), dom.sub(x, y)).expect("x != y");
            cod.mul(img[z as usize], cod.sub(fx, fy)) != cod.add(fx, fy)
        })
        .map(|(x, y)| (x, y, ViolationKind::Equation))
}

/// Fast yes/no SD check on index tables.
pub(crate) fn sd_holds(dom: &GfTables, cod: &GfTables, img: &[u32]) -> bool {
    first_violation(dom, cod, img).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum StructuralViolation {
    NotInjective { x: FieldElement, y: FieldElement },
    MovesZero { image: FieldElement },
    MovesOne { image: FieldElement },
    NotOdd { a: FieldElement },
    NotMultiplicative { a: FieldElement, b: FieldElement },
    NotAdditive { a: FieldElement, b: FieldElement },
}

/// Pointwise checks of the structural consequences of the SD equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub injective: bool,
    pub fixes_zero: bool,
    pub fixes_one: bool,
    pub odd: bool,
    pub multiplicative: bool,
    /// Not implied by the SD equation; reported to separate automorphisms from the rest.
    pub additive: bool,
    /// Witness for the first failing property, in the field order above.
    pub first_violation: Option<StructuralViolation>,
}

impl StructuralReport {
    /// Injective, multiplicative, odd and fixing 0 and 1.
    pub fn all_sd_consequences(&self) -> bool {
        self.injective && self.fixes_zero && self.fixes_one && self.odd && self.multiplicative
    }
}

pub fn structural_report(f: &MapTable) -> StructuralReport {
    let dom = GfTables::new(&f.domain);
    let cod = GfTables::new(&f.codomain);
    let img = f.image_indices();
    let q = dom.order();
    let el = |i: u32| dom.element(i);
    let cel = |i: u32| cod.element(i);

    let mut seen = vec![u32::MAX; f.codomain.q() as usize];
    let mut collision = None;
    for x in 0..q {
        let v = img[x as usize] as usize;
        if seen[v] != u32::MAX {
            collision = Some((seen[v], x));
            break;
        }
        seen[v] = x;
    }
    let zero_img = img[0];
    let one_img = img[dom.one() as usize];
    let not_odd = (0..q).find(|&a| img[dom.neg(a) as usize] != cod.neg(img[a as usize]));
    let pairs = || (0..q).flat_map(move |a| (0..q).map(move |b| (a, b)));
    let not_mult = pairs().find(|&(a, b)| img[dom.mul(a, b) as usize] != cod.mul(img[a as usize], img[b as usize]));
    let not_add = pairs().find(|&(a, b)| img[dom.add(a, b) as usize] != cod.add(img[a as usize], img[b as usize]));

    let first_violation = if let Some((x, y)) = collision {
        Some(StructuralViolation::NotInjective { x: el(x), y: el(y) })
    } else if zero_img != cod.zero() {
        Some(StructuralViolation::MovesZero { image: cel(zero_img) })
    } else if one_img != cod.one() {
        Some(StructuralViolation::MovesOne { image: cel(one_img) })
    } else if let Some(a) = not_odd {
        Some(StructuralViolation::NotOdd { a: el(a) })
    } else if let Some((a, b)) = not_mult {
        Some(StructuralViolation::NotMultiplicative { a: el(a), b: el(b) })
    } else {
        not_add.map(|(a, b)| StructuralViolation::NotAdditive { a: el(a), b: el(b) })
    };

    StructuralReport {
        injective: collision.is_none(),
        fixes_zero: zero_img == cod.zero(),
        fixes_one: one_img == cod.one(),
        odd: not_odd.is_none(),
        multiplicative: not_mult.is_none(),
        additive: not_add.is_none(),
        first_violation,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Exhaustive search over all injections, pruned only by the SD equation itself.
    Oracle,
    /// Only multiplicative candidates `θ^j -> c^j`; assumes the codomain has odd characteristic.
    Pruned,
}

/// Default cap on explored search nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub maps: Vec<MapTable>,
    /// Assignments tried (oracle) or candidate generators tested (pruned).
    pub nodes: u64,
}

/// All SD-maps `domain -> codomain`, sorted by image indices.
///
/// The oracle mode only enumerates injections: any SD-map is injective
/// because `f(x) - f(y)` must be invertible for `x != y`, in every
/// characteristic, so nothing is lost.
pub fn brute_force_sd_maps(domain: &FieldSpec, codomain: &FieldSpec, mode: SearchMode) -> Result<Vec<MapTable>, MapError> {
    search_sd_maps(domain, codomain, mode, DEFAULT_NODE_BUDGET).map(|o| o.maps)
}

pub fn search_sd_maps(
    domain: &FieldSpec,
    codomain: &FieldSpec,
    mode: SearchMode,
    node_budget: u64,
) -> Result<SearchOutcome, MapError> {
    let dom = GfTables::new(domain);
    let cod = GfTables::new(codomain);
    let (mut tables, nodes) = match mode {
        SearchMode::Oracle => {
            let mut s = InjectionSearch::new(&dom, &cod, node_budget);
            s.run()?;
            (s.solutions, s.nodes)
        }
        SearchMode::Pruned => pruned_candidates(&dom, &cod)?,
    };
    tables.retain(|img| sd_holds(&dom, &cod, img));
    tables.sort();
    let maps = tables
        .iter()
        .map(|img| MapTable::from_indices(domain, codomain, img))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SearchOutcome { maps, nodes })
}

fn pruned_candidates(dom: &GfTables, cod: &GfTables) -> Result<(Vec<Vec<u32>>, u64), MapError> {
    let p = cod.field().p();
    if p == 2 {
        return Err(MapError::EvenCodomain(p));
    }
    let n = (dom.order() - 1) as u64;
    let mut out = Vec::new();
    let mut nodes = 0;
    for c in 1..cod.order() {
        nodes += 1;
        if cod.element_order(c) != Some(n) {
            continue;
        }
        let mut img = vec![0u32; dom.order() as usize];
        for j in 0..n {
            img[dom.exp(j) as usize] = cod.pow(c, j);
        }
        out.push(img);
    }
    Ok((out, nodes))
}

const UNSET: u32 = u32::MAX;

/// Depth-first search over partial injections with forward propagation:
/// once `f(x)` and `f(y)` are known, `f((x+y)/(x-y))` is forced to
/// `(f(x)+f(y))/(f(x)-f(y))`.
struct InjectionSearch<'a> {
    dom: &'a GfTables,
    cod: &'a GfTables,
    assign: Vec<u32>,
    used: Vec<bool>,
    trail: Vec<u32>,
    nodes: u64,
    budget: u64,
    solutions: Vec<Vec<u32>>,
}

impl<'a> InjectionSearch<'a> {
    fn new(dom: &'a GfTables, cod: &'a GfTables, budget: u64) -> Self {
        InjectionSearch {
            dom,
            cod,
            assign: vec![UNSET; dom.order() as usize],
            used: vec![false; cod.order() as usize],
            trail: Vec::with_capacity(dom.order() as usize),
            nodes: 0,
            budget,
            solutions: Vec::new(),
        }
    }

    fn run(&mut self) -> Result<(), MapError> {
        if self.dom.order() > self.cod.order() {
            return Ok(());
        }
        self.descend()
    }

    fn tick(&mut self) -> Result<(), MapError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(MapError::BudgetExceeded { limit: self.budget })
        } else {
            Ok(())
        }
    }

    fn set(&mut self, x: u32, v: u32) -> bool {
        if self.used[v as usize] {
            return false;
        }
        self.assign[x as usize] = v;
        self.used[v as usize] = true;
        self.trail.push(x);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            let v = self.assign[x as usize];
            self.used[v as usize] = false;
            self.assign[x as usize] = UNSET;
        }
    }

    /// Processes every assignment at or after `start` on the trail.
    fn propagate(&mut self, start: usize) -> Result<bool, MapError> {
        let (dom, cod) = (self.dom, self.cod);
        let mut cursor = start;
        while cursor < self.trail.len() {
            let x = self.trail[cursor];
            cursor += 1;
            let fx = self.assign[x as usize];
            let mut i = 0;
            while i < self.trail.len() {
                let y = self.trail[i];
                i += 1;
                if y == x {
                    continue;
                }
                let fy = self.assign[y as usize];
                for (a, b, fa, fb) in [(x, y, fx, fy), (y, x, fy, fx)] {
                    let z = dom.div(dom.add(a, b), dom.sub(a, b)).expect("a != b");
                    let forced = cod.div(cod.add(fa, fb), cod.sub(fa, fb)).expect("injective so far");
                    match self.assign[z as usize] {
                        UNSET => {
                            self.tick()?;
                            if !self.set(z, forced) {
                                return Ok(false);
                            }
                        }
                        fz if fz != forced => return Ok(false),
                        _ => {}
                    }
                }
            }
        }
        Ok(true)
    }

    fn descend(&mut self) -> Result<(), MapError> {
        let Some(x) = self.assign.iter().position(|&v| v == UNSET) else {
            self.solutions.push(self.assign.clone());
            return Ok(());
        };
        for v in 0..self.cod.order() {
            if self.used[v as usize] {
                continue;
            }
            self.tick()?;
            let mark = self.trail.len();
            self.set(x as u32, v);
            if self.propagate(mark)? {
                self.descend()?;
            }
            self.undo_to(mark);
        }
        Ok(())
    }
}

/// Whether the image of `f` is a subfield, namely the roots of `w^q - w`
/// in the codomain with `q = |domain|`.
pub fn image_is_subfield(f: &MapTable) -> Result<bool, MapError> {
    if f.domain.p() != f.codomain.p() {
        return Err(MapError::Contract(format!(
            "domain characteristic {} differs from codomain characteristic {}",
            f.domain.p(),
            f.codomain.p()
        )));
    }
    let cod = GfTables::new(&f.codomain);
    let mut in_image = vec![false; cod.order() as usize];
    for i in f.image_indices() {
        in_image[i as usize] = true;
    }
    let image: Vec<u32> = (0..cod.order()).filter(|&i| in_image[i as usize]).collect();
    let closed = image.iter().all(|&a| {
        image
            .iter()
            .all(|&b| in_image[cod.add(a, b) as usize] && in_image[cod.mul(a, b) as usize])
    });
    let q = f.domain.q();
    let roots_match = (0..cod.order()).all(|w| (cod.pow(w, q) == w) == in_image[w as usize]);
    Ok(closed && roots_match)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn f(q_p: u64, ell: u32) -> FieldSpec {
        make_field(q_p, ell).unwrap()
    }

    fn table(domain: &FieldSpec, codomain: &FieldSpec, ints: &[i64]) -> MapTable {
        MapTable::new(domain.clone(), codomain.clone(), ints.iter().map(|&n| codomain.from_int(n)).collect()).unwrap()
    }

    #[test]
    fn identity_and_cube() {
        let f7 = f(7, 1);
        assert!(is_sd_map(&MapTable::identity(&f7)).holds);
        let f5 = f(5, 1);
        let cube = MapTable::power_map(&f5, 3);
        assert!(is_sd_map(&cube).holds);
    }

    #[test]
    fn square_map_collides() {
        let f5 = f(5, 1);
        let v = is_sd_map(&MapTable::power_map(&f5, 2));
        assert!(!v.holds);
        let w = v.witness.unwrap();
        // (1, 4) is the first ordered pair with equal images: 1^2 = 4^2 = 1.
        assert_eq!(w.kind, ViolationKind::Collision);
        assert_eq!((w.x.index(), w.y.index()), (1, 4));
    }

    #[test]
    fn f5_into_f13_with_fourth_root() {
        // 5^2 = 25 = -1 mod 13, so 5 is a primitive fourth root of unity.
        let (f5, f13) = (f(5, 1), f(13, 1));
        let m = table(&f5, &f13, &[0, 1, 5, -5, -1]);
        assert!(is_sd_map(&m).holds);
        // Swapping the roles of 2 and 3 relative to the fourth root keeps it an SD-map too.
        let m2 = table(&f5, &f13, &[0, 1, 8, 5, -1]);
        assert!(is_sd_map(&m2).holds);
        let bad = table(&f5, &f13, &[0, 1, 2, 3, -1]);
        assert!(!is_sd_map(&bad).holds);
    }

    #[test]
    fn structural_report_on_cube() {
        let f5 = f(5, 1);
        let r = structural_report(&MapTable::power_map(&f5, 3));
        assert!(r.all_sd_consequences());
        assert!(!r.additive);
        // f(1 + 1) = 8 = 3 but f(1) + f(1) = 2.
        assert!(matches!(r.first_violation, Some(StructuralViolation::NotAdditive { .. })));
        let id = structural_report(&MapTable::identity(&f5));
        assert!(id.additive && id.first_violation.is_none());
    }

    #[test]
    fn constant_map_not_injective() {
        let f7 = f(7, 1);
        let c = table(&f7, &f7, &[3; 7]);
        let r = structural_report(&c);
        assert!(!r.injective);
        assert!(matches!(r.first_violation, Some(StructuralViolation::NotInjective { .. })));
        assert!(!is_sd_map(&c).holds);
    }

    #[test]
    fn table_validation() {
        let f5 = f(5, 1);
        let f7 = f(7, 1);
        assert!(matches!(
            MapTable::new(f5.clone(), f5.clone(), vec![f5.zero(); 4]),
            Err(MapError::WrongLength { expected: 5, got: 4 })
        ));
        assert!(matches!(
            MapTable::new(f5.clone(), f5.clone(), vec![f7.zero(); 5]),
            Err(MapError::BadImage { index: 0, .. })
        ));
    }

    #[test]
    fn oracle_small_censuses() {
        let f5 = f(5, 1);
        let maps = brute_force_sd_maps(&f5, &f5, SearchMode::Oracle).unwrap();
        assert_eq!(maps, vec![MapTable::identity(&f5), MapTable::power_map(&f5, 3)]);
        let f4 = f(2, 2);
        assert_eq!(brute_force_sd_maps(&f4, &f4, SearchMode::Oracle).unwrap().len(), 6);
    }

    #[test]
    fn pruned_f5_into_f13() {
        let (f5, f13) = (f(5, 1), f(13, 1));
        let maps = brute_force_sd_maps(&f5, &f13, SearchMode::Pruned).unwrap();
        let gen = f5.primitive_element();
        let images: Vec<u64> = maps.iter().map(|m| m.apply(&gen).unwrap().index()).collect();
        assert_eq!(images, vec![5, 8]);
        assert_eq!(brute_force_sd_maps(&f5, &f13, SearchMode::Oracle).unwrap(), maps);
    }

    #[test]
    fn pruned_rejects_even_codomain() {
        let f4 = f(2, 2);
        assert_eq!(
            brute_force_sd_maps(&f4, &f4, SearchMode::Pruned).unwrap_err(),
            MapError::EvenCodomain(2)
        );
    }

    #[test]
    fn budget_is_enforced() {
        let f8 = f(2, 3);
        let err = search_sd_maps(&f8, &f8, SearchMode::Oracle, 1000).unwrap_err();
        assert_eq!(err, MapError::BudgetExceeded { limit: 1000 });
    }

    #[test]
    fn subfield_images() {
        let (f3, f9) = (f(3, 1), f(3, 2));
        let maps = brute_force_sd_maps(&f3, &f9, SearchMode::Oracle).unwrap();
        assert!(!maps.is_empty());
        for m in &maps {
            assert!(image_is_subfield(m).unwrap());
            let mut img = m.image_indices();
            img.sort();
            assert_eq!(img, vec![0, 3, 6]); // 0, 1, 2 as canonical indices in F_9
        }
        assert!(image_is_subfield(&MapTable::identity(&f9)).unwrap());
        let x = f9.element(&[0, 1]).unwrap();
        let odd = MapTable::new(f3.clone(), f9.clone(), vec![f9.zero(), f9.one(), x]).unwrap();
        assert!(!image_is_subfield(&odd).unwrap());
        let f5 = f(5, 1);
        assert!(image_is_subfield(&MapTable::identity(&f5).compose(&MapTable::identity(&f5)).unwrap()).is_ok());
        let cross = table(&f5, &f(13, 1), &[0, 1, 5, -5, -1]);
        assert!(matches!(image_is_subfield(&cross), Err(MapError::Contract(_))));
    }

    #[test]
    fn json_shape() {
        let f5 = f(5, 1);
        let m = MapTable::power_map(&f5, 3);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"domain":{"p":5,"ell":1,"modulus":[0,1]},"codomain":{"p":5,"ell":1,"modulus":[0,1]},"images":[[0],[1],[3],[2],[4]]}"#
        );
        let back: MapTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let short = r#"{"domain":{"p":5,"ell":1,"modulus":[0,1]},"codomain":{"p":5,"ell":1,"modulus":[0,1]},"images":[[0],[1]]}"#;
        assert!(serde_json::from_str::<MapTable>(short).is_err());
    }
}
