//! Vertex colorings, chromatic subcomplexes, rainbow simplices and the
//! homological rainbow criteria.
//!
//! A coloring partitions the vertices into classes `V_0..V_m`; for a set `S`
//! of class indices, `K_S` is the full subcomplex on `⋃_{i∈S} V_i`. A rainbow
//! simplex is a top-dimensional simplex with exactly one vertex per class.
//!
//! Checkers return a [`CheckReport`]. Hypotheses that cannot be decided
//! from homology (contractibility, regular neighborhoods) are replaced by
//! vanishing-Betti proxies and reported as `proxy-pass`/`proxy-fail`, never
//! as `pass`. Manifold hypotheses are `assumed` unless the necessary
//! pseudomanifold conditions already fail.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{PseudomanifoldReport, Simplex, SimplicialComplex, VertexId};
use crate::field::FieldSpec;
use crate::homology::{self, BettiVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChromaticError {
    #[error("invalid coloring: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidColoring(Vec<ColoringViolation>),
    #[error("class index {index} out of range ({classes} classes)")]
    ClassOutOfRange { index: usize, classes: usize },
    #[error("theorem `{theorem}` needs a {dim}-dimensional complex with {classes} classes, got dimension {got_dim} with {got_classes} classes")]
    Arity { theorem: TheoremId, dim: String, classes: String, got_dim: isize, got_classes: usize },
    #[error("unknown theorem `{0}` (expected meshulam, surface, three, four, n or sphere)")]
    UnknownTheorem(String),
    #[error("no coefficient field requested")]
    NoFields,
    #[error("not a homology {dim}-sphere over {field}: reduced Betti numbers {betti}")]
    NotHomologySphere { dim: isize, field: FieldSpec, betti: BettiVector },
}

/// An assignment of vertices to color classes `V_0..V_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    classes: Vec<Vec<VertexId>>,
}

impl Coloring {
    /// Takes the classes as given; use [`validate_coloring`] to check them
    /// against a complex.
    pub fn new<I, J, L>(classes: I) -> Self
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = L>,
        L: Into<VertexId>,
    {
        let classes = classes
            .into_iter()
            .map(|c| {
                let mut c: Vec<VertexId> = c.into_iter().map(Into::into).collect();
                c.sort();
                c
            })
            .collect();
        Self { classes }
    }

    pub fn classes(&self) -> &[Vec<VertexId>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Class of each label; first occurrence wins for duplicated labels.
    pub fn class_of(&self) -> BTreeMap<&VertexId, usize> {
        let mut map = BTreeMap::new();
        for (i, class) in self.classes.iter().enumerate() {
            for v in class {
                map.entry(v).or_insert(i);
            }
        }
        map
    }

    /// Applies a permutation of class indices: class `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut classes = vec![Vec::new(); self.classes.len()];
        for (i, class) in self.classes.iter().enumerate() {
            classes[perm[i]] = class.clone();
        }
        Self { classes }
    }

    /// Color of every universe index of `k` (None for labels outside the
    /// coloring). Fails unless the coloring partitions the vertex set.
    pub(crate) fn resolve(&self, k: &SimplicialComplex) -> Result<Vec<Option<usize>>, ChromaticError> {
        let violations: Vec<_> =
            validate_coloring(k, self).into_iter().filter(ColoringViolation::is_error).collect();
        if !violations.is_empty() {
            return Err(ChromaticError::InvalidColoring(violations));
        }
        let mut colors = vec![None; k.universe().len()];
        for (i, class) in self.classes.iter().enumerate() {
            for v in class {
                if let Some(idx) = k.index_of(v) {
                    colors[idx as usize] = Some(i);
                }
            }
        }
        Ok(colors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ColoringViolation {
    Uncolored { vertex: VertexId },
    Duplicated { vertex: VertexId, classes: Vec<usize> },
    UnknownVertex { vertex: VertexId, class: usize },
    /// Legal, but several criteria need every class inhabited.
    EmptyClass { class: usize },
}

impl ColoringViolation {
    /// Everything except an empty class breaks the partition.
    pub fn is_error(&self) -> bool {
        !matches!(self, ColoringViolation::EmptyClass { .. })
    }
}

impl fmt::Display for ColoringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringViolation::Uncolored { vertex } => write!(f, "vertex {vertex} is uncolored"),
            ColoringViolation::Duplicated { vertex, classes } => {
                write!(f, "vertex {vertex} appears in classes {classes:?}")
            }
            ColoringViolation::UnknownVertex { vertex, class } => {
                write!(f, "class {class} names unknown vertex {vertex}")
            }
            ColoringViolation::EmptyClass { class } => write!(f, "warning: class {class} is empty"),
        }
    }
}

/// Empty iff the classes partition the vertex set of `k` with no empty class.
pub fn validate_coloring(k: &SimplicialComplex, c: &Coloring) -> Vec<ColoringViolation> {
    let mut out = Vec::new();
    let mut seen: BTreeMap<&VertexId, Vec<usize>> = BTreeMap::new();
    for (i, class) in c.classes.iter().enumerate() {
        if class.is_empty() {
            out.push(ColoringViolation::EmptyClass { class: i });
        }
        for v in class {
            if k.index_of(v).is_none() {
                out.push(ColoringViolation::UnknownVertex { vertex: v.clone(), class: i });
            }
            seen.entry(v).or_default().push(i);
        }
    }
    for (v, classes) in &seen {
        if classes.len() > 1 {
            out.push(ColoringViolation::Duplicated { vertex: (*v).clone(), classes: classes.clone() });
        }
    }
    for v in k.vertex_set() {
        if !seen.contains_key(&v) {
            out.push(ColoringViolation::Uncolored { vertex: v });
        }
    }
    out
}

/// `K_S`: the full subcomplex on the union of the classes in `s`.
pub fn chromatic_subcomplex(
    k: &SimplicialComplex,
    c: &Coloring,
    s: &[usize],
) -> Result<SimplicialComplex, ChromaticError> {
    let colors = c.resolve(k)?;
    chromatic_by_colors(k, &colors, c.num_classes(), s)
}

fn chromatic_by_colors(
    k: &SimplicialComplex,
    colors: &[Option<usize>],
    classes: usize,
    s: &[usize],
) -> Result<SimplicialComplex, ChromaticError> {
    let mut wanted = vec![false; classes];
    for &i in s {
        if i >= classes {
            return Err(ChromaticError::ClassOutOfRange { index: i, classes });
        }
        wanted[i] = true;
    }
    let mask: Vec<bool> = colors.iter().map(|c| c.is_some_and(|c| wanted[c])).collect();
    Ok(k.induced_by_mask(&mask))
}

/// Top-dimensional simplices whose colors are a bijection onto the classes.
/// Empty when the class count is not `dim + 1`.
pub fn rainbow_simplices(k: &SimplicialComplex, c: &Coloring) -> Result<Vec<Simplex>, ChromaticError> {
    let colors = c.resolve(k)?;
    Ok(rainbow_by_colors(k, &colors, c.num_classes()))
}

fn rainbow_by_colors(k: &SimplicialComplex, colors: &[Option<usize>], classes: usize) -> Vec<Simplex> {
    let dim = k.dim();
    if dim < 0 || classes as isize != dim + 1 {
        return Vec::new();
    }
    let mut seen = vec![false; classes];
    k.faces(dim)
        .expect("top degree")
        .iter()
        .filter(|s| {
            seen.iter_mut().for_each(|x| *x = false);
            s.vertices().iter().all(|&v| match colors[v as usize] {
                Some(c) if !seen[c] => {
                    seen[c] = true;
                    true
                }
                _ => false,
            })
        })
        .cloned()
        .collect()
}

/// Nonempty subsets of `0..n` as sorted index lists, in lexicographic order.
pub fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u64..(1u64 << n))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    /// Meshulam condition: β̃_{|S|−2}(K_S) = 0 for every nonempty S.
    Meshulam,
    /// 3-colored surfaces, relative H₁ hypothesis.
    Surface,
    /// 4-colored 3-manifolds.
    Three,
    /// 5-colored closed 4-manifolds.
    Four,
    /// (n+1)-colored closed n-manifolds.
    N,
    /// (n+1)-colored homology n-spheres.
    Sphere,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Meshulam,
        TheoremId::Surface,
        TheoremId::Three,
        TheoremId::Four,
        TheoremId::N,
        TheoremId::Sphere,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TheoremId::Meshulam => "meshulam",
            TheoremId::Surface => "surface",
            TheoremId::Three => "three",
            TheoremId::Four => "four",
            TheoremId::N => "n",
            TheoremId::Sphere => "sphere",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = ChromaticError;
    fn from_str(s: &str) -> Result<Self, ChromaticError> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| ChromaticError::UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ProxyPass,
    ProxyFail,
    Assumed,
}

impl Status {
    pub fn holds(&self) -> bool {
        matches!(self, Status::Pass | Status::ProxyPass | Status::Assumed)
    }

    fn exact(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn proxy(ok: bool) -> Self {
        if ok {
            Status::ProxyPass
        } else {
            Status::ProxyFail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ProxyPass => "proxy-pass",
            Status::ProxyFail => "proxy-fail",
            Status::Assumed => "assumed",
        })
    }
}

/// One observed number behind a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    /// Class indices, when the quantity concerns some `K_S`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<isize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Evidence {
    fn betti(subset: Option<&[usize]>, degree: isize, field: FieldSpec, betti: usize) -> Self {
        Self {
            subset: subset.map(<[usize]>::to_vec),
            degree: Some(degree),
            field: Some(field),
            betti: Some(betti),
            note: None,
        }
    }

    fn note(note: impl Into<String>) -> Self {
        Self { subset: None, degree: None, field: None, betti: None, note: Some(note.into()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisVerdict {
    pub id: String,
    pub status: Status,
    /// Field the verdict was computed over; `None` for field-independent
    /// hypotheses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub evidence: Vec<Evidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem: TheoremId,
    pub fields: Vec<FieldSpec>,
    pub verdicts: Vec<HypothesisVerdict>,
    /// Fields over which every field-independent verdict and every verdict
    /// of that field holds.
    pub passing_fields: Vec<FieldSpec>,
    /// True iff `passing_fields` is nonempty.
    pub all_hold: bool,
    pub rainbow_witnesses: Vec<Vec<VertexId>>,
    /// `all_hold ⇒ rainbow witnesses exist`; false signals a soundness
    /// problem.
    pub consistent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pseudomanifold: Option<PseudomanifoldReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl CheckReport {
    pub fn failing(&self) -> impl Iterator<Item = &HypothesisVerdict> {
        self.verdicts.iter().filter(|v| !v.status.holds())
    }
}

fn subset_label(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// Shared state for one check: the complex, resolved colors and the list of
/// verdicts under construction.
struct Checker<'a> {
    k: &'a SimplicialComplex,
    colors: Vec<Option<usize>>,
    classes: usize,
    verdicts: Vec<HypothesisVerdict>,
    warnings: Vec<String>,
    pseudomanifold: Option<PseudomanifoldReport>,
}

impl<'a> Checker<'a> {
    fn new(k: &'a SimplicialComplex, c: &Coloring) -> Result<Self, ChromaticError> {
        let colors = c.resolve(k)?;
        let warnings = validate_coloring(k, c).iter().map(ToString::to_string).collect();
        Ok(Self { k, colors, classes: c.num_classes(), verdicts: Vec::new(), warnings, pseudomanifold: None })
    }

    fn sub(&self, s: &[usize]) -> SimplicialComplex {
        chromatic_by_colors(self.k, &self.colors, self.classes, s).expect("indices in range")
    }

    fn push(&mut self, id: impl Into<String>, status: Status, field: Option<FieldSpec>, evidence: Vec<Evidence>) {
        self.verdicts.push(HypothesisVerdict { id: id.into(), status, field, evidence });
    }

    fn manifold(&mut self, require_closed: bool) {
        let report = self.k.pseudomanifold_report();
        let ok = report.is_pseudomanifold() && (!require_closed || report.is_closed);
        let status = if ok { Status::Assumed } else { Status::Fail };
        let what = if require_closed { "closed manifold" } else { "manifold" };
        let note = if ok {
            format!("{what} hypothesis assumed; pseudomanifold conditions hold")
        } else {
            format!("{what} hypothesis violated by pseudomanifold conditions: {report:?}")
        };
        self.push("manifold", status, None, vec![Evidence::note(note)]);
        self.pseudomanifold = Some(report);
    }

    fn classes_nonempty(&mut self) {
        let empty: Vec<usize> = (0..self.classes)
            .filter(|&i| !self.colors.contains(&Some(i)))
            .collect();
        let evidence = if empty.is_empty() {
            vec![Evidence::note("every class is inhabited")]
        } else {
            vec![Evidence::note(format!("empty classes: {empty:?}"))]
        };
        self.push("classes-nonempty", Status::exact(empty.is_empty()), None, evidence);
    }

    /// One verdict per pair i < j: some edge joins V_i and V_j.
    fn pairwise_edges(&mut self) {
        let mut joined = vec![vec![false; self.classes]; self.classes];
        if self.k.dim() >= 1 {
            for e in self.k.faces(1).expect("edges") {
                let (a, b) = (e.vertices()[0] as usize, e.vertices()[1] as usize);
                if let (Some(x), Some(y)) = (self.colors[a], self.colors[b]) {
                    joined[x][y] = true;
                    joined[y][x] = true;
                }
            }
        }
        for (i, row) in joined.iter().enumerate() {
            for (j, &ok) in row.iter().enumerate().skip(i + 1) {
                let note = if ok { "edge found" } else { "no edge joins these classes" };
                let mut ev = Evidence::note(note);
                ev.subset = Some(vec![i, j]);
                self.push(format!("edge[{i},{j}]"), Status::exact(ok), None, vec![ev]);
            }
        }
    }

    /// β̃_d(K) = 0 for each listed degree.
    fn ambient_vanishing(&mut self, degrees: &[isize], field: FieldSpec) {
        for &d in degrees {
            let b = homology::reduced_betti_degree(self.k, field, d);
            self.push(format!("H{d}(K)=0"), Status::exact(b == 0), Some(field), vec![Evidence::betti(None, d, field, b)]);
        }
    }

    /// Proxy: β̃_k(K_S) = 0 for every k ≥ `from`.
    fn vanishing_from(&mut self, id: String, s: &[usize], from: isize, field: FieldSpec) {
        let ks = self.sub(s);
        let betti = homology::reduced_betti(&ks, field);
        let bad: Vec<Evidence> = (from.max(-1)..=betti.top_degree())
            .filter(|&d| betti.get(d) != 0)
            .map(|d| Evidence::betti(Some(s), d, field, betti.get(d)))
            .collect();
        let ok = bad.is_empty();
        let evidence = if ok {
            let mut e = Evidence::note(format!("reduced Betti numbers {betti} vanish from degree {from}"));
            e.subset = Some(s.to_vec());
            e.field = Some(field);
            vec![e]
        } else {
            bad
        };
        self.push(id, Status::proxy(ok), Some(field), evidence);
    }

    fn finish(self, theorem: TheoremId, fields: &[FieldSpec]) -> CheckReport {
        let independent_ok = self.verdicts.iter().filter(|v| v.field.is_none()).all(|v| v.status.holds());
        let passing_fields: Vec<FieldSpec> = fields
            .iter()
            .copied()
            .filter(|f| {
                independent_ok
                    && self.verdicts.iter().filter(|v| v.field == Some(*f)).all(|v| v.status.holds())
            })
            .collect();
        let all_hold = !passing_fields.is_empty();
        let witnesses: Vec<Vec<VertexId>> = rainbow_by_colors(self.k, &self.colors, self.classes)
            .iter()
            .map(|s| self.k.labels_of(s))
            .collect();
        let consistent = !all_hold || !witnesses.is_empty();
        CheckReport {
            theorem,
            fields: fields.to_vec(),
            verdicts: self.verdicts,
            passing_fields,
            all_hold,
            rainbow_witnesses: witnesses,
            consistent,
            pseudomanifold: self.pseudomanifold,
            warnings: self.warnings,
        }
    }
}

/// The Meshulam condition over each field: β̃_{|S|−2}(K_S) = 0 for every nonempty S. A class
/// count other than `dim + 1` is reported as a failed `arity` verdict.
fn meshulam_verdicts(ch: &mut Checker<'_>, fields: &[FieldSpec]) {
    let dim = ch.k.dim();
    if ch.classes as isize != dim + 1 {
        let note = format!("{} classes on a {dim}-dimensional complex; rainbow simplices need {}", ch.classes, dim + 1);
        ch.push("arity", Status::Fail, None, vec![Evidence::note(note)]);
    }
    let subsets = nonempty_subsets(ch.classes);
    let subcomplexes: Vec<SimplicialComplex> = subsets.par_iter().map(|s| ch.sub(s)).collect();
    for &field in fields {
        let bettis: Vec<usize> = subsets
            .par_iter()
            .zip(subcomplexes.par_iter())
            .map(|(s, ks)| homology::reduced_betti_degree(ks, field, s.len() as isize - 2))
            .collect();
        for (s, b) in subsets.iter().zip(bettis) {
            let degree = s.len() as isize - 2;
            ch.push(
                format!("vanish S={}", subset_label(s)),
                Status::exact(b == 0),
                Some(field),
                vec![Evidence::betti(Some(s), degree, field, b)],
            );
        }
    }
}

/// Checks the homological rainbow criterion over `field`, and enumerates
/// rainbow simplices.
pub fn check_meshulam(
    k: &SimplicialComplex,
    c: &Coloring,
    field: FieldSpec,
) -> Result<CheckReport, ChromaticError> {
    let mut ch = Checker::new(k, c)?;
    meshulam_verdicts(&mut ch, &[field]);
    Ok(ch.finish(TheoremId::Meshulam, &[field]))
}

fn arity_error(theorem: TheoremId, dim: &str, classes: &str, k: &SimplicialComplex, c: &Coloring) -> ChromaticError {
    ChromaticError::Arity {
        theorem,
        dim: dim.to_string(),
        classes: classes.to_string(),
        got_dim: k.dim(),
        got_classes: c.num_classes(),
    }
}

/// Evaluates the hypotheses of `theorem` on (K, C) over each field.
pub fn check_theorem(
    k: &SimplicialComplex,
    c: &Coloring,
    theorem: TheoremId,
    fields: &[FieldSpec],
) -> Result<CheckReport, ChromaticError> {
    if fields.is_empty() {
        return Err(ChromaticError::NoFields);
    }
    let dim = k.dim();
    let classes = c.num_classes();
    let fixed = |d: isize| dim == d && classes as isize == d + 1;
    let n_ok = dim >= 1 && classes as isize == dim + 1;
    match theorem {
        TheoremId::Meshulam => {}
        TheoremId::Surface if !fixed(2) => return Err(arity_error(theorem, "2", "3", k, c)),
        TheoremId::Three if !fixed(3) => return Err(arity_error(theorem, "3", "4", k, c)),
        TheoremId::Four if !fixed(4) => return Err(arity_error(theorem, "4", "5", k, c)),
        TheoremId::N | TheoremId::Sphere if !n_ok => return Err(arity_error(theorem, "n >= 1", "n+1", k, c)),
        _ => {}
    }
    let mut ch = Checker::new(k, c)?;
    match theorem {
        TheoremId::Meshulam => meshulam_verdicts(&mut ch, fields),
        TheoremId::Surface => surface_verdicts(&mut ch, fields),
        TheoremId::Three => three_verdicts(&mut ch, fields),
        TheoremId::Four => four_verdicts(&mut ch, fields),
        TheoremId::N => n_verdicts(&mut ch, fields),
        TheoremId::Sphere => sphere_verdicts(&mut ch, fields)?,
    }
    Ok(ch.finish(theorem, fields))
}

/// Surfaces: H₁(K_{i}, K_{i} ∩ ∂K) = 0 for each class, classes nonempty.
fn surface_verdicts(ch: &mut Checker<'_>, fields: &[FieldSpec]) {
    ch.manifold(false);
    ch.classes_nonempty();
    // an impure complex already failed the manifold verdict
    let boundary = ch.k.boundary_complex().unwrap_or_else(|_| ch.k.generated_by(Vec::new()));
    let pairs: Vec<(SimplicialComplex, SimplicialComplex)> = (0..3)
        .map(|i| {
            let ki = ch.sub(&[i]);
            let meet = ki.intersection(&boundary);
            (ki, meet)
        })
        .collect();
    for &field in fields {
        for (i, (ki, meet)) in pairs.iter().enumerate() {
            let rel = homology::relative_betti(ki, meet, field).expect("K_i ∩ ∂K lies in K_i");
            let b = rel.get(1);
            let mut ev = Evidence::betti(Some(&[i]), 1, field, b);
            ev.note = Some(format!(
                "relative H1(K_{{{i}}}, K_{{{i}}} ∩ ∂K); boundary part has {} facets",
                meet.facets().len()
            ));
            ch.push(format!("relH1[{i}]"), Status::exact(b == 0), Some(field), vec![ev]);
        }
    }
}

/// Proxy for "K_{i} contractible and K_{i} ∩ ∂K empty or contractible".
fn class_acyclic_verdicts(ch: &mut Checker<'_>, fields: &[FieldSpec], with_boundary: bool) {
    let boundary = if with_boundary { ch.k.boundary_complex().ok() } else { None };
    for &field in fields {
        for i in 0..ch.classes {
            let ki = ch.sub(&[i]);
            let bi = homology::reduced_betti(&ki, field);
            let mut ok = !ki.is_empty() && bi.is_zero();
            let mut evidence = vec![{
                let mut e = Evidence::note(format!("K_{{{i}}} reduced Betti {bi}"));
                e.subset = Some(vec![i]);
                e.field = Some(field);
                e
            }];
            if let Some(bd) = &boundary {
                let meet = ki.intersection(bd);
                if !meet.is_empty() {
                    let bm = homology::reduced_betti(&meet, field);
                    ok &= bm.is_zero();
                    let mut e = Evidence::note(format!("K_{{{i}}} ∩ ∂K reduced Betti {bm}"));
                    e.subset = Some(vec![i]);
                    e.field = Some(field);
                    evidence.push(e);
                }
            }
            ch.push(format!("contractible[{i}]"), Status::proxy(ok), Some(field), evidence);
        }
    }
}

fn three_verdicts(ch: &mut Checker<'_>, fields: &[FieldSpec]) {
    ch.manifold(false);
    for &field in fields {
        ch.ambient_vanishing(&[2], field);
    }
    class_acyclic_verdicts(ch, fields, true);
    ch.pairwise_edges();
}

fn four_verdicts(ch: &mut Checker<'_>, fields: &[FieldSpec]) {
    ch.manifold(true);
    for &field in fields {
        ch.ambient_vanishing(&[2, 3], field);
    }
    ch.pairwise_edges();
    // "contractible with a 4-ball regular neighborhood"
    class_acyclic_verdicts(ch, fields, false);
    // "regular neighborhood a handlebody" for |S| = 2, indices 0..4
    let pairs: Vec<Vec<usize>> = nonempty_subsets(ch.classes).into_iter().filter(|s| s.len() == 2).collect();
    for &field in fields {
        for s in &pairs {
            ch.vanishing_from(format!("handlebody S={}", subset_label(s)), s, 2, field);
        }
    }
}

fn n_verdicts(ch: &mut Checker<'_>, fields: &[FieldSpec]) {
    ch.manifold(true);
    ch.classes_nonempty();
    let n = ch.k.dim();
    let degrees: Vec<isize> = (2..n).collect();
    for &field in fields {
        ch.ambient_vanishing(&degrees, field);
    }
    // spine of dimension |S| − 1 for |S| ≤ n − 1
    let subsets: Vec<Vec<usize>> = nonempty_subsets(ch.classes)
        .into_iter()
        .filter(|s| (s.len() as isize) < n)
        .collect();
    for &field in fields {
        for s in &subsets {
            ch.vanishing_from(format!("spine S={}", subset_label(s)), s, s.len() as isize, field);
        }
    }
}

fn sphere_verdicts(ch: &mut Checker<'_>, fields: &[FieldSpec]) -> Result<(), ChromaticError> {
    ch.manifold(true);
    ch.classes_nonempty();
    let n = ch.k.dim();
    for &field in fields {
        let b = homology::reduced_betti(ch.k, field);
        let ok = b == BettiVector::sphere(n);
        let mut e = Evidence::note(format!("reduced Betti {b}"));
        e.field = Some(field);
        ch.push(format!("homology-sphere S^{n}"), Status::proxy(ok), Some(field), vec![e]);
    }
    let subsets: Vec<Vec<usize>> = nonempty_subsets(ch.classes)
        .into_iter()
        .filter(|s| (s.len() as isize) < n)
        .collect();
    let subs: Vec<SimplicialComplex> = subsets.par_iter().map(|s| ch.sub(s)).collect();
    for &field in fields {
        for (s, ks) in subsets.iter().zip(&subs) {
            let d = s.len() as isize;
            let b = homology::reduced_betti_degree(ks, field, d);
            ch.push(
                format!("H|S|(K_S)=0 S={}", subset_label(s)),
                Status::exact(b == 0),
                Some(field),
                vec![Evidence::betti(Some(s), d, field, b)],
            );
        }
    }
    Ok(())
}

/// One subset compared with its complement under duality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityEntry {
    pub subset: Vec<usize>,
    pub complement: Vec<usize>,
    /// |S| − 2 and β̃_{|S|−2}(K_S).
    pub degree: isize,
    pub betti: usize,
    /// n + 1 − |S| and β̃_{n+1−|S|}(K_{Sᶜ}).
    pub complement_degree: isize,
    pub complement_betti: usize,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityAudit {
    pub field: FieldSpec,
    pub dim: isize,
    pub entries: Vec<DualityEntry>,
    pub pass: bool,
}

/// Compares β̃_{|S|−2}(K_S) with β̃_{n+1−|S|}(K_{Sᶜ}) for 1 ≤ |S| ≤ n on a
/// homology n-sphere colored with n + 1 classes.
pub fn alexander_duality_audit(
    k: &SimplicialComplex,
    c: &Coloring,
    field: FieldSpec,
) -> Result<DualityAudit, ChromaticError> {
    let n = k.dim();
    let betti = homology::reduced_betti(k, field);
    if n < 0 || betti != BettiVector::sphere(n) {
        return Err(ChromaticError::NotHomologySphere { dim: n, field, betti });
    }
    if c.num_classes() as isize != n + 1 {
        return Err(arity_error(TheoremId::Sphere, "n", "n+1", k, c));
    }
    let colors = c.resolve(k)?;
    let classes = c.num_classes();
    let subsets: Vec<Vec<usize>> = nonempty_subsets(classes)
        .into_iter()
        .filter(|s| s.len() as isize <= n)
        .collect();
    let entries: Vec<DualityEntry> = subsets
        .par_iter()
        .map(|s| {
            let complement: Vec<usize> = (0..classes).filter(|i| !s.contains(i)).collect();
            let ks = chromatic_by_colors(k, &colors, classes, s).expect("in range");
            let kc = chromatic_by_colors(k, &colors, classes, &complement).expect("in range");
            let degree = s.len() as isize - 2;
            let complement_degree = n + 1 - s.len() as isize;
            let b = homology::reduced_betti_degree(&ks, field, degree);
            let bc = homology::reduced_betti_degree(&kc, field, complement_degree);
            DualityEntry {
                subset: s.clone(),
                complement,
                degree,
                betti: b,
                complement_degree,
                complement_betti: bc,
                equal: b == bc,
            }
        })
        .collect();
    let pass = entries.iter().all(|e| e.equal);
    Ok(DualityAudit { field, dim: n, entries, pass })
}
