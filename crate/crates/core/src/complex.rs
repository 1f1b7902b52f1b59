//! Finite abstract simplicial complexes.
//!
//! A complex is stored by its facets over a sorted table of vertex labels
//! (the *universe*). Simplices hold indices into that table, so the index
//! order is the label order and every orientation sign derives from it.
//! Subcomplexes produced by [`SimplicialComplex::induced_subcomplex`] and
//! friends share the universe of their parent, which keeps their simplices
//! directly comparable.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::field::FieldSpec;
use crate::homology::{self, BettiVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("facet {index} is empty")]
    EmptyFacet { index: usize },
    #[error("facet {index} repeats vertex `{vertex}`")]
    DuplicateVertex { index: usize, vertex: VertexId },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("degree {k} out of range for a complex of dimension {dim}")]
    DegreeOutOfRange { k: isize, dim: isize },
    #[error("complex is not pure")]
    NotPure,
    #[error("not a subcomplex: face {0} is missing from the ambient complex")]
    NotSubcomplex(String),
}

/// Vertex label. Labels are compared as strings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

impl VertexId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl From<&String> for VertexId {
    fn from(s: &String) -> Self {
        VertexId(s.clone())
    }
}

/// A simplex as a strictly increasing list of vertex indices into the
/// universe of the complex it belongs to. The empty simplex appears only as
/// the single face of degree −1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Box<[u32]>);

impl Simplex {
    /// Sorts and deduplicates.
    pub fn new(mut vertices: Vec<u32>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices.into_boxed_slice())
    }

    pub(crate) fn from_sorted(vertices: Vec<u32>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices.into_boxed_slice())
    }

    pub fn empty() -> Self {
        Simplex(Box::new([]))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.by_ref().any(|w| w == v))
    }

    /// Codimension-one faces, the i-th one omitting the i-th vertex.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut v = Vec::with_capacity(self.0.len() - 1);
            v.extend_from_slice(&self.0[..i]);
            v.extend_from_slice(&self.0[i + 1..]);
            Simplex(v.into_boxed_slice())
        })
    }
}

/// Necessary conditions for being a triangulated manifold, all decided by
/// finite enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudomanifoldReport {
    pub dim: isize,
    pub is_pure: bool,
    /// Every ridge lies in at most two facets.
    pub ridge_degrees_ok: bool,
    /// Every ridge lies in exactly two facets.
    pub is_closed: bool,
    /// Each vertex link has the GF(2) Betti numbers of a sphere or a ball of
    /// dimension `dim - 1`.
    pub link_betti_ok: bool,
    pub strongly_connected: bool,
    /// Vertices whose link fails the Betti test.
    pub bad_links: Vec<VertexId>,
}

impl PseudomanifoldReport {
    /// Pure, ridge degrees at most two, manifold-like links, strongly connected.
    pub fn is_pseudomanifold(&self) -> bool {
        self.is_pure && self.ridge_degrees_ok && self.link_betti_ok && self.strongly_connected
    }
}

#[derive(Clone)]
pub struct SimplicialComplex {
    universe: Arc<[VertexId]>,
    vertices: Vec<u32>,
    facets: Vec<Simplex>,
    /// faces[k + 1] holds the k-faces, sorted.
    faces: OnceLock<Arc<Vec<Vec<Simplex>>>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<Vec<&str>> = self
            .facets
            .iter()
            .map(|s| s.vertices().iter().map(|&v| self.universe[v as usize].as_str()).collect())
            .collect();
        f.debug_struct("SimplicialComplex").field("facets", &facets).finish()
    }
}

impl PartialEq for SimplicialComplex {
    /// Two complexes are equal when they have the same facets as label sets.
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.universe, &other.universe) {
            return self.facets == other.facets;
        }
        self.facet_labels() == other.facet_labels()
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds a complex from facet lists, absorbing inputs contained in
    /// other inputs. An empty input yields the empty complex.
    pub fn from_facets<I, J, L>(facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = L>,
        L: Into<VertexId>,
    {
        let raw: Vec<Vec<VertexId>> = facets
            .into_iter()
            .map(|f| f.into_iter().map(Into::into).collect())
            .collect();
        for (index, f) in raw.iter().enumerate() {
            if f.is_empty() {
                return Err(ComplexError::EmptyFacet { index });
            }
            let mut seen = HashSet::new();
            for v in f {
                if !seen.insert(v) {
                    return Err(ComplexError::DuplicateVertex { index, vertex: v.clone() });
                }
            }
        }
        let labels: BTreeSet<&VertexId> = raw.iter().flatten().collect();
        let universe: Arc<[VertexId]> = labels.into_iter().cloned().collect();
        let index: HashMap<&VertexId, u32> =
            universe.iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
        let simplices = raw
            .iter()
            .map(|f| Simplex::new(f.iter().map(|v| index[v]).collect()))
            .collect();
        Ok(Self::from_simplices(universe, simplices))
    }

    /// The empty complex over an empty vertex table.
    pub fn empty() -> Self {
        Self::from_simplices(Arc::from(Vec::new()), Vec::new())
    }

    /// Normalizes `simplices` (drop empties, dedupe, absorb non-maximal ones)
    /// into a complex over `universe`.
    pub(crate) fn from_simplices(universe: Arc<[VertexId]>, simplices: Vec<Simplex>) -> Self {
        let facets = maximalize(simplices);
        let mut vertices: Vec<u32> = facets.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        vertices.sort_unstable();
        vertices.dedup();
        Self { universe, vertices, facets, faces: OnceLock::new() }
    }

    pub(crate) fn universe(&self) -> &Arc<[VertexId]> {
        &self.universe
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// −1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(Simplex::dim).max().unwrap_or(-1)
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Vertex indices that occur in some facet, ascending.
    pub fn vertex_indices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> Vec<VertexId> {
        self.vertices.iter().map(|&v| self.universe[v as usize].clone()).collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn label(&self, v: u32) -> &VertexId {
        &self.universe[v as usize]
    }

    /// Index of a label that occurs in this complex.
    pub fn index_of(&self, label: &VertexId) -> Option<u32> {
        let i = self.universe.binary_search(label).ok()? as u32;
        self.vertices.binary_search(&i).ok().map(|_| i)
    }

    pub fn labels_of(&self, s: &Simplex) -> Vec<VertexId> {
        s.vertices().iter().map(|&v| self.label(v).clone()).collect()
    }

    pub fn facet_labels(&self) -> Vec<Vec<VertexId>> {
        let mut out: Vec<Vec<VertexId>> = self.facets.iter().map(|f| self.labels_of(f)).collect();
        out.sort();
        out
    }

    /// Converts a label set into a simplex of this complex's universe.
    pub fn simplex_from_labels<'a>(
        &self,
        labels: impl IntoIterator<Item = &'a VertexId>,
    ) -> Result<Simplex, ComplexError> {
        let mut idx = Vec::new();
        for l in labels {
            match self.universe.binary_search(l) {
                Ok(i) => idx.push(i as u32),
                Err(_) => return Err(ComplexError::UnknownVertex(l.clone())),
            }
        }
        Ok(Simplex::new(idx))
    }

    fn face_table(&self) -> &Arc<Vec<Vec<Simplex>>> {
        self.faces.get_or_init(|| Arc::new(enumerate_faces(&self.facets, self.dim())))
    }

    /// All k-faces, sorted lexicographically. `k = -1` yields the empty
    /// simplex (for the augmentation).
    pub fn faces(&self, k: isize) -> Result<&[Simplex], ComplexError> {
        let dim = self.dim();
        if k < -1 || k > dim {
            return Err(ComplexError::DegreeOutOfRange { k, dim });
        }
        Ok(&self.face_table()[(k + 1) as usize])
    }

    /// Number of k-faces for k = 0..=dim.
    pub fn f_vector(&self) -> Vec<usize> {
        self.face_table().iter().skip(1).map(Vec::len).collect()
    }

    pub fn num_faces(&self) -> usize {
        self.f_vector().iter().sum()
    }

    pub fn contains_face(&self, s: &Simplex) -> bool {
        if s.is_empty() {
            return true;
        }
        self.face_table()
            .get(s.len())
            .is_some_and(|faces| faces.binary_search(s).is_ok())
    }

    /// Full subcomplex on the vertices flagged in `mask` (indexed by universe
    /// position).
    pub fn induced_by_mask(&self, mask: &[bool]) -> Self {
        let pieces = self
            .facets
            .iter()
            .map(|f| {
                Simplex::from_sorted(
                    f.vertices().iter().copied().filter(|&v| mask[v as usize]).collect(),
                )
            })
            .collect();
        Self::from_simplices(self.universe.clone(), pieces)
    }

    /// `{ σ ∈ K : vertices(σ) ⊆ W }`.
    pub fn induced_subcomplex<'a>(
        &self,
        w: impl IntoIterator<Item = &'a VertexId>,
    ) -> Result<Self, ComplexError> {
        let mut mask = vec![false; self.universe.len()];
        for label in w {
            let i = self.index_of(label).ok_or_else(|| ComplexError::UnknownVertex(label.clone()))?;
            mask[i as usize] = true;
        }
        Ok(self.induced_by_mask(&mask))
    }

    /// Subcomplex generated by the given simplices of this complex.
    pub(crate) fn generated_by(&self, simplices: Vec<Simplex>) -> Self {
        Self::from_simplices(self.universe.clone(), simplices)
    }

    /// Re-expresses `self` over `target`'s vertex table; fails if a label is
    /// missing there.
    pub(crate) fn rebased_onto(&self, target: &SimplicialComplex) -> Result<Self, ComplexError> {
        if Arc::ptr_eq(&self.universe, &target.universe) {
            return Ok(self.clone());
        }
        let facets = self
            .facets
            .iter()
            .map(|f| target.simplex_from_labels(f.vertices().iter().map(|&v| self.label(v))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_simplices(target.universe.clone(), facets))
    }

    /// Checks that every facet of `self` is a face of `ambient`.
    pub fn is_subcomplex_of(&self, ambient: &SimplicialComplex) -> bool {
        match self.rebased_onto(ambient) {
            Ok(sub) => sub.facets.iter().all(|f| ambient.contains_face(f)),
            Err(_) => false,
        }
    }

    /// Intersection of two subcomplexes sharing a vertex table.
    pub(crate) fn intersection(&self, other: &SimplicialComplex) -> Self {
        debug_assert!(Arc::ptr_eq(&self.universe, &other.universe));
        let mut pieces = Vec::new();
        for a in &self.facets {
            for b in &other.facets {
                let common: Vec<u32> =
                    a.vertices().iter().copied().filter(|v| b.contains(*v)).collect();
                if !common.is_empty() {
                    pieces.push(Simplex::from_sorted(common));
                }
            }
        }
        // a common vertex set of two faces is a face of both
        Self::from_simplices(self.universe.clone(), pieces)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    /// Number of facets containing each ridge ((dim−1)-face).
    fn ridge_degrees(&self) -> HashMap<Simplex, usize> {
        let mut degrees = HashMap::new();
        for f in &self.facets {
            for r in f.boundary_faces() {
                *degrees.entry(r).or_insert(0) += 1;
            }
        }
        degrees
    }

    /// Subcomplex generated by the ridges lying in exactly one facet.
    pub fn boundary_complex(&self) -> Result<Self, ComplexError> {
        if !self.is_pure() {
            return Err(ComplexError::NotPure);
        }
        if self.dim() < 1 {
            // ridges of a 0-complex are the empty face
            return Ok(self.generated_by(Vec::new()));
        }
        let free = self
            .ridge_degrees()
            .into_iter()
            .filter(|(_, d)| *d == 1)
            .map(|(r, _)| r)
            .collect();
        Ok(self.generated_by(free))
    }

    /// Σ_k (−1)^k f_k over k ≥ 0.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Vertex classes of the edge relation, each sorted, listed by smallest
    /// vertex.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        self.component_indices()
            .into_iter()
            .map(|c| c.into_iter().map(|v| self.label(v).clone()).collect())
            .collect()
    }

    pub(crate) fn component_indices(&self) -> Vec<Vec<u32>> {
        let mut parent: HashMap<u32, u32> = self.vertices.iter().map(|&v| (v, v)).collect();
        fn find(parent: &mut HashMap<u32, u32>, v: u32) -> u32 {
            let p = parent[&v];
            if p == v {
                return v;
            }
            let root = find(parent, p);
            parent.insert(v, root);
            root
        }
        for f in &self.facets {
            let vs = f.vertices();
            for w in vs.iter().skip(1) {
                let (a, b) = (find(&mut parent, vs[0]), find(&mut parent, *w));
                if a != b {
                    parent.insert(a.max(b), a.min(b));
                }
            }
        }
        let mut groups: HashMap<u32, Vec<u32>> = HashMap::new();
        for &v in &self.vertices {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<u32>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Link of a vertex: `{ σ ∖ v : v ∈ σ }`.
    pub fn link(&self, v: u32) -> Self {
        let pieces = self
            .facets
            .iter()
            .filter(|f| f.contains(v))
            .map(|f| Simplex::from_sorted(f.vertices().iter().copied().filter(|&w| w != v).collect()))
            .collect();
        Self::from_simplices(self.universe.clone(), pieces)
    }

    pub fn pseudomanifold_report(&self) -> PseudomanifoldReport {
        let dim = self.dim();
        let is_pure = self.is_pure();
        let (ridge_degrees_ok, is_closed) = if self.is_empty() {
            (true, true)
        } else if dim == 0 {
            // the single ridge is the empty face, contained in every vertex
            let n = self.facets.len();
            (n <= 2, n == 2)
        } else {
            let degrees = self.ridge_degrees();
            (
                degrees.values().all(|&d| d <= 2),
                degrees.values().all(|&d| d == 2),
            )
        };
        let mut bad_links = Vec::new();
        if dim >= 0 {
            let sphere = BettiVector::sphere(dim - 1);
            let ball = BettiVector::acyclic();
            for &v in &self.vertices {
                let link = self.link(v);
                let b = homology::reduced_betti(&link, FieldSpec::GF2);
                if b != sphere && b != ball {
                    bad_links.push(self.label(v).clone());
                }
            }
        }
        PseudomanifoldReport {
            dim,
            is_pure,
            ridge_degrees_ok,
            is_closed: is_closed && ridge_degrees_ok,
            link_betti_ok: bad_links.is_empty(),
            strongly_connected: self.is_strongly_connected(),
            bad_links,
        }
    }

    /// Facets connected through shared ridges. False for the empty complex.
    fn is_strongly_connected(&self) -> bool {
        let n = self.facets.len();
        if n == 0 {
            return false;
        }
        let mut by_ridge: HashMap<Simplex, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for r in f.boundary_faces() {
                by_ridge.entry(r).or_default().push(i);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for r in self.facets[i].boundary_faces() {
                for &j in &by_ridge[&r] {
                    if !seen[j] && self.facets[j].dim() == self.facets[i].dim() {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Drops empty and duplicate simplices and any simplex contained in another.
fn maximalize(mut simplices: Vec<Simplex>) -> Vec<Simplex> {
    simplices.retain(|s| !s.is_empty());
    simplices.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    simplices.dedup();
    let mut kept: Vec<Simplex> = Vec::with_capacity(simplices.len());
    let mut containing: HashMap<u32, Vec<usize>> = HashMap::new();
    for s in simplices {
        let absorbed = {
            // a superset must contain s's first vertex
            let candidates = containing.get(&s.vertices()[0]);
            candidates.is_some_and(|c| c.iter().any(|&i| kept[i].len() > s.len() && s.is_subset_of(&kept[i])))
        };
        if !absorbed {
            for &v in s.vertices() {
                containing.entry(v).or_default().push(kept.len());
            }
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

fn enumerate_faces(facets: &[Simplex], dim: isize) -> Vec<Vec<Simplex>> {
    let mut table: Vec<HashSet<Simplex>> = vec![HashSet::new(); (dim + 2) as usize];
    if dim >= 0 {
        table[0].insert(Simplex::empty());
    }
    for f in facets {
        let n = f.len();
        for mask in 1u64..(1u64 << n) {
            let face: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| f.vertices()[i]).collect();
            table[face.len()].insert(Simplex::from_sorted(face));
        }
    }
    table
        .into_iter()
        .map(|set| {
            let mut v: Vec<Simplex> = set.into_iter().collect();
            v.sort_unstable();
            v
        })
        .collect()
}
