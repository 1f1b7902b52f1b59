//! First barycentric subdivision, derived neighborhoods and supplement
//! complexes.
//!
//! A vertex of `K'` is the barycenter of a nonempty face of `K` (its
//! *carrier*) and is labelled by the carrier's labels, e.g. `[a,b]`. Simplices
//! of `K'` are chains of faces under inclusion.

use std::collections::HashSet;
use std::sync::Arc;

use crate::complex::{ComplexError, Simplex, SimplicialComplex, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubdivisionError {
    #[error("cannot subdivide the empty complex")]
    EmptyComplex,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// `K'` together with the carrier of each of its vertices.
#[derive(Debug, Clone)]
pub struct SubdivisionMap {
    pub base: SimplicialComplex,
    pub subdivided: SimplicialComplex,
    /// Indexed by vertex index of `subdivided`; simplices of `base`.
    carriers: Vec<Simplex>,
}

impl SubdivisionMap {
    pub fn carrier(&self, v: u32) -> &Simplex {
        &self.carriers[v as usize]
    }

    pub fn carriers(&self) -> &[Simplex] {
        &self.carriers
    }

    /// Carrier of a `K'` vertex given by label.
    pub fn carrier_of(&self, label: &VertexId) -> Option<Vec<VertexId>> {
        let v = self.subdivided.index_of(label)?;
        Some(self.base.labels_of(self.carrier(v)))
    }

    fn mask_of(&self, u: &[VertexId]) -> Result<Vec<bool>, ComplexError> {
        let mut mask = vec![false; self.base.universe().len()];
        for label in u {
            let i = self.base.index_of(label).ok_or_else(|| ComplexError::UnknownVertex(label.clone()))?;
            mask[i as usize] = true;
        }
        Ok(mask)
    }

    /// Closed star in `K'` of the subdivided full subcomplex `⟨U⟩`.
    pub fn derived_neighborhood(&self, u: &[VertexId]) -> Result<SimplicialComplex, ComplexError> {
        let mask = self.mask_of(u)?;
        let inside = |v: &u32| self.carriers[*v as usize].vertices().iter().all(|&w| mask[w as usize]);
        let facets = self
            .subdivided
            .facets()
            .iter()
            .filter(|f| f.vertices().iter().any(inside))
            .cloned()
            .collect();
        Ok(self.subdivided.generated_by(facets))
    }

    /// Full subcomplex of `K'` on barycenters of faces not contained in
    /// `⟨U⟩`, a simplicial model of `|K| ∖ |⟨U⟩|`.
    pub fn supplement_complex(&self, u: &[VertexId]) -> Result<SimplicialComplex, ComplexError> {
        let mask = self.mask_of(u)?;
        let keep: Vec<bool> = self
            .carriers
            .iter()
            .map(|c| c.vertices().iter().any(|&w| !mask[w as usize]))
            .collect();
        Ok(self.subdivided.induced_by_mask(&keep))
    }

    /// Composes with a subdivision of `self.subdivided`: carriers of the
    /// result are faces of `self.base`.
    pub fn then(&self, next: &SubdivisionMap) -> SubdivisionMap {
        let carriers = next
            .carriers
            .iter()
            .map(|chain| {
                let mut union: Vec<u32> = chain
                    .vertices()
                    .iter()
                    .flat_map(|&v| self.carriers[v as usize].vertices().iter().copied())
                    .collect();
                union.sort_unstable();
                union.dedup();
                Simplex::from_sorted(union)
            })
            .collect();
        SubdivisionMap { base: self.base.clone(), subdivided: next.subdivided.clone(), carriers }
    }
}

fn escape(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    for ch in label.chars() {
        if matches!(ch, '\\' | ',' | '[' | ']') {
            out.push('\\');
        }
        out.push(ch);
    }
    out
}

fn encode(labels: &[&VertexId], escaped: bool) -> VertexId {
    let parts: Vec<String> = labels
        .iter()
        .map(|l| if escaped { escape(l.as_str()) } else { l.as_str().to_string() })
        .collect();
    VertexId(format!("[{}]", parts.join(",")))
}

/// Order complex of the face poset of `k`.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> Result<SubdivisionMap, SubdivisionError> {
    if k.is_empty() {
        return Err(SubdivisionError::EmptyComplex);
    }
    let faces: Vec<Simplex> = (0..=k.dim())
        .flat_map(|d| k.faces(d).expect("degree in range").iter().cloned())
        .collect();
    let label_for = |escaped: bool| -> Vec<VertexId> {
        faces
            .iter()
            .map(|f| {
                let ls: Vec<&VertexId> = f.vertices().iter().map(|&v| k.label(v)).collect();
                encode(&ls, escaped)
            })
            .collect()
    };
    let mut labels = label_for(false);
    if labels.iter().collect::<HashSet<_>>().len() != labels.len() {
        labels = label_for(true);
    }
    // sort barycenters by label so index order is label order
    let mut order: Vec<usize> = (0..faces.len()).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    let mut position = vec![0u32; faces.len()];
    for (pos, &i) in order.iter().enumerate() {
        position[i] = pos as u32;
    }
    let universe: Arc<[VertexId]> = order.iter().map(|&i| labels[i].clone()).collect();
    let carriers: Vec<Simplex> = order.iter().map(|&i| faces[i].clone()).collect();
    let face_index = |s: &Simplex| -> u32 {
        let d = s.dim();
        let offset: usize = (0..d).map(|e| k.faces(e).expect("degree").len()).sum();
        let local = k.faces(d).expect("degree").binary_search(s).expect("face of k");
        position[offset + local]
    };

    let mut chains = Vec::new();
    for facet in k.facets() {
        let n = facet.len();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let mut chain = Vec::with_capacity(n);
            let mut prefix = Vec::with_capacity(n);
            for &i in &perm {
                prefix.push(facet.vertices()[i]);
                chain.push(face_index(&Simplex::new(prefix.clone())));
            }
            chains.push(Simplex::new(chain));
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    let subdivided = SimplicialComplex::from_simplices(universe, chains);
    Ok(SubdivisionMap { base: k.clone(), subdivided, carriers })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// `times`-fold subdivision with carriers in the original complex.
pub fn iterated_subdivision(k: &SimplicialComplex, times: usize) -> Result<SubdivisionMap, SubdivisionError> {
    if times == 0 {
        let carriers = (0..k.universe().len() as u32).map(|v| Simplex::new(vec![v])).collect();
        return Ok(SubdivisionMap { base: k.clone(), subdivided: k.clone(), carriers });
    }
    let mut map = barycentric_subdivision(k)?;
    for _ in 1..times {
        let next = barycentric_subdivision(&map.subdivided)?;
        map = map.then(&next);
    }
    Ok(map)
}

/// `N(⟨U⟩, K')` for a freshly built `K'`.
pub fn derived_neighborhood(u: &[VertexId], k: &SimplicialComplex) -> Result<SimplicialComplex, SubdivisionError> {
    Ok(barycentric_subdivision(k)?.derived_neighborhood(u)?)
}

/// Supplement of `⟨U⟩` in a freshly built `K'`.
pub fn supplement_complex(u: &[VertexId], k: &SimplicialComplex) -> Result<SimplicialComplex, SubdivisionError> {
    Ok(barycentric_subdivision(k)?.supplement_complex(u)?)
}
