//! Built-in triangulations, Sperner instances and seeded colorings.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chromatic::Coloring;
use crate::complex::{ComplexError, SimplicialComplex, VertexId};
use crate::subdivision::{iterated_subdivision, SubdivisionError, SubdivisionMap};

/// Largest `n` accepted by the simplex families.
pub const MAX_SIMPLEX_DIM: usize = 6;
/// Largest facet count `sperner_instance` will build.
pub const MAX_SPERNER_FACETS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeneratorError {
    #[error("unknown complex name `{0}`")]
    UnknownName(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("cannot split {vertices} vertices into {classes} nonempty classes")]
    TooManyClasses { classes: usize, vertices: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
}

/// Catalog entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexName {
    /// The full n-simplex Δⁿ.
    Simplex(usize),
    /// ∂Δⁿ⁺¹, an n-sphere on n + 2 vertices.
    SimplexBoundary(usize),
    /// Möbius's 7-vertex torus.
    Torus7,
    /// The 6-vertex real projective plane.
    Rp2_6,
    /// Disjoint copies of a base complex (an edge by default).
    Disjoint { copies: usize, base: Box<ComplexName> },
    /// The k-gon.
    Cycle(usize),
}

impl fmt::Display for ComplexName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexName::Simplex(n) => write!(f, "simplex({n})"),
            ComplexName::SimplexBoundary(n) => write!(f, "simplex_boundary({n})"),
            ComplexName::Torus7 => f.write_str("torus7"),
            ComplexName::Rp2_6 => f.write_str("rp2_6"),
            ComplexName::Disjoint { copies, base } => write!(f, "disjoint({copies},{base})"),
            ComplexName::Cycle(k) => write!(f, "cycle({k})"),
        }
    }
}

fn parse_count(name: &str, arg: Option<&str>) -> Result<usize, GeneratorError> {
    let arg = arg.ok_or_else(|| GeneratorError::OutOfRange(format!("`{name}` needs a parameter")))?;
    arg.trim()
        .parse()
        .map_err(|_| GeneratorError::OutOfRange(format!("`{arg}` is not a count")))
}

impl FromStr for ComplexName {
    type Err = GeneratorError;

    /// Accepts `name`, `name(args)` and `name:arg`.
    fn from_str(s: &str) -> Result<Self, GeneratorError> {
        let s = s.trim();
        let (head, args) = if let Some(open) = s.find('(') {
            let inner = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| GeneratorError::UnknownName(s.to_string()))?;
            (&s[..open], Some(inner))
        } else if let Some((h, a)) = s.split_once(':') {
            (h, Some(a))
        } else {
            (s, None)
        };
        let name = match head.trim().to_ascii_lowercase().as_str() {
            "simplex" => ComplexName::Simplex(parse_count(head, args)?),
            "simplex_boundary" | "boundary" | "sphere" => ComplexName::SimplexBoundary(parse_count(head, args)?),
            "torus7" | "torus" => ComplexName::Torus7,
            "rp2_6" | "rp2" => ComplexName::Rp2_6,
            "cycle" => ComplexName::Cycle(parse_count(head, args)?),
            "disjoint" => {
                let args = args.ok_or_else(|| GeneratorError::OutOfRange("`disjoint` needs a count".into()))?;
                let (count, base) = match args.split_once(',') {
                    Some((c, b)) => (c, b.parse()?),
                    None => (args, ComplexName::Simplex(1)),
                };
                ComplexName::Disjoint { copies: parse_count(head, Some(count))?, base: Box::new(base) }
            }
            _ => return Err(GeneratorError::UnknownName(s.to_string())),
        };
        Ok(name)
    }
}

#[derive(Debug, Clone)]
pub struct NamedComplex {
    pub name: ComplexName,
    pub complex: SimplicialComplex,
}

fn numbered(facets: Vec<Vec<usize>>) -> Result<SimplicialComplex, ComplexError> {
    SimplicialComplex::from_facets(facets.into_iter().map(|f| f.into_iter().map(|v| v.to_string())))
}

fn facets_of(name: &ComplexName) -> Result<Vec<Vec<String>>, GeneratorError> {
    let labels = |facets: Vec<Vec<usize>>| -> Vec<Vec<String>> {
        facets.into_iter().map(|f| f.into_iter().map(|v| v.to_string()).collect()).collect()
    };
    Ok(match name {
        ComplexName::Simplex(n) => {
            if *n > MAX_SIMPLEX_DIM {
                return Err(GeneratorError::OutOfRange(format!("simplex dimension {n} > {MAX_SIMPLEX_DIM}")));
            }
            labels(vec![(0..=*n).collect()])
        }
        ComplexName::SimplexBoundary(n) => {
            if *n > MAX_SIMPLEX_DIM {
                return Err(GeneratorError::OutOfRange(format!("sphere dimension {n} > {MAX_SIMPLEX_DIM}")));
            }
            let all: Vec<usize> = (0..=n + 1).collect();
            labels(all.iter().map(|&skip| all.iter().copied().filter(|&v| v != skip).collect()).collect())
        }
        ComplexName::Torus7 => {
            labels((0..7).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]).collect())
        }
        ComplexName::Rp2_6 => labels(vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 5, 1],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![3, 4, 1],
            vec![4, 5, 2],
            vec![5, 1, 3],
        ]),
        ComplexName::Cycle(k) => {
            if *k < 3 || *k > 100_000 {
                return Err(GeneratorError::OutOfRange(format!("cycle length {k} not in 3..=100000")));
            }
            labels((0..*k).map(|i| vec![i, (i + 1) % k]).collect())
        }
        ComplexName::Disjoint { copies, base } => {
            if *copies == 0 || *copies > 1000 {
                return Err(GeneratorError::OutOfRange(format!("copy count {copies} not in 1..=1000")));
            }
            let base = facets_of(base)?;
            (0..*copies)
                .flat_map(|c| {
                    base.iter()
                        .map(move |f| f.iter().map(|v| format!("{c}.{v}")).collect::<Vec<_>>())
                })
                .collect()
        }
    })
}

/// Builds a catalog complex.
pub fn generate(name: &ComplexName) -> Result<NamedComplex, GeneratorError> {
    let complex = SimplicialComplex::from_facets(facets_of(name)?)?;
    Ok(NamedComplex { name: name.clone(), complex })
}

/// `sd^k(Δⁿ)` with the minimum-carrier-vertex Sperner labeling.
#[derive(Debug, Clone)]
pub struct SpernerInstance {
    pub complex: SimplicialComplex,
    pub coloring: Coloring,
    /// Carriers in the original simplex, whose vertices are `0..=n`.
    pub map: SubdivisionMap,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// k-fold barycentric subdivision of Δⁿ, each vertex colored by the least
/// original vertex of its carrier.
pub fn sperner_instance(n: usize, k: usize) -> Result<SpernerInstance, GeneratorError> {
    if !(1..=4).contains(&n) {
        return Err(GeneratorError::OutOfRange(format!("dimension {n} not in 1..=4")));
    }
    if k == 0 {
        return Err(GeneratorError::OutOfRange("depth must be at least 1".into()));
    }
    let per_level = factorial(n + 1);
    let facets = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(per_level));
    if facets.is_none_or(|f| f > MAX_SPERNER_FACETS) {
        return Err(GeneratorError::OutOfRange(format!(
            "sd^{k}(simplex {n}) exceeds {MAX_SPERNER_FACETS} facets"
        )));
    }
    let simplex = numbered(vec![(0..=n).collect()])?;
    let map = iterated_subdivision(&simplex, k)?;
    let mut classes: Vec<Vec<VertexId>> = vec![Vec::new(); n + 1];
    for &v in map.subdivided.vertex_indices() {
        // base labels are "0".."n" and base index order matches for n ≤ 9
        let least = map.carrier(v).vertices()[0];
        let color: usize = map.base.label(least).as_str().parse().expect("numeric base label");
        classes[color].push(map.subdivided.label(v).clone());
    }
    Ok(SpernerInstance { complex: map.subdivided.clone(), coloring: Coloring::new(classes), map })
}

/// Uniformly random coloring with every class nonempty, redrawn until
/// surjective. The generator is ChaCha8 seeded with `seed_from_u64(seed)`;
/// vertices are colored in label order by `random_range(0..classes)`.
/// When `classes` equals the vertex count a shuffled bijection is drawn
/// instead (the same distribution, without rejection).
pub fn random_coloring(k: &SimplicialComplex, classes: usize, seed: u64) -> Result<Coloring, GeneratorError> {
    let vertices = k.vertex_set();
    if classes == 0 || classes > vertices.len() {
        return Err(GeneratorError::TooManyClasses { classes, vertices: vertices.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let assignment: Vec<usize> = if classes == vertices.len() {
        let mut perm: Vec<usize> = (0..classes).collect();
        perm.shuffle(&mut rng);
        perm
    } else {
        loop {
            let draw: Vec<usize> = (0..vertices.len()).map(|_| rng.random_range(0..classes)).collect();
            let mut hit = vec![false; classes];
            draw.iter().for_each(|&c| hit[c] = true);
            if hit.iter().all(|&h| h) {
                break draw;
            }
        }
    };
    let mut out: Vec<Vec<VertexId>> = vec![Vec::new(); classes];
    for (v, c) in vertices.into_iter().zip(assignment) {
        out[c].push(v);
    }
    Ok(Coloring::new(out))
}
