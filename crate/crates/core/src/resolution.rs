//! Dual graphs of modifications of the plane and their intersection forms.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// User-chosen label of an exceptional component.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComponentId(pub u32);

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("graph has no components")]
    Empty,
    #[error("component {0} is declared more than once")]
    DuplicateComponent(ComponentId),
    #[error("component {id} has self-intersection {value}; it must be negative")]
    NonNegativeSelfIntersection { id: ComponentId, value: i64 },
    #[error("edge ({0}, {1}) references an unknown component")]
    UnknownEdgeEndpoint(ComponentId, ComponentId),
    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(ComponentId),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(ComponentId, ComponentId),
    #[error("graph is disconnected: {unreachable:?} cannot be reached from {start}")]
    Disconnected {
        start: ComponentId,
        unreachable: Vec<ComponentId>,
    },
    #[error("first blown-up component {0} is not in the graph")]
    UnknownE0(ComponentId),
    #[error("not a blow-up graph: det of the intersection matrix is {det}, expected {expected}")]
    Determinant { det: BigInt, expected: i64 },
    #[error("multiplicity matrix entry at ({row}, {col}) is {value}, expected a positive integer")]
    NotPositiveInteger {
        row: ComponentId,
        col: ComponentId,
        value: String,
    },
    #[error("unknown component {0}")]
    UnknownComponent(ComponentId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub id: ComponentId,
    pub self_intersection: i64,
}

/// Declarative graph input, as it appears in job files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDescription {
    pub components: Vec<ComponentSpec>,
    pub edges: Vec<[ComponentId; 2]>,
    pub e0: ComponentId,
}

/// A validated dual graph: connected, simple, with a designated `E₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionGraph {
    ids: Vec<ComponentId>,
    self_intersections: Vec<i64>,
    adjacency: Vec<BTreeSet<usize>>,
    index: BTreeMap<ComponentId, usize>,
    e0: ComponentId,
}

impl ResolutionGraph {
    pub fn build(desc: &GraphDescription) -> Result<Self, ResolutionError> {
        if desc.components.is_empty() {
            return Err(ResolutionError::Empty);
        }
        let mut index = BTreeMap::new();
        let mut ids = Vec::new();
        let mut self_intersections = Vec::new();
        for c in &desc.components {
            if index.insert(c.id, ids.len()).is_some() {
                return Err(ResolutionError::DuplicateComponent(c.id));
            }
            if c.self_intersection >= 0 {
                return Err(ResolutionError::NonNegativeSelfIntersection {
                    id: c.id,
                    value: c.self_intersection,
                });
            }
            ids.push(c.id);
            self_intersections.push(c.self_intersection);
        }
        let mut adjacency = vec![BTreeSet::new(); ids.len()];
        for &[a, b] in &desc.edges {
            let (Some(&i), Some(&j)) = (index.get(&a), index.get(&b)) else {
                return Err(ResolutionError::UnknownEdgeEndpoint(a, b));
            };
            if i == j {
                return Err(ResolutionError::SelfLoop(a));
            }
            if !adjacency[i].insert(j) {
                return Err(ResolutionError::DuplicateEdge(a, b));
            }
            adjacency[j].insert(i);
        }
        if !index.contains_key(&desc.e0) {
            return Err(ResolutionError::UnknownE0(desc.e0));
        }

        let mut seen = vec![false; ids.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for &j in &adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        let unreachable: Vec<ComponentId> = ids
            .iter()
            .zip(&seen)
            .filter(|(_, &s)| !s)
            .map(|(&id, _)| id)
            .collect();
        if !unreachable.is_empty() {
            return Err(ResolutionError::Disconnected {
                start: ids[0],
                unreachable,
            });
        }

        Ok(Self {
            ids,
            self_intersections,
            adjacency,
            index,
            e0: desc.e0,
        })
    }

    pub fn description(&self) -> GraphDescription {
        let mut edges = Vec::new();
        for (i, nbrs) in self.adjacency.iter().enumerate() {
            for &j in nbrs {
                if i < j {
                    edges.push([self.ids[i], self.ids[j]]);
                }
            }
        }
        GraphDescription {
            components: self
                .ids
                .iter()
                .zip(&self.self_intersections)
                .map(|(&id, &s)| ComponentSpec {
                    id,
                    self_intersection: s,
                })
                .collect(),
            edges,
            e0: self.e0,
        }
    }

    /// Component ids in the order every matrix is indexed by.
    pub fn ids(&self) -> &[ComponentId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn e0(&self) -> ComponentId {
        self.e0
    }

    pub fn contains(&self, id: ComponentId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn position(&self, id: ComponentId) -> Result<usize, ResolutionError> {
        self.index
            .get(&id)
            .copied()
            .ok_or(ResolutionError::UnknownComponent(id))
    }

    pub fn self_intersection(&self, id: ComponentId) -> Result<i64, ResolutionError> {
        Ok(self.self_intersections[self.position(id)?])
    }

    /// Number of other components meeting `id`.
    pub fn valence(&self, id: ComponentId) -> Result<usize, ResolutionError> {
        Ok(self.adjacency[self.position(id)?].len())
    }

    pub fn neighbours(&self, id: ComponentId) -> Result<Vec<ComponentId>, ResolutionError> {
        Ok(self.adjacency[self.position(id)?]
            .iter()
            .map(|&j| self.ids[j])
            .collect())
    }
}

/// `(E_σ ∘ E_σ′)`, indexed by [`ResolutionGraph::ids`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    ids: Vec<ComponentId>,
    entries: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    pub fn ids(&self) -> &[ComponentId] {
        &self.ids
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(&self.entries)
    }
}

/// Fraction-free Gaussian elimination; every intermediate division is exact.
pub fn bareiss_determinant(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Builds the intersection matrix and checks `det = (−1)^{#σ}`.
pub fn intersection_matrix(g: &ResolutionGraph) -> Result<IntersectionMatrix, ResolutionError> {
    let n = g.len();
    let mut entries = vec![vec![0i64; n]; n];
    for i in 0..n {
        entries[i][i] = g.self_intersections[i];
        for &j in &g.adjacency[i] {
            entries[i][j] = 1;
        }
    }
    let m = IntersectionMatrix {
        ids: g.ids.clone(),
        entries,
    };
    let det = m.determinant();
    let expected = if n % 2 == 0 { 1 } else { -1 };
    if det != BigInt::from(expected) {
        return Err(ResolutionError::Determinant { det, expected });
    }
    Ok(m)
}

/// `M = −(E∘E)⁻¹`; all entries are positive integers for a blow-up graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    ids: Vec<ComponentId>,
    index: BTreeMap<ComponentId, usize>,
    entries: Vec<Vec<u64>>,
}

impl MultiplicityMatrix {
    pub fn ids(&self) -> &[ComponentId] {
        &self.ids
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn get(&self, row: ComponentId, col: ComponentId) -> Result<u64, ResolutionError> {
        let i = *self
            .index
            .get(&row)
            .ok_or(ResolutionError::UnknownComponent(row))?;
        let j = *self
            .index
            .get(&col)
            .ok_or(ResolutionError::UnknownComponent(col))?;
        Ok(self.entries[i][j])
    }

    /// `(m_{σ,c})` for `c` in `cols`.
    pub fn row_restricted(
        &self,
        row: ComponentId,
        cols: &[ComponentId],
    ) -> Result<Vec<u64>, ResolutionError> {
        cols.iter().map(|&c| self.get(row, c)).collect()
    }
}

fn invert_exact(a: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn multiplicity_matrix(g: &ResolutionGraph) -> Result<MultiplicityMatrix, ResolutionError> {
    let e = intersection_matrix(g)?;
    let inv = invert_exact(&e.entries).ok_or_else(|| ResolutionError::Determinant {
        det: BigInt::zero(),
        expected: if g.len() % 2 == 0 { 1 } else { -1 },
    })?;
    let mut entries = Vec::with_capacity(g.len());
    for (i, row) in inv.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, x) in row.iter().enumerate() {
            let neg = -x;
            let value = if neg.is_integer() && neg.is_positive() {
                neg.to_integer().to_u64()
            } else {
                None
            };
            match value {
                Some(v) => out.push(v),
                None => {
                    return Err(ResolutionError::NotPositiveInteger {
                        row: g.ids[i],
                        col: g.ids[j],
                        value: neg.to_string(),
                    })
                }
            }
        }
        entries.push(out);
    }
    Ok(MultiplicityMatrix {
        ids: g.ids.clone(),
        index: g.index.clone(),
        entries,
    })
}
