//! The 4-fold left-right Cayley complex: four vertex copies of G, four edge
//! classes, square faces (g, ag, gb, agb), neighborhood views, the bipartite
//! Tanner subgraphs with their slot identifications, and the M0/M1 random
//! walk checks.
//!
//! Everything is indexed by label, not by endpoint set, so coincident labels
//! at small group orders become multi-edges and multi-faces instead of being
//! quotiented away.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GeneratorSet, Side};
use rand::Rng;

/// Vertex classes in fixed global order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexClass {
    V00 = 0,
    V10 = 1,
    V01 = 2,
    V11 = 3,
}

pub const VERTEX_CLASSES: [VertexClass; 4] = [
    VertexClass::V00,
    VertexClass::V10,
    VertexClass::V01,
    VertexClass::V11,
];

/// Edge classes in fixed global order: horizontal (right action by B) first,
/// then vertical (left action by A).
///
/// `H0` is E_{0*} (V00 -> V01), `H1` is E_{1*} (V10 -> V11),
/// `Vt0` is E_{*0} (V00 -> V10), `Vt1` is E_{*1} (V01 -> V11).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeClass {
    H0 = 0,
    H1 = 1,
    Vt0 = 2,
    Vt1 = 3,
}

pub const EDGE_CLASSES: [EdgeClass; 4] = [
    EdgeClass::H0,
    EdgeClass::H1,
    EdgeClass::Vt0,
    EdgeClass::Vt1,
];

impl EdgeClass {
    pub fn is_horizontal(self) -> bool {
        matches!(self, EdgeClass::H0 | EdgeClass::H1)
    }
}

/// Which bipartite Tanner subgraph of the complex to extract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgraphKind {
    /// G(E^|, F): vertical edges vs faces.
    EdgeFaceVertical,
    /// G(E^-, F): horizontal edges vs faces.
    EdgeFaceHorizontal,
    /// G(V, E^|): vertices vs vertical edges.
    VertexEdgeVertical,
    /// G(V, E^-): vertices vs horizontal edges.
    VertexEdgeHorizontal,
}

/// A bipartite Delta-regular graph with the slot identification
/// `edges x [2] = vertices x [Delta]` required by the Tanner construction.
#[derive(Clone)]
pub struct TannerGraph {
    pub kind: SubgraphKind,
    pub delta: usize,
    /// Per graph-vertex: the graph-edge occupying each of its Delta slots.
    pub vertex_slots: Vec<Vec<u32>>,
    /// Per graph-edge: (vertex, slot) for side 0 and side 1.
    pub edge_endpoints: Vec<[(u32, u16); 2]>,
}

impl TannerGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_slots.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_endpoints.len()
    }

    /// Round-trip check of the identification: (e, side) -> (v, slot) -> e.
    pub fn identification_consistent(&self) -> bool {
        self.edge_endpoints.iter().enumerate().all(|(e, ends)| {
            ends.iter()
                .all(|&(v, slot)| self.vertex_slots[v as usize][slot as usize] == e as u32)
        }) && self.vertex_slots.iter().enumerate().all(|(v, slots)| {
            slots.iter().enumerate().all(|(slot, &e)| {
                self.edge_endpoints[e as usize]
                    .iter()
                    .any(|&(w, s)| w as usize == v && s as usize == slot)
            })
        })
    }
}

/// Neighborhood view of a vertex: the paper's eight named sets, as id lists
/// counted with multiplicity.
#[derive(Clone, Debug)]
pub struct VertexNeighborhood {
    pub edges_vt0: Vec<usize>,
    pub edges_vt1: Vec<usize>,
    pub edges_h0: Vec<usize>,
    pub edges_h1: Vec<usize>,
    pub faces: Vec<usize>,
    pub vertices_v00: Vec<usize>,
    pub vertices_v10: Vec<usize>,
    pub vertices_v01: Vec<usize>,
    pub vertices_v11: Vec<usize>,
}

/// Neighborhood view of an edge: the opposing and adjacent edge sets plus
/// the incident faces.
#[derive(Clone, Debug)]
pub struct EdgeNeighborhood {
    pub edges_vt0: Vec<usize>,
    pub edges_vt1: Vec<usize>,
    pub edges_h0: Vec<usize>,
    pub edges_h1: Vec<usize>,
    pub faces: Vec<usize>,
}

/// Label-coincidence statistics (multi-edges / multi-faces at small orders).
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct CollisionStats {
    /// Edge labels per class sharing an unordered endpoint pair with another
    /// label of the same class.
    pub parallel_edges: usize,
    /// Face labels sharing their 4-tuple of vertices with another face.
    pub parallel_faces: usize,
}

/// The complex G_2(G, A, B).
#[derive(Clone)]
pub struct LeftRightComplex {
    group: FiniteGroup,
    a: GeneratorSet,
    b: GeneratorSet,
}

impl LeftRightComplex {
    pub fn new(group: FiniteGroup, a: GeneratorSet, b: GeneratorSet) -> Result<Self> {
        if a.side() != Side::Left {
            return Err(Error::InvalidParameter("A must act on the left".into()));
        }
        if b.side() != Side::Right {
            return Err(Error::InvalidParameter("B must act on the right".into()));
        }
        if a.delta() != b.delta() {
            return Err(Error::InvalidParameter(format!(
                "|A| = {} and |B| = {} must agree",
                a.delta(),
                b.delta()
            )));
        }
        Ok(Self { group, a, b })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn gens_a(&self) -> &GeneratorSet {
        &self.a
    }

    pub fn gens_b(&self) -> &GeneratorSet {
        &self.b
    }

    pub fn group_order(&self) -> usize {
        self.group.order()
    }

    pub fn delta(&self) -> usize {
        self.a.delta()
    }

    pub fn vertex_count(&self) -> usize {
        4 * self.group_order()
    }

    /// Edges in one class.
    pub fn edges_per_class(&self) -> usize {
        self.group_order() * self.delta()
    }

    pub fn edge_count(&self) -> usize {
        4 * self.edges_per_class()
    }

    pub fn face_count(&self) -> usize {
        self.group_order() * self.delta() * self.delta()
    }

    #[inline]
    fn gen_a(&self, i: usize) -> usize {
        self.a.elements()[i]
    }

    #[inline]
    fn gen_b(&self, i: usize) -> usize {
        self.b.elements()[i]
    }

    #[inline]
    fn left(&self, a_idx: usize, g: usize) -> usize {
        self.group.mul_idx(self.gen_a(a_idx), g)
    }

    #[inline]
    fn left_inv(&self, a_idx: usize, g: usize) -> usize {
        self.group.mul_idx(self.group.inv_idx(self.gen_a(a_idx)), g)
    }

    #[inline]
    fn right(&self, g: usize, b_idx: usize) -> usize {
        self.group.mul_idx(g, self.gen_b(b_idx))
    }

    #[inline]
    fn right_inv(&self, g: usize, b_idx: usize) -> usize {
        self.group.mul_idx(g, self.group.inv_idx(self.gen_b(b_idx)))
    }

    // Index plumbing.

    #[inline]
    pub fn vertex_id(&self, class: VertexClass, g: usize) -> usize {
        class as usize * self.group_order() + g
    }

    #[inline]
    pub fn vertex_of(&self, id: usize) -> (VertexClass, usize) {
        let n = self.group_order();
        (VERTEX_CLASSES[id / n], id % n)
    }

    #[inline]
    pub fn edge_id(&self, class: EdgeClass, g: usize, s: usize) -> usize {
        class as usize * self.edges_per_class() + g * self.delta() + s
    }

    #[inline]
    pub fn edge_of(&self, id: usize) -> (EdgeClass, usize, usize) {
        let per = self.edges_per_class();
        let class = EDGE_CLASSES[id / per];
        let local = id % per;
        (class, local / self.delta(), local % self.delta())
    }

    #[inline]
    pub fn face_id(&self, g: usize, a_idx: usize, b_idx: usize) -> usize {
        (g * self.delta() + a_idx) * self.delta() + b_idx
    }

    #[inline]
    pub fn face_of(&self, id: usize) -> (usize, usize, usize) {
        let d = self.delta();
        (id / (d * d), (id / d) % d, id % d)
    }

    /// The 4 vertices of a face, in class order [V00, V10, V01, V11].
    pub fn face_vertices(&self, f: usize) -> [usize; 4] {
        let (g, a, b) = self.face_of(f);
        let ag = self.left(a, g);
        let gb = self.right(g, b);
        let agb = self.right(ag, b);
        [
            self.vertex_id(VertexClass::V00, g),
            self.vertex_id(VertexClass::V10, ag),
            self.vertex_id(VertexClass::V01, gb),
            self.vertex_id(VertexClass::V11, agb),
        ]
    }

    /// The 4 edges of a face in class order [H0, H1, Vt0, Vt1], each paired
    /// with the slot the face occupies in that edge's Tanner identification.
    pub fn face_edges_slots(&self, f: usize) -> [(usize, usize); 4] {
        let (g, a, b) = self.face_of(f);
        let ag = self.left(a, g);
        let gb = self.right(g, b);
        [
            (self.edge_id(EdgeClass::H0, g, b), a),
            (self.edge_id(EdgeClass::H1, ag, b), a),
            (self.edge_id(EdgeClass::Vt0, g, a), b),
            (self.edge_id(EdgeClass::Vt1, gb, a), b),
        ]
    }

    pub fn face_edges(&self, f: usize) -> [usize; 4] {
        self.face_edges_slots(f).map(|(e, _)| e)
    }

    /// Both endpoints of an edge, with the shared Tanner slot index.
    pub fn edge_endpoints(&self, e: usize) -> [usize; 2] {
        let (class, g, s) = self.edge_of(e);
        match class {
            EdgeClass::H0 => [
                self.vertex_id(VertexClass::V00, g),
                self.vertex_id(VertexClass::V01, self.right(g, s)),
            ],
            EdgeClass::H1 => [
                self.vertex_id(VertexClass::V10, g),
                self.vertex_id(VertexClass::V11, self.right(g, s)),
            ],
            EdgeClass::Vt0 => [
                self.vertex_id(VertexClass::V00, g),
                self.vertex_id(VertexClass::V10, self.left(s, g)),
            ],
            EdgeClass::Vt1 => [
                self.vertex_id(VertexClass::V01, g),
                self.vertex_id(VertexClass::V11, self.left(s, g)),
            ],
        }
    }

    /// The Delta^2 faces incident to a vertex (distinct labels).
    pub fn faces_of_vertex(&self, v: usize) -> Vec<usize> {
        let (class, h) = self.vertex_of(v);
        let d = self.delta();
        let mut out = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let g = match class {
                    VertexClass::V00 => h,
                    VertexClass::V10 => self.left_inv(a, h),
                    VertexClass::V01 => self.right_inv(h, b),
                    VertexClass::V11 => self.left_inv(a, self.right_inv(h, b)),
                };
                out.push(self.face_id(g, a, b));
            }
        }
        out
    }

    /// The Delta faces incident to an edge, indexed by the edge's Tanner slot.
    pub fn faces_of_edge(&self, e: usize) -> Vec<usize> {
        let (class, g, s) = self.edge_of(e);
        let d = self.delta();
        match class {
            // Horizontal edge (g, b): faces (g, a, b) indexed by slot a.
            EdgeClass::H0 => (0..d).map(|a| self.face_id(g, a, s)).collect(),
            // (h, b) in E_{1*}: faces (a^-1 h, a, b).
            EdgeClass::H1 => (0..d)
                .map(|a| self.face_id(self.left_inv(a, g), a, s))
                .collect(),
            // Vertical edge (g, a): faces (g, a, b) indexed by slot b.
            EdgeClass::Vt0 => (0..d).map(|b| self.face_id(g, s, b)).collect(),
            // (h, a) in E_{*1}: faces (h b^-1, a, b).
            EdgeClass::Vt1 => (0..d)
                .map(|b| self.face_id(self.right_inv(g, b), s, b))
                .collect(),
        }
    }

    /// The full neighborhood view of a vertex.
    pub fn neighborhood_vertex(&self, v: usize) -> VertexNeighborhood {
        let (class, h) = self.vertex_of(v);
        let d = self.delta();
        let faces = self.faces_of_vertex(v);
        let mut nb = VertexNeighborhood {
            edges_vt0: vec![],
            edges_vt1: vec![],
            edges_h0: vec![],
            edges_h1: vec![],
            faces,
            vertices_v00: vec![],
            vertices_v10: vec![],
            vertices_v01: vec![],
            vertices_v11: vec![],
        };
        // Distance-1 and distance-2 edge sets, by class of the base vertex.
        for a in 0..d {
            for b in 0..d {
                let (g00, g10, g01, g11) = match class {
                    VertexClass::V00 => {
                        let g = h;
                        (g, self.left(a, g), self.right(g, b), self.right(self.left(a, g), b))
                    }
                    VertexClass::V10 => {
                        let g = self.left_inv(a, h);
                        (g, h, self.right(g, b), self.right(h, b))
                    }
                    VertexClass::V01 => {
                        let g = self.right_inv(h, b);
                        (g, self.left(a, g), h, self.left(a, h))
                    }
                    VertexClass::V11 => {
                        let g01 = self.left_inv(a, h);
                        let g = self.right_inv(g01, b);
                        (g, self.right_inv(h, b), g01, h)
                    }
                };
                // The face (g00, a, b) touches all four; record its edges
                // into the per-class sets with multiplicity, but only once
                // per generating index pair that actually defines the set.
                let _ = g11;
                match class {
                    VertexClass::V00 => {
                        if b == 0 {
                            nb.edges_vt0.push(self.edge_id(EdgeClass::Vt0, g00, a));
                            nb.vertices_v10.push(self.vertex_id(VertexClass::V10, g10));
                        }
                        if a == 0 {
                            nb.edges_h0.push(self.edge_id(EdgeClass::H0, g00, b));
                            nb.vertices_v01.push(self.vertex_id(VertexClass::V01, g01));
                        }
                        nb.edges_vt1.push(self.edge_id(EdgeClass::Vt1, g01, a));
                        nb.edges_h1.push(self.edge_id(EdgeClass::H1, g10, b));
                        nb.vertices_v11
                            .push(self.vertex_id(VertexClass::V11, self.right(g10, b)));
                    }
                    VertexClass::V10 => {
                        if b == 0 {
                            nb.edges_vt0.push(self.edge_id(EdgeClass::Vt0, g00, a));
                            nb.vertices_v00.push(self.vertex_id(VertexClass::V00, g00));
                        }
                        if a == 0 {
                            nb.edges_h1.push(self.edge_id(EdgeClass::H1, h, b));
                            nb.vertices_v11
                                .push(self.vertex_id(VertexClass::V11, self.right(h, b)));
                        }
                        nb.edges_vt1.push(self.edge_id(EdgeClass::Vt1, g01, a));
                        nb.edges_h0.push(self.edge_id(EdgeClass::H0, g00, b));
                        nb.vertices_v01.push(self.vertex_id(VertexClass::V01, g01));
                    }
                    VertexClass::V01 => {
                        if b == 0 {
                            nb.edges_vt1.push(self.edge_id(EdgeClass::Vt1, h, a));
                            nb.vertices_v11
                                .push(self.vertex_id(VertexClass::V11, self.left(a, h)));
                        }
                        if a == 0 {
                            nb.edges_h0.push(self.edge_id(EdgeClass::H0, g00, b));
                            nb.vertices_v00.push(self.vertex_id(VertexClass::V00, g00));
                        }
                        nb.edges_vt0.push(self.edge_id(EdgeClass::Vt0, g00, a));
                        nb.edges_h1.push(self.edge_id(EdgeClass::H1, g10, b));
                        nb.vertices_v10.push(self.vertex_id(VertexClass::V10, g10));
                    }
                    VertexClass::V11 => {
                        if b == 0 {
                            nb.edges_vt1.push(self.edge_id(EdgeClass::Vt1, g01, a));
                            nb.vertices_v01.push(self.vertex_id(VertexClass::V01, g01));
                        }
                        if a == 0 {
                            nb.edges_h1.push(self.edge_id(EdgeClass::H1, g10, b));
                            nb.vertices_v10.push(self.vertex_id(VertexClass::V10, g10));
                        }
                        nb.edges_vt0.push(self.edge_id(EdgeClass::Vt0, g00, a));
                        nb.edges_h0.push(self.edge_id(EdgeClass::H0, g00, b));
                        nb.vertices_v00.push(self.vertex_id(VertexClass::V00, g00));
                    }
                }
            }
        }
        nb
    }

    /// The neighborhood view of an edge: the three other edge classes seen
    /// through shared faces, plus the incident faces.
    pub fn neighborhood_edge(&self, e: usize) -> EdgeNeighborhood {
        let (class, _, _) = self.edge_of(e);
        let faces = self.faces_of_edge(e);
        let mut nb = EdgeNeighborhood {
            edges_vt0: vec![],
            edges_vt1: vec![],
            edges_h0: vec![],
            edges_h1: vec![],
            faces: faces.clone(),
        };
        for &f in &faces {
            let [(h0, _), (h1, _), (vt0, _), (vt1, _)] = self.face_edges_slots(f);
            match class {
                EdgeClass::H0 => {
                    nb.edges_h1.push(h1);
                    nb.edges_vt0.push(vt0);
                    nb.edges_vt1.push(vt1);
                }
                EdgeClass::H1 => {
                    nb.edges_h0.push(h0);
                    nb.edges_vt0.push(vt0);
                    nb.edges_vt1.push(vt1);
                }
                EdgeClass::Vt0 => {
                    nb.edges_vt1.push(vt1);
                    nb.edges_h0.push(h0);
                    nb.edges_h1.push(h1);
                }
                EdgeClass::Vt1 => {
                    nb.edges_vt0.push(vt0);
                    nb.edges_h0.push(h0);
                    nb.edges_h1.push(h1);
                }
            }
        }
        nb
    }

    /// The edge of the same orientation opposite to `e` across face `f`.
    pub fn opposite_edge(&self, e: usize, f: usize) -> usize {
        let [(h0, _), (h1, _), (vt0, _), (vt1, _)] = self.face_edges_slots(f);
        match self.edge_of(e).0 {
            EdgeClass::H0 => h1,
            EdgeClass::H1 => h0,
            EdgeClass::Vt0 => vt1,
            EdgeClass::Vt1 => vt0,
        }
    }

    /// Vertices sharing at least one face with `v`, including `v`, deduped.
    pub fn face_sharing_vertices(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .faces_of_vertex(v)
            .into_iter()
            .flat_map(|f| self.face_vertices(f))
            .collect();
        out.push(v);
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Extract one of the four bipartite Tanner subgraphs.
    pub fn subgraph(&self, kind: SubgraphKind) -> TannerGraph {
        let n = self.group_order();
        let d = self.delta();
        let per = self.edges_per_class();
        match kind {
            SubgraphKind::EdgeFaceVertical | SubgraphKind::EdgeFaceHorizontal => {
                // Graph vertices: the 2 n Delta edges of the matching
                // orientation (local ids: class 0 then class 1); graph
                // edges: the faces, by face id.
                let (c0, c1) = if kind == SubgraphKind::EdgeFaceVertical {
                    (EdgeClass::Vt0, EdgeClass::Vt1)
                } else {
                    (EdgeClass::H0, EdgeClass::H1)
                };
                let mut vertex_slots = vec![vec![u32::MAX; d]; 2 * per];
                let mut edge_endpoints = vec![[(u32::MAX, 0u16); 2]; self.face_count()];
                for f in 0..self.face_count() {
                    let [(h0, a_slot_h0), (h1, a_slot_h1), (vt0, b_slot_vt0), (vt1, b_slot_vt1)] =
                        self.face_edges_slots(f);
                    let ((e0, s0), (e1, s1)) = if kind == SubgraphKind::EdgeFaceVertical {
                        ((vt0, b_slot_vt0), (vt1, b_slot_vt1))
                    } else {
                        ((h0, a_slot_h0), (h1, a_slot_h1))
                    };
                    let l0 = e0 - self.edge_id(c0, 0, 0);
                    let l1 = per + (e1 - self.edge_id(c1, 0, 0));
                    vertex_slots[l0][s0] = f as u32;
                    vertex_slots[l1][s1] = f as u32;
                    edge_endpoints[f] = [(l0 as u32, s0 as u16), (l1 as u32, s1 as u16)];
                }
                TannerGraph {
                    kind,
                    delta: d,
                    vertex_slots,
                    edge_endpoints,
                }
            }
            SubgraphKind::VertexEdgeVertical | SubgraphKind::VertexEdgeHorizontal => {
                // Graph vertices: all 4|G| complex vertices by id; graph
                // edges: the 2 n Delta edges of the orientation, local ids.
                let (c0, c1) = if kind == SubgraphKind::VertexEdgeVertical {
                    (EdgeClass::Vt0, EdgeClass::Vt1)
                } else {
                    (EdgeClass::H0, EdgeClass::H1)
                };
                let mut vertex_slots = vec![vec![u32::MAX; d]; 4 * n];
                let mut edge_endpoints = vec![[(u32::MAX, 0u16); 2]; 2 * per];
                for (offset, class) in [(0usize, c0), (per, c1)] {
                    for g in 0..n {
                        for s in 0..d {
                            let e = self.edge_id(class, g, s);
                            let local = offset + (e - self.edge_id(class, 0, 0));
                            let [u, w] = self.edge_endpoints(e);
                            vertex_slots[u][s] = local as u32;
                            vertex_slots[w][s] = local as u32;
                            edge_endpoints[local] = [(u as u32, s as u16), (w as u32, s as u16)];
                        }
                    }
                }
                TannerGraph {
                    kind,
                    delta: d,
                    vertex_slots,
                    edge_endpoints,
                }
            }
        }
    }

    /// Label coincidences (relevant when |G| is small or A, B overlap).
    pub fn collision_stats(&self) -> CollisionStats {
        use std::collections::HashMap;
        let mut stats = CollisionStats::default();
        let mut pairs: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for e in 0..self.edge_count() {
            let (class, _, _) = self.edge_of(e);
            let [mut u, mut w] = self.edge_endpoints(e);
            if u > w {
                std::mem::swap(&mut u, &mut w);
            }
            *pairs.entry((class as usize, u, w)).or_default() += 1;
        }
        stats.parallel_edges = pairs.values().filter(|&&c| c > 1).map(|&c| c).sum::<usize>()
            - pairs.values().filter(|&&c| c > 1).count();
        let mut quads: HashMap<[usize; 4], usize> = HashMap::new();
        for f in 0..self.face_count() {
            *quads.entry(self.face_vertices(f)).or_default() += 1;
        }
        stats.parallel_faces = quads.values().filter(|&&c| c > 1).map(|&c| c).sum::<usize>()
            - quads.values().filter(|&&c| c > 1).count();
        stats
    }

    /// Quadratic-form checks of the two walk bounds on random edge subsets:
    /// 1_S M1 1_S <= lambda |S| + Delta |S|^2 / (2|G|) and
    /// 1_S M0 1_S <= 8 lambda Delta |S| + 2 Delta |S|^2 / |G|.
    pub fn m0_m1_check(
        &self,
        lambda_upper: f64,
        trials: usize,
        rng: &mut impl Rng,
    ) -> M0M1Report {
        let ne = self.edge_count();
        let nv = self.vertex_count();
        let n = self.group_order() as f64;
        let d = self.delta() as f64;

        // M1 edge list: opposing edges of the same face (two pairs per face).
        let mut m1_pairs = Vec::with_capacity(2 * self.face_count());
        for f in 0..self.face_count() {
            let [(h0, _), (h1, _), (vt0, _), (vt1, _)] = self.face_edges_slots(f);
            m1_pairs.push((vt0, vt1));
            m1_pairs.push((h0, h1));
        }
        // M0' edge list: the 1-skeleton of the complex.
        let m0_pairs: Vec<[usize; 2]> = (0..ne).map(|e| self.edge_endpoints(e)).collect();

        let mut report = M0M1Report {
            trials,
            violations_m1: 0,
            violations_m0: 0,
            min_slack_m1: f64::INFINITY,
            min_slack_m0: f64::INFINITY,
        };
        for _ in 0..trials {
            let s: Vec<bool> = (0..ne).map(|_| rng.random()).collect();
            let size = s.iter().filter(|&&x| x).count() as f64;

            let mut q1 = 0i64;
            for &(u, v) in &m1_pairs {
                if s[u] && s[v] {
                    q1 += 2;
                }
            }
            let bound1 = lambda_upper * size + d * size * size / (2.0 * n);
            let slack1 = bound1 - q1 as f64;
            if slack1 < -1e-9 {
                report.violations_m1 += 1;
            }
            report.min_slack_m1 = report.min_slack_m1.min(slack1);

            // M0 = U M0' D: push edge indicators to vertices, one M0' step,
            // pull back to edges, then dot with 1_S.
            let mut x = vec![0i64; nv];
            for (e, &in_s) in s.iter().enumerate() {
                if in_s {
                    for v in self.edge_endpoints(e) {
                        x[v] += 1;
                    }
                }
            }
            let mut y = vec![0i64; nv];
            for &[u, v] in &m0_pairs {
                y[u] += x[v];
                y[v] += x[u];
            }
            let mut q0 = 0i64;
            for (e, &in_s) in s.iter().enumerate() {
                if in_s {
                    for v in self.edge_endpoints(e) {
                        q0 += y[v];
                    }
                }
            }
            let bound0 = 8.0 * lambda_upper * d * size + 2.0 * d * size * size / n;
            let slack0 = bound0 - q0 as f64;
            if slack0 < -1e-9 {
                report.violations_m0 += 1;
            }
            report.min_slack_m0 = report.min_slack_m0.min(slack0);
        }
        report
    }
}

#[derive(Clone, Debug)]
pub struct M0M1Report {
    pub trials: usize,
    pub violations_m1: usize,
    pub violations_m0: usize,
    pub min_slack_m1: f64,
    pub min_slack_m0: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_cyclic;
    use crate::spectral::{spectral_report, CayleyGraph};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z5_complex() -> LeftRightComplex {
        let (g, a) = build_cyclic(5, &[1, -1], Side::Left).unwrap();
        let (_, b) = build_cyclic(5, &[1, -1], Side::Right).unwrap();
        LeftRightComplex::new(g, a, b).unwrap()
    }

    #[test]
    fn counting_identities() {
        let x = z5_complex();
        assert_eq!(x.vertex_count(), 20);
        assert_eq!(x.edges_per_class(), 10);
        assert_eq!(x.face_count(), 20);

        let (g, a) = build_cyclic(6, &[1, -1], Side::Left).unwrap();
        let (_, b) = build_cyclic(6, &[3], Side::Right).unwrap();
        // |A| != |B| is rejected.
        assert!(LeftRightComplex::new(g, a, b).is_err());
    }

    #[test]
    fn face_incidence_matches_labels() {
        let x = z5_complex();
        // Face (g, a, b) = (2, slot 0 -> a=1, slot 1 -> b=4):
        let f = x.face_id(2, 0, 1);
        let vs = x.face_vertices(f);
        assert_eq!(vs[0], x.vertex_id(VertexClass::V00, 2));
        assert_eq!(vs[1], x.vertex_id(VertexClass::V10, 3)); // 1 + 2
        assert_eq!(vs[2], x.vertex_id(VertexClass::V01, 1)); // 2 + 4
        assert_eq!(vs[3], x.vertex_id(VertexClass::V11, 2)); // 3 + 4
        let es = x.face_edges(f);
        assert_eq!(es[0], x.edge_id(EdgeClass::H0, 2, 1));
        assert_eq!(es[1], x.edge_id(EdgeClass::H1, 3, 1));
        assert_eq!(es[2], x.edge_id(EdgeClass::Vt0, 2, 0));
        assert_eq!(es[3], x.edge_id(EdgeClass::Vt1, 1, 0));
    }

    #[test]
    fn face_edge_incidence_is_consistent() {
        let x = z5_complex();
        for f in 0..x.face_count() {
            for e in x.face_edges(f) {
                assert!(x.faces_of_edge(e).contains(&f));
            }
            for v in x.face_vertices(f) {
                assert!(x.faces_of_vertex(v).contains(&f));
            }
        }
        let total: usize = (0..x.vertex_count())
            .map(|v| x.faces_of_vertex(v).len())
            .sum();
        assert_eq!(total, 4 * x.face_count());
        let total: usize = (0..x.edge_count()).map(|e| x.faces_of_edge(e).len()).sum();
        assert_eq!(total, 4 * x.face_count());
    }

    #[test]
    fn neighborhood_sizes() {
        let x = z5_complex();
        let d = x.delta();
        for v in 0..x.vertex_count() {
            let nb = x.neighborhood_vertex(v);
            assert_eq!(nb.edges_vt0.len() + nb.edges_vt1.len(), d + d * d);
            assert_eq!(nb.edges_h0.len() + nb.edges_h1.len(), d + d * d);
            assert_eq!(nb.faces.len(), d * d);
        }
        for e in 0..x.edge_count() {
            let nb = x.neighborhood_edge(e);
            assert_eq!(nb.faces.len(), d);
            assert_eq!(
                nb.edges_vt0.len()
                    + nb.edges_vt1.len()
                    + nb.edges_h0.len()
                    + nb.edges_h1.len(),
                3 * d
            );
        }
    }

    #[test]
    fn vertex_neighborhood_matches_paper_lists_for_v00() {
        let x = z5_complex();
        let v = x.vertex_id(VertexClass::V00, 0);
        let nb = x.neighborhood_vertex(v);
        // E_{*0}(v00) = {(g, ag)}: Delta edges.
        let mut expect: Vec<usize> = (0..2).map(|a| x.edge_id(EdgeClass::Vt0, 0, a)).collect();
        let mut got = nb.edges_vt0.clone();
        got.sort_unstable();
        expect.sort_unstable();
        assert_eq!(got, expect);
        // E_{*1}(v00) = {(gb, agb)}: Delta^2 with multiplicity.
        assert_eq!(nb.edges_vt1.len(), 4);
        // V11(v00) = {agb}.
        assert_eq!(nb.vertices_v11.len(), 4);
    }

    #[test]
    fn opposite_edge_is_involution() {
        let x = z5_complex();
        for f in 0..x.face_count() {
            for e in x.face_edges(f) {
                let opp = x.opposite_edge(e, f);
                assert_eq!(x.opposite_edge(opp, f), e);
                assert_ne!(opp, e);
            }
        }
    }

    #[test]
    fn subgraph_identifications_round_trip() {
        let x = z5_complex();
        for kind in [
            SubgraphKind::EdgeFaceVertical,
            SubgraphKind::EdgeFaceHorizontal,
            SubgraphKind::VertexEdgeVertical,
            SubgraphKind::VertexEdgeHorizontal,
        ] {
            let g = x.subgraph(kind);
            assert!(g.identification_consistent(), "{kind:?}");
            match kind {
                SubgraphKind::EdgeFaceVertical | SubgraphKind::EdgeFaceHorizontal => {
                    assert_eq!(g.vertex_count(), 2 * x.edges_per_class());
                    assert_eq!(g.edge_count(), x.face_count());
                }
                _ => {
                    assert_eq!(g.vertex_count(), x.vertex_count());
                    assert_eq!(g.edge_count(), 2 * x.edges_per_class());
                }
            }
        }
    }

    #[test]
    fn vertex_edge_vertical_restricts_to_double_cover() {
        // G(V, E^|) restricted to (V00, V10) must be the double cover of
        // Cay(G, A): same bipartite edge multiset.
        let (g, a) = build_cyclic(5, &[1, -1], Side::Left).unwrap();
        let (g2, b) = build_cyclic(5, &[1, -1], Side::Right).unwrap();
        let x = LeftRightComplex::new(g2, a.clone(), b).unwrap();
        let sub = x.subgraph(SubgraphKind::VertexEdgeVertical);
        let n = x.group_order();
        let mut restricted: Vec<(usize, usize)> = sub
            .edge_endpoints
            .iter()
            .take(x.edges_per_class()) // Vt0 block
            .map(|&[(u, _), (w, _)]| (u as usize, w as usize % n))
            .collect();
        restricted.sort_unstable();
        let dc = crate::spectral::double_cover(&g, &a);
        let mut expect: Vec<(usize, usize)> = dc
            .edges()
            .iter()
            .map(|&(u, w)| (u as usize, w as usize - n))
            .collect();
        expect.sort_unstable();
        assert_eq!(restricted, expect);
    }

    #[test]
    fn m0_m1_bounds_hold_on_random_subsets() {
        let (g, a) = build_cyclic(5, &[1, -1], Side::Left).unwrap();
        let (_, b) = build_cyclic(5, &[1, -1], Side::Right).unwrap();
        let x = LeftRightComplex::new(g.clone(), a.clone(), b).unwrap();
        let rep_a = spectral_report(&CayleyGraph::new(&g, &a).graph).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let report = x.m0_m1_check(rep_a.lambda_upper, 100, &mut rng);
        assert_eq!(report.violations_m1, 0);
        assert_eq!(report.violations_m0, 0);
    }

    #[test]
    fn collision_stats_on_degenerate_instance() {
        // Z_2 with the involution 1 in both generator slots: label
        // coincidences everywhere, kept as multi-edges and multi-faces.
        let (g, a) = build_cyclic(2, &[1, 1], Side::Left).unwrap();
        let (_, b) = build_cyclic(2, &[1, 1], Side::Right).unwrap();
        let x = LeftRightComplex::new(g, a, b).unwrap();
        let stats = x.collision_stats();
        assert_eq!(x.face_count(), 8);
        // Per group element, the four (a, b) slot pairs give the same
        // vertex 4-tuple: 2 groups of 4 labels.
        assert_eq!(stats.parallel_faces, 6);
        // Each endpoint pair appears twice per class.
        assert_eq!(stats.parallel_edges, 8);

        let clean = z5_complex().collision_stats();
        assert_eq!(clean.parallel_edges, 0);
        assert_eq!(clean.parallel_faces, 0);
    }
}
