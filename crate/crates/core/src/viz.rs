//! Stereographic projection and mesh/CSV emission.
//!
//! Samples live on the unit 3-sphere; projecting from a coordinate pole
//! maps them into R^3 without creating artificial self-intersections.
//! Grid-structured sample sets become quad meshes (OBJ), circle charts
//! become closed polylines, and point charts plain vertices.

use crate::param::SampleSet;
use crate::predicate::Spinor;
use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum VizError {
    /// Sample within 1e-9 of the projection pole.
    AtPole,
    /// Every sample was dropped; nothing to emit.
    EmptyMesh,
}

impl fmt::Display for VizError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VizError::AtPole => write!(f, "sample coincides with the projection pole"),
            VizError::EmptyMesh => write!(f, "no samples survive projection"),
        }
    }
}

impl std::error::Error for VizError {}

/// Coordinate axis of the pole, in the spinor basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleAxis {
    E12,
    E23,
    E31,
    E0,
}

impl PoleAxis {
    fn index(self) -> usize {
        match self {
            PoleAxis::E12 => 0,
            PoleAxis::E23 => 1,
            PoleAxis::E31 => 2,
            PoleAxis::E0 => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            PoleAxis::E12 => "e12",
            PoleAxis::E23 => "e23",
            PoleAxis::E31 => "e31",
            PoleAxis::E0 => "e0",
        }
    }
}

/// Projection pole (a signed coordinate axis) and output scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionSpec {
    pub axis: PoleAxis,
    pub positive: bool,
    pub scale: f64,
}

impl Default for ProjectionSpec {
    /// Pole -e0: the identity rotation projects to the origin.
    fn default() -> Self {
        ProjectionSpec {
            axis: PoleAxis::E0,
            positive: false,
            scale: 1.0,
        }
    }
}

impl ProjectionSpec {
    /// Parse `{+|-}{e12|e23|e31|e0}`, e.g. `-e0` or `+e23`.
    pub fn parse_pole(s: &str) -> Option<(PoleAxis, bool)> {
        let (positive, rest) = match s.as_bytes().first()? {
            b'+' => (true, &s[1..]),
            b'-' => (false, &s[1..]),
            _ => return None,
        };
        let axis = match rest {
            "e12" => PoleAxis::E12,
            "e23" => PoleAxis::E23,
            "e31" => PoleAxis::E31,
            "e0" => PoleAxis::E0,
            _ => return None,
        };
        Some((axis, positive))
    }

    pub fn pole_name(&self) -> String {
        format!("{}{}", if self.positive { '+' } else { '-' }, self.axis.name())
    }
}

/// Project a unit spinor from the pole onto R^3: the three non-pole
/// coordinates divided by (1 -+ s_pole), times the scale.
pub fn stereographic_project(s: &Spinor, spec: &ProjectionSpec) -> Result<[f64; 3], VizError> {
    let coords = s.to_array();
    let k = spec.axis.index();
    let pole_sign = if spec.positive { 1.0 } else { -1.0 };
    // Euclidean distance to the pole point
    let mut dist2 = 0.0;
    for (i, &c) in coords.iter().enumerate() {
        let p = if i == k { pole_sign } else { 0.0 };
        dist2 += (c - p) * (c - p);
    }
    if dist2.sqrt() < 1e-9 {
        return Err(VizError::AtPole);
    }
    let denom = 1.0 - pole_sign * coords[k];
    let mut out = [0.0; 3];
    let mut j = 0;
    for (i, &c) in coords.iter().enumerate() {
        if i != k {
            out[j] = spec.scale * c / denom;
            j += 1;
        }
    }
    Ok(out)
}

/// Inverse of [`stereographic_project`]; recovers the unit spinor.
pub fn inverse_stereographic(p: [f64; 3], spec: &ProjectionSpec) -> Spinor {
    let k = spec.axis.index();
    let pole_sign = if spec.positive { 1.0 } else { -1.0 };
    let u = [p[0] / spec.scale, p[1] / spec.scale, p[2] / spec.scale];
    let n2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    let pole_coord = pole_sign * (n2 - 1.0) / (n2 + 1.0);
    let mut coords = [0.0; 4];
    let mut j = 0;
    for (i, c) in coords.iter_mut().enumerate() {
        if i == k {
            *c = pole_coord;
        } else {
            *c = 2.0 * u[j] / (n2 + 1.0);
            j += 1;
        }
    }
    Spinor::from_array(coords)
}

/// Projected mesh: global vertex list plus per-branch quads and polylines.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MeshBuffer {
    pub vertices: Vec<[f64; 3]>,
    /// Branch tag per vertex, indexing `branch_names`.
    pub vertex_branch: Vec<u32>,
    pub branch_names: Vec<String>,
    pub quads: Vec<[u32; 4]>,
    pub quad_branch: Vec<u32>,
    pub lines: Vec<[u32; 2]>,
    pub line_branch: Vec<u32>,
}

impl MeshBuffer {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Append another mesh, remapping its indices and branch tags.
    pub fn append(&mut self, other: MeshBuffer) {
        let v_off = self.vertices.len() as u32;
        let b_off = self.branch_names.len() as u32;
        self.vertices.extend(other.vertices);
        self.vertex_branch
            .extend(other.vertex_branch.iter().map(|b| b + b_off));
        self.branch_names.extend(other.branch_names);
        self.quads
            .extend(other.quads.iter().map(|q| q.map(|i| i + v_off)));
        self.quad_branch
            .extend(other.quad_branch.iter().map(|b| b + b_off));
        self.lines
            .extend(other.lines.iter().map(|l| l.map(|i| i + v_off)));
        self.line_branch
            .extend(other.line_branch.iter().map(|b| b + b_off));
    }
}

/// Project a sample set and build grid connectivity.
///
/// One vertex per grid slot; quads close over the periodic alpha seam;
/// any quad touching a pole-dropped vertex is dropped. Circle charts emit
/// closed polylines instead of faces.
pub fn emit_mesh(set: &SampleSet, spec: &ProjectionSpec) -> Result<MeshBuffer, VizError> {
    let mut mesh = MeshBuffer {
        branch_names: set.branch_names.clone(),
        ..Default::default()
    };
    for grid in &set.grids {
        let (nu, nv) = (grid.nu, grid.nv);
        // vertex per slot, None when the sample sits at the pole
        let mut slot_vertex: Vec<Option<u32>> = Vec::with_capacity(grid.slots.len());
        for &sample_idx in &grid.slots {
            let s = &set.samples[sample_idx];
            match stereographic_project(&s.spinor, spec) {
                Ok(p) => {
                    let idx = mesh.vertices.len() as u32;
                    mesh.vertices.push(p);
                    mesh.vertex_branch.push(grid.branch as u32);
                    slot_vertex.push(Some(idx));
                }
                Err(VizError::AtPole) => slot_vertex.push(None),
                Err(e) => return Err(e),
            }
        }
        let at = |iu: usize, iv: usize| slot_vertex[iv * nu + iu];
        if nv == 1 {
            if nu >= 2 {
                let segments = if grid.periodic_u { nu } else { nu - 1 };
                for iu in 0..segments {
                    let iu2 = (iu + 1) % nu;
                    if let (Some(a), Some(b)) = (at(iu, 0), at(iu2, 0)) {
                        mesh.lines.push([a, b]);
                        mesh.line_branch.push(grid.branch as u32);
                    }
                }
            }
            continue;
        }
        let u_quads = if grid.periodic_u { nu } else { nu - 1 };
        let v_quads = if grid.periodic_v { nv } else { nv - 1 };
        for iv in 0..v_quads {
            let iv2 = (iv + 1) % nv;
            for iu in 0..u_quads {
                let iu2 = (iu + 1) % nu;
                if let (Some(a), Some(b), Some(c), Some(d)) =
                    (at(iu, iv), at(iu2, iv), at(iu2, iv2), at(iu, iv2))
                {
                    mesh.quads.push([a, b, c, d]);
                    mesh.quad_branch.push(grid.branch as u32);
                }
            }
        }
    }
    if mesh.is_empty() {
        return Err(VizError::EmptyMesh);
    }
    Ok(mesh)
}

/// Merge vertices of different branches lying within `epsilon` of each
/// other (projected distance). Face and line indices are remapped; the
/// vertex count never increases.
pub fn weld_domain_holes(mesh: &MeshBuffer, epsilon: f64) -> MeshBuffer {
    assert!(epsilon > 0.0, "weld epsilon must be positive");
    let n = mesh.vertices.len();
    // union-find, lowest index wins as representative
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], i: u32) -> u32 {
        let mut i = i;
        while parent[i as usize] != i {
            parent[i as usize] = parent[parent[i as usize] as usize];
            i = parent[i as usize];
        }
        i
    }
    let union = |parent: &mut Vec<u32>, a: u32, b: u32| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi as usize] = lo;
        }
    };

    // hash grid on cells of size epsilon; saturating casts keep huge
    // coordinate/epsilon ratios safe (they only make cells coarser)
    let cell = |x: f64| -> i64 { (x / epsilon).floor() as i64 };
    let mut buckets: HashMap<[i64; 3], Vec<u32>> = HashMap::new();
    for (i, v) in mesh.vertices.iter().enumerate() {
        buckets
            .entry([cell(v[0]), cell(v[1]), cell(v[2])])
            .or_default()
            .push(i as u32);
    }
    let eps2 = epsilon * epsilon;
    for (i, v) in mesh.vertices.iter().enumerate() {
        let base = [cell(v[0]), cell(v[1]), cell(v[2])];
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let key = [
                        base[0].saturating_add(dx),
                        base[1].saturating_add(dy),
                        base[2].saturating_add(dz),
                    ];
                    let Some(cands) = buckets.get(&key) else {
                        continue;
                    };
                    for &j in cands {
                        if (j as usize) <= i {
                            continue;
                        }
                        if mesh.vertex_branch[i] == mesh.vertex_branch[j as usize] {
                            continue;
                        }
                        let w = &mesh.vertices[j as usize];
                        let d2 = (v[0] - w[0]).powi(2)
                            + (v[1] - w[1]).powi(2)
                            + (v[2] - w[2]).powi(2);
                        if d2 <= eps2 {
                            union(&mut parent, i as u32, j);
                        }
                    }
                }
            }
        }
    }

    // compact representatives, preserving original order
    let mut remap: Vec<u32> = vec![u32::MAX; n];
    let mut out = MeshBuffer {
        branch_names: mesh.branch_names.clone(),
        ..Default::default()
    };
    for i in 0..n as u32 {
        let rep = find(&mut parent, i);
        if rep == i {
            remap[i as usize] = out.vertices.len() as u32;
            out.vertices.push(mesh.vertices[i as usize]);
            out.vertex_branch.push(mesh.vertex_branch[i as usize]);
        }
    }
    for i in 0..n as u32 {
        let rep = find(&mut parent, i);
        if rep != i {
            remap[i as usize] = remap[rep as usize];
        }
    }
    out.quads = mesh
        .quads
        .iter()
        .map(|q| q.map(|i| remap[i as usize]))
        .collect();
    out.quad_branch = mesh.quad_branch.clone();
    out.lines = mesh
        .lines
        .iter()
        .map(|l| l.map(|i| remap[i as usize]))
        .collect();
    out.line_branch = mesh.line_branch.clone();
    out
}

/// Serialize to Wavefront OBJ: all vertices first, then faces and lines
/// grouped per chart branch (`g chart-<branch>`), 1-based indices.
pub fn mesh_to_obj(mesh: &MeshBuffer) -> String {
    let mut out = String::new();
    for v in &mesh.vertices {
        let _ = writeln!(out, "v {:.17} {:.17} {:.17}", v[0], v[1], v[2]);
    }
    for (b, name) in mesh.branch_names.iter().enumerate() {
        let b = b as u32;
        let quads: Vec<&[u32; 4]> = mesh
            .quads
            .iter()
            .zip(&mesh.quad_branch)
            .filter(|(_, &qb)| qb == b)
            .map(|(q, _)| q)
            .collect();
        let lines: Vec<&[u32; 2]> = mesh
            .lines
            .iter()
            .zip(&mesh.line_branch)
            .filter(|(_, &lb)| lb == b)
            .map(|(l, _)| l)
            .collect();
        let has_vertices = mesh.vertex_branch.iter().any(|&vb| vb == b);
        if quads.is_empty() && lines.is_empty() && !has_vertices {
            continue;
        }
        let _ = writeln!(out, "g chart-{name}");
        for q in quads {
            let _ = writeln!(out, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1);
        }
        for l in lines {
            let _ = writeln!(out, "l {} {}", l[0] + 1, l[1] + 1);
        }
    }
    out
}

/// CSV export of the deduplicated samples:
/// `s12,s23,s31,s0,chart,alpha,beta_or_h` with 17 significant digits.
/// `chart_prefix` is prepended to each branch name (used to tag the
/// predicate index in multi-predicate scenes).
pub fn samples_to_csv(set: &SampleSet, chart_prefix: &str) -> String {
    let mut out = String::from("s12,s23,s31,s0,chart,alpha,beta_or_h\n");
    for s in &set.samples {
        let sp = s.spinor;
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{}{},{:.16e},{:.16e}",
            sp.s12,
            sp.s23,
            sp.s31,
            sp.s0,
            chart_prefix,
            set.branch_names[s.branch],
            s.alpha,
            s.second
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::{classify_spectrum, sample_chart};
    use crate::predicate::ReducedPredicate;
    use crate::rational::{rat, RVec3};
    use crate::spectrum::{eigenvalues, orthonormal_frame};

    #[test]
    fn project_basics() {
        let spec = ProjectionSpec::default(); // pole -e0
        assert_eq!(
            stereographic_project(&Spinor::IDENTITY, &spec).unwrap(),
            [0.0, 0.0, 0.0]
        );
        assert_eq!(
            stereographic_project(&Spinor::new(1.0, 0.0, 0.0, 0.0), &spec).unwrap(),
            [1.0, 0.0, 0.0]
        );
        assert_eq!(
            stereographic_project(&Spinor::new(0.0, 0.0, 0.0, -1.0), &spec).unwrap_err(),
            VizError::AtPole
        );
    }

    #[test]
    fn project_other_poles() {
        let spec = ProjectionSpec {
            axis: PoleAxis::E12,
            positive: true,
            scale: 2.0,
        };
        // equator point fixed up to scale; coordinate order (s23, s31, s0)
        let s = Spinor::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(stereographic_project(&s, &spec).unwrap(), [2.0, 0.0, 0.0]);
        let s = Spinor::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(
            stereographic_project(&s, &spec).unwrap_err(),
            VizError::AtPole
        );
    }

    #[test]
    fn projection_roundtrip() {
        let specs = [
            ProjectionSpec::default(),
            ProjectionSpec {
                axis: PoleAxis::E23,
                positive: true,
                scale: 1.5,
            },
        ];
        let s = Spinor::new(0.5, -0.5, 0.5, 0.5);
        for spec in specs {
            let p = stereographic_project(&s, &spec).unwrap();
            let back = inverse_stereographic(p, &spec);
            for (a, b) in s.to_array().iter().zip(back.to_array()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn parse_pole_strings() {
        assert_eq!(
            ProjectionSpec::parse_pole("-e0"),
            Some((PoleAxis::E0, false))
        );
        assert_eq!(
            ProjectionSpec::parse_pole("+e31"),
            Some((PoleAxis::E31, true))
        );
        assert_eq!(ProjectionSpec::parse_pole("e0"), None);
        assert_eq!(ProjectionSpec::parse_pole("-e5"), None);
    }

    fn torus_set(n: usize) -> (ReducedPredicate, SampleSet) {
        let r = ReducedPredicate::new(
            RVec3::from_ints(1, 0, 0),
            RVec3::from_ints(2, 0, 0),
            RVec3::zero(),
            RVec3::zero(),
            rat(0),
        )
        .unwrap();
        let spec = eigenvalues(&r);
        let case = classify_spectrum(&spec).unwrap();
        let frame = orthonormal_frame(&r).unwrap();
        let set = sample_chart(&spec, &case, &frame, n).unwrap();
        (r, set)
    }

    fn barrel_set(n: usize) -> SampleSet {
        // a = 1, b = 2, c = 0: y-barrel
        let r = ReducedPredicate::new(
            RVec3::from_ints(1, 0, 0),
            RVec3::from_ints(1, 0, 0),
            RVec3::from_ints(0, 1, 0),
            RVec3::from_ints(0, 0, 2),
            rat(0),
        )
        .unwrap();
        let spec = eigenvalues(&r);
        let case = classify_spectrum(&spec).unwrap();
        assert_eq!(case.name(), "y-barrel");
        let frame = orthonormal_frame(&r).unwrap();
        sample_chart(&spec, &case, &frame, n).unwrap()
    }

    #[test]
    fn torus_mesh_counts() {
        let (_, set) = torus_set(16);
        let mesh = emit_mesh(&set, &ProjectionSpec::default()).unwrap();
        assert_eq!(mesh.vertices.len(), 256);
        assert_eq!(mesh.quads.len(), 256);
        assert!(mesh.lines.is_empty());
    }

    #[test]
    fn ellipsoid_mesh_counts() {
        // a = 2, b = 1, c = -2: separate ellipsoids at N = 8
        let r = ReducedPredicate::new(
            RVec3::from_ints(1, 0, 0),
            RVec3::from_ints(2, 0, 0),
            RVec3::from_ints(0, 1, 0),
            RVec3::from_ints(0, 0, 1),
            rat(-2),
        )
        .unwrap();
        let spec = eigenvalues(&r);
        let case = classify_spectrum(&spec).unwrap();
        assert_eq!(case.name(), "pair-of-separate-ellipsoids");
        let frame = orthonormal_frame(&r).unwrap();
        let set = sample_chart(&spec, &case, &frame, 8).unwrap();
        // the default -e0 pole coincides with one degenerate beta row of
        // this surface; project from +e12, which no sample touches
        let proj = ProjectionSpec {
            axis: PoleAxis::E12,
            positive: true,
            scale: 1.0,
        };
        let mesh = emit_mesh(&set, &proj).unwrap();
        // 2 branches x 8x8 slots; quads 8 (periodic alpha) x 7 per branch
        assert_eq!(mesh.vertices.len(), 2 * 64);
        assert_eq!(mesh.quads.len(), 2 * 8 * 7);
    }

    #[test]
    fn pole_hit_drops_vertices_and_quads() {
        // same surface from the default pole: the sigma = -1 branch's
        // beta = 0 row sits exactly on -e0 and must be dropped, along
        // with every quad touching it
        let r = ReducedPredicate::new(
            RVec3::from_ints(1, 0, 0),
            RVec3::from_ints(2, 0, 0),
            RVec3::from_ints(0, 1, 0),
            RVec3::from_ints(0, 0, 1),
            rat(-2),
        )
        .unwrap();
        let spec = eigenvalues(&r);
        let case = classify_spectrum(&spec).unwrap();
        let frame = orthonormal_frame(&r).unwrap();
        let set = sample_chart(&spec, &case, &frame, 8).unwrap();
        let mesh = emit_mesh(&set, &ProjectionSpec::default()).unwrap();
        assert_eq!(mesh.vertices.len(), 2 * 64 - 8);
        assert_eq!(mesh.quads.len(), 2 * 8 * 7 - 8);
        for q in &mesh.quads {
            for &i in q {
                assert!((i as usize) < mesh.vertices.len());
            }
        }
    }

    #[test]
    fn empty_mesh_error() {
        // empty case: no samples at all
        let r = ReducedPredicate::new(
            RVec3::from_ints(1, 0, 0),
            RVec3::from_ints(1, 0, 0),
            RVec3::from_ints(0, 1, 0),
            RVec3::from_ints(0, 0, 1),
            rat(-9),
        )
        .unwrap();
        let spec = eigenvalues(&r);
        let case = classify_spectrum(&spec).unwrap();
        assert!(case.is_empty());
        let frame = orthonormal_frame(&r).unwrap();
        let set = sample_chart(&spec, &case, &frame, 8).unwrap();
        assert_eq!(
            emit_mesh(&set, &ProjectionSpec::default()).unwrap_err(),
            VizError::EmptyMesh
        );
    }

    #[test]
    fn incidence_preserved() {
        // identical samples project to identical points
        let (_, set) = torus_set(8);
        let spec = ProjectionSpec::default();
        for s in &set.samples {
            let p1 = stereographic_project(&s.spinor, &spec).unwrap();
            let p2 = stereographic_project(&s.spinor, &spec).unwrap();
            assert_eq!(p1, p2);
        }
    }

    #[test]
    fn weld_merges_barrel_seams() {
        let n = 16;
        let set = barrel_set(n);
        let mesh = emit_mesh(&set, &ProjectionSpec::default()).unwrap();
        assert_eq!(mesh.vertices.len(), 2 * n * n);
        let welded = weld_domain_holes(&mesh, 1e-6);
        // the h = -1 and h = +1 rows coincide across the two w branches:
        // 2 rows x n columns merge pairwise
        assert_eq!(welded.vertices.len(), 2 * n * n - 2 * n);
        // all indices stay in range
        for q in &welded.quads {
            for &i in q {
                assert!((i as usize) < welded.vertices.len());
            }
        }
    }

    #[test]
    fn weld_no_coincident_unchanged() {
        let (_, set) = torus_set(8);
        let mesh = emit_mesh(&set, &ProjectionSpec::default()).unwrap();
        let welded = weld_domain_holes(&mesh, 1e-9);
        assert_eq!(welded.vertices.len(), mesh.vertices.len());
        assert_eq!(welded.quads, mesh.quads);
    }

    #[test]
    fn weld_tiny_epsilon_unchanged() {
        let set = barrel_set(8);
        let mesh = emit_mesh(&set, &ProjectionSpec::default()).unwrap();
        // seam vertices coincide exactly, so they merge at any epsilon;
        // 1e-300 must not overflow or merge anything further
        let welded = weld_domain_holes(&mesh, 1e-300);
        assert_eq!(welded.vertices.len(), mesh.vertices.len() - 2 * 8);
    }

    #[test]
    fn obj_roundtrip_counts() {
        let (_, set) = torus_set(8);
        let mesh = emit_mesh(&set, &ProjectionSpec::default()).unwrap();
        let obj = mesh_to_obj(&mesh);
        let v_count = obj.lines().filter(|l| l.starts_with("v ")).count();
        let f_count = obj.lines().filter(|l| l.starts_with("f ")).count();
        assert_eq!(v_count, mesh.vertices.len());
        assert_eq!(f_count, mesh.quads.len());
        assert!(obj.contains("g chart-xy/zw-torus"));
        // indices are 1-based and in range
        for line in obj.lines().filter(|l| l.starts_with("f ")) {
            for tok in line.split_whitespace().skip(1) {
                let idx: usize = tok.parse().unwrap();
                assert!(idx >= 1 && idx <= v_count);
            }
        }
    }

    #[test]
    fn csv_shape() {
        let (r, set) = torus_set(4);
        let csv = samples_to_csv(&set, "p0/");
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "s12,s23,s31,s0,chart,alpha,beta_or_h");
        let first = lines.next().unwrap();
        let fields: Vec<&str> = first.split(',').collect();
        assert_eq!(fields.len(), 7);
        assert_eq!(fields[4], "p0/xy/zw-torus");
        // 17 significant digits means a 16-digit mantissa in e-notation
        assert!(fields[0].contains('e'));
        assert_eq!(csv.lines().count(), 1 + set.samples.len());
        // parse a spinor back and check it is on the quadric
        let s = Spinor::new(
            fields[0].parse().unwrap(),
            fields[1].parse().unwrap(),
            fields[2].parse().unwrap(),
            fields[3].parse().unwrap(),
        );
        let m = r.spin_matrix();
        assert!(m.evaluate(s).abs() <= 1e-9 * (1.0 + m.frobenius_norm()));
    }

    #[test]
    fn point_pair_mesh_vertices_only() {
        let r = ReducedPredicate::new(
            RVec3::from_ints(1, 0, 0),
            RVec3::from_ints(1, 0, 0),
            RVec3::from_ints(0, 1, 0),
            RVec3::from_ints(0, 0, 1),
            rat(-2),
        )
        .unwrap();
        let spec = eigenvalues(&r);
        let case = classify_spectrum(&spec).unwrap();
        assert_eq!(case.name(), "pair-of-points");
        let frame = orthonormal_frame(&r).unwrap();
        let set = sample_chart(&spec, &case, &frame, 8).unwrap();
        let mesh = emit_mesh(&set, &ProjectionSpec::default()).unwrap();
        assert_eq!(mesh.vertices.len(), 2);
        assert!(mesh.quads.is_empty() && mesh.lines.is_empty());
    }

    #[test]
    fn mesh_append_offsets() {
        let (_, set) = torus_set(4);
        let spec = ProjectionSpec::default();
        let m1 = emit_mesh(&set, &spec).unwrap();
        let mut combined = m1.clone();
        combined.append(m1.clone());
        assert_eq!(combined.vertices.len(), 2 * m1.vertices.len());
        assert_eq!(combined.quads.len(), 2 * m1.quads.len());
        let max_idx = combined.quads.iter().flatten().max().unwrap();
        assert!((*max_idx as usize) < combined.vertices.len());
    }

    use crate::param::SampleSet;
}
