//! Built-in test mesh families: fans, equilateral lattices, well-centered
//! disks and annuli, regular-tetrahedron pairs, the tileable cube
//! tetrahedralization, random abstract complexes, and the augmentation
//! scripts that grow the lattice and cube families one cone at a time.
//!
//! Generators return contiguous vertex ids starting at 0, so vertex index and
//! vertex id coincide after [`SimplicialComplex::build`].

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::geometry::{build_dual, DualCellComplex, DualMode, GeometryError, GeometryTable};
use crate::homotopy::{AugStep, AugmentationScript};

pub type Mesh = (Vec<Vec<usize>>, Vec<DVector<f64>>);

fn dv2(x: f64, y: f64) -> DVector<f64> {
    DVector::from_column_slice(&[x, y])
}

/// Builds complex, dual and geometry in one call.
pub fn build(
    tops: &[Vec<usize>],
    coords: &[DVector<f64>],
    mode: DualMode,
) -> Result<(SimplicialComplex, DualCellComplex, GeometryTable), GeometryError> {
    let complex = SimplicialComplex::build(tops).expect("valid mesh family");
    let (dual, table) = build_dual(&complex, coords, mode)?;
    Ok((complex, dual, table))
}

/// Closed triangle fan: m triangles around a center vertex on the unit
/// circle. Well-centered for m ≥ 5.
pub fn fan(m: usize) -> Mesh {
    assert!(m >= 3);
    let tops = (0..m).map(|i| vec![0, 1 + i, 1 + (i + 1) % m]).collect();
    let mut coords = vec![dv2(0.0, 0.0)];
    for i in 0..m {
        let a = std::f64::consts::TAU * i as f64 / m as f64;
        coords.push(dv2(a.cos(), a.sin()));
    }
    (tops, coords)
}

/// Augmentation script growing an open fan of m triangles around hub 0, one
/// cone step per triangle.
pub fn fan_script(m: usize) -> AugmentationScript {
    assert!(m >= 1);
    let steps = (1..m)
        .map(|i| AugStep::Cone {
            vertex: i + 2,
            center: 0,
            base: vec![(vec![0, i + 1], 1)],
        })
        .collect();
    AugmentationScript {
        initial_tops: vec![vec![0, 1, 2]],
        initial_center: 0,
        steps,
    }
}

fn lattice_id(i: usize, j: usize, cols: usize) -> usize {
    j * cols + i
}

/// Equilateral triangle lattice with `cols` columns and `rows` rows of
/// vertices (parallelogram patch), unit edge length.
pub fn equilateral_lattice(cols: usize, rows: usize) -> Mesh {
    assert!(cols >= 2 && rows >= 2);
    let mut coords = Vec::with_capacity(cols * rows);
    for j in 0..rows {
        for i in 0..cols {
            coords.push(dv2(i as f64 + 0.5 * j as f64, j as f64 * 3f64.sqrt() / 2.0));
        }
    }
    let mut tops = Vec::new();
    for j in 0..rows - 1 {
        for i in 0..cols - 1 {
            let a = lattice_id(i, j, cols);
            let b = lattice_id(i + 1, j, cols);
            let c = lattice_id(i, j + 1, cols);
            let d = lattice_id(i + 1, j + 1, cols);
            tops.push(vec![a, b, c]);
            tops.push(vec![b, d, c]);
        }
    }
    (tops, coords)
}

/// Augmentation script growing the `size x size` equilateral lattice by
/// one-ring cone augmentation, one new vertex per step.
pub fn regular_triangulation_script(size: usize) -> AugmentationScript {
    assert!(size >= 2);
    let cols = size;
    let rows = size;
    let v = |i: usize, j: usize| lattice_id(i, j, cols);
    let mut steps = Vec::new();
    // first two rows by alternation
    for i in 1..cols {
        steps.push(AugStep::Cone {
            vertex: v(i, 1),
            center: v(i, 0),
            base: vec![(vec![v(i, 0), v(i - 1, 1)], 1)],
        });
        if i + 1 < cols {
            steps.push(AugStep::Cone {
                vertex: v(i + 1, 0),
                center: v(i, 0),
                base: vec![(vec![v(i, 0), v(i, 1)], 1)],
            });
        }
    }
    // remaining rows left to right
    for j in 1..rows - 1 {
        steps.push(AugStep::Cone {
            vertex: v(0, j + 1),
            center: v(0, j),
            base: vec![(vec![v(0, j), v(1, j)], 1)],
        });
        for i in 1..cols {
            let mut base = vec![(vec![v(i, j), v(i - 1, j + 1)], 1)];
            if i + 1 < cols {
                base.push((vec![v(i, j), v(i + 1, j)], 1));
            }
            steps.push(AugStep::Cone { vertex: v(i, j + 1), center: v(i, j), base });
        }
    }
    AugmentationScript {
        initial_tops: vec![vec![v(0, 0), v(1, 0), v(0, 1)]],
        initial_center: v(0, 0),
        steps,
    }
}

/// Vertex ids of the unit cube: id = 4x + 2y + z.
pub fn cube_coords() -> Vec<DVector<f64>> {
    (0..8u32)
        .map(|b| {
            DVector::from_column_slice(&[
                ((b >> 2) & 1) as f64,
                ((b >> 1) & 1) as f64,
                (b & 1) as f64,
            ])
        })
        .collect()
}

/// The tileable six-tetrahedron decomposition of the unit cube around the
/// diagonal from v010 to v101, grown by cone augmentation with one closing
/// step.
pub fn cube_tetrahedralization_script() -> AugmentationScript {
    AugmentationScript {
        initial_tops: vec![vec![0, 1, 2, 4]],
        initial_center: 0,
        steps: vec![
            AugStep::Cone { vertex: 5, center: 1, base: vec![(vec![1, 2, 4], 1)] },
            AugStep::Cone { vertex: 3, center: 1, base: vec![(vec![1, 2, 5], 1)] },
            AugStep::Cone { vertex: 6, center: 2, base: vec![(vec![2, 4, 5], 1)] },
            AugStep::Close {
                pairs: vec![
                    (vec![3, 6], vec![2, 3, 6]),
                    (vec![3, 5, 6], vec![2, 3, 5, 6]),
                ],
            },
            AugStep::Cone { vertex: 7, center: 3, base: vec![(vec![3, 5, 6], 1)] },
        ],
    }
}

/// A star-shaped fan sector closed into a non-contractible complex by coning
/// one new vertex over two disjoint base chains. Returns the script and the
/// vertex list of a probe edge whose homotopy defect wraps the hole.
pub fn annulus_counterexample_script() -> (AugmentationScript, Vec<usize>) {
    let script = AugmentationScript {
        initial_tops: vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4], vec![0, 4, 5]],
        initial_center: 0,
        steps: vec![
            AugStep::Cone { vertex: 6, center: 1, base: vec![(vec![1, 2], 1)] },
            AugStep::Cone { vertex: 6, center: 5, base: vec![(vec![4, 5], 1)] },
        ],
    };
    (script, vec![4, 6])
}

/// Builds the counterexample complex and its (necessarily defective) cone
/// table by running the augmentation machinery across the hole.
pub fn annulus_counterexample_table(
    script: &AugmentationScript,
) -> Result<(SimplicialComplex, crate::homotopy::ConeTable), crate::homotopy::HomotopyError> {
    crate::homotopy::build_augmented(script)
}

/// Hexagonal-lattice disk of the given ring count, optionally jittered.
/// Jitter keeps the mesh well-centered: the generator retries with fresh
/// seeds and falls back to the unjittered lattice.
pub fn disk(rings: usize, jitter: f64, seed: u64) -> Mesh {
    assert!(rings >= 1);
    for attempt in 0..20 {
        let mesh = hex_disk_attempt(rings, jitter, seed.wrapping_add(attempt * 7919));
        if jitter == 0.0 {
            return mesh;
        }
        let complex = SimplicialComplex::build(&mesh.0).expect("disk tops");
        if build_dual(&complex, &mesh.1, DualMode::WellCenteredOnly).is_ok() {
            return mesh;
        }
    }
    hex_disk_attempt(rings, 0.0, 0)
}

fn hex_disk_attempt(rings: usize, jitter: f64, seed: u64) -> Mesh {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rings as i64;
    let radius = rings as f64 + 0.25;
    let inner = rings as f64 - 0.75;
    let mut ids = std::collections::BTreeMap::new();
    let mut coords = Vec::new();
    let sqrt3_2 = 3f64.sqrt() / 2.0;
    for a in -2 * r..=2 * r {
        for b in -2 * r..=2 * r {
            let x = a as f64 + 0.5 * b as f64;
            let y = b as f64 * sqrt3_2;
            let norm = (x * x + y * y).sqrt();
            if norm <= radius {
                let mut p = dv2(x, y);
                if jitter > 0.0 && norm < inner {
                    p[0] += rng.gen_range(-jitter..jitter);
                    p[1] += rng.gen_range(-jitter..jitter);
                }
                ids.insert((a, b), coords.len());
                coords.push(p);
            }
        }
    }
    let mut tops = Vec::new();
    for (&(a, b), &va) in &ids {
        // up triangle (a,b), (a+1,b), (a,b+1); down triangle (a+1,b), (a+1,b+1), (a,b+1)
        let right = ids.get(&(a + 1, b));
        let up = ids.get(&(a, b + 1));
        let diag = ids.get(&(a + 1, b + 1));
        if let (Some(&vb), Some(&vc)) = (right, up) {
            tops.push(vec![va, vb, vc]);
            if let Some(&vd) = diag {
                tops.push(vec![vb, vd, vc]);
            }
        }
    }
    (tops, coords)
}

/// Ring mesh: the hexagonal disk with the center vertex's star removed,
/// leaving a hexagonal hole. Vertices are renumbered contiguously.
pub fn annulus_mesh(rings: usize) -> Mesh {
    assert!(rings >= 2);
    let (tops, coords) = disk(rings, 0.0, 0);
    // the center vertex is the one at the origin
    let center = coords
        .iter()
        .position(|p| p.norm() < 1e-9)
        .expect("lattice contains the origin");
    let kept: Vec<Vec<usize>> =
        tops.into_iter().filter(|t| !t.contains(&center)).collect();
    renumber(kept, coords)
}

fn renumber(tops: Vec<Vec<usize>>, coords: Vec<DVector<f64>>) -> Mesh {
    let mut map = std::collections::BTreeMap::new();
    for t in &tops {
        for &v in t {
            let next = map.len();
            map.entry(v).or_insert(next);
        }
    }
    let mut new_coords = vec![DVector::zeros(0); map.len()];
    for (&old, &new) in &map {
        new_coords[new] = coords[old].clone();
    }
    let new_tops = tops
        .into_iter()
        .map(|t| t.into_iter().map(|v| map[&v]).collect())
        .collect();
    (new_tops, new_coords)
}

/// One regular tetrahedron, well-centered.
pub fn single_tet() -> Mesh {
    let tops = vec![vec![0, 1, 2, 3]];
    let coords = vec![
        DVector::from_column_slice(&[1.0, 1.0, 1.0]),
        DVector::from_column_slice(&[1.0, -1.0, -1.0]),
        DVector::from_column_slice(&[-1.0, 1.0, -1.0]),
        DVector::from_column_slice(&[-1.0, -1.0, 1.0]),
    ];
    (tops, coords)
}

/// Two regular tetrahedra glued along a shared equilateral face; every
/// simplex contains its circumcenter.
pub fn tet_pair() -> Mesh {
    let h = (2f64 / 3.0).sqrt();
    let coords = vec![
        dv3(0.0, 0.0, 0.0),
        dv3(1.0, 0.0, 0.0),
        dv3(0.5, 3f64.sqrt() / 2.0, 0.0),
        dv3(0.5, 1.0 / (2.0 * 3f64.sqrt()), h),
        dv3(0.5, 1.0 / (2.0 * 3f64.sqrt()), -h),
    ];
    let tops = vec![vec![0, 1, 2, 3], vec![0, 2, 1, 4]];
    (tops, coords)
}

fn dv3(x: f64, y: f64, z: f64) -> DVector<f64> {
    DVector::from_column_slice(&[x, y, z])
}

/// Random abstract pure n-complex: `count` distinct top simplices over a
/// vertex pool. Purely combinatorial; may be non-manifold.
pub fn random_tops(seed: u64, dim: usize, count: usize, pool: usize) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::BTreeSet::new();
    let mut tops = Vec::new();
    let mut guard = 0;
    while tops.len() < count && guard < count * 50 {
        guard += 1;
        let mut verts = std::collections::BTreeSet::new();
        while verts.len() < dim + 1 {
            verts.insert(rng.gen_range(0..pool));
        }
        let key: Vec<usize> = verts.iter().copied().collect();
        if seen.insert(key.clone()) {
            tops.push(key);
        }
    }
    tops
}
