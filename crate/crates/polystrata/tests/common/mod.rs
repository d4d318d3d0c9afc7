//! Helpers shared by the integration test suites.

#![allow(dead_code)]

use num_bigint::BigInt;
use polystrata::frontend::{parse_program, Program};
use polystrata::polyhedra::{Constraint, Generators, Polyhedron, Q};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn programs_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("programs")
}

pub fn load(name: &str) -> Program {
    let path = programs_dir().join(format!("{name}.whl"));
    let src = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_program(&src).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every bundled program, sorted by name.
pub fn corpus() -> Vec<(String, Program)> {
    let mut names: Vec<String> = std::fs::read_dir(programs_dir())
        .expect("programs directory")
        .filter_map(|e| {
            let p = e.expect("dir entry").path();
            (p.extension().and_then(|x| x.to_str()) == Some("whl"))
                .then(|| p.file_stem().unwrap().to_str().unwrap().to_string())
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|n| {
            let p = load(&n);
            (n, p)
        })
        .collect()
}

pub fn poly(n: usize, cs: &[Constraint]) -> Polyhedron {
    Polyhedron::from_constraints(n, cs.to_vec())
}

pub fn qvec(coords: &[i64]) -> Vec<Q> {
    coords.iter().map(|&c| Q::from(BigInt::from(c))).collect()
}

pub fn zvec(coords: &[i64]) -> Vec<BigInt> {
    coords.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn hull(n: usize, vertices: &[&[i64]], rays: &[&[i64]]) -> Polyhedron {
    Polyhedron::from_generators(
        n,
        Generators {
            vertices: vertices.iter().map(|v| qvec(v)).collect(),
            rays: rays.iter().map(|r| zvec(r)).collect(),
            lines: vec![],
        },
    )
}

/// Random nonempty polyhedron in `dims` dimensions with small integer
/// generators: 1–3 vertices, 0–2 rays, occasionally a line.
pub fn random_poly(rng: &mut ChaCha8Rng, dims: usize) -> Polyhedron {
    let nv = rng.gen_range(1..=3usize);
    let nr = rng.gen_range(0..=2usize);
    let nl = usize::from(rng.gen_range(0..10u32) == 0);
    let vertices = (0..nv)
        .map(|_| {
            (0..dims)
                .map(|_| Q::from(BigInt::from(rng.gen_range(-4..=4i64))))
                .collect()
        })
        .collect();
    let dir = |rng: &mut ChaCha8Rng| -> Vec<BigInt> {
        loop {
            let v: Vec<BigInt> = (0..dims)
                .map(|_| BigInt::from(rng.gen_range(-2..=2i64)))
                .collect();
            if v.iter().any(|c| c != &BigInt::from(0)) {
                return v;
            }
        }
    };
    let rays = (0..nr).map(|_| dir(rng)).collect();
    let lines = (0..nl).map(|_| dir(rng)).collect();
    Polyhedron::from_generators(
        dims,
        Generators {
            vertices,
            rays,
            lines,
        },
    )
}
