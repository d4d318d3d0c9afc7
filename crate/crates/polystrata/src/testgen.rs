//! Seeded random generation of small terminating loop nests for
//! property tests. Termination is by construction: every loop iterates a
//! dedicated counter with a constant bound and a positive constant
//! increment, written exactly once per iteration and nowhere else.

use crate::frontend::{parse_program, Program};
use crate::oracle::{reachable, OracleConfig, OracleResult};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const COUNTERS: [&str; 2] = ["i", "k"];
const FREES: [&str; 2] = ["x", "y"];

struct Gen {
    rng: ChaCha8Rng,
    lines: Vec<String>,
    indent: usize,
    counters: Vec<String>,
    frees: Vec<String>,
    nondet_budget: usize,
}

impl Gen {
    fn push(&mut self, line: String) {
        self.lines
            .push(format!("{}{}", "    ".repeat(self.indent), line));
    }

    fn any_var(&mut self) -> String {
        let all: Vec<&String> = self.counters.iter().chain(self.frees.iter()).collect();
        all[self.rng.gen_range(0..all.len())].clone()
    }

    fn free_var(&mut self) -> String {
        self.frees[self.rng.gen_range(0..self.frees.len())].clone()
    }

    /// Affine right-hand side for an assignment to `target`: the target
    /// itself never gets a coefficient other than 0 or 1, so values grow
    /// at most linearly per loop iteration.
    fn rhs(&mut self, target: &str) -> String {
        let mut terms: Vec<String> = Vec::new();
        if self.rng.gen_bool(0.6) {
            terms.push(target.to_string());
        }
        if self.rng.gen_bool(0.6) {
            let other = self.any_var();
            if other != target {
                terms.push(if self.rng.gen_bool(0.3) {
                    format!("-{other}")
                } else {
                    other
                });
            }
        }
        let k = self.rng.gen_range(-3..=3i64);
        if terms.is_empty() || (k != 0 && self.rng.gen_bool(0.7)) {
            terms.push(k.to_string());
        }
        let mut s = terms[0].clone();
        for t in &terms[1..] {
            if let Some(stripped) = t.strip_prefix('-') {
                s.push_str(&format!(" - {stripped}"));
            } else {
                s.push_str(&format!(" + {t}"));
            }
        }
        s
    }

    fn cond(&mut self) -> String {
        if self.nondet_budget > 0 && self.rng.gen_bool(0.25) {
            self.nondet_budget -= 1;
            return "nondet()".to_string();
        }
        let a = self.any_var();
        let op = ["<=", "<", ">=", ">", "==", "!="][self.rng.gen_range(0..6)];
        if self.rng.gen_bool(0.5) {
            let b = self.rng.gen_range(-3..=5i64);
            format!("{a} {op} {b}")
        } else {
            let b = self.any_var();
            format!("{a} {op} {b}")
        }
    }

    fn assign(&mut self) -> String {
        let v = self.free_var();
        if self.nondet_budget > 0 && self.rng.gen_bool(0.15) {
            self.nondet_budget -= 1;
            format!("{v} = nondet();")
        } else {
            let rhs = self.rhs(&v);
            format!("{v} = {rhs};")
        }
    }

    fn item(&mut self) {
        if self.rng.gen_bool(0.6) {
            let a = self.assign();
            self.push(a);
        } else {
            let c = self.cond();
            self.push(format!("if ({c}) {{"));
            self.indent += 1;
            let a = self.assign();
            self.push(a);
            self.indent -= 1;
            if self.rng.gen_bool(0.4) {
                self.push("} else {".to_string());
                self.indent += 1;
                let a = self.assign();
                self.push(a);
                self.indent -= 1;
            }
            self.push("}".to_string());
        }
    }

    fn loop_nest(&mut self, depth: usize, max_depth: usize) {
        let c = self.counters[depth].clone();
        let c0 = self.rng.gen_range(-2..=2i64);
        let bound = c0 + self.rng.gen_range(1..=6i64);
        let d = self.rng.gen_range(1..=2i64);
        self.push(format!("{c} = {c0};"));
        self.push(format!("while ({c} <= {bound}) {{"));
        self.indent += 1;
        let n_items = self.rng.gen_range(1..=2);
        let inner_at = if depth + 1 < max_depth {
            Some(self.rng.gen_range(0..=n_items))
        } else {
            None
        };
        for i in 0..n_items {
            if inner_at == Some(i) {
                self.loop_nest(depth + 1, max_depth);
            }
            self.item();
        }
        if inner_at == Some(n_items) {
            self.loop_nest(depth + 1, max_depth);
        }
        self.push(format!("{c} = {c} + {d};"));
        self.indent -= 1;
        self.push("}".to_string());
    }
}

/// Generate one program's source text from a seed.
pub fn generate(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nloops = rng.gen_range(1..=2usize);
    let nfree = if nloops == 2 {
        1
    } else {
        rng.gen_range(1..=2usize)
    };
    let mut g = Gen {
        rng,
        lines: Vec::new(),
        indent: 0,
        counters: COUNTERS[..nloops].iter().map(|s| s.to_string()).collect(),
        frees: FREES[..nfree].iter().map(|s| s.to_string()).collect(),
        nondet_budget: 2,
    };
    // Declarations: counters get constant inits (reassigned before each
    // loop anyway); free variables may start nondeterministic.
    let mut decls: Vec<String> = Vec::new();
    for c in g.counters.clone() {
        decls.push(format!("{c} = 0"));
    }
    for f in g.frees.clone() {
        if g.nondet_budget > 0 && g.rng.gen_bool(0.3) {
            g.nondet_budget -= 1;
            decls.push(format!("{f} = nondet()"));
        } else {
            let k = g.rng.gen_range(-3..=3i64);
            decls.push(format!("{f} = {k}"));
        }
    }
    g.push(format!("int {};", decls.join(", ")));
    if g.rng.gen_bool(0.4) {
        g.item();
    }
    g.loop_nest(0, nloops);
    if g.rng.gen_bool(0.4) {
        g.item();
    }
    g.lines.join("\n") + "\n"
}

/// Generate a program whose oracle completes within the configured cap,
/// skipping seeds that truncate. Returns the source, the parsed program,
/// the oracle result, and the seed actually used.
pub fn generate_checked(seed: u64, cfg: &OracleConfig) -> (String, Program, OracleResult, u64) {
    let mut s = seed;
    loop {
        let src = generate(s);
        let p = parse_program(&src)
            .unwrap_or_else(|e| panic!("generated program must parse: {e}\n{src}"));
        let r = reachable(&p, cfg);
        if !r.truncated {
            return (src, p, r, s);
        }
        s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
    }
}
