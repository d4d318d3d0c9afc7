//! Variable strata: downward-closed variable subsets ordered by
//! inclusion, derived from a flows-into relation. For each variable the
//! set of its (transitive) sources forms a stratum; the full variable
//! set is always included. Analyses run over the strata smallest-first,
//! each one constrained by the results of its immediate predecessors.
//!
//! The flows-into relation records `y -> x` whenever `x` is assigned an
//! expression mentioning `y`. With `control` enabled it also records
//! `y -> x` whenever the execution of an assignment to `x` depends on a
//! branch guard mentioning `y` (computed from post-dominance, closed
//! transitively across nested branches).

use crate::frontend::{Cmd, Program};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strata {
    /// Strata ordered by size, then by the sorted variable-name list.
    pub sets: Vec<BTreeSet<usize>>,
    /// `imm_preds[i]`: indices of the immediate strict-subset
    /// predecessors of `sets[i]` within `sets`.
    pub imm_preds: Vec<Vec<usize>>,
}

impl Strata {
    /// Index of the stratum equal to the full variable set.
    pub fn full_index(&self, nvars: usize) -> usize {
        self.sets
            .iter()
            .position(|s| s.len() == nvars)
            .expect("full variable set is always a stratum")
    }
}

fn writes(cmd: &Cmd) -> Vec<usize> {
    match cmd {
        Cmd::Assign(x, _) | Cmd::AssignNondet(x) => vec![*x],
        Cmd::Init(parts) => parts.iter().map(|(x, _)| *x).collect(),
        _ => Vec::new(),
    }
}

/// `preds[x]` = the set of variables flowing directly into `x`.
pub fn flows_into(p: &Program, control: bool) -> Vec<BTreeSet<usize>> {
    let n = p.vars.len();
    let mut preds: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for e in &p.cfg.edges {
        match &e.cmd {
            Cmd::Assign(x, row) => {
                for y in row.reads() {
                    preds[*x].insert(y);
                }
            }
            Cmd::Init(parts) => {
                for (x, row) in parts {
                    if let Some(row) = row {
                        for y in row.reads() {
                            preds[*x].insert(y);
                        }
                    }
                }
            }
            _ => {}
        }
    }
    if control {
        let cd = control_edges(p);
        for e in &p.cfg.edges {
            let ws = writes(&e.cmd);
            if ws.is_empty() {
                continue;
            }
            for &ge in &cd[e.src] {
                if let Cmd::Guard(_, row) = &p.cfg.edges[ge].cmd {
                    for y in row.reads() {
                        for &x in &ws {
                            preds[x].insert(y);
                        }
                    }
                }
            }
        }
    }
    preds
}

/// For each node, the edges (by index) whose outcome its execution
/// depends on, closed transitively: `w` depends on edge `u -> v` when
/// `w` post-dominates `v` but not `u`.
fn control_edges(p: &Program) -> Vec<BTreeSet<usize>> {
    let n = p.cfg.nnodes;
    let vexit = n; // virtual exit
    let mut succs: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for e in &p.cfg.edges {
        succs[e.src].push(e.dst);
    }
    for s in &mut succs[..n] {
        if s.is_empty() {
            s.push(vexit);
        }
    }
    // Loops that never exit still "decide" at their heads: give each
    // strongly connected component that cannot reach the exit a virtual
    // exit edge from its back-edge targets.
    let scc_of = scc_ids(n + 1, &succs);
    let mut scc_reaches_exit = vec![false; *scc_of.iter().max().unwrap() + 1];
    scc_reaches_exit[scc_of[vexit]] = true;
    // Condensation is acyclic; propagate reachability until stable.
    loop {
        let mut changed = false;
        for u in 0..=n {
            if scc_reaches_exit[scc_of[u]] {
                continue;
            }
            if succs[u].iter().any(|&v| scc_reaches_exit[scc_of[v]]) {
                scc_reaches_exit[scc_of[u]] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if !scc_reaches_exit.iter().all(|&r| r) {
        for &(_, target) in &p.back_edges() {
            if !scc_reaches_exit[scc_of[target]] {
                succs[target].push(vexit);
                let mut frontier = vec![target];
                while let Some(u) = frontier.pop() {
                    if scc_reaches_exit[scc_of[u]] {
                        continue;
                    }
                    scc_reaches_exit[scc_of[u]] = true;
                    for (v, ws) in succs.iter().enumerate() {
                        if ws.contains(&u) {
                            frontier.push(v);
                        }
                    }
                }
            }
        }
    }

    // Post-dominator sets by iteration (graphs are small).
    let all: BTreeSet<usize> = (0..=n).collect();
    let mut pd: Vec<BTreeSet<usize>> = vec![all; n + 1];
    pd[vexit] = BTreeSet::from([vexit]);
    loop {
        let mut changed = false;
        for v in (0..n).rev() {
            let mut meet: Option<BTreeSet<usize>> = None;
            for &s in &succs[v] {
                meet = Some(match meet {
                    None => pd[s].clone(),
                    Some(m) => m.intersection(&pd[s]).cloned().collect(),
                });
            }
            let mut new = meet.unwrap_or_default();
            new.insert(v);
            if new != pd[v] {
                pd[v] = new;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // Direct dependence, then transitive closure through edge sources.
    let mut cd: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (w, cdw) in cd.iter_mut().enumerate() {
        for (i, e) in p.cfg.edges.iter().enumerate() {
            if pd[e.dst].contains(&w) && !pd[e.src].contains(&w) {
                cdw.insert(i);
            }
        }
    }
    loop {
        let mut changed = false;
        for w in 0..n {
            let mut add = BTreeSet::new();
            for &i in &cd[w] {
                for &j in &cd[p.cfg.edges[i].src] {
                    if !cd[w].contains(&j) {
                        add.insert(j);
                    }
                }
            }
            if !add.is_empty() {
                cd[w].extend(add);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    cd
}

/// Tarjan strongly connected components; returns the component id of
/// each node. Ids are arbitrary but components are maximal.
fn scc_ids(n: usize, succs: &[Vec<usize>]) -> Vec<usize> {
    struct St<'a> {
        succs: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        comp: Vec<usize>,
        ncomp: usize,
    }
    let mut st = St {
        succs,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        comp: vec![usize::MAX; n],
        ncomp: 0,
    };
    // Iterative Tarjan to avoid recursion limits on deep graphs.
    enum Frame {
        Enter(usize),
        Resume(usize, usize),
    }
    for root in 0..n {
        if st.index[root].is_some() {
            continue;
        }
        let mut frames = vec![Frame::Enter(root)];
        while let Some(f) = frames.pop() {
            match f {
                Frame::Enter(v) => {
                    st.index[v] = Some(st.next);
                    st.low[v] = st.next;
                    st.next += 1;
                    st.stack.push(v);
                    st.on_stack[v] = true;
                    frames.push(Frame::Resume(v, 0));
                }
                Frame::Resume(v, mut i) => {
                    let mut descend = None;
                    while i < st.succs[v].len() {
                        let w = st.succs[v][i];
                        i += 1;
                        match st.index[w] {
                            None => {
                                descend = Some(w);
                                break;
                            }
                            Some(wi) => {
                                if st.on_stack[w] {
                                    st.low[v] = st.low[v].min(wi);
                                }
                            }
                        }
                    }
                    if let Some(w) = descend {
                        frames.push(Frame::Resume(v, i));
                        frames.push(Frame::Enter(w));
                        continue;
                    }
                    if st.low[v] == st.index[v].unwrap() {
                        loop {
                            let w = st.stack.pop().unwrap();
                            st.on_stack[w] = false;
                            st.comp[w] = st.ncomp;
                            if w == v {
                                break;
                            }
                        }
                        st.ncomp += 1;
                    } else if let Some(Frame::Resume(parent, _)) = frames.last() {
                        st.low[*parent] = st.low[*parent].min(st.low[v]);
                    }
                }
            }
        }
    }
    st.comp
}

/// Compute the strata of a program.
pub fn compute_strata(p: &Program, control: bool) -> Strata {
    let n = p.vars.len();
    let preds = flows_into(p, control);
    // succs over the flows-into graph per SCC condensation: ancestors of
    // v = union of components that reach v's component.
    let preds_adj: Vec<Vec<usize>> = preds.iter().map(|s| s.iter().copied().collect()).collect();
    let comp = scc_ids(n, &preds_adj);
    let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut comp_members: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for v in 0..n {
        comp_members[comp[v]].push(v);
    }
    // comp_preds[c] = components feeding into c.
    let mut comp_preds: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncomp];
    for v in 0..n {
        for &y in &preds[v] {
            if comp[y] != comp[v] {
                comp_preds[comp[v]].insert(comp[y]);
            }
        }
    }
    // Ancestor closure per component (memoized DFS; condensation is a DAG).
    let mut anc: Vec<Option<BTreeSet<usize>>> = vec![None; ncomp];
    fn ancestors(
        c: usize,
        comp_preds: &[BTreeSet<usize>],
        anc: &mut Vec<Option<BTreeSet<usize>>>,
    ) -> BTreeSet<usize> {
        if let Some(a) = &anc[c] {
            return a.clone();
        }
        let mut out = BTreeSet::from([c]);
        for &d in &comp_preds[c] {
            out.extend(ancestors(d, comp_preds, anc));
        }
        anc[c] = Some(out.clone());
        out
    }

    let mut sets: Vec<BTreeSet<usize>> = Vec::new();
    for c in 0..ncomp {
        let comps = ancestors(c, &comp_preds, &mut anc);
        let vars: BTreeSet<usize> = comps
            .iter()
            .flat_map(|&d| comp_members[d].iter().copied())
            .collect();
        if !sets.contains(&vars) {
            sets.push(vars);
        }
    }
    let full: BTreeSet<usize> = (0..n).collect();
    if !sets.contains(&full) {
        sets.push(full);
    }
    sets.sort_by_key(|s| {
        (
            s.len(),
            s.iter().map(|&v| p.vars[v].clone()).collect::<Vec<_>>(),
        )
    });

    let imm_preds = (0..sets.len())
        .map(|i| {
            (0..sets.len())
                .filter(|&j| {
                    j != i
                        && sets[j].is_subset(&sets[i])
                        && !(0..sets.len()).any(|k| {
                            k != i
                                && k != j
                                && sets[j].is_subset(&sets[k])
                                && sets[k].is_subset(&sets[i])
                                && sets[k] != sets[j]
                                && sets[k] != sets[i]
                        })
                })
                .collect()
        })
        .collect();
    Strata { sets, imm_preds }
}
