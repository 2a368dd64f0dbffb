//! Combinatorial detection of planar four-bars and Sarrus sub-linkages from
//! parallel joint axes. Joint indices are zero based here; reports
//! serialize them one based.

use serde::Serialize;

use crate::line::AxisLine;
use crate::scalar::Scalar;

/// Partition of axis indices into classes of parallel directions, ordered by
/// smallest member. Singletons are included.
pub fn parallel_partition<S: Scalar>(axes: &[AxisLine<S>]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, axis) in axes.iter().enumerate() {
        match groups.iter_mut().find(|g| axes[g[0]].is_parallel(axis)) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    groups
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SarrusPair {
    pub chains: [Vec<usize>; 2],
    pub fixed_joint: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SubstructureReport {
    /// Classes with at least two parallel axes.
    pub parallel_groups: Vec<Vec<usize>>,
    /// Maximal cyclic runs of at least four consecutive parallel joints.
    pub four_bars: Vec<Vec<usize>>,
    /// Two disjoint runs of three consecutive parallel joints from different
    /// classes covering all joints but one.
    pub sarrus: Vec<SarrusPair>,
}

impl SubstructureReport {
    pub fn has_four_bar(&self) -> bool {
        !self.four_bars.is_empty()
    }

    pub fn has_sarrus(&self) -> bool {
        !self.sarrus.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.parallel_groups.is_empty() && self.four_bars.is_empty() && self.sarrus.is_empty()
    }

    pub fn from_groups(groups: &[Vec<usize>], n: usize) -> Self {
        let mut class = vec![usize::MAX; n];
        for (k, g) in groups.iter().enumerate() {
            for &i in g {
                class[i] = k;
            }
        }
        let parallel_groups: Vec<Vec<usize>> = groups.iter().filter(|g| g.len() > 1).cloned().collect();
        let runs = |len: usize| -> Vec<Vec<usize>> {
            if n < len {
                return Vec::new();
            }
            (0..n)
                .map(|s| (0..len).map(|k| (s + k) % n).collect::<Vec<_>>())
                .filter(|run| run.iter().all(|&i| class[i] == class[run[0]]))
                .collect()
        };

        let mut four_bars = Vec::new();
        let all_same = n > 0 && class.iter().all(|&c| c == class[0]);
        if all_same && n >= 4 {
            four_bars.push((0..n).collect());
        } else if n >= 4 {
            // maximal runs start where the previous joint is in another class
            for s in 0..n {
                if class[(s + n - 1) % n] == class[s] {
                    continue;
                }
                let mut run = vec![s];
                while class[(s + run.len()) % n] == class[s] {
                    run.push((s + run.len()) % n);
                }
                if run.len() >= 4 {
                    four_bars.push(run);
                }
            }
        }

        let mut sarrus = Vec::new();
        if n == 7 {
            let triples = runs(3);
            for (x, p) in triples.iter().enumerate() {
                for q in &triples[x + 1..] {
                    if class[p[0]] == class[q[0]] || p.iter().any(|i| q.contains(i)) {
                        continue;
                    }
                    let fixed = (0..n).find(|i| !p.contains(i) && !q.contains(i)).expect("one joint left");
                    sarrus.push(SarrusPair { chains: [p.clone(), q.clone()], fixed_joint: fixed });
                }
            }
        }
        Self { parallel_groups, four_bars, sarrus }
    }
}
