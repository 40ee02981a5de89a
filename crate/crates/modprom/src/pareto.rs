//! Dominance testing, non-dominated sorting and crowding-distance
//! truncation for two-objective maximization.

/// A point in objective space, tagged with the index of the individual
/// that owns it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectivePoint {
    pub completeness: f64,
    pub generalization: f64,
    pub owner: usize,
}

impl ObjectivePoint {
    pub fn new(completeness: f64, generalization: f64, owner: usize) -> ObjectivePoint {
        ObjectivePoint {
            completeness,
            generalization,
            owner,
        }
    }

    fn objective(&self, j: usize) -> f64 {
        match j {
            0 => self.completeness,
            _ => self.generalization,
        }
    }
}

/// Standard maximization dominance: at least as good on both objectives
/// and strictly better on one. Equal points dominate neither way.
pub fn dominates(a: &ObjectivePoint, b: &ObjectivePoint) -> bool {
    a.completeness >= b.completeness
        && a.generalization >= b.generalization
        && (a.completeness > b.completeness || a.generalization > b.generalization)
}

/// Fronts of indices into the sorted point slice, best front first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontPartition {
    pub fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    pub fn first(&self) -> &[usize] {
        &self.fronts[0]
    }
}

/// Counter-based non-dominated sorting: Front 1 holds the points
/// dominated by none; each later front holds the points whose dominators
/// all lie in earlier fronts. Indices within a front are ascending.
pub fn non_dominated_sort(points: &[ObjectivePoint]) -> FrontPartition {
    assert!(!points.is_empty(), "non_dominated_sort on empty set");
    let n = points.len();
    let mut dominated: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut dominators = vec![0usize; n];
    for r in 0..n {
        for s in r + 1..n {
            if dominates(&points[r], &points[s]) {
                dominated[r].push(s);
                dominators[s] += 1;
            } else if dominates(&points[s], &points[r]) {
                dominated[s].push(r);
                dominators[r] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominators[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &r in &current {
            for &s in &dominated[r] {
                dominators[s] -= 1;
                if dominators[s] == 0 {
                    next.push(s);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    FrontPartition { fronts }
}

/// Crowding distances parallel to `front`. Boundary points per objective
/// get infinity; an interior point accumulates the normalized span of its
/// sorted neighbours. Fronts of size at most two are all infinite, and an
/// objective with zero range contributes nothing.
pub fn crowding_distance(front: &[ObjectivePoint]) -> Vec<f64> {
    let l = front.len();
    assert!(l >= 1, "crowding_distance on empty front");
    if l <= 2 {
        return vec![f64::INFINITY; l];
    }
    let mut d = vec![0.0f64; l];
    for j in 0..2 {
        let mut order: Vec<usize> = (0..l).collect();
        // descending by objective value, ties by position for determinism
        order.sort_by(|&a, &b| {
            front[b]
                .objective(j)
                .total_cmp(&front[a].objective(j))
                .then(a.cmp(&b))
        });
        let range = (front[order[0]].objective(j) - front[order[l - 1]].objective(j)).abs();
        if range == 0.0 {
            // constant objective: no crowding information, no boundaries
            continue;
        }
        d[order[0]] = f64::INFINITY;
        d[order[l - 1]] = f64::INFINITY;
        for i in 1..l - 1 {
            let span = (front[order[i + 1]].objective(j) - front[order[i - 1]].objective(j)).abs();
            d[order[i]] += span / range;
        }
    }
    d
}

/// Selects exactly `target` point indices: whole fronts are admitted in
/// order; the first front that does not fit is trimmed by repeatedly
/// removing its smallest-distance member, recomputing distances after
/// each removal. Ties break toward the lower index.
pub fn truncate(
    partition: &FrontPartition,
    points: &[ObjectivePoint],
    target: usize,
) -> Vec<usize> {
    assert!(points.len() >= target, "cannot truncate below target");
    let mut out: Vec<usize> = Vec::with_capacity(target);
    for front in &partition.fronts {
        if out.len() == target {
            break;
        }
        if out.len() + front.len() <= target {
            out.extend_from_slice(front);
            continue;
        }
        let mut survivors = front.clone();
        while out.len() + survivors.len() > target {
            let dist = crowding_distance(&survivors.iter().map(|&i| points[i]).collect::<Vec<_>>());
            let mut victim = 0;
            for i in 1..survivors.len() {
                if dist[i] < dist[victim] {
                    victim = i;
                }
            }
            survivors.remove(victim);
        }
        out.extend_from_slice(&survivors);
        break;
    }
    debug_assert_eq!(out.len(), target);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(values: &[(f64, f64)]) -> Vec<ObjectivePoint> {
        values
            .iter()
            .enumerate()
            .map(|(i, &(c, g))| ObjectivePoint::new(c, g, i))
            .collect()
    }

    #[test]
    fn dominance_basic() {
        let p = pts(&[(1.0, 0.9), (0.9, 0.8), (1.0, 0.8), (0.9, 0.9)]);
        assert!(dominates(&p[0], &p[1]));
        assert!(!dominates(&p[1], &p[0]));
        // incomparable pair
        assert!(!dominates(&p[2], &p[3]));
        assert!(!dominates(&p[3], &p[2]));
        // equal points never dominate
        let q = ObjectivePoint::new(1.0, 0.9, 9);
        assert!(!dominates(&p[0], &q));
        assert!(!dominates(&q, &p[0]));
    }

    #[test]
    fn mutually_nondominating_front() {
        // four trade-off points land in a single first front
        let p = pts(&[(0.625, 0.961), (0.813, 0.9419), (0.965, 0.911), (1.0, 0.79)]);
        let partition = non_dominated_sort(&p);
        assert_eq!(partition.fronts.len(), 1);
        assert_eq!(partition.first(), &[0, 1, 2, 3]);
    }

    #[test]
    fn dominance_chain_gives_singleton_fronts() {
        let p = pts(&[(1.0, 1.0), (0.5, 0.5), (0.2, 0.2)]);
        let partition = non_dominated_sort(&p);
        assert_eq!(partition.fronts, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn crowding_two_point_front() {
        let p = pts(&[(0.0, 1.0), (1.0, 0.0)]);
        assert_eq!(crowding_distance(&p), vec![f64::INFINITY, f64::INFINITY]);
    }

    #[test]
    fn crowding_equally_spaced_midpoint() {
        let p = pts(&[(0.0, 0.0), (0.5, 0.5), (1.0, 1.0)]);
        let d = crowding_distance(&p);
        assert!(d[0].is_infinite());
        assert!(d[2].is_infinite());
        assert_eq!(d[1], 2.0); // 1 per objective
    }

    #[test]
    fn crowding_degenerate_objective() {
        // identical generalization everywhere: only completeness spacing counts
        let p = pts(&[(0.0, 0.5), (0.2, 0.5), (0.9, 0.5), (1.0, 0.5)]);
        let d = crowding_distance(&p);
        assert!(d[0].is_infinite() && d[3].is_infinite());
        assert!((d[1] - 0.9).abs() < 1e-12);
        assert!((d[2] - 0.8).abs() < 1e-12);
    }

    #[test]
    fn truncate_whole_front_fits() {
        let p = pts(&[
            (1.0, 0.1),
            (0.5, 0.5),
            (0.1, 1.0),
            (0.4, 0.4),
            (0.3, 0.3),
            (0.2, 0.2),
            (0.1, 0.1),
        ]);
        let partition = non_dominated_sort(&p);
        assert_eq!(partition.first().len(), 3);
        let kept = truncate(&partition, &p, 3);
        assert_eq!(kept, vec![0, 1, 2]);
    }

    #[test]
    fn truncate_partial_front_keeps_spread() {
        let p = pts(&[
            (1.0, 0.9),  // front 1
            (0.9, 1.0),  // front 1
            (0.8, 0.1),  // front 2 boundary
            (0.75, 0.5), // front 2 interior, crowded
            (0.7, 0.55), // front 2 interior, crowded
            (0.1, 0.8),  // front 2 boundary
        ]);
        let partition = non_dominated_sort(&p);
        assert_eq!(partition.fronts[0], vec![0, 1]);
        assert_eq!(partition.fronts[1], vec![2, 3, 4, 5]);
        let kept = truncate(&partition, &p, 4);
        assert_eq!(kept.len(), 4);
        assert!(kept.contains(&0) && kept.contains(&1));
        // the two boundary members of front 2 survive the iterative trim
        assert!(kept.contains(&2) && kept.contains(&5));
    }

    #[test]
    fn truncate_identity_when_target_is_population() {
        let p = pts(&[(0.3, 0.3), (0.2, 0.5), (0.9, 0.1)]);
        let partition = non_dominated_sort(&p);
        let kept = truncate(&partition, &p, 3);
        let mut sorted = kept.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
    }

    #[test]
    fn fronts_partition_population() {
        let p = pts(&[
            (0.1, 0.2),
            (0.5, 0.5),
            (0.5, 0.5),
            (0.9, 0.2),
            (0.2, 0.9),
            (1.0, 1.0),
        ]);
        let partition = non_dominated_sort(&p);
        let mut all: Vec<usize> = partition.fronts.concat();
        all.sort_unstable();
        assert_eq!(all, (0..p.len()).collect::<Vec<_>>());
        for front in &partition.fronts {
            for &a in front {
                for &b in front {
                    assert!(!dominates(&p[a], &p[b]));
                }
            }
        }
    }
}
