use supersylow::families::FamilySpec;

pub const FAMILIES: &[&str] = &["gl", "sl", "psl", "osp", "pe", "spe", "psq"];

/// Table rows with every parameter bounded by `max_rank`, as `(family, n, spec)`
/// where `n` is the parameter the tables are indexed by.
fn all_rows(max_rank: usize) -> Vec<(&'static str, usize, FamilySpec)> {
    use FamilySpec::*;
    let mut rows = Vec::new();
    for n in 1..=max_rank {
        for m in 1..=n {
            if m + n <= max_rank + 1 {
                rows.push(("gl", n, Gl(m, n)));
                if m < n {
                    rows.push(("sl", n, Sl(m, n)));
                }
            }
        }
    }
    for n in 2..=max_rank / 2 + 1 {
        rows.push(("psl", n, Psl(n)));
    }
    for n in 1..max_rank {
        for m in 1..=max_rank - n {
            rows.push(("osp", n, Osp(m, 2 * n)));
        }
    }
    for n in 2..=max_rank {
        let half = n / 2;
        rows.push(("pe", half, Pe(n)));
        rows.push(("spe", half, Spe(n)));
        rows.push(("psq", half, if n == 2 { Pq(2) } else { Psq(n) }));
    }
    rows
}

pub fn select(max_rank: usize, family: Option<&str>, n: Option<usize>) -> Vec<FamilySpec> {
    let mut rows: Vec<FamilySpec> = all_rows(max_rank)
        .into_iter()
        .filter(|(f, k, _)| family.is_none_or(|x| x == *f) && n.is_none_or(|x| x == *k))
        .map(|(_, _, s)| s)
        .collect();
    rows.sort();
    rows.dedup();
    rows
}

/// Rows when `--n` is given without a rank bound: large enough to contain it.
pub fn rank_for(n: Option<usize>, max_rank: Option<usize>) -> usize {
    match (max_rank, n) {
        (Some(r), _) => r,
        (None, Some(n)) => 2 * n + 1,
        (None, None) => 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection() {
        let psq: Vec<String> = select(5, Some("psq"), Some(2)).iter().map(|s| s.to_string()).collect();
        assert_eq!(psq, vec!["psq(4)", "psq(5)"]);
        let pq: Vec<String> = select(3, Some("psq"), Some(1)).iter().map(|s| s.to_string()).collect();
        assert_eq!(pq, vec!["psq(3)", "pq(2)"]);
        assert!(select(3, None, None).iter().all(|s| s.has_sylow_recipe()));
    }
}
