#![allow(dead_code)]

use std::collections::VecDeque;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sptrsv_rewrite::cli;
use sptrsv_rewrite::{CooEntry, LowerTriangularSystem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random lower-triangular system.
///
/// Each strictly-lower position is kept with probability `density`; the
/// diagonal magnitude is uniform in [0.5, 2] with a random sign. Off-diagonal
/// values are scaled so a row's off-diagonal sum is at most half its
/// diagonal, which keeps solutions bounded however deep the DAG is.
pub fn random_lower(
    n: usize,
    density: f64,
    rng: &mut impl Rng,
) -> (Vec<CooEntry>, LowerTriangularSystem) {
    let mut entries = Vec::new();
    for i in 0..n {
        let d: f64 = rng.random_range(0.5..=2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let cols = bernoulli_positions(i, density, rng);
        let scale = 0.5 * d.abs() / cols.len().max(1) as f64;
        for j in cols {
            let v: f64 = rng.random_range(-1.0..=1.0) * scale;
            if v != 0.0 {
                entries.push(CooEntry::new(i, j, v));
            }
        }
        entries.push(CooEntry::new(i, i, d));
    }
    let l = LowerTriangularSystem::from_coo(n, &entries, false).unwrap();
    (entries, l)
}

/// Indices in `0..len` each kept independently with probability `p`, drawn
/// by geometric skipping so sparse rows cost O(kept) rather than O(len).
pub fn bernoulli_positions(len: usize, p: f64, rng: &mut impl Rng) -> Vec<usize> {
    if p >= 1.0 {
        return (0..len).collect();
    }
    let mut out = Vec::new();
    if p <= 0.0 {
        return out;
    }
    let log_q = (1.0 - p).ln();
    let mut j = 0usize;
    loop {
        let u: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
        let gap = (u.ln() / log_q).floor();
        if gap >= (len - j) as f64 {
            return out;
        }
        j += gap as usize;
        out.push(j);
        j += 1;
        if j >= len {
            return out;
        }
    }
}

/// Textbook forward substitution on a dense copy of the matrix.
pub fn dense_forward_substitution(n: usize, entries: &[CooEntry], b: &[f64]) -> Vec<f64> {
    let mut dense = vec![vec![0.0f64; n]; n];
    for e in entries {
        dense[e.row][e.col] += e.value;
    }
    let mut x = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for j in 0..i {
            s -= dense[i][j] * x[j];
        }
        x[i] = s / dense[i][i];
    }
    x
}

/// Longest dependency path (in nodes) by Kahn's topological sort over the
/// raw edge list. Does not rely on edges pointing to larger row indices.
pub fn longest_path_nodes(n: usize, entries: &[CooEntry]) -> usize {
    let mut succ = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for e in entries.iter().filter(|e| e.col < e.row && e.value != 0.0) {
        succ[e.col].push(e.row);
        indeg[e.row] += 1;
    }
    let mut depth = vec![1usize; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop_front() {
        seen += 1;
        for &w in &succ[v] {
            depth[w] = depth[w].max(depth[v] + 1);
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    assert_eq!(seen, n, "dependency graph has a cycle");
    depth.into_iter().max().unwrap_or(0)
}

/// Rows 0..3: row 1 reads row 0, row 2 reads row 1, row 3 reads rows 1 and 2.
pub fn four_row_entries() -> Vec<CooEntry> {
    vec![
        CooEntry::new(0, 0, 2.0),
        CooEntry::new(1, 0, 1.0),
        CooEntry::new(1, 1, 4.0),
        CooEntry::new(2, 1, -1.0),
        CooEntry::new(2, 2, 2.0),
        CooEntry::new(3, 1, 0.5),
        CooEntry::new(3, 2, 1.0),
        CooEntry::new(3, 3, 4.0),
    ]
}

pub fn four_row() -> LowerTriangularSystem {
    LowerTriangularSystem::from_coo(4, &four_row_entries(), false).unwrap()
}

/// Bidiagonal chain `x[i] = b[i] + x[i-1]`. Unit coefficients keep every
/// substituted coefficient at ±1, so no term ever underflows away.
pub fn chain_entries(n: usize) -> Vec<CooEntry> {
    let mut e: Vec<CooEntry> = (0..n).map(|i| CooEntry::new(i, i, 1.0)).collect();
    e.extend((1..n).map(|i| CooEntry::new(i, i - 1, -1.0)));
    e
}

pub fn chain(n: usize) -> LowerTriangularSystem {
    LowerTriangularSystem::from_coo(n, &chain_entries(n), false).unwrap()
}

/// Fat blocks of independent-ish rows separated by runs of coupled two-row
/// levels: the shape that makes level-set solves barrier bound.
///
/// `runs` lists, per block, `(fat rows, thin levels after it)`.
pub fn thin_tail(runs: &[(usize, usize)], rng: &mut impl Rng) -> (usize, Vec<CooEntry>) {
    let mut entries = Vec::new();
    let mut n = 0usize;
    let mut prev_pair: Option<(usize, usize)> = None;
    let push_row =
        |entries: &mut Vec<CooEntry>, row: usize, deps: &[usize], rng: &mut dyn rand::RngCore| {
            let d = 1.0 + rng.random_range(0.0..1.0);
            for &j in deps {
                let v = rng.random_range(-0.5..0.5) * d / deps.len() as f64;
                entries.push(CooEntry::new(row, j, v));
            }
            entries.push(CooEntry::new(row, row, d));
        };
    for &(fat, thin) in runs {
        let fat_start = n;
        // each fat row reads the previous tail pair (if any) and one earlier fat row
        for k in 0..fat {
            let row = n;
            let mut deps = Vec::new();
            if let Some((a, b)) = prev_pair {
                deps.push(if k % 2 == 0 { a } else { b });
            }
            if k > 0 && fat_start > 0 {
                deps.push(rng.random_range(0..fat_start));
            }
            deps.sort_unstable();
            deps.dedup();
            push_row(&mut entries, row, &deps, rng);
            n += 1;
        }
        let mut pair = (fat_start, fat_start + fat.saturating_sub(1));
        for _ in 0..thin {
            let (a, b) = pair;
            let r0 = n;
            let r1 = n + 1;
            push_row(&mut entries, r0, &[a, b], rng);
            push_row(&mut entries, r1, &[a, b], rng);
            pair = (r0, r1);
            n += 2;
        }
        prev_pair = Some(pair);
    }
    (n, entries)
}

/// Where the acceptance suite looks for lung2: `$SPTRSV_LUNG2`, else the
/// `fetch` cache.
pub fn lung2_path() -> Result<PathBuf, String> {
    if let Some(p) = std::env::var_os("SPTRSV_LUNG2") {
        let p = PathBuf::from(p);
        return if p.is_file() {
            Ok(p)
        } else {
            Err(format!("SPTRSV_LUNG2={} does not exist", p.display()))
        };
    }
    let cached = cli::cached_matrix_path(&cli::default_cache_dir(), "Norris", "lung2");
    if cached.is_file() {
        return Ok(cached);
    }
    Err(format!(
        "lung2 not available: run `sptrsv fetch lung2` or set SPTRSV_LUNG2 (looked in {})",
        cached.display()
    ))
}
