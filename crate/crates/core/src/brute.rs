//! Exhaustive search over set partitions of the reaction set.
//!
//! This is an oracle for small networks: every partition with at most
//! `max_parts` parts is tested for rank additivity. Ranks are computed once
//! per reaction subset (at most `2^12`), so each partition costs only a few
//! table lookups.

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::model::Network;

/// Largest reaction count accepted by the exhaustive search (Bell(12) ≈ 4.2M).
pub const BRUTE_FORCE_LIMIT: usize = 12;

/// How data-parallel loops are run. `Parallel` falls back to sequential when
/// the crate is built without the `parallel` feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Number of set partitions of an `n`-element set (Bell number).
pub fn bell_number(n: usize) -> u128 {
    // Bell triangle.
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for v in &row {
            let prev = *next.last().unwrap();
            next.push(prev + v);
        }
        row = next;
    }
    row[0]
}

/// Calls `visit` with every restricted growth string of length `n` whose
/// block count is at most `max_parts`, extending `prefix` in place.
fn for_each_rgs(
    prefix: &mut Vec<u8>,
    blocks: u8,
    n: usize,
    max_parts: usize,
    visit: &mut dyn FnMut(&[u8], u8),
) {
    if prefix.len() == n {
        visit(prefix, blocks);
        return;
    }
    let limit = (blocks as usize + 1).min(max_parts) as u8;
    for b in 0..limit {
        prefix.push(b);
        for_each_rgs(prefix, blocks.max(b + 1), n, max_parts, visit);
        prefix.pop();
    }
}

/// All set partitions of `0..n` into at most `max_parts` parts, each part
/// sorted and parts ordered by smallest element.
pub fn set_partitions(n: usize, max_parts: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if n == 0 || max_parts == 0 {
        return out;
    }
    for_each_rgs(
        &mut Vec::with_capacity(n),
        0,
        n,
        max_parts,
        &mut |rgs, blocks| {
            out.push(rgs_to_parts(rgs, blocks));
        },
    );
    out
}

fn rgs_to_parts(rgs: &[u8], blocks: u8) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); blocks as usize];
    for (j, &b) in rgs.iter().enumerate() {
        parts[b as usize].push(j);
    }
    parts
}

fn masks_of(rgs: &[u8], blocks: u8) -> Vec<usize> {
    let mut masks = vec![0usize; blocks as usize];
    for (j, &b) in rgs.iter().enumerate() {
        masks[b as usize] |= 1 << j;
    }
    masks
}

/// Rank of the reaction vectors selected by every bitmask over `r` reactions.
fn subset_ranks(net: &Network, exec: Execution) -> Vec<usize> {
    let n = net.stoichiometric_matrix();
    let r = net.reaction_count();
    let rank_of = |mask: usize| -> usize {
        if mask == 0 {
            return 0;
        }
        let cols: Vec<usize> = (0..r).filter(|j| mask >> j & 1 == 1).collect();
        rank(&n.select_columns(&cols))
    };
    crate::par::map_range(1usize << r, exec, rank_of)
}

pub fn brute_force_decompositions(net: &Network, max_parts: usize) -> Result<Vec<Decomposition>> {
    brute_force_decompositions_with(net, max_parts, Execution::default())
}

/// Every independent partition with at most `max_parts` parts, including the
/// trivial one, in canonical order. The result does not depend on `exec`.
pub fn brute_force_decompositions_with(
    net: &Network,
    max_parts: usize,
    exec: Execution,
) -> Result<Vec<Decomposition>> {
    let r = net.reaction_count();
    if r > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            reactions: r,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if max_parts == 0 {
        return Ok(Vec::new());
    }
    let ranks = subset_ranks(net, exec);
    let total = ranks[(1 << r) - 1];

    // Split the search on short prefixes so parallel workers get balanced
    // chunks; each chunk yields its hits in lexicographic RGS order.
    let prefix_len = r.min(6);
    let mut prefixes: Vec<(Vec<u8>, u8)> = Vec::new();
    for_each_rgs(&mut Vec::new(), 0, prefix_len, max_parts, &mut |p, b| {
        prefixes.push((p.to_vec(), b))
    });
    let search = |(prefix, blocks): &(Vec<u8>, u8)| -> Vec<Decomposition> {
        let mut hits = Vec::new();
        let mut rgs = prefix.clone();
        for_each_rgs(&mut rgs, *blocks, r, max_parts, &mut |rgs, blocks| {
            let masks = masks_of(rgs, blocks);
            let part_ranks: Vec<usize> = masks.iter().map(|&m| ranks[m]).collect();
            if part_ranks.iter().sum::<usize>() == total {
                hits.push(Decomposition::from_parts_unchecked(
                    rgs_to_parts(rgs, blocks),
                    part_ranks,
                ));
            }
        });
        hits
    };
    let mut found: Vec<Decomposition> = crate::par::map_slice(&prefixes, exec, search)
        .into_iter()
        .flatten()
        .collect();
    found.sort();
    Ok(found)
}

/// A partition paired with the sum of its part ranks.
pub type RankedPartition = (Vec<Vec<usize>>, usize);

/// Ranks of the parts of every partition with at most `max_parts` parts,
/// paired with the whole-network rank. Used to check superadditivity.
pub fn partition_rank_sums(
    net: &Network,
    max_parts: usize,
) -> Result<(usize, Vec<RankedPartition>)> {
    let r = net.reaction_count();
    if r > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            reactions: r,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let ranks = subset_ranks(net, Execution::Sequential);
    let total = ranks[(1 << r) - 1];
    let mut out = Vec::new();
    if max_parts > 0 {
        for_each_rgs(&mut Vec::new(), 0, r, max_parts, &mut |rgs, blocks| {
            let sum = masks_of(rgs, blocks).iter().map(|&m| ranks[m]).sum();
            out.push((rgs_to_parts(rgs, blocks), sum));
        });
    }
    Ok((total, out))
}
