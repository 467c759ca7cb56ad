//! Every admissible chain of a given degree, with invariants.

use std::fmt::Write as _;

use num_integer::gcd;
use serde::Serialize;

use crate::semigroup::member;
use crate::splice::{level_generators, ChainInvariants, PuiseuxChain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AtlasFlags {
    pub positive_braid: bool,
    pub suff_negative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtlasEntry {
    pub chain: PuiseuxChain,
    pub invariants: ChainInvariants,
    pub flags: AtlasFlags,
}

impl AtlasEntry {
    fn new(chain: PuiseuxChain) -> Self {
        let invariants = chain.invariants().expect("enumerated chains are valid");
        let flags = AtlasFlags {
            positive_braid: invariants.positive_braid,
            suff_negative: invariants.suff_negative,
        };
        Self {
            chain,
            invariants,
            flags,
        }
    }
}

/// Ordered factorisations of `n` into factors greater than one.
pub fn ordered_factorizations(n: u64) -> Vec<Vec<u64>> {
    if n < 2 {
        return Vec::new();
    }
    let mut out = vec![vec![n]];
    for f in 2..n {
        if n.is_multiple_of(f) {
            for mut rest in ordered_factorizations(n / f) {
                rest.insert(0, f);
                out.push(rest);
            }
        }
    }
    out
}

fn extend(qs: &[u64], pairs: &mut Vec<(u64, u64)>, out: &mut Vec<PuiseuxChain>) {
    let k = pairs.len();
    if k == qs.len() {
        out.push(PuiseuxChain::new(pairs.clone()).expect("positive weights"));
        return;
    }
    let q = qs[k];
    let bound = pairs.last().map_or(q, |&(p_prev, q_prev)| p_prev * q_prev * q);
    let gens = level_generators(pairs);
    for p in 2..bound {
        if gcd(p, q) != 1 || (k > 0 && !member(&gens, p)) {
            continue;
        }
        pairs.push((p, q));
        extend(qs, pairs, out);
        pairs.pop();
    }
}

/// Valid chains `[(p_1,q_1),…,(p_n,q_n)]` with `q_1⋯q_n = degree`, sorted by
/// length and then lexicographically. Positive braids are dropped unless
/// `include_positive_braids` is set.
pub fn enumerate_chains(degree: u64, include_positive_braids: bool) -> Vec<AtlasEntry> {
    let mut chains = Vec::new();
    for qs in ordered_factorizations(degree) {
        extend(&qs, &mut Vec::new(), &mut chains);
    }
    chains.sort_by(|a, b| (a.len(), a.pairs()).cmp(&(b.len(), b.pairs())));
    chains
        .into_iter()
        .map(AtlasEntry::new)
        .filter(|e| include_positive_braids || !e.flags.positive_braid)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtlasFormat {
    Json,
    Table,
}

/// Known disagreements between the published figures and the enumeration.
pub const FIGURE_NOTES: [&str; 2] = [
    "the degree-6 figure lists [(2,3),(k,2)] for k = 3..11 while also claiming positive braids are omitted; k = 7, 9, 11 are positive braids",
    "the degree-12 figure lists [(3,4),(j,3)] for j = 3,7,9,..,35; the enumeration gives j = 4,7,8,10,11,..,35 (j = 3 and 9 fail gcd(j, 3) = 1, and even j such as 4 and 8 lie in <3,4>)",
];

#[derive(Serialize)]
struct AtlasDocument<'a> {
    degree: u64,
    include_positive_braids: bool,
    count: usize,
    entries: &'a [AtlasEntry],
    notes: &'a [&'a str],
}

/// Renders the atlas of `degree` as JSON or an aligned text table.
pub fn emit_atlas(degree: u64, include_positive_braids: bool, format: AtlasFormat) -> String {
    let entries = enumerate_chains(degree, include_positive_braids);
    match format {
        AtlasFormat::Json => {
            let doc = AtlasDocument {
                degree,
                include_positive_braids,
                count: entries.len(),
                entries: &entries,
                notes: &FIGURE_NOTES,
            };
            let value = serde_json::to_value(&doc).expect("serialisable");
            let mut s = serde_json::to_string_pretty(&value).expect("serialisable");
            s.push('\n');
            s
        }
        AtlasFormat::Table => render_table(&entries),
    }
}

fn render_table(entries: &[AtlasEntry]) -> String {
    let header = ["chain", "genus", "d", "l", "positive_braid", "suff_negative"];
    let rows: Vec<[String; 6]> = entries
        .iter()
        .map(|e| {
            let inv = &e.invariants;
            [
                e.chain.to_string(),
                inv.genus.to_string(),
                format!("{:?}", inv.d),
                format!("{:?}", inv.self_linking),
                e.flags.positive_braid.to_string(),
                e.flags.suff_negative.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for r in &rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let parts: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&header);
    for r in &rows {
        line(&r.each_ref().map(String::as_str));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(e: &AtlasEntry) -> Vec<(u64, u64)> {
        e.chain.pairs().to_vec()
    }

    #[test]
    fn factorizations() {
        assert_eq!(ordered_factorizations(8), vec![vec![8], vec![2, 4], vec![2, 2, 2], vec![4, 2]]);
        assert_eq!(ordered_factorizations(7), vec![vec![7]]);
        assert!(ordered_factorizations(1).is_empty());
    }

    #[test]
    fn degree_six() {
        let all: Vec<_> = enumerate_chains(6, true).iter().map(pairs).collect();
        let mut expected = vec![vec![(5, 6)]];
        for k in [3, 5, 7, 9, 11] {
            expected.push(vec![(2, 3), (k, 2)]);
        }
        assert_eq!(all, expected);
        let filtered: Vec<_> = enumerate_chains(6, false).iter().map(pairs).collect();
        assert_eq!(filtered, vec![vec![(2, 3), (3, 2)], vec![(2, 3), (5, 2)]]);
    }

    #[test]
    fn tiny_degrees() {
        assert!(enumerate_chains(2, true).is_empty());
        assert_eq!(enumerate_chains(3, true).len(), 1);
    }

    #[test]
    fn table_is_aligned() {
        let t = emit_atlas(6, true, AtlasFormat::Table);
        let lines: Vec<_> = t.lines().collect();
        assert_eq!(lines.len(), 7);
        assert!(lines[0].starts_with("chain"));
        let col = lines[0].find("genus").unwrap();
        assert!(lines[1..].iter().all(|l| l.as_bytes()[col - 1] == b' '));
    }

    #[test]
    fn json_document() {
        let v: serde_json::Value = serde_json::from_str(&emit_atlas(6, false, AtlasFormat::Json)).unwrap();
        assert_eq!(v["count"], 2);
        assert_eq!(v["entries"][1]["flags"]["suff_negative"], true);
    }
}
