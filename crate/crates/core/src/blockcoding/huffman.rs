//! Deterministic Huffman coding over small symbol alphabets.
//!
//! Codes are built from symbol counts with a fixed tie-breaking order, so
//! any party holding the same counts reconstructs the identical code. A
//! single-symbol alphabet gets the empty codeword: the decoder knows the
//! sequence length and reproduces it for free.

use std::collections::BTreeMap;

/// A prefix-free code over u32 symbols.
#[derive(Debug, Clone)]
pub struct HuffmanCode {
    codes: BTreeMap<u32, Vec<u8>>,
    tree: Node,
}

#[derive(Debug, Clone)]
enum Node {
    Leaf(u32),
    Branch(Box<Node>, Box<Node>),
}

impl HuffmanCode {
    /// Builds the code for the given counts. Returns `None` for an empty
    /// alphabet. Ties merge in (count, creation id) order with leaves
    /// created in ascending symbol order, making the tree deterministic.
    pub fn from_counts(counts: &BTreeMap<u32, u64>) -> Option<HuffmanCode> {
        if counts.is_empty() {
            return None;
        }
        if counts.len() == 1 {
            let symbol = *counts.keys().next().unwrap();
            let mut codes = BTreeMap::new();
            codes.insert(symbol, Vec::new());
            return Some(HuffmanCode {
                codes,
                tree: Node::Leaf(symbol),
            });
        }

        // (count, creation id) keyed min-heap via sorted Vec kept in reverse.
        let mut heap: Vec<(u64, u64, Node)> = Vec::with_capacity(counts.len());
        let mut next_id = 0u64;
        for (&symbol, &count) in counts {
            heap.push((count, next_id, Node::Leaf(symbol)));
            next_id += 1;
        }
        // Max at the front removed cheapest from the back.
        heap.sort_by(|a, b| (b.0, b.1).cmp(&(a.0, a.1)));
        while heap.len() > 1 {
            let (c1, _, n1) = heap.pop().unwrap();
            let (c2, _, n2) = heap.pop().unwrap();
            let merged = (c1 + c2, next_id, Node::Branch(Box::new(n1), Box::new(n2)));
            next_id += 1;
            // The heap is kept sorted descending, so compare target-to-probe.
            let pos = heap
                .binary_search_by(|probe| (merged.0, merged.1).cmp(&(probe.0, probe.1)))
                .unwrap_or_else(|e| e);
            heap.insert(pos, merged);
        }
        let tree = heap.pop().unwrap().2;

        let mut codes = BTreeMap::new();
        collect_codes(&tree, &mut Vec::new(), &mut codes);
        Some(HuffmanCode { codes, tree })
    }

    pub fn code_len(&self, symbol: u32) -> Option<usize> {
        self.codes.get(&symbol).map(Vec::len)
    }

    /// Appends the codewords for `symbols` to `out` (one u8 per bit).
    pub fn encode_into(&self, symbols: &[u32], out: &mut Vec<u8>) {
        for s in symbols {
            out.extend_from_slice(self.codes.get(s).expect("symbol not in codebook"));
        }
    }

    /// Decodes `count` symbols starting at `bits[*pos]`, advancing the
    /// cursor. Returns `None` on underrun.
    pub fn decode(&self, bits: &[u8], pos: &mut usize, count: usize) -> Option<Vec<u32>> {
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let mut node = &self.tree;
            loop {
                match node {
                    Node::Leaf(symbol) => {
                        out.push(*symbol);
                        break;
                    }
                    Node::Branch(zero, one) => {
                        let bit = *bits.get(*pos)?;
                        *pos += 1;
                        node = if bit == 0 { zero } else { one };
                    }
                }
            }
        }
        Some(out)
    }
}

fn collect_codes(node: &Node, prefix: &mut Vec<u8>, codes: &mut BTreeMap<u32, Vec<u8>>) {
    match node {
        Node::Leaf(symbol) => {
            codes.insert(*symbol, prefix.clone());
        }
        Node::Branch(zero, one) => {
            prefix.push(0);
            collect_codes(zero, prefix, codes);
            prefix.pop();
            prefix.push(1);
            collect_codes(one, prefix, codes);
            prefix.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn counts_of(symbols: &[u32]) -> BTreeMap<u32, u64> {
        let mut counts = BTreeMap::new();
        for &s in symbols {
            *counts.entry(s).or_insert(0) += 1;
        }
        counts
    }

    #[test]
    fn round_trip_random_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let len = rng.gen_range(1..400);
            let alphabet = rng.gen_range(1..40u32);
            let symbols: Vec<u32> = (0..len).map(|_| rng.gen_range(0..alphabet)).collect();
            let code = HuffmanCode::from_counts(&counts_of(&symbols)).unwrap();
            let mut bits = Vec::new();
            code.encode_into(&symbols, &mut bits);
            let mut pos = 0;
            let decoded = code.decode(&bits, &mut pos, symbols.len()).unwrap();
            assert_eq!(decoded, symbols);
            assert_eq!(pos, bits.len());
        }
    }

    #[test]
    fn single_symbol_costs_nothing() {
        let code = HuffmanCode::from_counts(&counts_of(&[7, 7, 7])).unwrap();
        let mut bits = Vec::new();
        code.encode_into(&[7, 7, 7], &mut bits);
        assert!(bits.is_empty());
        let mut pos = 0;
        assert_eq!(code.decode(&bits, &mut pos, 3).unwrap(), vec![7, 7, 7]);
    }

    #[test]
    fn cost_within_one_bit_of_entropy() {
        // Total Huffman length lies in [H, H + 1) bits per symbol.
        let mut counts = BTreeMap::new();
        counts.insert(0u32, 90u64);
        counts.insert(1, 5);
        counts.insert(2, 4);
        counts.insert(3, 1);
        let code = HuffmanCode::from_counts(&counts).unwrap();
        let total: f64 = counts
            .iter()
            .map(|(&s, &c)| c as f64 * code.code_len(s).unwrap() as f64)
            .sum();
        let n: u64 = counts.values().sum();
        let entropy: f64 = counts
            .values()
            .map(|&c| {
                let q = c as f64 / n as f64;
                -q * q.log2()
            })
            .sum::<f64>()
            * n as f64;
        assert!(total >= entropy - 1e-9);
        assert!(total < entropy + n as f64);
    }

    #[test]
    fn deterministic_across_rebuilds() {
        let counts = counts_of(&[1, 1, 2, 2, 3, 4, 4, 4]);
        let a = HuffmanCode::from_counts(&counts).unwrap();
        let b = HuffmanCode::from_counts(&counts).unwrap();
        for (&s, code) in &a.codes {
            assert_eq!(Some(code.len()), b.code_len(s));
        }
        let mut bits_a = Vec::new();
        let mut bits_b = Vec::new();
        a.encode_into(&[1, 2, 3, 4], &mut bits_a);
        b.encode_into(&[1, 2, 3, 4], &mut bits_b);
        assert_eq!(bits_a, bits_b);
    }

    #[test]
    fn underrun_detected() {
        let code = HuffmanCode::from_counts(&counts_of(&[0, 1])).unwrap();
        let mut pos = 0;
        assert!(code.decode(&[0], &mut pos, 2).is_none());
    }
}
