//! The token alphabet for block serializations and its fixed total order.
//!
//! Lexicographic comparison of block streams uses the declaration order
//! below: structural tokens sort before signs, signs before the star,
//! numbers last and by value. The block separator is the minimum so a
//! block that is a proper prefix of another sorts first, matching the
//! trie rank order.

use std::collections::BTreeMap;

/// One serialized symbol.
///
/// `;` < `,` < `(` < `)` < `-` < `+` < `*` < numbers (by value).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    BlockSep,
    KgbSep,
    GroupOpen,
    GroupClose,
    SignMinus,
    SignPlus,
    Star,
    Num(u32),
}

impl Token {
    fn glyph(self) -> String {
        match self {
            Token::BlockSep => ";".into(),
            Token::KgbSep => ",".into(),
            Token::GroupOpen => "(".into(),
            Token::GroupClose => ")".into(),
            Token::SignMinus => "-".into(),
            Token::SignPlus => "+".into(),
            Token::Star => "*".into(),
            Token::Num(v) => v.to_string(),
        }
    }
}

/// ASCII rendering: tokens separated by single spaces, except that a sign
/// fuses with the number that follows it (`+3`, `-3`).
pub fn render_tokens(tokens: &[Token]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < tokens.len() {
        if !out.is_empty() {
            out.push(' ');
        }
        match (tokens[i], tokens.get(i + 1)) {
            (Token::SignMinus, Some(Token::Num(v))) => {
                out.push('-');
                out.push_str(&v.to_string());
                i += 2;
            }
            (Token::SignPlus, Some(Token::Num(v))) => {
                out.push('+');
                out.push_str(&v.to_string());
                i += 2;
            }
            (t, _) => {
                out.push_str(&t.glyph());
                i += 1;
            }
        }
    }
    out
}

#[derive(Debug, Default)]
struct TrieNode {
    terminal: bool,
    rank: Option<u32>,
    children: BTreeMap<Token, TrieNode>,
}

/// A trie over token sequences. After inserting blocks, `assign_letters`
/// ranks the distinct blocks in lexicographic token order; end-of-block
/// sorts before any continuation.
#[derive(Debug, Default)]
pub struct BlockTrie {
    root: TrieNode,
    distinct: usize,
}

impl BlockTrie {
    pub fn new() -> Self {
        BlockTrie::default()
    }

    pub fn insert(&mut self, block: &[Token]) {
        let mut node = &mut self.root;
        for t in block {
            node = node.children.entry(*t).or_default();
        }
        if !node.terminal {
            node.terminal = true;
            self.distinct += 1;
        }
    }

    /// Number of distinct blocks inserted.
    pub fn len(&self) -> usize {
        self.distinct
    }

    pub fn is_empty(&self) -> bool {
        self.distinct == 0
    }

    /// Assign consecutive ranks (0-based) to the distinct blocks in
    /// lexicographic order.
    pub fn assign_letters(&mut self) {
        fn walk(node: &mut TrieNode, next: &mut u32) {
            if node.terminal {
                node.rank = Some(*next);
                *next += 1;
            }
            for child in node.children.values_mut() {
                walk(child, next);
            }
        }
        let mut next = 0;
        walk(&mut self.root, &mut next);
    }

    /// Letter of a previously inserted block (after `assign_letters`).
    pub fn letter(&self, block: &[Token]) -> Option<u32> {
        let mut node = &self.root;
        for t in block {
            node = node.children.get(t)?;
        }
        node.rank
    }

    /// Blocks in letter order.
    pub fn blocks_in_order(&self) -> Vec<Vec<Token>> {
        fn walk(node: &TrieNode, prefix: &mut Vec<Token>, out: &mut Vec<Vec<Token>>) {
            if node.terminal {
                out.push(prefix.clone());
            }
            for (t, child) in &node.children {
                prefix.push(*t);
                walk(child, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut Vec::new(), &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_order_matches_the_fixed_alphabet() {
        let order = [
            Token::BlockSep,
            Token::KgbSep,
            Token::GroupOpen,
            Token::GroupClose,
            Token::SignMinus,
            Token::SignPlus,
            Token::Star,
            Token::Num(0),
            Token::Num(1),
            Token::Num(7),
        ];
        for w in order.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn rendering_fuses_signs() {
        let toks = [
            Token::SignMinus,
            Token::Num(3),
            Token::SignPlus,
            Token::Num(1),
            Token::GroupOpen,
            Token::SignMinus,
            Token::Num(4),
            Token::SignPlus,
            Token::Num(2),
            Token::GroupClose,
            Token::BlockSep,
        ];
        assert_eq!(render_tokens(&toks), "-3 +1 ( -4 +2 ) ;");
    }

    #[test]
    fn trie_ranks_blocks_lexicographically() {
        let a = vec![Token::SignPlus, Token::Num(1)];
        let b = vec![
            Token::SignPlus,
            Token::Num(1),
            Token::SignMinus,
            Token::Num(2),
        ];
        let c = vec![Token::SignMinus, Token::Num(9)];
        let mut trie = BlockTrie::new();
        trie.insert(&b);
        trie.insert(&a);
        trie.insert(&c);
        trie.insert(&a); // duplicate
        trie.assign_letters();
        assert_eq!(trie.len(), 3);
        // '-' < '+', and a prefix sorts before its extension.
        assert_eq!(trie.letter(&c), Some(0));
        assert_eq!(trie.letter(&a), Some(1));
        assert_eq!(trie.letter(&b), Some(2));
        assert_eq!(trie.blocks_in_order(), vec![c, a, b]);
    }
}
