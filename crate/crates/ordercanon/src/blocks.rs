//! Per-point radial block serialization and its companions.
//!
//! Under a spiral labeling, the block of point `p_i` (on layer `j`) lists
//! every point of the layers `1..=j` other than `p_i` in the order a line
//! rotating counterclockwise through `p_i` meets them, starting from the
//! line through `p_i` and its s-image. Points collinear with that axis
//! form the leading section; the remaining points are split by side, and
//! points sharing a line through `p_i` form parenthesized groups ordered
//! along their line.
//!
//! Three derived structures make the representation comparable and
//! reconstructible:
//! * level blocks replace every label by its layer number, which makes the
//!   block content independent of the labeling;
//! * knob positions record, per block and per covered layer, where that
//!   layer's first spiral vertex sits among the block's point entries;
//! * reconstruction rebuilds the labeled blocks from the two above, which
//!   is what makes the pair a faithful encoding of the order type.

use std::collections::HashMap;

use crate::layers::{dir_sign, off_line_witness, ConvexLayers};
use crate::oracle::OrientationOracle;
use crate::predicates::Orientation;
use crate::spiral::SpiralLabeling;
use crate::tokens::{BlockTrie, Token};
use crate::{Error, Result};

/// One structured block: the axis section and the radial classes, entries
/// as `(is_plus, label)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub owner: usize,
    pub s_ref: usize,
    pub axis: Vec<(bool, usize)>,
    pub classes: Vec<Vec<(bool, usize)>>,
}

impl Block {
    /// Point entries in serialization order.
    pub fn point_entries(&self) -> impl Iterator<Item = (bool, usize)> + '_ {
        self.axis
            .iter()
            .copied()
            .chain(self.classes.iter().flat_map(|c| c.iter().copied()))
    }

    pub fn entry_count(&self) -> usize {
        self.axis.len() + self.classes.iter().map(|c| c.len()).sum::<usize>()
    }

    /// Index of each label among the point entries.
    pub fn entry_index_map(&self) -> HashMap<usize, u32> {
        self.point_entries()
            .enumerate()
            .map(|(i, (_, l))| (l, i as u32))
            .collect()
    }

    /// Serialize with an arbitrary label-to-number map.
    ///
    /// A radial class is parenthesized when it has two or more members;
    /// the first class is additionally parenthesized when it would start
    /// with a plus sign, which keeps the axis section recoverable from the
    /// token stream (the axis renders as minus entries then plus entries).
    pub fn tokens(&self, mut num_of: impl FnMut(usize) -> u32) -> Vec<Token> {
        let mut out = Vec::new();
        let mut push_entry = |out: &mut Vec<Token>, (is_plus, label): (bool, usize)| {
            out.push(if is_plus {
                Token::SignPlus
            } else {
                Token::SignMinus
            });
            out.push(Token::Num(num_of(label)));
        };
        for &e in &self.axis {
            push_entry(&mut out, e);
        }
        for (ci, class) in self.classes.iter().enumerate() {
            let wrap = class.len() >= 2 || (ci == 0 && class[0].0);
            if wrap {
                out.push(Token::GroupOpen);
            }
            for &e in class {
                push_entry(&mut out, e);
            }
            if wrap {
                out.push(Token::GroupClose);
            }
        }
        out
    }
}

/// The full block representation for one spiral labeling.
#[derive(Debug, Clone)]
pub struct RadialBlocks {
    labeling: SpiralLabeling,
    blocks: Vec<Block>,
    tail_present: bool,
}

impl RadialBlocks {
    pub(crate) fn from_parts(
        labeling: SpiralLabeling,
        blocks: Vec<Block>,
        tail_present: bool,
    ) -> Self {
        RadialBlocks {
            labeling,
            blocks,
            tail_present,
        }
    }

    pub fn labeling(&self) -> &SpiralLabeling {
        &self.labeling
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// True when the innermost layer is a single point; its block is the
    /// only labeling-dependent one and is recomputed per labeling.
    pub fn tail_present(&self) -> bool {
        self.tail_present
    }

    /// Token form with 1-based spiral labels, one vector per block.
    pub fn token_blocks(&self) -> Vec<Vec<Token>> {
        self.blocks
            .iter()
            .map(|b| b.tokens(|l| self.labeling.pos_of(l) as u32 + 1))
            .collect()
    }
}

/// Build one point's block. `s_override` substitutes the reference point
/// for the tail block, whose s-image is undefined.
pub(crate) fn build_point_block(
    o: &dyn OrientationOracle,
    layers: &ConvexLayers,
    owner: usize,
    s_ref: usize,
    a_labels: &[usize],
) -> Result<Block> {
    let z = off_line_witness(o, owner, s_ref).ok_or(Error::AllCollinear)?;
    let axis_forward = dir_sign(o, owner, s_ref, z);

    let mut axis: Vec<(bool, usize)> = Vec::new();
    let mut swept: Vec<(bool, usize)> = Vec::new();
    for &q in a_labels {
        debug_assert_ne!(q, owner);
        match o.query(&[owner, s_ref, q]) {
            Orientation::Zero => {
                let ahead = dir_sign(o, owner, q, z) == axis_forward;
                axis.push((ahead, q));
            }
            Orientation::Plus => swept.push((true, q)),
            Orientation::Minus => swept.push((false, q)),
        }
    }

    // Axis: increasing along the owner -> s direction.
    axis.sort_by(|a, b| {
        if a.1 == b.1 {
            std::cmp::Ordering::Equal
        } else if dir_sign(o, a.1, b.1, z) == axis_forward {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });

    // Radial order: rotate a line counterclockwise out of the axis; a pair
    // is compared by the orientation around the owner, with the sign
    // flipped for points on opposite sides of the axis.
    let radial_cmp = |a: &(bool, usize), b: &(bool, usize)| -> std::cmp::Ordering {
        if a.1 == b.1 {
            return std::cmp::Ordering::Equal;
        }
        let v = o.query(&[owner, a.1, b.1]);
        let v = if a.0 == b.0 { v } else { v.negate() };
        match v {
            Orientation::Plus => std::cmp::Ordering::Less,
            Orientation::Minus => std::cmp::Ordering::Greater,
            Orientation::Zero => std::cmp::Ordering::Equal,
        }
    };
    swept.sort_by(radial_cmp);

    let mut classes: Vec<Vec<(bool, usize)>> = Vec::new();
    for e in swept {
        match classes.last_mut() {
            Some(cls) if radial_cmp(&cls[0], &e) == std::cmp::Ordering::Equal => cls.push(e),
            _ => classes.push(vec![e]),
        }
    }

    for class in classes.iter_mut().filter(|c| c.len() >= 2) {
        // All members share one line through the owner; order them from
        // the minus side toward the plus side.
        let zc = off_line_witness(o, owner, class[0].1).ok_or(Error::AllCollinear)?;
        let forward = match class.iter().find(|e| e.0) {
            Some(&(_, plus_member)) => dir_sign(o, owner, plus_member, zc),
            None => dir_sign(o, class[0].1, owner, zc),
        };
        class.sort_by(|a, b| {
            if a.1 == b.1 {
                std::cmp::Ordering::Equal
            } else if dir_sign(o, a.1, b.1, zc) == forward {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
    }

    Ok(Block {
        owner,
        s_ref,
        axis,
        classes,
    })
}

pub(crate) fn covered_labels(layers: &ConvexLayers, up_to_layer: usize, exclude: usize) -> Vec<usize> {
    (0..layers.n())
        .filter(|&l| l != exclude && layers.layer_of(l) <= up_to_layer)
        .collect()
}

/// Build all blocks for a spiral labeling.
pub fn build_radial_blocks(
    o: &dyn OrientationOracle,
    layers: &ConvexLayers,
    rho: &SpiralLabeling,
) -> Result<RadialBlocks> {
    let n = layers.n();
    let tail_present = layers.cycle(layers.m() - 1).len() == 1;
    let mut blocks = Vec::with_capacity(n);
    for i in 0..n {
        let owner = rho.label_at(i);
        let j = layers.layer_of(owner);
        let s_ref = if tail_present && i == n - 1 {
            rho.label_at(0)
        } else {
            crate::layers::s_of(o, layers, owner)?
        };
        let a = covered_labels(layers, j, owner);
        blocks.push(build_point_block(o, layers, owner, s_ref, &a)?);
    }
    Ok(RadialBlocks {
        labeling: rho.clone(),
        blocks,
        tail_present,
    })
}

/// Level-numbered block streams: labels replaced by 1-based layer numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelBlocks {
    pub blocks: Vec<Vec<Token>>,
    pub tail_present: bool,
}

/// Replace every label by its layer number. The block contents (except a
/// tail block) then no longer depend on the labeling.
pub fn to_level_blocks(u: &RadialBlocks, layers: &ConvexLayers) -> LevelBlocks {
    LevelBlocks {
        blocks: u
            .blocks
            .iter()
            .map(|b| b.tokens(|l| layers.layer_of(l) as u32 + 1))
            .collect(),
        tail_present: u.tail_present,
    }
}

/// The compressed form: letter ranks for the trie-inserted blocks plus the
/// raw tail block when present.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CompressedBlocks {
    pub letters: Vec<u32>,
    pub tail: Vec<Token>,
}

/// Insert the labeling-independent blocks into a trie, rank them, and
/// rewrite the stream as letters; the tail block stays verbatim.
pub fn compress_level_blocks(d: &LevelBlocks) -> (BlockTrie, CompressedBlocks) {
    let lettered = if d.tail_present {
        &d.blocks[..d.blocks.len() - 1]
    } else {
        &d.blocks[..]
    };
    let mut trie = BlockTrie::new();
    for b in lettered {
        trie.insert(b);
    }
    trie.assign_letters();
    let letters = lettered
        .iter()
        .map(|b| trie.letter(b).expect("inserted block has a letter"))
        .collect();
    let tail = if d.tail_present {
        d.blocks.last().cloned().unwrap()
    } else {
        Vec::new()
    };
    (trie, CompressedBlocks { letters, tail })
}

/// One knob record: the knob's index among the block's point entries, or
/// its successor's index when the knob is the block's own point, or a bare
/// star for a singleton layer (where the knob is forced).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnobEntry {
    At(u32),
    OwnKnob(u32),
    SingletonLayer,
}

impl KnobEntry {
    fn tokens(self, out: &mut Vec<Token>) {
        match self {
            KnobEntry::At(p) => out.push(Token::Num(p)),
            KnobEntry::OwnKnob(p) => {
                out.push(Token::Star);
                out.push(Token::Num(p));
            }
            KnobEntry::SingletonLayer => out.push(Token::Star),
        }
    }
}

/// Knob positions for every block and every covered layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnobPositions {
    pub per_block: Vec<Vec<KnobEntry>>,
}

impl KnobPositions {
    /// Token stream: entries comma-separated, blocks semicolon-terminated.
    pub fn tokens(&self) -> Vec<Token> {
        let mut out = Vec::new();
        for block in &self.per_block {
            for (i, e) in block.iter().enumerate() {
                if i > 0 {
                    out.push(Token::KgbSep);
                }
                e.tokens(&mut out);
            }
            out.push(Token::BlockSep);
        }
        out
    }
}

/// Record the knob of every covered layer inside every block.
pub fn build_knob_positions(u: &RadialBlocks, layers: &ConvexLayers) -> KnobPositions {
    let rho = u.labeling();
    let per_block = u
        .blocks()
        .iter()
        .map(|b| {
            let j = layers.layer_of(b.owner);
            let idx = b.entry_index_map();
            (0..=j)
                .map(|t| {
                    let knob = rho.knobs()[t];
                    if layers.cycle(t).len() == 1 {
                        KnobEntry::SingletonLayer
                    } else if knob == b.owner {
                        KnobEntry::OwnKnob(idx[&layers.succ(b.owner)])
                    } else {
                        KnobEntry::At(idx[&knob])
                    }
                })
                .collect()
        })
        .collect();
    KnobPositions { per_block }
}

struct ParsedEntry {
    num_token_idx: usize,
    is_plus: bool,
    level: u32,
}

fn parse_entries(tokens: &[Token]) -> Vec<ParsedEntry> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        match (tokens[i], tokens.get(i + 1)) {
            (Token::SignPlus, Some(&Token::Num(v))) => {
                out.push(ParsedEntry {
                    num_token_idx: i + 1,
                    is_plus: true,
                    level: v,
                });
                i += 2;
            }
            (Token::SignMinus, Some(&Token::Num(v))) => {
                out.push(ParsedEntry {
                    num_token_idx: i + 1,
                    is_plus: false,
                    level: v,
                });
                i += 2;
            }
            _ => i += 1,
        }
    }
    out
}

/// Rebuild the labeled block streams from level blocks and knob positions.
///
/// Per block and per covered layer, the knob occurrence is seeded with the
/// layer's first spiral label; labels then increment along the remaining
/// same-sign occurrences, the opposite-sign occurrences from the block
/// start, and finally the same-sign occurrences preceding the knob. The
/// block's own label is skipped while incrementing since the owner never
/// appears in its own block.
pub fn reconstruct_radial_blocks(
    d: &LevelBlocks,
    g: &KnobPositions,
    layers: &ConvexLayers,
) -> Result<Vec<Vec<Token>>> {
    let sizes = layers.layer_sizes();
    let mut base = Vec::with_capacity(sizes.len());
    let mut acc = 1u32;
    for &s in &sizes {
        base.push(acc);
        acc += s as u32;
    }
    let n = d.blocks.len();
    if g.per_block.len() != n {
        return Err(Error::Invalid(
            "knob positions and level blocks disagree on block count".into(),
        ));
    }
    // Layer of the point owning block i: positions within a layer are
    // consecutive under any spiral labeling.
    let layer_of_pos = |i: usize| -> usize {
        let label1 = i as u32 + 1;
        (0..sizes.len())
            .find(|&t| label1 < base[t] + sizes[t] as u32)
            .expect("position within n")
    };

    let mut out = Vec::with_capacity(n);
    for (i, (tokens, knob_entries)) in d.blocks.iter().zip(g.per_block.iter()).enumerate() {
        let mut rebuilt = tokens.clone();
        let entries = parse_entries(tokens);
        let own_label = i as u32 + 1;
        let j = layer_of_pos(i);
        if knob_entries.len() != j + 1 {
            return Err(Error::Invalid(format!(
                "block {i} covers {} layers but has {} knob entries",
                j + 1,
                knob_entries.len()
            )));
        }
        for (t, &entry) in knob_entries.iter().enumerate() {
            let level = t as u32 + 1;
            let tlist: Vec<usize> = (0..entries.len())
                .filter(|&e| entries[e].level == level)
                .collect();
            let expected = sizes[t] - usize::from(t == j);
            if tlist.len() != expected {
                return Err(Error::Invalid(format!(
                    "block {i}: layer {level} has {} occurrences, expected {expected}",
                    tlist.len()
                )));
            }
            let mut labels: Vec<u32> = (base[t]..base[t] + sizes[t] as u32)
                .filter(|&l| !(t == j && l == own_label))
                .collect();
            let order: Vec<usize> = match entry {
                KnobEntry::SingletonLayer => {
                    if t == j {
                        debug_assert!(tlist.is_empty());
                        Vec::new()
                    } else {
                        tlist.clone()
                    }
                }
                KnobEntry::At(pos) | KnobEntry::OwnKnob(pos) => {
                    let pos = pos as usize;
                    if pos >= entries.len() || entries[pos].level != level {
                        return Err(Error::Invalid(format!(
                            "block {i}: knob position {pos} out of range for layer {level}"
                        )));
                    }
                    let gamma = entries[pos].is_plus;
                    let seed_rank = tlist
                        .iter()
                        .position(|&e| e == pos)
                        .expect("seed is a layer occurrence");
                    let mut order = vec![pos];
                    order.extend(
                        tlist[seed_rank + 1..]
                            .iter()
                            .copied()
                            .filter(|&e| entries[e].is_plus == gamma),
                    );
                    order.extend(
                        tlist
                            .iter()
                            .copied()
                            .filter(|&e| entries[e].is_plus != gamma),
                    );
                    order.extend(
                        tlist[..seed_rank]
                            .iter()
                            .copied()
                            .filter(|&e| entries[e].is_plus == gamma),
                    );
                    order
                }
            };
            if matches!(entry, KnobEntry::SingletonLayer) {
                // Knob forced: the single point takes the base label.
                for &e in &order {
                    rebuilt[entries[e].num_token_idx] = Token::Num(base[t]);
                }
                continue;
            }
            if order.len() != labels.len() {
                return Err(Error::Invalid(format!(
                    "block {i}: layer {level} occurrence count mismatch"
                )));
            }
            // With the knob as the block's own point, the seed is its
            // successor and labeling starts one past the layer base.
            if matches!(entry, KnobEntry::OwnKnob(_)) && labels.first() == Some(&base[t]) {
                return Err(Error::Invalid(format!(
                    "block {i}: own-knob entry for a layer not containing the owner"
                )));
            }
            for (&e, l) in order.iter().zip(labels.drain(..)) {
                rebuilt[entries[e].num_token_idx] = Token::Num(l);
            }
        }
        out.push(rebuilt);
    }
    Ok(out)
}

/// Read the orientation of a triple of 1-based spiral labels off the block
/// of the deepest point (the largest label).
///
/// Two points sharing the axis section or one parenthesized group are
/// collinear with the block's owner; otherwise the sign follows from the
/// pair's class ranks and axis sides.
pub fn decode_orientation(
    u: &RadialBlocks,
    layers: &ConvexLayers,
    t: (usize, usize, usize),
) -> Result<Orientation> {
    let n = layers.n();
    let t = [t.0, t.1, t.2];
    for &x in &t {
        if x == 0 || x > n {
            return Err(Error::LabelOutOfRange(x, n));
        }
    }
    if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
        return Err(Error::RepeatedLabel);
    }
    let max_idx = (0..3).max_by_key(|&i| t[i]).unwrap();
    let i = t[max_idx];
    let others: Vec<usize> = (0..3).filter(|&k| k != max_idx).map(|k| t[k]).collect();
    let parity_even = max_idx % 2 == 0;

    let block = &u.blocks()[i - 1];
    let class_of = |spiral: usize| -> Result<(u32, bool)> {
        let label = u.labeling().label_at(spiral - 1);
        if block.axis.iter().any(|&(p, l)| l == label && p) {
            return Ok((0, false));
        }
        if block.axis.iter().any(|&(p, l)| l == label && !p) {
            return Ok((0, true));
        }
        for (ci, class) in block.classes.iter().enumerate() {
            if let Some(&(is_plus, _)) = class.iter().find(|&&(_, l)| l == label) {
                return Ok((ci as u32 + 1, !is_plus));
            }
        }
        Err(Error::Invalid(format!(
            "spiral label {spiral} not covered by block {i}"
        )))
    };
    let (rank_q, half_q) = class_of(others[0])?;
    let (rank_r, half_r) = class_of(others[1])?;
    let o = if half_q == half_r {
        match rank_r.cmp(&rank_q) {
            std::cmp::Ordering::Greater => Orientation::Plus,
            std::cmp::Ordering::Equal => Orientation::Zero,
            std::cmp::Ordering::Less => Orientation::Minus,
        }
    } else {
        match rank_r.cmp(&rank_q) {
            std::cmp::Ordering::Less => Orientation::Plus,
            std::cmp::Ordering::Equal => Orientation::Zero,
            std::cmp::Ordering::Greater => Orientation::Minus,
        }
    };
    Ok(o.times_parity(parity_even))
}
