//! Planar canonical forms, automorphism groups and isomorphism.
//!
//! Candidate labelings are the spiral labelings seeded at keypoints (both
//! chain directions when the innermost layer is a collinear chain). Each
//! candidate is keyed by its letter-compressed level blocks, the raw tail
//! block when present, and the knob positions; the minimum key under the
//! fixed token order wins. All minimizers form the canonical labeling set,
//! and their pairwise quotients are exactly the automorphism group.

use std::collections::HashMap;

use crate::blocks::{
    build_point_block, build_radial_blocks, covered_labels, Block, KnobEntry, KnobPositions,
    RadialBlocks,
};
use crate::layers::{convex_layers, s_of, ConvexLayers};
use crate::oracle::{make_view, negated, oracle_query, OrientationOracle, Perm};
use crate::predicates::Orientation;
use crate::spiral::{spiral_labeling, SpiralLabeling};
use crate::tokens::{render_tokens, BlockTrie, Token};
use crate::{Error, Result};

/// The canonical form of a planar order type.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    /// Label-free equality key: header plus the winning level blocks and
    /// knob positions, rendered bit-exactly.
    pub canonical_string: String,
    /// All canonical labelings (position to label) achieving the minimum.
    pub psi: Vec<Perm>,
    /// The automorphism group `{rho_i o rho_1^-1}`.
    pub automorphisms: Vec<Perm>,
    /// Winning labeling's full block structure, for decoding; absent on
    /// the degenerate escape paths.
    pub winner: Option<CanonWinner>,
}

/// Decode pack for the winning labeling.
#[derive(Debug, Clone)]
pub struct CanonWinner {
    pub layers: ConvexLayers,
    pub blocks: RadialBlocks,
}

fn degenerate_form(s: String, n: usize) -> CanonicalForm {
    CanonicalForm {
        canonical_string: s,
        psi: vec![Perm::identity(n)],
        automorphisms: vec![Perm::identity(n)],
        winner: None,
    }
}

struct VariantData {
    layers: ConvexLayers,
    point_blocks: Vec<Option<Block>>,
    level_tokens: Vec<Vec<Token>>,
    entry_maps: Vec<HashMap<usize, u32>>,
    letters: Vec<u32>,
}

fn build_variant(
    o: &dyn OrientationOracle,
    layers: ConvexLayers,
    tail_point: Option<usize>,
) -> Result<VariantData> {
    let n = layers.n();
    let mut point_blocks: Vec<Option<Block>> = vec![None; n];
    let mut level_tokens: Vec<Vec<Token>> = vec![Vec::new(); n];
    let mut entry_maps: Vec<HashMap<usize, u32>> = vec![HashMap::new(); n];
    for label in 0..n {
        if Some(label) == tail_point {
            continue;
        }
        let j = layers.layer_of(label);
        let s = s_of(o, &layers, label)?;
        let a = covered_labels(&layers, j, label);
        let b = build_point_block(o, &layers, label, s, &a)?;
        level_tokens[label] = b.tokens(|l| layers.layer_of(l) as u32 + 1);
        entry_maps[label] = b.entry_index_map();
        point_blocks[label] = Some(b);
    }
    Ok(VariantData {
        layers,
        point_blocks,
        level_tokens,
        entry_maps,
        letters: Vec::new(),
    })
}

#[derive(PartialEq, Eq, PartialOrd, Ord, Clone)]
struct CandidateKey {
    letters: Vec<u32>,
    tail: Vec<Token>,
    kgb: Vec<Token>,
}

struct Candidate {
    variant: usize,
    rho: SpiralLabeling,
    tail_block: Option<Block>,
    key: CandidateKey,
}

fn knob_tokens_for(
    variant: &VariantData,
    rho: &SpiralLabeling,
    tail_point: Option<usize>,
    tail_entry_map: Option<&HashMap<usize, u32>>,
) -> Vec<Token> {
    let layers = &variant.layers;
    let n = layers.n();
    let mut per_block: KnobPositions = KnobPositions {
        per_block: Vec::with_capacity(n),
    };
    for i in 0..n {
        let owner = rho.label_at(i);
        let j = layers.layer_of(owner);
        let idx = if Some(owner) == tail_point {
            tail_entry_map.expect("tail block entry map provided")
        } else {
            &variant.entry_maps[owner]
        };
        let entries = (0..=j)
            .map(|t| {
                let knob = rho.knobs()[t];
                if layers.cycle(t).len() == 1 {
                    KnobEntry::SingletonLayer
                } else if knob == owner {
                    KnobEntry::OwnKnob(idx[&layers.succ(owner)])
                } else {
                    KnobEntry::At(idx[&knob])
                }
            })
            .collect();
        per_block.per_block.push(entries);
    }
    per_block.tokens()
}

/// Canonicalize a planar oracle.
///
/// Degenerate escapes: fewer than three points gives `TRIVIAL n`, an
/// entirely collinear input gives `COLLINEAR n` (all triples are zero, so
/// the count determines the order type).
pub fn canonical_form_2d(o: &dyn OrientationOracle) -> Result<CanonicalForm> {
    if o.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: o.dim(),
        });
    }
    let n = o.n();
    if n < 3 {
        return Ok(degenerate_form(format!("TRIVIAL {n}"), n));
    }
    let base_layers = match convex_layers(o) {
        Ok(l) => l,
        Err(Error::AllCollinear) => {
            return Ok(degenerate_form(format!("COLLINEAR {n}"), n));
        }
        Err(e) => return Err(e),
    };

    let m = base_layers.m();
    let tail_present = base_layers.cycle(m - 1).len() == 1;
    let tail_point = tail_present.then(|| base_layers.cycle(m - 1)[0]);

    let mut variants = Vec::new();
    let reversed = base_layers
        .last_is_chain()
        .then(|| base_layers.chain_reversed(o))
        .transpose()?;
    variants.push(build_variant(o, base_layers, tail_point)?);
    if let Some(rev) = reversed {
        variants.push(build_variant(o, rev, tail_point)?);
    }

    // One trie ranks the labeling-independent blocks of every variant so
    // letters are comparable across candidates.
    let mut trie = BlockTrie::new();
    for v in &variants {
        for (label, toks) in v.level_tokens.iter().enumerate() {
            if Some(label) != tail_point {
                trie.insert(toks);
            }
        }
    }
    trie.assign_letters();
    for v in &mut variants {
        v.letters = (0..n)
            .map(|label| {
                if Some(label) == tail_point {
                    u32::MAX
                } else {
                    trie.letter(&v.level_tokens[label]).expect("block inserted")
                }
            })
            .collect();
    }

    let mut best: Option<(CandidateKey, Vec<Candidate>)> = None;
    for (vi, v) in variants.iter().enumerate() {
        for &p in v.layers.keypoints() {
            let rho = spiral_labeling(&v.layers, p)?;
            let mut letters = Vec::with_capacity(n);
            let lettered = if tail_present { n - 1 } else { n };
            for i in 0..lettered {
                letters.push(v.letters[rho.label_at(i)]);
            }
            let (tail_block, tail_tokens, tail_map) = if let Some(tp) = tail_point {
                let a = covered_labels(&v.layers, v.layers.m() - 1, tp);
                let b = build_point_block(o, &v.layers, tp, rho.label_at(0), &a)?;
                let toks = b.tokens(|l| v.layers.layer_of(l) as u32 + 1);
                let map = b.entry_index_map();
                (Some(b), toks, Some(map))
            } else {
                (None, Vec::new(), None)
            };
            let kgb = knob_tokens_for(v, &rho, tail_point, tail_map.as_ref());
            let key = CandidateKey {
                letters,
                tail: tail_tokens,
                kgb,
            };
            let cand = Candidate {
                variant: vi,
                rho,
                tail_block,
                key: key.clone(),
            };
            match &mut best {
                None => best = Some((key, vec![cand])),
                Some((bk, ties)) => match key.cmp(bk) {
                    std::cmp::Ordering::Less => best = Some((key, vec![cand])),
                    std::cmp::Ordering::Equal => ties.push(cand),
                    std::cmp::Ordering::Greater => {}
                },
            }
        }
    }

    let (_, ties) = best.expect("at least one keypoint labeling exists");
    let winner = &ties[0];
    let wv = &variants[winner.variant];
    let layers = wv.layers.clone();

    // Assemble the winning stream: level blocks in spiral order, then the
    // knob positions.
    let mut ddr_tokens = Vec::new();
    for i in 0..n {
        let label = winner.rho.label_at(i);
        if Some(label) == tail_point {
            let tb = winner.tail_block.as_ref().expect("tail block built");
            ddr_tokens.extend(tb.tokens(|l| layers.layer_of(l) as u32 + 1));
        } else {
            ddr_tokens.extend(wv.level_tokens[label].iter().copied());
        }
        ddr_tokens.push(Token::BlockSep);
    }
    let canonical_string = format!(
        "OT2 n={} m={} {} # {}",
        n,
        layers.m(),
        render_tokens(&ddr_tokens),
        render_tokens(&winner.key.kgb)
    );

    let psi: Vec<Perm> = ties
        .iter()
        .map(|c| Perm::new(c.rho.order().to_vec()).expect("spiral order is a bijection"))
        .collect();
    let rho1_inv = psi[0].inverse();
    let automorphisms: Vec<Perm> = psi.iter().map(|r| r.compose(&rho1_inv)).collect();

    let mut blocks = Vec::with_capacity(n);
    for i in 0..n {
        let label = winner.rho.label_at(i);
        if Some(label) == tail_point {
            blocks.push(winner.tail_block.clone().expect("tail block built"));
        } else {
            blocks.push(wv.point_blocks[label].clone().expect("point block built"));
        }
    }
    let winner_pack = CanonWinner {
        blocks: RadialBlocks::from_parts(winner.rho.clone(), blocks, tail_present),
        layers,
    };

    Ok(CanonicalForm {
        canonical_string,
        psi,
        automorphisms,
        winner: Some(winner_pack),
    })
}

/// Isomorphism outcome with an optional verified witness.
#[derive(Debug, Clone)]
pub struct IsoResult {
    pub same: bool,
    /// True when equality required reversing all orientations.
    pub reflected: bool,
    /// Label map from the first oracle to the second.
    pub witness: Option<Perm>,
}

fn verify_witness(
    a: &dyn OrientationOracle,
    b: &dyn OrientationOracle,
    pi: &Perm,
    reflected: bool,
) -> Result<()> {
    let n = a.n();
    let d = a.dim();
    let check = |tuple: &[usize]| -> bool {
        let mapped: Vec<usize> = tuple.iter().map(|&x| pi.apply(x)).collect();
        let want = if reflected {
            b.query(&mapped).negate()
        } else {
            b.query(&mapped)
        };
        a.query(tuple) == want
    };
    let ok = if n <= 10 {
        all_tuples(n, d + 1).iter().all(|t| check(t))
    } else {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1505);
        (0..1000).all(|_| {
            let mut t = Vec::with_capacity(d + 1);
            while t.len() < d + 1 {
                let x = rng.gen_range(0..n);
                if !t.contains(&x) {
                    t.push(x);
                }
            }
            check(&t)
        })
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid(
            "isomorphism witness failed verification".into(),
        ))
    }
}

pub(crate) fn all_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, k, &mut cur, &mut out);
    out
}

/// Decide isomorphism by canonical string equality; on success the witness
/// permutation is built from one canonical labeling of each side and
/// verified against the oracles.
pub fn isomorphic_2d(
    a: &dyn OrientationOracle,
    b: &dyn OrientationOracle,
    allow_reflection: bool,
) -> Result<IsoResult> {
    if a.n() != b.n() {
        return Ok(IsoResult {
            same: false,
            reflected: false,
            witness: None,
        });
    }
    let fa = canonical_form_2d(a)?;
    let fb = canonical_form_2d(b)?;
    if fa.canonical_string == fb.canonical_string {
        let pi = fb.psi[0].compose(&fa.psi[0].inverse());
        verify_witness(a, b, &pi, false)?;
        return Ok(IsoResult {
            same: true,
            reflected: false,
            witness: Some(pi),
        });
    }
    if allow_reflection {
        let bn = negated(b);
        let fbn = canonical_form_2d(&bn)?;
        if fa.canonical_string == fbn.canonical_string {
            let pi = fbn.psi[0].compose(&fa.psi[0].inverse());
            verify_witness(a, b, &pi, true)?;
            return Ok(IsoResult {
                same: true,
                reflected: true,
                witness: Some(pi),
            });
        }
    }
    Ok(IsoResult {
        same: false,
        reflected: false,
        witness: None,
    })
}

/// Orientation of a canonical-position triple under a labeling, straight
/// from the oracle (used to cross-check decoded values).
pub fn oracle_under_labeling(
    o: &dyn OrientationOracle,
    rho: &Perm,
    t: (usize, usize, usize),
) -> Result<Orientation> {
    oracle_query(
        o,
        &[rho.apply(t.0 - 1), rho.apply(t.1 - 1), rho.apply(t.2 - 1)],
    )
}

/// Relabeled view helper for tests and the CLI.
pub fn relabeled<'a>(o: &'a dyn OrientationOracle, perm: &Perm) -> Result<crate::OracleView<'a>> {
    make_view(o, perm.clone(), false)
}
