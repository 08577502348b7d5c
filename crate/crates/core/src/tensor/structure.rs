use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, RwLock};

use crate::fusion_trees::{enumerate_trees, FusionTree};
use crate::sector::{Label, SectorDescriptor};
use crate::spaces::{HomSpace, ProductSpace};

/// One tree on one side of a block: its rows (or columns) are
/// `offset..offset + extent`, with the outer indices of the legs laid out
/// column-major with extents `dims`.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeSlot {
    pub tree: FusionTree,
    pub offset: usize,
    pub dims: Vec<usize>,
    pub extent: usize,
}

/// Trees of a product space grouped by coupled charge.
#[derive(Debug)]
pub struct SideStructure {
    pub charges: BTreeMap<Label, Vec<TreeSlot>>,
    pub index: HashMap<FusionTree, usize>,
}

impl SideStructure {
    fn build(space: &ProductSpace) -> Self {
        let kind = space.kind();
        let legs: Vec<Vec<(Label, usize)>> = space.spaces().iter().map(|v| v.tree_charges()).collect();
        let isdual: Vec<bool> = space.spaces().iter().map(|v| v.is_dual()).collect();
        let mut charges: BTreeMap<Label, Vec<TreeSlot>> = BTreeMap::new();
        let total: usize = legs.iter().map(Vec::len).product();
        for lin in 0..total {
            // decompose with the last leg fastest
            let mut choice = vec![0usize; legs.len()];
            let mut r = lin;
            for k in (0..legs.len()).rev() {
                choice[k] = r % legs[k].len();
                r /= legs[k].len();
            }
            let uncoupled: Vec<Label> = choice.iter().zip(&legs).map(|(&i, l)| l[i].0.clone()).collect();
            let dims: Vec<usize> = choice.iter().zip(&legs).map(|(&i, l)| l[i].1).collect();
            let extent = dims.iter().product();
            let mut lines = vec![kind.unit()];
            for a in &uncoupled {
                let mut next: Vec<Label> = lines.iter().flat_map(|l| kind.fusion_outputs(l, a)).collect();
                next.sort();
                next.dedup();
                lines = next;
            }
            for c in lines {
                for tree in enumerate_trees(kind, &uncoupled, &isdual, &c) {
                    charges.entry(c.clone()).or_default().push(TreeSlot { tree, offset: 0, dims: dims.clone(), extent });
                }
            }
        }
        let mut index = HashMap::new();
        for slots in charges.values_mut() {
            slots.sort_by(|a, b| a.tree.cmp(&b.tree));
            let mut off = 0;
            for (i, s) in slots.iter_mut().enumerate() {
                s.offset = off;
                off += s.extent;
                index.insert(s.tree.clone(), i);
            }
        }
        SideStructure { charges, index }
    }

    pub fn dim(&self, c: &Label) -> usize {
        self.charges.get(c).map_or(0, |s| s.iter().map(|t| t.extent).sum())
    }

    pub fn slot(&self, t: &FusionTree) -> Option<&TreeSlot> {
        let i = *self.index.get(t)?;
        self.charges.get(&t.coupled).map(|s| &s[i])
    }
}

/// Block layout of a hom space: the coupled charges present on both sides
/// and, per charge, the row and column trees.
#[derive(Debug)]
pub struct BlockStructure {
    pub sectors: Vec<Label>,
    pub rows: Arc<SideStructure>,
    pub cols: Arc<SideStructure>,
    pub shapes: Vec<(usize, usize)>,
}

impl BlockStructure {
    pub fn position(&self, c: &Label) -> Option<usize> {
        self.sectors.binary_search(c).ok()
    }
}

static SIDES: LazyLock<RwLock<HashMap<ProductSpace, Arc<SideStructure>>>> = LazyLock::new(Default::default);
static BLOCKS: LazyLock<RwLock<HashMap<HomSpace, Arc<BlockStructure>>>> = LazyLock::new(Default::default);

fn side(space: &ProductSpace) -> Arc<SideStructure> {
    if let Some(s) = SIDES.read().unwrap().get(space) {
        return s.clone();
    }
    let s = Arc::new(SideStructure::build(space));
    SIDES.write().unwrap().entry(space.clone()).or_insert(s).clone()
}

pub fn block_structure(space: &HomSpace) -> Arc<BlockStructure> {
    if let Some(s) = BLOCKS.read().unwrap().get(space) {
        return s.clone();
    }
    let rows = side(&space.codomain);
    let cols = side(&space.domain);
    let sectors: Vec<Label> = rows.charges.keys().filter(|c| cols.charges.contains_key(*c)).cloned().collect();
    let shapes = sectors.iter().map(|c| (rows.dim(c), cols.dim(c))).collect();
    let s = Arc::new(BlockStructure { sectors, rows, cols, shapes });
    BLOCKS.write().unwrap().entry(space.clone()).or_insert(s).clone()
}
