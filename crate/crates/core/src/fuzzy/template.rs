use std::fmt;
use std::path::Path;

use thiserror::Error;

use super::window::{rule_score, Binarization, BinaryWindow};
use super::{CENTER, FULL_MASK, RULE_COUNT};

const DEFAULT_TEMPLATES: &str = include_str!("../../data/default_templates.txt");

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TemplateError {
    #[error("expected {RULE_COUNT} rules, found {0}")]
    WrongCount(usize),
    #[error("line {line}: invalid cell {token:?}, expected \"row,col\" with row and col in 1..=3")]
    InvalidCell { line: usize, token: String },
    #[error("line {line}: cell {row},{col} listed twice")]
    RepeatedCell { line: usize, row: u8, col: u8 },
    #[error("line {line}: region A must contain the center cell 2,2")]
    MissingCenter { line: usize },
    #[error("line {line}: region A has {size} cells, the partition must split 4/5")]
    BadRegionSize { line: usize, size: u32 },
    #[error("line {line}: region {region} is not 4-connected")]
    Disconnected { line: usize, region: char },
    #[error("line {line}: duplicates the rule on line {first}")]
    Duplicate { line: usize, first: usize },
    #[error("cannot read template file: {0}")]
    Io(String),
}

/// A two-region partition of the 3x3 grid modelling one corner orientation.
///
/// Region A holds the center cell; one side has 4 cells and the other 5, so
/// the product of the region sizes is always 20.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CornerTemplate {
    id: u8,
    region_a: u16,
}

impl CornerTemplate {
    /// Validates a region-A mask (bit `3 * row + col`, zero-based).
    pub fn from_mask(id: u8, region_a: u16) -> Result<Self, TemplateError> {
        let line = id as usize;
        if region_a & (1 << CENTER) == 0 {
            return Err(TemplateError::MissingCenter { line });
        }
        let size = region_a.count_ones();
        if size != 4 && size != 5 {
            return Err(TemplateError::BadRegionSize { line, size });
        }
        if !is_connected(region_a) {
            return Err(TemplateError::Disconnected { line, region: 'A' });
        }
        if !is_connected(!region_a & FULL_MASK) {
            return Err(TemplateError::Disconnected { line, region: 'B' });
        }
        Ok(Self { id, region_a })
    }

    /// Rule index, 1-based in file order.
    pub fn id(&self) -> u8 {
        self.id
    }

    pub fn region_a(&self) -> u16 {
        self.region_a
    }

    pub fn region_b(&self) -> u16 {
        !self.region_a & FULL_MASK
    }

    /// Region A as 1-indexed `(row, col)` pairs in raster order.
    pub fn cells_a(&self) -> Vec<(u8, u8)> {
        mask_cells(self.region_a())
    }

    pub fn cells_b(&self) -> Vec<(u8, u8)> {
        mask_cells(self.region_b())
    }
}

impl fmt::Debug for CornerTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CornerTemplate")
            .field("id", &self.id)
            .field("a", &self.cells_a())
            .finish()
    }
}

fn mask_cells(mask: u16) -> Vec<(u8, u8)> {
    (0..9u8)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i / 3 + 1, i % 3 + 1))
        .collect()
}

fn is_connected(mask: u16) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros();
    let mut seen = 1u16 << start;
    let mut stack = vec![start];
    while let Some(i) = stack.pop() {
        let (r, c) = (i / 3, i % 3);
        let mut neighbours = Vec::with_capacity(4);
        if r > 0 {
            neighbours.push(i - 3);
        }
        if r < 2 {
            neighbours.push(i + 3);
        }
        if c > 0 {
            neighbours.push(i - 1);
        }
        if c < 2 {
            neighbours.push(i + 1);
        }
        for n in neighbours {
            if mask >> n & 1 == 1 && seen >> n & 1 == 0 {
                seen |= 1 << n;
                stack.push(n);
            }
        }
    }
    seen == mask
}

/// Exactly twelve validated, pairwise distinct corner rules.
///
/// Also caches the max-aggregated score of every possible binarized window,
/// indexed by its positive-cell mask.
#[derive(Clone)]
pub struct TemplateSet {
    templates: Vec<CornerTemplate>,
    score_table: Box<[u8; 512]>,
}

impl fmt::Debug for TemplateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.templates).finish()
    }
}

impl PartialEq for TemplateSet {
    fn eq(&self, other: &Self) -> bool {
        self.templates == other.templates
    }
}

impl TemplateSet {
    pub fn new(templates: Vec<CornerTemplate>) -> Result<Self, TemplateError> {
        if templates.len() != RULE_COUNT {
            return Err(TemplateError::WrongCount(templates.len()));
        }
        for (i, t) in templates.iter().enumerate() {
            if let Some(j) = templates[..i].iter().position(|o| o.region_a == t.region_a) {
                return Err(TemplateError::Duplicate {
                    line: t.id as usize,
                    first: templates[j].id as usize,
                });
            }
        }
        let mut score_table = Box::new([0u8; 512]);
        for (ep, slot) in score_table.iter_mut().enumerate() {
            let window = BinaryWindow::from_masks(ep as u16, Binarization::Sign);
            *slot = templates
                .iter()
                .map(|t| rule_score(&window, t))
                .max()
                .unwrap_or(0);
        }
        Ok(Self {
            templates,
            score_table,
        })
    }

    /// The built-in rule set: four quadrant rules followed by eight wedge rules.
    pub fn default_set() -> Self {
        Self::parse(DEFAULT_TEMPLATES).expect("built-in template file is valid")
    }

    /// Parses the text format: one rule per line, region-A cells as
    /// 1-indexed `row,col` pairs, `#` starting a comment. Line numbers in
    /// errors count physical lines.
    pub fn parse(text: &str) -> Result<Self, TemplateError> {
        let mut templates = Vec::new();
        let mut first_line = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut mask = 0u16;
            for token in content.split_whitespace() {
                let (row, col) = parse_cell(token).ok_or_else(|| TemplateError::InvalidCell {
                    line,
                    token: token.to_string(),
                })?;
                let bit = 1u16 << ((row - 1) * 3 + (col - 1));
                if mask & bit != 0 {
                    return Err(TemplateError::RepeatedCell { line, row, col });
                }
                mask |= bit;
            }
            let template = CornerTemplate::from_mask(line.min(u8::MAX as usize) as u8, mask)
                .map_err(|e| relabel(e, line))?;
            if let Some(j) = templates
                .iter()
                .position(|t: &CornerTemplate| t.region_a == mask)
            {
                return Err(TemplateError::Duplicate {
                    line,
                    first: first_line[j],
                });
            }
            templates.push(template);
            first_line.push(line);
        }
        for (i, t) in templates.iter_mut().enumerate() {
            t.id = i as u8 + 1;
        }
        Self::new(templates)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TemplateError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| TemplateError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn templates(&self) -> &[CornerTemplate] {
        &self.templates
    }

    pub fn iter(&self) -> impl Iterator<Item = &CornerTemplate> {
        self.templates.iter()
    }

    /// Max rule score (`0..=20`) for a window with positive-cell mask `ep`.
    #[inline]
    pub fn score_for_mask(&self, ep: u16) -> u8 {
        self.score_table[(ep & FULL_MASK) as usize]
    }
}

impl Default for TemplateSet {
    fn default() -> Self {
        Self::default_set()
    }
}

fn parse_cell(token: &str) -> Option<(u8, u8)> {
    let (r, c) = token.split_once(',')?;
    let row: u8 = r.trim().parse().ok()?;
    let col: u8 = c.trim().parse().ok()?;
    ((1..=3).contains(&row) && (1..=3).contains(&col)).then_some((row, col))
}

fn relabel(err: TemplateError, line: usize) -> TemplateError {
    match err {
        TemplateError::MissingCenter { .. } => TemplateError::MissingCenter { line },
        TemplateError::BadRegionSize { size, .. } => TemplateError::BadRegionSize { line, size },
        TemplateError::Disconnected { region, .. } => TemplateError::Disconnected { line, region },
        other => other,
    }
}
