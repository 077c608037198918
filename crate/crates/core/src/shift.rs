//! Subshifts: finite type, sofic, and oracle-backed.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::presentation::{fischer_cover_of, Edge, Presentation, StructureFlags};

/// Three-valued answer for questions that oracle shifts can only partly decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unverified,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unverified => "unverified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftKind {
    Sft {
        forbidden: Vec<Word>,
        presentation: Presentation,
    },
    Sofic {
        presentation: Presentation,
    },
    Oracle(Oracle),
}

#[derive(Clone, Debug)]
pub struct Shift {
    name: String,
    alphabet: Alphabet,
    kind: ShiftKind,
    fischer: OnceLock<Result<Presentation>>,
}

impl PartialEq for Shift {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.alphabet == other.alphabet && self.kind == other.kind
    }
}

impl Shift {
    /// Shift of finite type; presented on allowed words of length `m - 1`,
    /// where `m` is the longest forbidden length.
    pub fn sft(name: impl Into<String>, alphabet: Alphabet, forbidden: Vec<Word>) -> Result<Self> {
        if forbidden.iter().any(Vec::is_empty) {
            return Err(Error::InvalidPresentation("empty forbidden word".into()));
        }
        if forbidden
            .iter()
            .flatten()
            .any(|&s| s as usize >= alphabet.len())
        {
            return Err(Error::InvalidPresentation(
                "forbidden word outside alphabet".into(),
            ));
        }
        let mut forbidden = forbidden;
        forbidden.sort();
        forbidden.dedup();
        let presentation = higher_block(&alphabet, &forbidden)?;
        Ok(Self {
            name: name.into(),
            alphabet,
            kind: ShiftKind::Sft {
                forbidden,
                presentation,
            },
            fischer: OnceLock::new(),
        })
    }

    pub fn sofic(name: impl Into<String>, presentation: Presentation) -> Result<Self> {
        let presentation = presentation.trimmed();
        if presentation.is_empty() {
            return Err(Error::EmptyShift);
        }
        Ok(Self {
            name: name.into(),
            alphabet: presentation.alphabet().clone(),
            kind: ShiftKind::Sofic { presentation },
            fischer: OnceLock::new(),
        })
    }

    /// Oracle shift; the predicate is validated exhaustively on words up to length 7.
    pub fn oracle(name: impl Into<String>, oracle: Oracle) -> Result<Self> {
        oracle.validate(7)?;
        Ok(Self {
            name: name.into(),
            alphabet: oracle.alphabet(),
            kind: ShiftKind::Oracle(oracle),
            fischer: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn kind(&self) -> &ShiftKind {
        &self.kind
    }

    pub fn is_oracle(&self) -> bool {
        matches!(self.kind, ShiftKind::Oracle(_))
    }

    pub fn is_sft(&self) -> bool {
        matches!(self.kind, ShiftKind::Sft { .. })
    }

    pub fn oracle_ref(&self) -> Option<&Oracle> {
        match &self.kind {
            ShiftKind::Oracle(o) => Some(o),
            _ => None,
        }
    }

    /// The defining (trimmed) presentation; `None` for oracle shifts.
    pub fn presentation(&self) -> Option<&Presentation> {
        match &self.kind {
            ShiftKind::Sft { presentation, .. } | ShiftKind::Sofic { presentation } => {
                Some(presentation)
            }
            ShiftKind::Oracle(_) => None,
        }
    }

    pub fn require_presentation(&self) -> Result<&Presentation> {
        self.presentation()
            .ok_or_else(|| Error::Unsupported(format!("oracle shift `{}`", self.name)))
    }

    /// Longest forbidden word length minus one (the block length of the presentation).
    pub fn memory(&self) -> Option<usize> {
        match &self.kind {
            ShiftKind::Sft { forbidden, .. } => Some(
                forbidden
                    .iter()
                    .map(Vec::len)
                    .max()
                    .unwrap_or(1)
                    .saturating_sub(1),
            ),
            _ => None,
        }
    }

    pub fn fischer_cover(&self) -> Result<&Presentation> {
        let p = self.require_presentation()?;
        self.fischer
            .get_or_init(|| fischer_cover_of(p))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// A deterministic presentation: the higher-block graph for SFTs, the Fischer cover
    /// for irreducible sofic shifts.
    pub fn deterministic_presentation(&self) -> Result<&Presentation> {
        match &self.kind {
            ShiftKind::Sft { presentation, .. } => Ok(presentation),
            _ => self.fischer_cover(),
        }
    }

    /// Flags of the Fischer cover when irreducible, of the defining graph otherwise.
    pub fn structure(&self) -> Result<StructureFlags> {
        match self.fischer_cover() {
            Ok(f) => Ok(f.structure_flags()),
            Err(Error::NotIrreducible) => Ok(self.require_presentation()?.structure_flags()),
            Err(e) => Err(e),
        }
    }

    pub fn contains_word(&self, w: &[Symbol]) -> Result<bool> {
        match &self.kind {
            ShiftKind::Sft { presentation, .. } | ShiftKind::Sofic { presentation } => {
                Ok(presentation.accepts(w))
            }
            ShiftKind::Oracle(o) => o.query(w),
        }
    }

    /// Second membership route for SFTs: scan for forbidden factors.
    ///
    /// Agrees with [`Shift::contains_word`] when every forbidden word is essential,
    /// i.e. no allowed word is a dead end of the higher-block graph.
    pub fn avoids_forbidden(&self, w: &[Symbol]) -> Option<bool> {
        match &self.kind {
            ShiftKind::Sft { forbidden, .. } => Some(
                !forbidden
                    .iter()
                    .any(|f| w.windows(f.len()).any(|win| win == f.as_slice())),
            ),
            _ => None,
        }
    }

    /// Product shift, presented on paired states and labels.
    pub fn product(&self, other: &Shift) -> Result<Shift> {
        let p = self
            .require_presentation()?
            .product(other.require_presentation()?)?;
        Shift::sofic(format!("{}*{}", self.name, other.name), p)
    }
}

/// De Bruijn presentation: states are allowed words of length `m - 1`.
fn higher_block(alphabet: &Alphabet, forbidden: &[Word]) -> Result<Presentation> {
    let m = forbidden.iter().map(Vec::len).max().unwrap_or(1);
    let clean = |w: &[Symbol]| {
        !forbidden
            .iter()
            .any(|f| w.windows(f.len()).any(|win| win == f.as_slice()))
    };
    let blocks: Vec<Word> = alphabet.all_words(m - 1).filter(|w| clean(w)).collect();
    let index = |w: &[Symbol]| blocks.iter().position(|b| b.as_slice() == w);
    let mut edges = Vec::new();
    for (i, u) in blocks.iter().enumerate() {
        for a in alphabet.symbols() {
            let mut ua = u.clone();
            ua.push(a);
            if !clean(&ua) {
                continue;
            }
            if let Some(j) = index(&ua[1..]) {
                edges.push(Edge {
                    src: i,
                    label: a,
                    dst: j,
                });
            }
        }
    }
    let names = blocks
        .iter()
        .map(|b| {
            if b.is_empty() {
                "_".to_string()
            } else {
                alphabet.render(b)
            }
        })
        .collect();
    let p = Presentation::new(alphabet.clone(), names, edges)?.trimmed();
    if p.is_empty() {
        return Err(Error::EmptyShift);
    }
    Ok(p)
}
