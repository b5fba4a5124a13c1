//! Closed-form adder costs and the spacetime-volume estimator.
//!
//! # Volume model
//!
//! For a circuit with `T` Toffolis, reaction depth `D`, workspace `W` and
//! `data` input/output qubits, under parameters `(rt, period, footprint, f)`:
//!
//! ```text
//! needed   = ceil(T * period / (D * rt))
//! used     = min(f, needed)
//! duration = max(D * rt, T * period / max(used, 1))
//!
//! distillation      = footprint * T * period
//! data_storage      = data * duration
//! workspace_storage = W * duration
//! buffering         = hook, 0 by default
//! volume            = sum of the four
//! ```
//!
//! The distillation term charges factory-seconds actually spent producing
//! states: `used` factories, each busy for `T * period / used` seconds. Idle
//! time of a factory that is only needed for part of the run is not charged,
//! which keeps the volume non-increasing in `f`.
//!
//! Formulas are evaluated with every `O(1)` term set to 0, `lg` as the real
//! base-2 logarithm, and results clamped at 0.

use std::fmt;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive};
use thiserror::Error;

/// Floating-point type the model is evaluated in.
pub trait Scalar: Float + FromPrimitive + fmt::Display + fmt::Debug + Send + Sync + 'static {}

impl<T: Float + FromPrimitive + fmt::Display + fmt::Debug + Send + Sync + 'static> Scalar for T {}

fn lit<F: Scalar>(x: f64) -> F {
    F::from_f64(x).expect("finite literal")
}

fn from_usize<F: Scalar>(x: usize) -> F {
    F::from_usize(x).expect("representable count")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostError {
    #[error("{0} needs a block size")]
    MissingBlockSize(AdderKind),
    #[error("register size must be at least 1")]
    ZeroSize,
    #[error("block size must be at least 1")]
    ZeroBlockSize,
    #[error("reaction depth is 0 but the circuit consumes {0} Toffolis")]
    ZeroDepthWithToffolis(String),
    #[error("invalid volume parameters: {0}")]
    InvalidParams(String),
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("unknown adder kind `{0}`")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    In,
    Out,
}

impl Place {
    pub fn as_str(self) -> &'static str {
        match self {
            Place::In => "in",
            Place::Out => "out",
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Shape of the magic-state consumption over time, consumed by buffering
/// models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimelineShape {
    Flat,
    Ramped,
    TwoPhase,
}

/// Published adder constructions, in table row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdderKind {
    Cuccaro,
    DraperIn,
    GidneyIn,
    MogensenIn,
    ThapliyalIn,
    BlockSqrtIn,
    BlockBIn,
    GossettOut,
    DraperOut,
    GidneyOut,
    MogensenOut,
    ThapliyalOut,
    BlockSqrtOut,
    BlockBOut,
}

impl AdderKind {
    pub const ALL: [AdderKind; 14] = [
        AdderKind::Cuccaro,
        AdderKind::DraperIn,
        AdderKind::GidneyIn,
        AdderKind::MogensenIn,
        AdderKind::ThapliyalIn,
        AdderKind::BlockSqrtIn,
        AdderKind::BlockBIn,
        AdderKind::GossettOut,
        AdderKind::DraperOut,
        AdderKind::GidneyOut,
        AdderKind::MogensenOut,
        AdderKind::ThapliyalOut,
        AdderKind::BlockSqrtOut,
        AdderKind::BlockBOut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AdderKind::Cuccaro => "cuccaro",
            AdderKind::DraperIn => "draper_in",
            AdderKind::GidneyIn => "gidney_in",
            AdderKind::MogensenIn => "mogensen_in",
            AdderKind::ThapliyalIn => "thapliyal_in",
            AdderKind::BlockSqrtIn => "block_sqrt_in",
            AdderKind::BlockBIn => "block_b_in",
            AdderKind::GossettOut => "gossett_out",
            AdderKind::DraperOut => "draper_out",
            AdderKind::GidneyOut => "gidney_out",
            AdderKind::MogensenOut => "mogensen_out",
            AdderKind::ThapliyalOut => "thapliyal_out",
            AdderKind::BlockSqrtOut => "block_sqrt_out",
            AdderKind::BlockBOut => "block_b_out",
        }
    }

    pub fn place(self) -> Place {
        if self <= AdderKind::BlockBIn {
            Place::In
        } else {
            Place::Out
        }
    }

    /// Position in [`AdderKind::ALL`], also the tie-break order.
    pub fn row(self) -> usize {
        self as usize
    }

    pub fn of_place(place: Place) -> impl Iterator<Item = AdderKind> {
        Self::ALL.into_iter().filter(move |k| k.place() == place)
    }

    /// Ripple-carry constructions; everything else is a lookahead design.
    pub fn is_ripple(self) -> bool {
        matches!(self, AdderKind::Cuccaro | AdderKind::GidneyIn | AdderKind::GidneyOut)
    }

    /// Block-size parameter is a free choice.
    pub fn takes_block_size(self) -> bool {
        matches!(self, AdderKind::BlockBIn | AdderKind::BlockBOut)
    }

    pub fn is_block(self) -> bool {
        matches!(
            self,
            AdderKind::BlockSqrtIn | AdderKind::BlockBIn | AdderKind::BlockSqrtOut | AdderKind::BlockBOut
        )
    }

    pub fn timeline_shape(self) -> TimelineShape {
        if self.is_ripple() || self == AdderKind::GossettOut {
            TimelineShape::Flat
        } else if self.is_block() {
            TimelineShape::TwoPhase
        } else {
            TimelineShape::Ramped
        }
    }
}

impl fmt::Display for AdderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AdderKind {
    type Err = CostError;

    fn from_str(s: &str) -> Result<Self, CostError> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| CostError::UnknownKind(s.to_string()))
    }
}

/// A cost row evaluated at one `(n, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostEval<F> {
    pub toffolis: F,
    pub reaction_depth: F,
    pub workspace: F,
    /// Input and output register qubits held during the addition.
    pub data_qubits: F,
    /// Block size the formulas were evaluated at, if any.
    pub block_size: Option<usize>,
}

pub fn ceil_sqrt(n: usize) -> usize {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// Evaluates the closed-form costs of `kind`. `b` is only read by the
/// `block_b` kinds; the `block_sqrt` kinds use `ceil(sqrt(n))`.
pub fn table1_costs<F: Scalar>(kind: AdderKind, n: usize, b: Option<usize>) -> Result<CostEval<F>, CostError> {
    use AdderKind::*;
    if n == 0 {
        return Err(CostError::ZeroSize);
    }
    let block_size = match kind {
        BlockSqrtIn | BlockSqrtOut => Some(ceil_sqrt(n)),
        BlockBIn | BlockBOut => match b {
            None => return Err(CostError::MissingBlockSize(kind)),
            Some(0) => return Err(CostError::ZeroBlockSize),
            Some(b) => Some(b),
        },
        _ => None,
    };
    let nf: F = from_usize(n);
    let lg = nf.log2();
    let c = lit::<F>;
    let (t, d, w) = match kind {
        Cuccaro => (c(2.0) * nf - c(1.0), c(2.0) * nf - c(1.0), c(1.0)),
        DraperIn => (
            c(10.0) * nf - c(6.0) * lg - c(13.0),
            c(4.0) * lg + c(7.0),
            c(2.0) * nf - lg - c(1.0),
        ),
        GidneyIn => (nf - c(1.0), c(2.0) * nf - c(1.0), nf),
        MogensenIn => (c(6.0) * nf - c(4.0), c(6.0) * lg + c(2.0), nf - lg - c(1.0)),
        ThapliyalIn => (c(7.0) * nf, c(4.0) * lg, c(2.0) * nf),
        GossettOut => (c(4.0) * nf, c(2.0), nf * nf - c(2.0) * nf),
        DraperOut => (c(5.0) * nf - c(3.0) * lg - c(4.0), c(2.0) * lg + c(3.0), nf - lg),
        GidneyOut => (nf - c(1.0), nf - c(1.0), c(1.0)),
        MogensenOut => (c(12.0) * nf - c(8.0), c(12.0) * lg + c(4.0), nf - lg - c(1.0)),
        ThapliyalOut => (c(4.0) * nf, c(2.0) * lg, nf),
        BlockSqrtIn | BlockBIn | BlockSqrtOut | BlockBOut => {
            let bf: F = from_usize(block_size.unwrap());
            let blocks = nf / bf;
            let w = c(2.0) * nf + c(3.0) * blocks;
            if kind.place() == Place::In {
                (
                    c(5.0) * nf - c(4.0) * bf + c(8.0) * blocks,
                    c(6.0) * bf + c(4.0) * blocks.log2(),
                    w,
                )
            } else {
                (
                    c(3.0) * nf - c(2.0) * bf + c(5.0) * blocks,
                    c(3.0) * bf + c(2.0) * blocks.log2(),
                    w,
                )
            }
        }
    };
    let data = match kind.place() {
        Place::In => c(2.0) * nf,
        Place::Out => c(3.0) * nf,
    };
    let zero = F::zero();
    Ok(CostEval {
        toffolis: t.max(zero),
        reaction_depth: d.max(zero),
        workspace: w.max(zero),
        data_qubits: data,
        block_size,
    })
}

/// Hardware assumptions. Times are in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeParams<F> {
    pub reaction_time: F,
    pub factory_period: F,
    pub factory_footprint: F,
    pub max_factories: u64,
}

impl<F: Scalar> VolumeParams<F> {
    /// 10 µs reaction time, one state per 165 µs from a 72-qubit factory.
    pub fn default_preset(max_factories: u64) -> Self {
        VolumeParams {
            reaction_time: lit(10e-6),
            factory_period: lit(165e-6),
            factory_footprint: lit(72.0),
            max_factories,
        }
    }

    /// Smaller, faster factory: 18 qubits, one state per 82.5 µs.
    pub fn improved_preset(max_factories: u64) -> Self {
        VolumeParams {
            factory_period: lit(82.5e-6),
            factory_footprint: lit(18.0),
            ..Self::default_preset(max_factories)
        }
    }

    pub fn with_max_factories(self, max_factories: u64) -> Self {
        VolumeParams { max_factories, ..self }
    }

    pub fn validate(&self) -> Result<(), CostError> {
        let zero = F::zero();
        let ok = |x: F| x.is_finite() && x > zero;
        if !ok(self.reaction_time) {
            return Err(CostError::InvalidParams("reaction time must be positive".into()));
        }
        if !ok(self.factory_period) {
            return Err(CostError::InvalidParams("factory period must be positive".into()));
        }
        if !ok(self.factory_footprint) {
            return Err(CostError::InvalidParams("factory footprint must be positive".into()));
        }
        if self.max_factories == 0 {
            return Err(CostError::InvalidParams("max_factories must be at least 1".into()));
        }
        Ok(())
    }

    /// Overrides fields from `key = value` lines. Blank lines and lines
    /// starting with `#` are skipped. Keys: `reaction_time_us`,
    /// `factory_period_us`, `factory_footprint`, `max_factories`.
    pub fn apply_config(mut self, text: &str) -> Result<Self, CostError> {
        let micro: F = lit(1e-6);
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let err = |msg: String| CostError::Config { line, msg };
            let (key, value) = s
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got `{s}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let real = || -> Result<F, CostError> {
                let x: f64 = value.parse().map_err(|_| err(format!("`{value}` is not a number")))?;
                F::from_f64(x).ok_or_else(|| err(format!("`{value}` is out of range")))
            };
            match key {
                "reaction_time_us" => self.reaction_time = real()? * micro,
                "factory_period_us" => self.factory_period = real()? * micro,
                "factory_footprint" => self.factory_footprint = real()?,
                "max_factories" => {
                    self.max_factories = value
                        .parse()
                        .map_err(|_| err(format!("`{value}` is not a nonnegative integer")))?
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        self.validate()?;
        Ok(self)
    }
}

/// Factories at which production keeps pace with a reaction-limited run:
/// `ceil(T * period / (D * rt))`. Zero when no Toffolis are needed.
pub fn factories_needed<F: Scalar>(toffolis: F, depth: F, p: &VolumeParams<F>) -> u64 {
    if toffolis <= F::zero() {
        return 0;
    }
    let x = toffolis * p.factory_period / (depth * p.reaction_time);
    // shave off rounding noise so exact ratios do not round up
    let x = (x * (F::one() - F::epsilon() * lit(8.0))).ceil();
    x.to_u64().unwrap_or(u64::MAX)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeBreakdown<F> {
    pub distillation: F,
    pub data_storage: F,
    pub workspace_storage: F,
    pub buffering: F,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate<F> {
    /// Seconds.
    pub duration: F,
    pub factories_used: u64,
    /// Logical-qubit-seconds.
    pub volume: F,
    pub breakdown: VolumeBreakdown<F>,
}

/// Extra qubit-seconds for holding magic states produced ahead of use.
pub trait BufferingModel<F> {
    fn buffering(&self, shape: TimelineShape, toffolis: F, depth: F, duration: F, p: &VolumeParams<F>) -> F;
}

/// The baseline: no buffering charge.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoBuffering;

impl<F: Scalar> BufferingModel<F> for NoBuffering {
    fn buffering(&self, _: TimelineShape, _: F, _: F, _: F, _: &VolumeParams<F>) -> F {
        F::zero()
    }
}

pub fn estimate_volume<F: Scalar>(
    toffolis: F,
    depth: F,
    workspace: F,
    data_qubits: F,
    p: &VolumeParams<F>,
) -> Result<VolumeEstimate<F>, CostError> {
    estimate_volume_with(
        toffolis,
        depth,
        workspace,
        data_qubits,
        p,
        TimelineShape::Flat,
        &NoBuffering,
    )
}

pub fn estimate_volume_with<F: Scalar>(
    toffolis: F,
    depth: F,
    workspace: F,
    data_qubits: F,
    p: &VolumeParams<F>,
    shape: TimelineShape,
    buffering: &dyn BufferingModel<F>,
) -> Result<VolumeEstimate<F>, CostError> {
    p.validate()?;
    let zero = F::zero();
    if toffolis > zero && depth <= zero {
        return Err(CostError::ZeroDepthWithToffolis(toffolis.to_string()));
    }
    let used = p.max_factories.min(factories_needed(toffolis, depth, p));
    let used_f = F::from_u64(used.max(1)).expect("factory count");
    let duration = (depth * p.reaction_time).max(toffolis * p.factory_period / used_f);
    let breakdown = VolumeBreakdown {
        distillation: p.factory_footprint * toffolis * p.factory_period,
        data_storage: data_qubits * duration,
        workspace_storage: workspace * duration,
        buffering: buffering.buffering(shape, toffolis, depth, duration, p),
    };
    Ok(VolumeEstimate {
        duration,
        factories_used: used,
        volume: breakdown.distillation + breakdown.data_storage + breakdown.workspace_storage + breakdown.buffering,
        breakdown,
    })
}

/// Volume of a catalogued adder at `(n, b)`.
pub fn kind_volume<F: Scalar>(
    kind: AdderKind,
    n: usize,
    b: Option<usize>,
    p: &VolumeParams<F>,
) -> Result<(CostEval<F>, VolumeEstimate<F>), CostError> {
    let cost = table1_costs::<F>(kind, n, b)?;
    let est = estimate_volume(cost.toffolis, cost.reaction_depth, cost.workspace, cost.data_qubits, p)?;
    Ok((cost, est))
}

/// How the free block size of the `block_b` kinds is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockSearch {
    /// Minimize over `2..=min(n, 2 * ceil(sqrt(n)))`.
    #[default]
    Bounded,
    /// Minimize over `2..=n`.
    Full,
    Fixed(usize),
}

impl BlockSearch {
    pub fn candidates(self, n: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            BlockSearch::Bounded => 2.min(n)..=n.min(2 * ceil_sqrt(n)),
            BlockSearch::Full => 2.min(n)..=n,
            BlockSearch::Fixed(b) => b..=b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Choice<F> {
    pub kind: AdderKind,
    pub cost: CostEval<F>,
    pub estimate: VolumeEstimate<F>,
}

impl<F> Choice<F> {
    pub fn block_size(&self) -> Option<usize> {
        self.cost.block_size
    }
}

/// Lowest-volume configuration of one kind; for `block_b` kinds the block
/// size is optimized, smallest `b` winning ties.
pub fn optimize_kind<F: Scalar>(
    kind: AdderKind,
    n: usize,
    p: &VolumeParams<F>,
    search: BlockSearch,
) -> Result<Choice<F>, CostError> {
    let mut best: Option<Choice<F>> = None;
    let bs: Vec<Option<usize>> = if kind.takes_block_size() {
        search.candidates(n).map(Some).collect()
    } else {
        vec![None]
    };
    for b in bs {
        let (cost, estimate) = kind_volume(kind, n, b, p)?;
        if best.is_none_or(|c| estimate.volume < c.estimate.volume) {
            best = Some(Choice { kind, cost, estimate });
        }
    }
    best.ok_or(CostError::ZeroBlockSize)
}

/// Lowest-volume adder among `kinds`; earlier kinds win ties.
pub fn best_of<F: Scalar>(
    kinds: impl IntoIterator<Item = AdderKind>,
    n: usize,
    p: &VolumeParams<F>,
    search: BlockSearch,
) -> Result<Option<Choice<F>>, CostError> {
    let mut best: Option<Choice<F>> = None;
    for kind in kinds {
        let c = optimize_kind(kind, n, p, search)?;
        if best.is_none_or(|b| c.estimate.volume < b.estimate.volume) {
            best = Some(c);
        }
    }
    Ok(best)
}

pub fn best_adder<F: Scalar>(
    n: usize,
    p: &VolumeParams<F>,
    place: Place,
    search: BlockSearch,
) -> Result<Choice<F>, CostError> {
    Ok(best_of(AdderKind::of_place(place), n, p, search)?.expect("every place has candidates"))
}

/// Register sizes and factory limits of the published volume columns.
pub const VOLUME_POINTS: [(usize, u64); 3] = [(100, 10), (1000, 100), (10000, 1000)];

/// Published volumes in qubit-seconds at [`VOLUME_POINTS`], rows in
/// [`AdderKind::ALL`] order.
pub const PUBLISHED_VOLUMES: [(AdderKind, [f64; 3]); 14] = [
    (AdderKind::Cuccaro, [3.0, 63.0, 4200.0]),
    (AdderKind::DraperIn, [17.0, 180.0, 1800.0]),
    (AdderKind::GidneyIn, [1.0, 76.0, 6600.0]),
    (AdderKind::MogensenIn, [14.0, 140.0, 1500.0]),
    (AdderKind::ThapliyalIn, [13.0, 130.0, 1300.0]),
    (AdderKind::BlockSqrtIn, [10.0, 96.0, 950.0]),
    (AdderKind::BlockBIn, [9.0, 95.0, 950.0]),
    (AdderKind::GossettOut, [71.0, 6600.0, 660000.0]),
    (AdderKind::DraperOut, [8.0, 91.0, 920.0]),
    (AdderKind::GidneyOut, [1.0, 41.0, 3100.0]),
    (AdderKind::MogensenOut, [19.0, 190.0, 1900.0]),
    (AdderKind::ThapliyalOut, [7.0, 73.0, 730.0]),
    (AdderKind::BlockSqrtOut, [6.0, 63.0, 610.0]),
    (AdderKind::BlockBOut, [6.0, 62.0, 610.0]),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Entry<F> {
    pub kind: AdderKind,
    pub n: usize,
    pub max_factories: u64,
    pub block_size: Option<usize>,
    pub volume: F,
    pub published: f64,
}

impl<F: Scalar> Table1Entry<F> {
    pub fn ratio(&self) -> f64 {
        self.volume.to_f64().unwrap() / self.published
    }
}

/// Model volume next to every published volume entry, rows then columns.
pub fn table1_volumes<F: Scalar>(
    base: &VolumeParams<F>,
    search: BlockSearch,
) -> Result<Vec<Table1Entry<F>>, CostError> {
    let mut out = Vec::new();
    for (kind, published) in PUBLISHED_VOLUMES {
        for ((n, f), published) in VOLUME_POINTS.into_iter().zip(published) {
            let c = optimize_kind(kind, n, &base.with_max_factories(f), search)?;
            out.push(Table1Entry {
                kind,
                n,
                max_factories: f,
                block_size: c.block_size(),
                volume: c.estimate.volume,
                published,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow<F> {
    pub n: usize,
    pub choice: Choice<F>,
}

pub const CURVE_HEADER: &str = "n,kind,place,b,toffolis,depth,workspace,factories_used,duration_s,volume_qs";
pub const HEATMAP_HEADER: &str = "n,f,place,winner_kind,winner_b,winner_volume_qs";

fn opt(b: Option<usize>) -> String {
    b.map(|b| b.to_string()).unwrap_or_default()
}

impl<F: Scalar> CurveRow<F> {
    pub fn csv(&self) -> String {
        let c = &self.choice;
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            c.kind,
            c.kind.place(),
            opt(c.block_size()),
            c.cost.toffolis,
            c.cost.reaction_depth,
            c.cost.workspace,
            c.estimate.factories_used,
            c.estimate.duration,
            c.estimate.volume
        )
    }
}

/// Volume of every kind at every `n`, with `max_factories = max(1, n / 10)`.
/// Rows are ordered by `n`, then table row.
pub fn sweep_curve<F: Scalar>(
    ns: &[usize],
    template: &VolumeParams<F>,
    kinds: &[AdderKind],
    search: BlockSearch,
) -> Result<Vec<CurveRow<F>>, CostError> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut kinds = kinds.to_vec();
    kinds.sort_unstable();
    kinds.dedup();
    let mut rows = Vec::new();
    for n in ns {
        let p = template.with_max_factories((n as u64 / 10).max(1));
        for &kind in &kinds {
            rows.push(CurveRow {
                n,
                choice: optimize_kind(kind, n, &p, search)?,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapCell<F> {
    pub n: usize,
    pub max_factories: u64,
    pub place: Place,
    pub winner: Choice<F>,
}

impl<F: Scalar> HeatmapCell<F> {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.max_factories,
            self.place,
            self.winner.kind,
            opt(self.winner.block_size()),
            self.winner.estimate.volume
        )
    }
}

/// Winning adder for every `(n, f)` pair, ordered by `n` then `f`.
pub fn sweep_heatmap<F: Scalar>(
    ns: &[usize],
    fs: &[u64],
    place: Place,
    template: &VolumeParams<F>,
    search: BlockSearch,
) -> Result<Vec<HeatmapCell<F>>, CostError> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut fs = fs.to_vec();
    fs.sort_unstable();
    fs.dedup();
    let mut cells = Vec::with_capacity(ns.len() * fs.len());
    for &n in &ns {
        for &f in &fs {
            let winner = best_adder(n, &template.with_max_factories(f), place, search)?;
            cells.push(HeatmapCell {
                n,
                max_factories: f,
                place,
                winner,
            });
        }
    }
    Ok(cells)
}
