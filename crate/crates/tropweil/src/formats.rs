//! JSON file formats: chains, polygons, λ files and sublattice specs.
//! Schemas live in `docs/schemas/`.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use tropweil_core::chains::{validate_cell, Cell, Chain};
use tropweil_core::multilinear::{GpVector, G2Vector, T_DIM};
use tropweil_core::obstruction::assemble::LAMBDA1_SLOTS;
use tropweil_core::obstruction::{Lambda, SublatticeSpec};
use tropweil_core::{BigInt, BigRational};

use crate::matrix_text::{format_rational, parse_rational};

/// A rational in JSON: an integer literal or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Rat(BigRational::from_integer(n.into()))),
            Raw::Str(s) => parse_rational(s.trim())
                .map(Rat)
                .ok_or_else(|| serde::de::Error::custom(format!("'{s}' is not a rational (expected n or p/q)"))),
        }
    }
}

fn rats<const N: usize>(v: &[Rat], what: &str) -> Result<[BigRational; N]> {
    if v.len() != N {
        bail!("{what} must have {N} entries, found {}", v.len());
    }
    Ok(core::array::from_fn(|i| v[i].0.clone()))
}

fn to_rats(v: &[BigRational]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

fn gp_from(v: &[i64], what: &str) -> Result<GpVector> {
    if v.len() != 4 {
        bail!("{what} must have 4 entries, found {}", v.len());
    }
    Ok(core::array::from_fn(|i| BigInt::from(v[i])))
}

fn gp_to(v: &GpVector) -> Result<Vec<i64>> {
    v.iter().map(|x| i64::try_from(x).map_err(|_| anyhow::anyhow!("Γp coordinate does not fit in i64"))).collect()
}

fn one() -> Rat {
    Rat(BigRational::from_integer(1.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum CellJson {
    Triangle {
        x: Vec<Rat>,
        s: Vec<i64>,
        u: Vec<Rat>,
        v: Vec<Rat>,
        #[serde(default = "one")]
        weight: Rat,
    },
    Parallelogram {
        x: Vec<Rat>,
        s: Vec<i64>,
        t: Vec<i64>,
        u: Vec<Rat>,
        v: Vec<Rat>,
        #[serde(default = "one")]
        weight: Rat,
    },
}

impl CellJson {
    pub fn to_cell(&self) -> Result<Cell> {
        let x16 = |x: &[Rat]| -> Result<Vec<BigRational>> { Ok(rats::<16>(x, "x")?.to_vec()) };
        let g2 = |v: &[Rat], w: &str| -> Result<G2Vector> { rats::<4>(v, w) };
        let cell = match self {
            CellJson::Triangle { x, s, u, v, weight } => {
                Cell::triangle(x16(x)?, gp_from(s, "s")?, g2(u, "u")?, g2(v, "v")?, weight.0.clone())
            }
            CellJson::Parallelogram { x, s, t, u, v, weight } => Cell::parallelogram(
                x16(x)?,
                gp_from(s, "s")?,
                gp_from(t, "t")?,
                g2(u, "u")?,
                g2(v, "v")?,
                weight.0.clone(),
            ),
        };
        validate_cell(&cell).map_err(|e| anyhow::anyhow!("{e}"))?;
        Ok(cell)
    }

    pub fn from_cell(c: &Cell) -> Result<Self> {
        Ok(match c {
            Cell::Triangle(t) => CellJson::Triangle {
                x: to_rats(&t.x),
                s: gp_to(&t.s)?,
                u: to_rats(&t.u),
                v: to_rats(&t.v),
                weight: Rat(t.weight.clone()),
            },
            Cell::Parallelogram(p) => CellJson::Parallelogram {
                x: to_rats(&p.x),
                s: gp_to(&p.s)?,
                t: gp_to(&p.t)?,
                u: to_rats(&p.u),
                v: to_rats(&p.v),
                weight: Rat(p.weight.clone()),
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub d: i64,
    pub cells: Vec<CellJson>,
}

fn check_d(d: i64) -> Result<()> {
    if d < 1 {
        bail!("d must be a positive integer, found {d}");
    }
    Ok(())
}

impl ChainFile {
    pub fn to_chain(&self) -> Result<Chain> {
        check_d(self.d)?;
        let mut ch = Chain::new(self.d);
        for (i, c) in self.cells.iter().enumerate() {
            ch.push(c.to_cell().with_context(|| format!("cell {i}"))?);
        }
        Ok(ch)
    }

    pub fn from_chain(c: &Chain) -> Result<Self> {
        Ok(ChainFile { d: c.d, cells: c.cells.iter().map(CellJson::from_cell).collect::<Result<_>>()? })
    }
}

/// Either one chain object or an array of them.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ChainList {
    One(ChainFile),
    Many(Vec<ChainFile>),
}

impl ChainList {
    pub fn into_chains(self) -> Result<Vec<Chain>> {
        let files = match self {
            ChainList::One(c) => vec![c],
            ChainList::Many(v) => v,
        };
        files.iter().enumerate().map(|(i, f)| f.to_chain().with_context(|| format!("chain {i}"))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonFile {
    pub d: i64,
    /// Closed loop of lifts in Γ2⊗Γp ⊗ ℚ, 16 coordinates each.
    pub vertices: Vec<Vec<Rat>>,
}

impl PolygonFile {
    pub fn vertices(&self) -> Result<Vec<Vec<BigRational>>> {
        check_d(self.d)?;
        if self.vertices.len() < 3 {
            bail!("a polygon needs at least 3 vertices");
        }
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| Ok(rats::<16>(v, &format!("vertex {i}"))?.to_vec()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaEntry {
    /// `((x·4 + q)·4 + m)·6 + w`.
    pub slot: usize,
    /// Coordinate in T.
    pub t: usize,
    pub value: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaFile {
    pub d: i64,
    pub entries: Vec<LambdaEntry>,
}

impl LambdaFile {
    pub fn to_lambda(&self) -> Result<Lambda> {
        check_d(self.d)?;
        let mut values: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
        for (i, e) in self.entries.iter().enumerate() {
            if e.slot >= LAMBDA1_SLOTS || e.t >= T_DIM {
                bail!("entry {i}: slot {} / coordinate {} out of range ({LAMBDA1_SLOTS} slots, {T_DIM} coordinates)", e.slot, e.t);
            }
            if values.entry(e.slot).or_default().insert(e.t, e.value.0.clone()).is_some() {
                bail!("entry {i}: duplicate (slot {}, t {})", e.slot, e.t);
            }
        }
        for v in values.values_mut() {
            v.retain(|_, x| !x.is_zero());
        }
        values.retain(|_, v| !v.is_empty());
        Lambda::new(self.d, values).map_err(|e| anyhow::anyhow!("{e}"))
    }

    pub fn from_lambda(l: &Lambda) -> Self {
        let entries = l
            .values
            .iter()
            .flat_map(|(&slot, v)| v.iter().map(move |(&t, x)| LambdaEntry { slot, t, value: Rat(x.clone()) }))
            .collect();
        LambdaFile { d: l.d, entries }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SublatticeFile {
    /// Generators in (θ, w1, w2)-coordinates.
    pub generators: Vec<Vec<Rat>>,
}

impl SublatticeFile {
    pub fn to_spec(&self) -> Result<SublatticeSpec> {
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| rats::<3>(g, &format!("generator {i}")))
            .collect::<Result<Vec<_>>>()?;
        let spec = SublatticeSpec::new(gens);
        spec.check_in_w().map_err(|e| anyhow::anyhow!("{e}"))?;
        Ok(spec)
    }

    pub fn from_spec(s: &SublatticeSpec) -> Self {
        SublatticeFile { generators: s.gens.iter().map(|g| to_rats(g)).collect() }
    }
}

/// `--mod` argument: `w`, `theta`, `0`, or a path to a sublattice file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModSpec {
    pub name: String,
    pub lattice: SublatticeSpec,
}

impl ModSpec {
    pub fn parse(arg: &str) -> Result<Self> {
        let lattice = match arg {
            "w" | "W" => SublatticeSpec::w(),
            "theta" => SublatticeSpec::theta(),
            "0" | "zero" => SublatticeSpec::zero(),
            path => {
                let f: SublatticeFile = read_json(Path::new(path))?;
                f.to_spec().with_context(|| format!("sublattice file {path}"))?
            }
        };
        Ok(ModSpec { name: arg.to_string(), lattice })
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}
