//! `.pwf` container: a JSON header followed by raw little-endian `f64` data.
//!
//! Byte layout:
//!
//! ```text
//! b"\x93PWF"            magic
//! u32 (LE)              header length in bytes
//! header                UTF-8 JSON object
//! payload               f64 (LE) values; complex numbers interleaved (re, im)
//! ```
//!
//! Vector fields are component-major (all x components, then y, then z),
//! each plane in row-major C order over the grid. Real field pairs store the
//! three E planes followed by the three B planes.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::fields::{ComplexVectorField, Grid3, Helicity, RealFieldPair, Space, Units};
use crate::normalization::{MomentumAmplitude, WeightChoice};
use crate::wigner::{Grid1, TransverseState, TwoPhotonState, WignerGrid};

pub const MAGIC: [u8; 4] = *b"\x93PWF";
pub const SCHEMA_VERSION: u32 = 1;
pub const LAYOUT: &str = "component-major row-major C order";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Field,
    RealFields,
    Amplitude,
    Transverse,
    TwoPhoton,
    Wigner,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WignerAxes {
    pub xs: Vec<Vec<f64>>,
    pub ps: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub schema_version: u32,
    pub kind: Kind,
    pub dims: Vec<usize>,
    pub lengths: Vec<f64>,
    pub time: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub helicity: Option<Helicity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<Space>,
    pub units: Units,
    pub dtype: String,
    pub layout: String,
    pub complex: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wigner_axes: Option<WignerAxes>,
    #[serde(default)]
    pub metadata: Map<String, Value>,
}

impl Header {
    fn new(kind: Kind, dims: Vec<usize>, lengths: Vec<f64>, units: Units, complex: bool) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind,
            dims,
            lengths,
            time: 0.0,
            helicity: None,
            space: None,
            units,
            dtype: "f64".into(),
            layout: LAYOUT.into(),
            complex,
            weight: None,
            wigner_axes: None,
            metadata: Map::new(),
        }
    }

    fn components(&self) -> usize {
        match self.kind {
            Kind::Field | Kind::Amplitude => 3,
            Kind::RealFields => 6,
            Kind::Transverse | Kind::TwoPhoton | Kind::Wigner => 1,
        }
    }

    /// Number of `f64` values the payload must hold.
    pub fn payload_len(&self) -> usize {
        let points: usize = self.dims.iter().product();
        points * self.components() * if self.complex { 2 } else { 1 }
    }

    fn grid3(&self) -> Result<Grid3> {
        match (self.dims.as_slice(), self.lengths.as_slice()) {
            ([a, b, c], [la, lb, lc]) => Grid3::new([*a, *b, *c], [*la, *lb, *lc]),
            _ => Err(Error::Format("expected three dims and three lengths".into())),
        }
    }

    fn axes1(&self) -> Result<Vec<Grid1>> {
        if self.dims.len() != self.lengths.len() || self.dims.is_empty() {
            return Err(Error::Format("dims and lengths disagree".into()));
        }
        self.dims
            .iter()
            .zip(&self.lengths)
            .map(|(&n, &l)| Grid1::new(n, l))
            .collect()
    }

    fn expect(&self, kind: Kind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Format(format!("expected a {kind:?} record, found {:?}", self.kind)));
        }
        Ok(())
    }
}

/// A decoded `.pwf` file.
#[derive(Clone, Debug, PartialEq)]
pub struct PwfFile {
    pub header: Header,
    pub payload: Vec<f64>,
}

/// Typed contents of a `.pwf` file.
#[derive(Clone, Debug)]
pub enum Record {
    Field(ComplexVectorField),
    RealFields(RealFieldPair),
    Amplitude(MomentumAmplitude, Option<WeightChoice>),
    Transverse(TransverseState),
    TwoPhoton(TwoPhotonState),
    Wigner(WignerGrid),
}

fn interleave(values: &[Complex64]) -> Vec<f64> {
    values.iter().flat_map(|z| [z.re, z.im]).collect()
}

fn deinterleave(values: &[f64]) -> Vec<Complex64> {
    values.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

impl PwfFile {
    pub fn read(reader: &mut impl Read) -> Result<Self> {
        let mut magic = [0u8; 4];
        reader.read_exact(&mut magic)?;
        if magic != MAGIC {
            return Err(Error::Format("bad magic, not a .pwf file".into()));
        }
        let mut len = [0u8; 4];
        reader.read_exact(&mut len)?;
        let mut text = vec![0u8; u32::from_le_bytes(len) as usize];
        reader.read_exact(&mut text)?;
        let header: Header = serde_json::from_slice(&text)?;
        if header.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "unsupported schema version {}",
                header.schema_version
            )));
        }
        if header.dtype != "f64" {
            return Err(Error::Format(format!("unsupported dtype {}", header.dtype)));
        }
        let count = header.payload_len();
        let mut bytes = Vec::new();
        reader.read_to_end(&mut bytes)?;
        if bytes.len() != 8 * count {
            return Err(Error::Format(format!(
                "payload holds {} bytes, header promises {}",
                bytes.len(),
                8 * count
            )));
        }
        let payload = bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
            .collect();
        Ok(Self { header, payload })
    }

    pub fn write(&self, writer: &mut impl Write) -> Result<()> {
        if self.payload.len() != self.header.payload_len() {
            return Err(Error::Format("payload length does not match header".into()));
        }
        let text = serde_json::to_vec(&self.header)?;
        let len = u32::try_from(text.len()).map_err(|_| Error::Format("header too large".into()))?;
        writer.write_all(&MAGIC)?;
        writer.write_all(&len.to_le_bytes())?;
        writer.write_all(&text)?;
        for v in &self.payload {
            writer.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::read(&mut BufReader::new(File::open(path)?))
    }

    pub fn write_path(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.header.metadata.insert(key.into(), value.into());
        self
    }

    pub fn from_field(psi: &ComplexVectorField) -> Self {
        let g = psi.grid();
        let mut header = Header::new(Kind::Field, g.dims().to_vec(), g.lengths().to_vec(), psi.units(), true);
        header.time = psi.time();
        header.helicity = Some(psi.helicity());
        header.space = Some(psi.space());
        Self {
            header,
            payload: interleave(psi.data()),
        }
    }

    pub fn from_real_fields(pair: &RealFieldPair) -> Self {
        let g = pair.grid();
        let mut header = Header::new(Kind::RealFields, g.dims().to_vec(), g.lengths().to_vec(), pair.units(), false);
        header.time = pair.time();
        header.space = Some(Space::Coordinate);
        let payload = pair.e_field().iter().chain(pair.b_field()).copied().collect();
        Self { header, payload }
    }

    pub fn from_amplitude(amp: &MomentumAmplitude, weight: Option<WeightChoice>) -> Self {
        let g = amp.grid();
        let mut header = Header::new(Kind::Amplitude, g.dims().to_vec(), g.lengths().to_vec(), amp.units(), true);
        header.helicity = Some(amp.helicity());
        header.space = Some(Space::Momentum);
        header.weight = weight;
        Self {
            header,
            payload: interleave(amp.data()),
        }
    }

    pub fn from_transverse(state: &TransverseState) -> Self {
        Self::transverse_like(state, Kind::Transverse)
    }

    pub fn from_two_photon(state: &TwoPhotonState) -> Self {
        Self::transverse_like(state.as_transverse(), Kind::TwoPhoton)
    }

    fn transverse_like(state: &TransverseState, kind: Kind) -> Self {
        let units = Units::new(state.hbar(), 1.0).expect("state hbar is positive");
        let header = Header::new(
            kind,
            state.dims(),
            state.axes().iter().map(Grid1::length).collect(),
            units,
            true,
        );
        Self {
            header,
            payload: interleave(state.amplitude()),
        }
    }

    pub fn from_wigner(w: &WignerGrid) -> Self {
        let units = Units::new(w.hbar(), 1.0).expect("wigner hbar is positive");
        let xs: Vec<Vec<f64>> = (0..w.ndim()).map(|a| w.xs(a).to_vec()).collect();
        let ps: Vec<Vec<f64>> = (0..w.ndim()).map(|a| w.ps(a).to_vec()).collect();
        let lengths = xs
            .iter()
            .map(|x| x.len() as f64 * (x[1] - x[0]))
            .collect();
        let mut header = Header::new(Kind::Wigner, w.shape(), lengths, units, false);
        header.wigner_axes = Some(WignerAxes { xs, ps });
        Self {
            header,
            payload: w.values().to_vec(),
        }
    }

    pub fn decode(&self) -> Result<Record> {
        let h = &self.header;
        match h.kind {
            Kind::Field => Ok(Record::Field(self.to_field()?)),
            Kind::RealFields => {
                let grid = h.grid3()?;
                let half = self.payload.len() / 2;
                let mut pair = RealFieldPair::from_data(
                    grid,
                    h.units,
                    self.payload[..half].to_vec(),
                    self.payload[half..].to_vec(),
                )?;
                pair.set_time(h.time);
                Ok(Record::RealFields(pair))
            }
            Kind::Amplitude => {
                let amp = MomentumAmplitude::from_data(
                    h.grid3()?,
                    h.units,
                    h.helicity.unwrap_or(Helicity::Positive),
                    deinterleave(&self.payload),
                )?;
                Ok(Record::Amplitude(amp, h.weight))
            }
            Kind::Transverse => Ok(Record::Transverse(self.to_transverse()?)),
            Kind::TwoPhoton => Ok(Record::TwoPhoton(TwoPhotonState::new(self.transverse_payload()?)?)),
            Kind::Wigner => {
                let axes = h
                    .wigner_axes
                    .clone()
                    .ok_or_else(|| Error::Format("wigner record without axes".into()))?;
                Ok(Record::Wigner(WignerGrid::from_parts(
                    axes.xs,
                    axes.ps,
                    self.payload.clone(),
                    h.units.hbar(),
                )?))
            }
        }
    }

    pub fn to_field(&self) -> Result<ComplexVectorField> {
        let h = &self.header;
        h.expect(Kind::Field)?;
        let psi = ComplexVectorField::from_data(
            h.grid3()?,
            h.units,
            deinterleave(&self.payload),
            h.helicity.unwrap_or(Helicity::Positive),
            h.space.unwrap_or(Space::Coordinate),
        )?;
        Ok(psi.with_time(h.time))
    }

    pub fn to_transverse(&self) -> Result<TransverseState> {
        self.header.expect(Kind::Transverse)?;
        self.transverse_payload()
    }

    fn transverse_payload(&self) -> Result<TransverseState> {
        TransverseState::new(self.header.axes1()?, self.header.units.hbar(), deinterleave(&self.payload))
    }
}
