//! Sample grids and planar image containers.

use std::fmt;

use crate::colour::BitDepth;
use crate::error::{structural, Result};

/// A row-major grid of samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane<T = u16> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

impl<T: Copy> Plane<T> {
    pub fn new(width: usize, height: usize, data: Vec<T>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(structural(format!(
                "plane must be non-empty, got {width}x{height}"
            )));
        }
        if data.len() != width * height {
            return Err(structural(format!(
                "plane {width}x{height} needs {} samples, got {}",
                width * height,
                data.len()
            )));
        }
        Ok(Plane {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: T) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> T,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: T) {
        self.data[y * self.width + x] = value;
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, T> {
        self.data.chunks_exact(self.width)
    }

    pub fn map<U: Copy>(&self, f: impl FnMut(T) -> U) -> Plane<U> {
        Plane {
            width: self.width,
            height: self.height,
            data: self.data.iter().copied().map(f).collect(),
        }
    }

    pub fn same_size<U>(&self, other: &Plane<U>) -> bool {
        self.width == other.width && self.height == other.height
    }
}

/// Chroma subsampling layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsampling {
    S444,
    S422,
    S420,
}

impl Subsampling {
    /// Horizontal and vertical chroma decimation factors.
    pub fn factors(self) -> (usize, usize) {
        match self {
            Subsampling::S444 => (1, 1),
            Subsampling::S422 => (2, 1),
            Subsampling::S420 => (2, 2),
        }
    }

    pub fn chroma_size(self, width: usize, height: usize) -> (usize, usize) {
        let (fx, fy) = self.factors();
        (width / fx, height / fy)
    }

    pub fn token(self) -> &'static str {
        match self {
            Subsampling::S444 => "444",
            Subsampling::S422 => "422",
            Subsampling::S420 => "420",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        match token {
            "444" => Some(Subsampling::S444),
            "422" => Some(Subsampling::S422),
            "420" => Some(Subsampling::S420),
            _ => None,
        }
    }
}

impl fmt::Display for Subsampling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "4:{}:{}", &self.token()[1..2], &self.token()[2..3])
    }
}

/// Which plane of a Y'CbCr image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaneKind {
    Y,
    Cb,
    Cr,
}

impl PlaneKind {
    pub const ALL: [PlaneKind; 3] = [PlaneKind::Y, PlaneKind::Cb, PlaneKind::Cr];

    pub fn is_chroma(self) -> bool {
        self != PlaneKind::Y
    }

    pub fn name(self) -> &'static str {
        match self {
            PlaneKind::Y => "y",
            PlaneKind::Cb => "cb",
            PlaneKind::Cr => "cr",
        }
    }
}

/// A Y'CbCr image with integer code values in its three planes.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarImage {
    width: usize,
    height: usize,
    depth: BitDepth,
    subsampling: Subsampling,
    y: Plane,
    cb: Plane,
    cr: Plane,
}

impl PlanarImage {
    pub fn new(
        depth: BitDepth,
        subsampling: Subsampling,
        y: Plane,
        cb: Plane,
        cr: Plane,
    ) -> Result<Self> {
        let (width, height) = (y.width(), y.height());
        let (fx, fy) = subsampling.factors();
        if width % fx != 0 || height % fy != 0 {
            return Err(structural(format!(
                "{width}x{height} is not divisible for {subsampling} subsampling"
            )));
        }
        let (cw, ch) = subsampling.chroma_size(width, height);
        for (name, p) in [("cb", &cb), ("cr", &cr)] {
            if p.width() != cw || p.height() != ch {
                return Err(structural(format!(
                    "{name} plane is {}x{}, expected {cw}x{ch} for {subsampling}",
                    p.width(),
                    p.height()
                )));
            }
        }
        let max = depth.max_code();
        for (name, p) in [("y", &y), ("cb", &cb), ("cr", &cr)] {
            if let Some(bad) = p.data().iter().find(|&&v| u32::from(v) > max) {
                return Err(structural(format!(
                    "{name} sample {bad} exceeds {max} at {} bits",
                    depth.bits()
                )));
            }
        }
        Ok(PlanarImage {
            width,
            height,
            depth,
            subsampling,
            y,
            cb,
            cr,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn depth(&self) -> BitDepth {
        self.depth
    }

    pub fn subsampling(&self) -> Subsampling {
        self.subsampling
    }

    pub fn plane(&self, kind: PlaneKind) -> &Plane {
        match kind {
            PlaneKind::Y => &self.y,
            PlaneKind::Cb => &self.cb,
            PlaneKind::Cr => &self.cr,
        }
    }

    pub fn y(&self) -> &Plane {
        &self.y
    }

    pub fn cb(&self) -> &Plane {
        &self.cb
    }

    pub fn cr(&self) -> &Plane {
        &self.cr
    }

    /// Replaces one plane, keeping the layout invariants.
    pub fn with_plane(&self, kind: PlaneKind, plane: Plane) -> Result<Self> {
        let (mut y, mut cb, mut cr) = (self.y.clone(), self.cb.clone(), self.cr.clone());
        match kind {
            PlaneKind::Y => y = plane,
            PlaneKind::Cb => cb = plane,
            PlaneKind::Cr => cr = plane,
        }
        PlanarImage::new(self.depth, self.subsampling, y, cb, cr)
    }

    pub fn into_planes(self) -> (Plane, Plane, Plane) {
        (self.y, self.cb, self.cr)
    }
}

/// An R'G'B' image stored as three full-resolution planes.
#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage {
    depth: BitDepth,
    r: Plane,
    g: Plane,
    b: Plane,
}

impl RgbImage {
    pub fn new(depth: BitDepth, r: Plane, g: Plane, b: Plane) -> Result<Self> {
        if !r.same_size(&g) || !r.same_size(&b) {
            return Err(structural("R, G and B planes differ in size"));
        }
        let max = depth.max_code();
        for p in [&r, &g, &b] {
            if let Some(bad) = p.data().iter().find(|&&v| u32::from(v) > max) {
                return Err(structural(format!(
                    "sample {bad} exceeds {max} at {} bits",
                    depth.bits()
                )));
            }
        }
        Ok(RgbImage { depth, r, g, b })
    }

    /// Builds an image from interleaved `[r, g, b]` pixels.
    pub fn from_pixels(
        width: usize,
        height: usize,
        depth: BitDepth,
        pixels: &[[u16; 3]],
    ) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(structural(format!(
                "{width}x{height} image needs {} pixels, got {}",
                width * height,
                pixels.len()
            )));
        }
        let channel = |c: usize| Plane::new(width, height, pixels.iter().map(|p| p[c]).collect());
        RgbImage::new(depth, channel(0)?, channel(1)?, channel(2)?)
    }

    pub fn width(&self) -> usize {
        self.r.width()
    }

    pub fn height(&self) -> usize {
        self.r.height()
    }

    pub fn depth(&self) -> BitDepth {
        self.depth
    }

    pub fn r(&self) -> &Plane {
        &self.r
    }

    pub fn g(&self) -> &Plane {
        &self.g
    }

    pub fn b(&self) -> &Plane {
        &self.b
    }

    pub fn pixel(&self, x: usize, y: usize) -> [u16; 3] {
        [self.r.get(x, y), self.g.get(x, y), self.b.get(x, y)]
    }

    pub fn channels(&self) -> [&Plane; 3] {
        [&self.r, &self.g, &self.b]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d8() -> BitDepth {
        BitDepth::new(8).unwrap()
    }

    #[test]
    fn plane_shape_checked() {
        assert!(Plane::new(2, 2, vec![0u16; 3]).is_err());
        assert!(Plane::<u16>::new(0, 2, vec![]).is_err());
        let p = Plane::from_fn(3, 2, |x, y| (x + 10 * y) as u16).unwrap();
        assert_eq!(p.get(2, 1), 12);
        assert_eq!(p.rows().count(), 2);
    }

    #[test]
    fn chroma_dimension_algebra() {
        let y = Plane::filled(4, 4, 0u16).unwrap();
        let c = Plane::filled(2, 2, 128u16).unwrap();
        let img =
            PlanarImage::new(d8(), Subsampling::S420, y.clone(), c.clone(), c.clone()).unwrap();
        assert_eq!(img.cb().len() * 4, img.y().len());
        let c422 = Plane::filled(2, 4, 128u16).unwrap();
        let img = PlanarImage::new(d8(), Subsampling::S422, y.clone(), c422.clone(), c422).unwrap();
        assert_eq!(img.cr().len() * 2, img.y().len());
        assert!(PlanarImage::new(d8(), Subsampling::S444, y, c.clone(), c).is_err());
    }

    #[test]
    fn odd_dimensions_rejected_for_subsampled_layouts() {
        let y = Plane::filled(3, 2, 0u16).unwrap();
        let c = Plane::filled(1, 1, 0u16).unwrap();
        assert!(matches!(
            PlanarImage::new(d8(), Subsampling::S420, y, c.clone(), c),
            Err(crate::Error::Structural(_))
        ));
    }

    #[test]
    fn samples_above_depth_rejected() {
        let y = Plane::filled(1, 1, 256u16).unwrap();
        let c = Plane::filled(1, 1, 0u16).unwrap();
        assert!(PlanarImage::new(d8(), Subsampling::S444, y, c.clone(), c).is_err());
    }

    #[test]
    fn subsampling_tokens() {
        for s in [Subsampling::S444, Subsampling::S422, Subsampling::S420] {
            assert_eq!(Subsampling::from_token(s.token()), Some(s));
        }
        assert_eq!(Subsampling::S420.to_string(), "4:2:0");
        assert_eq!(Subsampling::from_token("411"), None);
    }
}
