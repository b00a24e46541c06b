//! Binary PPM (P6) and the planar YCF container.
//!
//! PPM stores 16-bit samples big-endian, YCF stores them little-endian.

use crate::colour::BitDepth;
use crate::error::{parse, structural, Error, Result};
use crate::image::{PlanarImage, Plane, RgbImage, Subsampling};

struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderReader<'a> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\n' | b'\r' | 0x0b | 0x0c => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(parse(start, format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| parse(start, format!("{what} is too large")))
    }
}

/// Decodes a binary P6 pixmap with maxval 255 or 65535.
pub fn read_ppm(bytes: &[u8]) -> Result<RgbImage> {
    if bytes.len() < 2 || &bytes[..2] != b"P6" {
        return Err(parse(0, "bad magic, expected `P6`"));
    }
    let mut rd = HeaderReader { bytes, pos: 2 };
    let width = rd.number("width")? as usize;
    let height = rd.number("height")? as usize;
    let maxval_at = rd.pos;
    let maxval = rd.number("maxval")?;
    let depth = match maxval {
        255 => BitDepth::new(8)?,
        65535 => BitDepth::new(16)?,
        other => return Err(parse(maxval_at, format!("unsupported maxval {other}"))),
    };
    if width == 0 || height == 0 {
        return Err(parse(maxval_at, format!("empty image {width}x{height}")));
    }
    match bytes.get(rd.pos) {
        Some(c) if c.is_ascii_whitespace() => rd.pos += 1,
        _ => return Err(parse(rd.pos, "expected whitespace after maxval")),
    }
    let bps = if depth.bits() == 8 { 1 } else { 2 };
    let expected = width * height * 3 * bps;
    let payload = &bytes[rd.pos..];
    if payload.len() != expected {
        return Err(parse(
            rd.pos,
            format!(
                "payload is {} bytes, expected {expected} for {width}x{height}",
                payload.len()
            ),
        ));
    }
    let pixels: Vec<[u16; 3]> = if bps == 1 {
        payload
            .chunks_exact(3)
            .map(|p| [p[0].into(), p[1].into(), p[2].into()])
            .collect()
    } else {
        payload
            .chunks_exact(6)
            .map(|p| {
                [
                    u16::from_be_bytes([p[0], p[1]]),
                    u16::from_be_bytes([p[2], p[3]]),
                    u16::from_be_bytes([p[4], p[5]]),
                ]
            })
            .collect()
    };
    RgbImage::from_pixels(width, height, depth, &pixels)
}

/// Encodes an 8- or 16-bit image as P6. Comments are never written.
pub fn write_ppm(img: &RgbImage) -> Result<Vec<u8>> {
    let bits = img.depth().bits();
    if bits != 8 && bits != 16 {
        return Err(Error::Domain(format!(
            "PPM holds 8 or 16 bit samples, got {bits}"
        )));
    }
    let (w, h) = (img.width(), img.height());
    let mut out = format!("P6\n{w} {h}\n{}\n", img.depth().max_code()).into_bytes();
    let bps = if bits == 8 { 1 } else { 2 };
    out.reserve(w * h * 3 * bps);
    let [r, g, b] = img.channels();
    for ((&r, &g), &b) in r.data().iter().zip(g.data()).zip(b.data()) {
        for v in [r, g, b] {
            if bps == 1 {
                out.push(v as u8);
            } else {
                out.extend_from_slice(&v.to_be_bytes());
            }
        }
    }
    Ok(out)
}

fn ycf_header(w: usize, h: usize, depth: BitDepth, sub: Subsampling) -> String {
    format!("YCF1 {w} {h} {} {}\n", depth.bits(), sub.token())
}

/// Decodes a YCF file: `YCF1 <width> <height> <depth> <444|422|420>\n`
/// followed by the Y, Cb and Cr planes.
pub fn read_ycf(bytes: &[u8]) -> Result<PlanarImage> {
    if bytes.len() < 5 || &bytes[..5] != b"YCF1 " {
        return Err(parse(0, "bad magic, expected `YCF1 `"));
    }
    let nl = bytes
        .iter()
        .take(128)
        .position(|&c| c == b'\n')
        .ok_or_else(|| parse(0, "header line not terminated"))?;
    let line = std::str::from_utf8(&bytes[..nl])
        .map_err(|e| parse(e.valid_up_to(), "header is not ASCII"))?;
    let tokens: Vec<&str> = line.split(' ').collect();
    if tokens.len() != 5 {
        return Err(parse(
            0,
            format!("header needs 5 fields, found {}", tokens.len()),
        ));
    }
    let num = |i: usize, what: &str| -> Result<usize> {
        let offset = tokens[..i].iter().map(|t| t.len() + 1).sum();
        tokens[i]
            .parse::<usize>()
            .map_err(|_| parse(offset, format!("bad {what} `{}`", tokens[i])))
    };
    let width = num(1, "width")?;
    let height = num(2, "height")?;
    let bits = num(3, "depth")?;
    let depth = u8::try_from(bits)
        .ok()
        .and_then(|b| BitDepth::new(b).ok())
        .ok_or_else(|| parse(0, format!("unsupported depth {bits}")))?;
    let sub = Subsampling::from_token(tokens[4]).ok_or_else(|| {
        parse(
            nl - tokens[4].len(),
            format!("unknown subsampling `{}`", tokens[4]),
        )
    })?;
    if ycf_header(width, height, depth, sub).as_bytes() != &bytes[..=nl] {
        return Err(parse(0, "header is not in canonical form"));
    }
    if width == 0 || height == 0 {
        return Err(structural(format!("empty image {width}x{height}")));
    }
    let (fx, fy) = sub.factors();
    if width % fx != 0 || height % fy != 0 {
        return Err(structural(format!(
            "{width}x{height} does not divide into {sub} chroma blocks"
        )));
    }
    let (cw, ch) = sub.chroma_size(width, height);
    let bps = if depth.bits() == 8 { 1 } else { 2 };
    let expected = (width * height + 2 * cw * ch) * bps;
    let payload = &bytes[nl + 1..];
    if payload.len() != expected {
        return Err(structural(format!(
            "payload is {} bytes, expected {expected} for {width}x{height} {sub} at {} bits",
            payload.len(),
            depth.bits()
        )));
    }
    let decode = |raw: &[u8]| -> Vec<u16> {
        if bps == 1 {
            raw.iter().map(|&b| b.into()).collect()
        } else {
            raw.chunks_exact(2)
                .map(|p| u16::from_le_bytes([p[0], p[1]]))
                .collect()
        }
    };
    let (yb, rest) = payload.split_at(width * height * bps);
    let (cbb, crb) = rest.split_at(cw * ch * bps);
    PlanarImage::new(
        depth,
        sub,
        Plane::new(width, height, decode(yb))?,
        Plane::new(cw, ch, decode(cbb))?,
        Plane::new(cw, ch, decode(crb))?,
    )
}

pub fn write_ycf(img: &PlanarImage) -> Vec<u8> {
    let mut out =
        ycf_header(img.width(), img.height(), img.depth(), img.subsampling()).into_bytes();
    let wide = img.depth().bits() > 8;
    for p in [img.y(), img.cb(), img.cr()] {
        for &v in p.data() {
            if wide {
                out.extend_from_slice(&v.to_le_bytes());
            } else {
                out.push(v as u8);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ppm_single_red_pixel() {
        let img = read_ppm(b"P6\n1 1\n255\n\xff\x00\x00").unwrap();
        assert_eq!(img.pixel(0, 0), [255, 0, 0]);
        assert_eq!(img.depth().bits(), 8);
        assert_eq!(write_ppm(&img).unwrap(), b"P6\n1 1\n255\n\xff\x00\x00");
    }

    #[test]
    fn ppm_comments_and_whitespace() {
        let img = read_ppm(b"P6 # made by hand\n# another\n2   1\t255\n\x01\x02\x03\x04\x05\x06")
            .unwrap();
        assert_eq!(img.pixel(1, 0), [4, 5, 6]);
        assert_eq!(
            write_ppm(&img).unwrap(),
            b"P6\n2 1\n255\n\x01\x02\x03\x04\x05\x06"
        );
    }

    #[test]
    fn ppm_16_bit_is_big_endian() {
        let img = read_ppm(b"P6\n1 1\n65535\n\x01\x02\x00\x00\xff\xff").unwrap();
        assert_eq!(img.pixel(0, 0), [0x0102, 0, 65535]);
        assert_eq!(img.depth().bits(), 16);
    }

    #[test]
    fn ppm_errors() {
        assert!(matches!(
            read_ppm(b"P5\n1 1\n255\n\x00"),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(matches!(
            read_ppm(b"P6\n1 1\n1023\n\x00\x00\x00\x00\x00\x00"),
            Err(Error::Parse { .. })
        ));
        match read_ppm(b"P6\n2 2\n255\n\x00\x00\x00") {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 11);
                assert!(message.contains("expected 12"), "{message}");
                assert!(message.contains("3 bytes"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        assert!(read_ppm(b"P6\nx 1\n255\n").is_err());
        assert!(read_ppm(b"P6\n1 1\n255").is_err());
    }

    #[test]
    fn ycf_dimension_algebra() {
        let y = Plane::new(2, 2, vec![1, 2, 3, 4]).unwrap();
        let c = Plane::filled(1, 1, 128).unwrap();
        let img = PlanarImage::new(
            BitDepth::new(8).unwrap(),
            Subsampling::S420,
            y,
            c.clone(),
            c,
        )
        .unwrap();
        let bytes = write_ycf(&img);
        let header = b"YCF1 2 2 8 420\n";
        assert_eq!(&bytes[..header.len()], header);
        assert_eq!(bytes.len() - header.len(), 4 + 1 + 1);
        assert_eq!(read_ycf(&bytes).unwrap(), img);
    }

    #[test]
    fn ycf_parses_4x4_420() {
        let mut bytes = b"YCF1 4 4 8 420\n".to_vec();
        bytes.extend(std::iter::repeat_n(7u8, 16 + 4 + 4));
        let img = read_ycf(&bytes).unwrap();
        assert_eq!(img.cb().width(), 2);
        assert_eq!(write_ycf(&img), bytes);
        bytes.pop();
        assert!(matches!(read_ycf(&bytes), Err(Error::Structural(_))));
    }

    #[test]
    fn ycf_wide_samples_little_endian() {
        let mut bytes = b"YCF1 1 1 10 444\n".to_vec();
        bytes.extend_from_slice(&[0xff, 0x03, 0x00, 0x02, 0x01, 0x00]);
        let img = read_ycf(&bytes).unwrap();
        assert_eq!(img.y().data(), &[1023]);
        assert_eq!(img.cb().data(), &[512]);
        assert_eq!(img.cr().data(), &[1]);
        assert_eq!(write_ycf(&img), bytes);
        // 0x0400 exceeds the 10-bit range
        let mut bad = b"YCF1 1 1 10 444\n".to_vec();
        bad.extend_from_slice(&[0x00, 0x04, 0, 0, 0, 0]);
        assert!(read_ycf(&bad).is_err());
    }

    #[test]
    fn ycf_header_errors() {
        assert!(matches!(
            read_ycf(b"YCF2 1 1 8 444\n\0\0\0"),
            Err(Error::Parse { .. })
        ));
        assert!(read_ycf(b"YCF1 1 1 8 411\n\0\0\0").is_err());
        assert!(read_ycf(b"YCF1 1 1 7 444\n\0\0\0").is_err());
        assert!(read_ycf(b"YCF1 01 1 8 444\n\0\0\0").is_err());
        assert!(read_ycf(b"YCF1 1  1 8 444\n\0\0\0").is_err());
        assert!(matches!(
            read_ycf(b"YCF1 3 2 8 420\n"),
            Err(Error::Structural(_))
        ));
    }
}
