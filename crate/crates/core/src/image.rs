//! 8-bit grayscale images and binary PGM (P5) I/O.

use std::io::{Read, Write};

use crate::error::{Error, Result};

/// Row-major 8-bit grayscale pixel buffer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl std::fmt::Debug for GrayImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GrayImage")
            .field("width", &self.width)
            .field("height", &self.height)
            .finish_non_exhaustive()
    }
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        let expected = width * height;
        if pixels.len() != expected {
            return Err(Error::PixelCount {
                expected,
                actual: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Uniform image with every pixel set to `value`.
    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                pixels.push(f(row, col));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    /// Same dimensions, new pixel content.
    pub fn with_pixels(&self, pixels: Vec<u8>) -> Result<Self> {
        Self::new(self.width, self.height, pixels)
    }

    /// The block ciphers tile the image with 2x2 blocks.
    pub fn ensure_even(&self) -> Result<()> {
        if !self.width.is_multiple_of(2) || !self.height.is_multiple_of(2) {
            return Err(Error::OddDimensions {
                width: self.width,
                height: self.height,
            });
        }
        Ok(())
    }

    pub fn same_shape(&self, other: &GrayImage) -> Result<()> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::DimensionMismatch {
                left_width: self.width,
                left_height: self.height,
                right_width: other.width,
                right_height: other.height,
            });
        }
        Ok(())
    }

    /// Parses a binary PGM (P5) with maxval 255.
    pub fn read_pgm(mut reader: impl Read) -> Result<Self> {
        let mut data = Vec::new();
        reader.read_to_end(&mut data)?;
        Self::decode_pgm(&data)
    }

    pub fn decode_pgm(data: &[u8]) -> Result<Self> {
        let mut pos = 0;
        let magic = next_token(data, &mut pos)?;
        if magic != b"P5" {
            return Err(Error::parse("PGM", "only binary P5 images are supported"));
        }
        let width = parse_header_number(data, &mut pos, "width")?;
        let height = parse_header_number(data, &mut pos, "height")?;
        let maxval = parse_header_number(data, &mut pos, "maxval")?;
        if maxval != 255 {
            return Err(Error::parse(
                "PGM",
                format!("maxval must be 255, got {maxval}"),
            ));
        }
        // exactly one whitespace byte separates the header from the raster
        if pos >= data.len() || !data[pos].is_ascii_whitespace() {
            return Err(Error::parse("PGM", "missing raster separator"));
        }
        pos += 1;
        let needed = width
            .checked_mul(height)
            .ok_or_else(|| Error::parse("PGM", "dimensions overflow"))?;
        let raster = &data[pos..];
        if raster.len() < needed {
            return Err(Error::parse(
                "PGM",
                format!("raster holds {} bytes, expected {needed}", raster.len()),
            ));
        }
        Self::new(width, height, raster[..needed].to_vec())
    }

    pub fn write_pgm(&self, mut writer: impl Write) -> Result<()> {
        writer.write_all(&self.encode_pgm())?;
        Ok(())
    }

    pub fn encode_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }
}

fn skip_whitespace_and_comments(data: &[u8], pos: &mut usize) {
    while *pos < data.len() {
        match data[*pos] {
            b'#' => {
                while *pos < data.len() && data[*pos] != b'\n' {
                    *pos += 1;
                }
            }
            c if c.is_ascii_whitespace() => *pos += 1,
            _ => break,
        }
    }
}

fn next_token<'a>(data: &'a [u8], pos: &mut usize) -> Result<&'a [u8]> {
    skip_whitespace_and_comments(data, pos);
    let start = *pos;
    while *pos < data.len() && !data[*pos].is_ascii_whitespace() && data[*pos] != b'#' {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::parse("PGM", "truncated header"));
    }
    Ok(&data[start..*pos])
}

fn parse_header_number(data: &[u8], pos: &mut usize, field: &str) -> Result<usize> {
    let token = next_token(data, pos)?;
    std::str::from_utf8(token)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse("PGM", format!("invalid {field}")))
}
