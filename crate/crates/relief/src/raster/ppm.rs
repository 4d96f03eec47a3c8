//! Binary PPM (P6) reader and writer, maxval 255 only.

use super::{RasterError, TextureImage};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// Skips whitespace and `#` comments, then reads one ASCII integer.
    fn header_int(&mut self) -> Result<u64, RasterError> {
        loop {
            match self.bytes.get(self.pos) {
                Some(b) if b.is_ascii_whitespace() => self.pos += 1,
                Some(b'#') => {
                    while let Some(&b) = self.bytes.get(self.pos) {
                        self.pos += 1;
                        if b == b'\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(RasterError::MalformedImageHeader { offset: start });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(RasterError::MalformedImageHeader { offset: start })
    }
}

pub fn read_ppm(source: &[u8]) -> Result<TextureImage, RasterError> {
    if source.len() < 2 || &source[..2] != b"P6" {
        let found = String::from_utf8_lossy(&source[..source.len().min(2)]).into_owned();
        return Err(RasterError::BadMagic { found });
    }
    let mut cur = Cursor {
        bytes: source,
        pos: 2,
    };
    let width = cur.header_int()?;
    let height = cur.header_int()?;
    let maxval = cur.header_int()?;
    if maxval != 255 {
        return Err(RasterError::UnsupportedMaxval { maxval });
    }
    // exactly one whitespace byte separates the header from pixel data
    match source.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => return Err(RasterError::MalformedImageHeader { offset: cur.pos }),
    }
    let expected = (width as usize)
        .checked_mul(height as usize)
        .and_then(|n| n.checked_mul(3))
        .ok_or(RasterError::MalformedImageHeader { offset: 2 })?;
    let found = source.len() - cur.pos;
    if found < expected {
        return Err(RasterError::TruncatedPixelData { expected, found });
    }
    Ok(TextureImage {
        width: width as usize,
        height: height as usize,
        pixels: source[cur.pos..cur.pos + expected].to_vec(),
    })
}

pub fn write_ppm(image: &TextureImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", image.width, image.height).into_bytes();
    out.extend_from_slice(&image.pixels);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn red_pixel() -> Vec<u8> {
        let mut bytes = b"P6\n1 1\n255\n".to_vec();
        bytes.extend_from_slice(&[255, 0, 0]);
        bytes
    }

    #[test]
    fn one_red_pixel() {
        let img = read_ppm(&red_pixel()).unwrap();
        assert_eq!((img.width, img.height), (1, 1));
        assert_eq!(img.pixels, vec![255, 0, 0]);
    }

    #[test]
    fn ascii_variant_rejected() {
        let err = read_ppm(b"P3\n1 1\n255\n1 2 3").unwrap_err();
        assert_eq!(
            err,
            RasterError::BadMagic {
                found: "P3".to_string()
            }
        );
    }

    #[test]
    fn truncated_pixels_counted() {
        let mut bytes = b"P6\n2 1\n255\n".to_vec();
        bytes.extend_from_slice(&[1, 2, 3, 4, 5]);
        assert_eq!(
            read_ppm(&bytes).unwrap_err(),
            RasterError::TruncatedPixelData {
                expected: 6,
                found: 5
            }
        );
    }

    #[test]
    fn maxval_other_than_255_rejected() {
        let err = read_ppm(b"P6\n1 1\n65535\n\0\0\0\0\0\0").unwrap_err();
        assert_eq!(err, RasterError::UnsupportedMaxval { maxval: 65535 });
    }

    #[test]
    fn header_comments_allowed() {
        let mut bytes = b"P6\n# made by hand\n2 # width then height\n1\n255\n".to_vec();
        bytes.extend_from_slice(&[0, 0, 0, 9, 9, 9]);
        let img = read_ppm(&bytes).unwrap();
        assert_eq!((img.width, img.height), (2, 1));
        assert_eq!(img.pixels, vec![0, 0, 0, 9, 9, 9]);
    }

    #[test]
    fn write_then_read_is_identity() {
        let img = TextureImage::new(2, 2, (0..12).collect());
        assert_eq!(read_ppm(&write_ppm(&img)).unwrap(), img);
    }

    #[test]
    fn written_header_is_canonical() {
        let img = TextureImage::new(1, 1, vec![255, 0, 0]);
        assert_eq!(write_ppm(&img), red_pixel());
    }

    #[test]
    fn empty_input_is_bad_magic() {
        assert!(matches!(read_ppm(b""), Err(RasterError::BadMagic { .. })));
    }
}
