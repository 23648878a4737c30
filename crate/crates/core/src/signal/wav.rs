//! RIFF/WAVE reading (PCM16, float32; mono or stereo) and canonical PCM16 writing.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::num::Real;

use super::AudioBuffer;

const FORMAT_PCM: u16 = 0x0001;
const FORMAT_FLOAT: u16 = 0x0003;
const FORMAT_EXTENSIBLE: u16 = 0xFFFE;

/// Reads a WAV file, downmixing stereo by channel average.
pub fn load_wav<T: Real>(path: impl AsRef<Path>) -> Result<AudioBuffer<T>> {
    let bytes = fs::read(path)?;
    decode_wav(&bytes)
}

/// Writes 16-bit PCM mono with the canonical 44-byte header.
pub fn save_wav<T: Real>(audio: &AudioBuffer<T>, path: impl AsRef<Path>) -> Result<()> {
    let bytes = encode_wav(audio)?;
    fs::write(path, bytes)?;
    Ok(())
}

struct Fmt {
    tag: u16,
    channels: u16,
    sample_rate: u32,
    bits: u16,
}

pub fn decode_wav<T: Real>(bytes: &[u8]) -> Result<AudioBuffer<T>> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(Error::Format("missing RIFF/WAVE signature".into()));
    }
    let mut fmt = None;
    let mut data = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32_le(&bytes[pos + 4..pos + 8]) as usize;
        let body_start = pos + 8;
        // streaming writers sometimes leave the size unset; take what exists
        let body_end = body_start.saturating_add(size).min(bytes.len());
        let body = &bytes[body_start..body_end];
        match id {
            b"fmt " => fmt = Some(parse_fmt(body)?),
            b"data" => data = Some(body),
            _ => {}
        }
        pos = body_start.saturating_add(size).saturating_add(size & 1);
    }
    let fmt = fmt.ok_or_else(|| Error::Format("no fmt chunk".into()))?;
    let data = data.ok_or_else(|| Error::Format("no data chunk".into()))?;

    if fmt.channels == 0 || fmt.channels > 2 {
        return Err(Error::Format(format!("{} channels", fmt.channels)));
    }
    if fmt.sample_rate == 0 {
        return Err(Error::Format("zero sample rate".into()));
    }
    let channels = usize::from(fmt.channels);
    let interleaved: Vec<f64> = match (fmt.tag, fmt.bits) {
        (FORMAT_PCM, 16) => data
            .chunks_exact(2)
            .map(|b| f64::from(i16::from_le_bytes([b[0], b[1]])) / 32768.0)
            .collect(),
        (FORMAT_FLOAT, 32) => data
            .chunks_exact(4)
            .map(|b| f64::from(f32::from_le_bytes([b[0], b[1], b[2], b[3]])))
            .collect(),
        (tag, bits) => return Err(Error::UnsupportedFormat { tag, bits }),
    };
    let mono: Vec<T> = interleaved
        .chunks_exact(channels)
        .map(|frame| T::lit(frame.iter().sum::<f64>() / channels as f64))
        .collect();
    AudioBuffer::from_clipped(mono, fmt.sample_rate)
}

fn parse_fmt(body: &[u8]) -> Result<Fmt> {
    if body.len() < 16 {
        return Err(Error::Format(format!("fmt chunk of {} bytes", body.len())));
    }
    let mut tag = u16_le(&body[0..2]);
    let bits = u16_le(&body[14..16]);
    if tag == FORMAT_EXTENSIBLE {
        // sub-format GUID starts at offset 24; its first two bytes carry the tag
        if body.len() < 26 {
            return Err(Error::Format("truncated WAVE_FORMAT_EXTENSIBLE".into()));
        }
        tag = u16_le(&body[24..26]);
    }
    Ok(Fmt {
        tag,
        channels: u16_le(&body[2..4]),
        sample_rate: u32_le(&body[4..8]),
        bits,
    })
}

pub fn encode_wav<T: Real>(audio: &AudioBuffer<T>) -> Result<Vec<u8>> {
    if audio.is_empty() {
        return Err(Error::Precondition("cannot write an empty buffer".into()));
    }
    let data_len = u32::try_from(audio.len() * 2)
        .ok()
        .filter(|n| *n <= u32::MAX - 36)
        .ok_or_else(|| Error::Precondition("buffer too long for RIFF".into()))?;
    let sr = audio.sample_rate();
    let mut out = Vec::with_capacity(44 + data_len as usize);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&FORMAT_PCM.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&sr.to_le_bytes());
    out.extend_from_slice(&(sr * 2).to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes());
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len.to_le_bytes());
    for &s in audio.samples() {
        out.extend_from_slice(&quantize(s.as_f64()).to_le_bytes());
    }
    Ok(out)
}

/// Maps `[-1, 1]` onto i16 with step 1/32768; +1.0 saturates at 32767.
fn quantize(s: f64) -> i16 {
    (s * 32768.0).round().clamp(-32768.0, 32767.0) as i16
}

fn u16_le(b: &[u8]) -> u16 {
    u16::from_le_bytes([b[0], b[1]])
}

fn u32_le(b: &[u8]) -> u32 {
    u32::from_le_bytes([b[0], b[1], b[2], b[3]])
}
