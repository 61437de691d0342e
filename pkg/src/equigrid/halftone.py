"""Ordered-dither halftoning: PGM input, threshold tiling, PBM output.

A board is tiled over the image as a threshold array.  The ink rule is
exact-integer:  pixel (r, c) with luminance L is ink iff

    (Lmax - L) * m * n  >  A * (Lmax + 1)

where A is the tiled board value.  Pure white (L = Lmax) is never ink,
and per m x n tile of a constant-L image the ink count is exactly
#{A : (Lmax - L) * mn > A * (Lmax + 1)}.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    BadMagic,
    DimensionMismatch,
    MaxvalOutOfRange,
    TruncatedData,
)
from .grid import Board

_WS = b" \t\r\n\x0b\x0c"


@dataclass(frozen=True)
class GrayImage:
    width: int
    height: int
    maxval: int
    pixels: tuple  # row-major, 0..maxval


@dataclass(frozen=True)
class BitImage:
    width: int
    height: int
    bits: tuple  # row-major, 1 = ink (black)


def _header_tokens(data: bytes, count: int):
    """First *count* whitespace-separated header tokens, skipping '#'
    comments; returns (tokens, offset just past the final token)."""
    i, tokens = 0, []
    while len(tokens) < count:
        while i < len(data):
            b = data[i : i + 1]
            if b in _WS:
                i += 1
            elif b == b"#":
                j = data.find(b"\n", i)
                i = len(data) if j < 0 else j + 1
            else:
                break
        start = i
        while i < len(data) and data[i : i + 1] not in _WS and data[i : i + 1] != b"#":
            i += 1
        if start == i:
            raise TruncatedData("header ended early")
        tokens.append(data[start:i])
    return tokens, i


def _ascii_samples(data: bytes):
    stripped = re.sub(rb"#[^\n]*", b"", data)
    return [int(t) for t in stripped.split()]


def read_pgm(data: bytes) -> GrayImage:
    """Parse NetPBM P2 (ASCII) or P5 (binary) grayscale."""
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise BadMagic(f"expected P2 or P5, got {magic!r}")
    tokens, offset = _header_tokens(data, 4)
    width, height, maxval = (int(t) for t in tokens[1:])
    if not (1 <= maxval <= 65535):
        raise MaxvalOutOfRange(f"maxval {maxval} outside 1..65535")
    count = width * height
    if magic == b"P2":
        samples = _ascii_samples(data[offset:])
        if len(samples) < count:
            raise TruncatedData(f"expected {count} samples, got {len(samples)}")
        samples = samples[:count]
    else:
        payload = data[offset + 1 :]  # exactly one whitespace after maxval
        if maxval > 255:
            if len(payload) < 2 * count:
                raise TruncatedData("binary payload too short")
            samples = [
                (payload[2 * i] << 8) | payload[2 * i + 1] for i in range(count)
            ]
        else:
            if len(payload) < count:
                raise TruncatedData("binary payload too short")
            samples = list(payload[:count])
    for s in samples:
        if s > maxval:
            raise ValueError(f"sample {s} exceeds maxval {maxval}")
    return GrayImage(width, height, maxval, tuple(samples))


def dither(image: GrayImage, board: Board) -> BitImage:
    """Threshold the image against the tiled board."""
    m, n = board.m, board.n
    mn = m * n
    lmax1 = image.maxval + 1
    bits = []
    for r in range(image.height):
        brow = r % m
        for c in range(image.width):
            a = board.cell(brow, c % n)
            lum = image.pixels[r * image.width + c]
            bits.append(1 if (image.maxval - lum) * mn > a * lmax1 else 0)
    return BitImage(image.width, image.height, tuple(bits))


def write_pbm(bits: BitImage, mode: str = "P4") -> bytes:
    """Serialize to PBM; 1 = black per the NetPBM convention."""
    w, h = bits.width, bits.height
    header = f"{mode}\n{w} {h}\n".encode()
    if mode == "P1":
        lines = []
        for r in range(h):
            row = "".join(str(b) for b in bits.bits[r * w : (r + 1) * w])
            for i in range(0, len(row), 64):
                lines.append(row[i : i + 64])
        body = "\n".join(lines)
        return header + (body + "\n").encode() if body else header
    if mode == "P4":
        out = bytearray(header)
        stride = (w + 7) // 8
        for r in range(h):
            rowbytes = bytearray(stride)
            for c in range(w):
                if bits.bits[r * w + c]:
                    rowbytes[c // 8] |= 0x80 >> (c % 8)
            out += rowbytes
        return bytes(out)
    raise ValueError(f"mode must be 'P1' or 'P4', got {mode!r}")


def read_pbm(data: bytes) -> BitImage:
    """Parse PBM P1 or P4; inverse of :func:`write_pbm`."""
    magic = data[:2]
    if magic not in (b"P1", b"P4"):
        raise BadMagic(f"expected P1 or P4, got {magic!r}")
    tokens, offset = _header_tokens(data, 3)
    w, h = int(tokens[1]), int(tokens[2])
    count = w * h
    if magic == b"P1":
        stripped = re.sub(rb"#[^\n]*", b"", data[offset:])
        digits = [int(ch) for ch in stripped.decode("ascii") if ch in "01"]
        if len(digits) < count:
            raise TruncatedData(f"expected {count} bits, got {len(digits)}")
        return BitImage(w, h, tuple(digits[:count]))
    payload = data[offset + 1 :] if count else b""
    stride = (w + 7) // 8
    if len(payload) < stride * h:
        raise TruncatedData("binary payload too short")
    bits = []
    for r in range(h):
        row = payload[r * stride : (r + 1) * stride]
        for c in range(w):
            bits.append((row[c // 8] >> (7 - c % 8)) & 1)
    return BitImage(w, h, tuple(bits))


def window_uniformity(bits: BitImage, k: int, l: int):
    """(min, max) ink count over all toroidal k x l windows of a bit
    image that is exactly one threshold tile."""
    h, w = bits.height, bits.width
    if not (1 <= k <= h) or not (1 <= l <= w):
        raise DimensionMismatch(f"window {k}x{l} does not fit {h}x{w} tile")
    # vertical strips then horizontal slide, as in the region-sum table
    strip = [[0] * w for _ in range(h)]
    for c in range(w):
        s = sum(bits.bits[((r) % h) * w + c] for r in range(k))
        strip[0][c] = s
        for r in range(1, h):
            s += bits.bits[((r + k - 1) % h) * w + c] - bits.bits[(r - 1) * w + c]
            strip[r][c] = s
    lo = hi = None
    for r in range(h):
        row = strip[r]
        s = sum(row[:l])
        for c in range(w):
            if c:
                s += row[(c + l - 1) % w] - row[c - 1]
            lo = s if lo is None or s < lo else lo
            hi = s if hi is None or s > hi else hi
    return lo, hi


__all__ = [
    "GrayImage",
    "BitImage",
    "read_pgm",
    "dither",
    "write_pbm",
    "read_pbm",
    "window_uniformity",
]
