import numpy as np
import pytest

from maskseq import netpbm
from maskseq.errors import MissingFile, ParseError


def test_pgm_round_trip():
    grid = np.arange(12, dtype=np.uint8).reshape(3, 4)
    assert np.array_equal(netpbm.decode_pgm(netpbm.encode_pgm(grid)), grid)


def test_pgm_encoding_is_canonical():
    grid = np.zeros((2, 3), dtype=np.uint8)
    assert netpbm.encode_pgm(grid) == b"P5\n3 2\n255\n" + b"\x00" * 6


def test_ppm_round_trip():
    pixels = np.arange(24, dtype=np.uint8).reshape(2, 4, 3)
    assert np.array_equal(netpbm.decode_ppm(netpbm.encode_ppm(pixels)), pixels)


def test_decoder_tolerates_comments_and_whitespace():
    data = b"P5 # magic\n# a comment\n 3\t2 # dims\n255\n" + b"\x00" * 6
    assert netpbm.decode_pgm(data).shape == (2, 3)


@pytest.mark.parametrize("data,fragment", [
    (b"P6\n2 2\n255\n" + b"\x00" * 12, "expected P5"),
    (b"P5\n2 2\n254\n" + b"\x00" * 4, "maxval"),
    (b"P5\n2 2\n255\n" + b"\x00" * 3, "truncated"),
    (b"P5\n2 2\n", "truncated netpbm header"),
    (b"P5\n-2 2\n255\n", "unexpected byte"),
])
def test_decode_errors(data, fragment):
    with pytest.raises(ParseError, match=fragment):
        netpbm.decode_pgm(data)


def test_label_grid_rejects_illegal_byte():
    data = netpbm.encode_pgm(np.array([[0, 7]], dtype=np.uint8))
    with pytest.raises(ParseError, match="illegal mask byte 7"):
        netpbm.decode_label_grid(data)


def test_label_grid_accepts_all_codes():
    grid = np.array([[0, 128, 255]], dtype=np.uint8)
    out = netpbm.decode_label_grid(netpbm.encode_pgm(grid))
    assert np.array_equal(out, grid)


def test_file_round_trip(tmp_path):
    grid = np.array([[0, 128], [255, 0]], dtype=np.uint8)
    path = tmp_path / "m.pgm"
    netpbm.write_pgm(path, grid)
    assert np.array_equal(netpbm.read_label_grid(path), grid)


def test_missing_file_names_path(tmp_path):
    with pytest.raises(MissingFile, match="nope.pgm"):
        netpbm.read_pgm(tmp_path / "nope.pgm")
