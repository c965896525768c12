import numpy as np
import pytest

from fftsim import Frame2d, InputError, Q15
from fftsim.frame_io import (CSV_COMPLEX, MAGNITUDE_CSV, PGM, RAW, InputSpec, load_frame,
                             load_vector, read_pgm, store_spectrum, store_vector, write_pgm)

from conftest import random_complex


@pytest.mark.parametrize("binary", [True, False])
def test_pgm_all_max(tmp_path, binary):
    path = tmp_path / "img.pgm"
    write_pgm(path, np.full((8, 8), 255), 255, binary=binary)
    f = load_frame(InputSpec(path, PGM))
    assert f.n == 8
    assert np.array_equal(f.data, np.full((8, 8), 0.5 + 0j))


def test_pgm_sixteen_bit(tmp_path):
    path = tmp_path / "img.pgm"
    px = np.arange(16).reshape(4, 4) * 4000
    write_pgm(path, px, 65535)
    pixels, maxval = read_pgm(path)
    assert maxval == 65535 and np.array_equal(pixels, px)
    f = load_frame(InputSpec(path, PGM, RAW))
    assert np.array_equal(f.data.real, px)


def test_pgm_comments(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P2\n# made by hand\n2 2\n# max\n10\n0 10\n5 # mid\n10\n")
    pixels, maxval = read_pgm(path)
    assert maxval == 10
    assert pixels.tolist() == [[0, 10], [5, 10]]


def test_pgm_non_square(tmp_path):
    path = tmp_path / "r.pgm"
    write_pgm(path, np.zeros((7, 8)), 255)
    with pytest.raises(InputError, match="non-square"):
        load_frame(InputSpec(path, PGM))


def test_pgm_non_power_of_two(tmp_path):
    path = tmp_path / "r.pgm"
    write_pgm(path, np.zeros((6, 6)), 255, binary=False)
    with pytest.raises(InputError, match="power of two"):
        load_frame(InputSpec(path, PGM))


def test_pgm_pixel_above_maxval(tmp_path):
    path = tmp_path / "bad.pgm"
    path.write_bytes(b"P2 2 2 100 0 1 2 101\n")
    with pytest.raises(InputError, match="row 1, column 1"):
        read_pgm(path)


@pytest.mark.parametrize("content", [b"P6 2 2 255\n", b"P2 2 x 255\n", b"P5 2 2 255\n\x00"])
def test_pgm_malformed(tmp_path, content):
    path = tmp_path / "m.pgm"
    path.write_bytes(content)
    with pytest.raises(InputError):
        read_pgm(path)


def test_csv_zero_frame(tmp_path):
    path = tmp_path / "z.csv"
    path.write_text("4\n" + "0,0\n" * 16)
    f = load_frame(InputSpec(path, CSV_COMPLEX))
    assert np.array_equal(f.data, np.zeros((4, 4)))


@pytest.mark.parametrize("body,msg", [
    ("4\n" + "0,0\n" * 15, "expected 16"),
    ("x\n0,0\n", "line 1"),
    ("2\n0,0\n0,0\n1;2\n0,0\n", "line 4"),
    ("2\n0,0\n0,0\nfoo,2\n0,0\n", "line 4"),
])
def test_csv_malformed(tmp_path, body, msg):
    path = tmp_path / "m.csv"
    path.write_text(body)
    with pytest.raises(InputError, match=msg):
        load_frame(InputSpec(path, CSV_COMPLEX))


def test_csv_out_of_range_in_fixed_mode(tmp_path):
    path = tmp_path / "big.csv"
    path.write_text("2\n0,0\n0,0\n0,1.5\n0,0\n")
    with pytest.raises(InputError, match="row 1, column 0"):
        load_frame(InputSpec(path, CSV_COMPLEX), Q15)
    assert load_frame(InputSpec(path, CSV_COMPLEX)).data[1, 0] == 1.5j


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        load_frame(InputSpec(tmp_path / "nope.pgm"))


def test_round_trip_real_imag(tmp_path, rng):
    frame = Frame2d(random_complex(rng, (8, 8), amp=3.0) * np.pi)
    path = tmp_path / "s.csv"
    store_spectrum(frame, path)
    back = load_frame(InputSpec(path, CSV_COMPLEX))
    assert np.array_equal(back.data, frame.data)


def test_magnitude_layout(tmp_path):
    path = tmp_path / "m.csv"
    store_spectrum(Frame2d(np.zeros((4, 4))), path, MAGNITUDE_CSV)
    assert np.array_equal(np.loadtxt(path, delimiter=","), np.zeros((4, 4)))
    store_spectrum(Frame2d(np.ones((4, 4))), path, MAGNITUDE_CSV)
    assert path.read_text().splitlines()[0] == "1,1,1,1"
    store_spectrum(Frame2d(np.full((2, 2), 3 + 4j) / 7), path, MAGNITUDE_CSV)
    assert path.read_text().splitlines()[0] == "0.714285714,0.714285714"


def test_vector_round_trip(tmp_path, rng):
    x = random_complex(rng, 16)
    path = tmp_path / "v.csv"
    store_vector(x, path)
    assert np.array_equal(load_vector(path), x)


def test_unwritable(tmp_path):
    with pytest.raises(OSError):
        store_spectrum(Frame2d(np.zeros((2, 2))), tmp_path / "missing" / "x.csv")
