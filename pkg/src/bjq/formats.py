"""File formats: PSF1 phase-space arrays, OPM1 operators, and CSV tables."""

import io
import logging
from pathlib import Path

import numpy as np

from bjq.core.errors import FormatError
from bjq.models.gabor import GaborCoefficients
from bjq.models.grid import Grid, PhaseGrid, PhaseSpaceArray, Signal
from bjq.models.operator import OperatorMatrix, SingularSpectrum

logger = logging.getLogger(__name__)

PSF_MAGIC = b"PSF1"
OPM_MAGIC = b"OPM1"

PSF_HEADER = np.dtype(
    [
        ("magic", "S4"),
        ("nx", "<u4"),
        ("nxi", "<u4"),
        ("x0", "<f8"),
        ("dx", "<f8"),
        ("xi0", "<f8"),
        ("dxi", "<f8"),
    ]
)
OPM_HEADER = np.dtype([("magic", "S4"), ("n", "<u4"), ("x0", "<f8"), ("dx", "<f8")])
COMPLEX_LE = np.dtype("<c16")
FLOAT_LE = np.dtype("<f8")

FLOAT_FORMAT = "%.17g"


def _grid_from_header(n: int, origin: float, spacing: float, offset: int) -> Grid:
    try:
        grid = Grid(int(n), float(spacing))
    except ValueError as e:
        raise FormatError(str(e), offset) from e
    if not np.isclose(grid.origin, origin, rtol=1e-12, atol=1e-300):
        raise FormatError(f"grid origin {origin!r} is not centered for N={n}, dx={spacing}", offset)
    return grid


def _read_payload(data: bytes, header_dtype: np.dtype, magic: bytes, count_of) -> tuple:
    if len(data) < len(magic) or data[: len(magic)] != magic:
        raise FormatError(f"bad magic, expected {magic.decode()}", 0)
    if len(data) < header_dtype.itemsize:
        raise FormatError("file truncated inside the header", len(data))
    header = np.frombuffer(data, dtype=header_dtype, count=1)[0]
    count = count_of(header)
    expected = header_dtype.itemsize + count * COMPLEX_LE.itemsize
    if len(data) < expected:
        raise FormatError(f"file truncated: {expected} bytes expected", len(data))
    if len(data) > expected:
        raise FormatError("trailing bytes after payload", expected)
    payload = np.frombuffer(data, dtype=COMPLEX_LE, count=count, offset=header_dtype.itemsize)
    parts = payload.view(FLOAT_LE)
    finite = np.isfinite(parts)
    if not finite.all():
        first = int(np.argmin(finite))
        raise FormatError(
            f"non-finite value in element {first // 2}",
            header_dtype.itemsize + first * FLOAT_LE.itemsize,
        )
    return header, payload.astype(np.complex128)


def _read_header(path: Path, header_dtype: np.dtype, magic: bytes):
    with open(path, "rb") as handle:
        data = handle.read(header_dtype.itemsize)
    if data[: len(magic)] != magic:
        raise FormatError(f"bad magic, expected {magic.decode()}", 0)
    if len(data) < header_dtype.itemsize:
        raise FormatError("file truncated inside the header", len(data))
    return np.frombuffer(data, dtype=header_dtype, count=1)[0]


def encode_psf(a: PhaseSpaceArray) -> bytes:
    grid = a.grid
    header = np.zeros(1, dtype=PSF_HEADER)
    header[0] = (
        PSF_MAGIC,
        grid.x_grid.n_points,
        grid.xi_grid.n_points,
        grid.x_grid.origin,
        grid.x_grid.spacing,
        grid.xi_grid.origin,
        grid.xi_grid.spacing,
    )
    return header.tobytes() + np.ascontiguousarray(a.values, dtype=COMPLEX_LE).tobytes()


def decode_psf(data: bytes) -> PhaseSpaceArray:
    """
    Parse a PSF1 buffer.

    Raises:
        FormatError: On bad magic, truncation, an uncentered grid or a non-finite value,
            with the byte offset
    """
    header, payload = _read_payload(
        data, PSF_HEADER, PSF_MAGIC, lambda h: int(h["nx"]) * int(h["nxi"])
    )
    x_grid = _grid_from_header(header["nx"], header["x0"], header["dx"], 8)
    xi_grid = _grid_from_header(header["nxi"], header["xi0"], header["dxi"], 24)
    return PhaseSpaceArray(PhaseGrid(x_grid, xi_grid), payload.reshape(x_grid.n_points, -1))


def encode_opm(matrix: OperatorMatrix) -> bytes:
    grid = matrix.grid
    header = np.zeros(1, dtype=OPM_HEADER)
    header[0] = (OPM_MAGIC, grid.n_points, grid.origin, grid.spacing)
    return header.tobytes() + np.ascontiguousarray(matrix.values, dtype=COMPLEX_LE).tobytes()


def decode_opm(data: bytes) -> OperatorMatrix:
    """
    Parse an OPM1 buffer.

    Raises:
        FormatError: On bad magic, truncation, an uncentered grid or a non-finite value,
            with the byte offset
    """
    header, payload = _read_payload(data, OPM_HEADER, OPM_MAGIC, lambda h: int(h["n"]) ** 2)
    grid = _grid_from_header(header["n"], header["x0"], header["dx"], 8)
    return OperatorMatrix(grid, payload.reshape(grid.n_points, grid.n_points))


def write_psf(path: Path, a: PhaseSpaceArray) -> None:
    Path(path).write_bytes(encode_psf(a))
    logger.debug(f"wrote PSF1 {path} with shape {a.grid.shape}")


def read_psf(path: Path) -> PhaseSpaceArray:
    return decode_psf(Path(path).read_bytes())


def read_psf_grid(path: Path) -> PhaseGrid:
    """Phase grid of a PSF1 file from its header alone."""
    header = _read_header(path, PSF_HEADER, PSF_MAGIC)
    return PhaseGrid(
        _grid_from_header(header["nx"], header["x0"], header["dx"], 8),
        _grid_from_header(header["nxi"], header["xi0"], header["dxi"], 24),
    )


def write_opm(path: Path, matrix: OperatorMatrix) -> None:
    Path(path).write_bytes(encode_opm(matrix))
    logger.debug(f"wrote OPM1 {path} with N={matrix.grid.n_points}")


def read_opm(path: Path) -> OperatorMatrix:
    return decode_opm(Path(path).read_bytes())


def read_opm_grid(path: Path) -> Grid:
    """Signal grid of an OPM1 file from its header alone."""
    header = _read_header(path, OPM_HEADER, OPM_MAGIC)
    return _grid_from_header(header["n"], header["x0"], header["dx"], 8)


def _table_to_text(header: str, columns: list[np.ndarray], formats: list[str]) -> str:
    buffer = io.StringIO()
    np.savetxt(
        buffer,
        np.column_stack(columns),
        fmt=formats,
        delimiter=",",
        header=header,
        comments="",
    )
    return buffer.getvalue()


def encode_signal_csv(f: Signal) -> str:
    return _table_to_text(
        "x,re,im", [f.grid.points, f.values.real, f.values.imag], [FLOAT_FORMAT] * 3
    )


def decode_signal_csv(text: str) -> Signal:
    """
    Parse `x,re,im` rows into a Signal on the centered grid they describe.

    Raises:
        FormatError: On a wrong header, malformed rows or non-uniform positions
    """
    lines = text.splitlines()
    if not lines or lines[0].strip().replace(" ", "") != "x,re,im":
        raise FormatError("signal CSV must start with the header x,re,im", 0)
    try:
        table = np.loadtxt(io.StringIO(text), delimiter=",", skiprows=1, ndmin=2)
    except ValueError as e:
        raise FormatError(f"malformed signal CSV row: {e}", len(lines[0]) + 1) from e
    if table.shape[1] != 3 or table.shape[0] < 2:
        raise FormatError("signal CSV needs three columns and at least two rows", len(lines[0]) + 1)
    x = table[:, 0]
    spacing = float((x[-1] - x[0]) / (x.size - 1))
    try:
        grid = Grid(table.shape[0], spacing)
    except ValueError as e:
        raise FormatError(str(e), len(lines[0]) + 1) from e
    if not np.allclose(x, grid.points, rtol=0, atol=1e-9 * grid.half_width):
        raise FormatError("signal CSV positions are not a centered uniform grid", len(lines[0]) + 1)
    return Signal(grid, table[:, 1] + 1j * table[:, 2])


def write_signal_csv(path: Path, f: Signal) -> None:
    Path(path).write_text(encode_signal_csv(f))


def read_signal_csv(path: Path) -> Signal:
    return decode_signal_csv(Path(path).read_text())


def write_spectrum_csv(path: Path, s: SingularSpectrum) -> None:
    text = _table_to_text(
        "index,sigma", [np.arange(len(s)), s.values], ["%d", FLOAT_FORMAT]
    )
    Path(path).write_text(text)


def write_coefficients_csv(path: Path, c: GaborCoefficients) -> None:
    """Rows jx,jxi,kx,kxi,re,im with lattice indices counted from the origin."""
    size = c.lattice.size
    indices = np.indices(c.values.shape).reshape(4, -1) - size // 2
    flat = c.values.reshape(-1)
    text = _table_to_text(
        "jx,jxi,kx,kxi,re,im",
        [*indices, flat.real, flat.imag],
        ["%d"] * 4 + [FLOAT_FORMAT] * 2,
    )
    Path(path).write_text(text)


def write_report_csv(path: Path, rows: list[tuple[str, object]]) -> None:
    lines = ["key,value"]
    for key, value in rows:
        if isinstance(value, float):
            value = format(value, ".17g")
        lines.append(f"{key},{value}")
    Path(path).write_text("\n".join(lines) + "\n")
