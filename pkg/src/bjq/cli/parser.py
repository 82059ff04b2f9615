"""Argument parser for the bjq command line."""

import argparse
from pathlib import Path

from bjq import __version__
from bjq.schemas.run_config import Command


def _float_list(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _add_quadrature(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--nodes", type=int, help="Gauss-Legendre nodes on [0, 1] (default 33)")
    parser.add_argument("--oversample", type=int, help="zero-padding factor for off-grid samples")


def _add_cutoff(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--cutoff",
        type=float,
        help="Gaussian cutoff width as a fraction of the half-width, 0 disables (default 0.25)",
    )


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per Command member."""
    parser = argparse.ArgumentParser(
        prog="bjq", description="Born-Jordan quantization and time-frequency numerics"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser(Command.TRANSFORM.value, help="STFT, tau-Wigner or Born-Jordan distribution")
    p.add_argument("--kind", choices=["stft", "wigner", "bj"], default="wigner")
    p.add_argument("--tau", type=float, help="tau for --kind wigner (default 0.5)")
    _add_quadrature(p)
    p.add_argument("--input", type=Path, required=True, help="signal CSV (x,re,im)")
    p.add_argument("--window", type=Path, help="STFT window CSV, Gaussian by default")
    p.add_argument("--out", type=Path, required=True, help="output PSF1 file")

    p = sub.add_parser(Command.QUANTIZE.value, help="operator matrix of a symbol")
    p.add_argument("--scheme", choices=["weyl", "kn", "shubin", "bj"], default="weyl")
    p.add_argument("--tau", type=float, help="t for --scheme shubin (default 0.5)")
    _add_quadrature(p)
    p.add_argument("--symbol", type=Path, required=True, help="symbol PSF1 file")
    _add_cutoff(p)
    p.add_argument("--out", type=Path, required=True, help="output OPM1 file")

    p = sub.add_parser(Command.APPLY.value, help="apply an operator to a signal")
    p.add_argument("--operator", type=Path, required=True, help="operator OPM1 file")
    p.add_argument("--input", type=Path, required=True, help="signal CSV")
    p.add_argument("--out", type=Path, required=True, help="output signal CSV")

    p = sub.add_parser(Command.CONVERT.value, help="Weyl symbol of a Born-Jordan operator")
    p.add_argument(
        "--method", choices=["multiplier", "quadrature", "expansion"], default="multiplier"
    )
    p.add_argument("--order", type=int, help="expansion truncation order (default 4)")
    p.add_argument("--nodes", type=int, help="Gauss-Legendre nodes for --method quadrature")
    p.add_argument("--symbol", type=Path, required=True, help="Born-Jordan symbol PSF1 file")
    _add_cutoff(p)
    p.add_argument("--out", type=Path, required=True, help="output Weyl symbol PSF1 file")

    p = sub.add_parser(Command.SCHATTEN.value, help="Schatten norm and singular-value decay")
    p.add_argument("--operator", type=Path, required=True, help="operator OPM1 file")
    p.add_argument("--p", type=float, help="Schatten exponent, inf allowed (default 2)")
    p.add_argument("--out", type=Path, help="singular values CSV (index,sigma)")

    p = sub.add_parser(Command.GABOR_NORM.value, help="weighted modulation-space norm of a symbol")
    p.add_argument("--symbol", type=Path, required=True, help="symbol PSF1 on the self-dual grid")
    p.add_argument("--p", type=float, help="inner exponent over translations (default 2)")
    p.add_argument("--q", type=float, help="outer exponent over modulations (default 2)")
    p.add_argument("--s", type=float, help="weight order (default 0)")
    p.add_argument("--dump", type=Path, help="coefficient CSV (jx,jxi,kx,kxi,re,im)")

    p = sub.add_parser(Command.SEMINORM.value, help="Hormander-class seminorm field")
    p.add_argument("--symbol", type=Path, required=True, help="symbol PSF1 file")
    p.add_argument("--metric", choices=["shubin", "hormander", "sg"], default="shubin")
    p.add_argument("--rho", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--k", type=int, help="seminorm order 0..6 (default 2)")
    p.add_argument("--out", type=Path, help="seminorm field PSF1 file")

    p = sub.add_parser(
        Command.REMAINDER_ORDER.value, help="decay rate of the truncated expansion under dilation"
    )
    p.add_argument("--symbol", type=Path, help="symbol PSF1 file, Gaussian bump by default")
    p.add_argument("--order", type=int, help="even truncation order (default 4)")
    p.add_argument("--lambdas", type=_float_list, help="dilation factors (default 2,4,8)")
    p.add_argument("--out", type=Path, help="report CSV")

    p = sub.add_parser(Command.GHOST_DEMO.value, help="two-tone interference demo")
    p.add_argument("--omega1", type=float)
    p.add_argument("--omega2", type=float)
    p.add_argument("--sigma", type=_positive_float)
    p.add_argument("--n", type=int, default=512, help="grid size (default 512)")
    p.add_argument("--dx", type=_positive_float)
    p.add_argument("--nodes", type=int)
    p.add_argument("--out-dir", dest="out_dir", type=Path, required=True)

    sub.add_parser(Command.SELFCHECK.value, help="run the invariant suite")
    return parser
