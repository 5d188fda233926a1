"""Validated experiment settings built from a parsed config file."""

from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .configparser import ConfigParser
from .errors import ConfigError

# Sections every experiment config must contain
REQUIRED_SECTIONS = ["experiment", "model", "hamiltonian", "spectrum"]

DEFAULT_BETAS = {"start": -2.0, "stop": 2.0, "num": 21}
DEFAULT_ALPHAS = [-1.0, -0.5, 0.0, 0.5, 1.0]
DEFAULT_TAUS = {"start": -2.0, "stop": 2.0, "num": 21}
DEFAULT_XS = {"start": -4.0, "stop": 4.0, "num": 161}


class Experiment(str, Enum):
    """Experiments the runner knows."""

    BULK = "bulk"
    INTERFACE = "interface"
    MEASURES = "measures"
    PROPAGATOR = "propagator"
    LOCALIZATION = "localization"
    DECAY = "decay"
    ORACLE = "oracle"


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to run one experiment deterministically."""

    experiment: Experiment
    output_dir: Path
    seed: int
    model: str
    chart_radius: float
    hamiltonian: str
    hamiltonian_params: dict
    energies: tuple
    ks: tuple
    mode: str
    truncation: int
    anchor: complex
    tau: float
    betas: np.ndarray = field(repr=False)
    alphas: np.ndarray = field(repr=False)
    taus: np.ndarray = field(repr=False)
    xs: np.ndarray = field(repr=False)
    n_points: int = 50
    n_radial: int = 0
    n_angular: int = 0
    kernel: str = "Fejer"
    epsilon: float = 0.5
    width_scale: float = 1.0
    margin: float = 0.2

    @property
    def E(self):
        """The first energy threshold."""
        return self.energies[0]

    def echo(self):
        """Return the settings as JSON-compatible values."""
        echo = asdict(self)
        for key, value in echo.items():
            if isinstance(value, np.ndarray):
                echo[key] = value.tolist()
            elif isinstance(value, Enum):
                echo[key] = value.value
            elif isinstance(value, Path):
                echo[key] = str(value)
            elif isinstance(value, complex):
                echo[key] = [value.real, value.imag]
            elif isinstance(value, tuple):
                echo[key] = list(value)
        return echo

    @classmethod
    def from_file(cls, fp):
        """Read and validate a config file.

        Args:
            fp (str or Path): path to the TOML config file

        Returns:
            ExperimentConfig: validated settings

        """
        return cls.from_parser(ConfigParser(fp))

    @classmethod
    def from_parser(cls, parser):
        """Validate the sections of a parsed config file.

        Args:
            parser (ConfigParser): parsed config

        Returns:
            ExperimentConfig: validated settings

        """
        parser.get_section(REQUIRED_SECTIONS)
        experiment = parser.get_section("experiment")
        model = parser.get_section("model")
        hamiltonian = dict(parser.get_section("hamiltonian"))
        spectrum = parser.get_section("spectrum")
        grids = parser.get_section("grids", default={})
        quadrature = parser.get_section("quadrature", default={})
        smoothing = parser.get_section("smoothing", default={})

        try:
            name = Experiment(_required(experiment, "name"))
        except ValueError:
            raise ConfigError(
                "name",
                "unknown experiment `{0}`; choose one of {1}".format(
                    experiment["name"], ", ".join(e.value for e in Experiment)
                ),
            ) from None

        kind = _required(model, "kind")
        if kind not in ("BargmannFock", "FubiniStudyCP1"):
            raise ConfigError("kind", "model must be BargmannFock or FubiniStudyCP1")
        chart_radius = model.get("chart_radius")
        if chart_radius is not None:
            chart_radius = _positive(chart_radius, "chart_radius")

        label = _required(hamiltonian, "label")
        params = {key: value for key, value in hamiltonian.items() if key != "label"}
        _check_hamiltonian(kind, chart_radius, label, params)

        energies = _energies(_required(spectrum, "E"))
        ks = _ks(_required(spectrum, "ks"))
        mode = spectrum.get("mode", "Kostant")
        if mode not in ("Kostant", "Multiplication"):
            raise ConfigError("mode", "mode must be Kostant or Multiplication")
        truncation = spectrum.get("truncation")
        if truncation is not None:
            truncation = _positive_int(truncation, "truncation")
            if truncation < 4 * ks[-1]:
                raise ConfigError(
                    "truncation", "must be at least 4k = {0}".format(4 * ks[-1])
                )

        return cls(
            experiment=name,
            output_dir=Path(experiment.get("output_dir", "results")),
            seed=_int(experiment.get("seed", 0), "seed"),
            model=kind,
            chart_radius=chart_radius,
            hamiltonian=label,
            hamiltonian_params=params,
            energies=energies,
            ks=ks,
            mode=mode,
            truncation=truncation,
            anchor=_point(spectrum.get("anchor", [0.7, 0.2]), "anchor"),
            tau=_finite(spectrum.get("tau", 0.0), "tau"),
            betas=_grid(grids.get("betas", DEFAULT_BETAS), "betas"),
            alphas=_grid(grids.get("alphas", DEFAULT_ALPHAS), "alphas"),
            taus=_grid(grids.get("taus", DEFAULT_TAUS), "taus"),
            xs=_grid(grids.get("xs", DEFAULT_XS), "xs"),
            n_points=_positive_int(experiment.get("n_points", 50), "n_points"),
            n_radial=_nonnegative_int(quadrature.get("n_radial", 0), "n_radial"),
            n_angular=_nonnegative_int(quadrature.get("n_angular", 0), "n_angular"),
            kernel=_kernel(smoothing.get("kind", "Fejer")),
            epsilon=_positive(smoothing.get("epsilon", 0.5), "epsilon"),
            width_scale=_positive(smoothing.get("width_scale", 1.0), "width_scale"),
            margin=_positive(spectrum.get("margin", 0.2), "margin"),
        )


## Field validation


def _required(section, key):
    if key not in section:
        raise ConfigError(key, "required field is missing")
    return section[key]


def _finite(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(name, "expected a number, got {0!r}".format(value))
    if not np.isfinite(value):
        raise ConfigError(name, "must be finite")
    return float(value)


def _positive(value, name):
    value = _finite(value, name)
    if value <= 0:
        raise ConfigError(name, "must be positive")
    return value


def _int(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(name, "expected an integer, got {0!r}".format(value))
    return value


def _positive_int(value, name):
    if _int(value, name) < 1:
        raise ConfigError(name, "must be a positive integer")
    return value


def _nonnegative_int(value, name):
    if _int(value, name) < 0:
        raise ConfigError(name, "must be zero (default) or a positive integer")
    return value


def _ks(value):
    if not isinstance(value, list) or len(value) == 0:
        raise ConfigError("ks", "must be a nonempty list of tensor powers")
    ks = tuple(_positive_int(k, "ks") for k in value)
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ConfigError("ks", "must be strictly increasing")
    return ks


def _energies(value):
    values = value if isinstance(value, list) else [value]
    if len(values) == 0:
        raise ConfigError("E", "needs at least one energy")
    return tuple(_finite(v, "E") for v in values)


def _point(value, name):
    if not isinstance(value, list) or len(value) != 2:
        raise ConfigError(name, "expected [real, imaginary]")
    return complex(_finite(value[0], name), _finite(value[1], name))


def _grid(value, name):
    """Return a grid given as a list or as {start, stop, num}."""
    if isinstance(value, dict):
        missing = [key for key in ("start", "stop", "num") if key not in value]
        if missing:
            raise ConfigError(name, "grid table is missing " + ", ".join(missing))
        grid = np.linspace(
            _finite(value["start"], name),
            _finite(value["stop"], name),
            _positive_int(value["num"], name),
        )
    elif isinstance(value, list) and len(value) > 0:
        grid = np.array([_finite(v, name) for v in value])
    else:
        raise ConfigError(name, "expected a nonempty list or {start, stop, num}")
    if np.any(np.diff(grid) < 0):
        raise ConfigError(name, "grid must be sorted")
    return grid


def _kernel(value):
    if value not in ("Fejer", "Gaussian"):
        raise ConfigError("kind", "smoothing kernel must be Fejer or Gaussian")
    return value


def _check_hamiltonian(kind, chart_radius, label, params):
    # Deferred to keep _core free of import cycles with geometry
    from bergmanlab.geometry import make_hamiltonian, make_model

    try:
        make_hamiltonian(label, make_model(kind, chart_radius), **params)
    except KeyError as err:
        raise ConfigError("label", str(err).strip("'\"")) from None
    except (TypeError, ValueError) as err:
        raise ConfigError("hamiltonian", str(err)) from None
