"""Main functionality to run an experiment and save its results."""

import logging
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pandas as pd
from tqdm import tqdm

from bergmanlab._core import ConfigError, ExperimentConfig, PipelineError
from bergmanlab._core.errors import BergmanLabError, OutputError
from bergmanlab.asymptotics import (
    bulk_dichotomy,
    energy_localization_check,
    interface_profile,
    offdiag_decay_fit,
    rate_fit,
    short_time_gaussian_table,
    tauberian_gap,
    tauberian_table,
)
from bergmanlab.bfmodel import poisson_ratio_oracle
from bergmanlab.geometry import (
    ModelKind,
    make_hamiltonian,
    make_model,
    project_to_level_set,
)
from bergmanlab.quantization import (
    boundary_modes,
    build_quadrature,
    default_truncation,
    quantize,
)
from bergmanlab.spectral import (
    Scaling,
    make_kernel,
    partial_density_ratio,
    spectral_measure,
)

from .outputs import RunManifest, package_versions, write_outputs

## INPUTS

log_file_name = Path("bergmanlab.log")
# Radius of the disc sample points are drawn from, per model
sample_radius = {ModelKind.BARGMANN_FOCK: 1.5, ModelKind.FUBINI_STUDY_CP1: 3.0}
# Hermitian defects above this are reported in the manifest
defect_warning = 1e-9
# Largest accepted deviation between pipeline and closed-form ratios
oracle_tolerance = 1e-8


## CODE


class ExperimentRunner:
    """Run one configured experiment and collect its tables."""

    def __init__(self, cfg):
        """Set up logging, the geometry and the Hamiltonian.

        Args:
            cfg (ExperimentConfig): validated settings

        """
        self.cfg = cfg
        self.output_dir = Path(cfg.output_dir)
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
            self._create_log(self.output_dir)
        except OSError as err:
            raise OutputError(
                "Cannot set up the output directory {0}: {1}".format(
                    self.output_dir, err
                )
            ) from err
        self.model = make_model(cfg.model, cfg.chart_radius)
        self.H = make_hamiltonian(cfg.hamiltonian, self.model, **cfg.hamiltonian_params)
        self.manifest = RunManifest(config=cfg.echo(), versions=package_versions())
        self.tables = {}
        self._spectra = {}
        self._rng = np.random.default_rng(cfg.seed)

    def _create_log(self, directory):
        """Set up logging to a file in the output directory.

        Args:
            directory (Path): directory to place the log file in

        """
        logging.basicConfig(
            filename=directory / log_file_name,
            encoding="utf-8",
            filemode="w",
            format="%(levelname)s:%(message)s",
            level=logging.INFO,
            force=True,
        )

    @contextmanager
    def _stage(self, name):
        """Time a stage and wrap its failures in PipelineError."""
        start = time.perf_counter()
        try:
            yield
        except (ConfigError, PipelineError):
            raise
        except (BergmanLabError, ValueError) as err:
            logging.error("Stage {0} failed: {1}".format(name, err))
            raise PipelineError(name, err) from err
        finally:
            elapsed = time.perf_counter() - start
            self.manifest.wall_times[name] = (
                self.manifest.wall_times.get(name, 0.0) + elapsed
            )

    def _spectrum(self, k):
        """Return (basis, spec) for tensor power k, computed once."""
        if k not in self._spectra:
            with self._stage("quantize k={0}".format(k)):
                truncation = self.cfg.truncation
                if self.model.kind is ModelKind.BARGMANN_FOCK and truncation is None:
                    truncation = default_truncation(k)
                quadrature = build_quadrature(
                    self.model,
                    k,
                    self.cfg.n_radial,
                    self.cfg.n_angular,
                    truncation=truncation,
                )
                basis, spec, matrix = quantize(
                    self.model,
                    self.H,
                    k,
                    self.cfg.mode,
                    truncation=truncation,
                    quadrature=quadrature,
                )
            if matrix.hermitian_defect > defect_warning:
                self.manifest.warn(
                    "Hermitian defect {0:.3g} before symmetrization at k={1}".format(
                        matrix.hermitian_defect, k
                    )
                )
            for E in self.cfg.energies:
                n_ties = len(boundary_modes(spec, E))
                if n_ties:
                    self.manifest.warn(
                        "{0} boundary mode(s) at E={1:g}, k={2}".format(n_ties, E, k)
                    )
            self._spectra[k] = (basis, spec)
        return self._spectra[k]

    def _anchor(self):
        """Return the configured anchor projected onto the level set H = E."""
        with self._stage("project anchor"):
            return project_to_level_set(self.model, self.H, self.cfg.anchor, self.cfg.E)

    def _sample_points(self, radius):
        """Return n_points seeded points, uniform in the disc of the given radius."""
        n = self.cfg.n_points
        r = radius * np.sqrt(self._rng.uniform(size=n))
        theta = self._rng.uniform(0.0, 2.0 * np.pi, size=n)
        return r * np.exp(1j * theta)

    def _ray_pairs(self):
        """Return seeded point pairs on the real axis with distances in [0.1, 1]."""
        n = self.cfg.n_points
        z = self._rng.uniform(0.05, 0.5, size=n)
        dist = self._rng.uniform(0.1, 1.0, size=n)
        if self.model.kind is ModelKind.BARGMANN_FOCK:
            w = z + dist / np.sqrt(2.0)
        else:
            w = np.tan(np.arctan(z) + dist / np.sqrt(2.0))
        return [(complex(a), complex(b)) for a, b in zip(z, w)]

    ## Experiments

    def _run_bulk(self):
        points = self._sample_points(sample_radius[self.model.kind])
        tables = []
        for k in tqdm(self.cfg.ks):
            basis, spec = self._spectrum(k)
            with self._stage("bulk k={0}".format(k)):
                table = bulk_dichotomy(
                    spec, basis, self.H, self.cfg.E, points, self.cfg.margin
                )
            allowed = table[table["region"] == "allowed"]
            forbidden = table[table["region"] == "forbidden"]
            n_off = int((allowed["ratio"] < 1 - 1e-3).sum())
            n_off += int((forbidden["ratio"] > 1e-3).sum())
            if n_off:
                self.manifest.warn(
                    "{0} bulk point(s) off their limit by more than 1e-3 at k={1}".format(
                        n_off, k
                    )
                )
            tables.append(table)
        self.tables["bulk.csv"] = pd.concat(tables, ignore_index=True)

    def _run_interface(self):
        z0 = self._anchor()
        spectra = {k: self._spectrum(k) for k in tqdm(self.cfg.ks)}
        with self._stage("interface profile"):
            profile = interface_profile(
                self.model,
                self.H,
                self.cfg.E,
                z0,
                self.cfg.betas,
                self.cfg.ks,
                self.cfg.mode,
                spectra=spectra,
            )
        self.tables["interface_profile.csv"] = profile.rows
        self._fit_rate(profile.sup_errors())

    def _fit_rate(self, sup_errors):
        if len(sup_errors) < 3:
            self.manifest.warn("Rate fit skipped; it needs at least three values of k")
            return
        if any(err <= 0 for _, err in sup_errors):
            self.manifest.warn("Rate fit skipped; some sup errors vanish")
            return
        with self._stage("rate fit"):
            self.tables["rate_fit.json"] = rate_fit(sup_errors)

    def _run_measures(self):
        z0 = self._anchor()
        grad_norm = float(self.H.grad_norm(z0))
        tables = []
        gaps = {}
        measures = []
        for k in tqdm(self.cfg.ks):
            basis, spec = self._spectrum(k)
            with self._stage("measures k={0}".format(k)):
                measures = [
                    spectral_measure(spec, basis, z0, scaling, H=self.H, tau=self.cfg.tau)
                    for scaling in Scaling
                ]
                kernel = make_kernel(self.cfg.kernel, self.cfg.width_scale / np.sqrt(k))
                clt = measures[1]
                tables.append(tauberian_table(clt, kernel, self.cfg.xs, grad_norm))
                gaps[str(k)] = tauberian_gap(clt, kernel, self.cfg.xs)
        self.tables["measures.csv"] = pd.concat(
            [
                pd.DataFrame(
                    {
                        "scaling": m.scaling.value,
                        "location": m.locations,
                        "mass": m.masses,
                    }
                )
                for m in measures
            ],
            ignore_index=True,
        )
        self.tables["tauberian.csv"] = pd.concat(tables, ignore_index=True)
        self.tables["tauberian_gap.json"] = gaps

    def _run_propagator(self):
        z0 = self._anchor()
        tables = []
        for k in tqdm(self.cfg.ks):
            basis, spec = self._spectrum(k)
            with self._stage("propagator k={0}".format(k)):
                tables.append(
                    short_time_gaussian_table(spec, basis, self.H, z0, self.cfg.taus)
                )
        self.tables["propagator.csv"] = pd.concat(tables, ignore_index=True)

    def _run_localization(self):
        z0 = self._anchor()
        tables = []
        for k in tqdm(self.cfg.ks):
            basis, spec = self._spectrum(k)
            with self._stage("localization k={0}".format(k)):
                measured, predicted = energy_localization_check(
                    spec, basis, self.H, z0, self.cfg.alphas, self.cfg.epsilon
                )
            tables.append(
                pd.DataFrame(
                    {
                        "k": k,
                        "alpha": self.cfg.alphas,
                        "measured": measured,
                        "predicted": predicted,
                        "ratio": measured / predicted,
                    }
                )
            )
        self.tables["localization.csv"] = pd.concat(tables, ignore_index=True)

    def _run_decay(self):
        pairs = self._ray_pairs()
        spectra = {k: self._spectrum(k) for k in tqdm(self.cfg.ks)}
        with self._stage("decay fit"):
            fit = offdiag_decay_fit(self.model, spectra, pairs)
        self.tables["decay.csv"] = fit.rows
        self.tables["decay_fit.json"] = fit

    def _run_oracle(self):
        if self.model.kind is not ModelKind.BARGMANN_FOCK or self.H.label != "bf_radial":
            raise ConfigError(
                "label", "the oracle experiment needs bf_radial on BargmannFock"
            )
        if self.cfg.mode != "Kostant":
            raise ConfigError("mode", "the oracle experiment needs Kostant quantization")
        points = self._sample_points(sample_radius[ModelKind.BARGMANN_FOCK])
        tables = []
        for k in tqdm(self.cfg.ks):
            basis, spec = self._spectrum(k)
            with self._stage("oracle k={0}".format(k)):
                for E in self.cfg.energies:
                    pipeline = partial_density_ratio(spec, basis, E, points).ratio
                    oracle = poisson_ratio_oracle(k, E, points)
                    tables.append(
                        pd.DataFrame(
                            {
                                "k": k,
                                "E": E,
                                "re_z": points.real,
                                "im_z": points.imag,
                                "pipeline": pipeline,
                                "oracle": oracle,
                                "abs_deviation": np.abs(pipeline - oracle),
                            }
                        )
                    )
        table = pd.concat(tables, ignore_index=True)
        worst = float(table["abs_deviation"].max())
        if worst > oracle_tolerance:
            self.manifest.warn(
                "Pipeline deviates from the closed form by {0:.3g}".format(worst)
            )
        self.tables["oracle_vs_pipeline.csv"] = table

    def run(self):
        """Run the configured experiment and write its outputs.

        Returns:
            RunManifest: record of the run

        """
        name = self.cfg.experiment.value
        start_message = "Running experiment `{0}` with {1} on {2}, k in {3}.".format(
            name, self.H.label, self.model.kind.value, list(self.cfg.ks)
        )
        print(start_message)
        logging.info(start_message)

        getattr(self, "_run_" + name)()
        manifest = write_outputs(self.tables, self.output_dir, self.manifest)

        end_message = (
            "Experiment `{0}` finished!".format(name)
            + "\n{0} file(s) written to {1}.".format(
                len(manifest.files), self.output_dir
            )
            + "\n{0} warning(s) -- see {1} for details.".format(
                len(manifest.warnings), log_file_name
            )
        )
        print(end_message)
        logging.info(end_message)
        return manifest


def run_experiment(cfg):
    """Run an experiment.

    Args:
        cfg (ExperimentConfig or str or Path): validated settings, or the path
        of a config file

    Returns:
        RunManifest: record of the run

    """
    if not isinstance(cfg, ExperimentConfig):
        cfg = ExperimentConfig.from_file(cfg)
    return ExperimentRunner(cfg).run()
