from .outputs import RunManifest, package_versions, write_outputs
from .run_experiment import ExperimentRunner, run_experiment
