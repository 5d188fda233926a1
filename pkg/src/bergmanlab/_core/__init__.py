from .configparser import ConfigParser
from .errors import (
    BergmanLabError,
    ConfigError,
    OutputError,
    PipelineError,
)
from .experimentconfig import Experiment, ExperimentConfig
