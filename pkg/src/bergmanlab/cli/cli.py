"""Create command line entry points for bergmanlab."""

import typer

from bergmanlab._core import BergmanLabError, ConfigError

# Exit codes
EXIT_CONFIG = 2
EXIT_PIPELINE = 3

# Create main app

app = typer.Typer()

# Add commands for each functionality


@app.command()
def run(config_file_name: str):
    """Run the experiment described by a config file."""
    from bergmanlab._core import ExperimentConfig
    from bergmanlab.runner import run_experiment

    try:
        cfg = ExperimentConfig.from_file(config_file_name)
        run_experiment(cfg)
    except ConfigError as err:
        typer.echo(str(err), err=True)
        raise typer.Exit(EXIT_CONFIG) from None
    except BergmanLabError as err:
        typer.echo(str(err), err=True)
        raise typer.Exit(EXIT_PIPELINE) from None


@app.command()
def validate(config_file_name: str):
    """Check a config file without running anything."""
    from bergmanlab._core import ExperimentConfig

    try:
        cfg = ExperimentConfig.from_file(config_file_name)
    except ConfigError as err:
        typer.echo(str(err), err=True)
        raise typer.Exit(EXIT_CONFIG) from None
    typer.echo(
        "Config OK: experiment `{0}`, {1} on {2}, k in {3}".format(
            cfg.experiment.value, cfg.hamiltonian, cfg.model, list(cfg.ks)
        )
    )


@app.command("list-hamiltonians")
def list_hamiltonians():
    """List the registered Hamiltonian families."""
    from bergmanlab.geometry import registered_hamiltonians

    for label, (kind, description) in registered_hamiltonians().items():
        typer.echo("{0:<12} {1:<16} {2}".format(label, kind, description))
