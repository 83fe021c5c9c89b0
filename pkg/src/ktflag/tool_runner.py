import importlib
import logging
import os
import sys

import click

from ktflag import ext_logging
from ktflag.errors import KtflagError

logger = logging.getLogger(__name__)

# tool modules by command name
pkgs = {}

currentDir = os.path.dirname(os.path.realpath(__file__))

# every tool_*.py next to this file exposing a click command `main` becomes a subcommand
for file in sorted(os.listdir(currentDir)):
    name = f"ktflag.{os.path.splitext(file)[0]}"

    if not name.startswith("ktflag.tool_") or not file.endswith(".py"):
        continue

    if name == "ktflag.tool_runner":
        continue

    pkg = importlib.import_module(name)

    if isinstance(getattr(pkg, "main", None), click.Command):
        pkgs[name[len("ktflag.tool_"):]] = pkg


class KtflagGroup(click.Group):
    """turns library errors into click errors (exit status 1)"""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except KtflagError as e:
            raise click.ClickException(f"{type(e).__name__}: {e}") from e


@click.group(cls=KtflagGroup)
@click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG level.")
@click.option("--log-file", type=click.Path(dir_okay=False), help="Write the log to a file instead of stdout.")
def cli(verbose, log_file):
    """exact equivariant K-theory of flag varieties"""
    ext_logging.setup(verbose, log_file)


@cli.command("list")
def list_tools():
    """List all available tools."""
    for name, pkg in pkgs.items():
        doc = (pkg.run.__doc__ or "").strip() if hasattr(pkg, "run") else ""
        click.echo(f"{name}\t\t- {doc or '(No description provided)'}")


for _name, _pkg in pkgs.items():
    cli.add_command(_pkg.main, _name)


def run():
    cli()


if __name__ == "__main__":
    sys.exit(cli())
