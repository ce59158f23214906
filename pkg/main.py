# main.py
import logging
import sys

import click

from commands import all_commands
from config import settings
from errors import SafetyFilterError


def configure_logging(level: str = settings.LOG_LEVEL) -> None:
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


class SafetyFilterGroup(click.Group):
    """Maps library errors onto the exit-code contract: 2 config, 3 runtime."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except SafetyFilterError as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(e.exit_code)


@click.group(cls=SafetyFilterGroup)
@click.version_option("0.1.0", prog_name="safety-filter")
def cli():
    """Perception-gated and penalty safety filters with a simulation harness."""
    configure_logging()


# include all commands
for _command in all_commands:
    cli.add_command(_command)


if __name__ == "__main__":
    cli()
