import click

from ktflag.config import FAMILIES, FORMATS, TableConfig
from ktflag.harness import emit_tables
from ktflag.roots import SUPPORTED_TYPES, parse_parabolic


@click.command()
@click.option("-t", "--type", "type_tag", default="A2", type=click.Choice(SUPPORTED_TYPES))
@click.option("-p", "--parabolic", default="", help="Simple indices generating P, e.g. 2.")
@click.option("-f", "--family", type=click.Choice(FAMILIES), default="p", show_default=True)
@click.option("-o", "--out", type=click.Path(dir_okay=False), help="Output path.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
@click.option("-c", "--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="Table config file; overrides the other options.")
def main(type_tag, parabolic, family, out, fmt, config_path):
    """Write structure-constant tables with sha256 digests."""
    if config_path:
        configs = TableConfig.load(config_path)
    else:
        if not out:
            raise click.UsageError("--out is required without --config")
        configs = [
            TableConfig(out=out, family=family, type=type_tag, parabolic=tuple(sorted(parse_parabolic(parabolic))), format=fmt)
        ]
    for cfg in configs:
        for path in emit_tables(cfg):
            click.echo(path)


def run():
    """
    structure constant tables
    """
    main()


if __name__ == "__main__":
    run()
