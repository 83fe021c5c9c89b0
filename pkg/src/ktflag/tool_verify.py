import click

from ktflag.config import HarnessConfig
from ktflag.ext_json import dumps_canonical
from ktflag.harness import SUITES, run_suite
from ktflag.roots import SUPPORTED_TYPES, parse_parabolic


@click.command()
@click.argument("kind", type=click.Choice(SUITES))
@click.option("-t", "--type", "type_tag", default="A2", type=click.Choice(SUPPORTED_TYPES), help="Root system type.")
@click.option("-p", "--parabolic", default="", help="Simple indices generating P, e.g. 1,2.")
@click.option("-j", "--jobs", type=int, help="Worker processes (default: KTFLAG_JOBS or physical cores).")
@click.option("--cap", type=int, help="Search-node cap per certificate (default: KTFLAG_CAP or 1000000).")
@click.option("-n", "--n", "n_max", type=int, default=4, show_default=True, help="Largest n for the pn suite.")
@click.option("-c", "--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="json/toml/yaml harness config.")
@click.option("--instance", help="Only the instance with these comma separated indices, as printed in failures.")
@click.option("--allow-unknown", is_flag=True, help="Do not fail on resource-capped searches.")
@click.option("--report", type=click.Path(dir_okay=False), help="Write the report as json.")
def main(kind, type_tag, parabolic, jobs, cap, n_max, config_path, instance, allow_unknown, report):
    """Run a verification suite; exits 1 on any failing or unknown instance."""
    config = HarnessConfig.load(
        config_path, jobs=jobs, cap=cap, fail_on_unknown=False if allow_unknown else None
    )
    only = tuple(x.strip() for x in instance.split(",")) if instance else None
    result = run_suite(kind, type_tag, parse_parabolic(parabolic), config, n_max, only)

    click.echo(result.summary())
    for failure in result.failures:
        click.echo(f"  {failure['status']} {','.join(failure['instance'])}")
        for problem in failure["problems"]:
            click.echo(f"    {problem['check']}: {problem.get('value', '-')}")
        click.echo(f"    reproduce: {failure['repro']}")
    if report:
        with open(report, "wb") as f:
            f.write(dumps_canonical(result.to_json()))
    if not result.ok:
        raise SystemExit(1)


def run():
    """
    verification suites
    """
    main()


if __name__ == "__main__":
    run()
