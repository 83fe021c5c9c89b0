import click

from ktflag.gkm import DEMAZURE_VARIANTS, calibrate_demazure, variant_report


@click.command()
@click.option("-t", "--types", default="A1,A2,B2", show_default=True, help="Types the pins are checked on.")
def main(types):
    """Check which Demazure convention satisfies the pins; exits 1 unless exactly one does."""
    tags = tuple(t.strip() for t in types.split(",") if t.strip())
    for variant, passed in variant_report(tags).items():
        side, sign = variant
        click.echo(f"{side:>5} {'+' if sign > 0 else '-'}  {'pass' if passed else 'fail'}")
    side, sign = calibrate_demazure(tags)
    click.echo(f"selected: {side} {'+' if sign > 0 else '-'}")


def run():
    """
    Demazure convention calibration
    """
    main()


if __name__ == "__main__":
    run()
