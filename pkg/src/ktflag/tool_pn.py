import csv
import sys

import click

from ktflag.ext_json import dumps_canonical
from ktflag.projective import all_indices, pn_constant, render_epsilon


@click.command()
@click.option("-n", "--n", "n", type=click.IntRange(1, 6), required=True, help="Dimension of P^n.")
@click.option("-f", "--family", type=click.Choice(["p", "b", "r", "q"]), default="p", show_default=True)
@click.option("--form", type=click.Choice(["closed", "recur"]), default="closed", show_default=True)
@click.option("-o", "--out", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True, help="Output format.")
@click.option("--nonzero", is_flag=True, help="Skip vanishing constants.")
def main(n, family, form, fmt, nonzero):
    """Print the structure constants of K_T(P^n), in y_{ij} = e^{epsilon_i - epsilon_j} (y12, y23, ...)."""
    rows = []
    for idx in all_indices(n):
        c = pn_constant(idx, family, form)
        if nonzero and not c:
            continue
        rows.append({"n": n, "u": idx.u, "v": idx.v, "w": idx.w, "coefficient": render_epsilon(n, c), "coef": c.to_json()})

    if fmt == "json":
        click.echo(dumps_canonical(rows).decode(), nl=False)
        return
    writer = csv.DictWriter(
        sys.stdout, fieldnames=["n", "u", "v", "w", "coefficient"], extrasaction="ignore", lineterminator="\n"
    )
    writer.writeheader()
    writer.writerows(rows)


def run():
    """
    structure constants of projective space
    """
    main()


if __name__ == "__main__":
    run()
