"""Command line entry points.

Every command shares one option, ``--db`` (or the SDG_DATABASE
environment variable), naming the SQLite file that holds catalog,
accounts, assignments, and answers.
"""

from __future__ import annotations

import os
from importlib import resources

import click

from .catalog import Catalog, load_catalog
from .survey import Role, UserStatus
from .graph import (
    BeautifulPolicy,
    GraphSnapshot,
    beautiful_targets,
    longest_positive_path,
    rank_by_negative,
    summarize,
    ugly_edges,
)
from .service.auth import hash_password
from .service.store import SqliteStore
from .service.transfer import ImportFailure, export_answers_csv, import_edges_csv

POLICY_CHOICE = click.Choice([p.value for p in BeautifulPolicy])


@click.group()
@click.option(
    "--db",
    "db_path",
    envvar="SDG_DATABASE",
    default="sdg.sqlite3",
    show_default=True,
    help="SQLite database file.",
)
@click.pass_context
def main(ctx: click.Context, db_path: str) -> None:
    """Survey and analysis of interactions between SDG targets."""
    ctx.obj = SqliteStore(db_path)


def _catalog(store: SqliteStore) -> Catalog:
    catalog = store.load_catalog()
    if catalog is None:
        raise click.ClickException("database has no catalog; run `seed` first")
    return catalog


def _snapshot(store: SqliteStore) -> GraphSnapshot:
    catalog = _catalog(store)
    with store.transaction() as txn:
        interactions = txn.all_interactions()
    return GraphSnapshot.build(catalog.targets, interactions)


@main.command()
@click.option(
    "--catalog",
    "catalog_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Catalog CSV; defaults to the bundled official list.",
)
@click.pass_obj
def seed(store: SqliteStore, catalog_path: str | None) -> None:
    """Load the target catalog into the database."""
    if catalog_path is not None:
        catalog = load_catalog(catalog_path)
    else:
        source = resources.files("sdgraph").joinpath("data/sdg_targets.csv")
        with source.open("r", encoding="utf-8") as handle:
            catalog = load_catalog(handle)
    store.seed_catalog(catalog)
    click.echo(f"seeded {len(catalog)} targets across {len(catalog.goals)} goals")


@main.command("create-admin")
@click.argument("login")
@click.option("--password", prompt=True, hide_input=True, confirmation_prompt=True)
@click.option("--full-name", default=None, help="Display name; defaults to the login.")
@click.pass_obj
def create_admin(store: SqliteStore, login: str, password: str, full_name: str | None) -> None:
    """Create an approved administrator account."""
    user = store.create_user(
        login=login,
        password_hash=hash_password(password),
        full_name=full_name or login,
        years_experience=0,
        status=UserStatus.APPROVED,
        role=Role.ADMIN,
    )
    click.echo(f"created admin {user.login} (id {user.id})")


@main.command("import-edges")
@click.argument("csv_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def import_edges(store: SqliteStore, csv_file: str) -> None:
    """Bulk-load scored interactions from a CSV file.

    The file is validated in full before anything is written; on error
    every offending row is reported and the database is left untouched.
    """
    catalog = _catalog(store)
    with open(csv_file, "r", encoding="utf-8", newline="") as handle:
        text = handle.read()
    try:
        count = import_edges_csv(store, catalog, text)
    except ImportFailure as exc:
        for row, message in exc.errors:
            click.echo(f"row {row}: {message}", err=True)
        raise click.ClickException(f"import aborted: {len(exc.errors)} invalid row(s)") from None
    click.echo(f"imported {count} interactions")


@main.group()
def report() -> None:
    """Read-only analyses of the scored interaction graph."""


@report.command()
@click.pass_obj
def summary(store: SqliteStore) -> None:
    """Edge counts by class and the share of negative interactions."""
    stats = summarize(_snapshot(store))
    click.echo(f"pairs:     {stats.total_pairs}")
    click.echo(f"colored:   {stats.colored}")
    click.echo(f"positive:  {stats.positive}")
    click.echo(f"negative:  {stats.negative}")
    click.echo(f"neutral:   {stats.neutral}")
    click.echo(f"uncolored: {stats.uncolored}")
    click.echo(f"negative share: {stats.negative_percent:.2f}%")


@report.command()
@click.pass_obj
def ugly(store: SqliteStore) -> None:
    """Negative interactions, worst first."""
    edges = ugly_edges(_snapshot(store))
    if not edges:
        click.echo("no negative interactions")
        return
    for edge in edges:
        click.echo(f"{edge.score:+d}  {edge.key.lo} | {edge.key.hi}")


@report.command()
@click.option("--policy", type=POLICY_CHOICE, default=BeautifulPolicy.STRICT_POSITIVE.value, show_default=True)
@click.pass_obj
def beautiful(store: SqliteStore, policy: str) -> None:
    """Targets whose scored interactions are all benign."""
    chosen = BeautifulPolicy.parse(policy)
    targets = beautiful_targets(_snapshot(store), chosen)
    if not targets:
        click.echo("no qualifying targets")
        return
    for code in sorted(targets):
        click.echo(str(code))


@report.command()
@click.pass_obj
def rank(store: SqliteStore) -> None:
    """Targets ordered by how many negative interactions touch them."""
    for code, count in rank_by_negative(_snapshot(store)):
        click.echo(f"{count:3d}  {code}")


@report.command("longest-path")
@click.option("--policy", type=POLICY_CHOICE, default=BeautifulPolicy.STRICT_POSITIVE.value, show_default=True)
@click.option("--restarts", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_obj
def longest_path(store: SqliteStore, policy: str, restarts: int, seed: int) -> None:
    """Longest chain found in the acyclically oriented benign subgraph."""
    result = longest_positive_path(
        _snapshot(store), BeautifulPolicy.parse(policy), restarts=restarts, seed=seed
    )
    click.echo(f"length: {result.edge_count} edge(s)")
    if result.nodes:
        click.echo(" -> ".join(str(code) for code in result.nodes))


@main.command()
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.pass_obj
def export(store: SqliteStore, out_path: str) -> None:
    """Write all recorded answers to a CSV file."""
    text = export_answers_csv(store)
    with open(out_path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    rows = text.count("\n") - 1
    click.echo(f"wrote {rows} row(s) to {out_path}")


@main.command()
@click.option(
    "--listen",
    envvar="SDG_LISTEN",
    default="127.0.0.1:8000",
    show_default=True,
    help="host:port to bind.",
)
@click.pass_obj
def serve(store: SqliteStore, listen: str) -> None:
    """Run the HTTP API with uvicorn."""
    import uvicorn

    from .service.api import create_app

    host, _, port_text = listen.rpartition(":")
    if not host or not port_text.isdigit():
        raise click.ClickException(f"--listen expects host:port, got {listen!r}")
    app = create_app(db_path=store.path)
    uvicorn.run(app, host=host, port=int(port_text))


if __name__ == "__main__":
    main()
