import pytest

from overpart import build_table, solve_lambda_table

# Large enough for every desk-scale sweep: third-order checks to 5000 need
# pbar(5002), the shifted-envelope range tops out at 5614 (mu-only, no table).
DESK_MAX_N = 5620


@pytest.fixture(scope="session")
def table40():
    return build_table(40)


@pytest.fixture(scope="session")
def desk_table():
    return build_table(DESK_MAX_N)


@pytest.fixture(scope="session")
def lambda_table():
    return solve_lambda_table()
