import os

DEFAULT_SIZE_LIMIT = 4096

# L = sum of D_s is only ever walked additively (vectorised), never tabulated,
# so it gets a wider budget than carriers that receive full n x n tables.
SUM_SPACE_FACTOR = 64


def size_limit():
    raw = os.environ.get("GCKIT_SIZE_LIMIT")
    if not raw:
        return DEFAULT_SIZE_LIMIT
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_SIZE_LIMIT


def check_size(n, what="carrier", limit=None):
    from gckit.errors import SizeLimit

    limit = size_limit() if limit is None else limit
    if n > limit:
        raise SizeLimit(f"{what} has {n} elements, limit is {limit}", witness=n)
