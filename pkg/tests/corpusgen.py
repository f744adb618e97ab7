"""Deterministic SQL query factories shared by the test modules.

Queries are built from structural skeletons with pluggable identifier and
literal pools, so tests can produce (a) large corpora drawn from a fixed
template mixture and (b) pairs of queries that differ only in schema names
and literal values.
"""

from __future__ import annotations

import random

# Structural skeletons. Every slot is schema-specific: table names (t*),
# column names (c*), aliases (a*), string literals (s*), numbers (n*).
SKELETONS = [
    "SELECT {c1} FROM {t1}",
    "SELECT {c1}, {c2} FROM {t1} WHERE {c3} = {s1}",
    "SELECT COUNT(*) FROM {t1} WHERE {c1} > {n1}",
    "SELECT {c1}, SUM({c2}) FROM {t1} GROUP BY {c1}",
    "SELECT SUM({c1}) FROM {t1}",
    "SELECT {c1} FROM {t1} ORDER BY {c2} DESC LIMIT {n1}",
    "SELECT {a1}.{c1}, {a2}.{c2} FROM {t1} {a1} JOIN {t2} {a2} ON {a1}.{c3} = {a2}.{c3}",
    "SELECT COUNT({c1}) FROM {t1}",
    "SELECT DISTINCT {c1} FROM {t1} WHERE {c2} LIKE {s1}",
    "SELECT {c1} FROM {t1} WHERE {c2} BETWEEN {n1} AND {n2}",
    "SELECT {c1} FROM {t1} WHERE {c2} IN (SELECT {c3} FROM {t2})",
    "SELECT CASE WHEN {c1} > {n1} THEN {s1} ELSE {s2} END FROM {t1}",
    "SELECT CAST({c1} AS REAL) / {c2} FROM {t1}",
    "SELECT {c1} FROM {t1} WHERE {c2} IS NOT NULL",
    "SELECT {c1}, COUNT(*) FROM {t1} GROUP BY {c1} HAVING COUNT(*) > {n1}",
    "SELECT MAX({c1}), MIN({c2}) FROM {t1}",
    "SELECT {c1} FROM {t1} UNION SELECT {c2} FROM {t2}",
    "SELECT {c1}, ROW_NUMBER() OVER (PARTITION BY {c2} ORDER BY {c3} DESC) FROM {t1}",
    "SELECT AVG({c1}) FROM {t1} WHERE {c2} = {s1} OR {c3} = {n1}",
    "SELECT {c1} FROM (SELECT {c1}, {c2} FROM {t1} WHERE {c3} > {n1}) {a1}",
    "SELECT IIF({c1} < {n1}, {s1}, {s2}) FROM {t1}",
    "SELECT STRFTIME({s1}, {c1}) FROM {t1} WHERE {c2} <> {n1}",
    "SELECT {a1}.{c1} FROM {t1} {a1} LEFT JOIN {t2} {a2} ON {a1}.{c2} = {a2}.{c2} WHERE {a2}.{c3} IS NULL",
    "SELECT {c1} || {s1} FROM {t1} LIMIT {n1} OFFSET {n2}",
]

# A second family with different query shapes, for building corpora that are
# structurally far from the main mixture (as cross-dataset corpora are).
FAR_SKELETONS = [
    "SELECT {a1}.{c1}, {a2}.{c2}, {a1}.{c3} FROM {t1} {a1} INNER JOIN {t2} {a2} ON {a1}.{c1} = {a2}.{c1} INNER JOIN {t1} {a1}2 ON {a2}.{c2} = {a1}2.{c2} WHERE {a1}.{c3} = {s1} AND {a2}.{c2} < {n1}",
    "SELECT CAST(COUNT(CASE WHEN {c1} = {s1} THEN {n1} ELSE NULL END) AS REAL) * {n2} / COUNT({c2}) FROM {t1}",
    "WITH {a1} AS (SELECT {c1}, AVG({c2}) FROM {t1} GROUP BY {c1}) SELECT {c1} FROM {a1} WHERE {c2} IS NULL ORDER BY {c1} ASC",
    "SELECT {c1} FROM {t1} WHERE NOT EXISTS (SELECT {n1} FROM {t2} WHERE {t2}.{c2} = {t1}.{c2}) GROUP BY {c1}",
    "SELECT {c1}, {c2} FROM (SELECT {c1}, {c2}, ROW_NUMBER() OVER (ORDER BY {c3} DESC) {a1} FROM {t1}) {a2} WHERE {a1} <= {n1}",
    "SELECT SUM(IIF({c1} > {n1}, {c2}, {n2})) FROM {t1} WHERE {c3} GLOB {s1}",
    "SELECT {c1} FROM {t1} EXCEPT SELECT {c1} FROM {t2} INTERSECT SELECT {c2} FROM {t1}",
    "SELECT EXTRACT(YEAR FROM {c1}), COUNT(DISTINCT {c2}) FROM {t1} GROUP BY EXTRACT(YEAR FROM {c1}) HAVING COUNT(DISTINCT {c2}) BETWEEN {n1} AND {n2}",
]

POOL_A = {
    "t": ["orders", "customers", "products", "employees", "invoices",
          "regions", "students", "courses"],
    "c": ["amount", "label", "age", "price", "city", "status", "score",
          "quantity", "email_addr", "stamp"],
    "a": ["x1", "x2", "ov", "px", "qv", "sub"],
    "s": ["'USA'", "'Rock'", "'Alameda'", "'north'", "'%Y'", "'open'"],
    "n": ["1", "42", "3.5", "2020", "100", "7"],
}

# Same pool shapes, fully renamed identifiers and changed literals.
POOL_B = {
    "t": ["zz_bk", "zz_cl", "zz_pr", "zz_em", "zz_in", "zz_rg", "zz_st", "zz_co"],
    "c": ["total_v", "tagx", "years_v", "cost_v", "town", "state_v", "points",
          "unitsx", "contact_v", "moment"],
    "a": ["ali1", "ali2", "win0", "pp", "qq", "inner_q"],
    "s": ["'Japan'", "'Jazz'", "'Fresno'", "'south'", "'%m'", "'closed'"],
    "n": ["9", "77", "8.25", "1999", "250", "3"],
}

_SLOTS = ("t1", "t2", "c1", "c2", "c3", "a1", "a2", "s1", "s2", "n1", "n2")


def _slot_choices(rng: random.Random, pool: dict) -> dict:
    picks = {}
    used: dict[str, set[int]] = {}
    for slot in _SLOTS:
        kind = slot[0]
        options = pool[kind]
        taken = used.setdefault(kind, set())
        idx = rng.randrange(len(options))
        # distinct identifiers per kind so e.g. t1 != t2 within a query
        while idx in taken and len(taken) < len(options):
            idx = (idx + 1) % len(options)
        taken.add(idx)
        picks[slot] = idx
    return picks


def realize(skeleton: str, picks: dict, pool: dict) -> str:
    values = {slot: pool[slot[0]][idx] for slot, idx in picks.items()}
    return skeleton.format(**values)


def make_query(rng: random.Random, skeleton: str | None = None,
               pool: dict = POOL_A) -> str:
    if skeleton is None:
        skeleton = rng.choice(SKELETONS)
    return realize(skeleton, _slot_choices(rng, pool), pool)


def make_query_pair(rng: random.Random, skeleton: str | None = None) -> tuple[str, str]:
    """Two realizations of one skeleton with identical slot indices but
    disjoint identifier/literal pools: structurally identical queries whose
    schema tokens all differ."""
    if skeleton is None:
        skeleton = rng.choice(SKELETONS)
    picks = _slot_choices(rng, POOL_A)
    return realize(skeleton, picks, POOL_A), realize(skeleton, picks, POOL_B)


def make_mixture_corpus(n: int, seed: int, weights: list[float] | None = None,
                        skeletons: list[str] = SKELETONS) -> list[str]:
    """n queries drawn from the skeleton mixture with the given weights."""
    rng = random.Random(seed)
    if weights is None:
        weights = [1.0] * len(skeletons)
    chosen = rng.choices(skeletons, weights=weights, k=n)
    return [make_query(rng, skeleton=s) for s in chosen]
