from __future__ import annotations

import json

import pytest
from hypothesis import HealthCheck, settings

from newscope.config import EngineConfig
from newscope.corpus import parse_corpus
from newscope.index import build_index
from newscope.service import QueryEngine

settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")

# Hand-built corpus exercising all the engine behaviors at once: the
# "king abdullah" name-variant family plus external df inflators, a term in
# exactly three documents, a phrase below the index threshold, multi-tier
# summary material and a decade-wide date gap. 27 docs, well under the
# 2,000-token lid the oracle suites assume.
TOY_ROWS: list[tuple[str, str, str]] = [
    ("j1", "1999-02-08", "Jordan entered mourning. King Abdullah II took the throne in Amman."),
    ("j2", "1999-03-14", "Jordan watched as King Abdullah II named a cabinet."),
    ("j3", "1999-11-02", "Diplomats visited Jordan. King Abdullah II hosted the talks."),
    ("j4", "2000-05-19", "Jordan signed the accord. King Abdullah II praised the deal."),
    ("j5", "2001-01-23", "Jordan opened the border. King Abdullah II toured the north."),
    ("j6", "2001-08-30", "Jordan marked the anniversary. King Abdullah II addressed crowds."),
    ("k1", "1999-04-02", "King Abdullah spoke from the palace."),
    ("k2", "2000-02-17", "King Abdullah welcomed envoys at the palace."),
    ("k3", "2000-09-21", "King Abdullah reviewed the guard."),
    ("m1", "1999-06-11", "Envoys praised Abdullah II during the visit."),
    ("m2", "2000-03-08", "Observers cheered Abdullah II at the ceremony."),
    ("m3", "2001-04-15", "Delegates met Abdullah II before the summit."),
    ("h1", "1994-09-15", "Haiti exported the coffee harvest. Farmers sold the coffee harvest. "
                         "The coffee harvest grew. Another coffee harvest arrived. "
                         "Traders shipped the coffee harvest."),
    ("h2", "1994-11-03", "The crisis in Haiti deepened after the coup."),
    ("h3", "2004-02-27", "Haiti faced a revolt in the capital."),
    ("s1", "2000-06-10", "Syria prepared for transition. Bashar al-Assad was born on Sept. 11, "
                         "1965, in Damascus, the third of President Assad's five children."),
    ("s2", "2000-06-25", "President Assad ruled Syria for 30 years. Bashar al-Assad studied in London."),
    ("s3", "2000-07-04", "Bashar al-Assad met ministers in Damascus. The eldest son pressed reforms."),
    ("s4", "2000-09-18", "Opposition grew inside Syria. Bashar al-Assad addressed the nation. "
                         "President Assad's legacy lingered."),
    ("r1", "1997-03-12", "Miners sought rare earth deposits."),
    ("r2", "1997-05-20", "The rare earth market tightened."),
    ("r3", "1998-01-15", "Prices for rare earth metals rose."),
    ("r4", "1998-08-09", "Exporters hoarded rare earth supplies."),
    ("g1", "1992-04-07", "The peace accord held. Ministers praised the peace accord."),
    ("g2", "1992-04-22", "Talks on the peace accord resumed in Geneva."),
    ("g3", "2003-12-05", "The trade dispute widened. Exporters feared the trade dispute."),
    ("g4", "2004-06-16", "Negotiators settled the trade dispute."),
]

# Query vocabulary the randomized state generators draw from.
TOY_QUERIES = [
    "jordan", "king", "abdullah", "haiti", "coffee", "harvest",
    "bashar al-assad", "president", "syria", "palace", "crisis",
    "peace accord", "trade", "rare earth", "the", "damascus", "envoys",
]


def toy_jsonl() -> list[str]:
    return [json.dumps({"id": i, "date": d, "text": t}) for i, d, t in TOY_ROWS]


@pytest.fixture(scope="session")
def toy_docs():
    return parse_corpus(toy_jsonl())


@pytest.fixture(scope="session")
def toy_bundle(toy_docs):
    return build_index(toy_docs)


@pytest.fixture(scope="session")
def toy_engine(toy_bundle):
    return QueryEngine(toy_bundle, EngineConfig())
