"""Deterministic synthetic news corpus and benchmark query generation."""
from __future__ import annotations

import json
import random

FIRST = ["Adler", "Barnes", "Calder", "Dorsey", "Ellison", "Farley", "Guzman",
         "Haines", "Ibarra", "Jensen", "Keller", "Lorca", "Madsen", "Norris",
         "Okafor", "Pardo", "Quint", "Ramos", "Soto", "Tanner"]
LAST = ["Abbott", "Bryce", "Corwin", "Deluca", "Eaton", "Ferris", "Granger",
        "Holt", "Irving", "Jarvis", "Kessler", "Lowry", "Merced", "Novak",
        "Osman", "Pruitt", "Quigley", "Rourke", "Sandoval", "Thorne"]
PLACES = ["Valberg", "Ostrava", "Mirandel", "Katoro", "Silvania", "Dunmore",
          "Arvella", "Brichton", "Coralio", "Tessin", "Ferrovia", "Lindqvist"]
TOPICS = ["trade dispute", "border accord", "energy summit", "water treaty",
          "labor strike", "press freedom", "health reform", "housing crisis",
          "transit plan", "customs pact", "grain embargo", "fishing quota"]
VERBS = ["said", "met", "visited", "signed", "praised", "warned", "backed",
         "opposed", "announced", "rejected", "welcomed", "condemned"]
GROUPS = ["officials", "ministers", "reporters", "troops", "farmers",
          "workers", "students", "leaders", "judges", "bankers"]
FILLER = ["The talks continued into the night.",
          "Negotiators described the mood as tense.",
          "Observers expected further meetings this month.",
          "The announcement drew a cautious response.",
          "Regional markets barely moved on the news.",
          "Both delegations promised a joint statement.",
          "The agenda covered security and finance.",
          "Crowds gathered outside the assembly hall.",
          "A spokesman declined to give details.",
          "The session adjourned without a vote."]


def _pick_weighted(rng: random.Random, items: list[str]) -> str:
    # zipf-ish: earlier items are much more common
    weights = [1.0 / (i + 1) for i in range(len(items))]
    return rng.choices(items, weights=weights, k=1)[0]


def make_doc(rng: random.Random, doc_id: str, year0: int = 1987, year1: int = 2006,
             n_sentences: int = 27) -> dict:
    year = rng.randint(year0, year1)
    month = rng.randint(1, 12)
    day = rng.randint(1, 28)
    place = _pick_weighted(rng, PLACES)
    place2 = rng.choice(PLACES)
    topic = _pick_weighted(rng, TOPICS)
    topic2 = rng.choice(TOPICS)
    people = [f"{rng.choice(FIRST)} {rng.choice(LAST)}" for _ in range(3)]

    sentences = [
        f"{people[0]} {rng.choice(VERBS)} {people[1]} in {place}.",
        f"The {topic} dominated the agenda in {place}.",
        f"{rng.choice(GROUPS).capitalize()} in {place2} {rng.choice(VERBS)} the {topic2}.",
        f"{people[2]} {rng.choice(VERBS)} the plan before {rng.choice(GROUPS)}.",
        f"Delegates from {place} discussed the {topic} with {people[1]}.",
    ]
    while len(sentences) < n_sentences:
        sentences.append(rng.choice(FILLER))
    rng.shuffle(sentences)
    return {
        "id": doc_id,
        "date": f"{year:04d}-{month:02d}-{day:02d}",
        "title": f"{topic.title()} in {place}",
        "text": " ".join(sentences),
    }


def make_corpus(n_docs: int, seed: int = 20240101) -> list[dict]:
    rng = random.Random(seed)
    return [make_doc(rng, f"doc{i:05d}") for i in range(n_docs)]


def write_jsonl(records: list[dict], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


def make_bench_queries(n: int, seed: int = 99) -> list[dict]:
    """State requests mixing selectivities, facets and month-aligned spans."""
    rng = random.Random(seed)
    queries: list[dict] = []
    for i in range(n):
        kind = i % 4
        if kind == 0:
            q = rng.choice(PLACES)
        elif kind == 1:
            q = rng.choice(TOPICS)
        elif kind == 2:
            q = f"{rng.choice(PLACES)} {rng.choice(GROUPS)}"
        else:
            q = rng.choice(LAST)
        req: dict = {"q": q, "seed": rng.randrange(2 ** 31)}
        if rng.random() < 0.5:
            y0 = rng.randint(1987, 2004)
            m0 = rng.randint(1, 12)
            length = rng.randint(3, 36)
            y1, m1 = y0 + (m0 - 1 + length) // 12, (m0 - 1 + length) % 12 + 1
            last_day = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31][m1 - 1]
            req["start"] = f"{y0:04d}-{m0:02d}-01"
            req["end"] = f"{min(y1, 2006):04d}-{m1:02d}-{last_day:02d}"
        queries.append(req)
    return queries
