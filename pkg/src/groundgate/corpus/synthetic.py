"""Deterministic synthetic corpora for offline testing and training smoke runs.

Two generation schemes:

* ``containment`` — grounded contexts literally contain every query token and
  ungrounded contexts are token-disjoint from the query. Trivially separable by
  lexical overlap; used to sanity-check baselines end to end.
* ``relational`` — contexts are sets of "The <attribute> of <entity> is
  <value>." facts and queries ask for one (attribute, entity) combination.
  Grounded means the exact combination is stated. Hard negatives mention both
  the attribute and the entity in *different* facts, so bag-of-words overlap
  alone cannot separate them; easy negatives ask about an absent entity.

``build_squad_style_document`` emits the relational scheme in the official
SQuAD v2 nested JSON layout (per-question ``is_impossible``), so the whole
ingestion path can be exercised when the real dataset files are not on disk.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .records import GROUNDED, UNGROUNDED, QueryContextPair, make_pair

_SYLLABLES = [
    "ba", "den", "fir", "gol", "hul", "jin", "kor", "lam", "mer", "nis",
    "or", "pel", "qua", "rin", "sol", "tav", "ul", "ver", "wex", "yor",
    "zan", "bri", "cla", "dru", "eth",
]


def _words(rng: random.Random, count: int, min_syllables: int = 2,
           max_syllables: int = 3) -> list[str]:
    out: set[str] = set()
    while len(out) < count:
        k = rng.randint(min_syllables, max_syllables)
        out.add("".join(rng.choice(_SYLLABLES) for _ in range(k)))
    return sorted(out)


def build_containment_pairs(n: int, seed: int = 0,
                            split: str = "train") -> list[QueryContextPair]:
    """n pairs where the label equals "all query tokens appear in the context"."""
    rng = random.Random(f"containment:{seed}")
    vocab = _words(rng, 400)
    half = len(vocab) // 2
    query_vocab, noise_vocab = vocab[:half], vocab[half:]

    pairs: list[QueryContextPair] = []
    for i in range(n):
        grounded = i % 2 == 0
        query_words = rng.sample(query_vocab, rng.randint(3, 6))
        filler = rng.sample(noise_vocab, rng.randint(8, 16))
        if grounded:
            body = query_words + filler
            rng.shuffle(body)
        else:
            body = filler
        pairs.append(make_pair(
            id=f"syn-contain-{i:05d}",
            query=" ".join(query_words),
            context=" ".join(body),
            label=GROUNDED if grounded else UNGROUNDED,
            source="synthetic",
            split=split,
        ))
    return pairs


@dataclass
class _FactParagraph:
    context: str
    stated: dict[tuple[str, str], str]  # (attribute, entity) -> value
    attributes: list[str]
    entities: list[str]


class _RelationalWorld:
    """Shared vocabulary plus paragraph/question sampling for one seed."""

    def __init__(self, seed: int | str, hard_negative_fraction: float = 0.5):
        self.rng = random.Random(f"relational:{seed}")
        self.entities = _words(self.rng, 60, 2, 3)
        self.attributes = _words(self.rng, 12, 1, 2)
        self.values = _words(self.rng, 80, 2, 3)
        self.hard_negative_fraction = hard_negative_fraction

    def paragraph(self) -> _FactParagraph:
        rng = self.rng
        n_facts = rng.randint(4, 7)
        ents = rng.sample(self.entities, n_facts)
        attrs = [rng.choice(self.attributes) for _ in range(n_facts)]
        vals = [rng.choice(self.values) for _ in range(n_facts)]
        facts = [f"The {a} of {e} is {v}." for a, e, v in zip(attrs, ents, vals)]
        return _FactParagraph(
            context=" ".join(facts),
            stated=dict(zip(zip(attrs, ents), vals)),
            attributes=attrs,
            entities=ents,
        )

    def question(self, paragraph: _FactParagraph) -> tuple[str, str | None]:
        """A (question, answer) against the paragraph; answer None means impossible."""
        rng = self.rng
        if rng.random() < 0.5:
            attr, ent = rng.choice(list(paragraph.stated))
            return f"What is the {attr} of {ent}?", paragraph.stated[(attr, ent)]
        if rng.random() < self.hard_negative_fraction:
            # Attribute and entity both occur in the context, but never together.
            for _ in range(20):
                a = rng.choice(paragraph.attributes)
                e = rng.choice(paragraph.entities)
                if (a, e) not in paragraph.stated:
                    return f"What is the {a} of {e}?", None
        absent = [e for e in self.entities if e not in paragraph.entities]
        return f"What is the {rng.choice(self.attributes)} of {rng.choice(absent)}?", None


def build_relational_pairs(n: int, seed: int = 0, split: str = "train",
                           hard_negative_fraction: float = 0.5) -> list[QueryContextPair]:
    world = _RelationalWorld(seed, hard_negative_fraction)
    pairs: list[QueryContextPair] = []
    for i in range(n):
        paragraph = world.paragraph()
        question, answer = world.question(paragraph)
        pairs.append(make_pair(
            id=f"syn-rel-{i:05d}",
            query=question,
            context=paragraph.context,
            label=GROUNDED if answer is not None else UNGROUNDED,
            source="synthetic",
            split=split,
        ))
    return pairs


def build_squad_style_document(n_questions: int, seed: int = 0,
                               hard_negative_fraction: float = 0.5,
                               questions_per_paragraph: int = 4,
                               paragraphs_per_article: int = 6) -> dict:
    """A relational corpus in the official SQuAD v2 nested JSON layout."""
    world = _RelationalWorld(f"squad-style:{seed}", hard_negative_fraction)

    paragraphs: list[dict] = []
    emitted = 0
    while emitted < n_questions:
        fact_paragraph = world.paragraph()
        qas = []
        for _ in range(min(questions_per_paragraph, n_questions - emitted)):
            question, answer = world.question(fact_paragraph)
            qa: dict = {
                "id": f"synq-{seed}-{emitted:06d}",
                "question": question,
                "is_impossible": answer is None,
                "answers": [] if answer is None else [
                    {"text": answer, "answer_start": fact_paragraph.context.find(answer)}
                ],
            }
            qas.append(qa)
            emitted += 1
        paragraphs.append({"context": fact_paragraph.context, "qas": qas})

    articles = []
    for i in range(0, len(paragraphs), paragraphs_per_article):
        articles.append({
            "title": f"synthetic-article-{i // paragraphs_per_article:04d}",
            "paragraphs": paragraphs[i:i + paragraphs_per_article],
        })
    return {"version": "v2.0-synthetic", "data": articles}
