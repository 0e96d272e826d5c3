"""Seeded random corpus shared by the property suites."""
import random

from golodtight.generators import random_complex, random_neighborly

CORPUS_SEED = 20240601
CORPUS_SIZE = 520


def corpus(size=CORPUS_SIZE, max_m=7, seed=CORPUS_SEED):
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        m = rng.randint(2, max_m)
        out.append(random_complex(rng, m))
    return out


def neighborly_corpus(size=120, max_m=8, seed=CORPUS_SEED + 1):
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        k = rng.choice((1, 2))
        m = rng.randint(k + 2, max_m)
        out.append((k, random_neighborly(rng, m, k)))
    return out
