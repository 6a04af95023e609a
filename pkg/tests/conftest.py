"""Shared test helpers: deterministic random corpora and tiny TSV builders."""

import random

WORDS = [
    "a", "b", "c", "d", "e", "f", "g", "the", "cat", "sat", "on", "mat",
    "dog", "ran", "to", "park", "ha", "lol",
]


def make_random_corpus(rng: random.Random, min_tokens=3, max_tokens=100):
    """Lines of space-separated words totalling between min and max tokens."""
    vocab_size = rng.randint(2, len(WORDS))
    vocab = WORDS[:vocab_size]
    target = rng.randint(min_tokens, max_tokens)
    lines = []
    total = 0
    while total < target:
        n = min(rng.randint(1, 12), target - total)
        lines.append(" ".join(rng.choice(vocab) for _ in range(n)))
        total += n
    return lines


def make_queries(rng: random.Random, reference, n_random=30):
    """Query mix: every stored gram split into (context, word), plus random
    contexts/events including out-of-vocabulary tokens."""
    queries = []
    for k in range(1, reference.order + 1):
        for g in reference.counts[k]:
            if g[-1] == "<s>":
                continue
            queries.append((list(g[:-1]), g[-1]))
    pool = reference.event_vocab + ["zzz-oov", "qqq-oov"]
    ctx_pool = [w for w in pool if w != "</s>"]
    for _ in range(n_random):
        clen = rng.randint(0, reference.order - 1) if reference.order > 1 else 0
        ctx = [rng.choice(ctx_pool) for _ in range(clen)]
        queries.append((ctx, rng.choice(pool)))
    return queries


def write_tsv(path, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for row in rows:
            f.write("\t".join(str(x) for x in row) + "\n")


def random_sentence(rng: random.Random, vocab, max_len=8):
    return [rng.choice(vocab) for _ in range(rng.randint(0, max_len))]
