"""Tweet scoring, ranking, and pairwise prediction for one hashtag file.

Two ranking directions: MOST_LIKE ranks the highest log probability first
(model trained on funny tweets), LEAST_LIKE ranks the lowest first (model
trained on plain news, funniest = least news-like).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .errors import TsvFormatError
from .model import NGramModel
from .textprep import PrepConfig, filter_tokens, tokenize

GOLD_LABELS = (0, 1, 2)


class Direction(enum.Enum):
    MOST_LIKE = "most-like"
    LEAST_LIKE = "least-like"


@dataclass(frozen=True)
class Tweet:
    tweet_id: str
    text: str
    gold: Optional[int] = None


@dataclass(frozen=True)
class ScoredTweet:
    tweet_id: str
    text: str
    score: float


@dataclass
class HashtagSet:
    hashtag_name: str
    tweets: list[Tweet] = field(default_factory=list)

    def __post_init__(self) -> None:
        seen = set()
        for t in self.tweets:
            if t.tweet_id in seen:
                raise ValueError(
                    f"duplicate tweet id {t.tweet_id!r} in hashtag {self.hashtag_name!r}"
                )
            seen.add(t.tweet_id)


def load_hashtag_file(path: Union[str, Path], require_gold: bool = False) -> HashtagSet:
    """Read one hashtag TSV: tweet_id<TAB>text[<TAB>gold_label] per line.

    The hashtag name is the file stem. Blank lines are skipped.
    """
    path = Path(path)
    tweets: list[Tweet] = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) < 2 or len(parts) > 3 or not parts[0]:
                raise TsvFormatError(
                    path, lineno, "expected tweet_id<TAB>text[<TAB>gold_label]"
                )
            gold: Optional[int] = None
            if len(parts) == 3:
                try:
                    gold = int(parts[2])
                except ValueError:
                    gold = -1
                if gold not in GOLD_LABELS:
                    raise TsvFormatError(
                        path, lineno, f"gold label must be one of {GOLD_LABELS}, got {parts[2]!r}"
                    )
            elif require_gold:
                raise TsvFormatError(path, lineno, "gold label column required")
            tweets.append(Tweet(parts[0], parts[1], gold))
    try:
        return HashtagSet(path.stem, tweets)
    except ValueError as e:
        raise TsvFormatError(path, 0, str(e)) from None


def score_hashtag(
    hashtag_set: HashtagSet, model: NGramModel, config: PrepConfig
) -> list[ScoredTweet]:
    """Score each tweet's log10 probability; output order matches input order.

    Tweets that filter down to nothing score as the empty sequence.
    """
    out = []
    for t in hashtag_set.tweets:
        tokens = filter_tokens(tokenize(t.text, config), config)
        score = model.score_sequence(tokens, boundaries=config.boundaries)
        out.append(ScoredTweet(t.tweet_id, t.text, score))
    return out


def rank(scored: list[ScoredTweet], direction: Direction) -> list[ScoredTweet]:
    """Order funniest-first. Ties broken by ascending tweet_id."""
    if direction is Direction.MOST_LIKE:
        return sorted(scored, key=lambda s: (-s.score, s.tweet_id))
    return sorted(scored, key=lambda s: (s.score, s.tweet_id))


def pairwise(ranked: list[ScoredTweet]) -> list[tuple[str, str, int]]:
    """All n(n-1)/2 unordered pairs as (earlier_id, later_id, 1).

    Label 1 asserts the first id is the funnier; ranked input therefore
    yields all-1 labels.
    """
    out = []
    for i, a in enumerate(ranked):
        for b in ranked[i + 1:]:
            out.append((a.tweet_id, b.tweet_id, 1))
    return out
