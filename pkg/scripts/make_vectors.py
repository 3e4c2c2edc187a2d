"""Regenerate the bundled mini word vectors (src/kae/data/vectors.txt).

Three semantic groups sit on the vertices of an equilateral triangle, so words
from different groups have cosine near -0.5; each word gets a little seeded
noise in extra dimensions. Closely related words share a sub-direction.
"""

from pathlib import Path

import numpy as np

GROUPS = {
    "agent": {
        "person": ["person", "people", "human", "individual"],
        "writer": ["author", "writer", "coauthor"],
        "chair": ["chair", "chairman", "chairperson", "organizer"],
        "scholar": ["researcher", "scientist", "scholar", "academic", "professor", "lecturer"],
        "editor": ["editor", "reviewer", "referee"],
        "member": ["member", "participant", "attendee", "speaker"],
        "learner": ["student", "pupil", "learner"],
        "staff": ["staff", "employee", "worker"],
    },
    "artifact": {
        "document": ["document", "record", "text"],
        "paper": ["paper", "contribution", "submission", "manuscript", "article", "publication"],
        "poster": ["poster", "demo", "presentation"],
        "book": ["book", "monograph", "volume", "proceedings"],
        "report": ["report", "thesis", "dissertation"],
    },
    "concept": {
        "topic": ["topic", "subject", "theme"],
        "area": ["area", "field", "domain", "discipline"],
        "keyword": ["keyword", "category", "tag"],
        "course": ["course", "module", "seminar", "lecture", "curriculum"],
    },
}

DIM = 12
SEED = 7


def build() -> dict[str, np.ndarray]:
    rng = np.random.default_rng(SEED)
    angles = {"agent": 0.0, "artifact": 2 * np.pi / 3, "concept": 4 * np.pi / 3}
    out = {}
    for group, subgroups in GROUPS.items():
        base = np.zeros(DIM)
        base[0], base[1] = np.cos(angles[group]), np.sin(angles[group])
        for words in subgroups.values():
            sub = base + 0.07 * np.concatenate([[0.0, 0.0], rng.normal(size=DIM - 2)])
            for word in words:
                vec = sub + 0.03 * np.concatenate([[0.0, 0.0], rng.normal(size=DIM - 2)])
                out[word] = vec
    return out


def main() -> None:
    vectors = build()
    path = Path(__file__).resolve().parents[1] / "src" / "kae" / "data" / "vectors.txt"
    lines = [f"{len(vectors)} {DIM}"]
    lines += [w + " " + " ".join(f"{x:.5f}" for x in v) for w, v in sorted(vectors.items())]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
