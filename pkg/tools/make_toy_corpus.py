"""Regenerate the bundled toy corpus (src/atmkit/data/toy_corpus.jsonl).

Synthetic titles/abstracts over five themes, fictional authors, years
1997-2006. Deterministic: run it twice, get the same file.
"""

import json
import random
import sys
from pathlib import Path

THEMES = {
    "vision": {
        "words": "image images segmentation edge edges pixel pixels texture contour shape shapes "
        "region regions filter filtering matching detection detector boundary illumination".split(),
        "phrases": ["image segmentation", "edge detection", "texture analysis"],
    },
    "neural": {
        "words": "neural neuron neurons network networks recurrent dynamics stability synapse "
        "activation layer layers convergence hopfield weights feedback oscillator".split(),
        "phrases": ["neural network", "recurrent network", "global stability"],
    },
    "learning": {
        "words": "learning learner hypothesis hypotheses bound bounds sample samples concept "
        "concepts queries mistake generalization teacher boosting online".split(),
        "phrases": ["sample complexity", "online learning", "mistake bound"],
    },
    "clustering": {
        "words": "cluster clusters clustering partition centroid centroids mixture density "
        "outlier outliers distance prototypes linkage hierarchical fuzzy membership".split(),
        "phrases": ["fuzzy clustering", "mixture model", "cluster validity"],
    },
    "kernels": {
        "words": "kernel kernels margin support vector vectors classifier classifiers "
        "regularization hyperplane quadratic dual sparse regression slack".split(),
        "phrases": ["support vector", "kernel machine", "large margin"],
    },
}

FILLER = (
    "we propose a new method for the problem of . the approach is based on and "
    "experimental results show that it performs well compared with existing methods "
    "this paper presents an efficient algorithm using our study demonstrates"
).split()

FIRST = "Ada Bram Cora Dario Elin Femi Gita Hugo Ines Jonas Kira Lior Mara Niko Oda".split()
LAST = "Vance Okoro Lindqvist Mbeki Araya Tanaka Novak Reyes Haddad Kowal".split()


def make_authors(rng, n):
    names = set()
    while len(names) < n:
        names.add(f"{rng.choice(FIRST)} {rng.choice(LAST)}")
    return sorted(names)


def sentence(rng, theme, n_words):
    t = THEMES[theme]
    out = []
    while len(out) < n_words:
        r = rng.random()
        if r < 0.22:
            out.extend(rng.choice(t["phrases"]).split())
        elif r < 0.70:
            out.append(rng.choice(t["words"]))
        else:
            out.append(rng.choice(FILLER))
    return " ".join(out).capitalize() + "."


def main(out_path):
    rng = random.Random(20240611)
    authors = make_authors(rng, 30)
    themes = list(THEMES)
    primary = {a: themes[i % len(themes)] for i, a in enumerate(authors)}
    records = []
    for i in range(80):
        year = 1997 + (i * 10) // 80
        lead = authors[rng.randrange(len(authors))]
        team = [lead]
        for _ in range(rng.choice([0, 0, 1, 1, 2])):
            # co-authors mostly share the lead's theme
            pool = [a for a in authors if primary[a] == primary[lead]] if rng.random() < 0.7 else authors
            cand = rng.choice(pool)
            if cand not in team:
                team.append(cand)
        doc_themes = [primary[a] for a in team]
        title = sentence(rng, doc_themes[0], 6).rstrip(".")
        body = " ".join(sentence(rng, rng.choice(doc_themes), rng.randint(10, 16)) for _ in range(5))
        if i % 9 == 0:
            body += f" Results on {rng.randint(2, 99)} benchmark datasets (2nd round) are reported!"
        shown = list(team)
        if i % 13 == 0:
            shown[0] = "  " + shown[0].replace(" ", "   ") + " "
        records.append(
            {
                "id": f"toy-{i:03d}",
                "title": title,
                "abstract": body,
                "authors": shown,
                "year": year,
                "venue": ["Toy-ML", "Toy-NN", "Toy-PR"][i % 3],
            }
        )
    with open(out_path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    default = Path(__file__).resolve().parents[1] / "src" / "atmkit" / "data" / "toy_corpus.jsonl"
    main(sys.argv[1] if len(sys.argv) > 1 else default)
