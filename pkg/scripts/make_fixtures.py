"""Regenerate the bundled demo datasets under data/.

The three datasets are small by design: fig2 is the worked example used
throughout the test suite, got-mini is a battles/houses/books slice with a
bimodal attacker_size distribution, coauthor-mini is a bipartite
author/paper graph. Counts that the tests pin (battle group sizes, house
adjacency) are asserted here so an accidental edit fails fast.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"


def write_dataset(name, schema, nodes, edges):
    d = DATA / name
    d.mkdir(parents=True, exist_ok=True)
    (d / "schema.json").write_text(json.dumps(schema, indent=2) + "\n")
    with open(d / "nodes.jsonl", "w") as f:
        for n in nodes:
            f.write(json.dumps(n) + "\n")
    with open(d / "edges.jsonl", "w") as f:
        for e in edges:
            f.write(json.dumps(e) + "\n")
    print(f"wrote {name}: {len(nodes)} nodes, {len(edges)} edges")


# --------------------------------------------------------------------------
# fig2: seven nodes A..G, nine edges


def fig2():
    schema = {
        "nodeTypes": [
            {
                "name": "plain",
                "icon": "circle",
                "attributes": [
                    {"name": "val", "kind": "numeric", "domain": {"min": 1, "max": 7}},
                    {"name": "grp", "kind": "nominal", "domain": {"categories": ["red", "blue"]}},
                ],
            }
        ],
        "edgeTypes": [{"name": "link"}],
    }
    red = {"B", "G"}
    nodes = [
        {
            "id": x,
            "type": "plain",
            "label": x,
            "attributes": {"val": i + 1, "grp": "red" if x in red else "blue"},
        }
        for i, x in enumerate("ABCDEFG")
    ]
    pairs = ["AB", "AC", "AD", "BC", "BD", "BE", "CF", "DG", "FG"]
    edges = [
        {"id": f"e-{p.lower()}", "source": p[0], "target": p[1], "type": "link", "directed": False}
        for p in pairs
    ]
    write_dataset("fig2", schema, nodes, edges)


# --------------------------------------------------------------------------
# got-mini


SMALL_BATTLES = [
    # (id, label, attacker_size, defender_size, year, outcome, stark)
    ("t-mummersford", "Battle at the Mummer's Ford", 1500, 120, 298, "attacker_win", True),
    ("t-goldentooth", "Battle of the Golden Tooth", 7500, 4000, 298, "attacker_win", False),
    ("t-riverrun", "Battle of Riverrun", 6000, 4000, 298, "attacker_win", False),
    ("t-whisperingwood", "Battle of the Whispering Wood", 1875, 6000, 298, "attacker_win", True),
    ("t-camps", "Battle of the Camps", 6000, 12, 298, "attacker_win", True),
    ("t-darrysack", "Sack of Darry", 900, 100, 298, "attacker_win", False),
    ("t-torrhens", "Battle of Torrhen's Square", 2000, 900, 299, "defender_win", True),
    ("t-winterfellsack", "Sack of Winterfell", 600, 120, 299, "attacker_win", True),
    ("t-oxcross", "Battle of Oxcross", 6000, 9000, 299, "attacker_win", True),
    ("t-stormsend", "Siege of Storm's End", 5000, 200, 299, "attacker_win", False),
    ("t-fords", "Battle of the Fords", 4500, 2000, 299, "defender_win", False),
    ("t-harrenhal", "Sack of Harrenhal", 100, 100, 299, "attacker_win", False),
    ("t-duskendale", "Battle of Duskendale", 3000, 3000, 299, "defender_win", True),
    ("t-rubyford", "Battle of the Ruby Ford", 2500, 800, 299, "attacker_win", True),
    ("t-darrysiege", "Siege of Darry", 2200, 600, 299, "attacker_win", False),
    ("t-crag", "Battle of the Crag", 1200, 300, 299, "attacker_win", True),
]

LARGE_BATTLES = [
    ("t-greenfork", "Battle of the Green Fork", 18000, 7500, 298, "defender_win", True),
    ("t-blackwater", "Battle of the Blackwater", 21000, 7250, 299, "defender_win", False),
    ("t-castleblack", "Battle of Castle Black", 100000, 1240, 300, "defender_win", False),
    ("t-trident", "Battle of the Trident", 35000, 30000, 283, "attacker_win", False),
]

PERSONS = [
    ("p-eddard", "Eddard Stark", "northmen"),
    ("p-robb", "Robb Stark", "northmen"),
    ("p-catelyn", "Catelyn Stark", "rivermen"),
    ("p-sansa", "Sansa Stark", "northmen"),
    ("p-arya", "Arya Stark", "northmen"),
    ("p-jon", "Jon Snow", "northmen"),
    ("p-joffrey", "Joffrey Baratheon", "crownlands"),
    ("p-cersei", "Cersei Lannister", "westermen"),
    ("p-jaime", "Jaime Lannister", "westermen"),
    ("p-tywin", "Tywin Lannister", "westermen"),
]

BOOKS = [
    ("b-agot", "A Game of Thrones", 1996, 694),
    ("b-acok", "A Clash of Kings", 1998, 768),
    ("b-asos", "A Storm of Swords", 2000, 973),
    ("b-affc", "A Feast for Crows", 2005, 753),
    ("b-adwd", "A Dance with Dragons", 2011, 1016),
]

APPEARANCES = {
    "p-eddard": ["b-agot", "b-acok", "b-asos", "b-affc", "b-adwd"],
    "p-robb": ["b-agot", "b-acok", "b-asos"],
    "p-catelyn": ["b-agot", "b-acok", "b-asos"],
    "p-sansa": ["b-agot", "b-acok", "b-asos", "b-affc"],
    "p-arya": ["b-agot", "b-acok", "b-asos", "b-affc"],
    "p-jon": ["b-agot", "b-acok", "b-asos", "b-adwd"],
    "p-joffrey": ["b-agot", "b-acok", "b-asos"],
    "p-cersei": ["b-agot", "b-acok", "b-asos", "b-affc", "b-adwd"],
    "p-jaime": ["b-agot", "b-asos", "b-affc", "b-adwd"],
    "p-tywin": ["b-agot", "b-acok", "b-asos"],
}


def got_mini():
    schema = {
        "nodeTypes": [
            {
                "name": "Person",
                "icon": "person",
                "attributes": [
                    {
                        "name": "culture",
                        "kind": "nominal",
                        "domain": {"categories": ["northmen", "westermen", "crownlands", "rivermen"]},
                    }
                ],
            },
            {
                "name": "House",
                "icon": "shield",
                "attributes": [
                    {
                        "name": "region",
                        "kind": "nominal",
                        "domain": {"categories": ["north", "westerlands", "stormlands"]},
                    }
                ],
            },
            {
                "name": "Battle",
                "icon": "swords",
                "attributes": [
                    {"name": "attacker_size", "kind": "numeric", "domain": {"min": 0, "max": 100000}},
                    {"name": "defender_size", "kind": "numeric", "domain": {"min": 0, "max": 100000}},
                    {"name": "year", "kind": "numeric", "domain": {"min": 280, "max": 300}},
                    {
                        "name": "outcome",
                        "kind": "nominal",
                        "domain": {"categories": ["attacker_win", "defender_win"]},
                    },
                ],
            },
            {
                "name": "Book",
                "icon": "book",
                "attributes": [
                    {"name": "year", "kind": "numeric", "domain": {"min": 1990, "max": 2015}},
                    {"name": "pages", "kind": "numeric", "domain": {"min": 0, "max": 1200}},
                ],
            },
            {"name": "Group", "icon": "badge", "attributes": []},
        ],
        "edgeTypes": [
            {"name": "member-of"},
            {"name": "family"},
            {"name": "appears-in"},
            {"name": "in-group"},
            {"name": "attacker"},
            {"name": "defender"},
            {"name": "commander"},
        ],
    }

    nodes = []
    for pid, label, culture in PERSONS:
        nodes.append({"id": pid, "type": "Person", "label": label, "attributes": {"culture": culture}})
    for hid, label, region in [
        ("h-stark", "House Stark", "north"),
        ("h-lannister", "House Lannister", "westerlands"),
        ("h-baratheon", "House Baratheon", "stormlands"),
    ]:
        nodes.append({"id": hid, "type": "House", "label": label, "attributes": {"region": region}})
    for bid, label, year, pages in BOOKS:
        nodes.append({"id": bid, "type": "Book", "label": label, "attributes": {"year": year, "pages": pages}})
    for tid, label, att, deff, year, outcome, _stark in SMALL_BATTLES + LARGE_BATTLES:
        nodes.append(
            {
                "id": tid,
                "type": "Battle",
                "label": label,
                "attributes": {
                    "attacker_size": att,
                    "defender_size": deff,
                    "year": year,
                    "outcome": outcome,
                },
            }
        )
    nodes.append({"id": "g-nobles", "type": "Group", "label": "Nobles", "attributes": {}})

    edges = []

    def edge(eid, src, dst, etype, directed=True):
        edges.append({"id": eid, "source": src, "target": dst, "type": etype, "directed": directed})

    for pid, _, _ in PERSONS:
        short = pid.split("-")[1]
        if "Stark" in dict((p, l) for p, l, _ in PERSONS)[pid] or pid == "p-jon":
            edge(f"e-mem-{short}", pid, "h-stark", "member-of")
    for pid in ["p-cersei", "p-jaime", "p-tywin"]:
        edge(f"e-mem-{pid.split('-')[1]}", pid, "h-lannister", "member-of")
    edge("e-mem-joffrey-b", "p-joffrey", "h-baratheon", "member-of")
    edge("e-mem-joffrey-l", "p-joffrey", "h-lannister", "member-of")

    for a, b in [
        ("p-eddard", "p-robb"),
        ("p-eddard", "p-catelyn"),
        ("p-eddard", "p-sansa"),
        ("p-eddard", "p-arya"),
        ("p-eddard", "p-jon"),
        ("p-cersei", "p-joffrey"),
        ("p-jaime", "p-cersei"),
        ("p-tywin", "p-jaime"),
    ]:
        edge(f"e-fam-{a.split('-')[1]}-{b.split('-')[1]}", a, b, "family", directed=False)

    for pid, books in APPEARANCES.items():
        for bid in books:
            edge(f"e-app-{pid.split('-')[1]}-{bid.split('-')[1]}", pid, bid, "appears-in")

    edge("e-grp-eddard", "p-eddard", "g-nobles", "in-group", directed=False)
    edge("e-grp-joffrey", "p-joffrey", "g-nobles", "in-group", directed=False)

    # House Lannister touches every battle; House Stark touches the Green Fork
    # and exactly nine of the sixteen smaller ones.
    for tid, _, _, _, _, _, stark in SMALL_BATTLES + LARGE_BATTLES:
        short = tid.split("-")[1]
        lan_side = "attacker" if not stark else "defender"
        edge(f"e-lan-{short}", "h-lannister", tid, lan_side)
        if stark:
            edge(f"e-stk-{short}", "h-stark", tid, "attacker")
    edge("e-bar-blackwater", "h-baratheon", "t-blackwater", "attacker")
    edge("e-bar-stormsend", "h-baratheon", "t-stormsend", "defender")

    edge("e-cmd-robb-mummersford", "p-robb", "t-mummersford", "commander")
    edge("e-cmd-joffrey-mummersford", "p-joffrey", "t-mummersford", "commander")
    edge("e-cmd-joffrey-blackwater", "p-joffrey", "t-blackwater", "commander")

    # pinned counts
    small = [t for t in SMALL_BATTLES]
    assert len(small) == 16 and len(LARGE_BATTLES) == 4
    assert all(t[2] < 10000 for t in small)
    assert all(t[2] > 10000 for t in LARGE_BATTLES)
    stark_small = [t for t in small if t[6]]
    assert len(stark_small) == 9
    stark_large = [t for t in LARGE_BATTLES if t[6]]
    assert [t[0] for t in stark_large] == ["t-greenfork"]
    lan_battle_edges = [e for e in edges if e["source"] == "h-lannister"]
    assert len(lan_battle_edges) == 20

    write_dataset("got-mini", schema, nodes, edges)


# --------------------------------------------------------------------------
# coauthor-mini


AUTHORS = [
    ("a-elmqvist", "Niklas Elmqvist", 20),
    ("a-henry", "Nathalie Henry", 18),
    ("a-fekete", "Jean-Daniel Fekete", 40),
    ("a-mcguffin", "Michael McGuffin", 12),
    ("a-lee", "Bongshin Lee", 28),
    ("a-plaisant", "Catherine Plaisant", 29),
    ("a-bederson", "Ben Bederson", 27),
    ("a-shneiderman", "Ben Shneiderman", 55),
    ("a-parr", "Cynthia Parr", 8),
    ("a-isenberg", "Petra Isenberg", 22),
    ("a-lam", "Heidi Lam", 17),
    ("a-wang", "Taowei Wang", 4),
]

PAPERS = [
    ("r-treeplus", "TreePlus", "TVCG", 2006, 230, ["a-lee", "a-parr", "a-plaisant", "a-bederson"]),
    ("r-nodetrix", "NodeTrix", "TVCG", 2007, 410, ["a-henry", "a-fekete", "a-mcguffin"]),
    ("r-melange", "Melange", "CHI", 2009, 120, ["a-elmqvist", "a-henry", "a-fekete"]),
    ("r-lifelines", "LifeLines", "CHI", 1996, 680, ["a-plaisant", "a-shneiderman"]),
    ("r-taxonomy", "Interaction Taxonomy", "TVCG", 2007, 150, ["a-lee", "a-plaisant", "a-isenberg"]),
    ("r-lifelines2", "LifeLines2", "CHI", 2008, 190, ["a-plaisant", "a-wang", "a-shneiderman"]),
    ("r-sessionviewer", "Session Viewer", "TVCG", 2007, 90, ["a-lam", "a-isenberg"]),
    ("r-treemaps", "Treemap Studies", "CHI", 1994, 520, ["a-shneiderman", "a-bederson"]),
]


def coauthor_mini():
    schema = {
        "nodeTypes": [
            {
                "name": "Author",
                "icon": "person",
                "attributes": [{"name": "citations", "kind": "numeric", "domain": {"min": 0, "max": 1000}}],
            },
            {
                "name": "Paper",
                "icon": "article",
                "attributes": [
                    {"name": "year", "kind": "numeric", "domain": {"min": 1990, "max": 2015}},
                    {"name": "venue", "kind": "nominal", "domain": {"categories": ["CHI", "TVCG"]}},
                    {"name": "citations", "kind": "numeric", "domain": {"min": 0, "max": 1000}},
                ],
            },
        ],
        "edgeTypes": [{"name": "authored"}],
    }
    nodes = []
    for aid, label, cit in AUTHORS:
        nodes.append({"id": aid, "type": "Author", "label": label, "attributes": {"citations": cit}})
    for rid, label, venue, year, cit, _ in PAPERS:
        nodes.append(
            {
                "id": rid,
                "type": "Paper",
                "label": label,
                "attributes": {"year": year, "venue": venue, "citations": cit},
            }
        )
    edges = []
    for rid, _, _, _, _, authors in PAPERS:
        for aid in authors:
            edges.append(
                {
                    "id": f"e-{aid.split('-')[1]}-{rid.split('-')[1]}",
                    "source": aid,
                    "target": rid,
                    "type": "authored",
                    "directed": True,
                }
            )

    # the two-path pattern: both routes from Elmqvist to NodeTrix run through
    # Melange, then split over Henry / Fekete
    melange_authors = dict((r[0], r[5]) for r in PAPERS)["r-melange"]
    nodetrix_authors = dict((r[0], r[5]) for r in PAPERS)["r-nodetrix"]
    assert "a-elmqvist" in melange_authors
    assert {"a-henry", "a-fekete"} <= set(melange_authors) & set(nodetrix_authors)
    assert sum(1 for r in PAPERS if "a-elmqvist" in r[5]) == 1

    write_dataset("coauthor-mini", schema, nodes, edges)


if __name__ == "__main__":
    fig2()
    got_mini()
    coauthor_mini()
    sys.exit(0)
