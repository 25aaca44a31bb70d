#!/usr/bin/env python3
"""Generates the three-door Monty Hall model (corpus/models/montyhall.ptlm)."""

import sys
from fractions import Fraction

DOORS = [1, 2, 3]


def d(n):
    return f"d{n}"


def main(out):
    states = ["s0"]
    transitions = []
    valuation = []

    def label(name, car=None, picked=None, opened=None):
        atoms = []
        for n in DOORS:
            if car != n:
                atoms.append(f"G({d(n)})")
        if car is not None:
            atoms.append(f"C({d(car)})")
        if picked is not None:
            atoms.append(f"P({d(picked)})")
        if opened is not None:
            atoms.append(f"O({d(opened)})")
        if car is not None and car == picked:
            atoms.append("V")
        valuation.append(f"  {name} : " + " ".join(atoms))

    label("s0")
    for k in DOORS:
        ck = f"c{k}"
        states.append(ck)
        transitions.append(f"  s0 --h--> {ck} @ 1/{len(DOORS)}")
        label(ck, car=k)
    for k in DOORS:
        for j in DOORS:
            ckpj = f"c{k}p{j}"
            states.append(ckpj)
            transitions.append(f"  c{k} --p({d(j)})--> {ckpj} @ 1")
            label(ckpj, car=k, picked=j)
    for k in DOORS:
        for j in DOORS:
            ckpj = f"c{k}p{j}"
            openable = [m for m in DOORS if m != k and m != j]
            for m in openable:
                name = f"{ckpj}o{m}"
                states.append(name)
                transitions.append(f"  {ckpj} --o--> {name} @ {Fraction(1, len(openable))}")
                label(name, car=k, picked=j, opened=m)
    for k in DOORS:
        for j in DOORS:
            for m in [m for m in DOORS if m != k and m != j]:
                src = f"c{k}p{j}o{m}"
                (switched,) = [n for n in DOORS if n != j and n != m]
                states.append(src + "s")
                transitions.append(f"  {src} --s--> {src}s @ 1")
                label(src + "s", car=k, picked=switched, opened=m)
                states.append(src + "n")
                transitions.append(f"  {src} --nos--> {src}n @ 1")
                label(src + "n", car=k, picked=j, opened=m)

    lines = [
        "-- Three-door Monty Hall game, generated by tools/gen_montyhall.py.",
        "-- h hides the car, p(d) picks door d, o opens a goat door, s switches, nos keeps the pick.",
        "types",
        "  C : obj -> prop",
        "  G : obj -> prop",
        "  P : obj -> prop",
        "  O : obj -> prop",
        "  V : prop",
        "  D : [obj] := " + " :: ".join(d(n) for n in DOORS) + " :: nil",
        "objects",
        "  " + " ".join(d(n) for n in DOORS) + " : Door",
        "states",
    ]
    for i in range(0, len(states), 8):
        lines.append("  " + " ".join(states[i:i + 8]))
    lines += ["initial: s0", "actions", "  h o s nos", "  p : obj -> action", "transitions"]
    lines += transitions
    lines.append("valuation")
    lines += valuation
    with open(out, "w") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "corpus/models/montyhall.ptlm")
