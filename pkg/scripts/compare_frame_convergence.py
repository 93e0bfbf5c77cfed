"""Join-cover convergence at the top element versus convergence to the top point.

For each corpus frame, and for the down-set lattices of every poset on up
to three labelled points, count the filters at the top on which the two
notions agree.
"""
from itertools import product

from sievefilters import corpus
from sievefilters.fincat import order_closure
from sievefilters.frames import FrameError, compare_convergence_notions, frame_from_poset


def down_set_frame(elems, leq):
    downs = []
    for bits in product((False, True), repeat=len(elems)):
        d = frozenset(x for x, keep in zip(elems, bits) if keep)
        if all(y in d for x in d for y in elems if (y, x) in leq):
            downs.append(d)
    name = {d: "{" + ",".join(sorted(d)) + "}" for d in downs}
    order = {(name[a], name[b]) for a in downs for b in downs if a <= b}
    return frame_from_poset(sorted(name.values()), order)


def posets(n):
    elems = [chr(ord("p") + i) for i in range(n)]
    pairs = [(a, b) for a in elems for b in elems if a < b]
    seen = set()
    for bits in product((False, True), repeat=len(pairs)):
        leq = frozenset(order_closure(elems, [p for p, keep in zip(pairs, bits) if keep]))
        if leq not in seen:
            seen.add(leq)
            yield elems, leq


def row(label, frame):
    rep = compare_convergence_notions(frame)
    n = rep.data["agree"] + rep.data["disagree"]
    print(f"{label:<28} elements={len(frame.elements):>2}  filters@top={n:>3}  "
          f"agree={rep.data['agree']:>3}  disagree={rep.data['disagree']:>3}")


def main() -> None:
    for name, (elems, cov) in corpus.LATTICES.items():
        try:
            frame = frame_from_poset(elems, order_closure(elems, cov))
        except FrameError as exc:
            print(f"{name:<28} not a frame: {exc}")
            continue
        row(name, frame)
    for n in (1, 2, 3):
        for elems, leq in posets(n):
            rel = sorted((a, b) for a, b in leq if a != b)
            row(f"Down({n}pts {rel})", down_set_frame(elems, leq))


if __name__ == "__main__":
    main()
