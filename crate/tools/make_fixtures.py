#!/usr/bin/env python3
"""Build the shipped segmentation fixture corpora under fixtures/.

Each corpus is derived from a pooled confusion matrix chosen by hand so that
per-class Dice hits the target values exactly:

    dice_c = 2 * I_c / (P_c + G_c)

With k_c = P_c + G_c fixed per class, I_c = dice_c * k_c / 2 must be an
integer. The off-diagonal mass of every class, k_c - 2 * I_c, is split into
missed ground-truth pixels (row remainder r_c) and false positives (column
remainder q_c), and a zero-diagonal count matrix with those margins is solved
as a max-flow problem. The resulting (gt, pred) pixel pairs are shuffled with a fixed seed
and cut into test images.

The script also writes expected.json with the Dice values, pooled pixel
accuracy and confusion matrix recomputed here from the pixel lists, so the
Rust suite checks its implementation against numbers this script produced.

Usage: python3 tools/make_fixtures.py   (from the repository root)
Requires numpy, networkx and Pillow.
"""

import json
import os
import random
import shutil

import networkx as nx
import numpy as np
from PIL import Image

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures")


def fill_offdiagonal(r, q):
    """Zero-diagonal non-negative integer matrix with row sums r, column sums q."""
    n = len(r)
    g = nx.DiGraph()
    for a in range(n):
        g.add_edge("src", ("row", a), capacity=int(r[a]))
        g.add_edge(("col", a), "dst", capacity=int(q[a]))
        for b in range(n):
            if a != b:
                g.add_edge(("row", a), ("col", b), capacity=sum(r))
    value, flow = nx.maximum_flow(g, "src", "dst")
    if value != sum(r):
        raise SystemExit(f"infeasible margins r={r} q={q}")
    m = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            if a != b:
                m[a, b] = flow[("row", a)][("col", b)]
    return m


def build_confusion(dice_milli, k, r):
    """dice_milli: Dice * 1000 as ints; k: P_c + G_c; r: missed gt per class."""
    n = len(k)
    inter = []
    for d, kc in zip(dice_milli, k):
        assert (d * kc) % 2000 == 0, (d, kc)
        inter.append(d * kc // 2000)
    slack = [kc - 2 * i for kc, i in zip(k, inter)]
    q = [s - rc for s, rc in zip(slack, r)]
    assert all(v >= 0 for v in q), q
    assert sum(r) == sum(q), (sum(r), sum(q))
    m = fill_offdiagonal(r, q)
    for c in range(n):
        m[c, c] = inter[c]
    return m


def pixel_pairs(conf):
    pairs = []
    n = conf.shape[0]
    for g in range(n):
        for p in range(n):
            pairs.extend([(g, p)] * int(conf[g, p]))
    return pairs


def write_png(path, grid):
    Image.fromarray(np.asarray(grid, dtype=np.uint8), mode="L").save(path, optimize=False)


def split_rows(total_rows, n_images):
    base, extra = divmod(total_rows, n_images)
    return [base + (1 if i < extra else 0) for i in range(n_images)]


def dice_from_pairs(pairs, n):
    conf = np.zeros((n, n), dtype=np.int64)
    for g, p in pairs:
        conf[g, p] += 1
    out = []
    for c in range(n):
        inter = conf[c, c]
        denom = conf[c, :].sum() + conf[:, c].sum()
        out.append(1.0 if denom == 0 else 2.0 * inter / denom)
    acc = float(np.trace(conf)) / float(conf.sum())
    return out, acc, conf


def small_mask(rng, n_classes, size=8):
    return [[rng.randrange(n_classes) for _ in range(size)] for _ in range(size)]


def build_corpus(name, family, n_classes, conf, width, splits, seed, tracks=None):
    out = os.path.join(ROOT, name)
    if os.path.isdir(out):
        shutil.rmtree(out)
    for sub in ("gt", "pred"):
        os.makedirs(os.path.join(out, sub))

    rng = random.Random(seed)
    pairs = pixel_pairs(conf)
    total = len(pairs)
    assert total % width == 0, (total, width)
    rng.shuffle(pairs)

    n_train, n_val, n_test = splits
    heights = split_rows(total // width, n_test)
    records = []

    for i in range(n_train):
        image_id = f"{name}-train-{i:04d}"
        write_png(os.path.join(out, "gt", image_id + ".png"), small_mask(rng, n_classes))
        records.append({"image_id": image_id, "role": "train", "gt": f"gt/{image_id}.png"})
    for i in range(n_val):
        image_id = f"{name}-val-{i:04d}"
        write_png(os.path.join(out, "gt", image_id + ".png"), small_mask(rng, n_classes))
        records.append({"image_id": image_id, "role": "validation", "gt": f"gt/{image_id}.png"})

    cursor = 0
    test_pairs = []
    for i, h in enumerate(heights):
        chunk = pairs[cursor:cursor + h * width]
        cursor += h * width
        # Sorting by (gt, pred) lays pixels out as horizontal bands.
        chunk.sort()
        test_pairs.extend(chunk)
        gt = np.array([g for g, _ in chunk], dtype=np.uint8).reshape(h, width)
        pred = np.array([p for _, p in chunk], dtype=np.uint8).reshape(h, width)
        image_id = f"{name}-test-{i:04d}"
        write_png(os.path.join(out, "gt", image_id + ".png"), gt)
        write_png(os.path.join(out, "pred", image_id + ".png"), pred)
        rec = {
            "image_id": image_id,
            "role": "test",
            "gt": f"gt/{image_id}.png",
            "pred": f"pred/{image_id}.png",
        }
        if tracks:
            per_track = (n_test + tracks - 1) // tracks
            track = i // per_track
            slot = i % per_track
            rec["patch_offset"] = [0, slot * 64]
            rec["track_id"] = f"{name}-track-{track}"
        records.append(rec)
    assert cursor == total

    manifest = {"schema_version": 1, "class_map": family, "records": records}
    with open(os.path.join(out, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")

    dice, acc, pooled = dice_from_pairs(test_pairs, n_classes)
    expected = {
        "class_map": family,
        "splits": {"train": n_train, "validation": n_val, "test": n_test},
        "per_class_dice": dice,
        "mean_dsc": sum(dice) / len(dice),
        "pixel_accuracy": acc,
        "confusion": pooled.tolist(),
        "test_pixels": total,
    }
    with open(os.path.join(out, "expected.json"), "w") as fh:
        json.dump(expected, fh, indent=2)
        fh.write("\n")
    print(name, "dice", [round(d, 6) for d in dice], "mean", expected["mean_dsc"], "acc", acc)


def main():
    # Machining tools: background, flank_wear, chipping, built_up_edge.
    # k_0 is large so pooled accuracy lands near 0.977 as well.
    machining = build_confusion(
        dice_milli=[991, 695, 244, 596],
        k=[198000, 2000, 2000, 2000],
        r=[891, 400, 312, 753],
    )
    build_corpus("machining", "machining_tool", 4, machining, width=50,
                 splits=(152, 10, 51), seed=20240213)

    # Rotating anodes: normal_surface, cracks, molten_area.
    anode = build_confusion(
        dice_milli=[485, 634, 690],
        k=[36000, 30000, 30000],
        r=[9270, 5490, 4650],
    )
    build_corpus("anode", "rotating_anode", 3, anode, width=50,
                 splits=(1031, 37, 38), seed=20240214, tracks=2)


if __name__ == "__main__":
    main()
