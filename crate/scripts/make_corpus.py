#!/usr/bin/env python3
"""Regenerate the planar_code / graph6 test corpora in crates/core/tests/data.

Requires a `plantri` binary on PATH (or PLANTRI=/path/to/plantri) and networkx.
"""
import os
import subprocess
import sys

import networkx as nx

PLANTRI = os.environ.get("PLANTRI", "plantri")
HEADER = b">>planar_code<<"
OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "data")


def run(args):
    out = subprocess.run([PLANTRI] + args, capture_output=True, check=True).stdout
    assert out.startswith(HEADER), args
    return out[len(HEADER):]


def records(body):
    i, out = 0, []
    while i < len(body):
        n, j, zeros = body[i], i + 1, 0
        while zeros < n:
            zeros += body[j] == 0
            j += 1
        out.append(body[i:j])
        i = j
    return out


def write(name, parts):
    with open(os.path.join(OUT, name), "wb") as f:
        f.write(HEADER + b"".join(parts))


def main():
    write("triangulations_4_11.pc", [run([str(n)]) for n in range(4, 12)])
    write("triangulations_12.pc", [run(["12"])])
    write("triangulations_13_14_sample.pc", [run(["13", "0/40"]), run(["14", "0/300"])])
    write("plane_connected_3_7.pc", [run(["-pc1m1", str(n)]) for n in range(3, 8)])
    write("plane_2conn_8.pc", [run(["-pc2m2", "8"])])
    slices = {9: None, 10: "0/8000", 11: "0/150000", 12: "0/3000000", 13: "0/60000000", 14: "0/1000000000"}
    picked = []
    for n, resmod in slices.items():
        recs = records(run(["-pc2m2", str(n)] + ([resmod] if resmod else [])))
        step = max(1, len(recs) // 300)
        picked += recs[::step][:300]
    write("plane_2conn_9_14_sample.pc", picked)
    write("mindeg5_triangulations_12_20.pc", [run(["-m5", str(n)]) for n in range(12, 21)])

    lines = [
        nx.to_graph6_bytes(g, header=False).decode().strip()
        for g in nx.graph_atlas_g()
        if g.number_of_nodes() >= 1 and nx.is_connected(g)
    ]
    with open(os.path.join(OUT, "connected_upto7.g6"), "w") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    sys.exit(main())
