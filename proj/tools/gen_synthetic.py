#!/usr/bin/env python3
"""Writes the synthetic BENCH corpus used by the tests and the acceptance suite.

Usage: gen_synthetic.py OUTDIR
"""
import random
import sys
from pathlib import Path


class Bench:
    def __init__(self, name):
        self.name = name
        self.inputs, self.outputs, self.gates = [], [], []
        self.count = 0

    def pi(self, name):
        self.inputs.append(name)
        return name

    def po(self, net):
        self.outputs.append(net)

    def g(self, kind, *args, name=None):
        if name is None:
            name = f"n{self.count}"
            self.count += 1
        self.gates.append(f"{name} = {kind}({', '.join(args)})")
        return name

    def text(self):
        lines = [f"# {self.name}", ""]
        lines += [f"INPUT({i})" for i in self.inputs] + [""]
        lines += [f"OUTPUT({o})" for o in self.outputs] + [""]
        return "\n".join(lines + self.gates) + "\n"


def full_adder(b, x, y, c):
    t = b.g("XOR", x, y)
    s = b.g("XOR", t, c)
    carry = b.g("OR", b.g("AND", x, y), b.g("AND", t, c))
    return s, carry


def rca(width):
    b = Bench(f"rca{width}")
    xs = [b.pi(f"a{i}") for i in range(width)]
    ys = [b.pi(f"b{i}") for i in range(width)]
    c = b.pi("cin")
    for i in range(width):
        s, c = full_adder(b, xs[i], ys[i], c)
        b.po(b.g("BUFF", s, name=f"s{i}"))
    b.po(b.g("BUFF", c, name="cout"))
    return b


def multiplier(width):
    b = Bench(f"mult{width}")
    xs = [b.pi(f"a{i}") for i in range(width)]
    ys = [b.pi(f"b{i}") for i in range(width)]
    rows = [[b.g("AND", xs[j], ys[i]) for j in range(width)] for i in range(width)]
    acc = rows[0][:]
    outs = [acc[0]]
    acc = acc[1:]
    for i in range(1, width):
        carry = None
        nxt = []
        for j in range(width):
            x = rows[i][j]
            y = acc[j] if j < len(acc) else None
            if y is None and carry is None:
                nxt.append(x)
            elif y is None:
                s = b.g("XOR", x, carry)
                carry = b.g("AND", x, carry)
                nxt.append(s)
            elif carry is None:
                s = b.g("XOR", x, y)
                carry = b.g("AND", x, y)
                nxt.append(s)
            else:
                s, carry = full_adder(b, x, y, carry)
                nxt.append(s)
        if carry is not None:
            nxt.append(carry)
        outs.append(nxt[0])
        acc = nxt[1:]
    outs += acc
    for k, net in enumerate(outs[: 2 * width]):
        b.po(b.g("BUFF", net, name=f"p{k}"))
    return b


def comparator(width):
    b = Bench(f"cmp{width}")
    xs = [b.pi(f"a{i}") for i in range(width)]
    ys = [b.pi(f"b{i}") for i in range(width)]
    gt, eq = None, None
    for i in reversed(range(width)):
        e = b.g("XNOR", xs[i], ys[i])
        g = b.g("AND", xs[i], b.g("NOT", ys[i]))
        if eq is None:
            gt, eq = g, e
        else:
            gt = b.g("OR", gt, b.g("AND", eq, g))
            eq = b.g("AND", eq, e)
    b.po(b.g("BUFF", gt, name="gt"))
    b.po(b.g("BUFF", eq, name="eq"))
    b.po(b.g("NOR", gt, eq, name="lt"))
    return b


def alu(width):
    b = Bench(f"alu{width}")
    xs = [b.pi(f"a{i}") for i in range(width)]
    ys = [b.pi(f"b{i}") for i in range(width)]
    op0, op1, c = b.pi("op0"), b.pi("op1"), b.pi("cin")
    nop0, nop1 = b.g("NOT", op0), b.g("NOT", op1)
    sel = [b.g("AND", nop1, nop0), b.g("AND", nop1, op0), b.g("AND", op1, nop0), b.g("AND", op1, op0)]
    for i in range(width):
        s, c = full_adder(b, xs[i], ys[i], c)
        terms = [s, b.g("AND", xs[i], ys[i]), b.g("OR", xs[i], ys[i]), b.g("XOR", xs[i], ys[i])]
        picked = [b.g("AND", sel[k], terms[k]) for k in range(4)]
        b.po(b.g("OR", *picked, name=f"f{i}"))
    b.po(b.g("AND", c, sel[0], name="cout"))
    return b


def decoder():
    b = Bench("dec4to16")
    xs = [b.pi(f"x{i}") for i in range(4)]
    en = b.pi("en")
    inv = [b.g("NOT", x) for x in xs]
    for k in range(16):
        lits = [xs[i] if (k >> i) & 1 else inv[i] for i in range(4)]
        b.po(b.g("AND", en, *lits, name=f"y{k}"))
    return b


def mux16():
    b = Bench("mux16")
    d = [b.pi(f"d{i}") for i in range(16)]
    s = [b.pi(f"s{i}") for i in range(4)]
    inv = [b.g("NOT", x) for x in s]
    terms = []
    for k in range(16):
        lits = [s[i] if (k >> i) & 1 else inv[i] for i in range(4)]
        terms.append(b.g("AND", d[k], *lits))
    b.po(b.g("OR", *terms, name="y"))
    b.po(b.g("NOR", *d[:8], name="zlo"))
    return b


def sec(width, checks):
    """Hamming single-error correction over `width` data bits (c499-like)."""
    b = Bench(f"sec{width}")
    d = [b.pi(f"d{i}") for i in range(width)]
    c = [b.pi(f"c{j}") for j in range(checks)]
    positions = [p for p in range(1, 64) if p & (p - 1)][:width]
    syn = []
    for j in range(checks):
        covered = [d[i] for i in range(width) if (positions[i] >> j) & 1]
        syn.append(b.g("XOR", c[j], *covered))
    nsyn = [b.g("NOT", x) for x in syn]
    for i in range(width):
        lits = [syn[j] if (positions[i] >> j) & 1 else nsyn[j] for j in range(checks)]
        hit = b.g("AND", *lits)
        b.po(b.g("XOR", d[i], hit, name=f"o{i}"))
    return b


def random_circuit(name, n_in, n_gates, n_out, seed):
    rng = random.Random(seed)
    b = Bench(name)
    nets = [b.pi(f"i{k}") for k in range(n_in)]
    kinds = ["AND", "NAND", "OR", "NOR", "XOR", "XNOR", "NOT", "BUFF"]
    for _ in range(n_gates):
        kind = rng.choice(kinds)
        window = nets[-max(8, len(nets) // 3):] if rng.random() < 0.7 else nets
        if kind in ("NOT", "BUFF"):
            b_net = b.g(kind, rng.choice(window))
        else:
            x, y = rng.sample(window, 2)
            b_net = b.g(kind, x, y)
        nets.append(b_net)
    gate_nets = nets[n_in:]
    for k, net in enumerate(rng.sample(gate_nets[-n_out * 3:], n_out)):
        b.po(b.g("BUFF", net, name=f"o{k}"))
    return b


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "benchmarks/synthetic")
    out.mkdir(parents=True, exist_ok=True)
    circuits = [
        rca(8), multiplier(4), multiplier(8), multiplier(12), comparator(16), alu(4), decoder(), mux16(),
        sec(16, 5), random_circuit("rand12", 12, 120, 6, 7), random_circuit("rand40", 40, 400, 12, 11),
    ]
    for c in circuits:
        (out / f"{c.name}.bench").write_text(c.text())
        print(f"{c.name}: {len(c.inputs)} PIs, {len(c.outputs)} POs, {len(c.gates)} gates")


if __name__ == "__main__":
    main()
