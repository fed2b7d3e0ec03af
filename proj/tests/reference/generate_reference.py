"""Brute-force reference values for the C++ tests.

Independent numpy implementation: dense Kronecker embeddings, no shared code
with the library. Rerun with `python3 generate_reference.py > reference_values.json`.
"""

import json

import numpy as np


def h(x, p):
    x = complex(x)
    if p == 0:
        return 2 * np.sinh(x)
    k = max(1, int(np.ceil(np.log(1e-20) / np.log(abs(p)))))
    r = np.exp(x)
    for i in range(k):
        r *= (1 - p**i * np.exp(-2 * x)) * (1 - p ** (i + 1) * np.exp(2 * x))
    return r


def r_matrix(l, th, pr):
    p, eta = pr["p"], pr["eta"]
    m = np.zeros((4, 4), complex)
    m[0, 0] = m[3, 3] = h(l + eta, p)
    m[1, 1] = h(l, p) * h(th - eta, p) / h(th, p)
    m[2, 2] = h(l, p) * h(th + eta, p) / h(th, p)
    m[1, 2] = h(eta, p) * h(th - l, p) / h(th, p)
    m[2, 1] = h(eta, p) * h(th + l, p) / h(th, p)
    return m


def embed(local, a, b, m):
    """local(bits) -> 4x4 acting on spaces (a, b); space 0 is the high bit."""
    dim = 2**m
    out = np.zeros((dim, dim), complex)
    for col in range(dim):
        bits = [(col >> (m - 1 - k)) & 1 for k in range(m)]
        block = local(bits)
        ci = bits[a] * 2 + bits[b]
        for ro in range(4):
            nb = list(bits)
            nb[a], nb[b] = ro >> 1, ro & 1
            out[sum(v << (m - 1 - k) for k, v in enumerate(nb)), col] += block[ro, ci]
    return out


def height(bits, j, n):
    return sum(1 - 2 * bits[k] for k in range(j + 1, n + 1))


def boundary_b(l, pr):
    n = len(pr["xi"])
    m = n + 1
    t = np.eye(2**m, dtype=complex)
    for j in range(1, n + 1):
        t = t @ embed(lambda b, j=j: r_matrix(l - pr["xi"][j - 1], pr["theta"] - pr["eta"] * height(b, j, n), pr), 0, j, m)
    x = np.eye(2**m, dtype=complex)
    for j in range(n, 0, -1):
        x = x @ embed(lambda b, j=j: r_matrix(l + pr["xi"][j - 1], pr["theta"] - pr["eta"] * height(b, j, n), pr), j, 0, m)
    p, th, z = pr["p"], pr["theta"], pr["zeta"]
    k = np.diag([h(th + z - l, p) / h(th + z + l, p), h(z - l, p) / h(z + l, p)])
    full = t @ np.kron(k, np.eye(2**n)) @ x
    return full[: 2**n, 2**n :]


def partition(pr):
    n = len(pr["xi"])
    v = np.zeros(2**n, complex)
    v[0] = 1
    for l in pr["lambda"]:
        v = boundary_b(l, pr) @ v
    return v[-1]


def c(z):
    return [z.real, z.imag]


def params(rng, n, p):
    draw = lambda: complex(rng.uniform(0.1, 1.5), rng.uniform(-0.2, 0.2))
    return {"p": p, "eta": draw(), "zeta": draw(), "theta": draw(),
            "lambda": [draw() for _ in range(n)], "xi": [draw() for _ in range(n)]}


def main():
    rng = np.random.default_rng(20261016)
    nomes = [0, 1e-3, 0.1, 0.5 * np.exp(0.2j)]
    h_values = []
    for p in nomes:
        for x in [0.3 + 0.1j, -1.2 + 0.7j, 1.9 - 1.5j]:
            h_values.append({"p": c(complex(p)), "x": c(x), "h": c(h(x, p))})
    cases = []
    for n, p in [(1, 0.1 + 0.02j), (2, 0.1 + 0.02j), (2, 0.3j), (3, 0.05), (3, 0.0), (4, 0.1 - 0.01j)]:
        pr = params(rng, n, p)
        cases.append({
            "p": c(complex(pr["p"])), "eta": c(pr["eta"]), "zeta": c(pr["zeta"]),
            "theta": c(pr["theta"]), "lambda": [c(z) for z in pr["lambda"]],
            "xi": [c(z) for z in pr["xi"]], "z": c(partition(pr)),
        })
    print(json.dumps({"h": h_values, "partition": cases}, indent=1))


if __name__ == "__main__":
    main()
