"""Partial sums of mu^(a,b)(r) for b = 1, summed over prime powers only.

Lambda_{r,1}(j) vanishes off prime powers, so for j = p^k
  Lambda_{r,1}(p^k) = (log p)(k log p)^r
  Lambda_{r,a}(p^k) = (log p)^a (log p)^{ra} * sum over compositions k = i_1+...+i_a of prod i_t^r.
Usage: python3 mu_prime_powers.py A R J
"""
import math
import sys

import numpy as np


def compositions_weight(k, a, r):
    # sum over ordered (i_1..i_a), i_t >= 1, sum = k, of prod i_t^r
    w = [0.0] * (k + 1)
    w[0] = 1.0
    for _ in range(a):
        nxt = [0.0] * (k + 1)
        for s in range(k + 1):
            if w[s]:
                for i in range(1, k - s + 1):
                    nxt[s + i] += w[s] * float(i) ** r
        w = nxt
    return w[k]


def main():
    a, r, J = int(sys.argv[1]), int(sys.argv[2]), int(sys.argv[3])
    sieve = np.ones(J + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(J**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    terms = []
    for p in np.nonzero(sieve)[0].tolist():
        lp = math.log(p)
        n, k = p, 1
        while n <= J:
            one = lp * (k * lp) ** r
            many = lp**a * lp ** (r * a) * compositions_weight(k, a, r)
            terms.append(one * many / (float(n) * float(n)))
            n *= p
            k += 1
    print(repr(math.fsum(terms)))


if __name__ == "__main__":
    main()
