#!/usr/bin/env python3
"""Prints the body of kModulusTaps in src/gf2q_moduli.cpp.

For every degree 1..128 pick the trinomial x^q + x^k + 1 with the smallest k,
otherwise the pentanomial x^q + x^k3 + x^k2 + x^k1 + 1 minimizing k3, then k2,
then k1. Degree 1 uses x + 1.
"""
import sys


def mulmod(a, b, f, d):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> d) & 1:
            a ^= f
    return r


def gcd(a, b):
    while b:
        while a and a.bit_length() >= b.bit_length():
            a ^= b << (a.bit_length() - b.bit_length())
        a, b = b, a
    return a


def irreducible(f):
    d = f.bit_length() - 1
    x = 2
    power = x
    for i in range(1, d // 2 + 1):
        power = mulmod(power, power, f, d)
        if gcd(f, power ^ x) != 1:
            return False
    return True


def pick(q):
    if q == 1:
        return (0,)
    for k in range(1, q):
        if irreducible((1 << q) | (1 << k) | 1):
            return (k, 0)
    for k3 in range(3, q):
        for k2 in range(2, k3):
            for k1 in range(1, k2):
                if irreducible((1 << q) | (1 << k3) | (1 << k2) | (1 << k1) | 1):
                    return (k3, k2, k1, 0)
    raise RuntimeError(q)


def main():
    for q in range(1, 129):
        taps = pick(q)
        body = ", ".join(str(t) for t in taps)
        sys.stdout.write("    {%s},\n" % body)


if __name__ == "__main__":
    main()
