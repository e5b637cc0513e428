"""Integer helpers (factorization is delegated to sympy)."""

from sympy import factorint, isprime


def prime_factors(n: int) -> list[int]:
    return sorted(factorint(n)) if n > 1 else []


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(n).values()) if n > 1 else True


def is_prime_power(n: int) -> bool:
    return len(factorint(n)) == 1 if n > 1 else False


def is_prime(n: int) -> bool:
    return bool(isprime(n))
