import itertools


def words_up_to(symbols, max_len):
    """All tuples over symbols of length 0..max_len, shortlex order."""
    for n in range(max_len + 1):
        yield from itertools.product(symbols, repeat=n)
