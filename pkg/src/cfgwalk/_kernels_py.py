"""Pure-Python kernels; reference behaviour for the compiled ``_kernels_c``.

Letters of the cancellation monoid are encoded as ints: ``2*i`` is the
plain letter with index ``i`` and ``2*i + 1`` its primed twin.  The only
rewrite is ``(2i+1)(2i) -> empty``: a primed letter followed by its plain
base.  Redexes never overlap (a plain letter cannot start one), so the
system is confluent and a single stack pass gives the normal form.
"""


def reduce_codes(codes):
    stack = []
    push = stack.append
    for c in codes:
        if stack:
            top = stack[-1]
            if top & 1 and c == top - 1:
                stack.pop()
                continue
        push(c)
    return tuple(stack)


def concat_codes(u, v):
    """Product of two reduced words; only the seam can cancel."""
    i = len(u)
    j = 0
    n = len(v)
    while i and j < n:
        top = u[i - 1]
        if top & 1 and v[j] == top - 1:
            i -= 1
            j += 1
        else:
            break
    if j == 0:
        return u + v
    return u[:i] + v[j:]


def cyk_fill(word, unary, binary, n_nt):
    """Fill the CYK table for ``word`` (terminal indices).

    ``unary`` is a sequence of ``(terminal, A)`` pairs, ``binary`` of
    ``(A, B, C)`` triples.  Returns a bytearray where cell
    ``((length - 1) * n + i) * n_nt + A`` is 1 iff A derives
    ``word[i:i + length]``.
    """
    n = len(word)
    m = n_nt
    table = bytearray(n * n * m)
    by_term = {}
    for t, a in unary:
        by_term.setdefault(t, []).append(a)
    for i, t in enumerate(word):
        for a in by_term.get(t, ()):
            table[i * m + a] = 1
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            out = ((length - 1) * n + i) * m
            for split in range(1, length):
                left = ((split - 1) * n + i) * m
                right = ((length - split - 1) * n + i + split) * m
                for a, b, c in binary:
                    if table[left + b] and table[right + c]:
                        table[out + a] = 1
    return table
