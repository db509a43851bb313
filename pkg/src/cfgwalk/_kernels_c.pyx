# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contract as ``_kernels_py``."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


def reduce_codes(codes):
    cdef tuple src = tuple(codes)
    cdef Py_ssize_t n = len(src)
    cdef Py_ssize_t i, top = 0
    cdef long c
    if n == 0:
        return ()
    cdef long *stack = <long *> PyMem_Malloc(n * sizeof(long))
    if stack == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            c = <long> src[i]
            if top and (stack[top - 1] & 1) and c == stack[top - 1] - 1:
                top -= 1
            else:
                stack[top] = c
                top += 1
        return tuple([stack[i] for i in range(top)])
    finally:
        PyMem_Free(stack)


def concat_codes(tuple u, tuple v):
    cdef Py_ssize_t i = len(u)
    cdef Py_ssize_t j = 0
    cdef Py_ssize_t n = len(v)
    cdef long top
    while i and j < n:
        top = <long> u[i - 1]
        if (top & 1) and <long> v[j] == top - 1:
            i -= 1
            j += 1
        else:
            break
    if j == 0:
        return u + v
    return u[:i] + v[j:]


def cyk_fill(word, unary, binary, int n_nt):
    cdef Py_ssize_t n = len(word)
    cdef Py_ssize_t m = n_nt
    cdef bytearray out_table = bytearray(n * n * m)
    if n == 0:
        return out_table
    cdef unsigned char[:] table = out_table
    cdef Py_ssize_t nb = len(binary)
    cdef int *rules = <int *> PyMem_Malloc((3 * nb + 1) * sizeof(int))
    if rules == NULL:
        raise MemoryError()
    cdef Py_ssize_t r, i, length, split, out, left, right
    cdef int a, b, c
    try:
        for r in range(nb):
            a, b, c = binary[r]
            rules[3 * r] = a
            rules[3 * r + 1] = b
            rules[3 * r + 2] = c
        by_term = {}
        for t, a in unary:
            by_term.setdefault(t, []).append(a)
        for i in range(n):
            for a in by_term.get(word[i], ()):
                table[i * m + a] = 1
        for length in range(2, n + 1):
            for i in range(n - length + 1):
                out = ((length - 1) * n + i) * m
                for split in range(1, length):
                    left = ((split - 1) * n + i) * m
                    right = ((length - split - 1) * n + i + split) * m
                    for r in range(nb):
                        if table[left + rules[3 * r + 1]] and table[right + rules[3 * r + 2]]:
                            table[out + rules[3 * r]] = 1
        return out_table
    finally:
        PyMem_Free(rules)
