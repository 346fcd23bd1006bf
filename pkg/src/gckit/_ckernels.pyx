# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled table kernels. Each returns the lexicographically first failing
index tuple, or None."""


def compat_witness(const int[:, ::1] mul, const int[:, ::1] act):
    # act[mul[a, b], c] == act[a, act[b, c]]
    cdef Py_ssize_t n = mul.shape[0], m = act.shape[1]
    cdef Py_ssize_t a, b, c
    cdef int ab
    for a in range(n):
        for b in range(n):
            ab = mul[a, b]
            for c in range(m):
                if act[ab, c] != act[a, act[b, c]]:
                    return (a, b, c)
    return None


def linear_witness(const int[:, ::1] act, const int[:, ::1] add):
    # act[r, add[m, k]] == add[act[r, m], act[r, k]]
    cdef Py_ssize_t n = act.shape[0], m = add.shape[0]
    cdef Py_ssize_t r, x, y
    for r in range(n):
        for x in range(m):
            for y in range(m):
                if act[r, add[x, y]] != add[act[r, x], act[r, y]]:
                    return (r, x, y)
    return None


def additive_witness(const int[:, ::1] act, const int[:, ::1] add_src, const int[:, ::1] add_tgt):
    # act[add_src[r, s], m] == add_tgt[act[r, m], act[s, m]]
    cdef Py_ssize_t n = add_src.shape[0], m = act.shape[1]
    cdef Py_ssize_t r, s, x
    cdef int rs
    for r in range(n):
        for s in range(n):
            rs = add_src[r, s]
            for x in range(m):
                if act[rs, x] != add_tgt[act[r, x], act[s, x]]:
                    return (r, s, x)
    return None


def hom_witness(const int[::1] f, const int[:, ::1] op_src, const int[:, ::1] op_tgt):
    # f[op_src[a, b]] == op_tgt[f[a], f[b]]
    cdef Py_ssize_t n = op_src.shape[0]
    cdef Py_ssize_t a, b
    for a in range(n):
        for b in range(n):
            if f[op_src[a, b]] != op_tgt[f[a], f[b]]:
                return (a, b)
    return None
