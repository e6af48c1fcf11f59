# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled assignment scanner. See ``_kernels_py`` for the reference version."""

from libc.stdlib cimport malloc, free


cdef inline int _run(const int[:, :, ::1] tables, int zero, int one,
                     const int[::1] code, int lo, int hi,
                     int* env, int* stack) noexcept nogil:
    cdef int sp = 0
    cdef int pc, op
    for pc in range(lo, hi):
        op = code[pc]
        if op < 4:
            sp -= 1
            stack[sp - 1] = tables[op, stack[sp - 1], stack[sp]]
        elif op == 4:
            stack[sp] = zero
            sp += 1
        elif op == 5:
            stack[sp] = one
            sp += 1
        else:
            stack[sp] = env[op - 6]
            sp += 1
    return stack[0]


def first_violation(const int[:, :, ::1] tables, int zero, int one,
                    const int[::1] code, const int[::1] bounds,
                    int nvars, long long start, long long stop):
    cdef int n = tables.shape[1]
    cdef int nprog = bounds.shape[0] - 1
    cdef int neq = nprog // 2
    cdef int maxlen = 1
    cdef int p, i, e
    cdef long long k, idx
    cdef long long found = -1
    cdef bint ok
    for p in range(nprog):
        if bounds[p + 1] - bounds[p] > maxlen:
            maxlen = bounds[p + 1] - bounds[p]
    cdef int* env = <int*> malloc((nvars + 1) * sizeof(int))
    cdef int* stack = <int*> malloc(maxlen * sizeof(int))
    if env == NULL or stack == NULL:
        free(env)
        free(stack)
        raise MemoryError()
    try:
        with nogil:
            k = start
            for i in range(nvars):
                env[i] = <int>(k % n)
                k //= n
            idx = start
            while idx < stop:
                ok = True
                for e in range(neq - 1):
                    if (_run(tables, zero, one, code, bounds[2 * e], bounds[2 * e + 1], env, stack)
                            != _run(tables, zero, one, code, bounds[2 * e + 1], bounds[2 * e + 2],
                                    env, stack)):
                        ok = False
                        break
                if ok:
                    e = neq - 1
                    if (_run(tables, zero, one, code, bounds[2 * e], bounds[2 * e + 1], env, stack)
                            != _run(tables, zero, one, code, bounds[2 * e + 1], bounds[2 * e + 2],
                                    env, stack)):
                        found = idx
                        break
                i = 0
                while i < nvars:
                    env[i] += 1
                    if env[i] < n:
                        break
                    env[i] = 0
                    i += 1
                idx += 1
    finally:
        free(env)
        free(stack)
    return found
