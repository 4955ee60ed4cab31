# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled team-table kernels; same contracts as ``_kernels_py``."""

from libc.stdlib cimport malloc, free


def flat_table(unsigned long mask, int n):
    cdef Py_ssize_t size = 1 << n
    out = bytearray(size)
    cdef unsigned char[::1] o = out
    cdef unsigned long outside = ~mask
    cdef Py_ssize_t team
    for team in range(size):
        o[team] = 0 if (<unsigned long>team) & outside else 1
    return out


def limp_table(const unsigned char[::1] left, const unsigned char[::1] right, int n, bint strict):
    cdef Py_ssize_t size = 1 << n
    out = bytearray(size)
    cdef unsigned char[::1] o = out
    cdef unsigned char *above = <unsigned char *> malloc(size)
    cdef long team, sub, bit
    cdef int i
    cdef unsigned char ok
    try:
        for team in range(size):
            if not strict:
                sub = team
                while True:
                    ok = right[sub]
                    if ok:
                        for i in range(n):
                            bit = 1 << i
                            if (team & bit) and not (sub & bit) and not above[sub | bit]:
                                ok = 0
                                break
                    above[sub] = ok
                    if sub == 0:
                        break
                    sub = (sub - 1) & team
            ok = 1
            sub = team
            while True:
                if left[sub]:
                    if strict:
                        if not right[team ^ sub]:
                            ok = 0
                            break
                    elif not above[team ^ sub]:
                        ok = 0
                        break
                if sub == 0:
                    break
                sub = (sub - 1) & team
            o[team] = ok
    finally:
        free(above)
    return out


cdef inline long _image(long team, const long[::1] succ, int n):
    cdef long img = 0
    cdef int i
    for i in range(n):
        if team >> i & 1:
            img |= succ[i]
    return img


def image_table(const unsigned char[::1] body, succ, int n):
    cdef Py_ssize_t size = 1 << n
    out = bytearray(size)
    cdef unsigned char[::1] o = out
    cdef long[::1] s = _as_longs(succ, n)
    cdef long team
    for team in range(size):
        o[team] = body[_image(team, s, n)]
    return out


def cover_table(const unsigned char[::1] body, succ, int n):
    cdef Py_ssize_t size = 1 << n
    out = bytearray(size)
    cdef unsigned char[::1] o = out
    cdef long[::1] s = _as_longs(succ, n)
    cdef long team, img, sub
    cdef int i
    cdef unsigned char ok, covers
    for team in range(size):
        ok = 1
        for i in range(n):
            if team >> i & 1 and s[i] == 0:
                break
        else:
            img = _image(team, s, n)
            sub = img
            while True:
                if body[sub] == 0:
                    covers = 1
                    for i in range(n):
                        if team >> i & 1 and not (sub & s[i]):
                            covers = 0
                            break
                    if covers:
                        ok = 0
                        break
                if sub == 0:
                    break
                sub = (sub - 1) & img
        o[team] = ok
    return out


def choice_table(const unsigned char[::1] body, succ, int n):
    cdef Py_ssize_t size = 1 << n
    out = bytearray(size)
    cdef unsigned char[::1] o = out
    cdef long[::1] s = _as_longs(succ, n)
    cdef unsigned char *reach = <unsigned char *> malloc(size)
    cdef unsigned char *nxt = <unsigned char *> malloc(size)
    cdef unsigned char *tmp
    cdef long team, r, j
    cdef int i
    cdef unsigned char ok
    try:
        for team in range(size):
            for r in range(size):
                reach[r] = 0
            reach[0] = 1
            for i in range(n):
                if not (team >> i & 1):
                    continue
                for r in range(size):
                    nxt[r] = 0
                for r in range(size):
                    if reach[r]:
                        for j in range(n):
                            if s[i] >> j & 1:
                                nxt[r | (1 << j)] = 1
                tmp = reach
                reach = nxt
                nxt = tmp
            ok = 1
            for r in range(size):
                if reach[r] and not body[r]:
                    ok = 0
                    break
            o[team] = ok
    finally:
        free(reach)
        free(nxt)
    return out


def negate_table(const unsigned char[::1] body):
    cdef Py_ssize_t size = body.shape[0], i
    out = bytearray(size)
    cdef unsigned char[::1] o = out
    for i in range(size):
        o[i] = 1 - body[i]
    return out


def implies_table(const unsigned char[::1] left, const unsigned char[::1] right):
    cdef Py_ssize_t size = left.shape[0], i
    out = bytearray(size)
    cdef unsigned char[::1] o = out
    for i in range(size):
        o[i] = 1 if (not left[i]) or right[i] else 0
    return out


cdef long[::1] _as_longs(succ, int n):
    import array
    return array.array("l", [succ[i] for i in range(n)])
