# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same contract as ``_purekernels``."""

from libc.stdlib cimport malloc, calloc, free

DEF SENTINEL = 255


cdef bint _flat_rec(int i, int d, int* cand, int ncand, int** cands,
                    unsigned char** inset, int* span, int* basis) noexcept nogil:
    cdef int need = (1 << d) - (1 << i)
    cdef int stop = ncand - need
    cdef int k, j, y, z, m, nnext
    cdef int half = 1 << i
    cdef int* nxt
    cdef unsigned char* here = inset[i]
    cdef unsigned char* there
    for k in range(ncand):
        if k > stop:
            break
        y = cand[k]
        for j in range(1, half):
            if (y ^ span[j]) < y:
                break
        else:
            if i + 1 == d:
                basis[i] = y
                return True
            nxt = cands[i + 1]
            there = inset[i + 1]
            nnext = 0
            for m in range(k + 1, ncand):
                z = cand[m]
                if here[z ^ y]:
                    nxt[nnext] = z
                    nnext += 1
            if nnext < (1 << d) - (1 << (i + 1)):
                continue
            for m in range(nnext):
                there[nxt[m]] = 1
            basis[i] = y
            for j in range(half):
                span[half | j] = y ^ span[j]
            if _flat_rec(i + 1, d, nxt, nnext, cands, inset, span, basis):
                return True
            for m in range(nnext):
                there[nxt[m]] = 0
    return False


def find_flat_in(allowed, int n, int d):
    if d == 0:
        return []
    cdef const unsigned char[:] a = bytes(allowed)
    cdef int size = 1 << n
    cdef int y, i, ncand = 0
    cdef bint found
    cdef int** cands = <int**> calloc(d + 1, sizeof(int*))
    cdef unsigned char** inset = <unsigned char**> calloc(d + 1, sizeof(unsigned char*))
    cdef int* span = <int*> calloc(1 << d, sizeof(int))
    cdef int* basis = <int*> calloc(d, sizeof(int))
    try:
        for i in range(d + 1):
            cands[i] = <int*> malloc(size * sizeof(int))
            inset[i] = <unsigned char*> calloc(size, 1)
            if cands[i] == NULL or inset[i] == NULL:
                raise MemoryError()
        for y in range(1, size):
            if a[y]:
                cands[0][ncand] = y
                inset[0][y] = 1
                ncand += 1
        if ncand < (1 << d) - 1:
            return None
        with nogil:
            found = _flat_rec(0, d, cands[0], ncand, cands, inset, span, basis)
        if not found:
            return None
        return [basis[i] for i in range(d)]
    finally:
        for i in range(d + 1):
            free(cands[i])
            free(inset[i])
        free(cands)
        free(inset)
        free(span)
        free(basis)


cdef bint _embed_rec(int i, int ns, const unsigned char[:] src, const unsigned char[:] tgt,
                     int** level, int* nlevel, int* span, int* images) noexcept nogil:
    if i == ns:
        return True
    cdef int half = 1 << i
    cdef int k, j, y
    cdef int* cand = level[i]
    for k in range(nlevel[i]):
        y = cand[k]
        for j in range(1, half):
            if tgt[y ^ span[j]] != src[half | j]:
                break
        else:
            for j in range(half):
                span[half | j] = y ^ span[j]
            images[i] = y
            if _embed_rec(i + 1, ns, src, tgt, level, nlevel, span, images):
                return True
    return False


def embed_search(src_lab, int ns, tgt_lab, int nt):
    if ns == 0:
        return []
    cdef const unsigned char[:] src = bytes(src_lab)
    cdef const unsigned char[:] tgt = bytes(tgt_lab)
    if tgt[0] != SENTINEL:
        raise ValueError("target label of the zero vector must be the sentinel")
    cdef int size = 1 << nt
    cdef int i, y, c
    cdef bint found
    cdef int** level = <int**> calloc(ns, sizeof(int*))
    cdef int* nlevel = <int*> calloc(ns, sizeof(int))
    cdef int* span = <int*> calloc(1 << ns, sizeof(int))
    cdef int* images = <int*> calloc(ns, sizeof(int))
    try:
        for i in range(ns):
            level[i] = <int*> malloc(size * sizeof(int))
            if level[i] == NULL:
                raise MemoryError()
            c = 0
            for y in range(1, size):
                if tgt[y] == src[1 << i]:
                    level[i][c] = y
                    c += 1
            nlevel[i] = c
        with nogil:
            found = _embed_rec(0, ns, src, tgt, level, nlevel, span, images)
        if not found:
            return None
        return [images[i] for i in range(ns)]
    finally:
        for i in range(ns):
            free(level[i])
        free(level)
        free(nlevel)
        free(span)
        free(images)
