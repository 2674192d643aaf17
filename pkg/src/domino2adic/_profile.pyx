# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled broken-profile kernel.

Counts are stored exactly as little-endian 32-bit limbs inside uint64 words,
so a limb add never overflows its word and the carry is just the high half.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free
from libc.string cimport memcpy, memset

cdef enum:
    LIMB_BITS = 32

cdef uint64_t LIMB_MASK = 0xFFFFFFFFULL


cdef inline int _active_limbs(long processed, int width, int nlimbs) nogil:
    # at most (processed + width) / 2 placement decisions, each binary
    cdef long bits = (processed + width) // 2 + 2
    cdef int la = <int>(bits // LIMB_BITS) + 1
    return la if la < nlimbs else nlimbs


def limbs_needed(int rows, int cols):
    return <int>(((<long>rows * cols + cols) // 2 + 2) // LIMB_BITS) + 1


def count_profile(int rows, int cols):
    """Number of domino tilings of a rows x cols board; cols is the frontier width."""
    if rows <= 0 or cols <= 0:
        return 1
    if (rows * cols) & 1:
        return 0
    cdef int w = cols
    cdef int h = rows
    cdef int L = limbs_needed(rows, cols)
    cdef size_t size = (<size_t>1) << w
    cdef uint64_t* cur = <uint64_t*>calloc(size * L, sizeof(uint64_t))
    cdef uint64_t* nxt = <uint64_t*>calloc(size * L, sizeof(uint64_t))
    cdef uint64_t* tmp
    cdef uint64_t* dst
    cdef uint64_t* a
    cdef uint64_t* b
    cdef uint64_t s, carry
    cdef size_t t, bc, bc1
    cdef int r, c, l, la
    cdef bint vert, horiz
    if cur == NULL or nxt == NULL:
        free(cur)
        free(nxt)
        raise MemoryError(f"cannot allocate profile tables for width {w}")
    try:
        cur[0] = 1
        with nogil:
            for r in range(h):
                vert = r + 1 < h
                for c in range(w):
                    la = _active_limbs(<long>r * w + c + 1, w, L)
                    bc = (<size_t>1) << c
                    bc1 = bc << 1
                    horiz = c + 1 < w
                    for t in range(size):
                        dst = nxt + t * L
                        if t & bc:
                            if vert:
                                memcpy(dst, cur + (t ^ bc) * L, la * sizeof(uint64_t))
                            else:
                                memset(dst, 0, la * sizeof(uint64_t))
                        elif horiz and (t & bc1):
                            a = cur + (t | bc) * L
                            b = cur + (t ^ bc1) * L
                            carry = 0
                            for l in range(la):
                                s = a[l] + b[l] + carry
                                dst[l] = s & LIMB_MASK
                                carry = s >> LIMB_BITS
                        else:
                            memcpy(dst, cur + (t | bc) * L, la * sizeof(uint64_t))
                    tmp = cur
                    cur = nxt
                    nxt = tmp
        result = 0
        for l in range(L - 1, -1, -1):
            result = (result << LIMB_BITS) | <object>cur[l]
        return result
    finally:
        free(cur)
        free(nxt)
