# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled gate kernels. Same contract as `reference`: in-place updates
of a 1D complex128 state of length 2**w, qubit q = bit w-1-q.

`run_program` executes a whole encoded gate sequence in one call, which
is what the eigen-ensemble engine uses per pure component.
"""

cimport numpy as cnp

OP_1Q = 0
OP_PHASE = 1
OP_CNOT = 2
OP_CSWAP = 3
OP_C1Q = 4

ctypedef cnp.complex128_t cplx


cdef inline Py_ssize_t _expand1(Py_ssize_t g, int p) noexcept nogil:
    # insert a 0 bit at position p; bits at >= p shift up
    return ((g >> p) << (p + 1)) | (g & ((<Py_ssize_t>1 << p) - 1))


cdef inline void _k1q(cplx[::1] st, Py_ssize_t size, Py_ssize_t bit,
                      double complex u00, double complex u01,
                      double complex u10, double complex u11) noexcept nogil:
    cdef Py_ssize_t base = 0, i
    cdef double complex a0, a1
    while base < size:
        for i in range(base, base + bit):
            a0 = st[i]
            a1 = st[i + bit]
            st[i] = u00 * a0 + u01 * a1
            st[i + bit] = u10 * a0 + u11 * a1
        base += 2 * bit


cdef inline void _kphase(cplx[::1] st, Py_ssize_t size, Py_ssize_t bit,
                         double complex phase) noexcept nogil:
    cdef Py_ssize_t base = bit, i
    while base < size:
        for i in range(base, base + bit):
            st[i] = st[i] * phase
        base += 2 * bit


cdef inline void _kcnot(cplx[::1] st, Py_ssize_t size, int pc,
                        int pt) noexcept nogil:
    cdef int lo = pc if pc < pt else pt
    cdef int hi = pc if pc > pt else pt
    cdef Py_ssize_t quarter = size >> 2
    cdef Py_ssize_t cbit = <Py_ssize_t>1 << pc, tbit = <Py_ssize_t>1 << pt
    cdef Py_ssize_t g, i0, i1
    cdef double complex tmp
    for g in range(quarter):
        i0 = _expand1(_expand1(g, lo), hi) | cbit
        i1 = i0 | tbit
        tmp = st[i0]
        st[i0] = st[i1]
        st[i1] = tmp


cdef inline void _kcswap(cplx[::1] st, Py_ssize_t size, int pc, int p1,
                         int p2) noexcept nogil:
    cdef int a = pc, b = p1, c = p2, t
    if a > b: t = a; a = b; b = t
    if b > c: t = b; b = c; c = t
    if a > b: t = a; a = b; b = t
    cdef Py_ssize_t eighth = size >> 3
    cdef Py_ssize_t cbit = <Py_ssize_t>1 << pc
    cdef Py_ssize_t b1 = <Py_ssize_t>1 << p1, b2 = <Py_ssize_t>1 << p2
    cdef Py_ssize_t g, base, ia, ib
    cdef double complex tmp
    for g in range(eighth):
        base = _expand1(_expand1(_expand1(g, a), b), c) | cbit
        ia = base | b1
        ib = base | b2
        tmp = st[ia]
        st[ia] = st[ib]
        st[ib] = tmp


cdef inline void _kc1q(cplx[::1] st, Py_ssize_t size, int pc, int pt,
                       double complex u00, double complex u01,
                       double complex u10, double complex u11) noexcept nogil:
    cdef int lo = pc if pc < pt else pt
    cdef int hi = pc if pc > pt else pt
    cdef Py_ssize_t quarter = size >> 2
    cdef Py_ssize_t cbit = <Py_ssize_t>1 << pc, tbit = <Py_ssize_t>1 << pt
    cdef Py_ssize_t g, i0, i1
    cdef double complex a0, a1
    for g in range(quarter):
        i0 = _expand1(_expand1(g, lo), hi) | cbit
        i1 = i0 | tbit
        a0 = st[i0]
        a1 = st[i1]
        st[i0] = u00 * a0 + u01 * a1
        st[i1] = u10 * a0 + u11 * a1


def apply_1q(state_arr, int w, int q, u):
    cdef cplx[::1] st = state_arr
    cdef double complex u00 = u[0, 0], u01 = u[0, 1], u10 = u[1, 0], u11 = u[1, 1]
    cdef Py_ssize_t bit = <Py_ssize_t>1 << (w - 1 - q)
    with nogil:
        _k1q(st, <Py_ssize_t>1 << w, bit, u00, u01, u10, u11)
    return state_arr


def apply_phase(state_arr, int w, int q, double complex phase):
    cdef cplx[::1] st = state_arr
    cdef Py_ssize_t bit = <Py_ssize_t>1 << (w - 1 - q)
    with nogil:
        _kphase(st, <Py_ssize_t>1 << w, bit, phase)
    return state_arr


def apply_cnot(state_arr, int w, int qc, int qt):
    cdef cplx[::1] st = state_arr
    with nogil:
        _kcnot(st, <Py_ssize_t>1 << w, w - 1 - qc, w - 1 - qt)
    return state_arr


def apply_cswap(state_arr, int w, int qc, int q1, int q2):
    cdef cplx[::1] st = state_arr
    with nogil:
        _kcswap(st, <Py_ssize_t>1 << w, w - 1 - qc, w - 1 - q1, w - 1 - q2)
    return state_arr


def apply_c1q(state_arr, int w, int qc, int qt, u):
    cdef cplx[::1] st = state_arr
    cdef double complex u00 = u[0, 0], u01 = u[0, 1], u10 = u[1, 0], u11 = u[1, 1]
    with nogil:
        _kc1q(st, <Py_ssize_t>1 << w, w - 1 - qc, w - 1 - qt,
              u00, u01, u10, u11)
    return state_arr


def run_program(state_arr, int w, cnp.int64_t[:, ::1] ops,
                cplx[:, ::1] params):
    """Execute an encoded gate sequence (see gateops.encode_program)."""
    cdef cplx[::1] st = state_arr
    cdef Py_ssize_t size = <Py_ssize_t>1 << w
    cdef Py_ssize_t k
    cdef long code, a, b, c
    with nogil:
        for k in range(ops.shape[0]):
            code = ops[k, 0]
            a = ops[k, 1]
            b = ops[k, 2]
            c = ops[k, 3]
            if code == 0:
                _k1q(st, size, <Py_ssize_t>1 << (w - 1 - a),
                     params[k, 0], params[k, 1], params[k, 2], params[k, 3])
            elif code == 1:
                _kphase(st, size, <Py_ssize_t>1 << (w - 1 - a), params[k, 0])
            elif code == 2:
                _kcnot(st, size, w - 1 - a, w - 1 - b)
            elif code == 3:
                _kcswap(st, size, w - 1 - a, w - 1 - b, w - 1 - c)
            else:
                _kc1q(st, size, w - 1 - a, w - 1 - b,
                      params[k, 0], params[k, 1], params[k, 2], params[k, 3])
    return state_arr
