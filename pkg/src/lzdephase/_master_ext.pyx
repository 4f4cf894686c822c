# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled master-equation kernel: DOPRI5 with a fused dephasing RHS.

Mirrors the stepping rules of ``lzdephase.odeint.integrate`` (same tableau,
initial-step heuristic, controller and step clipping) so results agree with
the pure-Python path to within integration tolerance.
"""
from libc.math cimport sqrt, pow, isfinite
import numpy as np

cdef double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9
cdef double A21 = 1.0 / 5
cdef double A31 = 3.0 / 40, A32 = 9.0 / 40
cdef double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9
cdef double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729
cdef double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176, A65 = -5103.0 / 18656
cdef double A71 = 35.0 / 384, A73 = 500.0 / 1113, A74 = 125.0 / 192, A75 = -2187.0 / 6784, A76 = 11.0 / 84
cdef double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40
cdef double D1 = -12715105075.0 / 11282082432, D3 = 87487479700.0 / 32700410799
cdef double D4 = -10690763975.0 / 1880347072, D5 = 701980252875.0 / 199316789632
cdef double D6 = -1453857185.0 / 822651844, D7 = 69997945.0 / 29380423

cdef double SAFETY = 0.9, MIN_FACTOR = 0.2, MAX_FACTOR = 5.0


cdef struct Model:
    double g0
    double inv_e
    int n
    double *gx
    double *gy


cdef inline double rate(Model *m, double s) nogil:
    cdef int i
    cdef double w
    if s <= m.gx[0]:
        return m.gy[0]
    if s >= m.gx[m.n - 1]:
        return m.gy[m.n - 1]
    i = 1
    while m.gx[i] <= s:
        i += 1
    w = (s - m.gx[i - 1]) / (m.gx[i] - m.gx[i - 1])
    return m.gy[i - 1] + w * (m.gy[i] - m.gy[i - 1])


cdef inline void rhs(Model *m, double s, double complex *y, double complex *dy) nogil:
    cdef double g0 = m.g0
    cdef double g = sqrt(s * s + g0 * g0)
    cdef double x = g0 / g, z = s / g
    cdef double gam = 0.5 * rate(m, s)
    cdef double hx = 0.5 * g0, hz = 0.5 * s
    cdef double complex a = y[0], b = y[1], c = y[2], d = y[3]
    cdef double complex c11 = hx * (b - c)
    cdef double complex c12 = 2.0 * hz * c + hx * (d - a)
    cdef double complex c21 = hx * (a - d) - 2.0 * hz * b
    cdef double xz = x * z, xx = x * x, zz = z * z
    cdef double complex bc = b + c, ad = a - d
    cdef double complex n11 = zz * a + xz * bc + xx * d
    cdef double complex n21 = xz * ad - zz * b + xx * c
    cdef double complex n12 = xz * ad + xx * b - zz * c
    cdef double complex n22 = xx * a - xz * bc + zz * d
    cdef double complex mi = -1j
    dy[0] = (mi * c11 - gam * (a - n11)) * m.inv_e
    dy[1] = (mi * c21 - gam * (b - n21)) * m.inv_e
    dy[2] = (mi * c12 - gam * (c - n12)) * m.inv_e
    dy[3] = (-mi * c11 - gam * (d - n22)) * m.inv_e


cdef double rms_scaled(double complex *v, double complex *y, double rel_tol, double abs_tol) nogil:
    cdef double acc = 0.0, sc, q
    cdef int i
    for i in range(4):
        sc = abs_tol + rel_tol * abs(y[i])
        q = abs(v[i]) / sc
        acc += q * q
    return sqrt(acc / 4.0)


def run_master(double g0, double hbar_eps, gx_in, gy_in, y0_in, double s0, double s1,
               double rel_tol, double abs_tol, double max_step, double min_step,
               long max_evals, t_eval_in):
    """Integrate the dephasing master equation on ``[s0, s1]``.

    Returns ``(status, out, n_accepted, n_rejected, n_evals, s_last, y_last)``;
    status 0 ok, 1 step underflow, 2 evaluation budget exhausted.
    """
    cdef double[::1] gx = np.ascontiguousarray(gx_in, dtype=np.float64)
    cdef double[::1] gy = np.ascontiguousarray(gy_in, dtype=np.float64)
    cdef double[::1] te = np.ascontiguousarray(t_eval_in, dtype=np.float64)
    cdef Py_ssize_t n_out = te.shape[0]
    out_arr = np.empty((n_out, 4), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    y0_arr = np.ascontiguousarray(y0_in, dtype=np.complex128)
    cdef double complex[::1] y0 = y0_arr

    cdef Model m
    m.g0 = g0
    m.inv_e = 1.0 / hbar_eps
    m.n = <int> gx.shape[0]
    m.gx = &gx[0]
    m.gy = &gy[0]

    cdef double complex y[4]
    cdef double complex yn[4]
    cdef double complex yt[4]
    cdef double complex k1[4]
    cdef double complex k2[4]
    cdef double complex k3[4]
    cdef double complex k4[4]
    cdef double complex k5[4]
    cdef double complex k6[4]
    cdef double complex k7[4]
    cdef double complex err[4]
    cdef double complex rc5[4]
    cdef double complex ydiff, bspl
    cdef double s = s0, h, s_new, en, q, sc, fac, span = s1 - s0
    cdef double d0, d1, d2, h0, h1, theta, t1
    cdef long n_evals = 0, n_acc = 0, n_rej = 0
    cdef Py_ssize_t j = 0
    cdef int i, last, status = 0

    for i in range(4):
        y[i] = y0[i]
    while j < n_out and te[j] == s0:
        for i in range(4):
            out[j, i] = y[i]
        j += 1

    with nogil:
        rhs(&m, s, y, k1)
        n_evals = 1
        # starting step, same heuristic as odeint.initial_step
        d0 = rms_scaled(y, y, rel_tol, abs_tol)
        d1 = rms_scaled(k1, y, rel_tol, abs_tol)
        if d0 < 1e-5 or d1 < 1e-5:
            h0 = 1e-6
        else:
            h0 = 0.01 * d0 / d1
        if h0 > span:
            h0 = span
        for i in range(4):
            yt[i] = y[i] + h0 * k1[i]
        rhs(&m, s + h0, yt, k2)
        n_evals += 1
        for i in range(4):
            err[i] = k2[i] - k1[i]
        d2 = rms_scaled(err, y, rel_tol, abs_tol) / h0
        if (d1 if d1 > d2 else d2) <= 1e-15:
            h1 = h0 * 1e-3 if h0 * 1e-3 > 1e-6 else 1e-6
        else:
            h1 = pow(0.01 / (d1 if d1 > d2 else d2), 0.2)
        h = 100 * h0
        if h1 < h:
            h = h1
        if span < h:
            h = span
        if max_step < h:
            h = max_step
        if h < min_step:
            h = min_step

        while s < s1:
            last = 0
            if s + h >= s1 or (s1 - (s + h)) < min_step:
                h = s1 - s
                last = 1
            if n_evals + 6 > max_evals:
                status = 2
                break
            for i in range(4):
                yt[i] = y[i] + h * A21 * k1[i]
            rhs(&m, s + C2 * h, yt, k2)
            for i in range(4):
                yt[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i])
            rhs(&m, s + C3 * h, yt, k3)
            for i in range(4):
                yt[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i])
            rhs(&m, s + C4 * h, yt, k4)
            for i in range(4):
                yt[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i])
            rhs(&m, s + C5 * h, yt, k5)
            for i in range(4):
                yt[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i])
            rhs(&m, s + h, yt, k6)
            for i in range(4):
                yn[i] = y[i] + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i])
            rhs(&m, s + h, yn, k7)
            n_evals += 6

            en = 0.0
            for i in range(4):
                err[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
                sc = abs(y[i])
                if abs(yn[i]) > sc:
                    sc = abs(yn[i])
                q = abs(err[i]) / (abs_tol + rel_tol * sc)
                if q > en or q != q:
                    en = q

            if not isfinite(en):
                en = 1e300
            if en <= 1.0:
                s_new = s1 if last else s + h
                if j < n_out and te[j] <= s_new:
                    for i in range(4):
                        rc5[i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i])
                while j < n_out and te[j] <= s_new:
                    if te[j] == s_new:
                        for i in range(4):
                            out[j, i] = yn[i]
                    else:
                        theta = (te[j] - s) / h
                        t1 = 1.0 - theta
                        for i in range(4):
                            ydiff = yn[i] - y[i]
                            bspl = h * k1[i] - ydiff
                            out[j, i] = y[i] + theta * (ydiff + t1 * (bspl + theta * ((ydiff - h * k7[i] - bspl) + t1 * rc5[i])))
                    j += 1
                s = s_new
                for i in range(4):
                    y[i] = yn[i]
                    k1[i] = k7[i]
                n_acc += 1
                if en == 0.0:
                    fac = MAX_FACTOR
                else:
                    fac = SAFETY * pow(en, -0.2)
                    if fac < MIN_FACTOR:
                        fac = MIN_FACTOR
                    if fac > MAX_FACTOR:
                        fac = MAX_FACTOR
                h = h * fac
                if h > max_step:
                    h = max_step
            else:
                n_rej += 1
                fac = SAFETY * pow(en, -0.2)
                if fac < MIN_FACTOR:
                    fac = MIN_FACTOR
                h = h * fac
                if h < min_step:
                    status = 1
                    break

    y_last = np.array([y[0], y[1], y[2], y[3]], dtype=np.complex128)
    if status != 0:
        return status, None, n_acc, n_rej, n_evals, s, y_last
    return 0, out_arr, n_acc, n_rej, n_evals, s, y_last
