# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled collapsed-Gibbs sweep.

Must stay operation-for-operation identical to ``_sweep_py.gibbs_sweep`` so
both backends produce bit-identical chains from the same uniforms.
"""

from libc.stdint cimport int64_t


def gibbs_sweep(
    const int64_t[::1] words,
    const int64_t[::1] doc_ptr,
    const int64_t[::1] auth_idx,
    const int64_t[::1] auth_ptr,
    int64_t[::1] x,
    int64_t[::1] z,
    int64_t[:, ::1] c_ak,
    int64_t[:, ::1] c_kv,
    int64_t[::1] c_k,
    int64_t[::1] c_a,
    double alpha,
    double eta,
    const double[::1] uniforms,
    double[::1] buf,
):
    cdef Py_ssize_t n_docs = doc_ptr.shape[0] - 1
    cdef Py_ssize_t K = c_kv.shape[0]
    cdef Py_ssize_t V = c_kv.shape[1]
    cdef double k_alpha = K * alpha
    cdef double v_eta = V * eta
    cdef Py_ssize_t d, n, i, k, cell, ncell, choice
    cdef int64_t w, a, a_old, k_old, a_first, a_last
    cdef double total, den, target
    # buf layout: [0, K) word factors, [K, K + cells) cumulative weights
    for d in range(n_docs):
        a_first = auth_ptr[d]
        a_last = auth_ptr[d + 1]
        ncell = (a_last - a_first) * K
        for n in range(doc_ptr[d], doc_ptr[d + 1]):
            w = words[n]
            a_old = x[n]
            k_old = z[n]
            c_ak[a_old, k_old] -= 1
            c_kv[k_old, w] -= 1
            c_k[k_old] -= 1
            c_a[a_old] -= 1

            for k in range(K):
                buf[k] = (c_kv[k, w] + eta) / (c_k[k] + v_eta)
            total = 0.0
            cell = K
            for i in range(a_first, a_last):
                a = auth_idx[i]
                den = c_a[a] + k_alpha
                for k in range(K):
                    total += (c_ak[a, k] + alpha) / den * buf[k]
                    buf[cell] = total
                    cell += 1

            target = uniforms[n] * total
            choice = ncell - 1
            for cell in range(ncell):
                if buf[K + cell] > target:
                    choice = cell
                    break
            a = auth_idx[a_first + choice // K]
            k = choice % K

            x[n] = a
            z[n] = k
            c_ak[a, k] += 1
            c_kv[k, w] += 1
            c_k[k] += 1
            c_a[a] += 1
