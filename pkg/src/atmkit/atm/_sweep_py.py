"""Pure-Python collapsed-Gibbs sweep, the fallback for ``_sweep.pyx``.

Same signature, same arithmetic order; state arrays are updated in place.
"""


def gibbs_sweep(words, doc_ptr, auth_idx, auth_ptr, x, z, c_ak, c_kv, c_k, c_a, alpha, eta, uniforms, buf):
    K, V = c_kv.shape
    k_alpha = K * alpha
    v_eta = V * eta
    words_l = words.tolist()
    doc_ptr_l = doc_ptr.tolist()
    auth_l = auth_idx.tolist()
    auth_ptr_l = auth_ptr.tolist()
    x_l = x.tolist()
    z_l = z.tolist()
    ak = c_ak.tolist()
    kv = c_kv.tolist()
    ck = c_k.tolist()
    ca = c_a.tolist()
    u_l = uniforms.tolist()
    topics = range(K)
    wf = [0.0] * K

    for d in range(len(doc_ptr_l) - 1):
        authors = auth_l[auth_ptr_l[d] : auth_ptr_l[d + 1]]
        ncell = len(authors) * K
        for n in range(doc_ptr_l[d], doc_ptr_l[d + 1]):
            w = words_l[n]
            a_old = x_l[n]
            k_old = z_l[n]
            ak[a_old][k_old] -= 1
            kv[k_old][w] -= 1
            ck[k_old] -= 1
            ca[a_old] -= 1

            for k in topics:
                wf[k] = (kv[k][w] + eta) / (ck[k] + v_eta)
            total = 0.0
            cum = []
            for a in authors:
                den = ca[a] + k_alpha
                row = ak[a]
                for k in topics:
                    total += (row[k] + alpha) / den * wf[k]
                    cum.append(total)

            target = u_l[n] * total
            choice = ncell - 1
            for cell in range(ncell):
                if cum[cell] > target:
                    choice = cell
                    break
            a = authors[choice // K]
            k = choice % K

            x_l[n] = a
            z_l[n] = k
            ak[a][k] += 1
            kv[k][w] += 1
            ck[k] += 1
            ca[a] += 1

    x[:] = x_l
    z[:] = z_l
    c_ak[:] = ak
    c_kv[:] = kv
    c_k[:] = ck
    c_a[:] = ca
