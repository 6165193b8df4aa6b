#include "mahoraga/osd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mahoraga/crc32.hpp"

namespace mahoraga::osd {

namespace {

std::vector<std::uint8_t> payload_bytes(const gf2::BitVec& cw,
                                        const ldpc::LdpcProfile& prof) {
    std::vector<std::uint8_t> bytes(prof.payload_bits / 8, 0);
    for (int t = 0; t < prof.payload_bits; ++t) {
        if (cw.get(prof.info_cols[t])) {
            bytes[t >> 3] |= static_cast<std::uint8_t>(0x80u >> (t & 7));
        }
    }
    return bytes;
}

std::uint32_t stored_check_bits(const gf2::BitVec& cw,
                                const ldpc::LdpcProfile& prof) {
    std::uint32_t v = 0;
    for (int b = 0; b < 32; ++b) {
        if (cw.get(prof.info_cols[prof.payload_bits + b])) {
            v |= 0x80000000u >> b;
        }
    }
    return v;
}

}  // namespace

PayloadCheck crc32_check(const ldpc::LdpcProfile& prof) {
    PayloadCheck c;
    c.width = 32;
    c.value = [&prof](const gf2::BitVec& cw) {
        auto bytes = payload_bytes(cw, prof);
        return crc::crc32(bytes) ^ stored_check_bits(cw, prof);
    };
    c.linear = [&prof](const gf2::BitVec& cw) {
        auto bytes = payload_bytes(cw, prof);
        return crc::crc32_linear(bytes) ^ stored_check_bits(cw, prof);
    };
    return c;
}

Result decode(std::span<const double> llr, const ldpc::LdpcProfile& prof,
              const PayloadCheck& check, int max_order) {
    const int n = prof.n_bits;
    const int k = prof.k_info;
    const int np = n - k;
    if (static_cast<int>(llr.size()) != n) {
        throw std::invalid_argument("osd: llr length mismatch");
    }
    if (np > 64) throw std::invalid_argument("osd: parity span exceeds 64");

    // Reliability order; stable sort keeps the lower index first on ties.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(llr[a]) > std::abs(llr[b]);
    });

    // Eliminate the generator rows along the reliability order to find the
    // most-reliable independent basis. After this loop, rows[t] has a 1 at
    // basis_cols[t] and 0 at every other basis column.
    std::vector<gf2::BitVec> rows = prof.gen_rows;
    std::vector<int> basis_cols;
    basis_cols.reserve(k);
    std::vector<int> row_for_basis;
    row_for_basis.reserve(k);
    std::vector<char> pivoted(k, 0);
    for (int c : order) {
        if (static_cast<int>(basis_cols.size()) == k) break;
        int pivot = -1;
        for (int r = 0; r < k; ++r) {
            if (!pivoted[r] && rows[r].get(c)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        for (int r = 0; r < k; ++r) {
            if (r != pivot && rows[r].get(c)) rows[r].xor_with(rows[pivot]);
        }
        pivoted[pivot] = 1;
        basis_cols.push_back(c);
        row_for_basis.push_back(pivot);
    }
    if (static_cast<int>(basis_cols.size()) != k) {
        throw std::runtime_error("osd: generator rank defect");
    }

    // Order-0 candidate: hard decisions on the basis, re-encoded.
    gf2::BitVec c0(n);
    for (int t = 0; t < k; ++t) {
        if (llr[basis_cols[t]] < 0.0) c0.xor_with(rows[row_for_basis[t]]);
    }

    double corr0 = 0.0;
    for (int i = 0; i < n; ++i) {
        corr0 += (c0.get(i) ? -1.0 : 1.0) * llr[i];
    }

    // Non-basis (parity) columns, packed into 64-bit masks.
    std::vector<char> in_basis(n, 0);
    for (int c : basis_cols) in_basis[c] = 1;
    std::vector<int> nb_cols;
    nb_cols.reserve(np);
    for (int i = 0; i < n; ++i) {
        if (!in_basis[i]) nb_cols.push_back(i);
    }
    std::vector<double> par_weight(np);
    for (int j = 0; j < np; ++j) {
        int col = nb_cols[j];
        par_weight[j] = (c0.get(col) ? -1.0 : 1.0) * llr[col];
    }

    // Per-basis-row deltas: correlation change on the basis bit itself, the
    // parity mask, and the linear check contribution.
    std::vector<double> d_info(k);
    std::vector<std::uint64_t> d_par(k);
    std::vector<std::uint32_t> d_check(k);
    for (int t = 0; t < k; ++t) {
        const gf2::BitVec& row = rows[row_for_basis[t]];
        int col = basis_cols[t];
        d_info[t] = -2.0 * (c0.get(col) ? -1.0 : 1.0) * llr[col];
        std::uint64_t mask = 0;
        for (int j = 0; j < np; ++j) {
            if (row.get(nb_cols[j])) mask |= 1ULL << j;
        }
        d_par[t] = mask;
        d_check[t] = check.linear(row);
    }
    const std::uint32_t v0 = check.value(c0);

    auto par_delta = [&](std::uint64_t mask) {
        double d = 0.0;
        while (mask) {
            int j = __builtin_ctzll(mask);
            mask &= mask - 1;
            d -= 2.0 * par_weight[j];
        }
        return d;
    };

    struct Best {
        double corr = -1e300;
        int t0 = -1, t1 = -1, t2 = -1;  // flipped basis indices, -1 unused
        bool set = false;
    };
    Best best_pass, best_any;
    auto offer = [](Best& b, double corr, int a0, int a1, int a2) {
        if (!b.set || corr > b.corr) {
            b = {corr, a0, a1, a2, true};
        }
    };

    // Order 0.
    offer(best_any, corr0, -1, -1, -1);
    if (v0 == 0) offer(best_pass, corr0, -1, -1, -1);

    // Orders 1 and 2.
    for (int t = 0; t < k; ++t) {
        double corr_t = corr0 + d_info[t] + par_delta(d_par[t]);
        offer(best_any, corr_t, t, -1, -1);
        if ((v0 ^ d_check[t]) == 0) offer(best_pass, corr_t, t, -1, -1);
    }
    if (max_order >= 2) {
        for (int t = 0; t < k; ++t) {
            const double base_info = corr0 + d_info[t];
            const std::uint64_t base_par = d_par[t];
            const std::uint32_t base_chk = v0 ^ d_check[t];
            for (int s = t + 1; s < k; ++s) {
                double corr_ts =
                    base_info + d_info[s] + par_delta(base_par ^ d_par[s]);
                offer(best_any, corr_ts, t, s, -1);
                if ((base_chk ^ d_check[s]) == 0) {
                    offer(best_pass, corr_ts, t, s, -1);
                }
            }
        }
    }
    // Weight-3 cascade only when nothing lighter passed the check.
    if (!best_pass.set && max_order >= 3) {
        for (int t = 0; t < k; ++t) {
            for (int s = t + 1; s < k; ++s) {
                const double info_ts = corr0 + d_info[t] + d_info[s];
                const std::uint64_t par_ts = d_par[t] ^ d_par[s];
                const std::uint32_t chk_ts = v0 ^ d_check[t] ^ d_check[s];
                for (int u = s + 1; u < k; ++u) {
                    double corr =
                        info_ts + d_info[u] + par_delta(par_ts ^ d_par[u]);
                    offer(best_any, corr, t, s, u);
                    if ((chk_ts ^ d_check[u]) == 0) {
                        offer(best_pass, corr, t, s, u);
                    }
                }
            }
        }
    }

    auto materialize = [&](const Best& b) {
        gf2::BitVec cw = c0;
        for (int t : {b.t0, b.t1, b.t2}) {
            if (t >= 0) cw.xor_with(rows[row_for_basis[t]]);
        }
        return cw;
    };
    auto pattern_weight = [](const Best& b) {
        return (b.t0 >= 0) + (b.t1 >= 0) + (b.t2 >= 0);
    };

    Result res;
    res.hard_codeword = materialize(best_any);
    if (best_pass.set) {
        gf2::BitVec cw = materialize(best_pass);
        if (check.value(cw) != 0) {
            throw std::runtime_error("osd: check delta inconsistency");
        }
        res.status = Status::Passed;
        res.order_used = pattern_weight(best_pass);
        res.hard_codeword = cw;
        gf2::BitVec payload(prof.payload_bits);
        for (int t = 0; t < prof.payload_bits; ++t) {
            payload.set(t, cw.get(prof.info_cols[t]));
        }
        res.payload = std::move(payload);
    }
    return res;
}

}  // namespace mahoraga::osd
