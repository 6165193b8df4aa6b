#include "mahoraga/ldpc.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace mahoraga::ldpc {

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

// BFS from variable v over the bipartite graph; returns each check node's
// depth (1 for checks adjacent to v, 3 for checks adjacent to v's neighbours'
// other variables, ...; kUnreached if not connected).
std::vector<int> check_depths(int v, const std::vector<std::vector<int>>& var_adj,
                              const std::vector<std::vector<int>>& chk_adj,
                              int m_rows) {
    std::vector<int> depth(m_rows, kUnreached);
    std::vector<char> var_seen(var_adj.size(), 0);
    var_seen[v] = 1;
    std::deque<int> frontier{v};
    int level = 1;
    while (!frontier.empty()) {
        std::deque<int> next_vars;
        for (int u : frontier) {
            for (int c : var_adj[u]) {
                if (depth[c] != kUnreached) continue;
                depth[c] = level;
                for (int w : chk_adj[c]) {
                    if (!var_seen[w]) {
                        var_seen[w] = 1;
                        next_vars.push_back(w);
                    }
                }
            }
        }
        frontier = std::move(next_vars);
        level += 2;
    }
    return depth;
}

void finalize_profile(LdpcProfile& p) {
    p.measured_rank = p.h.rank();

    gf2::BitMatrix reduced = p.h;
    std::vector<int> pivots = reduced.rref();
    std::vector<char> is_pivot(p.n_bits, 0);
    for (int c : pivots) is_pivot[c] = 1;

    std::vector<int> free_cols;
    for (int c = 0; c < p.n_bits; ++c) {
        if (!is_pivot[c]) free_cols.push_back(c);
    }
    if (static_cast<int>(free_cols.size()) < p.k_info) {
        throw std::runtime_error("ldpc: rank too high for stated info budget");
    }
    p.info_cols.assign(free_cols.begin(), free_cols.begin() + p.k_info);
    p.pinned_cols.assign(free_cols.begin() + p.k_info, free_cols.end());

    p.rules.clear();
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        LdpcProfile::ParityRule rule;
        rule.pivot_col = pivots[r];
        rule.depends = reduced.row(static_cast<int>(r));
        rule.depends.set(pivots[r], false);
        p.rules.push_back(std::move(rule));
    }

    p.gen_rows.clear();
    p.gen_rows.reserve(p.k_info);
    gf2::BitVec unit(p.k_info);
    for (int t = 0; t < p.k_info; ++t) {
        unit.set(t, true);
        p.gen_rows.push_back(p.encode(unit));
        unit.set(t, false);
    }
}

}  // namespace

gf2::BitVec LdpcProfile::encode(const gf2::BitVec& info) const {
    if (info.size() != k_info) {
        throw std::invalid_argument("ldpc: info length mismatch");
    }
    gf2::BitVec cw(n_bits);
    for (int t = 0; t < k_info; ++t) {
        if (info.get(t)) cw.set(info_cols[t], true);
    }
    // Pinned columns stay zero; pivots follow from the reduced rows.
    for (const auto& rule : rules) {
        cw.set(rule.pivot_col, gf2::dot(rule.depends, cw));
    }
    return cw;
}

bool LdpcProfile::parity_ok(const gf2::BitVec& codeword) const {
    for (int r = 0; r < m_rows; ++r) {
        if (gf2::dot(h.row(r), codeword)) return false;
    }
    return true;
}

gf2::BitVec LdpcProfile::extract_info(const gf2::BitVec& codeword) const {
    gf2::BitVec info(k_info);
    for (int t = 0; t < k_info; ++t) {
        if (codeword.get(info_cols[t])) info.set(t, true);
    }
    return info;
}

LdpcProfile profile_from_matrix(gf2::BitMatrix h, int payload_bits) {
    LdpcProfile p;
    p.n_bits = h.cols();
    p.m_rows = h.rows();
    p.k_info = p.n_bits - p.m_rows;
    if (p.k_info <= 0) {
        throw std::invalid_argument("ldpc: no information bits");
    }
    p.payload_bits =
        payload_bits >= 0 ? payload_bits : ((p.k_info - 32) / 16) * 16;
    if (p.payload_bits <= 0 || p.payload_bits > p.k_info) {
        throw std::invalid_argument("ldpc: bad payload budget");
    }
    p.h = std::move(h);
    finalize_profile(p);
    return p;
}

LdpcProfile peg_construct(int n_bits, int dv, int dc, int m_rows,
                          std::uint64_t seed) {
    if (n_bits <= 0 || dv <= 0 || dc <= 0 || m_rows <= 0 ||
        n_bits * dv > m_rows * dc) {
        throw std::invalid_argument("ldpc: infeasible degree parameters");
    }
    LdpcProfile p;
    p.n_bits = n_bits;
    p.dv = dv;
    p.dc = dc;
    p.m_rows = m_rows;
    p.k_info = n_bits - m_rows;
    // Degenerate test geometries may leave no room for a CRC; the codec
    // paths all use profiles with a real payload budget.
    p.payload_bits = std::max(0, ((p.k_info - 32) / 16) * 16);
    p.seed = seed;
    p.h = gf2::BitMatrix(m_rows, n_bits);

    std::vector<std::vector<int>> var_adj(n_bits), chk_adj(m_rows);
    std::vector<int> chk_deg(m_rows, 0);

    std::vector<char> adjacent(m_rows, 0);
    auto pick = [&](const std::vector<int>& depth) {
        // Deepest (unreached counts as infinitely deep), then lowest current
        // degree, then lowest index; full checks and checks already adjacent
        // to the variable are never candidates.
        int best = -1;
        for (int c = 0; c < m_rows; ++c) {
            if (chk_deg[c] >= dc || adjacent[c]) continue;
            if (best < 0) {
                best = c;
                continue;
            }
            if (depth[c] > depth[best] ||
                (depth[c] == depth[best] && chk_deg[c] < chk_deg[best])) {
                best = c;
            }
        }
        return best;
    };

    for (int v = 0; v < n_bits; ++v) {
        std::fill(adjacent.begin(), adjacent.end(), 0);
        for (int e = 0; e < dv; ++e) {
            std::vector<int> depth;
            if (e == 0) {
                depth.assign(m_rows, kUnreached);
            } else {
                depth = check_depths(v, var_adj, chk_adj, m_rows);
            }
            int c = pick(depth);
            if (c < 0) throw std::runtime_error("ldpc: PEG ran out of checks");
            adjacent[c] = 1;
            var_adj[v].push_back(c);
            chk_adj[c].push_back(v);
            ++chk_deg[c];
            p.h.set(c, v, true);
        }
    }
    finalize_profile(p);
    return p;
}

const LdpcProfile& hifi_profile() {
    static const LdpcProfile p = peg_construct(252, 3, 84, 9, 0);
    return p;
}

const LdpcProfile& lofi_profile() {
    static const LdpcProfile p = peg_construct(252, 3, 21, 36, 0);
    return p;
}

LdpcProfile scaled_profile(int payload_bases, bool lofi) {
    int n_bits = 2 * payload_bases;
    int dv = 3;
    int dc = lofi ? 21 : 84;
    int m = (n_bits * dv + dc - 1) / dc;
    if (payload_bases == 126) return lofi ? lofi_profile() : hifi_profile();
    return peg_construct(n_bits, dv, dc, m, 0);
}

}  // namespace mahoraga::ldpc
