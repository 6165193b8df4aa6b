#include "mahoraga/phmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mahoraga/dna.hpp"

namespace mahoraga::phmm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogQuarter = -1.3862943611198906;  // ln(1/4)

}  // namespace

int band_halfwidth(int ref_len, double p_ins, double p_del) {
    double drift = 5.0 * std::sqrt(ref_len * (p_ins + p_del));
    return std::max(8, static_cast<int>(std::ceil(drift)));
}

double PosteriorMatrix::min_top_mass() const {
    double m = 1.0;
    for (const auto& row : rows) {
        m = std::min(m, *std::max_element(row.begin(), row.end()));
    }
    return m;
}

ProfileHmm::ProfileHmm(std::string address, int payload_len, HmmParams prm)
    : address_(std::move(address)), payload_len_(payload_len), prm_(prm) {
    address_code_.reserve(address_.size());
    for (char c : address_) address_code_.push_back(dna::base_code(c));
}

// Forward pass over the banded lattice. Columns are reference positions
// j = 0..L; cells within a column are read prefixes t in [j-W, j+W]. The
// uniform transition rows collapse the three-state recurrence onto the
// column sums:
//   M(j,t) = e_j(read[t-1]) * q * S(j-1,t-1)
//   D(j,t) = p_del * S(j-1,t)
//   I(j,t) = (p_ins/4) * S(j,t-1)
// with q = 1 - p_ins - p_del and S = M + I + D. Each column is rescaled to
// sum 1; termination takes the (1 - p_ins) end transition at (L, T).
template <bool kKeepState>
double ProfileHmm::forward_impl(std::string_view read,
                                std::vector<double>* match_out,
                                std::vector<double>* scale_out,
                                std::vector<double>* final_col) const {
    const int L = ref_len();
    const int T = static_cast<int>(read.size());
    const int W = prm_.band;
    if (T == 0 || std::abs(T - L) > W) return kNegInf;

    const double q = 1.0 - prm_.p_ins - prm_.p_del;
    const double pi4 = prm_.p_ins * 0.25;
    const double pd = prm_.p_del;
    const double ps = prm_.p_sub;
    const int width = 2 * W + 1;

    std::vector<int> code(T);
    for (int t = 0; t < T; ++t) code[t] = dna::base_code(read[t]);

    auto lo_of = [&](int j) { return std::max(0, j - W); };
    auto hi_of = [&](int j) { return std::min(T, j + W); };

    std::vector<double> prev_sum(width), cur_sum(width), cur_m(width),
        cur_d(width);
    if (kKeepState) {
        match_out->assign(static_cast<std::size_t>(L + 1) * width, 0.0);
        scale_out->assign(L + 1, 0.0);
    }

    double log_scale = 0.0;
    int prev_lo = 0;
    for (int j = 0; j <= L; ++j) {
        const int lo = lo_of(j), hi = hi_of(j);
        std::fill(cur_sum.begin(), cur_sum.end(), 0.0);
        std::fill(cur_m.begin(), cur_m.end(), 0.0);
        std::fill(cur_d.begin(), cur_d.end(), 0.0);

        auto prev_at = [&](int t) -> double {
            if (j == 0 || t < lo_of(j - 1) || t > hi_of(j - 1)) return 0.0;
            return prev_sum[t - prev_lo];
        };

        for (int t = lo; t <= hi; ++t) {
            double m = 0.0, d = 0.0, ins = 0.0;
            if (j == 0) {
                if (t == 0) m = 1.0;  // begin state
            } else {
                if (t >= 1) {
                    double e;
                    if (j <= static_cast<int>(address_code_.size())) {
                        int want = address_code_[j - 1];
                        int got = code[t - 1];
                        e = (got >= 0 && got == want) ? 1.0 - ps : ps / 3.0;
                    } else {
                        e = 0.25;
                    }
                    m = e * q * prev_at(t - 1);
                }
                d = pd * prev_at(t);
            }
            if (t > lo) ins = pi4 * cur_sum[t - 1 - lo];
            cur_m[t - lo] = m;
            cur_d[t - lo] = d;
            cur_sum[t - lo] = m + d + ins;
        }

        double s = 0.0;
        for (int t = lo; t <= hi; ++t) s += cur_sum[t - lo];
        if (!(s > 0.0)) return kNegInf;
        double inv = 1.0 / s;
        for (int t = lo; t <= hi; ++t) {
            cur_sum[t - lo] *= inv;
            cur_m[t - lo] *= inv;
        }
        log_scale += std::log(s);
        if (kKeepState) {
            (*scale_out)[j] = s;
            double* row = match_out->data() + static_cast<std::size_t>(j) * width;
            for (int t = lo; t <= hi; ++t) row[t - lo] = cur_m[t - lo];
        }
        std::swap(prev_sum, cur_sum);
        prev_lo = lo;
    }

    // prev_sum now holds column L.
    if (T < lo_of(L) || T > hi_of(L)) return kNegInf;
    double tail = prev_sum[T - lo_of(L)];
    if (!(tail > 0.0)) return kNegInf;
    if (kKeepState && final_col) {
        final_col->assign(prev_sum.begin(), prev_sum.end());
    }
    return log_scale + std::log((1.0 - prm_.p_ins) * tail);
}

double ProfileHmm::forward_loglik(std::string_view read) const {
    return forward_impl<false>(read, nullptr, nullptr, nullptr);
}

double ProfileHmm::assignment_score(std::string_view read) const {
    double ll = forward_loglik(read);
    if (ll == kNegInf) return kNegInf;
    return ll - payload_len_ * kLogQuarter;
}

PosteriorMatrix ProfileHmm::posteriors(std::string_view read) const {
    const int L = ref_len();
    const int T = static_cast<int>(read.size());
    const int W = prm_.band;
    const int width = 2 * W + 1;
    const int addr = static_cast<int>(address_.size());

    PosteriorMatrix out;
    out.rows.assign(payload_len_, {0.25, 0.25, 0.25, 0.25});
    out.coverage = 1;

    std::vector<double> match, scales, final_col;
    double ll = forward_impl<true>(read, &match, &scales, &final_col);
    if (ll == kNegInf) return out;  // no alignment evidence: uniform rows

    const double q = 1.0 - prm_.p_ins - prm_.p_del;
    const double pi4 = prm_.p_ins * 0.25;
    const double pd = prm_.p_del;
    const double ps = prm_.p_sub;

    std::vector<int> code(T);
    for (int t = 0; t < T; ++t) code[t] = dna::base_code(read[t]);

    auto lo_of = [&](int j) { return std::max(0, j - W); };
    auto hi_of = [&](int j) { return std::min(T, j + W); };
    auto emit = [&](int j, int t) -> double {  // e_j(read[t-1]), j >= 1, t >= 1
        if (j <= addr) {
            int got = code[t - 1];
            return (got >= 0 && got == address_code_[j - 1]) ? 1.0 - ps
                                                             : ps / 3.0;
        }
        return 0.25;
    };

    // Backward values carry the forward column scales, so gamma needs no
    // further normalization beyond Z = (1 - p_ins) * S_hat(L, T).
    const double z = (1.0 - prm_.p_ins) * final_col[T - lo_of(L)];

    std::vector<double> next_b(width, 0.0), cur_b(width, 0.0);
    // Column L.
    {
        int lo = lo_of(L), hi = hi_of(L);
        for (int t = hi; t >= lo; --t) {
            double v = (t == T) ? (1.0 - prm_.p_ins) : 0.0;
            if (t + 1 <= hi) v += pi4 * cur_b[t + 1 - lo];
            cur_b[t - lo] = v;
        }
    }
    for (int j = L; j >= 1; --j) {
        // gamma for match states of column j feeds payload row j - addr - 1.
        if (j > addr) {
            int lo = lo_of(j), hi = hi_of(j);
            const double* mrow =
                match.data() + static_cast<std::size_t>(j) * width;
            std::array<double, 4>& row = out.rows[j - addr - 1];
            row = {0.0, 0.0, 0.0, 0.0};
            double matched = 0.0;
            for (int t = std::max(lo, 1); t <= hi; ++t) {
                double g = mrow[t - lo] * cur_b[t - lo] / z;
                if (g <= 0.0) continue;
                matched += g;
                int got = code[t - 1];
                for (int b = 0; b < 4; ++b) {
                    double p = (got >= 0 && got == b) ? 1.0 - ps : ps / 3.0;
                    row[b] += g * p;
                }
            }
            double deleted = std::max(0.0, 1.0 - matched);
            double total = 0.0;
            for (int b = 0; b < 4; ++b) {
                row[b] += deleted * 0.25;
                total += row[b];
            }
            for (int b = 0; b < 4; ++b) row[b] /= total;
        }
        if (j == 1) break;  // column 0 backward values are not needed

        int lo = lo_of(j - 1), hi = hi_of(j - 1);
        int lo_next = lo_of(j), hi_next = hi_of(j);
        double s_next = scales[j];
        std::fill(next_b.begin(), next_b.end(), 0.0);
        auto b_next = [&](int t) -> double {
            if (t < lo_next || t > hi_next) return 0.0;
            return cur_b[t - lo_next];
        };
        for (int t = hi; t >= lo; --t) {
            double v = 0.0;
            if (t + 1 <= T) v += q * emit(j, t + 1) * b_next(t + 1);
            v += pd * b_next(t);
            v /= s_next;
            if (t + 1 <= hi) v += pi4 * next_b[t + 1 - lo];
            next_b[t - lo] = v;
        }
        std::swap(cur_b, next_b);
    }
    return out;
}

PosteriorMatrix fuse(std::span<const PosteriorMatrix> parts, int payload_len) {
    PosteriorMatrix out;
    out.rows.assign(payload_len, {0.25, 0.25, 0.25, 0.25});
    out.coverage = 0;
    if (parts.empty()) return out;

    std::vector<std::array<double, 4>> logs(
        payload_len, {0.0, 0.0, 0.0, 0.0});
    for (const auto& part : parts) {
        if (static_cast<int>(part.rows.size()) != payload_len) {
            throw std::invalid_argument("phmm: fuse length mismatch");
        }
        for (int jj = 0; jj < payload_len; ++jj) {
            for (int b = 0; b < 4; ++b) {
                logs[jj][b] += std::log(std::max(part.rows[jj][b], 1e-300));
            }
        }
        out.coverage += part.coverage;
    }
    for (int jj = 0; jj < payload_len; ++jj) {
        double mx = *std::max_element(logs[jj].begin(), logs[jj].end());
        double total = 0.0;
        for (int b = 0; b < 4; ++b) {
            out.rows[jj][b] = std::exp(logs[jj][b] - mx);
            total += out.rows[jj][b];
        }
        for (int b = 0; b < 4; ++b) out.rows[jj][b] /= total;
    }
    return out;
}

FuseResult fuse_adaptive(std::span<const std::string> reads,
                         const ProfileHmm& hmm, double threshold, int batch,
                         par::Exec exec) {
    FuseResult res;
    const int payload_len = hmm.payload_len();
    std::vector<PosteriorMatrix> parts;
    parts.reserve(reads.size());
    std::size_t done = 0;
    while (done < reads.size()) {
        std::size_t take = std::min<std::size_t>(batch, reads.size() - done);
        std::vector<PosteriorMatrix> chunk(take);
        par::for_index(
            take,
            [&](std::size_t i) { chunk[i] = hmm.posteriors(reads[done + i]); },
            exec);
        for (auto& p : chunk) parts.push_back(std::move(p));
        done += take;
        res.posterior = fuse(parts, payload_len);
        if (res.posterior.min_top_mass() >= threshold) break;
    }
    res.reads_processed = static_cast<int>(done);
    if (reads.empty()) res.posterior = fuse({}, payload_len);
    return res;
}

std::vector<double> posteriors_to_llrs(const PosteriorMatrix& p, double clamp) {
    std::vector<double> llr;
    llr.reserve(2 * p.rows.size());
    auto ratio = [&](double zero_mass, double one_mass) {
        if (zero_mass <= 0.0 && one_mass <= 0.0) return 0.0;
        double v = std::log(std::max(zero_mass, 1e-300)) -
                   std::log(std::max(one_mass, 1e-300));
        return std::clamp(v, -clamp, clamp);
    };
    for (const auto& row : p.rows) {
        // Codes: A=0, C=1, T=2, G=3; bit0 is the pair's high bit.
        llr.push_back(ratio(row[0] + row[1], row[2] + row[3]));
        llr.push_back(ratio(row[0] + row[2], row[1] + row[3]));
    }
    return llr;
}

}  // namespace mahoraga::phmm
