#include "mahoraga/rs.hpp"

#include <algorithm>
#include <stdexcept>

namespace mahoraga::rs {

using gf::Elem;

RsCode::RsCode(int n, int k, const gf::Gf16& field)
    : n_(n), k_(k), gf_(field) {
    if (n <= 0 || k <= 0 || k > n) {
        throw std::invalid_argument("rs: need 0 < k <= n");
    }
    if (n > gf::Gf16::kOrder) {
        throw std::length_error("rs: n exceeds GF(2^16) code length");
    }
    points_.resize(n_);
    for (int i = 0; i < n_; ++i) points_[i] = gf_.alpha_pow(i);

    // Barycentric weights over the data points, used by the encoder.
    enc_weights_.assign(k_, 1);
    for (int i = 0; i < k_; ++i) {
        Elem prod = 1;
        for (int j = 0; j < k_; ++j) {
            if (j != i) prod = gf_.mul(prod, gf::Gf16::add(points_[i], points_[j]));
        }
        enc_weights_[i] = gf_.inv(prod);
    }
}

std::vector<Elem> RsCode::encode(std::span<const Elem> data) const {
    if (static_cast<int>(data.size()) != k_) {
        throw std::invalid_argument("rs: data length != k");
    }
    std::vector<Elem> cw(n_);
    std::copy(data.begin(), data.end(), cw.begin());
    // d_i * w_i reused across every parity evaluation.
    std::vector<Elem> dw(k_);
    for (int i = 0; i < k_; ++i) dw[i] = gf_.mul(data[i], enc_weights_[i]);
    for (int p = k_; p < n_; ++p) {
        Elem x = points_[p];
        Elem num = 1;
        for (int j = 0; j < k_; ++j) num = gf_.mul(num, gf::Gf16::add(x, points_[j]));
        Elem acc = 0;
        for (int i = 0; i < k_; ++i) {
            if (dw[i] == 0) continue;
            acc ^= gf_.div(dw[i], gf::Gf16::add(x, points_[i]));
        }
        cw[p] = gf_.mul(num, acc);
    }
    return cw;
}

std::vector<Elem> RsCode::interpolate_from(std::span<const int> support,
                                           std::span<const Elem> values) const {
    // Barycentric interpolation over the k support points, then evaluation at
    // every code position.
    std::vector<Elem> w(k_, 1);
    for (int a = 0; a < k_; ++a) {
        Elem prod = 1;
        for (int b = 0; b < k_; ++b) {
            if (b != a) {
                prod = gf_.mul(prod, gf::Gf16::add(points_[support[a]],
                                                   points_[support[b]]));
            }
        }
        w[a] = gf_.inv(prod);
    }
    std::vector<Elem> vw(k_);
    for (int a = 0; a < k_; ++a) vw[a] = gf_.mul(values[a], w[a]);

    std::vector<bool> in_support(n_, false);
    for (int a = 0; a < k_; ++a) in_support[support[a]] = true;

    std::vector<Elem> cw(n_);
    for (int a = 0; a < k_; ++a) cw[support[a]] = values[a];
    for (int p = 0; p < n_; ++p) {
        if (in_support[p]) continue;
        Elem x = points_[p];
        Elem num = 1;
        for (int a = 0; a < k_; ++a) {
            num = gf_.mul(num, gf::Gf16::add(x, points_[support[a]]));
        }
        Elem acc = 0;
        for (int a = 0; a < k_; ++a) {
            if (vw[a] == 0) continue;
            acc ^= gf_.div(vw[a], gf::Gf16::add(x, points_[support[a]]));
        }
        cw[p] = gf_.mul(num, acc);
    }
    return cw;
}

RsCode::Decoded RsCode::decode_erasures(std::span<const Elem> received,
                                        std::span<const std::uint8_t> erased) const {
    Decoded out;
    std::vector<int> support;
    support.reserve(k_);
    for (int i = 0; i < n_ && static_cast<int>(support.size()) < k_; ++i) {
        if (!erased[i]) support.push_back(i);
    }
    if (static_cast<int>(support.size()) < k_) return out;  // beyond capacity

    std::vector<Elem> values(k_);
    for (int a = 0; a < k_; ++a) values[a] = received[support[a]];
    std::vector<Elem> cw = interpolate_from(support, values);
    // Non-erased positions keep their received values.
    for (int i = 0; i < n_; ++i) {
        if (!erased[i]) cw[i] = received[i];
    }
    out.ok = true;
    out.codeword = std::move(cw);
    return out;
}

void RsCode::ensure_decode_tables() const {
    std::call_once(decode_once_, [this] {
        // u_i = 1 / A'(x_i) with A(x) = prod (x - x_j): the dual-code column
        // multipliers that make power-sum syndromes vanish on codewords.
        dual_mult_.assign(n_, 1);
        for (int i = 0; i < n_; ++i) {
            Elem prod = 1;
            for (int j = 0; j < n_; ++j) {
                if (j != i) {
                    prod = gf_.mul(prod, gf::Gf16::add(points_[i], points_[j]));
                }
            }
            dual_mult_[i] = gf_.inv(prod);
        }
    });
}

RsCode::Decoded RsCode::decode(std::span<const Elem> received,
                               std::span<const std::uint8_t> erased) const {
    Decoded out;
    const int d = n_ - k_;  // parity symbol count
    std::vector<int> erasure_pos;
    for (int i = 0; i < n_; ++i) {
        if (erased[i]) erasure_pos.push_back(i);
    }
    const int f = static_cast<int>(erasure_pos.size());
    if (f > d) return out;
    if (d == 0) {
        out.ok = true;
        out.codeword.assign(received.begin(), received.end());
        return out;
    }
    ensure_decode_tables();

    // Power-sum syndromes with erased positions zeroed.
    std::vector<Elem> synd(d, 0);
    for (int i = 0; i < n_; ++i) {
        if (erased[i] || received[i] == 0) continue;
        Elem acc = gf_.mul(received[i], dual_mult_[i]);
        for (int j = 0; j < d; ++j) {
            synd[j] ^= acc;
            acc = gf_.mul(acc, points_[i]);
        }
    }

    // Erasure locator Gamma(z) = prod (1 - x_i z); becomes the BM seed.
    std::vector<Elem> lambda(d + 1, 0);
    lambda[0] = 1;
    for (int a = 0; a < f; ++a) {
        Elem x = points_[erasure_pos[a]];
        for (int j = a + 1; j >= 1; --j) {
            lambda[j] ^= gf_.mul(lambda[j - 1], x);
        }
    }
    std::vector<Elem> b = lambda;

    int el = f;
    for (int r = f + 1; r <= d; ++r) {
        Elem discr = 0;
        for (int i = 0; i < r; ++i) {
            if (lambda[i] != 0) discr ^= gf_.mul(lambda[i], synd[r - i - 1]);
        }
        if (discr == 0) {
            b.insert(b.begin(), 0);
            b.pop_back();
        } else {
            std::vector<Elem> t(d + 1);
            t[0] = lambda[0];
            for (int i = 0; i < d; ++i) {
                t[i + 1] = lambda[i + 1] ^ gf_.mul(discr, b[i]);
            }
            if (2 * el <= r + f - 1) {
                el = r + f - el;
                Elem inv_d = gf_.inv(discr);
                for (int i = 0; i <= d; ++i) b[i] = gf_.mul(lambda[i], inv_d);
            } else {
                b.insert(b.begin(), 0);
                b.pop_back();
            }
            lambda = t;
        }
    }

    int deg = 0;
    for (int i = d; i >= 0; --i) {
        if (lambda[i] != 0) {
            deg = i;
            break;
        }
    }

    // Chien search: unknown positions are the roots z = x_i^{-1}.
    std::vector<std::uint8_t> unknown(erased.begin(), erased.end());
    std::vector<int> promoted;
    int roots = 0;
    for (int i = 0; i < n_ && roots < deg; ++i) {
        Elem zi = gf_.inv(points_[i]);
        Elem acc = 0;
        Elem zp = 1;
        for (int j = 0; j <= deg; ++j) {
            if (lambda[j] != 0) acc ^= gf_.mul(lambda[j], zp);
            zp = gf_.mul(zp, zi);
        }
        if (acc == 0) {
            ++roots;
            if (!unknown[i]) {
                unknown[i] = 1;
                promoted.push_back(i);
            }
        }
    }
    if (roots != deg) return out;  // locator inconsistent with the code

    int unknown_count = f + static_cast<int>(promoted.size());
    if (unknown_count > d) return out;

    std::vector<int> trusted;
    trusted.reserve(n_ - unknown_count);
    for (int i = 0; i < n_; ++i) {
        if (!unknown[i]) trusted.push_back(i);
    }
    std::vector<int> head(trusted.begin(), trusted.begin() + k_);
    std::vector<Elem> values(k_);
    for (int a = 0; a < k_; ++a) values[a] = received[head[a]];
    std::vector<Elem> eval = interpolate_from(head, values);
    // Every trusted position must agree with the interpolant.
    for (int i : trusted) {
        if (eval[i] != received[i]) return out;
    }
    out.codeword = std::move(eval);
    out.ok = true;
    out.promoted = std::move(promoted);
    return out;
}

}  // namespace mahoraga::rs
