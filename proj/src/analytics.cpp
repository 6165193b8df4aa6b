#include "mahoraga/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace mahoraga::analytics {

double density_eb_per_g(double file_bytes, double n_oligos,
                        double payload_bases, double r, double rho) {
    double denom = n_oligos * payload_bases * r;
    if (denom <= 0.0) throw std::domain_error("analytics: zero denominator");
    return 8.0 * file_bytes / denom * rho;
}

double alphabet_ceiling(double r, double rho) {
    if (r <= 0.0) throw std::domain_error("analytics: r must be positive");
    return 2.0 * (1.0 - std::exp(-r)) / r * rho;
}

double qinv(double epsilon) {
    if (epsilon <= 0.0 || epsilon >= 1.0) {
        throw std::domain_error("analytics: epsilon out of range");
    }
    // Acklam's rational start, then Newton steps on Q(x) - epsilon.
    double p = 1.0 - epsilon;  // x = Phi^{-1}(p)
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    double x;
    if (p > 0.97575) {
        // Upper tail: the lower-tail rational evaluated at the mirrored
        // argument, negated.
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
              c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        double q = p - 0.5;
        double s = q * q;
        x = (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s +
             a[5]) *
            q /
            (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s +
             1.0);
    }
    for (int it = 0; it < 3; ++it) {
        double err = 0.5 * std::erfc(x / std::sqrt(2.0)) - epsilon;
        double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
        if (pdf <= 0.0) break;
        double step = err / pdf;  // Newton on Q(x): dQ/dx = -pdf
        x += step;
    }
    return x;
}

FblRate fbl_rate(double p_sub, double n, double epsilon) {
    if (p_sub <= 0.0) return {1.0, 1.0};
    if (p_sub >= 0.5) throw std::domain_error("analytics: p_sub in (0, 0.5)");
    double h2 = -p_sub * std::log2(p_sub) -
                (1.0 - p_sub) * std::log2(1.0 - p_sub);
    double capacity = 1.0 - h2;
    double log_ratio = std::log2((1.0 - p_sub) / p_sub);
    double dispersion = p_sub * (1.0 - p_sub) * log_ratio * log_ratio;
    double rate = capacity - std::sqrt(dispersion / n) * qinv(epsilon) +
                  std::log2(n) / (2.0 * n);
    if (rate < 0.0) rate = 0.0;
    if (rate > 1.0) rate = 1.0;
    return {rate, capacity};
}

Decomposition decomposition(bool lofi, double achieved_fraction,
                            double safety) {
    double eta_inner = (lofi ? 176.0 : 208.0) / 252.0;
    double p_sub = lofi ? 8e-3 : 1.3e-3;
    auto fbl = fbl_rate(p_sub, 252.0, 1e-6);
    Decomposition d;
    d.eta_code = eta_inner / safety;
    d.eta_fbl = fbl.rate / fbl.capacity;
    d.eta_ch = achieved_fraction / (d.eta_code * d.eta_fbl);
    return d;
}

LongevityModel LongevityModel::calibrated() {
    return {std::log(5.0 / 3.25) / 133.0};
}

LongevityModel LongevityModel::from_chemistry(double k_ref_per_s,
                                              double t_ref_k,
                                              double ea_j_per_mol,
                                              double suppression,
                                              double purines_per_strand) {
    constexpr double kGasConst = 8.314462618;  // J / (mol K)
    constexpr double kT = 298.15;              // 25 C
    constexpr double kSecondsPerYear = 365.25 * 86400.0;
    double k_25 = k_ref_per_s *
                  std::exp(-ea_j_per_mol / kGasConst * (1.0 / kT - 1.0 / t_ref_k));
    double lambda = k_25 / suppression * purines_per_strand * kSecondsPerYear;
    return {lambda};
}

double LongevityModel::effective_r(double r_initial, double years) const {
    return r_initial * std::exp(-lambda_per_year * years);
}

double LongevityModel::years_to_reach(double r_initial, double r_cliff) const {
    if (!(r_cliff > 0.0) || !(r_cliff < r_initial)) {
        throw std::domain_error("analytics: need 0 < r_cliff < r_initial");
    }
    return std::log(r_initial / r_cliff) / lambda_per_year;
}

}  // namespace mahoraga::analytics
