// Closed-form evaluation math: physical density, the alphabet ceiling,
// finite-blocklength rates, the efficiency decomposition, and the
// depurination longevity model.

#pragma once

namespace mahoraga::analytics {

// Mass conversion: EB per gram of dsDNA per (bit/base), from 662 g/mol/bp.
constexpr double kRhoConv = 113.7;

// 8L / (n B r) * rho, EB per gram of dsDNA. Throws std::domain_error on a
// zero denominator.
double density_eb_per_g(double file_bytes, double n_oligos,
                        double payload_bases, double r,
                        double rho = kRhoConv);

// 2 (1 - e^-r) / r * rho: the quaternary-alphabet bound after Poisson
// survival and copy mass. Requires r > 0.
double alphabet_ceiling(double r, double rho = kRhoConv);

// Inverse complementary normal CDF, |error| < 1e-8 over (1e-300, 0.5).
double qinv(double epsilon);

struct FblRate {
    double rate;      // R(n, epsilon), clamped to [0, 1]
    double capacity;  // 1 - H2(p)
};

// Normal approximation for the binary symmetric channel with the
// (1/2) log2(n) / n third-order term.
FblRate fbl_rate(double p_sub, double n, double epsilon);

struct Decomposition {
    double eta_code;  // inner rate over the outer safety margin
    double eta_fbl;   // R / C at the profile's substitution rate, n = 252
    double eta_ch;    // residual: achieved / (eta_code * eta_fbl)
};

Decomposition decomposition(bool lofi, double achieved_fraction,
                            double safety = 1.08);

struct LongevityModel {
    double lambda_per_year = 0.0;  // strand loss rate

    // Inverted from the decoding-cliff mapping (r 5 -> 3.25 over 133 years).
    static LongevityModel calibrated();

    // Arrhenius chain: aqueous depurination rate at T_ref scaled to 25 C,
    // dry-state suppression, per-purine accounting. The published kinetics
    // constants are not pinned anywhere authoritative, so this path is for
    // exploration; calibrated() is what the benchmarks use.
    static LongevityModel from_chemistry(double k_ref_per_s, double t_ref_k,
                                         double ea_j_per_mol,
                                         double suppression,
                                         double purines_per_strand);

    double effective_r(double r_initial, double years) const;
    // Inverse of effective_r; throws std::domain_error unless
    // 0 < r_cliff < r_initial.
    double years_to_reach(double r_initial, double r_cliff) const;
};

}  // namespace mahoraga::analytics
