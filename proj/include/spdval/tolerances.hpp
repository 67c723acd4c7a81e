#pragma once

namespace spdval {

//! Default numerical tolerances. Operations take these as optional knobs;
//! the CLI can override eps_spd / eps_quad / eps_fit / eps_tail.
struct Tolerances {
    double eps_norm_analytic = 1e-8;  // |∫φ − 1| for analytic densities
    double eps_norm_grid     = 1e-4;  // |∫φ − 1| for sampled grids
    double eps_root          = 1e-10; // quantile bracketing, in x
    double eps_quad          = 1e-9;  // absolute quadrature tolerance, × scale
    double eps_fsd           = 1e-10; // CDF dominance slack
    double eps_tail          = 1e-8;  // quantile level for truncating unbounded supports
    double eps_spd_fitted    = 1e-3;  // |∫q + atom − B_t| for fitted curves
    double eps_spd_analytic  = 1e-8;  // same, model curves
    double eps_fit           = 1e-8;  // quote reproduction after fitting
    double eps_neg           = 1e-8;  // negative-density clip threshold, × scale
    double eps_den           = 1e-12; // "density vanishes" threshold
    double eps_spot          = 1e-3;  // relative spot-recovery slack
};

namespace detail {
inline Tolerances& mutable_tolerances() {
    static Tolerances t{};
    return t;
}
} // namespace detail

inline const Tolerances& default_tolerances() { return detail::mutable_tolerances(); }

//! Process-wide override, meant for CLI startup before any object is built.
inline void set_global_tolerances(const Tolerances& t) { detail::mutable_tolerances() = t; }

} // namespace spdval
