#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "spdval/tolerances.hpp"

namespace spdval {

struct Atom {
    double location = 0.0;
    double weight = 0.0;
};

//! Static-hedge portfolio as a signed measure: an absolutely continuous part
//! w(K) dK on a bounded domain plus countable atoms. Immutable value type.
class SignedMeasure {
public:
    SignedMeasure() = default;

    static SignedMeasure from_function(std::function<double(double)> w, double lo, double hi);
    static SignedMeasure from_grid(std::vector<double> nodes, std::vector<double> weights);
    static SignedMeasure atoms_only(std::vector<Atom> atoms);

    SignedMeasure with_atoms(std::vector<Atom> atoms) const;

    //! AC-part weight; zero outside the domain.
    double density(double k) const;
    bool has_ac_part() const { return static_cast<bool>(w_); }
    double domain_lo() const { return lo_; }
    double domain_hi() const { return hi_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    //! Points where the integrand may kink (domain edges of the combined parts).
    const std::vector<double>& breakpoints() const { return breaks_; }

private:
    std::function<double(double)> w_; // evaluated only inside [lo_, hi_]
    double lo_ = 0.0, hi_ = 0.0;
    std::vector<Atom> atoms_;         // sorted by location, distinct
    std::vector<double> breaks_;

    friend SignedMeasure combine(const SignedMeasure&, double, const SignedMeasure&, double);
};

//! ∫ f dρ = ∫ f(K) w(K) dK + Σ f(loc)·weight.
double integrate(const std::function<double(double)>& f, const SignedMeasure& rho,
                 double abs_tol = 0.0);

//! |ρ| = ∫|w| dK + Σ|weight|.
double total_variation(const SignedMeasure& rho);

//! c1·ρ1 + c2·ρ2; atoms at exactly equal locations merge, zero weights drop.
SignedMeasure combine(const SignedMeasure& r1, double c1, const SignedMeasure& r2, double c2);

} // namespace spdval
