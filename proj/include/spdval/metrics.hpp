#pragma once

#include "spdval/distribution.hpp"

namespace spdval {

//! A pair of equivalent measures compared on their common support.
struct MeasurePair {
    Distribution p;
    Distribution q;
    double common_lo = 0.0;
    double common_hi = 0.0;
};

MeasurePair make_measure_pair(const Distribution& p, const Distribution& q);

enum class EntropyVariant {
    absolute_log, // H(ℙ|ℚ) = ∫ |log dℙ/dℚ| dℙ
    standard_kl,  // ∫ log dℙ/dℚ dℙ
};

//! Relative entropy in the absolute-log convention (flag selects plain KL).
//! Throws NotEquivalent when the pair is not equivalent on common support.
double relative_entropy(const MeasurePair& pair,
                        EntropyVariant variant = EntropyVariant::absolute_log);

//! d(ℙ,ℚ) = ∫ |log dℙ/dℚ| · (dm/dℙ + dm/dℚ)⁻¹ dm — the harmonic-weighted
//! symmetric distance. Exactly symmetric in its arguments.
double symmetric_distance(const MeasurePair& pair);

} // namespace spdval
