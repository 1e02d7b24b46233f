#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ca/exec.hpp"
#include "ca/koszul.hpp"
#include "ca/modcalc.hpp"

namespace ca {

/// Random homogeneous polynomial of the given degree (possibly zero when
/// zero_chance > 0).
Poly random_form(std::mt19937_64& rng, const PolyRing& ring, int degree, int max_terms = 3,
                 double zero_chance = 0.0);

/// Seeded corpus of small complexes over polynomial rings in 2-3 variables
/// (matrices at most 3x3, entries of degree at most 2), mixing exact and
/// non-exact cases.  p = 0 cycles through 2, 3, 5 and nvars = 0 alternates
/// between 2 and 3 variables; otherwise they are fixed.
std::vector<FreeComplex> exactness_corpus(std::uint64_t seed, std::size_t count, std::uint64_t p = 0,
                                          std::size_t nvars = 0);

/// be_exactness over a whole corpus; the per-complex work runs under exec.
std::vector<ExactnessReport> certify_corpus(const std::vector<FreeComplex>& corpus, std::uint64_t seed,
                                            Exec exec);

}  // namespace ca
