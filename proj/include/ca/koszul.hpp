#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ca/exec.hpp"
#include "ca/modcalc.hpp"

namespace ca {

/// Koszul complex K(x; A): F_t has one basis element per t-subset of the
/// sequence (lexicographic order) and d(e_S) = sum_j (-1)^j x_{s_j} e_{S - s_j}.
FreeComplex koszul_complex(std::span<const Poly> seq, const RingPtr& ring);

/// H_t(x; M) for t = 0..|seq|.
std::vector<FgModule> koszul_homology(std::span<const Poly> seq, const FgModule& m);

/// sum_t (-1)^t l(H_t(x; M)).  Throws Error(NotSop) unless |seq| = dim M
/// and l(M / xM) is finite.
std::int64_t multiplicity(std::span<const Poly> seq, const FgModule& m);

/// chi(M, A/J) = sum_i (-1)^i l(Tor_i(M, A/J)) from a finite free resolution.
/// Throws Error(InfiniteIntersection) if l(M / JM) is infinite and
/// Error(PdCutoff) if no finite resolution is found within the cutoff.
std::int64_t chi(const FgModule& m, std::span<const Poly> ideal, int cutoff = 0);
/// Same sum from any finite free resolution of M (not necessarily minimal).
std::int64_t chi(const FreeComplex& resolution, std::span<const Poly> ideal);

/// Determinant by expansion over row prefixes (subset dynamic programming).
Poly determinant(const std::vector<std::vector<Poly>>& m, const PrimeField& field);
/// All r x r minors of the matrix (r = 0 gives the unit ideal).
std::vector<Poly> minors(const PolyMatrix& m, std::size_t r);

/// Rank of the matrix evaluated at a point, with one nonsingular pivot minor.
struct PointRank {
  std::size_t rank = 0;
  std::vector<std::size_t> rows, cols;
};
PointRank rank_at_point(const PolyMatrix& m, std::span<const Coeff> point);
/// Largest rank over `points` seed-derived random points; the witness is the
/// lowest-index point attaining it.
PointRank evaluated_rank(const PolyMatrix& m, std::size_t nvars, std::uint64_t seed,
                         std::size_t points, Exec exec = Exec::Parallel);

enum class ExactnessVerdict { Exact, NotExact, Inconclusive };

struct MapExactness {
  int k = 0;
  int expected_rank = 0;             // r_k
  int rank_lower = 0;                // certified by a nonzero minor
  int rank_upper = 0;
  std::optional<int> rank;           // set when pinned
  std::optional<int> grade;          // grade of I_{r_k}(d_k); nullopt for the unit ideal
  int required_grade = 0;            // k
  bool ok = false;
};

struct ExactnessReport {
  std::vector<MapExactness> maps;
  ExactnessVerdict verdict = ExactnessVerdict::Inconclusive;
};

struct ExactnessOptions {
  std::size_t points = 0;            // 0: 8 points, 16 over F_2
  std::size_t max_minors = 20000;    // beyond this the symbolic check is skipped
  Exec exec = Exec::Parallel;
};

/// Buchsbaum-Eisenbud criterion for a complex over the polynomial ring:
/// exact iff rank d_k = r_k = sum_{i>=k} (-1)^(i-k) rank F_i and
/// grade I_{r_k}(d_k) >= k for all k >= 1.  Throws Error(NotAComplex).
ExactnessReport be_exactness(const FreeComplex& c, std::uint64_t seed, const ExactnessOptions& options = {});

const char* to_string(ExactnessVerdict v);

}  // namespace ca
